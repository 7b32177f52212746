"""Brauer monoids of simply laced type: admissible root sets, rewriting and normal forms."""

from .rootsystem import CoxeterDiagram, RootSystem, root_system
from .rewrite import Word, reduce, homog_equiv
from .normalform import NormalForm, decompose, synthesize, rank, tl_rank

__all__ = ["CoxeterDiagram", "RootSystem", "root_system", "Word", "reduce", "homog_equiv",
           "NormalForm", "decompose", "synthesize", "rank", "tl_rank"]

__version__ = "0.1.0"
