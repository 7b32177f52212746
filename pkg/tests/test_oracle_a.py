import random

import pytest
from hypothesis import given, strategies as st

from brauerlab.oracle_a import (BrauerDiagram, compose, diagram_count, eval_word_A, generator,
                                min_heights)
from brauerlab.rewrite import Word

W = Word.parse


def test_empty_word():
    d = eval_word_A(4, Word())
    assert d == BrauerDiagram.identity(4)
    assert d.to_json() == {"m": 4, "pairs": [["t1", "b1"], ["t2", "b2"], ["t3", "b3"], ["t4", "b4"]],
                           "loops": 0}


def test_small_words():
    assert eval_word_A(2, W("e1 e1")) == eval_word_A(2, W("e1")).with_loops(1)
    assert eval_word_A(3, W("e1 r2 e1")) == eval_word_A(3, W("e1"))
    assert eval_word_A(3, W("d^2 e1")).loops == 2


def test_compose_examples():
    e1, r1 = generator(3, 1), generator(3, 1024 + 1)
    ident = BrauerDiagram.identity(3)
    assert compose(ident, e1) == e1
    assert compose(e1, e1) == e1.with_loops(1)
    assert compose(r1, r1) == ident
    with pytest.raises(ValueError):
        compose(ident, BrauerDiagram.identity(2))


def random_diagram(rng, m):
    pts = list(range(2 * m))
    rng.shuffle(pts)
    return BrauerDiagram.from_pairs(m, zip(pts[::2], pts[1::2]))


@given(st.integers(0, 10**6), st.integers(1, 6))
def test_compose_is_associative(seed, m):
    rng = random.Random(seed)
    a, b, c = (random_diagram(rng, m) for _ in range(3))
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


def test_from_pairs_validation():
    with pytest.raises(ValueError):
        BrauerDiagram.from_pairs(2, [(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        BrauerDiagram.from_pairs(2, [(0, 1)])


@pytest.mark.parametrize("m,count", [(1, 1), (2, 3), (3, 15), (4, 105), (5, 945)])
def test_diagram_count(m, count):
    assert diagram_count(m) == count


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_generators_reach_every_diagram_with_crossing_cost(m):
    best = min_heights(m)
    assert len(best) == diagram_count(m)
    for mate, h in best.items():
        assert BrauerDiagram(m, mate).crossings() == h


def test_generator_range():
    with pytest.raises(ValueError):
        generator(3, 3)
