"""Canonical words a_B, a_B^b and the triple normal form delta^i a_B e_Y h a_B'^op.

Elements h of W(M_Y) are handled through the reflection representation of
the Coxeter diagram spanned by the generators S_Y.  Generator indices are
positions in the S_Y list; for Y empty the generators are r_1..r_n.
"""

from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from . import admissible as adm
from .admissible import ASet
from .rewrite import (RBASE, DEFAULT_CAPS, E, R, SearchCaps, Side, Word, act_word, e_hat,
                      homog_equiv_detail, op_reverse, reduce)
from .rootsystem import CoxeterDiagram, RootSystem, weyl_group_order


class NormalFormError(RuntimeError):
    pass


class CapsExhausted(NormalFormError):
    pass


# ---------------------------------------------------------------- S_Y

# generator words x of S_Y = {x e_Y}, listed in table order
SY_TABLE: dict[str, dict[tuple[int, ...], tuple[str, ...]]] = {
    "E6": {
        (6,): ("e6 e5 e4 e3 r2 e4 e5", "r1", "r2", "r3", "r4"),
        (4, 6): ("e4 e3 r2", "r1"),
        (2, 3, 6): (),
    },
    "E7": {
        (7,): ("e7 e6 e5 e4 e3 r2 e4 e5 e6", "r1", "r2", "r3", "r4", "r5"),
        # the long word and r1 alone give rank 2; r2 and r3 complete A1 A3
        (5, 7): ("e5 e4 e3 r2 e4", "r1", "r2", "r3"),
        (2, 5, 7): ("r1", "r3"),
        (2, 3, 7): ("r5",),
        (2, 3, 5, 7): (),
    },
    "E8": {
        (8,): ("e8 e7 e6 e5 e4 e3 r2 e4 e5 e6 e7", "r1", "r2", "r3", "r4", "r5", "r6"),
        (6, 8): ("e6 e5 e4 e3 r2 e4 e5", "r1", "r2", "r3", "r4"),
        (2, 3, 8): ("r5", "r6"),
        (2, 3, 5, 8): (),
    },
}


class CoxeterGroup:
    """W of a simply laced diagram on nodes 0..r-1, as integer matrices on the root lattice."""

    def __init__(self, diagram: CoxeterDiagram):
        self.diagram = diagram
        self.rank = diagram.rank
        a = diagram.cartan()
        r = self.rank
        self.identity = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
        # s_i(alpha_j) = alpha_j - a_ij alpha_i: row i of the identity becomes e_i - a_i
        self.gens = []
        for i in range(r):
            rows = [list(row) for row in self.identity]
            rows[i] = [int(j == i) - a[i][j] for j in range(r)]
            self.gens.append(tuple(tuple(row) for row in rows))
        self.gens_el = [CoxeterElement(diagram, g, (i,)) for i, g in enumerate(self.gens)]

    def mul(self, x, y):
        r = self.rank
        cols = list(zip(*y))
        return tuple(tuple(sum(x[i][k] * cols[j][k] for k in range(r)) for j in range(r))
                     for i in range(r))

    def from_word(self, word: Sequence[int]) -> "CoxeterElement":
        m = self.identity
        for i in word:
            m = self.mul(m, self.gens[i])
        return self.element(m)

    def element(self, m) -> "CoxeterElement":
        return CoxeterElement(self.diagram, m, self._reduced_word(m))

    def right_descents(self, m) -> list[int]:
        # w(alpha_i) < 0 iff column i of the matrix is non-positive
        return [i for i in range(self.rank) if any(m[k][i] < 0 for k in range(self.rank))]

    def _reduced_word(self, m) -> tuple[int, ...]:
        out = []
        while m != self.identity:
            i = self.right_descents(m)[0]
            m = self.mul(m, self.gens[i])
            out.append(i)
        return tuple(reversed(out))

    def inverse(self, h: "CoxeterElement") -> "CoxeterElement":
        return self.from_word(tuple(reversed(h.word)))

    def product(self, *hs: "CoxeterElement") -> "CoxeterElement":
        m = self.identity
        for h in hs:
            m = self.mul(m, h.matrix)
        return self.element(m)

    def order(self) -> int:
        return weyl_group_order(self.diagram)


@dataclass(frozen=True)
class CoxeterElement:
    diagram: CoxeterDiagram
    matrix: tuple[tuple[int, ...], ...]
    word: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.word)

    def __eq__(self, other) -> bool:
        return isinstance(other, CoxeterElement) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)


@dataclass(frozen=True)
class GeneratorSet:
    Y: tuple[int, ...]
    gens: tuple[Word, ...]
    diagram: CoxeterDiagram

    @property
    def identity_word(self) -> Word:
        return e_hat(self.Y)

    def word_of(self, indices: Sequence[int]) -> Word:
        """zeta_Y of a generator index sequence; the identity is e_Y-hat."""
        w = Word() if indices else self.identity_word
        for i in indices:
            w = w * self.gens[i]
        return w


def _normalize_Y(Y) -> tuple[int, ...]:
    return tuple(sorted(Y))


@functools.lru_cache(maxsize=None)
def sy_generators(sys: RootSystem, Y: tuple[int, ...]) -> GeneratorSet:
    """S_Y with the Coxeter diagram its members satisfy."""
    Y = _normalize_Y(Y)
    if not Y:
        gens = tuple(Word((R(v),)) for v in sys.nodes)
        pos = {v: k for k, v in enumerate(sys.nodes)}
        edges = frozenset(frozenset(pos[v] for v in e) for e in sys.diagram.edges)
        return GeneratorSet(Y, gens, CoxeterDiagram(tuple(range(sys.n)), edges))
    table = SY_TABLE.get(sys.name)
    if table is None or Y not in table:
        raise ValueError(f"no S_Y row for Y={list(Y)} in {sys.name}")
    hat = e_hat(Y)
    gens = tuple(Word.parse(x) * hat for x in table[Y])
    return GeneratorSet(Y, gens, _generator_diagram(sys, Y, gens))


def _generator_diagram(sys: RootSystem, Y, gens) -> CoxeterDiagram:
    """Edges between generators whose product has order 3 on the admissible sets."""
    act = action_tables(sys)
    unit = act.word_map(e_hat(Y))
    maps = [act.word_map(g) for g in gens]
    edges = set()
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            ab = act.compose(maps[a], maps[b])
            cur, order = ab, 1
            while cur != unit:
                cur = act.compose(ab, cur)
                order += 1
                if order > 6:
                    raise NormalFormError(f"generators {a},{b} of S_Y have order > 6")
            if order == 3:
                edges.add(frozenset((a, b)))
            elif order != 2:
                raise NormalFormError(f"generators {a},{b} of S_Y have order {order}")
    return CoxeterDiagram(tuple(range(len(gens))), frozenset(edges))


@functools.lru_cache(maxsize=None)
def coxeter_group(sys: RootSystem, Y: tuple[int, ...]) -> CoxeterGroup:
    return CoxeterGroup(sy_generators(sys, Y).diagram)


# ---------------------------------------------------------------- action maps

class ActionTables:
    """Left action of each generator on the list of all admissible sets, as index maps."""

    def __init__(self, sys: RootSystem):
        self.sys = sys
        sets: list[ASet] = []
        for Y in adm.orbit_representatives(sys):
            sets.extend(adm.orbit_of(sys, Y).members)
        self.sets = sets
        self.index = {B: k for k, B in enumerate(sets)}
        self.table = {}
        for v in sys.nodes:
            self.table[E(v)] = tuple(self.index[adm.act_e(sys, v, B)] for B in sets)
            self.table[R(v)] = tuple(self.index[adm.act_r(sys, v, B)] for B in sets)

    def word_map(self, w: Word) -> tuple[int, ...]:
        m = list(range(len(self.sets)))
        for t in reversed(w.tokens):
            tab = self.table[t]
            m = [tab[x] for x in m]
        return tuple(m)

    @staticmethod
    def compose(f, g) -> tuple[int, ...]:
        """f after g."""
        return tuple(f[x] for x in g)


@functools.lru_cache(maxsize=None)
def action_tables(sys: RootSystem) -> ActionTables:
    return ActionTables(sys)


# groups up to this order get an action lookup table
LOOKUP_LIMIT = 1000


@functools.lru_cache(maxsize=None)
def coset_lookup(sys: RootSystem, Y: tuple[int, ...]) -> dict | None:
    """Map from the action of e_Y h on admissible sets to h, when that action is faithful."""
    Y = _normalize_Y(Y)
    if not Y or sys.name not in SY_TABLE:
        return None
    group = coxeter_group(sys, Y)
    if group.order() > LOOKUP_LIMIT:
        return None
    sy = sy_generators(sys, Y)
    act = action_tables(sys)
    gen_maps = [act.word_map(g) for g in sy.gens]
    unit = act.word_map(sy.identity_word)
    start = group.from_word(())
    found = {unit: start}
    queue = deque([(start, unit)])
    seen = {start.matrix}
    while queue:
        h, f = queue.popleft()
        for i, g in enumerate(gen_maps):
            m = group.mul(h.matrix, group.gens[i])
            if m in seen:
                continue
            seen.add(m)
            f2 = act.compose(f, g)
            if f2 in found:
                return None
            el = group.element(m)
            found[f2] = el
            queue.append((el, f2))
    return found


# ---------------------------------------------------------------- a_B, a_B^b

def brink_howlett(sys: RootSystem, frm: ASet, to: ASet) -> Word:
    """Shortest e-word moving ``frm`` to ``to`` in the left action through height-0 sets."""
    return _bh(sys, tuple(sorted(frm)), tuple(sorted(to)))


@functools.lru_cache(maxsize=None)
def _bh(sys: RootSystem, frm: ASet, to: ASet) -> Word:
    orbit = adm.orbit_containing(sys, frm)
    if to not in orbit or orbit.height(frm) != 0 or orbit.height(to) != 0:
        raise ValueError("Brink-Howlett words join height-0 sets of one orbit")
    parent = {frm: None}
    queue = deque([frm])
    while queue:
        X = queue.popleft()
        if X == to:
            break
        for k in sys.nodes:
            Z = adm.act_e(sys, k, X)
            if Z in orbit and orbit.height(Z) == 0 and Z not in parent:
                parent[Z] = (X, k)
                queue.append(Z)
    if to not in parent:
        raise NormalFormError("height-0 set unreachable by e-moves")
    applied = []
    X = to
    while parent[X] is not None:
        X, k = parent[X]
        applied.append(k)
    # applied lists the moves last-first, which is left-action word order
    return Word(tuple(E(k) for k in applied))


@dataclass(frozen=True)
class CanonicalWord:
    word: Word
    target: ASet
    forward: bool

    def __str__(self) -> str:
        return str(self.word)


def _Y_of(sys: RootSystem, B: ASet) -> tuple[int, ...]:
    if sys.name in adm.COCLIQUE_TABLE:
        return adm.classify_orbit(sys, B)
    return adm._member_lookup(sys)[B]


def coclique_of(sys: RootSystem, B: ASet) -> tuple[int, ...]:
    """The representative coclique Y of the orbit containing B."""
    return _Y_of(sys, tuple(sorted(B)))


def _rule(sys: RootSystem, B: ASet):
    """Which clause builds the canonical words for B: ('i',), ('ii', k) or ('iii', k, j)."""
    orbit = adm.orbit_containing(sys, B)
    het = orbit.height(B)
    base = orbit.base_set
    if het == 0 and len(adm.simple_nodes(sys, B)) == len(adm.simple_nodes(sys, base)):
        return ("i",)
    low = adm.lowering_nodes(sys, B)
    if low:
        return ("ii", low[0])
    pairs = sorted(adm.lowering_e_nodes(sys, B))
    if pairs:
        return ("iii",) + pairs[0]
    if het == 0:
        return ("i",)
    raise NormalFormError(f"no construction rule applies to {B}")


@functools.lru_cache(maxsize=None)
def _aB(sys: RootSystem, B: ASet) -> Word:
    if not B:
        return Word()
    Y = _Y_of(sys, B)
    rule = _rule(sys, B)
    if rule[0] == "i":
        base = adm.orbit_containing(sys, B).base_set
        return brink_howlett(sys, base, B) * e_hat(Y)
    if rule[0] == "ii":
        k = rule[1]
        return Word((R(k),)) * _aB(sys, adm.act_r(sys, k, B))
    _, k, j = rule
    return Word((E(j),)) * _aB(sys, adm.act_e(sys, k, B))


@functools.lru_cache(maxsize=None)
def _aback(sys: RootSystem, B: ASet) -> Word:
    if not B:
        return Word()
    Y = _Y_of(sys, B)
    rule = _rule(sys, B)
    if rule[0] == "i":
        base = adm.orbit_containing(sys, B).base_set
        return op_reverse(brink_howlett(sys, B, base)) * e_hat(Y)
    if rule[0] == "ii":
        k = rule[1]
        return Word((R(k),)) * _aback(sys, adm.act_r(sys, k, B))
    _, k, _ = rule
    return Word((E(k),)) * _aback(sys, adm.act_e(sys, k, B))


def build_aB(sys: RootSystem, B: ASet) -> CanonicalWord:
    return CanonicalWord(_aB(sys, tuple(sorted(B))), tuple(sorted(B)), True)


def build_aback(sys: RootSystem, B: ASet) -> CanonicalWord:
    return CanonicalWord(_aback(sys, tuple(sorted(B))), tuple(sorted(B)), False)


# ---------------------------------------------------------------- normal forms

@dataclass(frozen=True)
class NormalForm:
    sys: RootSystem
    Y: tuple[int, ...]
    B: ASet
    Bp: ASet
    h: CoxeterElement
    delta: int

    def key(self):
        return (self.Y, self.B, self.Bp, self.h.word, self.delta)

    def __eq__(self, other) -> bool:
        return isinstance(other, NormalForm) and self.sys is other.sys and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    @property
    def height(self) -> int:
        if not self.Y and not self.B:
            return self.h.length
        orbit = adm.orbit_containing(self.sys, self.B)
        return orbit.height(self.B) + self.h.length + orbit.height(self.Bp)

    def to_json(self) -> dict:
        roots = self.sys.positive_roots
        return {"type": self.sys.name, "Y": list(self.Y),
                "B": [list(roots[b]) for b in self.B],
                "Bp": [list(roots[b]) for b in self.Bp],
                "h": list(self.h.word), "delta": self.delta}

    @classmethod
    def from_json(cls, sys: RootSystem, data: dict) -> "NormalForm":
        if data.get("type", sys.name) != sys.name:
            raise ValueError(f"normal form is for {data['type']}, not {sys.name}")
        Y = tuple(sorted(data["Y"]))
        B = adm.as_set(sys, [tuple(r) for r in data["B"]])
        Bp = adm.as_set(sys, [tuple(r) for r in data["Bp"]])
        h = coxeter_group(sys, Y).from_word(tuple(data["h"]))
        return cls(sys, Y, B, Bp, h, int(data["delta"]))


def synthesize(nf: NormalForm) -> Word:
    """The word delta^i a_B zeta(h) a_B'^op realizing ``nf``."""
    sys = nf.sys
    sy = sy_generators(sys, nf.Y)
    middle = sy.word_of(nf.h.word) if nf.h.word else Word()
    w = _aB(sys, nf.B) * middle * op_reverse(_aB(sys, nf.Bp))
    return w.times_delta(nf.delta)


def _h_by_action(sys: RootSystem, w: Word, B: ASet, Bp: ASet, Y) -> CoxeterElement | None:
    table = coset_lookup(sys, Y)
    if table is None:
        return None
    act = action_tables(sys)
    g = op_reverse(_aback(sys, B)) * w * _aback(sys, Bp)
    h0 = table.get(act.word_map(g))
    if h0 is None:
        raise NormalFormError("conjugated word does not act like an element of H_Y")
    group = coxeter_group(sys, Y)
    cB = _correction_by_action(sys, B)
    cBp = _correction_by_action(sys, Bp)
    return group.product(group.inverse(cB), h0, cBp)


@functools.lru_cache(maxsize=None)
def _correction_by_action(sys: RootSystem, B: ASet) -> CoxeterElement:
    Y = _Y_of(sys, B)
    act = action_tables(sys)
    c = coset_lookup(sys, Y).get(act.word_map(op_reverse(_aback(sys, B)) * _aB(sys, B)))
    if c is None:
        raise NormalFormError("op(a_B^b) a_B does not act like an element of H_Y")
    return c


def _pure_r(w: Word) -> bool:
    return all(t > RBASE for t in w.tokens)


def exact_height(sys: RootSystem, w: Word) -> int | None:
    """Least height of any word for the element of ``w`` when the action pins it down."""
    if sys.name not in SY_TABLE:
        return None
    B = act_word(sys, w, Side.LEFT, ())
    if not B:
        return None
    Bp = act_word(sys, w, Side.RIGHT, ())
    Y = _Y_of(sys, B)
    h = _h_by_action(sys, w, B, Bp, Y)
    if h is None:
        return None
    return adm.set_height(sys, B) + h.length + adm.set_height(sys, Bp)


def _reduce_certified(sys: RootSystem, w: Word, caps: SearchCaps, floor: int | None):
    r = reduce(sys, w, caps, floor)
    if not r.certified:
        r = reduce(sys, w, caps.escalated(), floor)
    return r


def peel(sys: RootSystem, w: Word, Y, caps: SearchCaps = DEFAULT_CAPS) -> tuple[CoxeterElement, int]:
    """Split a word of delta^Z pi(H_Y) into (h, i) with w == delta^i zeta_Y(h).

    Left descents are found by reduction: s is one when s.w reduces by one.
    When the action identifies the element the descents are read off first.
    """
    Y = _normalize_Y(Y)
    sy = sy_generators(sys, Y)
    group = coxeter_group(sys, Y)
    known = None
    table = coset_lookup(sys, Y)
    if table is not None:
        known = table.get(action_tables(sys).word_map(w))
        if known is None:
            raise NormalFormError("word does not act like an element of H_Y")
    cur = _reduce_certified(sys, w, caps, known.length if known else None).word
    peeled: list[int] = []
    rest = known
    while cur.height > 0:
        order = range(len(sy.gens))
        if rest is not None:
            order = [i for i in order if group.product(group.gens_el[i], rest).length < rest.length]
        for i in order:
            # s_i is an involution modulo e_Y, so s_i.cur is the element with s_i peeled
            r = reduce(sys, sy.gens[i] * cur, caps, cur.height - 1)
            if r.word.height == cur.height - 1:
                peeled.append(i)
                cur = r.word
                if rest is not None:
                    rest = group.product(group.gens_el[i], rest)
                break
        else:
            raise CapsExhausted(f"no left descent found at height {cur.height}")
    eq = homog_equiv_detail(sys, cur, sy.identity_word, caps)
    if eq.delta_offset is None:
        raise NormalFormError("height-0 residue is not equivalent to e_Y")
    return group.from_word(tuple(peeled)), eq.delta_offset


def decompose(sys: RootSystem, w: Word, caps: SearchCaps = DEFAULT_CAPS) -> NormalForm:
    """Normal form (Y, B, B', h, i) with w == delta^i a_B e_Y h a_B'^op."""
    B = act_word(sys, w, Side.LEFT, ())
    Bp = act_word(sys, w, Side.RIGHT, ())
    if not B:
        if not _pure_r(w):
            raise NormalFormError("word with an e-token left the empty set fixed")
        group = coxeter_group(sys, ())
        pos = {v: k for k, v in enumerate(sys.nodes)}
        h = group.from_word(tuple(pos[t - RBASE] for t in w.tokens))
        return NormalForm(sys, (), (), (), h, w.delta)
    Y = _Y_of(sys, B)
    h = _h_by_action(sys, w, B, Bp, Y)
    if h is None:
        h = _h_by_peeling(sys, w, B, Bp, Y, caps)
    nf = NormalForm(sys, Y, B, Bp, h, 0)
    return NormalForm(sys, Y, B, Bp, h, _delta_offset(sys, w, nf, caps))


def _h_by_peeling(sys, w, B, Bp, Y, caps) -> CoxeterElement:
    group = coxeter_group(sys, Y)
    g = op_reverse(_aback(sys, B)) * w * _aback(sys, Bp)
    h0, _ = peel(sys, g, Y, caps)
    cB, _ = _correction_by_peeling(sys, B, caps)
    cBp, _ = _correction_by_peeling(sys, Bp, caps)
    return group.product(group.inverse(cB), h0, cBp)


@functools.lru_cache(maxsize=None)
def _correction_by_peeling(sys, B, caps):
    return peel(sys, op_reverse(_aback(sys, B)) * _aB(sys, B), _Y_of(sys, B), caps)


def correction(sys: RootSystem, B: ASet, caps: SearchCaps = DEFAULT_CAPS) -> tuple[CoxeterElement, int]:
    """(c_B, p) with op(a_B^b) a_B == delta^p zeta_Y(c_B)."""
    return _correction_by_peeling(sys, tuple(sorted(B)), caps)


def _delta_offset(sys: RootSystem, w: Word, nf: NormalForm, caps: SearchCaps) -> int:
    floor = nf.height
    target = _canonical_target(sys, nf, caps)
    rw = _reduce_certified(sys, w, caps, floor)
    if not rw.certified:
        raise CapsExhausted(f"could not reduce {w} to height {floor}")
    if rw.word.tokens == target.tokens:
        return rw.word.delta - target.delta
    for c in (caps, caps.escalated()):
        eq = homog_equiv_detail(sys, rw.word, target, c)
        if eq.delta_offset is not None:
            return eq.delta_offset
    raise CapsExhausted(f"reduced word {rw.word} not matched with its normal form")


@functools.lru_cache(maxsize=4096)
def _canonical_target(sys: RootSystem, nf: NormalForm, caps: SearchCaps) -> Word:
    return reduce(sys, synthesize(nf), caps, nf.height).word


def multiply(sys: RootSystem, x: NormalForm, y: NormalForm, caps: SearchCaps = DEFAULT_CAPS) -> NormalForm:
    return decompose(sys, synthesize(x) * synthesize(y), caps)


def identity_form(sys: RootSystem) -> NormalForm:
    return NormalForm(sys, (), (), (), coxeter_group(sys, ()).from_word(()), 0)


# ---------------------------------------------------------------- sampling

def elements_by_length(group: CoxeterGroup, max_length: int) -> list[list[CoxeterElement]]:
    """Elements of ``group`` grouped by length, up to ``max_length``."""
    layers = [[group.element(group.identity)]]
    seen = {group.identity}
    for _ in range(max_length):
        nxt = []
        for x in layers[-1]:
            for g in group.gens:
                m = group.mul(x.matrix, g)
                if m not in seen:
                    seen.add(m)
                    nxt.append(group.element(m))
        if not nxt:
            break
        layers.append(nxt)
    return layers


class TripleSampler:
    """Uniform sampler of normal forms of height at most ``max_height`` (delta aside)."""

    def __init__(self, sys: RootSystem, max_height: int):
        self.sys = sys
        self.max_height = max_height
        self.cells = []
        for Y in adm.orbit_representatives(sys):
            orbit = adm.orbit_of(sys, Y)
            by_h: dict[int, list[ASet]] = {}
            for B, hB in zip(orbit.members, orbit.heights):
                if hB <= max_height:
                    by_h.setdefault(hB, []).append(B)
            layers = elements_by_length(coxeter_group(sys, Y), max_height)
            for h1, left in by_h.items():
                for h2, right in by_h.items():
                    for ln, elems in enumerate(layers):
                        if h1 + ln + h2 <= max_height:
                            self.cells.append((Y, left, elems, right))
        self.weights = [len(a) * len(b) * len(c) for _, a, b, c in self.cells]
        self.total = sum(self.weights)

    def sample(self, rng, delta_range: tuple[int, int] = (-2, 2)) -> NormalForm:
        Y, left, elems, right = rng.choices(self.cells, weights=self.weights)[0]
        return NormalForm(self.sys, Y, rng.choice(left), rng.choice(right),
                          rng.choice(elems), rng.randint(*delta_range))


# ---------------------------------------------------------------- verification and counts

@dataclass(frozen=True)
class RelationCheck:
    relation: str
    passed: bool
    detail: str = ""


def verify_matsumoto_tits(sys: RootSystem, Y, caps: SearchCaps = DEFAULT_CAPS) -> list[RelationCheck]:
    """Check s^2 = e_Y and the braid relations of M_Y on the words of S_Y."""
    Y = _normalize_Y(Y)
    sy = sy_generators(sys, Y)
    unit = sy.identity_word
    out = []
    for i, s in enumerate(sy.gens):
        r = reduce(sys, s * s, caps, 0)
        eq = homog_equiv_detail(sys, r.word, unit, caps)
        out.append(RelationCheck(f"s{i}^2 = e_Y", eq.equivalent, str(r.word)))
    d = sy.diagram
    for i in range(len(sy.gens)):
        for j in range(i + 1, len(sy.gens)):
            a, b = sy.gens[i], sy.gens[j]
            if d.adjacent(i, j):
                lhs, rhs, name = a * b * a, b * a * b, f"s{i} s{j} s{i} = s{j} s{i} s{j}"
            else:
                lhs, rhs, name = a * b, b * a, f"s{i} s{j} = s{j} s{i}"
            eq = homog_equiv_detail(sys, lhs, rhs, caps)
            detail = "" if eq.equivalent else (
                f"delta offset {eq.delta_offset}" if eq.delta_offset is not None
                else f"not found within caps ({eq.visited} words)")
            out.append(RelationCheck(name, eq.equivalent, detail))
    return out


def rank(sys: RootSystem) -> int:
    """sum over Y of |W(M_Y)| |WB_Y|^2."""
    total = 0
    for Y in adm.orbit_representatives(sys):
        orbit = adm.orbit_of(sys, Y)
        total += weyl_group_order(adm.m_y_type(sys, Y)) * len(orbit) ** 2
    return total


def tl_rank(sys: RootSystem) -> int:
    """1 + sum over nonempty Y of |(WB_Y)^0|^2."""
    total = 1
    for Y in adm.orbit_representatives(sys):
        if Y:
            total += len(adm.height0_members(adm.orbit_of(sys, Y))) ** 2
    return total
