"""Admissible root sets, their closure, and the Brauer monoid action on them.

An admissible set is stored as a sorted tuple of positive-root ids of its
root system (ids follow the (height, lex) order of ``positive_roots``).
"""

from __future__ import annotations

import enum
import functools
import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .rootsystem import CoxeterDiagram, Root, RootSystem

ASet = tuple[int, ...]

DEFAULT_ORBIT_CAP = 10_000_000

# column Y of the coclique table, keyed by |B_Y|
COCLIQUE_TABLE: dict[str, dict[int, tuple[int, ...]]] = {
    "E6": {0: (), 1: (6,), 2: (4, 6), 4: (2, 3, 6)},
    "E7": {0: (), 1: (7,), 2: (5, 7), 3: (2, 5, 7), 4: (2, 3, 7), 7: (2, 3, 5, 7)},
    "E8": {0: (), 1: (8,), 2: (6, 8), 4: (2, 3, 8), 8: (2, 3, 5, 8)},
}


class AdmissibilityError(ValueError):
    pass


class OrbitTooLarge(RuntimeError):
    pass


class Comparison(enum.Enum):
    FIXED = "fixed"
    RAISING = "raising"
    LOWERING = "lowering"


def as_set(sys: RootSystem, roots: Iterable[Root | int]) -> ASet:
    """Canonical admissible-set key from root vectors or root ids."""
    ids = set()
    for r in roots:
        if isinstance(r, int):
            ids.add(r)
            continue
        r = tuple(r)
        if r not in sys.index:
            raise ValueError(f"{r} is not a positive root of {sys.name}")
        ids.add(sys.index[r])
    return tuple(sorted(ids))


def roots_of(sys: RootSystem, B: ASet) -> list[Root]:
    return [sys.positive_roots[b] for b in B]


def _check_orthogonal(sys: RootSystem, X: Sequence[int]) -> None:
    for a, b in itertools.combinations(X, 2):
        if sys.ip[a][b] != 0:
            raise AdmissibilityError(
                f"roots {sys.positive_roots[a]} and {sys.positive_roots[b]} are not orthogonal")


@functools.lru_cache(maxsize=None)
def _neighbour_masks(sys: RootSystem) -> list[int]:
    """For each root id, a bitmask of the roots with inner product +-1."""
    return [sum(1 << g for g, c in enumerate(row) if c in (1, -1)) for row in sys.ip]


_triple_memo: dict = {}
_forced_memo: dict = {}


def _triple_sum(sys: RootSystem, beta: int, triple: tuple[int, ...]) -> int:
    key = (sys.name, beta, triple)
    hit = _triple_memo.get(key)
    if hit is not None:
        return hit
    row = sys.ip[beta]
    v = [2 * x for x in sys.positive_roots[beta]]
    for g in triple:
        c = row[g]
        v = [x - c * y for x, y in zip(v, sys.positive_roots[g])]
    v = tuple(v)
    if not any(x > 0 for x in v):
        v = tuple(-x for x in v)
    if v not in sys.index:
        raise AdmissibilityError(f"triple sum {v} is not a root")
    _triple_memo[key] = sys.index[v]
    return sys.index[v]


def _required(sys: RootSystem, X: Sequence[int]) -> set[int]:
    """Roots forced into X by the triple condition (positive representatives)."""
    xm = 0
    for g in X:
        xm |= 1 << g
    out: set[int] = set()
    for beta, nm in enumerate(_neighbour_masks(sys)):
        m = nm & xm
        if m.bit_count() < 3:
            continue
        key = (sys.name, beta, m)
        forced = _forced_memo.get(key)
        if forced is None:
            hs = [g for g in range(m.bit_length()) if m >> g & 1]
            forced = {_triple_sum(sys, beta, t) for t in itertools.combinations(hs, 3)}
            _forced_memo[key] = forced
        out |= forced
    return out


def is_admissible(sys: RootSystem, X: Iterable[int]) -> bool:
    X = tuple(sorted(set(X)))
    _check_orthogonal(sys, X)
    members = set(X)
    return all(r in members for r in _required(sys, X))


@functools.lru_cache(maxsize=None)
def _closure_cached(sys: RootSystem, X: frozenset[int]) -> ASet:
    members = set(X)
    while True:
        # every forced root lies in any admissible superset, so add them all at once
        missing = _required(sys, sorted(members)) - members
        if not missing:
            return tuple(sorted(members))
        members |= missing
        for new in missing:
            if any(sys.ip[new][m] for m in members if m != new):
                raise AdmissibilityError("closure lost orthogonality")


def closure(sys: RootSystem, X: Iterable[int]) -> ASet:
    """Smallest admissible set containing the orthogonal set ``X``."""
    X = frozenset(X)
    _check_orthogonal(sys, tuple(X))
    return _closure_cached(sys, X)


def act_r(sys: RootSystem, i: int, B: ASet) -> ASet:
    table = sys.simple_reflect[i]
    return tuple(sorted(table[b] for b in B))


def act_e(sys: RootSystem, i: int, B: ASet) -> ASet:
    a = sys.simple[i]
    if a in B:
        return B
    row = sys.ip[a]
    beta = next((b for b in B if row[b] != 0), None)
    if beta is None:
        return _closure_cached(sys, frozenset(B) | {a})
    ri = sys.simple_reflect[i]
    rb = sys.reflect_pos[beta]
    return tuple(sorted(rb[ri[b]] for b in B))


def act_e_via(sys: RootSystem, i: int, B: ASet, beta: int) -> ASet:
    """Case-3 image of e_i computed with an explicit choice of beta."""
    ri = sys.simple_reflect[i]
    rb = sys.reflect_pos[beta]
    return tuple(sorted(rb[ri[b]] for b in B))


def compare(sys: RootSystem, i: int, B: ASet) -> Comparison:
    C = act_r(sys, i, B)
    if C == B:
        return Comparison.FIXED
    moved = [b for b in B if b not in set(C)]
    h = min(sys.heights[b] for b in moved)
    a = sys.simple[i]
    # het(r_i beta) = het(beta) - (beta, alpha_i)
    if any(sys.heights[b] == h and sys.ip[b][a] > 0 for b in moved):
        return Comparison.LOWERING
    return Comparison.RAISING


def simple_nodes(sys: RootSystem, B: ASet) -> list[int]:
    """Nodes i with alpha_i in B."""
    return sorted(sys.node_of_simple[b] for b in B if b in sys.node_of_simple)


@dataclass
class OrbitPoset:
    sys: RootSystem
    members: list[ASet]
    index: dict[ASet, int]
    # (lower, node, upper) for every raising move r_node
    cover_edges: list[tuple[int, int, int]]
    max_element: int
    heights: list[int]
    base: int
    moves: list[dict[int, int]] = field(repr=False, default_factory=list)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, B: ASet) -> bool:
        return B in self.index

    def height(self, B: ASet) -> int:
        return self.heights[self.index[B]]

    @property
    def size(self) -> int:
        return len(self.members[0]) if self.members else 0

    @property
    def base_set(self) -> ASet:
        return self.members[self.base]

    @property
    def top(self) -> ASet:
        return self.members[self.max_element]

    def level(self, B: ASet) -> tuple[int, tuple[int, ...]]:
        return (self.height(B), tuple(sorted(self.sys.heights[b] for b in B)))


def enumerate_orbit(sys: RootSystem, B0: ASet, base: ASet | None = None,
                    cap: int = DEFAULT_ORBIT_CAP) -> OrbitPoset:
    """W-orbit of ``B0`` with its raising edges and the height function.

    ``base`` is the height-0 reference set; by default the member with the
    most simple roots (ties: smallest node list) is used.
    """
    B0 = tuple(sorted(B0))
    members = [B0]
    index = {B0: 0}
    queue = deque([B0])
    while queue:
        B = queue.popleft()
        for i in sys.nodes:
            C = act_r(sys, i, B)
            if C not in index:
                if len(members) >= cap:
                    raise OrbitTooLarge(f"orbit exceeds {cap} members")
                index[C] = len(members)
                members.append(C)
                queue.append(C)

    moves: list[dict[int, int]] = []
    edges = []
    up: list[list[int]] = [[] for _ in members]
    down: list[list[int]] = [[] for _ in members]
    for k, B in enumerate(members):
        mv = {}
        for i in sys.nodes:
            C = index[act_r(sys, i, B)]
            mv[i] = C
            if compare(sys, i, B) is Comparison.RAISING:
                edges.append((k, i, C))
                up[k].append(C)
                down[C].append(k)
        moves.append(mv)
    tops = [k for k in range(len(members)) if not up[k]]
    if len(tops) != 1:
        raise AssertionError(f"orbit has {len(tops)} maximal elements")
    top = tops[0]
    dist = [-1] * len(members)
    dist[top] = 0
    queue2 = deque([top])
    while queue2:
        v = queue2.popleft()
        for w in down[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue2.append(w)
    if base is None:
        base = _default_base(sys, members)
    base_idx = index[tuple(sorted(base))]
    d = dist[base_idx]
    heights = [d - x for x in dist]
    return OrbitPoset(sys, members, index, edges, top, heights, base_idx, moves)


def _default_base(sys: RootSystem, members: Sequence[ASet]) -> ASet:
    best = None
    for B in members:
        simp = simple_nodes(sys, B)
        if closure(sys, [sys.simple[v] for v in simp]) != B:
            continue
        key = (-len(simp), simp)
        if best is None or key < best[0]:
            best = (key, B)
    assert best is not None, "orbit without a closure-of-simple-roots member"
    return best[1]


def height0_members(orbit: OrbitPoset) -> list[ASet]:
    return [B for B, h in zip(orbit.members, orbit.heights) if h == 0]


def cocliques_Y(sys: RootSystem) -> list[tuple[int, ...]]:
    if sys.name not in COCLIQUE_TABLE:
        raise ValueError(f"no coclique table for {sys.name}")
    return list(COCLIQUE_TABLE[sys.name].values())


def base_set(sys: RootSystem, Y: Iterable[int]) -> ASet:
    """B_Y, the admissible closure of the simple roots indexed by Y."""
    return closure(sys, [sys.simple[i] for i in Y])


def classify_orbit(sys: RootSystem, B: ASet) -> tuple[int, ...]:
    table = COCLIQUE_TABLE.get(sys.name)
    if table is None:
        raise ValueError(f"no coclique table for {sys.name}")
    if len(B) not in table:
        raise ValueError(f"no orbit of admissible sets of size {len(B)} in {sys.name}")
    return table[len(B)]


def all_cocliques(diagram: CoxeterDiagram) -> list[tuple[int, ...]]:
    out = []
    nodes = diagram.nodes

    def grow(start: int, cur: list[int]) -> None:
        out.append(tuple(cur))
        for k in range(start, len(nodes)):
            v = nodes[k]
            if all(not diagram.adjacent(v, u) for u in cur):
                cur.append(v)
                grow(k + 1, cur)
                cur.pop()

    grow(0, [])
    return out


@functools.lru_cache(maxsize=None)
def orbit_representatives(sys: RootSystem) -> tuple[tuple[int, ...], ...]:
    """One coclique Y per W-orbit in the admissible sets.

    E-types use the fixed table; other types are derived by closing every
    coclique and keeping one representative per orbit.
    """
    if sys.name in COCLIQUE_TABLE:
        return tuple(COCLIQUE_TABLE[sys.name].values())
    reps: list[tuple[int, ...]] = []
    covered: set[ASet] = set()
    for Y in sorted(all_cocliques(sys.diagram), key=lambda y: (len(y), y)):
        B = base_set(sys, Y)
        if B in covered:
            continue
        orbit = orbit_of(sys, Y)
        covered.update(orbit.members)
        reps.append(Y)
    return tuple(reps)


# optional persistent store with load(sys, Y) / save(sys, Y, orbit); see cache.py
_orbit_store = None


def set_orbit_store(store) -> None:
    global _orbit_store
    _orbit_store = store
    orbit_of.cache_clear()
    _member_lookup.cache_clear()
    orbit_representatives.cache_clear()


@functools.lru_cache(maxsize=None)
def orbit_of(sys: RootSystem, Y: tuple[int, ...]) -> OrbitPoset:
    if _orbit_store is not None:
        orbit = _orbit_store.load(sys, Y)
        if orbit is not None:
            return orbit
    B = base_set(sys, Y)
    if sys.name in COCLIQUE_TABLE:
        orbit = enumerate_orbit(sys, B, base=B)
    else:
        orbit = enumerate_orbit(sys, B)
    if _orbit_store is not None:
        _orbit_store.save(sys, Y, orbit)
    return orbit


def poset_from_parts(sys: RootSystem, members: list[ASet], edges, heights: list[int],
                     max_element: int, base: int) -> OrbitPoset:
    """Rebuild an orbit poset from stored data, recomputing the move table."""
    index = {B: k for k, B in enumerate(members)}
    moves = [{i: index[act_r(sys, i, B)] for i in sys.nodes} for B in members]
    return OrbitPoset(sys, members, index, [tuple(e) for e in edges], max_element,
                      list(heights), base, moves)


@functools.lru_cache(maxsize=None)
def _member_lookup(sys: RootSystem) -> dict[ASet, tuple[int, ...]]:
    out = {}
    for Y in orbit_representatives(sys):
        for B in orbit_of(sys, Y).members:
            out[B] = Y
    return out


def orbit_containing(sys: RootSystem, B: ASet) -> OrbitPoset:
    B = tuple(sorted(B))
    if sys.name in COCLIQUE_TABLE:
        orbit = orbit_of(sys, classify_orbit(sys, B))
    else:
        Y = _member_lookup(sys).get(B)
        if Y is None:
            raise ValueError(f"{B} is not an admissible set of {sys.name}")
        orbit = orbit_of(sys, Y)
    if B not in orbit:
        raise ValueError(f"{B} is not an admissible set of {sys.name}")
    return orbit


def set_height(sys: RootSystem, B: ASet) -> int:
    return orbit_containing(sys, B).height(B)


def level(sys: RootSystem, B: ASet) -> tuple[int, tuple[int, ...]]:
    return orbit_containing(sys, B).level(B)


def orthogonal_nodes(sys: RootSystem, B: ASet) -> list[int]:
    return [v for v in sys.nodes if all(sys.ip[sys.simple[v]][b] == 0 for b in B)]


def m_y_type(sys: RootSystem, Y: Iterable[int]) -> CoxeterDiagram:
    """Diagram induced on the nodes orthogonal to the top of the orbit of B_Y."""
    orbit = orbit_of(sys, tuple(sorted(Y)))
    return sys.diagram.induced(orthogonal_nodes(sys, orbit.top))


def orthogonal_simple_system(sys: RootSystem, B: ASet) -> list[int]:
    sub = [r for r in range(len(sys.positive_roots)) if all(sys.ip[r][b] == 0 for b in B)]
    subset = set(sub)
    sums = set()
    for a, b in itertools.combinations(sub, 2):
        v = tuple(x + y for x, y in zip(sys.positive_roots[a], sys.positive_roots[b]))
        if v in sys.index and sys.index[v] in subset:
            sums.add(sys.index[v])
    return [r for r in sub if r not in sums]


def subsystem_type(sys: RootSystem, B: ASet) -> list[str]:
    """ADE components of the root subsystem orthogonal to ``B``."""
    simple = orthogonal_simple_system(sys, B)
    edges = frozenset(frozenset((a, b)) for a, b in itertools.combinations(simple, 2)
                      if sys.ip[a][b] != 0)
    for e in edges:
        a, b = tuple(e)
        if sys.ip[a][b] != -1:
            raise AssertionError("extracted simple system has a positive inner product")
    return CoxeterDiagram(tuple(simple), edges).component_types()


def count_containing(orbit: OrbitPoset, node: int) -> int:
    a = orbit.sys.simple[node]
    return sum(1 for B in orbit.members if a in B)


def lowering_nodes(sys: RootSystem, B: ASet) -> list[int]:
    return [i for i in sys.nodes if compare(sys, i, B) is Comparison.LOWERING]


def lowering_e_nodes(sys: RootSystem, B: ASet) -> list[tuple[int, int]]:
    """Pairs (k, j): j ~ k, alpha_j in B, e_k keeps the height and lowers the level."""
    orbit = orbit_containing(sys, B)
    lev = orbit.level(B)
    out = []
    for k in sys.nodes:
        js = [j for j in sys.diagram.neighbors(k) if sys.simple[j] in B]
        if not js:
            continue
        C = act_e(sys, k, B)
        if C not in orbit:
            continue
        if orbit.height(C) == lev[0] and orbit.level(C) < lev:
            out.extend((k, j) for j in js)
    return out
