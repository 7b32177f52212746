"""Simply laced root systems in simple-root coordinates.

Roots are integer tuples over the simple basis; the bilinear form is the
Cartan matrix of the diagram.  Nodes follow the Bourbaki labeling, so for
E-types the branch node is 4 and node 2 hangs off it.
"""

from __future__ import annotations

import functools
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

Root = tuple[int, ...]

_E_EDGES = {
    6: [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)],
    7: [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4), (6, 7)],
    8: [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4), (6, 7), (7, 8)],
}


class UnsupportedDiagram(ValueError):
    pass


@dataclass(frozen=True)
class CoxeterDiagram:
    """A simply laced diagram on an ordered set of nodes.

    The same class describes the full diagrams A_n, D_n, E_6..8 and the
    induced subdiagrams (M_Y, orthogonal subsystems) met later on, which
    may be disconnected or empty.
    """

    nodes: tuple[int, ...]
    edges: frozenset[frozenset[int]]
    name: str = ""

    @classmethod
    def of(cls, kind: str) -> "CoxeterDiagram":
        m = re.fullmatch(r"\s*([ADE])(\d+)\s*", kind.upper())
        if not m:
            raise UnsupportedDiagram(f"unsupported diagram kind {kind!r}")
        letter, n = m.group(1), int(m.group(2))
        if letter == "A" and n >= 1:
            pairs = [(i, i + 1) for i in range(1, n)]
        elif letter == "D" and n >= 4:
            pairs = [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
        elif letter == "E" and n in _E_EDGES:
            pairs = _E_EDGES[n]
        else:
            raise UnsupportedDiagram(f"unsupported diagram kind {kind!r}")
        return cls(tuple(range(1, n + 1)), frozenset(frozenset(p) for p in pairs), f"{letter}{n}")

    @property
    def rank(self) -> int:
        return len(self.nodes)

    def adjacent(self, i: int, j: int) -> bool:
        return frozenset((i, j)) in self.edges

    def neighbors(self, i: int) -> list[int]:
        return [j for j in self.nodes if self.adjacent(i, j)]

    def induced(self, nodes: Iterable[int]) -> "CoxeterDiagram":
        keep = tuple(sorted(set(nodes)))
        edges = frozenset(e for e in self.edges if e <= set(keep))
        return CoxeterDiagram(keep, edges)

    def components(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for start in self.nodes:
            if start in seen:
                continue
            comp = []
            queue = deque([start])
            seen.add(start)
            while queue:
                v = queue.popleft()
                comp.append(v)
                for w in self.neighbors(v):
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
            out.append(tuple(sorted(comp)))
        return out

    def component_types(self) -> list[str]:
        """ADE type of every connected component, sorted (A before D before E)."""
        types = [_classify_tree(self.induced(c)) for c in self.components()]
        return sorted(types, key=lambda t: (t[0], int(t[1:])))

    @property
    def kind(self) -> str:
        """Type string such as ``"E6"``, ``"A1 A3"`` or ``"empty"``."""
        if self.name:
            return self.name
        types = self.component_types()
        return " ".join(types) if types else "empty"

    def cartan(self) -> list[list[int]]:
        idx = {v: k for k, v in enumerate(self.nodes)}
        n = len(self.nodes)
        c = [[0] * n for _ in range(n)]
        for v in self.nodes:
            c[idx[v]][idx[v]] = 2
        for e in self.edges:
            a, b = sorted(e)
            c[idx[a]][idx[b]] = c[idx[b]][idx[a]] = -1
        return c


def _classify_tree(d: CoxeterDiagram) -> str:
    n = d.rank
    if len(d.edges) != n - 1:
        raise ValueError(f"diagram on {d.nodes} is not a tree")
    degrees = {v: len(d.neighbors(v)) for v in d.nodes}
    branch = [v for v, k in degrees.items() if k >= 3]
    if not branch:
        if max(degrees.values(), default=0) > 2:
            raise ValueError("not a path")
        return f"A{n}"
    if len(branch) > 1 or degrees[branch[0]] != 3:
        raise ValueError(f"non-ADE diagram on {d.nodes}")
    centre = branch[0]
    arms = []
    for start in d.neighbors(centre):
        length, prev, cur = 1, centre, start
        while True:
            nxt = [w for w in d.neighbors(cur) if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{n}"
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return f"E{n}"
    raise ValueError(f"non-ADE diagram with arms {arms}")


class RootSystem:
    """Positive roots of a simply laced diagram plus lookup tables.

    ``positive_roots`` is sorted by (height, coefficients); positions in
    that list are used as root identifiers throughout the package.
    """

    def __init__(self, diagram: CoxeterDiagram):
        self.diagram = diagram
        self.name = diagram.kind
        self.n = diagram.rank
        self.nodes = diagram.nodes
        self.gram = diagram.cartan()
        self.positive_roots: list[Root] = _enumerate_positive(self.gram)
        self.index = {r: k for k, r in enumerate(self.positive_roots)}
        self.heights = [sum(r) for r in self.positive_roots]
        self._node_pos = {v: k for k, v in enumerate(self.nodes)}
        self.simple = {v: self.index[_unit(self.n, k)] for v, k in self._node_pos.items()}
        self.node_of_simple = {r: v for v, r in self.simple.items()}
        n_pos = len(self.positive_roots)
        self.ip = [[self.form(a, b) for b in self.positive_roots] for a in self.positive_roots]
        # reflect_pos[m][k]: id of the positive representative of r_m(beta_k)
        self.reflect_pos = [
            [self.index[_positive(_reflect(self.positive_roots[k], self.positive_roots[m], self.ip[k][m]))]
             for k in range(n_pos)]
            for m in range(n_pos)
        ]
        self.simple_reflect = {v: self.reflect_pos[self.simple[v]] for v in self.nodes}

    def __repr__(self) -> str:
        return f"RootSystem({self.name})"

    def form(self, a: Sequence[int], b: Sequence[int]) -> int:
        if len(a) != self.n or len(b) != self.n:
            raise ValueError("dimension mismatch")
        g = self.gram
        return sum(a[i] * g[i][j] * b[j] for i in range(self.n) if a[i] for j in range(self.n) if b[j])

    def node_position(self, node: int) -> int:
        return self._node_pos[node]

    def simple_root(self, node: int) -> Root:
        return _unit(self.n, self._node_pos[node])

    def is_root(self, v: Sequence[int]) -> bool:
        v = tuple(v)
        return v in self.index or tuple(-x for x in v) in self.index

    @property
    def highest_root(self) -> Root:
        return self.positive_roots[-1]


def _unit(n: int, k: int) -> Root:
    return tuple(1 if i == k else 0 for i in range(n))


def _positive(v: Root) -> Root:
    return v if any(x > 0 for x in v) else tuple(-x for x in v)


def _reflect(v: Root, mirror: Root, c: int) -> Root:
    return tuple(x - c * m for x, m in zip(v, mirror))


def _enumerate_positive(gram: list[list[int]]) -> list[Root]:
    n = len(gram)
    simple = [_unit(n, k) for k in range(n)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        beta = queue.popleft()
        for k in range(n):
            c = sum(beta[j] * gram[j][k] for j in range(n))
            if c < 0:
                gamma = tuple(b + (-c if j == k else 0) for j, b in enumerate(beta))
                if gamma not in seen:
                    seen.add(gamma)
                    queue.append(gamma)
    return sorted(seen, key=lambda r: (sum(r), r))


@functools.lru_cache(maxsize=None)
def root_system(kind: str) -> RootSystem:
    return RootSystem(CoxeterDiagram.of(kind))


def build_root_system(diagram: CoxeterDiagram) -> RootSystem:
    if not diagram.name:
        raise UnsupportedDiagram("only the named A/D/E diagrams are supported")
    return root_system(diagram.name)


def parse_root(sys: RootSystem, text: str) -> Root:
    """Parse ``a3`` (a simple root) or a coefficient list ``1,0,1,1,0,0``."""
    text = text.strip()
    m = re.fullmatch(r"a(\d+)", text)
    if m:
        node = int(m.group(1))
        if node not in sys.nodes:
            raise ValueError(f"no node {node} in {sys.name}")
        return sys.simple_root(node)
    try:
        coeffs = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"malformed root {text!r}") from None
    if len(coeffs) != sys.n:
        raise ValueError(f"root {text!r} has {len(coeffs)} coefficients, expected {sys.n}")
    return coeffs


def format_root(r: Root) -> str:
    return ",".join(str(x) for x in r)


def inner(sys: RootSystem, a: Sequence[int], b: Sequence[int]) -> int:
    return sys.form(a, b)


def reflect(sys: RootSystem, mirror: Sequence[int], v: Sequence[int]) -> Root:
    """Reflect ``v`` in the hyperplane of the root ``mirror``."""
    if not sys.is_root(mirror):
        raise ValueError(f"{tuple(mirror)} is not a root of {sys.name}")
    return _reflect(tuple(v), tuple(mirror), sys.form(v, mirror))


def root_height(v: Sequence[int]) -> int:
    return sum(v)


def weyl_group_order(diagram: CoxeterDiagram) -> int:
    """|W| by orbit-stabilizer: |W| = |W.omega_k| * |W_{M - k}| for a leaf k.

    Works on any (possibly disconnected or empty) simply laced diagram and
    never uses closed-form order formulas.
    """
    if not diagram.nodes:
        return 1
    leaves = [v for v in diagram.nodes if len(diagram.neighbors(v)) <= 1]
    # the largest-labelled leaf keeps the orbits small for Bourbaki E/D labels
    k = max(leaves)
    cartan = diagram.cartan()
    pos = diagram.nodes.index(k)
    start = tuple(1 if i == pos else 0 for i in range(diagram.rank))
    seen = {start}
    queue = deque([start])
    while queue:
        lam = queue.popleft()
        for i, li in enumerate(lam):
            if li:
                mu = tuple(x - li * cartan[i][j] for j, x in enumerate(lam))
                if mu not in seen:
                    seen.add(mu)
                    queue.append(mu)
    rest = diagram.induced(v for v in diagram.nodes if v != k)
    return len(seen) * weyl_group_order(rest)
