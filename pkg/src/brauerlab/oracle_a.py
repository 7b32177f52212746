"""Classical Brauer diagrams, used as an independent model of type A.

Points 0..m-1 are the top row and m..2m-1 the bottom row, both left to
right.  Node i of A_{m-1} acts on strands i-1 and i (0-based).
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .rewrite import RBASE, Word


@dataclass(frozen=True)
class BrauerDiagram:
    m: int
    mate: tuple[int, ...]
    loops: int = 0

    @classmethod
    def identity(cls, m: int) -> "BrauerDiagram":
        return cls(m, tuple(list(range(m, 2 * m)) + list(range(m))))

    @classmethod
    def from_pairs(cls, m: int, pairs, loops: int = 0) -> "BrauerDiagram":
        mate = [-1] * (2 * m)
        for a, b in pairs:
            if mate[a] != -1 or mate[b] != -1 or a == b:
                raise ValueError("pairs are not a perfect matching")
            mate[a], mate[b] = b, a
        if -1 in mate:
            raise ValueError("pairs are not a perfect matching")
        return cls(m, tuple(mate), loops)

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for a, b in enumerate(self.mate) if a < b]

    def shape(self) -> tuple[int, ...]:
        """The matching alone, forgetting loops."""
        return self.mate

    def with_loops(self, loops: int) -> "BrauerDiagram":
        return BrauerDiagram(self.m, self.mate, loops)

    def crossings(self) -> int:
        """Crossing pairs of strands with the points placed around a circle."""
        m = self.m
        # top row left to right, then bottom row right to left
        place = list(range(m)) + [2 * m - 1 - k for k in range(m)]
        chords = [tuple(sorted((place[a], place[b]))) for a, b in self.pairs]
        count = 0
        for x in range(len(chords)):
            a, b = chords[x]
            for c, d in chords[x + 1:]:
                if (a < c < b) != (a < d < b):
                    count += 1
        return count

    def to_json(self) -> dict:
        def name(p: int) -> str:
            return f"t{p + 1}" if p < self.m else f"b{p - self.m + 1}"

        return {"m": self.m, "pairs": [[name(a), name(b)] for a, b in self.pairs],
                "loops": self.loops}


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def compose(d1: BrauerDiagram, d2: BrauerDiagram) -> BrauerDiagram:
    """``d1`` stacked on top of ``d2``; closed loops are added to the ledger."""
    if d1.m != d2.m:
        raise ValueError(f"strand counts differ: {d1.m} and {d2.m}")
    m = d1.m
    parent = list(range(4 * m))

    def union(a: int, b: int) -> None:
        ra, rb = _find(parent, a), _find(parent, b)
        if ra != rb:
            parent[ra] = rb

    for a, b in d1.pairs:
        union(a, b)
    for a, b in d2.pairs:
        union(2 * m + a, 2 * m + b)
    for k in range(m):
        union(m + k, 2 * m + k)
    outer = list(range(m)) + list(range(3 * m, 4 * m))
    ends: dict[int, list[int]] = {}
    for p in outer:
        ends.setdefault(_find(parent, p), []).append(p)
    mate = [0] * (2 * m)
    for a, b in ends.values():
        a = a if a < m else a - 2 * m
        b = b if b < m else b - 2 * m
        mate[a], mate[b] = b, a
    roots = {_find(parent, p) for p in range(4 * m)}
    loops = len(roots) - len(ends)
    return BrauerDiagram(m, tuple(mate), d1.loops + d2.loops + loops)


def generator(m: int, token: int) -> BrauerDiagram:
    i = token - RBASE if token > RBASE else token
    if not 1 <= i < m:
        raise ValueError(f"node {i} out of range for {m} strands")
    mate = list(BrauerDiagram.identity(m).mate)
    a, b = i - 1, i
    if token > RBASE:
        mate[a], mate[b] = m + b, m + a
        mate[m + a], mate[m + b] = b, a
    else:
        mate[a], mate[b] = b, a
        mate[m + a], mate[m + b] = m + b, m + a
    return BrauerDiagram(m, tuple(mate))


def eval_word_A(m: int, w: Word) -> BrauerDiagram:
    """Diagram of ``w`` read left to right, with ``w.delta`` added to the loop ledger."""
    d = BrauerDiagram.identity(m)
    for t in w.tokens:
        d = compose(d, generator(m, t))
    return d.with_loops(d.loops + w.delta)


def diagram_count(m: int) -> int:
    if m < 1:
        raise ValueError("need at least one strand")
    return math.prod(range(1, 2 * m, 2))


def min_heights(m: int) -> dict[tuple[int, ...], int]:
    """Least number of r-generators in any word for each diagram shape (Dijkstra)."""
    start = BrauerDiagram.identity(m)
    gens = [(generator(m, i), 0) for i in range(1, m)]
    gens += [(generator(m, RBASE + i), 1) for i in range(1, m)]
    best = {start.mate: 0}
    heap = [(0, start.mate)]
    while heap:
        h, mate = heapq.heappop(heap)
        if best[mate] < h:
            continue
        d = BrauerDiagram(m, mate)
        for g, cost in gens:
            nxt = compose(d, g).mate
            if best.get(nxt, h + cost + 1) > h + cost:
                best[nxt] = h + cost
                heapq.heappush(heap, (h + cost, nxt))
    return best
