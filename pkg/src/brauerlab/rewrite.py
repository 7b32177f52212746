"""Words in r_i, e_i and delta, the Brauer relation rewrite rules, and reduction.

Tokens are small ints: ``e_i`` is ``i`` and ``r_i`` is ``RBASE + i``, so the
natural int order is E(1) < ... < E(n) < R(1) < ... < R(n).  The delta power
is kept apart from the tokens.

Commutation rules (HCrr, HCer, HCee) are never searched explicitly: the
search works on commutation classes (traces), each stored as its
lexicographically least representative, and rule left-hand sides are
matched as trace factors.
"""

from __future__ import annotations

import bisect
import enum
import functools
import heapq
import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from . import admissible as adm
from .admissible import ASet
from .rootsystem import CoxeterDiagram, RootSystem

RBASE = 1024


def E(i: int) -> int:
    return i


def R(i: int) -> int:
    return RBASE + i


def is_r(t: int) -> bool:
    return t > RBASE


def node(t: int) -> int:
    return t - RBASE if t > RBASE else t


def token_name(t: int) -> str:
    return f"{'r' if is_r(t) else 'e'}{node(t)}"


def parse_token(s: str) -> int:
    m = re.fullmatch(r"([re])(\d+)", s)
    if not m:
        raise ValueError(f"malformed token {s!r}")
    i = int(m.group(2))
    if i < 1 or i >= RBASE:
        raise ValueError(f"node index out of range in {s!r}")
    return R(i) if m.group(1) == "r" else E(i)


@dataclass(frozen=True)
class Word:
    """Element of the free monoid on r_i, e_i times the free group on delta."""

    tokens: tuple[int, ...] = ()
    delta: int = 0

    @classmethod
    def parse(cls, text: str) -> "Word":
        parts = text.split()
        delta = 0
        if parts and parts[0].startswith("d^"):
            try:
                delta = int(parts[0][2:])
            except ValueError:
                raise ValueError(f"malformed delta power {parts[0]!r}") from None
            parts = parts[1:]
        if parts == ["1"]:
            parts = []
        return cls(tuple(parse_token(p) for p in parts), delta)

    @classmethod
    def from_json(cls, data: dict) -> "Word":
        return cls(tuple(parse_token(t) for t in data["tokens"]), int(data.get("delta", 0)))

    def to_json(self) -> dict:
        return {"delta": self.delta, "tokens": [token_name(t) for t in self.tokens]}

    def __str__(self) -> str:
        parts = [f"d^{self.delta}"] if self.delta else []
        parts.extend(token_name(t) for t in self.tokens)
        return " ".join(parts)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.tokens + other.tokens, self.delta + other.delta)

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def height(self) -> int:
        return sum(1 for t in self.tokens if t > RBASE)

    def times_delta(self, k: int) -> "Word":
        return Word(self.tokens, self.delta + k)

    def nodes(self) -> set[int]:
        return {node(t) for t in self.tokens}


def word(text: str) -> Word:
    return Word.parse(text)


def e_hat(Y: Iterable[int]) -> Word:
    """The idempotent e_Y delta^{-|Y|} as a word."""
    Y = sorted(Y)
    return Word(tuple(E(i) for i in Y), -len(Y))


def op_reverse(w: Word) -> Word:
    return Word(w.tokens[::-1], w.delta)


def word_height(w: Word) -> int:
    return w.height


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


def act_word(sys: RootSystem, w: Word, side: Side, B: ASet) -> ASet:
    """Image of ``B`` under ``w`` (delta acts trivially)."""
    toks = w.tokens if side is Side.RIGHT else reversed(w.tokens)
    for t in toks:
        if t > RBASE:
            B = adm.act_r(sys, t - RBASE, B)
        else:
            B = adm.act_e(sys, t, B)
    return B


# ---------------------------------------------------------------- rules

class Kind(enum.Enum):
    REDUCING = "R"
    HOMOGENEOUS = "H"


@dataclass(frozen=True)
class RuleSchema:
    label: str
    lhs: tuple[tuple[str, str], ...]
    rhs: tuple[tuple[str, str], ...]
    context: str
    delta_change: int = 0

    @property
    def kind(self) -> Kind:
        return Kind.REDUCING if self.label.startswith("R") else Kind.HOMOGENEOUS

    @property
    def is_commutation(self) -> bool:
        return self.label.startswith("HC")


def _pat(text: str) -> tuple[tuple[str, str], ...]:
    return tuple((tok[0], tok[1]) for tok in text.split())


_TABLE = [
    ("RSrr", "ri ri", "", "i", 0),
    ("RSer", "ei ri", "ei", "i", 0),
    ("RSre", "ri ei", "ei", "i", 0),
    ("HSee", "ei ei", "ei", "i", 1),
    ("HCrr", "ri rj", "rj ri", "i!~j", 0),
    ("HCer", "ei rj", "rj ei", "i!~j", 0),
    ("HCee", "ei ej", "ej ei", "i!~j", 0),
    ("HNrrr", "ri rj ri", "rj ri rj", "i~j", 0),
    ("HNrer", "rj ei rj", "ri ej ri", "i~j", 0),
    ("RNrre", "rj ri ej", "ei ej", "i~j", 0),
    ("RNerr", "ei rj ri", "ei ej", "i~j", 0),
    ("HNree", "rj ei ej", "ri ej", "i~j", 0),
    ("RNere", "ei rj ei", "ei", "i~j", 0),
    ("HNeer", "ej ei rj", "ej ri", "i~j", 0),
    ("HNeee", "ei ej ei", "ei", "i~j", 0),
    ("HTeere", "ej ei rk ej", "ej ri ek ej", "i~j~k", 0),
    ("RTerre", "ej ri rk ej", "ej ei ek ej", "i~j~k", 0),
]

RULES: dict[str, RuleSchema] = {
    label: RuleSchema(label, _pat(l), _pat(r), ctx, dc) for label, l, r, ctx, dc in _TABLE
}


class RuleError(ValueError):
    pass


def _check_binding(d: CoxeterDiagram, schema: RuleSchema, b: dict[str, int]) -> None:
    ctx = schema.context
    names = sorted({v for _, v in schema.lhs + schema.rhs})
    for v in names:
        if v not in b:
            raise RuleError(f"binding lacks node {v}")
        if b[v] not in d.nodes:
            raise RuleError(f"node {b[v]} not in diagram")
    if ctx == "i!~j" and d.adjacent(b["i"], b["j"]):
        raise RuleError(f"{schema.label} needs i and j non-adjacent")
    if ctx == "i~j" and not d.adjacent(b["i"], b["j"]):
        raise RuleError(f"{schema.label} needs i ~ j")
    if ctx == "i~j~k" and not (d.adjacent(b["i"], b["j"]) and d.adjacent(b["j"], b["k"])
                               and b["i"] != b["k"]):
        raise RuleError(f"{schema.label} needs i ~ j ~ k with i != k")


def _instantiate(pattern, b: dict[str, int]) -> tuple[int, ...]:
    return tuple(R(b[v]) if g == "r" else E(b[v]) for g, v in pattern)


def bindings(d: CoxeterDiagram, schema: RuleSchema) -> Iterator[dict[str, int]]:
    ctx = schema.context
    if ctx == "i":
        for i in d.nodes:
            yield {"i": i}
    elif ctx == "i!~j":
        for i in d.nodes:
            for j in d.nodes:
                if i != j and not d.adjacent(i, j):
                    yield {"i": i, "j": j}
    elif ctx == "i~j":
        for i in d.nodes:
            for j in d.neighbors(i):
                yield {"i": i, "j": j}
    else:
        for j in d.nodes:
            for i in d.neighbors(j):
                for k in d.neighbors(j):
                    if i != k:
                        yield {"i": i, "j": j, "k": k}


@dataclass(frozen=True)
class Rule:
    """One instantiated rewrite lhs -> rhs with its delta bookkeeping."""

    label: str
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]
    delta_change: int
    kind: Kind
    reverse: bool = False

    @property
    def height_drop(self) -> int:
        return sum(1 for t in self.lhs if t > RBASE) - sum(1 for t in self.rhs if t > RBASE)


def instantiate(d: CoxeterDiagram, label: str, binding: dict[str, int], reverse: bool = False) -> Rule:
    schema = RULES[label]
    _check_binding(d, schema, binding)
    lhs, rhs = _instantiate(schema.lhs, binding), _instantiate(schema.rhs, binding)
    if reverse:
        if schema.kind is Kind.REDUCING:
            raise RuleError(f"{label} is reducing and may only be applied left to right")
        return Rule(label, rhs, lhs, -schema.delta_change, schema.kind, True)
    return Rule(label, lhs, rhs, schema.delta_change, schema.kind)


def apply_rule_at(d: CoxeterDiagram, w: Word, label: str, position: int,
                  binding: dict[str, int], reverse: bool = False) -> Word:
    """Rewrite the contiguous factor of ``w`` starting at ``position``."""
    rule = instantiate(d, label, binding, reverse)
    k = len(rule.lhs)
    if w.tokens[position:position + k] != rule.lhs:
        raise RuleError(f"{label} does not match at position {position}")
    toks = w.tokens[:position] + rule.rhs + w.tokens[position + k:]
    return Word(toks, w.delta + rule.delta_change)


def all_rules(d: CoxeterDiagram) -> list[Rule]:
    """Every directed rewrite: reducing rules forwards, homogeneous both ways."""
    out = []
    seen = set()
    for label, schema in RULES.items():
        for b in bindings(d, schema):
            for rev in ((False,) if schema.kind is Kind.REDUCING else (False, True)):
                r = instantiate(d, label, b, rev)
                if (r.lhs, r.rhs) not in seen and r.lhs != r.rhs:
                    seen.add((r.lhs, r.rhs))
                    out.append(r)
    return out


# ---------------------------------------------------------------- search

@dataclass(frozen=True)
class SearchCaps:
    max_extra_length: int = 8
    max_visited: int = 200_000

    def __post_init__(self):
        if self.max_extra_length <= 0 or self.max_visited <= 0:
            raise ValueError("search caps must be positive")

    def escalated(self) -> "SearchCaps":
        return SearchCaps(self.max_extra_length + 4, self.max_visited * 4)


DEFAULT_CAPS = SearchCaps()


class Engine:
    """Rule tables and trace helpers for one root system."""

    def __init__(self, sys: RootSystem):
        self.sys = sys
        d = sys.diagram
        self.diagram = d
        pos = {v: k for k, v in enumerate(d.nodes)}
        self._bit = {}
        self._dep = {}
        for v in d.nodes:
            dep = 1 << pos[v]
            for u in d.neighbors(v):
                dep |= 1 << pos[u]
            for t in (E(v), R(v)):
                self._bit[t] = 1 << pos[v]
                self._dep[t] = dep
        rules = all_rules(d)
        self.reducing = [r for r in rules if r.kind is Kind.REDUCING]
        self.homogeneous = [r for r in rules if r.kind is Kind.HOMOGENEOUS
                            and not r.label.startswith("HC")]
        self.shrinking = [r for r in self.homogeneous if len(r.rhs) < len(r.lhs)]
        self.reducing.sort(key=lambda r: (len(r.lhs), r.label, r.lhs))
        self.homogeneous.sort(key=lambda r: (len(r.lhs), r.label, r.lhs))
        self.reducing_table = self._by_first(self.reducing)
        self.homogeneous_table = self._by_first(self.homogeneous)
        self.shrinking_table = self._by_first(self.shrinking)

    # traces ------------------------------------------------------------

    def dependent(self, a: int, b: int) -> bool:
        return bool(self._dep[a] & self._bit[b])

    def normal(self, tokens: Sequence[int]) -> tuple[int, ...]:
        """Lexicographically least word in the commutation class."""
        rem = list(tokens)
        out = []
        dep, bit = self._dep, self._bit
        while rem:
            seen = 0
            best = None
            bestpos = -1
            for p, t in enumerate(rem):
                if not dep[t] & seen and (best is None or t < best):
                    best, bestpos = t, p
                seen |= bit[t]
            out.append(best)
            del rem[bestpos]
        return tuple(out)

    def _by_first(self, rules: Sequence[Rule]) -> dict[int, list]:
        """Rules keyed by first letter, each with the dependent predecessors of its letters."""
        table: dict[int, list] = {}
        dep, bit = self._dep, self._bit
        for r in rules:
            lhs = r.lhs
            preds = tuple(tuple(a for a in range(m) if dep[lhs[a]] & bit[lhs[m]])
                          for m in range(len(lhs)))
            table.setdefault(lhs[0], []).append((r, preds, frozenset(lhs)))
        return table

    @staticmethod
    def _place(occ: dict[int, list[int]], p: int, lhs: tuple[int, ...], preds):
        """Positions of a trace occurrence of ``lhs`` whose first letter sits at ``p``.

        Every letter of a rule pattern after the first depends on an earlier
        one, so each later letter must take the first free occurrence after
        its dependent predecessors; the occurrence is therefore unique.
        """
        chosen = [p]
        for m in range(1, len(lhs)):
            after = max(chosen[a] for a in preds[m])
            plist = occ[lhs[m]]
            k = bisect.bisect_right(plist, after)
            while k < len(plist) and plist[k] in chosen:
                k += 1
            if k == len(plist):
                return None
            chosen.append(plist[k])
        return chosen

    def _rewrite(self, w: tuple[int, ...], chosen: list[int], rhs: tuple[int, ...]):
        """Splice ``rhs`` in for the chosen letters, or None if the gap cannot part."""
        lo, hi = chosen[0], max(chosen)
        if hi - lo + 1 == len(chosen):
            return w[:lo] + rhs + w[hi + 1:]
        dep, bit = self._dep, self._bit
        inside = set(chosen)
        # letters that must follow the rewritten block
        right = []
        mask = 0
        for q in range(lo, hi + 1):
            t = w[q]
            if q in inside:
                mask |= bit[t]
            elif dep[t] & mask:
                right.append(q)
                mask |= bit[t]
        # letters that must precede it
        mask = 0
        rset = set(right)
        for q in range(hi, lo - 1, -1):
            t = w[q]
            if q in inside:
                mask |= bit[t]
            elif dep[t] & mask:
                if q in rset:
                    return None
                mask |= bit[t]
        left = tuple(w[q] for q in range(lo + 1, hi) if q not in inside and q not in rset)
        return w[:lo] + left + rhs + tuple(w[q] for q in right) + w[hi + 1:]

    def sites(self, w: tuple[int, ...], table: dict[int, list]):
        """(position, rule, new tokens) for every rewrite, by increasing position."""
        occ: dict[int, list[int]] = {}
        for p, t in enumerate(w):
            occ.setdefault(t, []).append(p)
        present = occ.keys()
        for p, t in enumerate(w):
            for rule, preds, need in table.get(t, ()):
                if not need <= present:
                    continue
                chosen = self._place(occ, p, rule.lhs, preds)
                if chosen is None:
                    continue
                new = self._rewrite(w, chosen, rule.rhs)
                if new is not None:
                    yield p, rule, new

    def first_site(self, w: tuple[int, ...], table: dict[int, list[Rule]]):
        for hit in self.sites(w, table):
            return hit
        return None

    def neighbours(self, w: tuple[int, ...], table: dict[int, list[Rule]]):
        for _, rule, new in self.sites(w, table):
            yield self.normal(new), rule.delta_change

    def has_site(self, w: tuple[int, ...], table: dict[int, list[Rule]]) -> bool:
        return self.first_site(w, table) is not None


@functools.lru_cache(maxsize=None)
def engine(sys: RootSystem) -> Engine:
    return Engine(sys)


@dataclass(frozen=True)
class Reduction:
    word: Word
    saturated: bool = False
    certified: bool = False
    visited: int = 0


def height_floor(sys: RootSystem, w: Word) -> int:
    """A lower bound on the height of every word for the same element.

    Exact for pure r-words, for type A and wherever the coset part of the
    normal form can be read off the action; otherwise het(w.empty) +
    het(empty.w).
    """
    if not any(t <= RBASE for t in w.tokens):
        return coxeter_length(sys, [t - RBASE for t in w.tokens])
    if sys.name.startswith("A"):
        # type A is faithfully modelled by diagrams, whose least height is their crossing count
        from .oracle_a import eval_word_A

        return eval_word_A(sys.n + 1, w).crossings()
    # deferred import: the exact bound needs the normal form machinery
    from .normalform import exact_height

    exact = exact_height(sys, w)
    if exact is not None:
        return exact
    left = act_word(sys, w, Side.LEFT, ())
    right = act_word(sys, w, Side.RIGHT, ())
    return adm.set_height(sys, left) + adm.set_height(sys, right)


def coxeter_length(sys: RootSystem, nodes: Sequence[int]) -> int:
    """Length of r_{n1}...r_{nk} in W: the number of positive roots it makes negative."""
    g = sys.gram
    pos = [sys.node_position(v) for v in nodes]
    count = 0
    for root in sys.positive_roots:
        v = list(root)
        for p in reversed(pos):
            c = sum(v[j] * g[j][p] for j in range(sys.n) if v[j])
            v[p] -= c
        if any(x < 0 for x in v):
            count += 1
    return count


def _greedy(eng: Engine, toks: tuple[int, ...], delta: int) -> tuple[tuple[int, ...], int]:
    while True:
        hit = eng.first_site(toks, eng.reducing_table)
        if hit is None:
            hit = eng.first_site(toks, eng.shrinking_table)
        if hit is None:
            return toks, delta
        _, rule, new = hit
        toks = eng.normal(new)
        delta += rule.delta_change


def _canonical(eng: Engine, toks, delta, cap: int):
    """Least (length, tokens) reachable without growing past the start length.

    Each round explores the class at the current length and restarts from
    the first shorter word it meets, so long inputs shrink cheaply before
    the final exhaustive pass.
    """
    while True:
        limit = len(toks)
        seen = {toks: delta}
        frontier = [toks]
        shorter = None
        while frontier and len(seen) < cap and shorter is None:
            nxt = []
            for t in frontier:
                for u, dc in eng.neighbours(t, eng.homogeneous_table):
                    if len(u) <= limit and u not in seen:
                        seen[u] = seen[t] + dc
                        if len(u) < limit:
                            shorter = u
                            break
                        nxt.append(u)
                if shorter is not None:
                    break
            frontier = nxt
        if shorter is None:
            best = min(seen, key=lambda t: (len(t), t))
            return best, seen[best]
        toks, delta = _shrink(eng, shorter, seen[shorter])


def reduce(sys: RootSystem, w: Word, caps: SearchCaps = DEFAULT_CAPS,
           floor: int | None = None) -> Reduction:
    """Reduce ``w`` to minimal height, tracking the delta power exactly.

    Alternates greedy reducing rewrites with a length-ordered search through
    the homogeneous class for a word on which a reducing rule fires.  Once
    the height reaches ``floor`` (a proven lower bound, computed when not
    given) the result is certified reduced and the search stops.
    """
    eng = engine(sys)
    if floor is None:
        floor = height_floor(sys, w)
    toks, delta = _greedy(eng, eng.normal(w.tokens), w.delta)
    visited_total = 0
    while True:
        h = sum(1 for t in toks if t > RBASE)
        if h <= floor:
            toks, delta = _canonical(eng, toks, delta, min(caps.max_visited, 20_000))
            return Reduction(Word(toks, delta), False, True, visited_total)
        found, seen, saturated = _search(eng, toks, delta, caps)
        visited_total += len(seen)
        if found is None:
            best = min(seen, key=lambda t: (len(t), t))
            return Reduction(Word(best, seen[best]), saturated, False, visited_total)
        toks, delta = _greedy(eng, *found)


def _search(eng: Engine, start, delta, caps: SearchCaps):
    limit = len(start) + caps.max_extra_length
    seen = {start: delta}
    heap = [(len(start), 0, start)]
    counter = 1
    while heap:
        _, _, t = heapq.heappop(heap)
        d = seen[t]
        for u, dc in eng.neighbours(t, eng.homogeneous_table):
            if len(u) > limit or u in seen:
                continue
            seen[u] = d + dc
            if len(u) < len(start) or eng.has_site(u, eng.reducing_table):
                return (u, d + dc), seen, False
            if len(seen) >= caps.max_visited:
                return None, seen, True
            heapq.heappush(heap, (len(u), counter, u))
            counter += 1
    return None, seen, False


class Equivalence(enum.Enum):
    EQUIVALENT = "equivalent"
    NOT_FOUND = "not-found-within-caps"


@dataclass(frozen=True)
class EquivResult:
    status: Equivalence
    # w1 == delta^offset * w2 when the token classes meet
    delta_offset: int | None = None
    visited: int = 0

    @property
    def equivalent(self) -> bool:
        return self.status is Equivalence.EQUIVALENT


def _shrink(eng: Engine, toks, delta):
    while True:
        hit = eng.first_site(toks, eng.shrinking_table)
        if hit is None:
            return toks, delta
        _, rule, new = hit
        toks = eng.normal(new)
        delta += rule.delta_change


def homog_equiv_detail(sys: RootSystem, w1: Word, w2: Word,
                       caps: SearchCaps = DEFAULT_CAPS) -> EquivResult:
    if w1.height != w2.height:
        return EquivResult(Equivalence.NOT_FOUND)
    eng = engine(sys)
    a, da = _shrink(eng, eng.normal(w1.tokens), w1.delta)
    b, db = _shrink(eng, eng.normal(w2.tokens), w2.delta)
    limit = max(len(a), len(b)) + caps.max_extra_length
    sides = [{a: da}, {b: db}]
    frontiers = [[a], [b]]
    if a == b:
        off = da - db
        return EquivResult(Equivalence.EQUIVALENT if off == 0 else Equivalence.NOT_FOUND, off, 2)
    total = 2
    while frontiers[0] and frontiers[1] and total < caps.max_visited:
        k = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        mine, other = sides[k], sides[1 - k]
        nxt = []
        for t in frontiers[k]:
            for u, dc in eng.neighbours(t, eng.homogeneous_table):
                if len(u) > limit or u in mine:
                    continue
                mine[u] = mine[t] + dc
                total += 1
                if u in other:
                    off = sides[0][u] - sides[1][u]
                    status = Equivalence.EQUIVALENT if off == 0 else Equivalence.NOT_FOUND
                    return EquivResult(status, off, total)
                nxt.append(u)
            if total >= caps.max_visited:
                break
        nxt.sort(key=lambda t: (len(t), t))
        frontiers[k] = nxt
    return EquivResult(Equivalence.NOT_FOUND, None, total)


def homog_equiv(sys: RootSystem, w1: Word, w2: Word, caps: SearchCaps = DEFAULT_CAPS) -> Equivalence:
    return homog_equiv_detail(sys, w1, w2, caps).status


def shuffle_commuting(sys: RootSystem, w: Word, rng) -> Word:
    """A uniformly chosen next letter at each step: a random word of the same trace."""
    eng = engine(sys)
    rem = list(w.tokens)
    out = []
    while rem:
        seen = 0
        free = []
        for p, t in enumerate(rem):
            if not eng._dep[t] & seen:
                free.append(p)
            seen |= eng._bit[t]
        out.append(rem.pop(rng.choice(free)))
    return Word(tuple(out), w.delta)


def perturb(sys: RootSystem, w: Word, rng, steps: int = 4, max_growth: int = 4) -> Word:
    """Random walk of homogeneous rewrites, then a commutation shuffle.

    The result equals ``w`` in the monoid; its tokens usually differ.
    """
    eng = engine(sys)
    toks, delta = w.tokens, w.delta
    limit = len(toks) + max_growth
    for _ in range(steps):
        options = [(u, dc) for u, dc in eng.neighbours(eng.normal(toks), eng.homogeneous_table)
                   if len(u) <= limit]
        if not options:
            break
        toks, dc = rng.choice(options)
        delta += dc
    return shuffle_commuting(sys, Word(toks, delta), rng)


def separated_by_action(sys: RootSystem, w1: Word, w2: Word) -> bool:
    """True when some admissible set is moved differently by ``w1`` and ``w2``.

    The action is a monoid action, so a separated pair is certainly unequal.
    """
    for Y in adm.orbit_representatives(sys):
        for B in adm.orbit_of(sys, Y).members:
            for side in Side:
                if act_word(sys, w1, side, B) != act_word(sys, w2, side, B):
                    return True
    return False
