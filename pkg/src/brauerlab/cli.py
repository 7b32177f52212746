"""brauerlab command line."""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import admissible as adm
from . import normalform as nf
from .cache import OrbitCache, default_cache_dir
from .oracle_a import eval_word_A
from .rewrite import (DEFAULT_CAPS, SearchCaps, Side, Word, act_word, homog_equiv_detail,
                      perturb, reduce, separated_by_action)
from .rootsystem import RootSystem, UnsupportedDiagram, format_root, parse_root, root_system

EXIT_OK, EXIT_DOMAIN, EXIT_CAPS = 0, 1, 2

# reference values for the `tables` subcommand, keyed by |B_Y|:
# (B_Y-perp type, M_Y type, |(WB_Y)^0|, sets containing alpha_n or None)
REFERENCE = {
    "E6": {1: ("A5", "A5", 6, None), 2: ("A3", "A2", 20, 15), 4: ("empty", "empty", 15, 15)},
    "E7": {1: ("D6", "D6", 7, None), 2: ("A1 D4", "A1 A3", 27, 30), 3: ("D4", "A2", 21, 15),
           4: ("A1 A1 A1", "A1", 35, 60), 7: ("empty", "empty", 15, 15)},
    "E8": {1: ("E7", "E7", 8, None), 2: ("D6", "A5", 35, 63), 4: ("D4", "A2", 84, 315),
           8: ("empty", "empty", 50, 135)},
}
REFERENCE_RANK = {"E6": 1_440_585, "E7": 139_613_625, "E8": 53_328_069_225}
REFERENCE_TL = {"E6": 662, "E7": 2670, "E8": 10846}


def _system(kind: str) -> RootSystem:
    try:
        return root_system(kind.strip().upper())
    except UnsupportedDiagram as exc:
        raise ValueError(str(exc)) from None


def _caps(args) -> SearchCaps:
    return SearchCaps(args.caps_extra_length, args.caps_visited)


def _word(text: str) -> Word:
    return Word.parse(text)


def _check_word(sys: RootSystem, w: Word) -> Word:
    bad = sorted(n for n in w.nodes() if n not in sys.nodes)
    if bad:
        raise ValueError(f"nodes {bad} are not in {sys.name}")
    return w


def _aset(sys: RootSystem, texts) -> adm.ASet:
    roots = []
    for t in texts:
        r = parse_root(sys, t)
        if r not in sys.index:
            raise ValueError(f"{t} is not a positive root of {sys.name}")
        roots.append(r)
    B = adm.as_set(sys, roots)
    if not adm.is_admissible(sys, B):
        raise ValueError(f"{' '.join(texts)} is not admissible")
    return B


def _set_json(sys: RootSystem, B) -> list[list[int]]:
    return [list(sys.positive_roots[b]) for b in B]


def _set_text(sys: RootSystem, B) -> str:
    return "{" + "; ".join(format_root(sys.positive_roots[b]) for b in B) + "}"


class Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json

    def emit(self, data, text: str) -> None:
        if self.as_json:
            print(json.dumps(data, separators=(",", ":")))
        else:
            print(text)


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


# ---------------------------------------------------------------- subcommands

def cmd_roots(args, out: Out) -> int:
    s = _system(args.type)
    rows = [{"id": k, "root": list(r), "height": s.heights[k]} for k, r in enumerate(s.positive_roots)]
    text = "\n".join(f"{r['id']:4d}  h={r['height']:2d}  {format_root(r['root'])}" for r in rows)
    out.emit({"type": s.name, "roots": rows}, text)
    return EXIT_OK


def cmd_orbits(args, out: Out) -> int:
    s = _system(args.type)
    rows = []
    for Y in adm.orbit_representatives(s):
        _progress(f"orbit Y={list(Y)}")
        orbit = adm.orbit_of(s, Y)
        rows.append({"Y": list(Y), "size_B": orbit.size, "orbit": len(orbit),
                     "height0": len(adm.height0_members(orbit)),
                     "max_height": max(orbit.heights),
                     "M_Y": adm.m_y_type(s, Y).kind})
    lines = [f"{'Y':12s} {'|B_Y|':>5s} {'|WB_Y|':>7s} {'het0':>5s} {'maxhet':>6s}  M_Y"]
    for r in rows:
        lines.append(f"{str(r['Y']):12s} {r['size_B']:5d} {r['orbit']:7d} {r['height0']:5d} "
                     f"{r['max_height']:6d}  {r['M_Y']}")
    out.emit({"type": s.name, "orbits": rows}, "\n".join(lines))
    return EXIT_OK


def cmd_closure(args, out: Out) -> int:
    s = _system(args.type)
    roots = [parse_root(s, t) for t in args.roots]
    for r in roots:
        if r not in s.index:
            raise ValueError(f"{format_root(r)} is not a positive root of {s.name}")
    B = adm.closure(s, adm.as_set(s, roots))
    out.emit({"type": s.name, "closure": _set_json(s, B)}, _set_text(s, B))
    return EXIT_OK


def cmd_action(args, out: Out) -> int:
    s = _system(args.type)
    w = _check_word(s, _word(args.word))
    B = _aset(s, args.set or [])
    side = Side(args.side)
    C = act_word(s, w, side, B)
    out.emit({"type": s.name, "side": side.value, "image": _set_json(s, C)}, _set_text(s, C))
    return EXIT_OK


def cmd_reduce(args, out: Out) -> int:
    s = _system(args.type)
    w = _check_word(s, _word(args.word))
    res = reduce(s, w, _caps(args))
    if not res.certified:
        print(f"warning: not certified reduced ({res.visited} words visited)", file=sys.stderr)
    out.emit(res.word.to_json(), str(res.word) or "1")
    return EXIT_OK if res.certified else EXIT_CAPS


def cmd_equiv(args, out: Out) -> int:
    s = _system(args.type)
    w1 = _check_word(s, _word(args.word1))
    w2 = _check_word(s, _word(args.word2))
    res = homog_equiv_detail(s, w1, w2, _caps(args))
    if res.equivalent:
        verdict = "equivalent"
    elif w1.height != w2.height:
        verdict = "different heights"
    elif res.delta_offset is not None:
        verdict = f"equal up to delta^{res.delta_offset}"
    elif separated_by_action(s, w1, w2):
        verdict = "different elements (actions differ)"
    else:
        verdict = "not found within caps"
    out.emit({"equivalent": res.equivalent, "delta_offset": res.delta_offset,
              "visited": res.visited, "verdict": verdict}, verdict)
    if verdict == "not found within caps":
        return EXIT_CAPS
    return EXIT_OK


def cmd_ab(args, out: Out) -> int:
    s = _system(args.type)
    B = _aset(s, args.roots)
    if not B:
        raise ValueError("a_B needs a nonempty admissible set")
    fwd = nf.build_aB(s, B)
    back = nf.build_aback(s, B)
    Y = nf.coclique_of(s, B)
    data = {"type": s.name, "B": _set_json(s, B), "Y": list(Y),
            "height": adm.set_height(s, B), "aB": fwd.word.to_json(), "aB_back": back.word.to_json()}
    text = f"a_B   = {fwd.word}\na_B^b = {back.word}\nY = {list(Y)}  het(B) = {data['height']}"
    out.emit(data, text)
    return EXIT_OK


def _form_text(form: nf.NormalForm) -> str:
    s = form.sys
    return (f"Y = {list(form.Y)}\nB  = {_set_text(s, form.B)}\nB' = {_set_text(s, form.Bp)}\n"
            f"h = {list(form.h.word)}\ndelta^{form.delta}\nword = {str(nf.synthesize(form)) or '1'}")


def cmd_decompose(args, out: Out) -> int:
    s = _system(args.type)
    w = _check_word(s, _word(args.word))
    form = nf.decompose(s, w, _caps(args))
    out.emit(form.to_json(), _form_text(form))
    return EXIT_OK


def _form_arg(s: RootSystem, text: str, caps: SearchCaps) -> nf.NormalForm:
    text = text.strip()
    if text.startswith("{"):
        return nf.NormalForm.from_json(s, json.loads(text))
    return nf.decompose(s, _check_word(s, _word(text)), caps)


def cmd_multiply(args, out: Out) -> int:
    s = _system(args.type)
    caps = _caps(args)
    x = _form_arg(s, args.x, caps)
    y = _form_arg(s, args.y, caps)
    form = nf.multiply(s, x, y, caps)
    out.emit(form.to_json(), _form_text(form))
    return EXIT_OK


def cmd_rank(args, out: Out) -> int:
    s = _system(args.type)
    r = nf.rank(s)
    out.emit({"type": s.name, "rank": r}, f"{s.name}: rank {r}")
    return EXIT_OK


def cmd_tables(args, out: Out) -> int:
    s = _system(args.type)
    if s.name not in REFERENCE:
        raise ValueError(f"no reference table for {s.name}")
    ref = REFERENCE[s.name]
    cells = []

    def cell(row: str, column: str, got, want) -> None:
        cells.append({"row": row, "column": column, "value": got, "expected": want,
                      "pass": got == want})

    for Y in adm.orbit_representatives(s):
        if not Y:
            continue
        orbit = adm.orbit_of(s, Y)
        B = orbit.base_set
        size = len(B)
        row = f"|B_Y|={size}"
        perp, m_y, h0, containing = ref.get(size, (None,) * 4)
        cell(row, "Y", list(Y), list(adm.COCLIQUE_TABLE[s.name][size]))
        cell(row, "B_Y perp", " ".join(adm.subsystem_type(s, B)) or "empty", perp)
        cell(row, "M_Y", adm.m_y_type(s, Y).kind, m_y)
        cell(row, "|(WB_Y)^0|", len(adm.height0_members(orbit)), h0)
        if containing is not None:
            cell(row, f"sets containing alpha_{s.n}", adm.count_containing(orbit, s.n), containing)
    cell("total", "rank", nf.rank(s), REFERENCE_RANK[s.name])
    cell("total", "Temperley-Lieb rank", nf.tl_rank(s), REFERENCE_TL[s.name])
    ok = all(c["pass"] for c in cells)
    lines = [f"{'PASS' if c['pass'] else 'FAIL'}  {s.name} {c['row']:9s} {c['column']:22s} "
             f"{c['value']!s:>14s}  (expected {c['expected']})" for c in cells]
    out.emit({"type": s.name, "pass": ok, "cells": cells}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_DOMAIN


def _fuzz_chunk_a(kind: str, words: list[Word], caps: SearchCaps):
    s = root_system(kind)
    m = s.n + 1
    fails, exhausted = [], 0
    for w in words:
        res = reduce(s, w, caps)
        if not res.certified:
            exhausted += 1
        before, after = eval_word_A(m, w), eval_word_A(m, res.word)
        if before != after:
            fails.append({"word": str(w), "reduced": str(res.word),
                          "expected": before.to_json(), "got": after.to_json()})
    return fails, exhausted


def _fuzz_chunk_e(kind: str, items, caps: SearchCaps):
    s = root_system(kind)
    fails, exhausted = [], 0
    for data, w in items:
        form = nf.NormalForm.from_json(s, data)
        try:
            got = nf.decompose(s, w, caps)
        except nf.CapsExhausted:
            exhausted += 1
            continue
        if got != form:
            fails.append({"word": str(w), "expected": data, "got": got.to_json()})
    return fails, exhausted


def _run_chunks(fn, kind, items, caps, threads: int):
    size = max(1, -(-len(items) // max(1, threads * 4)))
    chunks = [items[k:k + size] for k in range(0, len(items), size)]
    if threads <= 1:
        return [fn(kind, c, caps) for c in chunks]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, [kind] * len(chunks), chunks, [caps] * len(chunks)))


def cmd_fuzz(args, out: Out) -> int:
    s = _system(args.type)
    rng = random.Random(args.seed)
    caps = _caps(args)
    start = time.perf_counter()
    if s.name.startswith("A"):
        alphabet = [t for v in s.nodes for t in (v, 1024 + v)]
        items = [Word(tuple(rng.choice(alphabet) for _ in range(rng.randint(0, args.max_len))))
                 for _ in range(args.count)]
        results = _run_chunks(_fuzz_chunk_a, s.name, items, caps, args.threads)
        mode = "diagram oracle"
    elif s.name in nf.SY_TABLE:
        sampler = nf.TripleSampler(s, args.max_height)
        items = []
        for _ in range(args.count):
            form = sampler.sample(rng)
            w = perturb(s, nf.synthesize(form), rng)
            items.append((form.to_json(), w))
        results = _run_chunks(_fuzz_chunk_e, s.name, items, caps, args.threads)
        mode = "normal form round trip"
    else:
        raise ValueError(f"fuzzing is available for A_n and E_6..8, not {s.name}")
    fails = [f for chunk, _ in results for f in chunk]
    exhausted = sum(e for _, e in results)
    elapsed = time.perf_counter() - start
    data = {"type": s.name, "mode": mode, "count": args.count, "seed": args.seed,
            "failures": len(fails), "caps_exhausted": exhausted, "examples": fails[:5]}
    text = (f"{s.name} {mode}: {args.count} cases, {len(fails)} failures, "
            f"{exhausted} caps exhausted")
    for f in fails[:5]:
        text += f"\n  FAIL {f['word']}"
    print(f"elapsed {elapsed:.1f}s", file=sys.stderr)
    out.emit(data, text)
    if fails:
        return EXIT_DOMAIN
    return EXIT_CAPS if exhausted else EXIT_OK


# ---------------------------------------------------------------- parser

def _env_threads() -> int:
    try:
        return max(1, int(os.environ.get("BRAUERLAB_THREADS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--caps-extra-length", type=int, default=DEFAULT_CAPS.max_extra_length)
    common.add_argument("--caps-visited", type=int, default=DEFAULT_CAPS.max_visited)
    common.add_argument("--threads", type=int, default=_env_threads())
    common.add_argument("--no-cache", action="store_true", help="recompute orbits, ignore the disk cache")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="brauerlab",
                                description="Brauer monoids of simply laced type: orbits, rewriting, normal forms.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("type", help="diagram kind such as E6 or A4")
        sp.set_defaults(func=fn)
        return sp

    add("roots", cmd_roots, "list positive roots")
    add("orbits", cmd_orbits, "orbits of admissible sets")
    sp = add("closure", cmd_closure, "admissible closure of orthogonal roots")
    sp.add_argument("roots", nargs="*", help="a<i> or c1,c2,...")
    sp = add("action", cmd_action, "act with a word on an admissible set")
    sp.add_argument("word")
    sp.add_argument("--set", nargs="*", default=[], help="roots of the admissible set (default empty)")
    sp.add_argument("--side", choices=[x.value for x in Side], default=Side.LEFT.value)
    sp = add("reduce", cmd_reduce, "reduce a word to minimal height")
    sp.add_argument("word")
    sp = add("equiv", cmd_equiv, "search for a homogeneous equivalence")
    sp.add_argument("word1")
    sp.add_argument("word2")
    sp = add("ab", cmd_ab, "canonical words a_B and a_B^b")
    sp.add_argument("roots", nargs="+")
    sp = add("decompose", cmd_decompose, "normal form of a word")
    sp.add_argument("word")
    sp = add("multiply", cmd_multiply, "product of two normal forms (JSON or words)")
    sp.add_argument("x")
    sp.add_argument("y")
    add("rank", cmd_rank, "rank of the Brauer monoid algebra")
    add("tables", cmd_tables, "verify the reference tables cell by cell")
    sp = add("fuzz", cmd_fuzz, "randomized self-check")
    sp.add_argument("--count", type=int, default=1000)
    sp.add_argument("--max-len", type=int, default=20, help="word length bound for type A")
    sp.add_argument("--max-height", type=int, default=3, help="normal form height bound for type E")
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage, which would read as caps exhaustion here
        return EXIT_OK if not exc.code else EXIT_DOMAIN
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    out = Out(args.json)
    try:
        _system(args.type)
        if args.caps_extra_length <= 0 or args.caps_visited <= 0 or args.threads <= 0:
            raise ValueError("caps and thread counts must be positive")
        adm.set_orbit_store(None if args.no_cache else OrbitCache(default_cache_dir()))
        return args.func(args, out)
    except nf.CapsExhausted as exc:
        print(f"caps exhausted: {exc}", file=sys.stderr)
        return EXIT_CAPS
    except (ValueError, nf.NormalFormError, adm.OrbitTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
