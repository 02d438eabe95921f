"""Command-line entry point: ``levelseq {gen,verify,primes,bench}``.

Exit codes: 0 success / all checks pass, 1 a verification or self-check
failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import os
import random
import re
import statistics
import struct
import sys
import time
from contextlib import contextmanager
from functools import partial
from typing import Optional

from . import verify as V
from .fieldcore import FieldOps, PrimeDesc, fe_add, fe_mul, pseudo_mersenne_form
from .levels import format_ascii, pack_bits
from .lfsr import CharPoly, UnsupportedSize, impulse_state, is_primitive, iter_lfsr
from .primesearch import offset_for, search_pseudo_mersenne

log = logging.getLogger("levelseq")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SEED_ENV = "LEVELSEQ_SEED"
CHUNK_TERMS = 64 * 1024  # multiple of 64 so packed/ascii chunks stay aligned

SUITES = ("lemma1", "lemma2", "crossings", "theorem", "periods", "star", "all")


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV}={raw!r} is not an integer") from None


def _count(text: str) -> int:
    """Parse counts such as ``1000000`` or ``1e6``."""
    try:
        value = float(text) if any(c in text for c in ".eE") else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a count: {text!r}") from None
    if value != int(value) or value < 1:
        raise argparse.ArgumentTypeError(f"count must be a positive integer: {text!r}")
    return int(value)


_MODULUS_RE = re.compile(r"^\s*2\s*\^\s*(\d+)\s*-\s*(\d+)\s*$")


def parse_modulus(text: str) -> int:
    """``2^n-a`` or a decimal integer."""
    m = _MODULUS_RE.match(text)
    if m:
        return (1 << int(m.group(1))) - int(m.group(2))
    try:
        return int(text, 0)
    except ValueError:
        raise UsageError(f"cannot parse modulus {text!r}; use 2^n-a or an integer") from None


# ---------------------------------------------------------------- gen

def _parse_init(text: str, f: CharPoly) -> tuple[int, ...]:
    if text == "impulse":
        return impulse_state(f.n)
    try:
        state = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"initial state {text!r} is not a comma-separated list") from None
    if len(state) != f.n:
        raise UsageError(f"initial state needs {f.n} entries, got {len(state)}")
    if any(not 0 <= v < f.p for v in state):
        raise UsageError(f"initial state entries must lie in [0, {f.p})")
    if not any(state):
        raise UsageError("initial state is all zero")
    return state


@contextmanager
def _open_output(path: Optional[str], binary: bool):
    if path is None or path == "-":
        yield sys.stdout.buffer if binary else sys.stdout
        (sys.stdout.buffer if binary else sys.stdout).flush()
    else:
        with open(path, "wb" if binary else "w") as fh:
            yield fh


def cmd_gen(args) -> int:
    try:
        f = CharPoly.parse(args.poly)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    init = _parse_init(args.init, f)
    if args.require_primitive and not is_primitive(f):
        raise UsageError(f"polynomial {f} is not primitive")

    if args.level is not None:
        if not 0 <= args.level <= f.pd.k:
            raise UsageError(f"level {args.level} not in [0, {f.pd.k}] for p = {f.p}")
        fmt = args.format or "packed"
        if fmt not in ("packed", "ascii"):
            raise UsageError(f"format {fmt!r} is not valid for a level stream")
    else:
        fmt = args.format or "decimal"
        if fmt not in ("decimal", "words"):
            raise UsageError(f"format {fmt!r} is not valid for residues")

    ops = FieldOps(f.pd)
    log.info("p=%d arithmetic path: %s", f.p, ops.kind)
    terms = iter_lfsr(f, init)
    remaining = args.len
    binary = fmt in ("packed", "words")
    # ascii is chunked in 64-bit lines, so only the final chunk can end short
    with _open_output(args.output, binary) as out:
        while remaining:
            take = min(CHUNK_TERMS, remaining)
            chunk = list(itertools.islice(terms, take))
            remaining -= take
            if args.level is not None:
                bits = bytes((a >> args.level) & 1 for a in chunk)
                out.write(pack_bits(bits) if fmt == "packed" else format_ascii(bits))
            elif fmt == "words":
                out.write(struct.pack(f"<{len(chunk)}Q", *chunk))
            else:
                out.write("".join(f"{a}\n" for a in chunk))
    return EXIT_OK


# ---------------------------------------------------------------- verify

def _run_suite(name: str, args) -> dict:
    if name == "lemma1":
        reports = ([V.verify_lemma1(PrimeDesc(args.p))] if args.p
                   else V.lemma1_suite(args.pmax or 1000))
    elif name == "lemma2":
        reports = ([V.verify_lemma2(PrimeDesc(args.p), keep_witnesses=True)] if args.p
                   else V.lemma2_suite(args.pmax or 200))
    elif name == "crossings":
        reports = ([V.verify_crossings(PrimeDesc(args.p))] if args.p
                   else V.crossings_suite(args.pmax or 200))
    elif name in ("theorem", "periods"):
        polys = [CharPoly.parse(s) for s in args.poly] if args.poly else None
        check = V.verify_theorem if name == "theorem" else V.verify_period_corollary
        reports = [check(f, args.bound) for f in (polys or V.default_polys())]
    elif name == "star":
        primes = [args.p] if args.p else V.DEFAULT_STAR_PRIMES
        reports = V.star_suite(primes, args.samples, args.seed)
    else:
        raise UsageError(f"unknown suite {name!r}")
    return V.summarize(name, reports)


def cmd_verify(args) -> int:
    try:
        if args.suite == "all":
            parts = [_run_suite(name, args) for name in SUITES[:-1]]
            result = {
                "check": "all",
                "verdict": "pass" if all(s["verdict"] == "pass" for s in parts) else "fail",
                "suites": parts,
            }
        else:
            result = _run_suite(args.suite, args)
    except (ValueError, UnsupportedSize) as exc:
        raise UsageError(str(exc)) from None
    json.dump(result, sys.stdout, indent=args.indent)
    sys.stdout.write("\n")
    return EXIT_OK if result["verdict"] == "pass" else EXIT_FAIL


# ---------------------------------------------------------------- primes

def cmd_primes(args) -> int:
    try:
        found = search_pseudo_mersenne(args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    for i in found:
        print(f"{i}\t{(1 << args.n) - offset_for(i)}")
    return EXIT_OK


# ---------------------------------------------------------------- bench

def _time_median(fn, xs, ys, repeat: int) -> float:
    list(map(fn, xs, ys))  # warmup
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        list(map(fn, xs, ys))
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def bench_modulus(p: int, ops: int, seed: int, repeat: int = 5) -> dict:
    """Time generic vs fast add/mul on seeded operands after checking equality."""
    try:
        pd = PrimeDesc(p)
    except ValueError as exc:
        raise UsageError(f"modulus {p}: {exc}") from None
    if pseudo_mersenne_form(pd) is None:
        raise UsageError(f"modulus {p} is neither Mersenne nor a sparse 2^n - a prime")
    fast = FieldOps(pd)
    generic = {"add": partial(fe_add, pd), "mul": partial(fe_mul, pd)}
    rng = random.Random(seed)
    xs = [rng.randrange(p) for _ in range(ops)]
    ys = [rng.randrange(p) for _ in range(ops)]

    mismatches = {}
    for op in ("add", "mul"):
        ref = list(map(generic[op], xs, ys))
        got = list(map(getattr(fast, op), xs, ys))
        mismatches[op] = sum(a != b for a, b in zip(ref, got))

    rows = {}
    for label, table in (("generic", generic), (fast.kind, {"add": fast.add, "mul": fast.mul})):
        rows[label] = {op: ops / _time_median(table[op], xs, ys, repeat) for op in ("add", "mul")}
    return {"p": p, "kind": fast.kind, "ops": ops, "seed": seed,
            "mismatches": mismatches, "ops_per_sec": rows}


def cmd_bench(args) -> int:
    p = parse_modulus(args.modulus)
    result = bench_modulus(p, args.ops, args.seed, args.repeat)
    ok = not any(result["mismatches"].values())
    print(f"modulus {p} ({result['kind']}), {args.ops} operand pairs, seed {args.seed}")
    print(f"equality check: {'pass' if ok else 'FAIL'} "
          f"(add mismatches {result['mismatches']['add']}, mul mismatches {result['mismatches']['mul']})")
    print(f"{'path':<16}{'add ops/s':>16}{'mul ops/s':>16}")
    for label, row in result["ops_per_sec"].items():
        print(f"{label:<16}{row['add']:>16.0f}{row['mul']:>16.0f}")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="levelseq", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("--seed", type=int, default=None,
                        help=f"RNG seed (default: ${SEED_ENV} or 0)")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="stream an LFSR sequence or one of its level sequences")
    g.add_argument("poly", help="polynomial spec p:n:c0,...,c_{n-1}")
    g.add_argument("--init", default="impulse", help="comma-separated state or 'impulse'")
    g.add_argument("--len", type=_count, required=True, help="number of terms")
    g.add_argument("--level", type=int, help="emit bit level i instead of residues")
    g.add_argument("--format", choices=("decimal", "words", "packed", "ascii"))
    g.add_argument("--output", "-o", help="output path (default stdout)")
    g.add_argument("--require-primitive", action="store_true")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="run a brute-force verification suite")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--pmax", type=int, help="check every odd prime below this bound")
    v.add_argument("--p", type=int, help="check a single prime")
    v.add_argument("--poly", action="append", help="polynomial spec (repeatable)")
    v.add_argument("--bound", type=int, default=V.DEFAULT_PERIOD_BOUND, help="largest period p^n - 1")
    v.add_argument("--samples", type=_count, default=V.STAR_SAMPLES, help="samples for large Mersenne primes")
    v.add_argument("--indent", type=int, default=None)
    v.set_defaults(func=cmd_verify)

    pr = sub.add_parser("primes", help="list i with 2^n - (2^i + 1) prime")
    pr.add_argument("n", type=int)
    pr.set_defaults(func=cmd_primes)

    b = sub.add_parser("bench", help="generic vs fast modular add/mul throughput")
    b.add_argument("modulus", help="2^n-a or an integer")
    b.add_argument("--ops", type=_count, default=10**6)
    b.add_argument("--repeat", type=int, default=5)
    b.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        if args.seed is None:
            args.seed = _default_seed()
        return args.func(args)
    except UsageError as exc:
        print(f"levelseq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
