"""Command line interface.

    blockscope --algebra kS3@p2 [--cap N] [--seed N] [--budget N]
               [--field q] [--slow] [--out FILE] [--golden FILE] TASK

TASK is one of info, blocks, cohomology, support, adjoint, hochschild,
pipoints, all, verify:all, or verify:<name> with <name> among

    center same relative krull nilpotents localunipotent eckmann-shapiro
    kernel-lemma xN-example equiv injective homeo-local defect rep-type

Exit codes: 0 = no failures (inconclusive verdicts are flagged in the
report), 2 = some verdict failed or the golden diff is nonempty,
3 = the requested task is unsupported for this algebra.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .corpus import build as build_corpus, builtin_char, corpus_names
from .ff import Field, is_prime
from .reports import RunConfig, compare_golden, report_text, run_task
from .specfile import SpecError, parse_spec
from .workspace import Workspace


def _field_from_q(q: int, p_expected: int | None) -> Field:
    p = None
    for cand in range(2, 32):
        if is_prime(cand):
            e = 0
            n = q
            while n % cand == 0:
                n //= cand
                e += 1
            if n == 1 and e >= 1:
                p = cand
                break
    if p is None:
        raise ValueError(f"--field must be a prime power, got {q}")
    e = 0
    n = q
    while n > 1:
        n //= p
        e += 1
    if p_expected is not None and p != p_expected:
        raise ValueError(f"--field characteristic {p} does not match the algebra ({p_expected})")
    return Field(p, e)


def make_parser():
    ap = argparse.ArgumentParser(
        prog="blockscope",
        description="block decompositions, support varieties and flat points of small Hopf algebras",
    )
    ap.add_argument(
        "task",
        nargs="?",
        help="info|blocks|cohomology|support|adjoint|hochschild|pipoints|all|verify:<name>|verify:all",
    )
    ap.add_argument("--algebra", default=None, help="builtin name or path to an algebra spec file")
    ap.add_argument("--cap", type=int, default=10, help="degree cap (default 10)")
    ap.add_argument("--seed", type=int, default=0xB10C, help="sampling seed")
    ap.add_argument("--budget", type=int, default=20000, help="sampling budget")
    ap.add_argument("--field", type=int, default=None, help="field size q = p^e override")
    ap.add_argument("--slow", action="store_true", help="enable the large enveloping checks")
    ap.add_argument("--out", default=None, help="write the report to this file")
    ap.add_argument("--golden", default=None, help="compare against this golden report")
    ap.add_argument("--list", action="store_true", help="list builtin algebras and exit")
    return ap


def main(argv=None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    if args.list:
        print("\n".join(corpus_names()))
        return 0
    if args.task is None or args.algebra is None:
        ap.error("task and --algebra are required (or use --list)")
    try:
        if os.path.exists(args.algebra):
            override = None
            if args.field is not None:
                override = _field_from_q(args.field, None)
            algebra = parse_spec(args.algebra, override)
        else:
            override = None
            if args.field is not None:
                override = _field_from_q(args.field, builtin_char(args.algebra))
            algebra = build_corpus(args.algebra, override)
    except (SpecError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    cfg = RunConfig(
        algebra=args.algebra,
        cap=args.cap,
        seed=args.seed,
        budget=args.budget,
        field_q=args.field,
        slow=args.slow,
    )
    try:
        ws = Workspace(algebra, cap=args.cap, seed=args.seed, budget=args.budget, slow=args.slow)
        report, code = run_task(ws, cfg, args.task)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    text = report_text(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.golden:
        try:
            with open(args.golden, "r", encoding="utf-8") as fh:
                golden = json.load(fh)
        except FileNotFoundError:
            print(f"error: golden file {args.golden} not found", file=sys.stderr)
            return 3
        diffs = compare_golden(report, golden)
        if diffs:
            print("golden diff:", file=sys.stderr)
            for d in diffs:
                print("  " + d, file=sys.stderr)
            return 2
        print("golden diff: empty", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
