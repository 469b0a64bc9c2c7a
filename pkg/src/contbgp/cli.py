"""Command line entry points: ``contbgp run`` and ``contbgp bench``.

Exit codes: 0 success, 1 bench mismatch or other error, 2 parse error,
3 class mismatch, 4 stream assumption violation.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from typing import List, Optional

from .bench import run_bench
from .errors import AssumptionViolation, BGPError, ClassMismatch, OutOfOrderTimestamp, ParseError
from .lineio import format_answer, iter_stream, parse_query, write_delta
from .model import answer_key
from .session import Mode, Session, Strictness

EXIT_PARSE = 2
EXIT_CLASS = 3
EXIT_ASSUMPTION = 4


def _open(path: str):
    if path == "-":
        return contextlib.nullcontext(sys.stdin)
    return open(path, encoding="utf-8", newline="")


def _load_query(path: str):
    with _open(path) as fh:
        return parse_query(fh)


def _cmd_run(args, out) -> int:
    q = _load_query(args.query)
    session = Session(q, Mode(args.mode), Strictness.LENIENT if args.lenient else Strictness.STRICT)
    with _open(args.stream) as fh:
        for u in iter_stream(fh):
            for d in session.feed(u):
                out.write(write_delta(d))
    if args.consolidated:
        out.write("== ANSWERS ==\n")
        for a in sorted(session.consolidated, key=answer_key):
            out.write(format_answer(a) + "\n")
    return 0


def _cmd_bench(args, out) -> int:
    q = _load_query(args.query)
    with _open(args.stream) as fh:
        updates = list(iter_stream(fh))
    strictness = Strictness.LENIENT if args.lenient else Strictness.STRICT
    report = run_bench(q, updates, Mode(args.mode), args.repeat, strictness)
    out.writelines(report.lines())
    return 0 if report.matched else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="contbgp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    modes = [m.value for m in Mode]

    run = sub.add_parser("run", help="stream delta answers for one query")
    run.add_argument("--query", required=True)
    run.add_argument("--stream", required=True, help="stream file, or - for stdin")
    run.add_argument("--mode", choices=modes, default="auto")
    strict = run.add_mutually_exclusive_group()
    strict.add_argument("--strict", action="store_true", default=True)
    strict.add_argument("--lenient", action="store_true")
    run.add_argument("--consolidated", action="store_true",
                     help="append the consolidated answer set after the deltas")
    run.set_defaults(func=_cmd_run)

    bench = sub.add_parser("bench", help="verify an evaluator against the oracle and time it")
    bench.add_argument("--query", required=True)
    bench.add_argument("--stream", required=True)
    bench.add_argument("--mode", choices=modes, default="auto")
    bench.add_argument("--repeat", type=int, default=1)
    bstrict = bench.add_mutually_exclusive_group()
    bstrict.add_argument("--strict", action="store_true", default=True)
    bstrict.add_argument("--lenient", action="store_true")
    bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv: Optional[List[str]] = None, out=None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout if out is None else out
    try:
        return args.func(args, out)
    except ParseError as exc:
        print(f"contbgp: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ClassMismatch as exc:
        print(f"contbgp: class mismatch: {exc}", file=sys.stderr)
        return EXIT_CLASS
    except (AssumptionViolation, OutOfOrderTimestamp) as exc:
        print(f"contbgp: assumption violation: {exc}", file=sys.stderr)
        return EXIT_ASSUMPTION
    except OSError as exc:
        print(f"contbgp: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BGPError as exc:
        print(f"contbgp: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
