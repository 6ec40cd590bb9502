"""Command-line interface.

Subcommands: ``sieve`` (range runs with streaming output and checkpoints),
``constants`` (recomputed constant tables), ``verify`` (re-validate witness
files), ``selfcheck`` (built-in consistency suite).

Exit codes: 0 success, 1 usage error, 2 verification failure,
3 resource/range error.
"""

import argparse
import csv
import json
import sys

from . import bounds, selfcheck as selfcheck_mod
from .backend import BACKEND
from .errors import NesieveError, ResourceLimitError, CheckpointError
from .primes import is_prime, sieve_eratosthenes
from .sieve import (
    ELIMINATED,
    ENGINE_CHOICES,
    build_engine,
    check_witness_condition,
    parse_witness_line,
    scan_prime_limit,
    sieve_range,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_RESOURCE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser():
    parser = _Parser(prog="nesieve", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sieve", help="sieve a conductor range")
    p.add_argument("--ell", type=int, required=True, help="odd prime degree")
    p.add_argument("--from", dest="lo", type=int, default=2, help="range start")
    p.add_argument("--to", dest="hi", type=int, required=True, help="range end")
    p.add_argument("--engine", choices=ENGINE_CHOICES, default="auto")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--checkpoint", help="checkpoint file for resumable runs")
    p.add_argument("--emit-witnesses", action="store_true",
                   help="print one witness line per eliminated conductor")
    p.add_argument("--chunk-width", type=int, default=1_000_000)

    p = sub.add_parser("constants", help="emit a recomputed constant table")
    p.add_argument("--table", required=True,
                   choices=("c-burgess", "d1", "d2", "e", "c-ell", "special"))
    p.add_argument("--format", choices=("text", "csv"), default="text")

    p = sub.add_parser("verify", help="re-validate a file of witness lines")
    p.add_argument("--ell", type=int, default=3, help="odd prime degree")
    p.add_argument("--engine", choices=ENGINE_CHOICES, default="auto")
    p.add_argument("witness_file")

    p = sub.add_parser("selfcheck", help="run the built-in consistency suite")
    p.add_argument("--quick", action="store_true", help="subset suite, a few seconds")

    return parser


def _cmd_sieve(args):
    emit_text_witnesses = args.emit_witnesses and args.format == "text"
    out = sys.stdout
    writer = csv.writer(out) if args.format == "csv" else None
    if writer:
        writer.writerow(["f", "verdict", "q1", "q2", "r", "evals"])

    def stream(records):
        for rec in records:
            if args.format == "csv":
                writer.writerow(
                    [rec["f"], rec["verdict"], rec["q1"], rec["q2"], rec["r"], rec["evals"]]
                )
            elif args.format == "json":
                out.write(json.dumps(rec, sort_keys=True) + "\n")
            else:
                if rec["verdict"] == ELIMINATED:
                    if emit_text_witnesses:
                        out.write(
                            f"f={rec['f']}, q1={rec['q1']}, q2={rec['q2']}, r={rec['r']}\n"
                        )
                else:
                    out.write(f"{rec['f']}\n")
        out.flush()

    report = sieve_range(
        args.ell,
        args.lo,
        args.hi,
        engine=args.engine,
        workers=args.workers,
        chunk_width=args.chunk_width,
        checkpoint=args.checkpoint,
        stream=stream,
    )
    print(report.summary(), file=sys.stderr)
    return EXIT_OK


def _rows_for_table(name):
    if name == "c-burgess":
        return ["r", "C(r)"], [(r, str(v)) for r, v in bounds.burgess_table()]
    if name == "d1":
        return ["k", "D1(k)"], [(k, str(v)) for k, v in bounds.d1_table()]
    if name == "d2":
        return ["k", "D2(k)"], [(k, str(v)) for k, v in bounds.d2_table()]
    if name == "e":
        return (
            ["k", "E(k)", "E'(k)"],
            [(k, f"{float(e):.5g}", f"{float(ep):.5g}") for k, e, ep in bounds.e_table()],
        )
    if name == "c-ell":
        return (
            ["ell", "k", "crossing", "C_ell"],
            [(r.ell, r.k, f"{r.f_star:.4g}", f"10^{r.exponent}") for r in bounds.cl_table()],
        )
    return (
        ["ell", "threshold(2,3)", "threshold(3,5)"],
        [(ell, t1, t2) for ell, t1, t2 in bounds.special_table()],
    )


def _cmd_constants(args):
    header, rows = _rows_for_table(args.table)
    if args.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(header)
        writer.writerows(rows)
    else:
        widths = [
            max(len(str(h)), *(len(str(row[i])) for row in rows))
            for i, h in enumerate(header)
        ]
        print("  ".join(str(h).rjust(w) for h, w in zip(header, widths)))
        for row in rows:
            print("  ".join(str(c).rjust(w) for c, w in zip(row, widths)))
    return EXIT_OK


def _cmd_verify(args):
    try:
        with open(args.witness_file) as fh:
            lines = fh.readlines()
    except OSError as exc:
        print(f"nesieve: cannot read {args.witness_file}: {exc}", file=sys.stderr)
        return EXIT_USAGE

    witnesses = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            witnesses.append(parse_witness_line(line, args.ell))
        except ValueError:
            print(f"{args.witness_file}:{lineno}: malformed witness line", file=sys.stderr)
            return EXIT_USAGE

    failures = 0
    if witnesses:
        limit = max(scan_prime_limit(max(w.f for w in witnesses)),
                    max(w.r for w in witnesses) + 1)
        primes = sieve_eratosthenes(limit)
        for w in witnesses:
            reason = None
            if not is_prime(w.f):
                reason = "conductor is not prime"
            elif w.f % args.ell != 1:
                reason = f"conductor is not 1 mod {args.ell}"
            else:
                engine = build_engine(w.f, args.ell, args.engine, primes=primes)
                if not check_witness_condition(
                    w.f, args.ell, w.q1, w.q2, w.r, engine, primes=primes.primes
                ):
                    reason = "witness condition fails"
            if reason is None:
                print(f"PASS {w.text_line()}")
            else:
                print(f"FAIL {w.text_line()} ({reason})")
                failures += 1
    return EXIT_VERIFY if failures else EXIT_OK


def _cmd_selfcheck(args):
    results = selfcheck_mod.run_selfcheck(quick=args.quick)
    failed = 0
    for res in results:
        if res.ok:
            print(f"ok   {res.name}")
        else:
            print(f"FAIL {res.name}: {res.detail}")
            failed += 1
    print(f"selfcheck ({BACKEND} backend): {len(results) - failed}/{len(results)} passed")
    return EXIT_VERIFY if failed else EXIT_OK


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "sieve":
            return _cmd_sieve(args)
        if args.command == "constants":
            return _cmd_constants(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_selfcheck(args)
    except (ResourceLimitError, CheckpointError) as exc:
        print(f"nesieve: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except NesieveError as exc:
        print(f"nesieve: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"nesieve: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
