"""Command line entry point: ``kohlab <subcommand> ...``.

Exit codes: 0 success / everything verified, 1 a mathematical failure was
found (counterexample, failed identity or proof step), 2 usage error.
Results go to stdout (or ``--out``); progress and diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import List, Optional

from . import __version__
from .bergeron import Quadruple, check, difference, failure_record, sweep
from .kohdec import (
    closed_form_lambda,
    closed_form_mu,
    koh_term,
    koh_terms,
    lambda_family,
    lambda_indices,
    lambda_j_max,
    mu_family,
    mu_i_max,
    sum_polys,
)
from .parallel import JOBS_ENV, default_jobs
from .proofcheck import A3_STEPS, Step, run_a2, run_a3
from .qbinom import classify_strict, gauss_box

log = logging.getLogger("kohlab")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

FORMATS = ("json", "csv", "text")

# statement -> operation, printed by the hidden --seed-docs flag
SEED_DOCS = [
    ("[m+n choose m]_q as partitions in an m x n box", "qbinom.gauss_box / qbinom.qbin"),
    ("strict unimodality of [b+c choose b]_q, nine exceptional pairs", "qbinom.classify_strict"),
    ("[d+2 choose 2]_q has a_i = ceil((i+1)/2) for i <= d", "proofcheck.check_a2_coeffs"),
    ("a = 2 case via strict increase in even degrees", "proofcheck.check_a2, qbinom.even_strict_increase"),
    ("KOH: [m+n choose m]_q = sum over lam |- m of F_lam(q)", "kohdec.koh_term / kohdec.koh_sum"),
    ("first difference truncated at the middle degree", "qpoly.truncated_first_difference"),
    ("iterated expansion of [d+3 choose 3]_q", "kohdec.expand_d3, proofcheck.check_eq_a"),
    ("first difference of the expansion without its head term", "proofcheck.check_eq_aa"),
    ("lambda^{i,j} family and its closed form", "kohdec.lambda_family / closed_form_lambda"),
    ("lambda^{i,j} terms dominate sum (q^{6i+2} + ... + q^{d+2i})", "proofcheck.check_ineq_1"),
    ("shifted-index dominance for c > 4", "proofcheck.check_ineq_2"),
    ("c = 4 slack l_{2b-6} > r_{2b-6}", "proofcheck.check_rl"),
    ("mu^i family and its closed form", "kohdec.mu_family / closed_form_mu"),
    ("mu^i terms dominate q^2 + ... + q^d plus the q^{6i}", "proofcheck.check_66"),
    ("(1-q)[d+3 choose 3]_q <= (1-q)[b+c choose b]_q", "proofcheck.check_final_a3"),
    ("[b+c choose b]_q - [a+d choose d]_q nonnegative and unimodal", "bergeron.check / bergeron.sweep"),
]


class UsageError(Exception):
    pass


# -- output helpers -------------------------------------------------------------


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _csv(rows: List[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _poly_rows(p) -> List[list]:
    return [["degree", "coefficient"]] + [[i, c] for i, c in enumerate(p.coeffs)]


# -- subcommands --------------------------------------------------------------------


def cmd_gauss(args) -> int:
    if args.m < 0 or args.n < 0:
        raise UsageError("--m and --n must be nonnegative")
    p = gauss_box(args.m, args.n)
    if args.format == "json":
        _emit(args, json.dumps(p.to_json()) + "\n")
    elif args.format == "csv":
        _emit(args, _csv(_poly_rows(p)))
    else:
        _emit(args, str(p) + "\n")
    return EXIT_OK


def cmd_classify(args) -> int:
    if args.bmax < 2 or args.cmax < 2:
        raise UsageError("--bmax and --cmax must be at least 2")
    rows = [
        (b, c, classify_strict(b, c))
        for b in range(2, args.bmax + 1)
        for c in range(b, args.cmax + 1)
    ]
    if args.format == "json":
        _emit(args, _dump_json([{"b": b, "c": c, "strict": s} for b, c, s in rows]))
    elif args.format == "csv":
        _emit(args, _csv([["b", "c", "strict"]] + [[b, c, int(s)] for b, c, s in rows]))
    else:
        # b down the side, c across; '+' strict, '.' not strict, ' ' outside c >= b
        cs = range(2, args.cmax + 1)
        verdict = {(b, c): s for b, c, s in rows}
        lines = ["b\\c " + "".join(f"{c:>3}" for c in cs)]
        for b in range(2, args.bmax + 1):
            cells = "".join(f"{'+' if verdict[b, c] else '.':>3}" if (b, c) in verdict else "   " for c in cs)
            lines.append(f"{b:>3} {cells}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _koh_family(args) -> int:
    b, c = args.b, args.c
    if b is None or c is None:
        raise UsageError("--family needs --b and --c")
    records = []
    try:
        if args.family == "lambda":
            ranges = {"i": [1, (b - 3) // 3], "j_max": {}}
            for i, j in lambda_indices(b, c):
                ranges["j_max"][str(i)] = lambda_j_max(b, c, i)
                lam = lambda_family(b, c, i, j)
                closed = closed_form_lambda(b, c, i, j)
                generic = koh_term(lam, c).value
                records.append({"i": i, "j": j, "partition": list(lam.parts),
                                "closed_form": closed.to_json(), "match": closed == generic})
        else:
            ranges = {"i": [1, mu_i_max(b)]}
            for i in range(1, mu_i_max(b) + 1):
                mu = mu_family(b, i)
                closed = closed_form_mu(b, c, i)
                generic = koh_term(mu, c).value
                records.append({"i": i, "partition": list(mu.parts),
                                "closed_form": closed.to_json(), "match": closed == generic})
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ok = all(r["match"] for r in records)
    if args.format == "json":
        _emit(args, _dump_json({"family": args.family, "b": b, "c": c, "ranges": ranges,
                                "members": records, "all_match": ok}))
    elif args.format == "csv":
        head = ["i", "j", "partition", "match"] if args.family == "lambda" else ["i", "partition", "match"]
        rows = [[r["i"]] + ([r["j"]] if "j" in r else []) + [" ".join(map(str, r["partition"])), int(r["match"])]
                for r in records]
        _emit(args, _csv([head] + rows))
    else:
        lines = []
        for r in records:
            idx = f"i={r['i']}" + (f" j={r['j']}" if "j" in r else "")
            lines.append(f"{idx:<12} {tuple(r['partition'])}  {'ok' if r['match'] else 'MISMATCH'}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_koh(args) -> int:
    if args.family:
        return _koh_family(args)
    if args.m is None or args.n is None:
        raise UsageError("koh needs --m and --n (or --family with --b and --c)")
    if args.m < 1 or args.n < 0:
        raise UsageError("koh needs --m >= 1 and --n >= 0")
    terms = koh_terms(args.m, args.n)
    total = sum_polys([t.value for t in terms])
    ok = total == gauss_box(args.m, args.n)
    if args.format == "json":
        out = {"m": args.m, "n": args.n, "sum": total.to_json(), "matches_gauss": ok}
        if args.terms:
            out["terms"] = [t.to_json() for t in terms]
        _emit(args, _dump_json(out))
    elif args.format == "csv":
        rows = [["partition", "exponent", "value"]]
        rows += [[" ".join(map(str, t.partition.parts)), t.exponent, " ".join(t.value.to_json())] for t in terms]
        _emit(args, _csv(rows))
    else:
        lines = []
        if args.terms:
            lines += [f"{str(t.partition):<20} {t.value}" for t in terms]
        lines.append(f"sum = {total}")
        lines.append("matches gauss_box: " + ("yes" if ok else "NO"))
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_diff(args) -> int:
    quad = Quadruple(args.a, args.b, args.c, args.d)
    problems = quad.violations()
    if problems:
        raise UsageError(f"invalid quadruple {quad.as_tuple()}: " + "; ".join(problems))
    p = difference(quad)
    rep = check(quad)
    if args.format == "json":
        _emit(args, _dump_json({"quadruple": quad.to_json(), "difference": p.to_json(), "report": rep.to_json()}))
    elif args.format == "csv":
        _emit(args, _csv(_poly_rows(p)))
    else:
        _emit(args, f"{p}\n{rep.to_json()}\n")
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_sweep(args) -> int:
    if args.max_product < 1:
        raise UsageError("--max-product must be positive")
    if args.out:
        with open(args.out, "w") as fh:
            failures = sweep(args.max_product, args.jobs, out=fh)
    else:
        failures = sweep(args.max_product, args.jobs)
    records = [failure_record(q, r) for q, r in failures]
    log.info("sweep: %d failure(s)", len(records))
    if args.format == "csv":
        rows = [["a", "b", "c", "d", "first_violation_degree"]]
        rows += [[q.a, q.b, q.c, q.d, r.first_violation_degree] for q, r in failures]
        sys.stdout.write(_csv(rows))
    elif args.format == "text":
        for q, r in failures:
            sys.stdout.write(f"{q.as_tuple()} {r.to_json()}\n")
        sys.stdout.write(f"{len(failures)} counterexample(s)\n")
    else:
        sys.stdout.write(_dump_json(records))
    return EXIT_FAIL if failures else EXIT_OK


def _parse_steps(raw: str):
    if raw == "all":
        return A3_STEPS
    try:
        steps = tuple(Step(s.strip()) for s in raw.split(",") if s.strip())
    except ValueError as exc:
        raise UsageError(f"unknown step in --steps: {exc}") from None
    if not steps:
        raise UsageError("--steps is empty")
    return steps


def cmd_proof(args) -> int:
    if args.case == "a2":
        if args.bmax < 3:
            raise UsageError("--bmax must be at least 3 for case a2")
        verdicts = run_a2(args.bmax, args.cmax, jobs=args.jobs)
    else:
        if args.bmax < 3 or args.cmax < 4:
            raise UsageError("case a3 needs --bmax >= 3 and --cmax >= 4")
        verdicts = run_a3(args.bmax, args.cmax, _parse_steps(args.steps), jobs=args.jobs)
    ok = all(v.passed for v in verdicts)
    if args.format == "csv":
        rows = [["step", "params", "pass", "detail", "branch"]]
        rows += [[v.step_id.value, " ".join(f"{k}={x}" for k, x in v.params.items()), int(v.passed),
                  v.detail or "", v.branch] for v in verdicts]
        _emit(args, _csv(rows))
    elif args.format == "text":
        lines = [f"{'PASS' if v.passed else 'FAIL'} {v.step_id.value:<16} {v.params}"
                 + (f"  {v.detail}" if v.detail else "") for v in verdicts]
        lines.append(f"{sum(v.passed for v in verdicts)}/{len(verdicts)} steps passed")
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, _dump_json([v.to_json() for v in verdicts]))
    return EXIT_OK if ok else EXIT_FAIL


# -- parser -----------------------------------------------------------------------


def _config_defaults(path: str) -> dict:
    """``key=value`` lines; ``#`` starts a comment, dashes in keys map to underscores."""
    out = {}
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None, help="output format (default json)")
    common.add_argument("--json", action="store_const", const="json", dest="format", help="same as --format json")
    common.add_argument("--jobs", type=int, default=None, help=f"worker processes (default ${JOBS_ENV} or 1)")
    common.add_argument("--out", default=None, help="write results to this file")
    common.add_argument("--config", default=None, help="key=value file supplying option defaults")
    common.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")

    parser = argparse.ArgumentParser(prog="kohlab", description="q-binomial coefficients, KOH terms and Bergeron differences")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--seed-docs", action="store_true", help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")

    p = sub.add_parser("gauss", parents=[common], help="print [m+n choose m]_q")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_gauss)

    p = sub.add_parser("classify", parents=[common], help="strict unimodality table")
    p.add_argument("--bmax", type=int, required=True)
    p.add_argument("--cmax", type=int, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("koh", parents=[common], help="KOH decomposition or a partition family")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--terms", action="store_true", help="list every KOH term")
    p.add_argument("--family", choices=("lambda", "mu"))
    p.add_argument("--b", type=int)
    p.add_argument("--c", type=int)
    p.set_defaults(func=cmd_koh)

    p = sub.add_parser("diff", parents=[common], help="difference polynomial at one quadruple")
    for name in "abcd":
        p.add_argument(f"--{name}", type=int, required=True)
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("sweep", parents=[common], help="search for counterexamples up to bc <= N")
    p.add_argument("--max-product", type=int, required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("proof", parents=[common], help="verify the a=2 / a=3 arguments on a grid")
    p.add_argument("--case", choices=("a2", "a3"), required=True)
    p.add_argument("--bmax", type=int, required=True)
    p.add_argument("--cmax", type=int, required=True)
    p.add_argument("--steps", default="all", help="all, or a comma list such as EQ_A,INEQ_1")
    p.set_defaults(func=cmd_proof)
    return parser


def _resolve(args) -> None:
    if args.config:
        for key, value in _config_defaults(args.config).items():
            if not hasattr(args, key):
                raise UsageError(f"config key {key!r} does not apply to {args.subcommand}")
            if getattr(args, key) is None:
                setattr(args, key, int(value) if key == "jobs" else value)
    if args.format is None:
        args.format = "json"
    if args.format not in FORMATS:
        raise UsageError(f"format must be one of {', '.join(FORMATS)}")
    if args.jobs is None:
        try:
            args.jobs = default_jobs()
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")


def _usage_error(parser, message: str) -> int:
    sys.stderr.write(_dump_json({"error": "usage", "message": message}))
    parser.print_usage(sys.stderr)
    return EXIT_USAGE


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.seed_docs:
        for statement, op in SEED_DOCS:
            sys.stdout.write(f"{statement}\n    -> {op}\n")
        return EXIT_OK
    if not args.subcommand:
        return _usage_error(parser, "missing subcommand")
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        _resolve(args)
        return args.func(args)
    except (UsageError, ValueError) as exc:
        return _usage_error(parser, str(exc))


if __name__ == "__main__":
    sys.exit(main())
