"""Command-line front end.

Every subcommand writes one report (CSV or JSON) to ``--out`` or stdout.
Exit status: 0 on success, 1 on a usage error, 2 when a verification fails.
Relative ``--out`` paths are resolved against ``$SFAREY_OUT_DIR`` when set.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .distribution import A, convergence_report, decay_verdicts
from .farey import to_rational
from .gaps.constants import c_any, gap_cdf_theory
from .gaps.empirical import RunTable, gap_table
from .identities import check_height_transfer, check_neighbour_identities
from .monoid import count_S_Q_below, enumerate_S_Q, least_traces
from .saturated import (
    SaturatedFamily,
    generate_by_filter,
    generate_by_insertion,
    insertion_sweep,
    insertion_tree,
    verify_unimodular,
)

log = logging.getLogger("sfarey")

OUT_DIR_ENV = "SFAREY_OUT_DIR"
EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for failed verification here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# argument types


def _order(text: str) -> int:
    try:
        Q = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"order must be an integer, got {text!r}")
    if Q < 3:
        raise argparse.ArgumentTypeError(f"order must be >= 3, got {Q}")
    return Q


def _order_list(text: str) -> list[int]:
    return [_order(t) for t in text.split(",") if t.strip()]


def _rational(text: str) -> Fraction:
    try:
        return to_rational(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r} (use a/b)")


def _beta_list(text: str) -> list[Fraction]:
    out = []
    for t in text.split(","):
        b = _rational(t)
        if not 0 <= b <= 1:
            raise argparse.ArgumentTypeError(f"beta={b} outside [0, 1]")
        out.append(b)
    return out


def _grid(text: str) -> list[float]:
    """``start:stop:step`` inclusive of ``stop`` (up to rounding)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected start:stop:step, got {text!r}")
    try:
        start, stop, step = (Fraction(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad number in {text!r}")
    if step <= 0:
        raise argparse.ArgumentTypeError("step must be > 0")
    if stop < start:
        raise argparse.ArgumentTypeError("stop must be >= start")
    n = int((stop - start) / step)
    return [float(start + i * step) for i in range(n + 1)]


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


def _eta_list(text: str) -> list[Fraction]:
    out = []
    for t in text.split(","):
        e = _rational(t)
        if e <= 0:
            raise argparse.ArgumentTypeError(f"eta must be > 0, got {e}")
        out.append(e)
    return out


# ---------------------------------------------------------------------------
# output


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return format(x, ".12g")
    return str(x)


def _csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _resolve(path: str) -> Path:
    p = Path(path)
    base = os.environ.get(OUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def _emit(args, text: str) -> None:
    if args.out in (None, "-"):
        sys.stdout.write(text)
        return
    path = _resolve(args.out)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as e:
        raise OSError(f"cannot write {path}: {e.strerror or e}") from e
    log.info("wrote %s", path)


def _table(args, header: Sequence[str], rows: list[Sequence], meta: dict | None = None) -> None:
    if args.format == "csv":
        _emit(args, _csv_text(header, rows))
        return
    records = [dict(zip(header, row)) for row in rows]
    _emit(args, _json_text({**(meta or {}), "rows": records}))


def _pmap(fn: Callable, items: list, parallelism: int) -> list:
    """Order-preserving map over a bounded process pool."""
    if parallelism <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# subcommands


def cmd_generate(args) -> int:
    gen = generate_by_insertion if args.method == "insertion" else generate_by_filter
    seq = gen(args.Q)
    rows = seq.rows()
    if args.format == "csv":
        _emit(args, _csv_text(("num", "den", "h"), rows))
    else:
        _emit(args, _json_text({"Q": args.Q, "size": seq.size,
                                "elements": [dict(zip(("num", "den", "h"), r)) for r in rows]}))
    return EXIT_OK


def cmd_tree(args) -> int:
    if args.Q_max < 4:
        raise UsageError("tree needs --Q-max >= 4")
    header = ("num", "den", "birth", "lp_num", "lp_den", "rp_num", "rp_den")
    _table(args, header, [rec.row() for rec in insertion_tree(args.Q_max)], {"Q_max": args.Q_max})
    return EXIT_OK


def cmd_verify(args) -> int:
    family = SaturatedFamily(args.Q_max)
    img_num, img_den, img_trace = least_traces(args.Q_max)
    results: dict[str, str | None] = {"unimodular": None, "cross-method": None}
    for grown in insertion_sweep(args.Q_max):
        Q = grown.order
        seq = family.sequence(Q)
        ok, idx = verify_unimodular(seq)
        if not ok and results["unimodular"] is None:
            fr = seq.fractions()
            results["unimodular"] = f"Q={Q}: {fr[idx - 1]} < {fr[idx]} is not unimodular"
        if results["cross-method"] is None:
            m = img_trace <= Q
            if grown != seq:
                results["cross-method"] = f"Q={Q}: filter and insertion disagree"
            elif not (np.array_equal(img_num[m], seq.num[1:]) and np.array_equal(img_den[m], seq.den[1:])):
                results["cross-method"] = f"Q={Q}: filter and monoid image disagree"
    results["lemma5"] = check_neighbour_identities(args.Q_max)
    results["corollary6"] = check_height_transfer(args.Q_max)
    summary = ", ".join(f"{k}: {'OK' if v is None else 'FAIL'}" for k, v in results.items())
    print(summary)
    for k, v in results.items():
        if v is not None:
            print(f"{k} counterexample: {v}", file=sys.stderr)
    if args.out:
        if args.format == "csv":
            text = _csv_text(("check", "status", "counterexample"),
                             [(k, "OK" if v is None else "FAIL", v or "") for k, v in results.items()])
        else:
            text = _json_text({"Q_max": args.Q_max,
                               "checks": {k: {"ok": v is None, "counterexample": v}
                                          for k, v in results.items()}})
        _emit(args, text)
    return EXIT_OK if all(v is None for v in results.values()) else EXIT_VERIFY


def cmd_dist(args) -> int:
    reports = convergence_report(sorted(args.Q_list), args.betas)
    verdicts = decay_verdicts(reports)
    header = ("Q", "beta", "empirical", "main_term", "rel_error")
    rows = [(r.Q, str(r.beta), r.empirical, r.main_term, r.rel_error) for r in reports]
    if args.format == "csv":
        _emit(args, _csv_text(header, rows))
        summary = _json_text({"decay": verdicts})
        if args.summary:
            _emit(argparse.Namespace(out=args.summary), summary)
        else:
            sys.stderr.write(summary)
    else:
        _emit(args, _json_text({"rows": [dict(zip(header, r)) for r in rows], "decay": verdicts}))
    return EXIT_OK


class _Theory:
    # picklable callable for the worker pool
    def __init__(self, r_max):
        self.r_max = r_max

    def __call__(self, lam: float) -> float:
        return gap_cdf_theory(lam, r_max=self.r_max)


def cmd_gaps(args) -> int:
    if args.Q < 4:
        raise UsageError("gaps needs --Q >= 4")
    if args.density_step <= 0:
        raise UsageError("--density-step must be > 0")
    lambdas = args.lam
    table = gap_table(args.Q)
    emp = table.cdf(lambdas).tolist()
    ahead = table.cdf([x + args.density_step for x in lambdas]).tolist()
    density = [(b - a) / args.density_step for a, b in zip(emp, ahead)]
    if args.no_theory:
        theory = [None] * len(lambdas)
    else:
        theory = _pmap(_Theory(args.r_max), lambdas, args.parallelism)
    header = ("lambda", "G_empirical", "G_theory", "density")
    rows = list(zip(lambdas, emp, theory, density))
    _table(args, header, rows, {"Q": args.Q, "N": table.N, "A": A,
                                "density_step": args.density_step, "r_max": args.r_max})
    return EXIT_OK


def cmd_theory(args) -> int:
    lambdas = args.lam
    vals = _pmap(_Theory(args.r_max), lambdas, args.parallelism)
    _table(args, ("lambda", "eta", "G_theory"), [(x, x / A, v) for x, v in zip(lambdas, vals)],
           {"A": A, "r_max": args.r_max})
    return EXIT_OK


def _c_theory(job) -> float:
    r, eta = job
    return c_any(r, float(eta))


def cmd_hcount(args) -> int:
    runs = RunTable.of_order(args.Q)
    jobs = [(r, eta) for r in args.r for eta in args.eta]
    counts = [runs.count(r, eta) for r, eta in jobs]
    theory = _pmap(_c_theory, jobs, args.parallelism)
    rows = []
    for (r, eta), n, c in zip(jobs, counts, theory):
        emp = n / args.Q**2
        ratio = emp / c if c > 0 else None
        rows.append((args.Q, r, float(eta), n, c, ratio))
    _table(args, ("Q", "r", "eta", "count", "c_r_theory", "ratio"), rows, {"Q": args.Q})
    return EXIT_OK


def cmd_monoid(args) -> int:
    if args.betas:
        counts = [{"Q": args.Q, "beta_num": b.numerator, "beta_den": b.denominator,
                   "count": count_S_Q_below(args.Q, b)} for b in args.betas]
        if args.format == "json":
            _emit(args, _json_text(counts))
        else:
            _emit(args, _csv_text(("Q", "beta_num", "beta_den", "count"),
                                  [tuple(c.values()) for c in counts]))
        return EXIT_OK
    rows = [(M.a, M.b, M.c, M.d, M.trace) for M in enumerate_S_Q(args.Q)]
    _table(args, ("a", "b", "c", "d", "trace"), rows, {"Q": args.Q})
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sfarey", description="Saturated Farey sets and their gap statistics.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, fmt=True):
        sp.add_argument("--out", metavar="PATH",
                        help=f"output file ('-' or omitted: stdout); relative paths use ${OUT_DIR_ENV}")
        if fmt:
            sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--parallelism", type=_positive_int, default=1,
                        help="worker processes; never changes the output")

    sp = sub.add_parser("generate", help="list SF_Q with h-values (columns num,den,h)")
    sp.add_argument("--Q", type=_order, required=True, help="order Q >= 3")
    sp.add_argument("--method", choices=("filter", "insertion"), default="filter",
                    help="filter F_Q by h, or insert mediants by birth")
    common(sp)
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("tree", help="mediant-insertion tree up to Q_max")
    sp.add_argument("--Q-max", dest="Q_max", type=_order, required=True)
    common(sp)
    sp.set_defaults(func=cmd_tree)

    sp = sub.add_parser("verify", help="unimodularity, cross-method and neighbour identities for Q <= Q_max")
    sp.add_argument("--Q-max", dest="Q_max", type=_order, default=200)
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("dist", help="#(SF_Q ∩ [0, β]) against its main term")
    sp.add_argument("--Q-list", dest="Q_list", type=_order_list, required=True, help="e.g. 1250,2500,5000")
    sp.add_argument("--betas", type=_beta_list, required=True, help="exact rationals β, e.g. 1/2,3/4,1")
    sp.add_argument("--summary", metavar="PATH", help="JSON decay summary (csv mode; default stderr)")
    common(sp)
    sp.set_defaults(func=cmd_dist)

    sp = sub.add_parser("gaps", help="empirical gap CDF G_Q(λ), limit G(λ) and finite-difference density")
    sp.add_argument("--Q", type=_order, required=True, help="order Q >= 4")
    sp.add_argument("--lambda", dest="lam", type=_grid, required=True, help="λ grid start:stop:step")
    sp.add_argument("--density-step", type=float, default=0.1,
                    help="density column is (G_Q(λ+step) - G_Q(λ))/step")
    sp.add_argument("--r-max", type=_positive_int, default=None,
                    help="truncate the run-length sum r in G(λ)")
    sp.add_argument("--no-theory", action="store_true", help="leave G_theory empty")
    common(sp)
    sp.set_defaults(func=cmd_gaps)

    sp = sub.add_parser("theory", help="limiting gap CDF G(λ) alone")
    sp.add_argument("--lambda", dest="lam", type=_grid, required=True, help="λ grid start:stop:step")
    sp.add_argument("--r-max", type=_positive_int, default=None)
    common(sp)
    sp.set_defaults(func=cmd_theory)

    sp = sub.add_parser("hcount", help="#H_{Q,r}(η) against C_r(η) Q^2")
    sp.add_argument("--Q", type=_order, required=True, help="order Q >= 4")
    sp.add_argument("--r", type=lambda s: [_positive_int(t) for t in s.split(",")], required=True,
                    help="run lengths r, e.g. 1,2,3")
    sp.add_argument("--eta", type=_eta_list, required=True, help="gap bounds η, e.g. 3,6,10")
    common(sp)
    sp.set_defaults(func=cmd_hcount)

    sp = sub.add_parser("monoid", help="matrices of S_Q (a,b,c,d,trace) or counts with Ψ(M) <= β")
    sp.add_argument("--Q", type=_order, required=True, help="trace bound Q")
    sp.add_argument("--betas", type=_beta_list, help="emit counts {Q, beta_num, beta_den, count} instead")
    common(sp)
    sp.set_defaults(func=cmd_monoid)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as e:
        print(f"sfarey {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"sfarey {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
