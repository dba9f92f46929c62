"""Counting saturated fractions below a threshold against the limiting main terms."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .farey import to_rational
from .saturated import SaturatedFamily, SaturatedSequence, generate_by_filter

ZETA2 = math.pi**2 / 6
# mean-gap normalizer: N(Q) ~ A Q^2
A = math.log(4 / 3) / (2 * ZETA2)


def _real(beta) -> float:
    return float(to_rational(beta)) if isinstance(beta, str) else float(beta)


@dataclass(frozen=True)
class CountReport:
    Q: int
    beta: Fraction
    empirical: int
    main_term: float
    rel_error: float

    def row(self) -> dict:
        d = asdict(self)
        d["beta"] = str(self.beta)
        return d


def count_in_sequence(seq: SaturatedSequence, beta) -> int:
    beta = to_rational(beta)
    num, den = seq.num[1:], seq.den[1:]
    return int(np.count_nonzero(num * beta.denominator <= beta.numerator * den))


def count_saturated_below(Q: int, beta) -> int:
    """``#(SF_Q ∩ [0, beta])``, exact; the leading 0/1 is not an element."""
    return count_in_sequence(generate_by_filter(Q), beta)


def theory_count(Q: int, beta) -> float:
    """Main term ``Q^2 / (2 zeta(2)) * log(2(1+beta)/(2+beta))``."""
    b = _real(beta)
    return Q * Q / (2 * ZETA2) * math.log(2 * (1 + b) / (2 + b))


def limit_cdf(beta) -> float:
    b = _real(beta)
    if not 0 <= b <= 1:
        raise ValueError(f"beta={beta} outside [0, 1]")
    return math.log(2 * (1 + b) / (2 + b)) / math.log(4 / 3)


def limit_density(x: float) -> float:
    return (1 / (1 + x) - 1 / (2 + x)) / math.log(4 / 3)


def monoid_main_term(Q: int, beta) -> float:
    """Main term of the monoid count: ``log(1+beta) / (2 zeta(2)) * Q^2``."""
    return math.log(1 + _real(beta)) / (2 * ZETA2) * Q * Q


def _report(Q: int, beta: Fraction, empirical: int) -> CountReport:
    main = theory_count(Q, beta)
    rel = abs(empirical - main) / main if main > 0 else 0.0
    return CountReport(Q, beta, empirical, main, rel)


def convergence_report(
    Q_list: Sequence[int], beta_list: Iterable
) -> list[CountReport]:
    """One report per ``(Q, beta)``, Q-major, from a single shared Farey array."""
    Q_list = list(Q_list)
    if Q_list != sorted(Q_list):
        raise ValueError("Q_list must be ascending")
    betas = [to_rational(b) for b in beta_list]
    family = SaturatedFamily(max(Q_list))
    out = []
    for Q in Q_list:
        seq = family.sequence(Q)
        for b in betas:
            out.append(_report(Q, b, count_in_sequence(seq, b)))
    return out


def decay_verdicts(reports: Sequence[CountReport]) -> dict[str, dict]:
    """Per beta: the rel_error sequence in Q order and whether it strictly decreases."""
    by_beta: dict[Fraction, list[CountReport]] = {}
    for r in reports:
        by_beta.setdefault(r.beta, []).append(r)
    out = {}
    for b, rows in by_beta.items():
        errs = [r.rel_error for r in sorted(rows, key=lambda r: r.Q)]
        out[str(b)] = {
            "Q": [r.Q for r in sorted(rows, key=lambda r: r.Q)],
            "rel_error": errs,
            "decreasing": all(x > y for x, y in zip(errs, errs[1:])) if b != 0 else True,
        }
    return out
