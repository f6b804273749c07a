"""Dimension estimate series for pairs of measures.

For seeds ``i != j`` and level ``k``, with ``x = lambda_j(I_i^(k))``::

    lower_k = log lambda_i(I_i^(k)) / log x
    upper_k = log(1 / b_{k,i}) / log x
    gap_k   = log n / |log x|

Logs are reporting values only.  Every invariant is decided on the
underlying rationals: since ``log x < 0``,

* ``upper_k <= 1``            iff ``x <= 1/b``
* ``upper_k <= lower_k``      iff ``lambda_i(I_i^(k)) <= 1/b``
* ``lower_k <= upper_k + g_k`` iff ``lambda_i(I_i^(k)) >= 1/(n b)``
* ``g_k`` strictly decreasing iff ``x`` strictly decreasing in ``k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .lemmas import fmt, measure_indices
from .measures import MeasureLab
from .report import to_csv

DPS = 60
CSV_FIELDS = ["k", "lower", "upper", "gap_bound", "lambda_i", "lambda_j", "b"]
_ctx = mpmath.MPContext()
_ctx.dps = DPS


def log_fraction(x: Fraction):
    """Natural log of a positive rational at ``DPS`` digits."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError(f"log of non-positive rational {x}")
    return _ctx.log(_ctx.mpf(x.numerator)) - _ctx.log(_ctx.mpf(x.denominator))


def sig15(v) -> str:
    return _ctx.nstr(v, 15, min_fixed=-math.inf, max_fixed=math.inf) if not isinstance(v, str) else v


class DegenerateTail(ValueError):
    def __init__(self, j: int, k: int, i: int):
        super().__init__(f"lambda_{j}(I_{i}^({k})) is zero; choose K <= m - 2")
        self.j, self.k, self.i = j, k, i


def _positive(lab: MeasureLab, j: int, k: int, i: int) -> Fraction:
    v = lab.column(j).measure(k, i)
    if v == 0:
        raise DegenerateTail(j, k, i)
    return v


def _check_K(lab: MeasureLab, K: int):
    if not 0 <= K <= lab.schedule.m - 2:
        raise ValueError(f"need 0 <= K <= m - 2, got K={K}, m={lab.schedule.m}")


def lower_series(lab: MeasureLab, i: int, j: int, K: int) -> list:
    _check_K(lab, K)
    out = []
    for k in range(K + 1):
        own, other = _positive(lab, i, k, i), _positive(lab, j, k, i)
        out.append(_ctx.mpf(1) if i == j else log_fraction(own) / log_fraction(other))
    return out


def upper_series(lab: MeasureLab, i: int, j: int, K: int) -> list:
    _check_K(lab, K)
    rt = lab.return_times(K)
    return [-_ctx.log(rt(k, i)) / log_fraction(_positive(lab, j, k, i)) for k in range(K + 1)]


def gap_series(lab: MeasureLab, i: int, j: int, K: int) -> list:
    _check_K(lab, K)
    ln = _ctx.log(lab.n)
    return [ln / abs(log_fraction(_positive(lab, j, k, i))) for k in range(K + 1)]


def liminf_estimate(series, window: int | None = None):
    """Minimum over the last ``window`` entries (default ``ceil(len/3)``)."""
    if not series:
        raise ValueError("empty series")
    if window is None:
        window = default_window(len(series) - 1)
    if not 1 <= window <= len(series):
        raise ValueError(f"window {window} outside 1..{len(series)}")
    return min(series[-window:])


def default_window(K: int) -> int:
    return max(1, math.ceil(K / 3))


def argmin_interval(lab: MeasureLab, i: int, j: int, k: int, margin=None) -> int:
    """Index ``t`` minimizing ``log lambda_i(I_t^(k)) / log lambda_j(I_t^(k))``.

    Ratios are compared at ``DPS`` digits; a runner-up within ``margin``
    of the minimum raises rather than guessing.
    """
    if margin is None:
        margin = _ctx.mpf(10) ** (-(DPS // 2))
    vals = []
    for t in range(1, lab.n + 1):
        x, y = _positive(lab, i, k, t), _positive(lab, j, k, t)
        vals.append((log_fraction(x) / log_fraction(y), t))
    vals.sort()
    if len(vals) > 1 and vals[1][0] - vals[0][0] < margin and i != j:
        raise ArithmeticError(f"argmin tie at level {k} between I_{vals[0][1]} and I_{vals[1][1]}")
    return vals[0][1]


@dataclass
class FrostmanVerdict:
    a: int
    b: int
    alpha: Fraction
    C: Fraction
    K: int
    instances_checked: int = 0
    failures: list[tuple[int, int]] = field(default_factory=list)  # (k, i)

    @property
    def passed(self) -> bool:
        return not self.failures


def frostman_check(lab: MeasureLab, a: int, b: int, alpha, C, K: int) -> FrostmanVerdict:
    """Check ``lambda_a(I_i^(k)) <= C lambda_b(I_i^(k))^alpha`` for all ``i``, ``k <= K``.

    Rational ``alpha`` with a small denominator is decided exactly by
    raising both sides to the denominator; otherwise by ``DPS``-digit logs.
    """
    alpha, C = Fraction(alpha), Fraction(C)
    if alpha < 0 or C <= 0:
        raise ValueError("need alpha >= 0 and C > 0")
    out = FrostmanVerdict(a, b, alpha, C, K)
    for k in range(K + 1):
        for i in range(1, lab.n + 1):
            x, y = lab.column(a).measure(k, i), lab.column(b).measure(k, i)
            out.instances_checked += 1
            if x == 0 or alpha == 0:
                ok = x <= C
            elif y == 0:
                ok = False
            elif alpha.denominator <= 64:
                q = alpha.denominator
                ok = x**q <= C**q * y**alpha.numerator
            else:
                ok = log_fraction(x) <= log_fraction(C) + _ctx.mpf(alpha.numerator) / alpha.denominator * log_fraction(y)
            if not ok:
                out.failures.append((k, i))
    return out


def frostman_constant(lab: MeasureLab, a: int, b: int, alpha, K: int):
    """Smallest ``C`` (as a float-precision mpf) making the Frostman inequality hold."""
    alpha = Fraction(alpha)
    worst = _ctx.mpf("-inf")
    for k in range(K + 1):
        for i in range(1, lab.n + 1):
            x, y = lab.column(a).measure(k, i), lab.column(b).measure(k, i)
            if x == 0:
                continue
            worst = max(worst, log_fraction(x) - _ctx.mpf(alpha.numerator) / alpha.denominator * log_fraction(y))
    return _ctx.exp(worst)


@dataclass
class DimensionSeries:
    """All series for one pair ``(i, j)`` plus the exact invariant verdicts."""

    i: int
    j: int
    K: int
    n: int
    own: list[Fraction]  # lambda_i(I_i^(k))
    other: list[Fraction]  # lambda_j(I_i^(k))
    b: list[int]
    lower: list
    upper: list
    gap: list
    window: int
    failures: dict[str, list[int]]

    @property
    def passed(self) -> bool:
        return not any(self.failures.values())

    @property
    def lower_tail_min(self):
        return liminf_estimate(self.lower, self.window)

    @property
    def upper_tail_min(self):
        return liminf_estimate(self.upper, self.window)

    @property
    def deficit(self):
        """``1 - tail-min(upper)``: distance of the upper estimate from 1."""
        return 1 - self.upper_tail_min

    def rows(self) -> list[dict]:
        return [
            {
                "k": k,
                "lower": sig15(self.lower[k]),
                "upper": sig15(self.upper[k]),
                "gap_bound": sig15(self.gap[k]),
                "lambda_i": fmt(self.own[k]),
                "lambda_j": fmt(self.other[k]),
                "b": str(self.b[k]),
            }
            for k in range(self.K + 1)
        ]

    def to_csv(self) -> str:
        return to_csv(CSV_FIELDS, self.rows())

    def to_dict(self) -> dict:
        return {
            "i": self.i,
            "j": self.j,
            "K": self.K,
            "window": self.window,
            "series": self.rows(),
            "lower_tail_min": sig15(self.lower_tail_min),
            "upper_tail_min": sig15(self.upper_tail_min),
            "deficit": sig15(self.deficit),
            "passed": self.passed,
            "failures": self.failures,
        }


def dimension_series(lab: MeasureLab, i: int, j: int, K: int, window: int | None = None) -> DimensionSeries:
    n = lab.n
    idx = measure_indices(n)
    if i not in idx or j not in idx:
        raise ValueError(f"i and j must lie in {idx}")
    if i == j:
        raise ValueError("need i != j")
    _check_K(lab, K)
    rt = lab.return_times(K)
    own = [_positive(lab, i, k, i) for k in range(K + 1)]
    other = [_positive(lab, j, k, i) for k in range(K + 1)]
    b = [rt(k, i) for k in range(K + 1)]
    failures = {
        "upper_le_1": [k for k in range(K + 1) if not other[k] * b[k] <= 1],
        "upper_le_lower": [k for k in range(K + 1) if not own[k] * b[k] <= 1],
        "lower_le_upper_plus_gap": [k for k in range(K + 1) if not n * b[k] * own[k] >= 1],
        "gap_decreasing": [k for k in range(1, K + 1) if not other[k] < other[k - 1]],
    }
    return DimensionSeries(
        i, j, K, n, own, other, b,
        lower_series(lab, i, j, K), upper_series(lab, i, j, K), gap_series(lab, i, j, K),
        default_window(K) if window is None else window,
        failures,
    )
