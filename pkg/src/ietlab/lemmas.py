"""Exact checks of the measure and return-time inequalities.

Each check walks its quantifier range and records every failing instance
with both sides as exact rationals.  Conventions:

* level ``k`` runs over ``0..K``; the vector at level ``k`` is
  ``Theta_{k+1} t_{k+1}``, so bounds quoting ``c`` or ``a`` at level ``k``
  use ``c_{k+1}`` and ``a_{k+1}``.
* "odd" indices are ``3, 5, ..., 2 floor(n/2) - 1`` and "even" indices
  ``2, 4, ..., 2 floor(n/2) - 2``; the end intervals 1 and ``n`` are never
  in either class.
* ``delta`` for ``lambda_k`` (k odd) sums intervals ``2..n-1`` except ``k``;
  for ``lambda_1`` it sums all of ``2..n-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Callable

from .family import ParameterSchedule
from .measures import MeasureLab


def odd_indices(n: int) -> list[int]:
    return list(range(3, 2 * (n // 2), 2))


def even_indices(n: int) -> list[int]:
    return list(range(2, 2 * (n // 2) - 1, 2))


def measure_indices(n: int) -> list[int]:
    """Seeds of the distinct measures: the odd indices and ``n``."""
    return odd_indices(n) + [n]


def fmt(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass
class Failure:
    j: int | None
    k: int | None
    i: int | None
    lhs: Fraction
    rhs: Fraction
    relation: str = "<"

    def to_dict(self) -> dict:
        return {"j": self.j, "k": self.k, "i": self.i, "lhs": fmt(self.lhs), "rhs": fmt(self.rhs), "relation": self.relation}


@dataclass
class LemmaCheck:
    lemma_id: str
    title: str
    params: dict
    instances_checked: int = 0
    failures: list[Failure] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, j, k, i, lhs, rhs, relation: str):
        self.instances_checked += 1
        if not ok:
            self.failures.append(Failure(j, k, i, Fraction(lhs), Fraction(rhs), relation))

    def less(self, lhs, rhs, j=None, k=None, i=None):
        self.check(lhs < rhs, j, k, i, lhs, rhs, "<")

    def less_eq(self, lhs, rhs, j=None, k=None, i=None):
        self.check(lhs <= rhs, j, k, i, lhs, rhs, "<=")

    def equal(self, lhs, rhs, j=None, k=None, i=None):
        self.check(lhs == rhs, j, k, i, lhs, rhs, "==")

    def first_counterexample(self) -> Failure | None:
        return self.failures[0] if self.failures else None

    def to_dict(self) -> dict:
        self.failures.sort(key=lambda f: tuple(-1 if v is None else v for v in (f.j, f.k, f.i)))
        return {
            "lemma_id": self.lemma_id,
            "title": self.title,
            "params": self.params,
            "instances_checked": self.instances_checked,
            "passed": self.passed,
            "failures": [f.to_dict() for f in self.failures],
            **({"notes": self.notes} if self.notes else {}),
        }


class _Ctx:
    def __init__(self, sched: ParameterSchedule, K: int):
        if not 0 <= K <= sched.m - 1:
            raise ValueError(f"need 0 <= K <= m - 1, got K={K}, m={sched.m}")
        self.sched = sched
        self.K = K
        self.n = sched.n
        self.lab = MeasureLab(sched)
        self.b = self.lab.return_times(K)

    def tail(self, j: int, k: int) -> tuple[int, ...]:
        return self.lab.column(j).tails[k]

    def c(self, k: int) -> int:
        """``c`` of the cycle that produces level ``k``."""
        return self.sched.cycle(k + 1)[1]

    def lam(self, j: int, k: int, i: int) -> Fraction:
        return self.lab.column(j).measure(k, i)

    def levels(self) -> range:
        return range(self.K + 1)


def _l1(ctx: _Ctx, out: LemmaCheck):
    n = ctx.n
    for j in odd_indices(n):
        for k in ctx.levels():
            t = ctx.tail(j, k)
            total = sum(t)
            out.less(Fraction(1, 2), Fraction(t[j - 1], total), j, k, j)
            delta = Fraction(sum(t[i - 1] for i in range(2, n) if i != j), total)
            out.less(delta, Fraction(n, 2 * ctx.c(k)), j, k, None)


def _l2(ctx: _Ctx, out: LemmaCheck):
    n = ctx.n
    for k in ctx.levels():
        t = ctx.tail(1, k)
        total = sum(t)
        out.less(Fraction(1, 2), Fraction(t[0] + t[n - 1], total), 1, k, None)
        out.less(Fraction(sum(t[1 : n - 1]), total), Fraction(n, ctx.c(k)), 1, k, None)


def _merge_pairs(n: int) -> list[tuple[int, int]]:
    pairs = [(i, i + 1) for i in range(2, n - 1, 2) if i + 1 <= (n - 1 if n % 2 == 0 else n - 2)]
    if n % 2:
        pairs.append((n - 1, n))
    return pairs


def _l3(ctx: _Ctx, out: LemmaCheck):
    m = ctx.sched.m
    bound = Fraction(4, ctx.sched.a[-1])
    for j1, j2 in _merge_pairs(ctx.n):
        out.less_eq(ctx.lab.pairwise_l1(j1, j2), bound, j1, m, j2)
    series = [ctx.lab.pairwise_l1(1, ctx.n, mm) for mm in range(2, m + 1)]
    for mm, (prev, cur) in enumerate(zip(series, series[1:]), start=3):
        out.less(cur, prev, 1, mm, ctx.n)
    out.notes["end_distance_by_m"] = {str(mm): fmt(d) for mm, d in enumerate(series, start=2)}


def _equal_run(out: LemmaCheck, t, idx: list[int], j: int, k: int):
    for a, b in zip(idx, idx[1:]):
        out.equal(t[a - 1], t[b - 1], j, k, b)


def _l4(ctx: _Ctx, out: LemmaCheck):
    n = ctx.n
    odd, even = odd_indices(n), even_indices(n)
    for k in ctx.levels():
        t = ctx.tail(1, k)
        _equal_run(out, t, odd, 1, k)
        _equal_run(out, t, even, 1, k)
        for j in odd:
            t = ctx.tail(j, k)
            _equal_run(out, t, [i for i in odd if i != j], j, k)
            _equal_run(out, t, [i for i in even if i != j - 1], j, k)


def _l5(ctx: _Ctx, out: LemmaCheck):
    n, p = ctx.n, ctx.sched.p
    for k in ctx.levels():
        t = ctx.tail(1, k)
        c = ctx.c(k)
        for odd in odd_indices(n):
            even = odd - 1
            # (p-1) x_odd <= x_even, c x_even <= x_n, (c-1) x_even <= x_1
            out.less_eq((p - 1) * t[odd - 1], t[even - 1], 1, k, odd)
            out.less_eq(c * t[even - 1], t[n - 1], 1, k, even)
            out.less_eq((c - 1) * t[even - 1], t[0], 1, k, even)


def _l6(ctx: _Ctx, out: LemmaCheck):
    n = ctx.n
    for j in odd_indices(n):
        for k in ctx.levels():
            t = ctx.tail(j, k)
            for odd in odd_indices(n):
                if odd == j:
                    continue
                out.less(t[odd - 1], t[odd - 2], j, k, odd)


def order_chain(n: int, j: int) -> list[list[int]]:
    """Groups of interval indices, strictly decreasing between groups, equal within."""
    odd, even = odd_indices(n), even_indices(n)
    if j == 1:
        groups = [[n], [1], even, odd]
    else:
        groups = [[j], [n], [1], [j - 1], [i for i in even if i != j - 1], [i for i in odd if i != j]]
    return [g for g in groups if g]


def _l7(ctx: _Ctx, out: LemmaCheck):
    n = ctx.n
    for j in [1] + odd_indices(n):
        chain = order_chain(n, j)
        for k in ctx.levels():
            t = ctx.tail(j, k)
            for g in chain:
                _equal_run(out, t, g, j, k)
            for hi, lo in zip(chain, chain[1:]):
                out.less(t[lo[0] - 1], t[hi[-1] - 1], j, k, lo[0])
        out.notes[f"observed_order_lambda_{j}"] = observed_order(ctx.tail(j, ctx.K))


def observed_order(t) -> str:
    """Render a vector as its decreasing chain, e.g. ``I3>I6>I1>I2>I4=I5``."""
    ranked = sorted(range(1, len(t) + 1), key=lambda i: (-t[i - 1], i))
    parts = [f"I{ranked[0]}"]
    for prev, cur in zip(ranked, ranked[1:]):
        parts.append(("=" if t[prev - 1] == t[cur - 1] else ">") + f"I{cur}")
    return "".join(parts)


def _l8(ctx: _Ctx, out: LemmaCheck):
    n = ctx.n
    odd, even = odd_indices(n), even_indices(n)
    for k in range(1, ctx.K + 1):
        b = ctx.b.table[k]
        out.less(b[0], b[n - 1], None, k, 1)
        out.less(b[n - 1], b[even[0] - 1], None, k, n)
        _equal_run(out, b, even, None, k)
        out.less(b[even[-1] - 1], b[odd[0] - 1], None, k, even[-1])
        _equal_run(out, b, odd, None, k)


def _l9(ctx: _Ctx, out: LemmaCheck):
    n = ctx.n
    a, c = ctx.sched.a, ctx.sched.c
    for k in range(1, ctx.K + 1):
        b = ctx.b.table[k]
        lo_a = prod(a[:k])
        hi = prod(2 * x for x in a[:k])
        for i in range(2, n):
            out.less(lo_a, b[i - 1], None, k, i)
            out.less(b[i - 1], hi, None, k, i)
        out.less(prod(c[: k - 1]), b[0], None, k, 1)
        out.less(b[0], hi, None, k, 1)
        out.less(prod(c[:k]), b[n - 1], None, k, n)
        out.less(b[n - 1], hi, None, k, n)


def _l10(ctx: _Ctx, out: LemmaCheck):
    n = ctx.n
    for i in measure_indices(n):
        for k in ctx.levels():
            out.less(Fraction(1, n), ctx.b(k, i) * ctx.lam(i, k, i), i, k, i)


def _l11(ctx: _Ctx, out: LemmaCheck):
    n = ctx.n
    for j in range(1, n + 1):
        for k in ctx.levels():
            for i in range(1, n + 1):
                if i != j:
                    out.less_eq(ctx.lam(j, k, i), Fraction(1, ctx.b(k, i)), j, k, i)


def _l12(ctx: _Ctx, out: LemmaCheck):
    n = ctx.n
    for i in measure_indices(n):
        for k in ctx.levels():
            b = ctx.b(k, i)
            lam = ctx.lam(i, k, i)
            out.less_eq(Fraction(1, n * b), lam, i, k, i)
            out.less_eq(lam, Fraction(1, b), i, k, i)


REGISTRY: dict[str, tuple[str, Callable[[_Ctx, LemmaCheck], None]]] = {
    "L1": ("odd seeds concentrate on their own interval", _l1),
    "L2": ("lambda_1 concentrates on the end intervals", _l2),
    "L3": ("paired columns merge; end columns approach each other", _l3),
    "L4": ("equalities between same-parity intervals", _l4),
    "L5": ("ratio bounds for lambda_1", _l5),
    "L6": ("even interval beats the next odd one", _l6),
    "L7": ("order of interval sizes per measure", _l7),
    "L8": ("ordering of return times", _l8),
    "L9": ("product bounds on return times", _l9),
    "L10": ("tower over the own interval has mass > 1/n", _l10),
    "L11": ("lambda_j(I_i) <= 1/b for j != i", _l11),
    "L12": ("1/(n b) <= lambda_i(I_i) <= 1/b", _l12),
}


def run_lemma(lemma_id: str, sched: ParameterSchedule, K: int, *, _ctx: _Ctx | None = None) -> LemmaCheck:
    if lemma_id not in REGISTRY:
        raise KeyError(f"unknown lemma {lemma_id!r}; known: {', '.join(REGISTRY)}")
    ctx = _ctx or _Ctx(sched, K)
    title, fn = REGISTRY[lemma_id]
    out = LemmaCheck(lemma_id, title, {"n": sched.n, "p": str(sched.p), "c1": str(sched.c1), "m": sched.m, "K": K})
    fn(ctx, out)
    return out


@dataclass
class SuiteReport:
    checks: list[LemmaCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failing(self) -> list[str]:
        return [c.lemma_id for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {"passed": self.passed, "lemmas": [c.to_dict() for c in self.checks]}


def run_all(sched: ParameterSchedule, K: int, lemma_ids=None) -> SuiteReport:
    ctx = _Ctx(sched, K)
    ids = list(lemma_ids or REGISTRY)
    return SuiteReport([run_lemma(lid, sched, K, _ctx=ctx) for lid in ids])


def escalation_sweep(n: int, m: int, K: int, factors=(1, 2, 4, 8, 16), p_values=None, c1_of=lambda p: p * p):
    """Run the suite for increasing ``p`` and record the smallest passing ``p`` per lemma.

    Default ladder is ``p in {n+1, 2n, 4n, 8n, 16n}``.
    """
    if p_values is None:
        p_values = [n + 1 if f == 1 else f * n for f in factors]
    minimal: dict[str, int | None] = {lid: None for lid in REGISTRY}
    reports = {}
    for p in p_values:
        sched = ParameterSchedule(n, p, c1_of(p), m)
        rep = run_all(sched, K)
        reports[p] = rep
        for chk in rep.checks:
            if chk.passed and minimal[chk.lemma_id] is None:
                minimal[chk.lemma_id] = p
    return minimal, reports
