"""Truncated invariant measures of the family.

With ``V_m = Theta_1 ... Theta_m`` the seed ``e_j`` produces the integer
vectors ``t_k = Theta_{k+1} ... Theta_m e_j`` (``t_m = e_j``, ``t_0 = V_m e_j``).
At truncation ``m`` the measure ``lambda_j`` of the ``i``-th interval at
induction level ``k`` is ``t_k[i] / |t_0|``.  Everything stays integral
until a query asks for a rational.

Return times ``b_{k,i}`` are the column sums of ``Theta_1 ... Theta_k``.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from . import intmat
from .family import ParameterSchedule, base_permutation, cycle_word
from .iet import Iet
from .intmat import Matrix
from .rauzy import realized_step


@dataclass(frozen=True)
class ProductColumn:
    j: int
    m: int
    tails: tuple[tuple[int, ...], ...]  # tails[k] = t_k, k = 0..m

    @property
    def v(self) -> tuple[int, ...]:
        return self.tails[0]

    @cached_property
    def norm(self) -> int:
        return sum(self.tails[0])

    def measure(self, k: int, i: int) -> Fraction:
        """``lambda_j(I_i^(k))``; ``i`` is 1-based."""
        return Fraction(self.tails[k][i - 1], self.norm)

    def level_mass(self, k: int) -> Fraction:
        return Fraction(sum(self.tails[k]), self.norm)

    def normalized(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.norm) for x in self.v)


@dataclass(frozen=True)
class ReturnTimes:
    table: tuple[tuple[int, ...], ...]  # table[k][i-1] = b_{k,i}

    def __call__(self, k: int, i: int) -> int:
        return self.table[k][i - 1]


class MeasureLab:
    """Shared cache of cycle matrices and prefix products for one schedule."""

    def __init__(self, sched: ParameterSchedule):
        self.schedule = sched
        self.n = sched.n

    @cached_property
    def thetas(self) -> tuple[Matrix, ...]:
        return tuple(self.schedule.theta(i) for i in range(1, self.schedule.m + 1))

    @lru_cache(maxsize=None)
    def prefix(self, k: int) -> Matrix:
        """``Theta_1 ... Theta_k``."""
        if k == 0:
            return intmat.identity(self.n)
        return intmat.matmul(self.prefix(k - 1), self.thetas[k - 1])

    @lru_cache(maxsize=None)
    def column(self, j: int, m: int | None = None) -> ProductColumn:
        m = self.schedule.m if m is None else m
        if not 1 <= j <= self.n:
            raise IndexError(f"seed {j} outside 1..{self.n}")
        if not 0 <= m <= self.schedule.m:
            raise IndexError(f"truncation {m} outside 0..{self.schedule.m}")
        t = tuple(int(i == j - 1) for i in range(self.n))
        tails = [t]
        for k in range(m, 0, -1):
            t = intmat.matvec(self.thetas[k - 1], t)
            tails.append(t)
        return ProductColumn(j, m, tuple(reversed(tails)))

    def return_times(self, K: int) -> ReturnTimes:
        return ReturnTimes(tuple(intmat.column_sums(self.prefix(k)) for k in range(K + 1)))

    def normalized_limit(self, j: int, m: int | None = None) -> tuple[Fraction, ...]:
        return self.column(j, m).normalized()

    def pairwise_l1(self, j1: int, j2: int, m: int | None = None) -> Fraction:
        x, y = self.normalized_limit(j1, m), self.normalized_limit(j2, m)
        return sum((abs(u - w) for u, w in zip(x, y)), Fraction(0))

    def convergence(self, j: int, m: int | None = None) -> Fraction:
        """L1 change of the normalized column between truncations ``m-1`` and ``m``."""
        m = self.schedule.m if m is None else m
        if m < 1:
            raise ValueError("need m >= 1")
        x, y = self.normalized_limit(j, m - 1), self.normalized_limit(j, m)
        return sum((abs(u - w) for u, w in zip(x, y)), Fraction(0))

    def orbit_mass(self, j: int, k: int, i: int) -> Fraction:
        """``b_{k,i} lambda_j(I_i^(k))``: the ``lambda_j`` mass of the tower over ``I_i^(k)``."""
        b = sum(intmat.column(self.prefix(k), i))
        return b * self.column(j).measure(k, i)

    def middle_mass(self, j: int, k: int, exclude: int | None = None) -> Fraction:
        """Mass of ``I_2..I_{n-1}`` at level ``k`` (minus ``I_exclude``), relative to the level."""
        t = self.column(j).tails[k]
        mid = sum(t[i - 1] for i in range(2, self.n) if i != exclude)
        return Fraction(mid, sum(t))

    def measure_table(self, j: int, K: int) -> list[tuple[int, int, Fraction]]:
        pc = self.column(j)
        return [(k, i, pc.measure(k, i)) for k in range(K + 1) for i in range(1, self.n + 1)]

    # -- dynamical oracle --------------------------------------------------------

    def truncation_iet(self, m: int | None = None, scale: int = 1) -> Iet:
        """IET at the base permutation with integer lengths ``scale * V_m (1, ..., 1)``."""
        m = self.schedule.m if m is None else m
        lengths = intmat.matvec(self.prefix(m), (scale,) * self.n)
        return Iet(base_permutation(self.n), lengths)

    def visit_count_column(self, k: int, i: int, m: int | None = None, budget: int = 10**7) -> tuple[int, ...]:
        """Visit counts of the orbit of the midpoint of ``I_i^(k)`` until it returns to ``I^(k)``.

        Lengths are scaled by 2 so the midpoint is an integer; the map is
        conjugate to the normalized one, so counts are unaffected.  The result
        should equal column ``i`` of ``Theta_1 ... Theta_k``.
        """
        m = self.schedule.m if m is None else m
        if not 0 <= k <= m:
            raise IndexError(f"level {k} outside 0..{m}")
        iet = self.truncation_iet(m, scale=2)
        sub = self.induce_cycles(iet, k).lengths
        # induction keeps the left end at 0 and the top row is 1..n again
        left = sum(sub[: i - 1])
        x = left + sub[i - 1] // 2
        bound = sum(sub)
        counts = [0] * self.n
        beta = iet.breakpoints
        shifts = [iet._shift[label] for label in iet.perm.top]
        top = iet.perm.top
        steps = 0
        while True:
            p = bisect_right(beta, x) - 1
            counts[top[p] - 1] += 1
            x += shifts[p]
            steps += 1
            if x < bound:
                return tuple(counts)
            if steps >= budget:
                raise RuntimeError(f"no return to I^({k}) within {budget} steps")

    def induce_cycles(self, iet: Iet, cycles: int) -> Iet:
        """Run accelerated induction through ``cycles`` whole cycle words."""
        base = base_permutation(self.n)
        cur = iet
        for idx in range(1, cycles + 1):
            for _ in cycle_word(*self.schedule.cycle(idx), self.n).runs:
                cur, _, _ = realized_step(cur)
            if cur.perm != base:
                raise RuntimeError(f"cycle {idx} did not return to the base permutation")
        return cur

    def suffix(self, k: int, m: int) -> Matrix:
        """``Theta_{k+1} ... Theta_m``."""
        out = intmat.identity(self.n)
        for idx in range(k + 1, m + 1):
            out = intmat.matmul(out, self.thetas[idx - 1])
        return out
