"""The Rauzy cycle of the family and the parameter schedule built on it.

For even ``n`` the base permutation swaps 1 with ``n`` and each pair
``(2i, 2i+1)`` in place.  The cycle word is::

    0 . loop(n-2, a) . loop(n-4, a) ... loop(2, a) . 1^(c(n-1))

with ``loop(k, a) = 1^(n-1-k) 0^a 1 0^2``.  There is one loop per 2x2 band
``(2i, 2i+1)`` of the closed-form matrix, so ``k`` drops by two each time.

Odd ``n`` is not closed: no candidate permutation makes the "10"-led word a
cycle, and :func:`base_permutation` refuses (see :func:`odd_candidates`).
The closed-form odd matrix is still available from :func:`theta_closed_form`
so the mismatch can be reported.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import intmat
from .iet import Permutation
from .intmat import Matrix
from .rauzy import MoveType, RunWord, letter_transition, word_transition


class FamilyError(ValueError):
    pass


def _check_n(n: int):
    if n < 4:
        raise FamilyError(f"n must be >= 4, got {n}")


def _pairing_bottom(n: int) -> tuple[int, ...]:
    """Bottom row ``(n, 3, 2, 5, 4, ..., n-1, n-2, 1)`` for even ``n``."""
    return (n, *(x for i in range(2, n - 1, 2) for x in (i + 1, i)), 1)


def odd_candidates(n: int) -> list[Permutation]:
    """Natural odd-``n`` readings of the pairing rule, tried in order."""
    top = tuple(range(1, n + 1))
    core_hi = [x for i in range(2, n - 2, 2) for x in (i + 1, i)]
    core_lo = [x for i in range(3, n - 1, 2) for x in (i + 1, i)]
    rows = [
        (n, *core_hi, n - 1, 1),  # n-1 unpaired at the right
        (n, 2, *core_lo, 1),  # 2 unpaired at the left
        (n - 1, *core_hi, n, 1),
    ]
    return [Permutation(top, r) for r in rows]


def _closes(perm: Permutation, n: int) -> bool:
    for a, c in ((1, 1), (2, 3), (3, 2)):
        end, _ = word_transition(perm, cycle_word(a, c, n))
        if end != perm:
            return False
    return True


def base_permutation(n: int) -> Permutation:
    _check_n(n)
    if n % 2 == 0:
        return Permutation.from_bottom(_pairing_bottom(n))
    for cand in odd_candidates(n):
        if cand.is_irreducible() and _closes(cand, n):
            return cand
    raise FamilyError(
        f"no odd base permutation for n={n}: the word led by '10' does not close "
        "at any candidate"
    )


def loop_word(k: int, a: int, n: int) -> RunWord:
    if not 2 <= k <= n - 2:
        raise FamilyError(f"loop index k={k} outside 2..{n - 2}")
    if a < 1:
        raise FamilyError("a must be >= 1")
    return RunWord(((MoveType.ONE, n - 1 - k), (MoveType.ZERO, a), (MoveType.ONE, 1), (MoveType.ZERO, 2)))


def loop_indices(n: int) -> list[int]:
    return list(range(n - 2, 1, -2))


def cycle_word(a: int, c: int, n: int) -> RunWord:
    _check_n(n)
    if a < 1 or c < 1:
        raise FamilyError("a and c must be >= 1")
    head = RunWord(((MoveType.ONE, 1), (MoveType.ZERO, 1))) if n % 2 else RunWord(((MoveType.ZERO, 1),))
    word = head
    for k in loop_indices(n):
        word = word + loop_word(k, a, n)
    return word + RunWord(((MoveType.ONE, c * (n - 1)),))


def theta_closed_form(a: int, c: int, n: int) -> Matrix:
    """Explicit cycle matrix: top row ``(1, c, ..., c)``, bottom row ``(1, c+1, ..., c+1)``,
    and for each even row ``r``: ones on columns ``2..n`` with 2 at ``(r, r)`` and
    ``(r, r+1)``; row ``r+1`` has ``a, a+1`` at columns ``r, r+1``.

    Odd ``n``: the last even row has no partner, and afterwards column ``n-1``
    is replaced by ``Theta e_n + e_{n-1}``.
    """
    _check_n(n)
    m = [[0] * n for _ in range(n)]
    m[0][0] = m[n - 1][0] = 1
    for j in range(1, n):
        m[0][j] = c
        m[n - 1][j] = c + 1
    for r in range(2, n, 2):
        for j in range(1, n):
            m[r - 1][j] = 1
        m[r - 1][r - 1] = 2
        if r + 1 <= n - 1:
            m[r - 1][r] = 2
            m[r][r - 1] = a
            m[r][r] = a + 1
    if n % 2:
        for i in range(n):
            m[i][n - 2] = m[i][n - 1] + (i == n - 2)
    return intmat.freeze(m)


@dataclass(frozen=True)
class FamilySpec:
    n: int
    base: Permutation

    @classmethod
    def for_n(cls, n: int) -> FamilySpec:
        return cls(n, base_permutation(n))


@dataclass(frozen=True)
class ParameterSchedule:
    """``c_1 > p >= n+1``, ``a_i = p c_i``, ``c_{i+1} = p a_i = p^2 c_i``."""

    n: int
    p: int
    c1: int
    m: int

    def __post_init__(self):
        _check_n(self.n)
        if self.p < self.n + 1:
            raise FamilyError(f"p >= n + 1 violated: p={self.p}, n={self.n}")
        if self.c1 <= self.p:
            raise FamilyError(f"c_1 > p violated: c_1={self.c1}, p={self.p}")
        if self.m < 0:
            raise FamilyError(f"m >= 0 violated: m={self.m}")

    @property
    def c(self) -> tuple[int, ...]:
        return tuple(self.c1 * self.p ** (2 * i) for i in range(self.m))

    @property
    def a(self) -> tuple[int, ...]:
        return tuple(self.p * ci for ci in self.c)

    def cycle(self, i: int) -> tuple[int, int]:
        """``(a_i, c_i)`` for the 1-based cycle ``i``."""
        if not 1 <= i <= self.m:
            raise IndexError(f"cycle {i} outside 1..{self.m}")
        ci = self.c1 * self.p ** (2 * (i - 1))
        return self.p * ci, ci

    def theta(self, i: int) -> Matrix:
        a, c = self.cycle(i)
        return theta_closed_form(a, c, self.n)

    def word(self) -> RunWord:
        w = RunWord()
        for i in range(1, self.m + 1):
            w = w + cycle_word(*self.cycle(i), self.n)
        return w

    def with_m(self, m: int) -> ParameterSchedule:
        return ParameterSchedule(self.n, self.p, self.c1, m)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": str(self.p),
            "c1": str(self.c1),
            "m": self.m,
            "a": [str(x) for x in self.a],
            "c": [str(x) for x in self.c],
        }


def schedule(n: int, p: int, c1: int | None = None, m: int = 1) -> ParameterSchedule:
    """Default ``c_1`` is ``p**2``."""
    return ParameterSchedule(n, p, p * p if c1 is None else c1, m)


@dataclass(frozen=True)
class FamilyCheck:
    n: int
    a: int
    c: int
    closes: bool
    equal: bool
    first_difference: tuple[int, int, int, int] | None  # (row, col, closed, path)
    path_matrix: Matrix
    closed_matrix: Matrix
    end: Permutation | None

    @property
    def ok(self) -> bool:
        return self.closes and self.equal


def validate_family(n: int, a: int, c: int, *, literal: bool = True) -> FamilyCheck:
    """Compare the closed form with the product along the cycle word.

    ``literal=True`` multiplies letter by letter, which is independent of the
    run-length shortcuts in :func:`word_transition`.
    """
    closed = theta_closed_form(a, c, n)
    try:
        start = base_permutation(n)
    except FamilyError:
        if n % 2 == 0:
            raise
        start = odd_candidates(n)[0]
    transition = letter_transition if literal else word_transition
    end, path = transition(start, cycle_word(a, c, n))
    diff = None
    for i in range(n):
        for j in range(n):
            if closed[i][j] != path[i][j]:
                diff = (i + 1, j + 1, closed[i][j], path[i][j])
                break
        if diff:
            break
    return FamilyCheck(n, a, c, end == start, diff is None, diff, path, closed, end)
