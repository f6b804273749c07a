"""Interval exchange transformations over exact rationals.

A permutation is stored in the labelled two-row form used by Rauzy
diagrams: ``top`` lists the interval labels in the order they occur in the
domain, ``bottom`` the order in which they occur after applying the map.
Labels are the integers ``1..n``.  When ``top`` is the identity, the bottom
row read as a sequence is the inverse of the two-line images
``i -> tau(i)``; :meth:`Permutation.from_images` converts between the two.

Lengths are indexed by label (``lengths[label - 1]``).  Any
:class:`numbers.Rational` works; plain ``int`` lengths are much faster when
iterating long orbits and describe the same map up to scaling.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import accumulate
from numbers import Rational
from typing import Sequence


class PermutationError(ValueError):
    pass


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    top: tuple[int, ...]
    bottom: tuple[int, ...]

    def __post_init__(self):
        top, bottom = tuple(self.top), tuple(self.bottom)
        object.__setattr__(self, "top", top)
        object.__setattr__(self, "bottom", bottom)
        n = len(top)
        if n < 2:
            raise PermutationError("need at least two intervals")
        labels = set(range(1, n + 1))
        if len(bottom) != n or set(top) != labels or set(bottom) != labels:
            raise PermutationError(f"rows {top} / {bottom} are not bijections of 1..{n}")

    @classmethod
    def from_bottom(cls, bottom: Sequence[int]) -> Permutation:
        """Top row ``1..n`` over the given bottom row of labels."""
        return cls(tuple(range(1, len(bottom) + 1)), tuple(bottom))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> Permutation:
        """Build from two-line images: interval ``i`` lands in slot ``images[i-1]``."""
        n = len(images)
        if sorted(images) != list(range(1, n + 1)):
            raise PermutationError(f"{tuple(images)} is not a bijection of 1..{n}")
        bottom = [0] * n
        for i, t in enumerate(images, start=1):
            bottom[t - 1] = i
        return cls(tuple(range(1, n + 1)), tuple(bottom))

    @property
    def n(self) -> int:
        return len(self.top)

    @property
    def images(self) -> tuple[int, ...]:
        """Slot in the image of each domain position (two-line ``tau``)."""
        where = {label: pos for pos, label in enumerate(self.bottom, start=1)}
        return tuple(where[label] for label in self.top)

    def is_irreducible(self) -> bool:
        return all(set(self.top[:k]) != set(self.bottom[:k]) for k in range(1, self.n))

    def __str__(self) -> str:
        return " ".join(map(str, self.top)) + "\n" + " ".join(map(str, self.bottom))


def _check_lengths(lengths: Sequence, n: int) -> tuple:
    lengths = tuple(lengths)
    if len(lengths) != n:
        raise ValueError(f"expected {n} lengths, got {len(lengths)}")
    for x in lengths:
        if not isinstance(x, Rational):
            raise TypeError(f"length {x!r} is not an exact rational")
        if x <= 0:
            raise ValueError(f"nonpositive length {x}")
    return lengths


@dataclass(frozen=True)
class Iet:
    """An IET ``T`` on ``[0, total)``.

    ``breakpoints[p]`` is the left end of the ``p``-th domain interval (in top
    order) and ``image_breakpoints`` the same for the image partition; both
    start at 0 and end at the total length.
    """

    perm: Permutation
    lengths: tuple
    breakpoints: tuple = field(init=False, repr=False, compare=False)
    image_breakpoints: tuple = field(init=False, repr=False, compare=False)
    _shift: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        lengths = _check_lengths(self.lengths, self.perm.n)
        object.__setattr__(self, "lengths", lengths)
        top_lengths = [lengths[label - 1] for label in self.perm.top]
        bottom_lengths = [lengths[label - 1] for label in self.perm.bottom]
        beta = (0, *accumulate(top_lengths))
        beta_img = (0, *accumulate(bottom_lengths))
        object.__setattr__(self, "breakpoints", beta)
        object.__setattr__(self, "image_breakpoints", beta_img)
        img_left = {label: beta_img[p] for p, label in enumerate(self.perm.bottom)}
        shift = {label: img_left[label] - beta[p] for p, label in enumerate(self.perm.top)}
        object.__setattr__(self, "_shift", shift)

    @property
    def n(self) -> int:
        return self.perm.n

    @property
    def total(self):
        return self.breakpoints[-1]

    def normalized(self) -> Iet:
        total = Fraction(self.total)
        return Iet(self.perm, tuple(Fraction(x) / total for x in self.lengths))

    def permuted_lengths(self) -> tuple:
        """Lengths in image order (``alpha^tau``)."""
        return tuple(self.lengths[label - 1] for label in self.perm.bottom)

    def position(self, x) -> int:
        """1-based position in top order of the domain interval holding ``x``."""
        if not 0 <= x < self.total:
            raise DomainError(f"{x} is outside [0, {self.total})")
        return bisect_right(self.breakpoints, x)

    def locate(self, x) -> int:
        """Label of the domain interval holding ``x`` (half-open, boundary goes right)."""
        return self.perm.top[self.position(x) - 1]

    def interval(self, label: int) -> tuple:
        p = self.perm.top.index(label)
        return self.breakpoints[p], self.breakpoints[p + 1]

    def image_interval(self, label: int) -> tuple:
        p = self.perm.bottom.index(label)
        return self.image_breakpoints[p], self.image_breakpoints[p + 1]

    def __call__(self, x):
        return x + self._shift[self.locate(x)]


def build_iet(perm: Permutation | Sequence[int], lengths: Sequence) -> Iet:
    """Bare sequences are read as two-line images ``tau(1..n)``."""
    if not isinstance(perm, Permutation):
        perm = Permutation.from_images(perm)
    return Iet(perm, tuple(lengths))


def evaluate(iet: Iet, x):
    return iet(x)


def locate(iet: Iet, x) -> int:
    return iet.locate(x)


def orbit_counts(iet: Iet, x, steps: int) -> tuple[int, ...]:
    """Visits of ``x, T x, ..., T^(steps-1) x`` to each interval, by label."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    counts = [0] * iet.n
    beta = iet.breakpoints
    top = iet.perm.top
    shifts = [iet._shift[label] for label in top]
    total = iet.total
    if not 0 <= x < total:
        raise DomainError(f"{x} is outside [0, {total})")
    for _ in range(steps):
        p = bisect_right(beta, x) - 1
        counts[top[p] - 1] += 1
        x += shifts[p]
    return tuple(counts)


def keane_prefix_check(iet: Iet, steps: int) -> bool:
    """False iff some ``T^t(beta_i)``, ``1 <= t <= steps``, hits an interior breakpoint.

    Starts are the interior discontinuities ``beta_1..beta_{n-1}``; targets
    are ``beta_1..beta_n`` restricted to the domain, i.e. every breakpoint
    except 0.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    targets = set(iet.breakpoints[1:-1])
    for start in iet.breakpoints[1:-1]:
        x = start
        for _ in range(steps):
            x = iet(x)
            if x in targets:
                return False
    return True
