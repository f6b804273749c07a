"""Right Rauzy induction, symbolic and length-driven.

Conventions, fixed here for the whole package:

* type 0: the top-last interval wins; the bottom-last label is re-inserted
  in the bottom row right after the winner.
* type 1: the bottom-last interval wins; the top-last label is re-inserted
  in the top row right after the winner.
* every step has the elementary matrix ``E = I + e_{winner, loser}`` and
  ``lengths_before = E @ lengths_after``.  Path matrices multiply left to
  right in path order.

Same-type runs are handled in run-length form so that exponents far beyond
anything one could iterate letter by letter stay cheap.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Iterator

from . import intmat
from .iet import Iet, Permutation
from .intmat import Matrix


class MoveType(IntEnum):
    ZERO = 0
    ONE = 1


class ReducibleError(ValueError):
    pass


class KeaneViolation(ArithmeticError):
    """The two competing lengths are equal, so induction cannot continue."""

    def __init__(self, message, step=None, iet=None):
        super().__init__(message)
        self.step = step
        self.iet = iet


@dataclass(frozen=True)
class RauzyMove:
    move_type: MoveType
    winner: int
    loser: int


# -- run-length words -------------------------------------------------------

_TOKEN = re.compile(r"^([01])(?:\^(\d+))?$")


@dataclass(frozen=True)
class RunWord:
    """Word over {0, 1} stored as runs ``(letter, multiplicity)``.

    Always canonical: no empty runs, adjacent runs carry different letters.
    """

    runs: tuple[tuple[MoveType, int], ...] = ()

    def __post_init__(self):
        merged: list[list] = []
        for letter, mult in self.runs:
            letter, mult = MoveType(letter), int(mult)
            if mult < 0:
                raise ValueError("negative run multiplicity")
            if mult == 0:
                continue
            if merged and merged[-1][0] == letter:
                merged[-1][1] += mult
            else:
                merged.append([letter, mult])
        object.__setattr__(self, "runs", tuple((t, q) for t, q in merged))

    @classmethod
    def letters(cls, letters: Iterable[int]) -> RunWord:
        return cls(tuple((t, 1) for t in letters))

    @classmethod
    def parse(cls, text: str) -> RunWord:
        """Parse ``"0 1^3 0^12 1 0^2"``; whitespace separates tokens."""
        runs = []
        for token in text.split():
            m = _TOKEN.match(token)
            if not m:
                raise ValueError(f"bad run token {token!r}")
            runs.append((int(m.group(1)), int(m.group(2) or 1)))
        return cls(tuple(runs))

    def __str__(self) -> str:
        return " ".join(f"{int(t)}" if q == 1 else f"{int(t)}^{q}" for t, q in self.runs)

    def __add__(self, other: RunWord) -> RunWord:
        return RunWord(self.runs + other.runs)

    def __mul__(self, k: int) -> RunWord:
        return RunWord(self.runs * k)

    def __len__(self) -> int:
        return sum(q for _, q in self.runs)

    def __iter__(self) -> Iterator[MoveType]:
        for t, q in self.runs:
            for _ in range(q):
                yield t

    def startswith(self, prefix: RunWord) -> bool:
        """Prefix test on the letter level, done run-wise."""
        a, b = self.runs, prefix.runs
        if not b:
            return True
        if len(b) > len(a):
            return False
        for i, (t, q) in enumerate(b):
            s, r = a[i]
            if s != t:
                return False
            if i < len(b) - 1 and r != q:
                return False
            if i == len(b) - 1 and r < q:
                return False
        return True


# -- symbolic induction -----------------------------------------------------

def _require_irreducible(perm: Permutation):
    if not perm.is_irreducible():
        raise ReducibleError(f"permutation is reducible:\n{perm}")


def _move(perm: Permutation, t: MoveType) -> tuple[Permutation, RauzyMove]:
    top, bottom = list(perm.top), list(perm.bottom)
    if t == MoveType.ZERO:
        winner, loser = top[-1], bottom.pop()
        bottom.insert(bottom.index(winner) + 1, loser)
    else:
        winner, loser = bottom[-1], top.pop()
        top.insert(top.index(winner) + 1, loser)
    return Permutation(tuple(top), tuple(bottom)), RauzyMove(MoveType(t), winner, loser)


def symbolic_step(perm: Permutation, t: int) -> tuple[Permutation, RauzyMove, Matrix]:
    _require_irreducible(perm)
    new, move = _move(perm, MoveType(t))
    return new, move, intmat.elementary(perm.n, move.winner, move.loser)


def _run_cycle(perm: Permutation, t: MoveType) -> list[tuple[Permutation, RauzyMove]]:
    """Repeat one move type until the permutation comes back.

    A same-type run keeps the winner and rotates the labels behind it, so
    the orbit is a cycle through the start; its length is at most ``n - 1``.
    """
    out = []
    cur = perm
    while True:
        cur, move = _move(cur, t)
        out.append((cur, move))
        if cur == perm:
            return out


def run_transition(perm: Permutation, t: int, q: int) -> tuple[Permutation, Matrix]:
    """Permutation and matrix after ``q`` consecutive moves of type ``t``."""
    _require_irreducible(perm)
    t = MoveType(t)
    n = perm.n
    if q == 0:
        return perm, intmat.identity(n)
    cycle = _run_cycle(perm, t)
    period = len(cycle)
    if period == 1:
        # self-loop: E^2 = 0 off the diagonal, so E^q = I + q e_{w,l}
        move = cycle[0][1]
        return perm, intmat.elementary(n, move.winner, move.loser, q)
    full, rest = divmod(q, period)
    partial = intmat.identity(n)
    for _, move in cycle[:rest]:
        partial = intmat.matmul(partial, intmat.elementary(n, move.winner, move.loser))
    if full:
        one_cycle = intmat.identity(n)
        for _, move in cycle:
            one_cycle = intmat.matmul(one_cycle, intmat.elementary(n, move.winner, move.loser))
        partial = intmat.matmul(intmat.matpow(one_cycle, full), partial)
    end = cycle[rest - 1][0] if rest else perm
    return end, partial


def word_transition(perm: Permutation, word: RunWord) -> tuple[Permutation, Matrix]:
    """Compose the runs of ``word`` from ``perm``; ``lengths_before = M @ lengths_after``."""
    _require_irreducible(perm)
    m = intmat.identity(perm.n)
    for t, q in word.runs:
        perm, step = run_transition(perm, t, q)
        m = intmat.matmul(m, step)
    return perm, m


def letter_transition(perm: Permutation, word: RunWord) -> tuple[Permutation, Matrix]:
    """Literal letter-by-letter product; the independent oracle for :func:`word_transition`."""
    m = intmat.identity(perm.n)
    for t in word:
        perm, _, e = symbolic_step(perm, t)
        m = intmat.matmul(m, e)
    return perm, m


# -- length-driven (realized) induction --------------------------------------

def realized_step(iet: Iet) -> tuple[Iet, RauzyMove, int]:
    """One maximal same-type run of Rauzy induction (Zorich acceleration).

    The run stops before it would make the winner's length equal to the
    next loser's; that equality is then reported by the following call.
    """
    perm = iet.perm
    _require_irreducible(perm)
    lengths = list(iet.lengths)
    top_last, bottom_last = perm.top[-1], perm.bottom[-1]
    lt, lb = lengths[top_last - 1], lengths[bottom_last - 1]
    if lt == lb:
        raise KeaneViolation(
            f"tie between intervals {top_last} and {bottom_last} (length {lt})", iet=iet
        )
    t = MoveType.ZERO if lt > lb else MoveType.ONE
    cycle = _run_cycle(perm, t)
    first = cycle[0][1]
    winner = first.winner
    cycle_sum = sum(lengths[move.loser - 1] for _, move in cycle)
    full = lengths[winner - 1] // cycle_sum
    if full * cycle_sum == lengths[winner - 1]:
        full -= 1
    lengths[winner - 1] -= full * cycle_sum
    q = full * len(cycle)
    pos = 0
    while lengths[winner - 1] > lengths[cycle[pos][1].loser - 1]:
        lengths[winner - 1] -= lengths[cycle[pos][1].loser - 1]
        q += 1
        pos = (pos + 1) % len(cycle)
    cur = cycle[(q - 1) % len(cycle)][0]
    return Iet(cur, tuple(lengths)), first, q


@dataclass(frozen=True)
class Realization:
    word: RunWord
    final: Iet
    runs: int
    tie: KeaneViolation | None = None


def realize_word(iet: Iet, max_runs: int) -> Realization:
    """Accelerated induction for at most ``max_runs`` runs, recording the path.

    Stops early, without raising, at a length tie; the tie is kept on the
    result so callers can tell a finished rational truncation from a cut-off.
    """
    runs = []
    cur = iet
    for count in range(max_runs):
        try:
            cur, move, q = realized_step(cur)
        except KeaneViolation as exc:
            exc.step = count
            return Realization(RunWord(tuple(runs)), cur, count, exc)
        runs.append((move.move_type, q))
    return Realization(RunWord(tuple(runs)), cur, max_runs)
