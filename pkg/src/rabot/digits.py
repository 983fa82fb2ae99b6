"""Base-b digit strings, their run-length structure, and the raboter operation.

The raboter operation r(b, n) rewrites n in base b, shortens every maximal
run of consecutive identical digits by one, and reads the result back as a
number.  A run of length one disappears entirely; if every run disappears
the result is the empty string, which denotes 0.  For example in base 2,
12 = 1100 has two runs of length two, so r(2, 12) reads back 10 = 2.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import groupby

from .errors import InvalidBaseError, InvalidDigitError


def check_base(base: int) -> None:
    if not isinstance(base, int) or base < 2:
        raise InvalidBaseError(f"base must be an integer >= 2, got {base!r}")


@dataclass(frozen=True)
class DigitString:
    """A base-b positional representation, most significant digit first.

    Leading zeros are tolerated (they contribute nothing to the value);
    the canonical expansion of a positive number has none, and 0 is the
    empty string.
    """

    base: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        check_base(self.base)
        for d in self.digits:
            if not (isinstance(d, int) and 0 <= d < self.base):
                raise InvalidDigitError(
                    f"digit {d!r} out of range [0, {self.base - 1}]"
                )

    def __len__(self) -> int:
        return len(self.digits)


@dataclass(frozen=True)
class RunLengthForm:
    """Maximal runs of a digit string, as (digit, length) pairs in order.

    Adjacent runs carry distinct digits and every length is >= 1, so the
    expansion reproduces the originating digit string exactly.
    """

    base: int
    runs: tuple[tuple[int, int], ...]

    def expand(self) -> DigitString:
        digits: list[int] = []
        for digit, length in self.runs:
            digits.extend([digit] * length)
        return DigitString(self.base, tuple(digits))


def from_value(base: int, n: int) -> DigitString:
    """Canonical base-b expansion of a natural number (empty for n = 0)."""
    check_base(base)
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"expected a natural number, got {n!r}")
    digits: list[int] = []
    while n:
        n, d = divmod(n, base)
        digits.append(d)
    return DigitString(base, tuple(reversed(digits)))


def to_value(d: DigitString) -> int:
    """Value of a digit string; leading zeros permitted, empty string is 0."""
    value = 0
    for digit in d.digits:
        value = value * d.base + digit
    return value


def to_runs(d: DigitString) -> RunLengthForm:
    """Group a digit string into its maximal runs."""
    runs = tuple((digit, len(list(group))) for digit, group in groupby(d.digits))
    return RunLengthForm(d.base, runs)


def shorten_runs(d: DigitString) -> DigitString:
    """Shorten every maximal run by one digit, dropping runs of length one."""
    digits: list[int] = []
    for digit, length in to_runs(d).runs:
        digits.extend([digit] * (length - 1))
    return DigitString(d.base, tuple(digits))


def raboter(base: int, n: int) -> int:
    """r(b, n): shorten every run of the base-b expansion of n by one.

    r(b, 0) = 0 by convention, and r(b, n) < n for every n >= 1 since the
    result has strictly fewer digits.
    """
    return to_value(shorten_runs(from_value(base, n)))
