"""Exact dynamic-programming engine for the moment sums.

Write S(q, k) for the sum of r(b, n)**q over all n with exactly k+1 base-b
digits, and S(l, q, k) for its restriction to numbers whose last digit is
l.  Appending a digit d to a number with trailing digit t either deletes d
again (d != t, runs of length one vanish) or extends the trailing run, in
which case the raboter value picks up d as a new last digit:

    r(b, b*A + d)  =  r(b, A)            if d != last digit of A
    r(b, b*A + d)  =  b*r(b, A) + d      if d == last digit of A

Expanding (b*r + l)**q binomially turns this into coupled linear
recurrences over exact integers:

    S(l, q, k) = (b**q - 1)*S(l, q, k-1) + S(q, k-1)
                 + sum_{i=1..q} C(q, i) * l**i * b**(q-i) * S(l, q-i, k-1)

    S(q, k)    = (b**q + b - 1)*S(q, k-1)
                 + sum_{l} sum_{i=1..q} C(q, i) * l**i * b**(q-i) * S(l, q-i, k-1)

The q = 0 layer is materialized as pure counts, S(0, k) = (b-1)*b**k and
S(l, 0, k) = (b-1)*b**(k-1), so the i = q term above needs no special case.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .digits import check_base


@dataclass
class MomentTable:
    """Dense table of S(q, k) and S(l, q, k) for q <= max_power, k <= max_k.

    total[q][k] holds S(q, k) and by_last[l][q][k] holds S(l, q, k); the
    k = 0 slot of every row is unused padding.  Tables are built by
    seed_base_case/extend and treated as immutable afterwards, so a
    completed table is safe to read concurrently.
    """

    base: int
    max_power: int
    max_k: int
    total: list[list[int]]
    by_last: list[list[list[int]]]


def seed_base_case(base: int, max_power: int) -> MomentTable:
    """Table for k = 1, i.e. the two-digit numbers d1 d0 with d1 >= 1.

    r of two distinct digits is 0 and r(b, ll) = l, so for q >= 1 only the
    repdigits ll with l >= 1 contribute: S(l, q, 1) = l**q and
    S(q, 1) = sum_{l=1..b-1} l**q (which is b(b-1)/2 at q = 1).  The q = 0
    layer counts: S(l, 0, 1) = b-1 and S(0, 1) = (b-1)*b.
    """
    check_base(base)
    if not isinstance(max_power, int) or max_power < 0:
        raise ValueError(f"max_power must be a non-negative integer, got {max_power!r}")
    total = [[0, 0] for _ in range(max_power + 1)]
    by_last = [[[0, 0] for _ in range(max_power + 1)] for _ in range(base)]
    total[0][1] = (base - 1) * base
    for l in range(base):
        by_last[l][0][1] = base - 1
    for q in range(1, max_power + 1):
        for l in range(1, base):
            by_last[l][q][1] = l**q
        total[q][1] = sum(l**q for l in range(1, base))
    return MomentTable(base, max_power, 1, total, by_last)


def extend(t: MomentTable, new_max_k: int) -> MomentTable:
    """Extend a table to new_max_k digits-minus-one via the recurrences."""
    if not isinstance(new_max_k, int) or new_max_k < t.max_k:
        raise ValueError(f"new_max_k must be an integer >= {t.max_k}, got {new_max_k!r}")
    b, p = t.base, t.max_power
    total = [row[:] for row in t.total]
    by_last = [[row[:] for row in rows] for rows in t.by_last]
    choose = [[comb(q, i) for i in range(q + 1)] for q in range(p + 1)]
    bpow = [b**q for q in range(p + 1)]
    for k in range(t.max_k + 1, new_max_k + 1):
        total[0].append((b - 1) * b**k)
        for l in range(b):
            by_last[l][0].append((b - 1) * b ** (k - 1))
        for q in range(1, p + 1):
            cross_total = 0
            for l in range(b):
                cross = sum(
                    choose[q][i] * l**i * bpow[q - i] * by_last[l][q - i][k - 1]
                    for i in range(1, q + 1)
                )
                cross_total += cross
                by_last[l][q].append(
                    (bpow[q] - 1) * by_last[l][q][k - 1] + total[q][k - 1] + cross
                )
            total[q].append((bpow[q] + b - 1) * total[q][k - 1] + cross_total)
    return MomentTable(b, p, new_max_k, total, by_last)


def build_table(base: int, max_power: int, max_k: int) -> MomentTable:
    """Seed and extend in one call."""
    return extend(seed_base_case(base, max_power), max_k)


def moment_value(
    t: MomentTable, power: int, k: int, last_digit: int | None = None
) -> int:
    """Look up S(power, k), or S(last_digit, power, k) when a digit is given."""
    if not 0 <= power <= t.max_power:
        raise IndexError(f"power {power} outside table range [0, {t.max_power}]")
    if not 1 <= k <= t.max_k:
        raise IndexError(f"k {k} outside table range [1, {t.max_k}]")
    if last_digit is None:
        return t.total[power][k]
    if not (isinstance(last_digit, int) and 0 <= last_digit < t.base):
        raise IndexError(f"last digit {last_digit!r} out of range [0, {t.base - 1}]")
    return t.by_last[last_digit][power][k]
