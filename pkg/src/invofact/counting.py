"""Exact counts of involution factorizations.

Everything here is integer or rational arithmetic except
:func:`chm_asymptotic` and :func:`log_count`, which return floats.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import NamedTuple

from invofact.permutation import CycleType


def hermite_factor(m: int, k: int) -> Fraction:
    """Correction factor for ``m`` cycles of length ``k``.

    ``sum_{j <= m/2} k**-j * m! / (2**j j! (m-2j)!)``, which equals
    ``He_m(i sqrt(k)) / (i sqrt(k))**m`` for the probabilists' Hermite
    polynomial ``He_m``.
    """
    if m < 0 or k < 1:
        raise ValueError(f"need m >= 0 and k >= 1, got m={m}, k={k}")
    return sum(
        (Fraction(matchings_with_pairs(m, j), k**j) for j in range(m // 2 + 1)),
        Fraction(0),
    )


def matchings_with_pairs(c: int, j: int) -> int:
    """Number of ways to pick ``j`` disjoint pairs from ``c`` items: c!/(2^j j! (c-2j)!)."""
    if 2 * j > c:
        return 0
    f = math.factorial
    return f(c) // (2**j * f(j) * f(c - 2 * j))


def inner_factor(k: int, c: int) -> int:
    """Number of factorizations restricted to ``c`` cycles of length ``k``.

    Terms are updated incrementally; each ``k**(c-j) c!/(2^j j!(c-2j)!)`` is an
    integer, so multiplying before the floor division keeps it exact.
    """
    if k < 1 or c < 0:
        raise ValueError(f"need k >= 1 and c >= 0, got k={k}, c={c}")
    term = k**c
    total = 0
    for j in range(c // 2 + 1):
        total += term
        term = term * (c - 2 * j) * (c - 2 * j - 1) // (2 * k * (j + 1))
    return total


def count_factorizations(t: CycleType) -> int:
    """Number of ordered involution pairs ``(tau1, tau2)`` with ``tau2 ∘ tau1`` of type ``t``."""
    return math.prod(inner_factor(k, c) for k, c in t.items())


def product_of_cycle_lengths(t: CycleType) -> int:
    return math.prod(k**c for k, c in t.items())


_involutions = [1, 1]
_involutions_lock = threading.Lock()


def involution_count(n: int) -> int:
    """Number of involutions of an ``n``-set (A000085)."""
    if n < 0:
        raise ValueError(f"negative degree {n}")
    with _involutions_lock:
        table = _involutions
        for i in range(len(table), n + 1):
            table.append(table[i - 1] + (i - 1) * table[i - 2])
        return table[n]


class AsymptoticValue(NamedTuple):
    log: float
    value: float | None  # None when exp(log) overflows a float


def chm_log_asymptotic(n: int) -> float:
    """Natural log of ``(1/sqrt 2) (n/e)^(n/2) exp(sqrt(n) - 1/4)``."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return -0.5 * math.log(2) + 0.5 * n * (math.log(n) - 1.0) + math.sqrt(n) - 0.25


def chm_asymptotic(n: int) -> AsymptoticValue:
    """Chowla-Herstein-Moore estimate of the involution count."""
    lv = chm_log_asymptotic(n)
    try:
        value = math.exp(lv)
    except OverflowError:
        value = None
    return AsymptoticValue(lv, value)


def mean_factorizations(n: int) -> Fraction:
    """Average number of factorizations over the symmetric group: |T_n|^2 / n!."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return Fraction(involution_count(n) ** 2, math.factorial(n))


def log_count(t: CycleType) -> float:
    """Natural log of :func:`count_factorizations`.

    ``math.log`` on a Python int is accurate for arbitrarily large values,
    so each factor is logged exactly before summing.
    """
    return math.fsum(math.log(inner_factor(k, c)) for k, c in t.items())


def log_product_of_cycle_lengths(t: CycleType) -> float:
    return math.fsum(c * math.log(k) for k, c in t.items())


def partitions(n: int):
    """Integer partitions of ``n`` in descending lexicographic order, as cycle types."""
    if n == 0:
        yield CycleType({})
        return
    # a is a descending list of parts
    a = [n]
    while True:
        counts: dict[int, int] = {}
        for part in a:
            counts[part] = counts.get(part, 0) + 1
        yield CycleType(counts)
        # strip trailing 1s, decrement the last part > 1, refill greedily
        ones = 0
        while a and a[-1] == 1:
            a.pop()
            ones += 1
        if not a:
            return
        a[-1] -= 1
        rest = ones + 1
        part = a[-1]
        while rest:
            take = min(part, rest)
            a.append(take)
            rest -= take
