"""Brute-force ground truth over all involution pairs, independent of the product formula."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass, field
from itertools import permutations
from typing import Iterator

from invofact.counting import count_factorizations, involution_count
from invofact.permutation import Permutation, compose, cycle_type

EXHAUSTIVE_LIMIT = 10


class LimitExceeded(ValueError):
    pass


def _check_limit(n: int, limit: int) -> None:
    if n > limit:
        raise LimitExceeded(f"degree {n} exceeds the exhaustive limit {limit}")


def all_involutions(n: int, limit: int = EXHAUSTIVE_LIMIT) -> Iterator[Permutation]:
    """Every involution of ``range(n)``.

    The last point is either fixed or swapped with one earlier point; the
    remaining points are handled recursively.
    """
    _check_limit(n, limit)

    def rec(points: list[int], images: list[int]) -> Iterator[None]:
        if not points:
            yield None
            return
        x, rest = points[-1], points[:-1]
        images[x] = x
        yield from rec(rest, images)
        for i, y in enumerate(rest):
            images[x], images[y] = y, x
            yield from rec(rest[:i] + rest[i + 1 :], images)
            images[y] = y

    images = list(range(n))
    for _ in rec(list(range(n)), images):
        yield Permutation(images)


def factorization_table(n: int, limit: int = EXHAUSTIVE_LIMIT) -> Counter:
    """Map each permutation of degree ``n`` to the number of involution pairs composing to it.

    One pass over all ordered pairs fills the counts for every permutation.
    Permutations with no factorization are absent (none exist, but the
    table does not assume it).
    """
    _check_limit(n, limit)
    invs = list(all_involutions(n, limit))
    table: Counter = Counter()
    for tau1 in invs:
        for tau2 in invs:
            table[compose(tau2, tau1)] += 1
    return table


def brute_force_pairs(sigma: Permutation, limit: int = EXHAUSTIVE_LIMIT) -> set[tuple[Permutation, Permutation]]:
    """All ``(tau1, tau2)`` with ``tau2 ∘ tau1 == sigma``, found by exhaustive search."""
    _check_limit(sigma.n, limit)
    invs = list(all_involutions(sigma.n, limit))
    return {(t1, t2) for t1 in invs for t2 in invs if compose(t2, t1) == sigma}


def brute_force_count(sigma: Permutation, limit: int = EXHAUSTIVE_LIMIT) -> int:
    _check_limit(sigma.n, limit)
    invs = list(all_involutions(sigma.n, limit))
    return sum(1 for t1 in invs for t2 in invs if compose(t2, t1) == sigma)


@dataclass
class ExhaustiveReport:
    n: int
    checked: int = 0
    mismatches: list[dict] = field(default_factory=list)
    max_value: int = 0
    max_attainers: int = 0
    min_value: int = 0
    min_attainers: int = 0
    total_sum: int = 0
    failed_claims: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.failed_claims

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("max_value", "min_value", "total_sum"):
            d[key] = str(d[key])
        d["ok"] = self.ok
        return d


def exhaustive_check(n: int, limit: int = EXHAUSTIVE_LIMIT) -> ExhaustiveReport:
    """Compare brute force with the product formula on every permutation of degree ``n``.

    Also checks the grand total ``|T_n|^2``, that the maximum ``|T_n|`` is
    attained only at the identity and, for ``n >= 2``, that the minimum
    ``n - 1`` is attained by exactly ``n!/(n-1)`` permutations. Failures
    are recorded on the report, never raised.
    """
    table = factorization_table(n, limit)
    report = ExhaustiveReport(n=n)
    values = []
    for images in permutations(range(n)):
        sigma = Permutation(images)
        brute = table.get(sigma, 0)
        formula = count_factorizations(cycle_type(sigma))
        if brute != formula:
            report.mismatches.append(
                {"sigma": list(images), "brute_force": str(brute), "formula": str(formula)}
            )
        values.append((brute, sigma))
        report.checked += 1

    counts = [v for v, _ in values]
    report.total_sum = sum(counts)
    report.max_value = max(counts)
    report.min_value = min(counts)
    report.max_attainers = counts.count(report.max_value)
    report.min_attainers = counts.count(report.min_value)

    t_n = involution_count(n)
    if report.total_sum != t_n**2:
        report.failed_claims.append(f"total {report.total_sum} != |T_n|^2 = {t_n**2}")
    maximisers = [s for v, s in values if v == report.max_value]
    if report.max_value != t_n or maximisers != [Permutation.identity(n)]:
        report.failed_claims.append(
            f"maximum {report.max_value} attained by {len(maximisers)} permutations, "
            f"expected {t_n} at the identity only"
        )
    if n >= 2:
        expected = math.factorial(n) // (n - 1)
        if report.min_value != n - 1 or report.min_attainers != expected:
            report.failed_claims.append(
                f"minimum {report.min_value} with {report.min_attainers} attainers, "
                f"expected {n - 1} with {expected}"
            )
    return report
