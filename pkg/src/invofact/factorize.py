"""Constructive enumeration of factorizations ``sigma = tau2 ∘ tau1`` into involutions.

Every factorization pairs up some cycles of equal length and leaves the rest
invariant. An invariant ``k``-cycle ``(p_0, ..., p_{k-1})`` is factored by
``I_t(p_x) = p_{(t-x) mod k}`` with ``tau2 = I_t`` and ``tau1 = I_{t-1}``.
A pair of ``k``-cycles ``a``, ``b`` is exchanged by ``J_t``, which swaps
``a_x`` with ``b_{(t-x) mod k}``, again with ``tau2 = J_t`` and
``tau1 = J_{t-1}``. Cycles are always read from their smallest point.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from invofact.permutation import (
    Permutation,
    canonical_cycle,
    compose,
    cycle_decomposition,
    is_involution,
)


@dataclass(frozen=True)
class InvolutionPair:
    """Ordered pair of involutions with ``compose(tau2, tau1) == sigma``."""

    tau1: Permutation
    tau2: Permutation

    def product(self) -> Permutation:
        return compose(self.tau2, self.tau1)

    @classmethod
    def checked(cls, tau1: Permutation, tau2: Permutation, sigma: Permutation) -> InvolutionPair:
        if not (is_involution(tau1) and is_involution(tau2)):
            raise ValueError("both factors must be involutions")
        if compose(tau2, tau1) != sigma:
            raise ValueError("tau2 ∘ tau1 does not equal sigma")
        return cls(tau1, tau2)


# A fragment is (tau1 restricted, tau2 restricted) as dicts over the points it touches.
Fragment = tuple[dict[int, int], dict[int, int]]


def _lemma1_maps(cycle: Sequence[int], t: int) -> Fragment:
    k = len(cycle)
    tau2 = {cycle[x]: cycle[(t - x) % k] for x in range(k)}
    tau1 = {cycle[x]: cycle[(t - 1 - x) % k] for x in range(k)}
    return tau1, tau2


def _lemma3_maps(a: Sequence[int], b: Sequence[int], t: int) -> Fragment:
    k = len(a)
    tau1: dict[int, int] = {}
    tau2: dict[int, int] = {}
    for x in range(k):
        y = b[(t - x) % k]
        tau2[a[x]] = y
        tau2[y] = a[x]
        y = b[(t - 1 - x) % k]
        tau1[a[x]] = y
        tau1[y] = a[x]
    return tau1, tau2


def _embed(n: int, fragment: Fragment) -> InvolutionPair:
    t1, t2 = list(range(n)), list(range(n))
    for x, y in fragment[0].items():
        t1[x] = y
    for x, y in fragment[1].items():
        t2[x] = y
    return InvolutionPair(Permutation(t1), Permutation(t2))


def _degree(points: Sequence[int]) -> int:
    return max(points, default=-1) + 1


def lemma1_factors(cycle: Sequence[int], n: int | None = None) -> list[InvolutionPair]:
    """The ``k`` factorizations of a single ``k``-cycle that leave it invariant.

    ``cycle`` lists points in the order the cycle visits them. Results are
    embedded in degree ``n`` (default: just large enough), identity
    elsewhere, and ordered by phase ``t = 0, ..., k-1``.
    """
    cycle = canonical_cycle(cycle)
    n = _degree(cycle) if n is None else n
    return [_embed(n, _lemma1_maps(cycle, t)) for t in range(len(cycle))]


def lemma3_factors(
    cycle_a: Sequence[int], cycle_b: Sequence[int], n: int | None = None
) -> list[InvolutionPair]:
    """The ``k`` factorizations of two ``k``-cycles that exchange them.

    Raises ``ValueError`` if the cycles differ in length or share a point.
    """
    if len(cycle_a) != len(cycle_b):
        raise ValueError(
            f"only cycles of equal length can be exchanged ({len(cycle_a)} != {len(cycle_b)})"
        )
    if set(cycle_a) & set(cycle_b):
        raise ValueError("cycles must be disjoint")
    a, b = canonical_cycle(cycle_a), canonical_cycle(cycle_b)
    if b[0] < a[0]:
        a, b = b, a
    n = _degree(a + b) if n is None else n
    return [_embed(n, _lemma3_maps(a, b, t)) for t in range(len(a))]


def partial_matchings(c: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """All sets of disjoint pairs from ``range(c)``, the empty one first.

    The smallest remaining item is either left single or paired with each
    larger remaining item in turn.
    """

    def rec(items: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
        if len(items) < 2:
            yield ()
            return
        first, rest = items[0], items[1:]
        yield from rec(rest)
        for i, other in enumerate(rest):
            for m in rec(rest[:i] + rest[i + 1 :]):
                yield ((first, other),) + m

    yield from rec(tuple(range(c)))


def _length_options(cycles: list[list[int]]) -> Iterator[Fragment]:
    """All factorization fragments on the union of the given equal-length cycles."""
    k = len(cycles[0])
    for matching in partial_matchings(len(cycles)):
        matched = {i for pair in matching for i in pair}
        units: list[tuple[int, ...]] = [pair for pair in matching]
        units += [(i,) for i in range(len(cycles)) if i not in matched]
        units.sort()
        for phases in product(range(k), repeat=len(units)):
            tau1: dict[int, int] = {}
            tau2: dict[int, int] = {}
            for unit, t in zip(units, phases):
                if len(unit) == 1:
                    f1, f2 = _lemma1_maps(cycles[unit[0]], t)
                else:
                    f1, f2 = _lemma3_maps(cycles[unit[0]], cycles[unit[1]], t)
                tau1.update(f1)
                tau2.update(f2)
            yield tau1, tau2


def enumerate_factorizations(sigma: Permutation) -> Iterator[InvolutionPair]:
    """Lazily yield every factorization of ``sigma`` exactly once.

    Order: cycle lengths ascending (the shortest length varies slowest),
    then matchings in :func:`partial_matchings` order, then phases
    ascending. Units within a length (matched pairs and single cycles) are
    ordered by their smallest cycle index.
    """
    by_length: dict[int, list[list[int]]] = {}
    for cycle in cycle_decomposition(sigma):
        by_length.setdefault(len(cycle), []).append(cycle)
    groups = [by_length[k] for k in sorted(by_length)]
    n = sigma.n
    t1 = list(range(n))
    t2 = list(range(n))

    def rec(level: int) -> Iterator[InvolutionPair]:
        if level == len(groups):
            yield InvolutionPair.checked(Permutation(t1), Permutation(t2), sigma)
            return
        for f1, f2 in _length_options(groups[level]):
            for x, y in f1.items():
                t1[x] = y
            for x, y in f2.items():
                t2[x] = y
            yield from rec(level + 1)

    yield from rec(0)


def is_exchanging(pair: InvolutionPair, o1: Sequence[int], o2: Sequence[int]) -> bool:
    """True iff both involutions map the points of ``o1`` onto those of ``o2``."""
    s1, s2 = set(o1), set(o2)
    if s1 == s2:
        return False
    return {pair.tau1(x) for x in s1} == s2 and {pair.tau2(x) for x in s1} == s2
