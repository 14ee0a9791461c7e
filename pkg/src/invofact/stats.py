"""Monte Carlo experiments on the factorization count of a uniform permutation.

Samples are drawn in fixed-size chunks, chunk ``i`` using substream ``i``
of the seed, so results depend only on ``(n, samples, seed)`` and not on
how many worker processes share the chunks.
"""

from __future__ import annotations

import json
import math
import statistics
from bisect import bisect_left
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

from invofact.counting import (
    count_factorizations,
    inner_factor,
    log_count,
    log_product_of_cycle_lengths,
    product_of_cycle_lengths,
)
from invofact.permutation import CycleType
from invofact.sampling import SeededRng, sample_cycle_type

CHUNK_SIZE = 1000
HIST_LOW, HIST_HIGH, HIST_WIDTH = -5.0, 5.0, 0.25
STATISTICS = ("logN", "logB")
SANITY_NOTE = (
    "tolerances on mean/stdev/KS are sanity bands for a limit law without a rate, "
    "not sharp predictions"
)


@lru_cache(maxsize=64)
def mu(n: int) -> float:
    """Centering ``sum_{k<=n} log(k)/k``."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return math.fsum(math.log(k) / k for k in range(2, n + 1))


@lru_cache(maxsize=64)
def sigma(n: int) -> float:
    """Scale ``sqrt(sum_{k<=n} log(k)^2/k)``."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return math.sqrt(math.fsum(math.log(k) ** 2 / k for k in range(2, n + 1)))


def mu_asymptotic(n: int) -> float:
    return 0.5 * math.log(n) ** 2


def sigma_asymptotic(n: int) -> float:
    return math.sqrt(math.log(n) ** 3 / 3)


def normal_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def ks_statistic(samples: Sequence[float], cdf: Callable[[float], float] = normal_cdf) -> float:
    """One-sample Kolmogorov-Smirnov distance between sorted ``samples`` and ``cdf``."""
    m = len(samples)
    if m == 0:
        raise ValueError("KS distance of an empty sample")
    d = 0.0
    for i, x in enumerate(samples, start=1):
        f = cdf(x)
        d = max(d, abs(i / m - f), abs((i - 1) / m - f))
    return d


def histogram(values: Sequence[float]) -> list[tuple[float, int]]:
    """Counts in width-0.25 bins over [-5, 5) plus an underflow and an overflow bin.

    The underflow bin's left edge is ``-inf``; the overflow bin starts at 5.
    """
    nbins = round((HIST_HIGH - HIST_LOW) / HIST_WIDTH)
    edges = [HIST_LOW + i * HIST_WIDTH for i in range(nbins + 1)]
    data = sorted(values)
    bins = [(-math.inf, bisect_left(data, edges[0]))]
    for lo, hi in zip(edges, edges[1:]):
        bins.append((lo, bisect_left(data, hi) - bisect_left(data, lo)))
    bins.append((edges[-1], len(data) - bisect_left(data, edges[-1])))
    return bins


def _chunks(samples: int) -> list[tuple[int, int]]:
    return [(i, min(CHUNK_SIZE, samples - i * CHUNK_SIZE)) for i in range(-(-samples // CHUNK_SIZE))]


def _map_chunks(fn: Callable, args: list[tuple], threads: int) -> list:
    if threads <= 1 or len(args) <= 1:
        return [fn(*a) for a in args]
    with ProcessPoolExecutor(max_workers=min(threads, len(args))) as pool:
        return list(pool.map(fn, *zip(*args)))


def sample_cycle_types(n: int, samples: int, seed: int) -> list[CycleType]:
    """The cycle types the experiments below see for ``(n, samples, seed)``, in order."""
    root = SeededRng(seed)
    out = []
    for index, size in _chunks(samples):
        rng = root.substream(index)
        out.extend(sample_cycle_type(n, rng) for _ in range(size))
    return out


# -- lognormal limit ------------------------------------------------------------------


@dataclass
class CltReport:
    n: int
    samples: int
    seed: int
    statistic: str
    mu: float
    sigma: float
    mean: float
    stdev: float
    ks_distance: float
    histogram: list[tuple[float, int]]
    note: str = SANITY_NOTE

    def to_dict(self) -> dict:
        d = asdict(self)
        d["histogram"] = [[_edge(lo), c] for lo, c in self.histogram]
        return d


def _edge(x: float) -> float | str:
    return "-inf" if x == -math.inf else x


def _clt_chunk(n: int, seed: int, index: int, size: int, statistic: str) -> list[float]:
    rng = SeededRng(seed).substream(index)
    stat = log_count if statistic == "logN" else log_product_of_cycle_lengths
    return [stat(sample_cycle_type(n, rng)) for _ in range(size)]


def clt_values(n: int, samples: int, seed: int, statistic: str = "logN", threads: int = 1) -> list[float]:
    """Raw ``log N`` (or ``log B``) values in sample order."""
    if statistic not in STATISTICS:
        raise ValueError(f"unknown statistic {statistic!r}, expected one of {STATISTICS}")
    args = [(n, seed, i, size, statistic) for i, size in _chunks(samples)]
    return [v for chunk in _map_chunks(_clt_chunk, args, threads) for v in chunk]


def clt_experiment(
    n: int, samples: int, seed: int, statistic: str = "logN", threads: int = 1
) -> CltReport:
    """Summarise ``(statistic - mu_n) / sigma_n`` over ``samples`` uniform permutations."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if samples < 1:
        raise ValueError(f"need at least one sample, got {samples}")
    m, s = mu(n), sigma(n)
    z = [(v - m) / s for v in clt_values(n, samples, seed, statistic, threads)]
    return CltReport(
        n=n,
        samples=samples,
        seed=seed,
        statistic=statistic,
        mu=m,
        sigma=s,
        mean=math.fsum(z) / len(z),
        stdev=statistics.stdev(z) if len(z) > 1 else 0.0,
        ks_distance=ks_statistic(sorted(z)),
        histogram=histogram(z),
    )


# -- tail events ------------------------------------------------------------------------


@dataclass
class TailReport:
    n: int
    xi: float
    samples: int
    seed: int
    freq_large_k_repeat: float
    freq_small_k_crowd: float
    bound_large_k: float
    standard_error: float

    def to_dict(self) -> dict:
        return asdict(self)


def large_k_repeat(t: CycleType, xi: float) -> bool:
    """Some length ``k >= xi`` occurs at least twice."""
    return any(c >= 2 and k >= xi for k, c in t.items())


def small_k_crowd(t: CycleType, xi: float) -> bool:
    """Some length ``k <= floor(xi)`` occurs at least ``ceil(xi)`` times."""
    return any(k <= math.floor(xi) and c >= math.ceil(xi) for k, c in t.items())


def large_k_bound(n: int, xi: float) -> float:
    """Union bound ``sum_{ceil(xi) <= k <= n/2} 1/k^2`` on :func:`large_k_repeat`."""
    return math.fsum(1.0 / (k * k) for k in range(math.ceil(xi), n // 2 + 1))


def _tail_chunk(n: int, seed: int, index: int, size: int, xi: float) -> tuple[int, int]:
    rng = SeededRng(seed).substream(index)
    large = small = 0
    for _ in range(size):
        t = sample_cycle_type(n, rng)
        large += large_k_repeat(t, xi)
        small += small_k_crowd(t, xi)
    return large, small


def tail_experiment(n: int, xi: float, samples: int, seed: int, threads: int = 1) -> TailReport:
    if not 1 <= xi <= n:
        raise ValueError(f"need 1 <= xi <= n, got xi={xi}, n={n}")
    args = [(n, seed, i, size, xi) for i, size in _chunks(samples)]
    parts = _map_chunks(_tail_chunk, args, threads)
    large = sum(p[0] for p in parts)
    small = sum(p[1] for p in parts)
    bound = large_k_bound(n, xi)
    return TailReport(
        n=n,
        xi=xi,
        samples=samples,
        seed=seed,
        freq_large_k_repeat=large / samples,
        freq_small_k_crowd=small / samples,
        bound_large_k=bound,
        standard_error=math.sqrt(min(bound, 1.0) * (1 - min(bound, 1.0)) / samples),
    )


# -- deterministic sandwich ----------------------------------------------------------


class SandwichViolation(AssertionError):
    """Raised with a JSON counterexample when a sampled cycle type breaks a bound."""


@dataclass
class SandwichReport:
    n: int
    xi: float
    c: float
    samples: int
    seed: int
    hypothesis_count: int
    hypothesis_fraction: float
    log_upper_margin: float
    max_log_excess: float
    lower_bound_violations: int = 0
    upper_bound_violations: int = 0
    counterexamples: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def sandwich_hypotheses(t: CycleType, xi: float) -> bool:
    """``c_k <= 1`` for every ``k > xi`` and ``c_k <= xi`` for every ``k``."""
    return all(c <= xi and (k <= xi or c <= 1) for k, c in t.items())


def sandwich_log_margin(xi: float, c: float) -> float:
    """``log((c xi^xi)^xi)``."""
    return xi * (math.log(c) + xi * math.log(xi))


def _sandwich_chunk(n: int, seed: int, index: int, size: int, xi: float, c: float):
    rng = SeededRng(seed).substream(index)
    margin = sandwich_log_margin(xi, c)
    held = 0
    max_excess = 0.0
    bad = []
    for _ in range(size):
        t = sample_cycle_type(n, rng)
        big_n = count_factorizations(t)
        big_b = product_of_cycle_lengths(t)
        if big_n < big_b:
            bad.append({"kind": "lower", "cycle_type": str(t), "N": str(big_n), "B": str(big_b)})
        if sandwich_hypotheses(t, xi):
            held += 1
            excess = math.fsum(
                math.log(inner_factor(k, m)) - m * math.log(k) for k, m in t.items()
            )
            max_excess = max(max_excess, excess)
            if excess > margin:
                bad.append({"kind": "upper", "cycle_type": str(t), "log_N_over_B": excess,
                            "log_margin": margin})
    return held, max_excess, bad


def sandwich_check(
    n: int, xi: float, samples: int, seed: int, c: float = 2.0, threads: int = 1,
    strict: bool = True,
) -> SandwichReport:
    """Check ``B <= N <= B (c xi^xi)^xi`` on sampled cycle types.

    The lower bound is checked exactly on every sample, the upper bound
    (in log space) on samples meeting :func:`sandwich_hypotheses`. With
    ``strict`` any violation raises :class:`SandwichViolation`.
    """
    if xi < 1:
        raise ValueError(f"need xi >= 1, got {xi}")
    args = [(n, seed, i, size, xi, c) for i, size in _chunks(samples)]
    parts = _map_chunks(_sandwich_chunk, args, threads)
    bad = [b for p in parts for b in p[2]]
    held = sum(p[0] for p in parts)
    report = SandwichReport(
        n=n,
        xi=xi,
        c=c,
        samples=samples,
        seed=seed,
        hypothesis_count=held,
        hypothesis_fraction=held / samples,
        log_upper_margin=sandwich_log_margin(xi, c),
        max_log_excess=max((p[1] for p in parts), default=0.0),
        lower_bound_violations=sum(b["kind"] == "lower" for b in bad),
        upper_bound_violations=sum(b["kind"] == "upper" for b in bad),
        counterexamples=bad[:10],
    )
    if strict and bad:
        raise SandwichViolation(json.dumps(bad[0]))
    return report
