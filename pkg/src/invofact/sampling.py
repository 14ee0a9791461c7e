"""Seeded uniform permutations and cycle types.

The generator is SplitMix64 (Steele, Lea & Flood 2014), which is simple
enough to reproduce bit-for-bit on any platform. Independent substreams
are derived from ``(seed, index)`` by hashing the pair through the
SplitMix64 finalizer.
"""

from __future__ import annotations

from invofact.permutation import CycleType, Permutation

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & MASK64
    return z ^ (z >> 31)


class SeededRng:
    """SplitMix64 stream. Not thread-safe; give each worker its own :meth:`substream`."""

    __slots__ = ("seed", "_state")

    def __init__(self, seed: int = 0):
        self.seed = int(seed) & MASK64
        self._state = self.seed

    def next_u64(self) -> int:
        self._state = (self._state + GOLDEN_GAMMA) & MASK64
        return mix64(self._state)

    def randbelow(self, m: int) -> int:
        """Uniform integer in ``range(m)``, unbiased (Lemire's multiply-and-reject)."""
        if m <= 0:
            raise ValueError(f"empty range {m}")
        if m > MASK64:
            raise ValueError(f"range {m} exceeds 64 bits")
        threshold = ((1 << 64) - m) % m
        while True:
            prod = self.next_u64() * m
            if prod & MASK64 >= threshold:
                return prod >> 64

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def substream(self, index: int) -> SeededRng:
        """Independent stream determined by this stream's seed and ``index``."""
        return SeededRng(mix64((self.seed + mix64((index + 1) * GOLDEN_GAMMA & MASK64)) & MASK64))


def sample_permutation(n: int, rng: SeededRng) -> Permutation:
    """Uniform permutation of degree ``n`` (Fisher-Yates)."""
    images = list(range(n))
    for i in range(n - 1, 0, -1):
        j = rng.randbelow(i + 1)
        images[i], images[j] = images[j], images[i]
    return Permutation(images)


def sample_cycle_type(n: int, rng: SeededRng) -> CycleType:
    """Cycle type of a uniform permutation of degree ``n``, without building it.

    With ``m`` points left, the cycle through the smallest of them has
    length uniform on ``1..m``.
    """
    counts: dict[int, int] = {}
    m = n
    while m:
        length = rng.randbelow(m) + 1
        counts[length] = counts.get(length, 0) + 1
        m -= length
    return CycleType(counts)
