"""Permutations of {0, ..., n-1} stored as image tables, and their cycle structure."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0, ..., n-1}; ``images[x]`` is the image of ``x``.

    Instances are immutable and hashable, so they can be used as dict keys
    when bucketing compositions.
    """

    images: tuple[int, ...]

    def __init__(self, images: Iterable[int]):
        images = tuple(int(v) for v in images)
        n = len(images)
        seen = [False] * n
        for v in images:
            if not 0 <= v < n or seen[v]:
                raise ValueError(f"not a permutation of range({n}): {list(images)}")
            seen[v] = True
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(range(n))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __len__(self) -> int:
        return len(self.images)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"

    def __str__(self) -> str:
        return format_cycles(self)


class CycleType:
    """Multiplicities ``c_k`` of the cycle lengths of a permutation.

    Behaves like a read-only mapping ``k -> c_k`` that returns 0 for absent
    lengths. Zero multiplicities are dropped on construction.
    """

    __slots__ = ("_counts", "_n")

    def __init__(self, counts: Mapping[int, int], n: int | None = None):
        items = []
        total = 0
        for k, c in counts.items():
            k, c = int(k), int(c)
            if k < 1 or c < 0:
                raise ValueError(f"invalid cycle multiplicity {k}:{c}")
            if c:
                items.append((k, c))
                total += k * c
        if n is not None and n != total:
            raise ValueError(f"cycle type sums to {total}, expected degree {n}")
        self._counts = tuple(sorted(items))
        self._n = total

    @property
    def n(self) -> int:
        return self._n

    def __getitem__(self, k: int) -> int:
        for length, c in self._counts:
            if length == k:
                return c
        return 0

    def items(self) -> tuple[tuple[int, int], ...]:
        return self._counts

    def lengths(self) -> list[int]:
        return [k for k, _ in self._counts]

    def as_dict(self) -> dict[int, int]:
        return dict(self._counts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.lengths())

    def __len__(self) -> int:
        return len(self._counts)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycleType):
            return self._counts == other._counts
        if isinstance(other, Mapping):
            return self == CycleType(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._counts)

    def __repr__(self) -> str:
        return f"CycleType({self.as_dict()})"

    def __str__(self) -> str:
        return ",".join(f"{k}:{c}" for k, c in self._counts)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p ∘ q``, the map ``x -> p(q(x))``."""
    if p.n != q.n:
        raise ValueError(f"degree mismatch: {p.n} != {q.n}")
    pi = p.images
    return Permutation(pi[y] for y in q.images)


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.n
    for x, y in enumerate(p.images):
        inv[y] = x
    return Permutation(inv)


def is_involution(p: Permutation) -> bool:
    im = p.images
    return all(im[y] == x for x, y in enumerate(im))


def cycle_decomposition(p: Permutation) -> list[list[int]]:
    """Cycles of ``p`` in canonical form.

    Each cycle starts at its smallest point and lists points in the order
    ``x, p(x), p(p(x)), ...``; cycles are sorted by their first point.
    Fixed points appear as 1-cycles.
    """
    im = p.images
    seen = [False] * p.n
    cycles = []
    for start in range(p.n):
        if seen[start]:
            continue
        cycle = []
        x = start
        while not seen[x]:
            seen[x] = True
            cycle.append(x)
            x = im[x]
        cycles.append(cycle)
    return cycles


def cycle_type(p: Permutation) -> CycleType:
    counts: dict[int, int] = {}
    for cycle in cycle_decomposition(p):
        counts[len(cycle)] = counts.get(len(cycle), 0) + 1
    return CycleType(counts, n=p.n)


def from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
    """Build the permutation of degree ``n`` with the given disjoint cycles.

    Points not mentioned are fixed. Raises ``ValueError`` on a repeated or
    out-of-range point.
    """
    images = list(range(n))
    used = set()
    for cycle in cycles:
        cycle = [int(x) for x in cycle]
        for x in cycle:
            if not 0 <= x < n:
                raise ValueError(f"point {x} out of range for degree {n}")
            if x in used:
                raise ValueError(f"point {x} appears more than once")
            used.add(x)
        for i, x in enumerate(cycle):
            images[x] = cycle[(i + 1) % len(cycle)]
    return Permutation(images)


def canonical_cycle(points: Sequence[int]) -> list[int]:
    """Rotate a cycle so that it starts at its minimum point."""
    i = min(range(len(points)), key=points.__getitem__)
    return list(points[i:]) + list(points[:i])


# -- text formats -------------------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int | None = None, one_based: bool = False) -> Permutation:
    """Parse cycle notation such as ``"(1,2,3)(4,5,6)"``.

    Points may be separated by commas or whitespace; ``"()"`` is the
    identity. The degree defaults to one more than the largest 0-based
    point. Labels are shifted down by one when ``one_based`` is set.
    """
    stripped = _CYCLE_RE.sub("", text).strip()
    if stripped:
        raise ValueError(f"unexpected token {stripped.split()[0]!r} in cycle notation")
    shift = 1 if one_based else 0
    cycles = []
    for body in _CYCLE_RE.findall(text):
        tokens = [t for t in re.split(r"[,\s]+", body.strip()) if t]
        points = []
        for tok in tokens:
            try:
                points.append(int(tok) - shift)
            except ValueError:
                raise ValueError(f"bad point {tok!r} in cycle notation") from None
        if points:
            cycles.append(points)
    top = max((x for c in cycles for x in c), default=-1) + 1
    low = min((x for c in cycles for x in c), default=0)
    if low < 0:
        raise ValueError(f"point {low + shift} out of range for {'1' if one_based else '0'}-based labels")
    if n is None:
        n = top
    elif n < top:
        raise ValueError(f"point {top - 1 + shift} out of range for degree {n}")
    return from_cycles(n, cycles)


def parse_images(text: str) -> Permutation:
    """Parse the image form, a JSON array of 0-based images."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"bad image array {text!r}: {exc.msg}") from None
    if not isinstance(data, list) or not all(isinstance(v, int) for v in data):
        raise ValueError(f"image form must be a JSON array of integers, got {text!r}")
    return Permutation(data)


def format_cycles(p: Permutation, one_based: bool = False, fixed_points: bool = False) -> str:
    """Cycle notation for ``p``; the identity without fixed points is ``"()"``."""
    shift = 1 if one_based else 0
    parts = [
        "(" + ",".join(str(x + shift) for x in c) + ")"
        for c in cycle_decomposition(p)
        if fixed_points or len(c) > 1
    ]
    return "".join(parts) or "()"


def parse_cycle_type(text: str) -> CycleType:
    """Parse ``"k:c,k:c,..."`` into a :class:`CycleType`."""
    counts: dict[int, int] = {}
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        k, sep, c = tok.partition(":")
        try:
            if not sep:
                raise ValueError
            k_int, c_int = int(k), int(c)
        except ValueError:
            raise ValueError(f"bad cycle-type token {tok!r}, expected k:c") from None
        if k_int < 1 or c_int < 0:
            raise ValueError(f"bad cycle-type token {tok!r}")
        counts[k_int] = counts.get(k_int, 0) + c_int
    return CycleType(counts)
