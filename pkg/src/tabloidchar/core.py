"""Exact combinatorial primitives: partitions, period tuples, permutations and
character values stored as multiplicities over roots of unity."""

from __future__ import annotations

import cmath
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence

from .errors import (
    LengthMismatch,
    NonPositivePart,
    NotAPermutation,
    NotLPartition,
    NotWeaklyDecreasing,
    OrderMismatch,
)


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    @property
    def m(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def validate_partition(parts: Iterable[int]) -> Partition:
    parts = tuple(int(p) for p in parts)
    for p in parts:
        if p <= 0:
            raise NonPositivePart(f"part {p} is not positive in {parts}")
    for a, b in zip(parts, parts[1:]):
        if a < b:
            raise NotWeaklyDecreasing(f"{parts} is not weakly decreasing")
    return Partition(parts)


def is_l_partition(p: Partition | Sequence[int], l: int) -> bool:
    """True iff every part occurs a multiple of ``l`` times."""
    return all(mult % l == 0 for mult in Counter(tuple(p)).values())


def partitions_of(n: int) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse lexicographic order, starting at (n)."""
    if n == 0:
        yield Partition(())
        return

    def rec(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    for parts in rec(n, n):
        yield Partition(parts)


@dataclass(frozen=True)
class MultiPartitionInstance:
    components: tuple[Partition, ...]
    periods: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def m(self) -> int:
        return sum(c.m for c in self.components)

    @property
    def l(self) -> int:
        return lcm(*self.periods) if self.periods else 1

    @property
    def component_sizes(self) -> tuple[int, ...]:
        return tuple(c.m for c in self.components)

    def with_periods(self, periods: Sequence[int]) -> "MultiPartitionInstance":
        return validate_instance([c.parts for c in self.components], periods)

    def describe(self) -> dict:
        return {"mu": [list(c.parts) for c in self.components], "l": list(self.periods)}

    def __str__(self) -> str:
        mu = ",".join(str(c) for c in self.components)
        return f"mu=({mu}) l=({','.join(map(str, self.periods))})"

    @cached_property
    def rows(self) -> "RowLayout":
        return RowLayout(self)


class RowLayout:
    """Global row indexing for a tuple of diagrams.

    Rows are numbered 0.. across all components in reading order.  For each
    global row we record its component, its index inside the component, its
    length and its position inside its block of ``l_h`` rows.
    """

    def __init__(self, inst: MultiPartitionInstance):
        self.component = []
        self.local = []
        self.length = []
        self.residue = []
        self.block_start = []
        self.first_row = []
        g = 0
        for h, (comp, lh) in enumerate(zip(inst.components, inst.periods)):
            self.first_row.append(g)
            for i, width in enumerate(comp.parts):
                self.component.append(h)
                self.local.append(i)
                self.length.append(width)
                self.residue.append(i % lh)
                self.block_start.append(g - i % lh)
                g += 1
        self.first_row.append(g)
        self.count = g
        self.periods = inst.periods

    def shift(self, g: int, d: int) -> int:
        """Global row whose in-block residue is that of ``g`` plus ``d``."""
        lh = self.periods[self.component[g]]
        return self.block_start[g] + (self.residue[g] + d) % lh

    def shift_table(self, d: int) -> list[int]:
        return [self.shift(g, d) for g in range(self.count)]

    def rows_of(self, h: int) -> range:
        return range(self.first_row[h], self.first_row[h + 1])


def validate_instance(components: Sequence[Sequence[int]], periods: Sequence[int]) -> MultiPartitionInstance:
    components = list(components)
    periods = tuple(int(x) for x in periods)
    if len(components) != len(periods):
        raise LengthMismatch(f"{len(components)} components but {len(periods)} periods")
    parts = []
    for h, (comp, lh) in enumerate(zip(components, periods), start=1):
        if lh <= 0:
            raise NonPositivePart(f"period l_{h}={lh} is not positive")
        p = comp if isinstance(comp, Partition) else validate_partition(comp)
        if not is_l_partition(p, lh):
            raise NotLPartition(h, f"component {h} {p} is not a {lh}-partition")
        # blocks of l_h consecutive rows have equal length
        for start in range(0, len(p), lh):
            assert len(set(p.parts[start:start + lh])) == 1
        parts.append(p)
    return MultiPartitionInstance(tuple(parts), periods)


def flatten_sort(inst: MultiPartitionInstance) -> Partition:
    rows = sorted((x for c in inst.components for x in c.parts), reverse=True)
    return Partition(tuple(rows))


class Permutation:
    """A bijection of {1..m}, stored as the tuple of images of 1..m.

    Products compose right to left: ``(s * t)(x) == s(t(x))``.
    """

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise NotAPermutation(f"{images} is not a permutation of 1..{len(images)}")
        self.images = images

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(range(1, m + 1))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], m: int) -> "Permutation":
        images = list(range(1, m + 1))
        seen = set()
        for cyc in cycles:
            cyc = [int(x) for x in cyc]
            for x in cyc:
                if not 1 <= x <= m:
                    raise NotAPermutation(f"label {x} outside 1..{m}")
                if x in seen:
                    raise NotAPermutation(f"label {x} appears in more than one cycle")
                seen.add(x)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a - 1] = b
        return cls(images)

    @property
    def m(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.m != self.m:
            raise NotAPermutation("cannot compose permutations of different degrees")
        return Permutation(self.images[y - 1] for y in other.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.m
        for x, y in enumerate(self.images, start=1):
            inv[y - 1] = x
        return Permutation(inv)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def cycles(self, include_fixed: bool = True) -> list[tuple[int, ...]]:
        """Disjoint cycles, each starting at its minimum, ordered by minimum."""
        seen = set()
        out = []
        for start in range(1, self.m + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            if include_fixed or len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __repr__(self) -> str:
        cyc = self.cycles(include_fixed=False)
        if not cyc:
            return f"Permutation.identity({self.m})"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)


def cycle_type(p: Permutation) -> Partition:
    return Partition(tuple(sorted((len(c) for c in p.cycles()), reverse=True)))


def cycle_starts(rho: Partition) -> list[int]:
    """The first label n_{rho,i} of each canonical cycle."""
    starts, n = [], 1
    for part in rho.parts:
        starts.append(n)
        n += part
    return starts


def sigma_rho(rho: Partition | Sequence[int]) -> Permutation:
    rho = rho if isinstance(rho, Partition) else validate_partition(rho)
    return _sigma_rho(rho)


@lru_cache(maxsize=1024)
def _sigma_rho(rho: Partition) -> Permutation:
    cycles = [range(n, n + part) for n, part in zip(cycle_starts(rho), rho.parts)]
    return Permutation.from_cycles([list(c) for c in cycles], rho.m)


def conjugator(sigma: Permutation) -> Permutation:
    """Deterministic tau with tau * sigma_rho * tau^-1 == sigma.

    Cycles of sigma are taken longest first, ties broken by smallest element,
    each read from its smallest element; tau sends the canonical cycles of
    sigma_rho onto them position by position.
    """
    cycles = sorted(sigma.cycles(), key=lambda c: (-len(c), c[0]))
    images = [x for c in cycles for x in c]
    return Permutation(images)


def gamma_of(lh: int, j: int) -> int:
    """Multiplicative order of zeta_{lh}^j."""
    return lh // gcd(lh, j % lh)


@dataclass(frozen=True)
class RootSumValue:
    """sum_e coeffs[e] * zeta_order^e with nonnegative integer multiplicities.

    No cyclotomic reduction is performed; two values are equal only when the
    multiplicity vectors agree.
    """

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.order:
            raise OrderMismatch(f"{len(self.coeffs)} coefficients for order {self.order}")
        if any(c < 0 for c in self.coeffs):
            raise ValueError("multiplicities must be nonnegative")

    @classmethod
    def zero(cls, order: int) -> "RootSumValue":
        return cls(order, (0,) * order)

    def __add__(self, other: "RootSumValue") -> "RootSumValue":
        return root_sum_add(self, other)

    def approx(self) -> tuple[float, float]:
        return root_sum_eval(self)


def root_sum_add(a: RootSumValue, b: RootSumValue) -> RootSumValue:
    if a.order != b.order:
        raise OrderMismatch(f"cannot add values of order {a.order} and {b.order}")
    return RootSumValue(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def root_sum_scale_exponent(v: RootSumValue, k: int) -> RootSumValue:
    """Apply zeta -> zeta^k, moving the multiplicity at e to k*e mod order."""
    out = [0] * v.order
    for e, c in enumerate(v.coeffs):
        out[(k * e) % v.order] += c
    return RootSumValue(v.order, tuple(out))


def root_sum_eval(v: RootSumValue) -> tuple[float, float]:
    """Floating point value, for display only."""
    z = sum(c * cmath.exp(2j * cmath.pi * e / v.order) for e, c in enumerate(v.coeffs))
    re, im = z.real, z.imag
    # suppress -0.0 and 1e-16 noise in printed output
    re = 0.0 if abs(re) < 1e-12 else re
    im = 0.0 if abs(im) < 1e-12 else im
    return (re, im)
