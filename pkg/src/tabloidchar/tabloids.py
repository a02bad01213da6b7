"""Numberings and tabloids on a tuple of diagrams, the two group actions on
them, exhaustive enumeration and fixed-point profiles."""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from itertools import combinations
from math import factorial, prod
from typing import Iterator, Sequence

import numpy as np

from .core import MultiPartitionInstance, Permutation
from .errors import CapExceeded, InvalidNumbering, SizeMismatch

DEFAULT_CAP = 12
# the vectorized paths hold one int8 per box per tabloid
MAX_ARRAY_TABLOIDS = 20_000_000

Rows = tuple[tuple[tuple[int, ...], ...], ...]


def _freeze(rows) -> Rows:
    return tuple(tuple(tuple(int(x) for x in row) for row in comp) for comp in rows)


def _check_layout(inst: MultiPartitionInstance, rows: Rows) -> None:
    if len(rows) != inst.n:
        raise InvalidNumbering(f"expected {inst.n} components, got {len(rows)}")
    for h, (comp, part) in enumerate(zip(rows, inst.components), start=1):
        if tuple(len(r) for r in comp) != part.parts:
            raise InvalidNumbering(f"component {h} has row lengths {[len(r) for r in comp]}, expected {list(part.parts)}")
    labels = sorted(x for comp in rows for row in comp for x in row)
    if labels != list(range(1, inst.m + 1)):
        raise InvalidNumbering(f"labels must be exactly 1..{inst.m}")


@dataclass(frozen=True)
class Numbering:
    rows: Rows
    periods: tuple[int, ...]

    @classmethod
    def on(cls, inst: MultiPartitionInstance, rows) -> "Numbering":
        rows = _freeze(rows)
        _check_layout(inst, rows)
        return cls(rows, inst.periods)


@total_ordering
@dataclass(frozen=True)
class Tabloid:
    """Row-equivalence class, stored as the numbering with ascending rows."""

    rows: Rows
    periods: tuple[int, ...]

    @classmethod
    def on(cls, inst: MultiPartitionInstance, rows) -> "Tabloid":
        rows = _freeze(rows)
        _check_layout(inst, rows)
        return cls(tuple(tuple(tuple(sorted(r)) for r in comp) for comp in rows), inst.periods)

    @property
    def m(self) -> int:
        return sum(len(r) for comp in self.rows for r in comp)

    @property
    def word(self) -> tuple[int, ...]:
        return tuple(x for comp in self.rows for row in comp for x in row)

    def __lt__(self, other: "Tabloid") -> bool:
        return self.word < other.word

    def assignment(self) -> tuple[int, ...]:
        """Global row index (0-based) of each label 1..m."""
        out = [0] * self.m
        g = 0
        for comp in self.rows:
            for row in comp:
                for x in row:
                    out[x - 1] = g
                g += 1
        return tuple(out)

    def row_of(self, label: int) -> tuple[int, int]:
        """(component, row) of ``label``, both 1-based."""
        for h, comp in enumerate(self.rows, start=1):
            for i, row in enumerate(comp, start=1):
                if label in row:
                    return h, i
        raise KeyError(label)

    def to_json(self) -> list:
        return [[list(r) for r in comp] for comp in self.rows]

    def __str__(self) -> str:
        return "(" + ",".join("(" + ",".join("".join(map(str, r)) if self.m < 10 else " ".join(map(str, r)) for r in comp) + ")" for comp in self.rows) + ")"


def tabloid_from_assignment(inst: MultiPartitionInstance, assignment: Sequence[int]) -> Tabloid:
    layout = inst.rows
    buckets = [[] for _ in range(layout.count)]
    for label, g in enumerate(assignment, start=1):
        buckets[int(g)].append(label)
    rows = []
    for h in range(inst.n):
        rows.append(tuple(tuple(buckets[g]) for g in layout.rows_of(h)))
    return Tabloid(tuple(rows), inst.periods)


def canonical_numbering(inst: MultiPartitionInstance) -> Numbering:
    rows, n = [], 1
    for comp in inst.components:
        crow = []
        for width in comp.parts:
            crow.append(tuple(range(n, n + width)))
            n += width
        rows.append(tuple(crow))
    return Numbering(tuple(rows), inst.periods)


def a_permutation(inst: MultiPartitionInstance) -> Permutation:
    """Product of the column cycles of length l_h inside every block of rows
    of the canonical numbering."""
    t = canonical_numbering(inst)
    cycles = []
    for comp, lh in zip(t.rows, inst.periods):
        if lh == 1:
            continue
        for top in range(0, len(comp), lh):
            for col in range(len(comp[top])):
                cycles.append([comp[top + s][col] for s in range(lh)])
    return Permutation.from_cycles(cycles, inst.m)


def canonicalize(n: Numbering) -> Tabloid:
    return Tabloid(tuple(tuple(tuple(sorted(r)) for r in comp) for comp in n.rows), n.periods)


def left_act(sigma: Permutation, t: Tabloid) -> Tabloid:
    if sigma.m != t.m:
        raise SizeMismatch(f"permutation of degree {sigma.m} acting on {t.m} labels")
    img = sigma.images
    return Tabloid(
        tuple(tuple(tuple(sorted(img[x - 1] for x in r)) for r in comp) for comp in t.rows),
        t.periods,
    )


def right_act_a(t: Tabloid, i: int) -> Tabloid:
    """t * a^i: row r of each block of the result is row r+i of t."""
    rows = []
    for comp, lh in zip(t.rows, t.periods):
        new = []
        for r in range(len(comp)):
            top = r - r % lh
            new.append(comp[top + (r % lh + i) % lh])
        rows.append(tuple(new))
    return Tabloid(tuple(rows), t.periods)


def numbering_to_permutation(inst: MultiPartitionInstance, n: Numbering) -> Permutation:
    """The unique tau_T with T = tau_T t_mu."""
    t = canonical_numbering(inst)
    images = [0] * inst.m
    for tc, nc in zip(t.rows, n.rows):
        for trow, nrow in zip(tc, nc):
            for a, b in zip(trow, nrow):
                images[a - 1] = b
    return Permutation(images)


def right_act_via_permutation(inst: MultiPartitionInstance, n: Numbering, i: int) -> Tabloid:
    """T a^i computed as tau_T a^i t_mu; a cross-check for right_act_a."""
    tau = numbering_to_permutation(inst, n)
    a = a_permutation(inst)
    power = Permutation.identity(inst.m)
    for _ in range(i % inst.l):
        power = power * a
    g = tau * power
    t = canonical_numbering(inst)
    return canonicalize(Numbering(tuple(tuple(tuple(g(x) for x in r) for r in comp) for comp in t.rows), inst.periods))


def tabloid_count(inst: MultiPartitionInstance) -> int:
    return factorial(inst.m) // prod(factorial(x) for c in inst.components for x in c.parts)


def _check_cap(inst: MultiPartitionInstance, cap: int | None) -> None:
    cap = DEFAULT_CAP if cap is None else cap
    if inst.m > cap:
        raise CapExceeded(inst.m, cap)


def enumerate_tabloids(inst: MultiPartitionInstance, cap: int | None = None) -> Iterator[Tabloid]:
    """Every tabloid once, in lexicographic order of the row-reading word."""
    _check_cap(inst, cap)
    widths = [w for c in inst.components for w in c.parts]
    splits = [len(c) for c in inst.components]

    def rec(g, remaining):
        if g == len(widths):
            yield ()
            return
        for row in combinations(remaining, widths[g]):
            chosen = set(row)
            rest = tuple(x for x in remaining if x not in chosen)
            for tail in rec(g + 1, rest):
                yield (row,) + tail

    for flat in rec(0, tuple(range(1, inst.m + 1))):
        rows, k = [], 0
        for s in splits:
            rows.append(flat[k:k + s])
            k += s
        yield Tabloid(tuple(rows), inst.periods)


def assignment_array(inst: MultiPartitionInstance, cap: int | None = None) -> np.ndarray:
    """All tabloids as an (N, m) array of 0-based global row indices per label.

    Row order of the array is unspecified; use enumerate_tabloids when the
    documented order matters.
    """
    _check_cap(inst, cap)
    total = tabloid_count(inst)
    if total > MAX_ARRAY_TABLOIDS:
        raise CapExceeded(inst.m, cap if cap is not None else DEFAULT_CAP)
    widths = np.array(inst.rows.length, dtype=np.int16)
    states = np.zeros((1, 0), dtype=np.int8)
    caps = widths[None, :].copy()
    for _ in range(inst.m):
        new_states, new_caps = [], []
        for r in range(len(widths)):
            mask = caps[:, r] > 0
            if not mask.any():
                continue
            s = states[mask]
            c = caps[mask].copy()
            c[:, r] -= 1
            new_states.append(np.hstack([s, np.full((len(s), 1), r, dtype=np.int8)]))
            new_caps.append(c)
        states = np.vstack(new_states)
        caps = np.vstack(new_caps)
    assert len(states) == total
    return states


def shift_arrays(inst: MultiPartitionInstance) -> list[np.ndarray]:
    """shift_arrays(inst)[d][g] is the row reached from row g by moving d places
    down inside its block (cyclically)."""
    layout = inst.rows
    return [np.array(layout.shift_table(d), dtype=np.int8) for d in range(inst.l)]


def eigen_mask(inst: MultiPartitionInstance, rows: np.ndarray, sigma: Permutation, j: int) -> np.ndarray:
    """Boolean mask of rows of an assignment array with sigma<T> = <T> a^j.

    sigma<T> = <T>a^j  iff  row(sigma x) = shift(row(x), j) for every label x.
    """
    if rows.shape[1] == 0:
        return np.ones(len(rows), dtype=bool)
    s = np.array(sigma.images, dtype=np.intp) - 1
    shifts = shift_arrays(inst)
    return np.all(rows[:, s] == shifts[j % inst.l][rows], axis=1)


@dataclass(frozen=True)
class FixedPointProfile:
    """counts[j] = #{<T> : sigma<T> = <T> a^j} for j = 0..l-1."""

    counts: tuple[int, ...]
    sigma: Permutation

    @property
    def l(self) -> int:
        return len(self.counts)


def fixed_point_profile(inst: MultiPartitionInstance, sigma: Permutation, cap: int | None = None,
                        rows: np.ndarray | None = None) -> FixedPointProfile:
    if sigma.m != inst.m:
        raise SizeMismatch(f"permutation of degree {sigma.m} on an instance with m={inst.m}")
    if rows is None:
        rows = assignment_array(inst, cap)
    counts = tuple(int(eigen_mask(inst, rows, sigma, j).sum()) for j in range(inst.l))
    return FixedPointProfile(counts, sigma)


def orbit_representatives(inst: MultiPartitionInstance, cap: int | None = None) -> Iterator[Tabloid]:
    """The lexicographically least tabloid of each <a>-orbit, in enumeration order."""
    l = inst.l
    for t in enumerate_tabloids(inst, cap):
        w = t.word
        if all(w < right_act_a(t, i).word for i in range(1, l)):
            yield t
