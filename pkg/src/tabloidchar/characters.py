"""Characters of the quotient modules M^mu(k; l).

The quotient is never built as a vector space.  A tabloid <T> is identified
with zeta^{-k i} <T> a^i, so on orbit representatives every permutation acts
by a monomial matrix whose entries are powers of zeta_l.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .core import MultiPartitionInstance, Permutation, RootSumValue
from .errors import SizeMismatch, TabloidError
from .tabloids import (
    assignment_array,
    fixed_point_profile,
    shift_arrays,
    tabloid_count,
)

# the monomial matrix oracle keeps an integer key per tabloid
ORACLE_CAP = 10


@dataclass(frozen=True)
class ModuleSpec:
    instance: MultiPartitionInstance
    k: int

    def __post_init__(self):
        if not 0 <= self.k < self.instance.l:
            raise TabloidError(f"k={self.k} must lie in 0..{self.instance.l - 1}")


def character(spec: ModuleSpec, sigma: Permutation, cap: int | None = None, profile=None) -> RootSumValue:
    """Char(M^mu(k; l))(sigma) = sum_j (F_j / l) zeta^{k j}."""
    inst = spec.instance
    l = inst.l
    if profile is None:
        profile = fixed_point_profile(inst, sigma, cap)
    coeffs = [0] * l
    for j, f in enumerate(profile.counts):
        assert f % l == 0, "the right action is free, so counts are multiples of l"
        coeffs[(spec.k * j) % l] += f // l
    return RootSumValue(l, tuple(coeffs))


@dataclass(frozen=True)
class MonomialMatrix:
    """Sparse monomial matrix: column c has the single entry zeta^exponents[c]
    in row targets[c]."""

    order: int
    targets: np.ndarray
    exponents: np.ndarray

    def trace(self) -> RootSumValue:
        diag = self.targets == np.arange(len(self.targets))
        coeffs = np.bincount(self.exponents[diag], minlength=self.order)
        return RootSumValue(self.order, tuple(int(c) for c in coeffs))

    def dense(self) -> np.ndarray:
        n = len(self.targets)
        out = np.zeros((n, n), dtype=complex)
        for c, (r, e) in enumerate(zip(self.targets, self.exponents)):
            out[r, c] = cmath.exp(2j * cmath.pi * int(e) / self.order)
        return out


class _OrbitIndex:
    """Integer keys for tabloids and the least key of every <a>-orbit."""

    def __init__(self, inst: MultiPartitionInstance, cap: int | None):
        self.inst = inst
        self.base = max(inst.rows.count, 1)
        self.weights = self.base ** np.arange(inst.m, dtype=np.int64)[::-1]
        self.shifts = shift_arrays(inst)
        rows = assignment_array(inst, cap)
        keys = self.keys(rows)
        self.rep_keys = np.sort(keys[keys == self.orbit_min(rows)[0]])

    def keys(self, rows: np.ndarray) -> np.ndarray:
        return rows.astype(np.int64) @ self.weights

    def orbit_min(self, rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Least key in each orbit, and the i with rows = rep * a^i."""
        best = None
        best_i = None
        for i in range(self.inst.l):
            # <T> a^{-i} moves every label i rows down its block
            k = self.keys(self.shifts[i][rows])
            if best is None:
                best, best_i = k, np.zeros(len(k), dtype=np.int64)
            else:
                better = k < best
                best = np.where(better, k, best)
                best_i = np.where(better, i, best_i)
        return best, best_i

    def rep_rows(self) -> np.ndarray:
        out = np.zeros((len(self.rep_keys), self.inst.m), dtype=np.int8)
        k = self.rep_keys.copy()
        for x in range(self.inst.m - 1, -1, -1):
            out[:, x] = k % self.base
            k //= self.base
        return out


class TraceOracle:
    """Monomial matrices of permutations on the orbit representatives of one
    instance.  The representatives are computed once and shared by every
    permutation and every k."""

    def __init__(self, inst: MultiPartitionInstance, cap: int | None = None):
        self.inst = inst
        self.index = _OrbitIndex(inst, ORACLE_CAP if cap is None else cap)
        self.reps = self.index.rep_rows()
        if len(self.reps) * inst.l != tabloid_count(inst):
            raise TabloidError("orbits of the right action are not all of size l")

    def matrix(self, sigma: Permutation, k: int) -> MonomialMatrix:
        inst = self.inst
        if sigma.m != inst.m:
            raise SizeMismatch(f"permutation of degree {sigma.m} on an instance with m={inst.m}")
        # row of label y in sigma T is the row of sigma^{-1} y in T
        sinv = np.array(sigma.inverse().images, dtype=np.intp) - 1
        image = self.reps[:, sinv] if inst.m else self.reps
        min_key, power = self.index.orbit_min(image)
        targets = np.searchsorted(self.index.rep_keys, min_key)
        assert np.array_equal(self.index.rep_keys[targets], min_key)
        return MonomialMatrix(inst.l, targets, (k * power) % inst.l)

    def trace(self, sigma: Permutation, k: int) -> RootSumValue:
        return self.matrix(sigma, k).trace()


def monomial_matrix(spec: ModuleSpec, sigma: Permutation, cap: int | None = None) -> MonomialMatrix:
    return TraceOracle(spec.instance, cap).matrix(sigma, spec.k)


def character_trace_oracle(spec: ModuleSpec, sigma: Permutation, cap: int | None = None) -> RootSumValue:
    """Trace of the monomial matrix of sigma on orbit representatives."""
    return monomial_matrix(spec, sigma, cap).trace()


def weighted_character_sum(inst: MultiPartitionInstance, j: int, sigma: Permutation, cap: int | None = None,
                           profile=None) -> int:
    """sum_k zeta_l^{jk} Char(M^mu(k; l))(sigma), read off as a fixed-point count."""
    if profile is None:
        profile = fixed_point_profile(inst, sigma, cap)
    return profile.counts[(-j) % inst.l]


def weighted_character_sum_approx(inst: MultiPartitionInstance, j: int, sigma: Permutation,
                                  cap: int | None = None) -> complex:
    """The same sum evaluated in floating point from the individual characters."""
    l = inst.l
    profile = fixed_point_profile(inst, sigma, cap)
    total = 0j
    for k in range(l):
        chi = character(ModuleSpec(inst, k), sigma, profile=profile)
        value = sum(c * cmath.exp(2j * cmath.pi * e / l) for e, c in enumerate(chi.coeffs))
        total += cmath.exp(2j * cmath.pi * j * k / l) * value
    return total


def module_dimension(spec: ModuleSpec) -> int:
    return tabloid_count(spec.instance) // spec.instance.l
