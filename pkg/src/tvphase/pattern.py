"""Flat-group structure of a signal and the weak-decomposability certificate.

A gradient index i (zero-based, pairing x[i] with x[i+1]) is in the support S
when the two samples are equal; there the subgradient coefficient is free in
[-1, 1].  Elsewhere it is pinned to the sign of x[i] - x[i+1].  The certificate
vector v0 fixes the free coefficients so that every S-row of (BB^T) v0 vanishes,
which makes the subdifferential weakly decomposable: B^T v0 is orthogonal to
B^T v - B^T v0 for every admissible v.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from tvphase.diffop import apply_adjoint_difference, gram_matvec, solve_restricted_gram
from tvphase.seeding import spawn_rng


@dataclass(frozen=True)
class GradientPattern:
    """Support groups and fixed signs of a signal's gradient.

    groups: maximal runs [b, e] (zero-based, inclusive) of gradient indices
        where consecutive samples tie; their union is the free support S.
    fixed_signs: sign (+1 or -1) of the gradient at every index outside S.
    """

    n: int
    groups: tuple = ()
    fixed_signs: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"signal length must be >= 2, got {self.n}")
        object.__setattr__(self, "groups", tuple(tuple(g) for g in self.groups))
        covered = set()
        prev_end = None
        for b, e in self.groups:
            if not (0 <= b <= e <= self.n - 2):
                raise ValueError(f"group [{b}, {e}] out of range for n={self.n}")
            if prev_end is not None and b - prev_end <= 1:
                raise ValueError("groups must be sorted and separated by a fixed index")
            covered.update(range(b, e + 1))
            prev_end = e
        fixed = set(self.fixed_signs)
        if covered & fixed:
            raise ValueError("an index cannot be both free and fixed")
        if covered | fixed != set(range(self.n - 1)):
            raise ValueError("groups and fixed_signs must partition all gradient indices")
        if any(s not in (-1, 1) for s in self.fixed_signs.values()):
            raise ValueError("fixed signs must be +1 or -1")

    @cached_property
    def free_indices(self) -> np.ndarray:
        if not self.groups:
            return np.empty(0, dtype=int)
        return np.concatenate([np.arange(b, e + 1) for b, e in self.groups])

    @cached_property
    def fixed_indices(self) -> np.ndarray:
        return np.array(sorted(self.fixed_signs), dtype=int)

    @cached_property
    def fixed_sign_values(self) -> np.ndarray:
        return np.array([self.fixed_signs[i] for i in sorted(self.fixed_signs)], dtype=float)

    @property
    def support_size(self) -> int:
        return sum(e - b + 1 for b, e in self.groups)

    def fixed_vector(self) -> np.ndarray:
        """Length n-1 vector with the pinned signs and zeros on the support."""
        v = np.zeros(self.n - 1)
        v[self.fixed_indices] = self.fixed_sign_values
        return v

    def contains(self, v, box_tol: float = 0.0) -> bool:
        """Whether v is an admissible subgradient coefficient vector."""
        v = np.asarray(v, dtype=float)
        if v.shape != (self.n - 1,):
            return False
        if self.fixed_indices.size and not np.array_equal(
            v[self.fixed_indices], self.fixed_sign_values
        ):
            return False
        free = self.free_indices
        return bool(free.size == 0 or np.all(np.abs(v[free]) <= 1.0 + box_tol))


def extract_pattern(x, tie_tol: float = 0.0, require_nonzero: bool = False) -> GradientPattern:
    """Read the flat-group pattern off a signal.

    Index i joins the free support when |x[i] - x[i+1]| <= tie_tol (default 0:
    exact ties only; callers with noisy floats must opt into a tolerance).
    With require_nonzero=True the all-zero signal is rejected, matching the
    hypothesis under which the certificate construction is stated.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size < 2:
        raise ValueError("signal must be one-dimensional with length >= 2")
    if not np.all(np.isfinite(x)):
        raise ValueError("signal must be finite")
    if tie_tol < 0:
        raise ValueError("tie_tol must be nonnegative")
    if require_nonzero and np.all(x == 0.0):
        raise ValueError("signal is identically zero")
    diff = x[:-1] - x[1:]
    flat = np.abs(diff) <= tie_tol
    groups = []
    fixed_signs = {}
    i = 0
    while i < flat.size:
        if flat[i]:
            j = i
            while j + 1 < flat.size and flat[j + 1]:
                j += 1
            groups.append((i, j))
            i = j + 1
        else:
            fixed_signs[i] = 1 if diff[i] > 0 else -1
            i += 1
    return GradientPattern(n=x.size, groups=tuple(groups), fixed_signs=fixed_signs)


def random_pattern(n: int, k: int, seed: int) -> GradientPattern:
    """Pattern with k uniformly placed fixed indices carrying uniform signs."""
    if not 0 <= k <= n - 1:
        raise ValueError(f"k must be in [0, {n - 1}], got {k}")
    rng = spawn_rng(seed)
    fixed = np.sort(rng.choice(n - 1, size=k, replace=False))
    signs = rng.choice([-1, 1], size=k)
    fixed_signs = {int(i): int(s) for i, s in zip(fixed, signs)}
    free_mask = np.ones(n - 1, dtype=bool)
    free_mask[fixed] = False
    groups = []
    i = 0
    while i < n - 1:
        if free_mask[i]:
            j = i
            while j + 1 < n - 1 and free_mask[j + 1]:
                j += 1
            groups.append((i, j))
            i = j + 1
        else:
            i += 1
    return GradientPattern(n=n, groups=tuple(groups), fixed_signs=fixed_signs)


def construct_v0(pattern: GradientPattern) -> np.ndarray:
    """Certificate vector: pinned signs outside S, blockwise Gram solve on S.

    On each flat group the free coefficients solve the restricted system whose
    right-hand side couples only to the group's (at most two) fixed neighbours,
    so the solution stays in [-1, 1] coordinatewise.
    """
    v0 = pattern.fixed_vector()
    if pattern.support_size == 0:
        return v0
    rhs = np.zeros(pattern.support_size)
    pos = 0
    for b, e in pattern.groups:
        size = e - b + 1
        if b - 1 >= 0:
            rhs[pos] += v0[b - 1]
        if e + 1 <= pattern.n - 2:
            rhs[pos + size - 1] += v0[e + 1]
        pos += size
    v0[pattern.free_indices] = solve_restricted_gram(pattern, rhs)
    return v0


def interpolate_v0(pattern: GradientPattern) -> np.ndarray:
    """Certificate vector by linear interpolation across each flat group.

    Independent construction used to cross-check construct_v0: across a group
    [b, e] the values interpolate between the neighbouring pinned signs, with
    value 0 at the virtual anchor positions -1 and n-1.
    """
    v0 = pattern.fixed_vector()
    for b, e in pattern.groups:
        left = v0[b - 1] if b - 1 >= 0 else 0.0
        right = v0[e + 1] if e + 1 <= pattern.n - 2 else 0.0
        span = (e + 1) - (b - 1)
        offsets = np.arange(1, e - b + 2)
        v0[b:e + 1] = left + (right - left) * offsets / span
    return v0


@dataclass(frozen=True)
class SubgradientCertificate:
    """Residual record proving (or refuting) weak decomposability of v0."""

    pattern: GradientPattern
    v0: np.ndarray
    max_abs: float
    row_residual: float
    orthogonality_residual: float
    tol: float
    passed: bool


def verify_weak_decomposability(
    pattern: GradientPattern,
    v0,
    tol: float = 1e-9,
    n_samples: int = 100,
    seed: int = 0,
) -> SubgradientCertificate:
    """Check box feasibility, the S-row condition, and sampled orthogonality.

    The row condition ((BB^T) v0 vanishing on the free support) is the exact
    algebraic form of weak decomposability; the sampled inner products
    <B^T v - B^T v0, B^T v0> over random admissible v are a redundant guard.
    A violated tolerance yields passed=False rather than an exception, since
    failure signals an implementation bug, not a user error.
    """
    v0 = np.asarray(v0, dtype=float)
    if v0.shape != (pattern.n - 1,):
        raise ValueError(f"v0 must have length {pattern.n - 1}")

    max_abs = float(np.max(np.abs(v0))) if v0.size else 0.0
    fixed_ok = np.array_equal(v0[pattern.fixed_indices], pattern.fixed_sign_values)

    free = pattern.free_indices
    if free.size:
        row_residual = float(np.max(np.abs(gram_matvec(v0)[free])))
    else:
        row_residual = 0.0

    orth_residual = 0.0
    if free.size and n_samples > 0:
        rng = spawn_rng(seed)
        w0 = apply_adjoint_difference(v0)
        samples = np.tile(v0, (n_samples, 1))
        samples[:, free] = rng.uniform(-1.0, 1.0, size=(n_samples, free.size))
        diffs = apply_adjoint_difference(samples) - w0
        orth_residual = float(np.max(np.abs(diffs @ w0)))

    passed = bool(
        fixed_ok
        and max_abs <= 1.0 + tol
        and row_residual <= tol
        and orth_residual <= tol
    )
    return SubgradientCertificate(
        pattern=pattern,
        v0=v0,
        max_abs=max_abs,
        row_residual=row_residual,
        orthogonality_residual=orth_residual,
        tol=tol,
        passed=passed,
    )
