"""Finite-difference operator for 1-D signals and its structured Gram algebra.

The operator maps a length-n signal x to the length-(n-1) vector of consecutive
differences, (Bx)_i = x_i - x_{i+1}.  Its Gram matrix BB^T is the tridiagonal
Toeplitz matrix with diagonal 2 and off-diagonals -1, whose inverse has the
closed form min(i,j) * (n - max(i,j)) / n in one-based indices.  Everything here
is matrix-free; dense matrices appear only in test oracles.
"""

from dataclasses import dataclass

import numpy as np

#: Upper bound on the spectrum of BB^T (eigenvalues are 2 - 2cos(k pi / n) < 4).
GRAM_NORM_BOUND = 4.0


def _as_signal(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape[-1] < 2:
        raise ValueError(f"signal length must be >= 2, got {x.shape[-1]}")
    return x


def apply_forward_difference(x) -> np.ndarray:
    """Consecutive differences along the last axis: out[i] = x[i] - x[i+1]."""
    x = _as_signal(x)
    return x[..., :-1] - x[..., 1:]


def apply_adjoint_difference(w) -> np.ndarray:
    """Adjoint map along the last axis, returning a signal one entry longer.

    out[0] = w[0], out[i] = w[i] - w[i-1] for interior i, out[-1] = -w[-1].
    """
    w = np.asarray(w, dtype=float)
    if w.shape[-1] < 1:
        raise ValueError("gradient vector must have length >= 1")
    n = w.shape[-1] + 1
    out = np.empty(w.shape[:-1] + (n,))
    out[..., 0] = w[..., 0]
    out[..., 1:-1] = w[..., 1:] - w[..., :-1]
    out[..., -1] = -w[..., -1]
    return out


def gram_matvec(u) -> np.ndarray:
    """Tridiagonal product (BB^T) u along the last axis."""
    u = np.asarray(u, dtype=float)
    out = 2.0 * u
    out[..., :-1] -= u[..., 1:]
    out[..., 1:] -= u[..., :-1]
    return out


def tv_seminorm(x) -> float:
    """Sum of absolute consecutive differences (zero for constant signals)."""
    return float(np.sum(np.abs(apply_forward_difference(x)), axis=-1))


def gram_inverse_entry(i: int, j: int, n: int) -> float:
    """Entry (i, j) of the (n-1) x (n-1) inverse Gram matrix, zero-based.

    Closed form (one-based indices a, b): a (n - b) / n for a <= b, symmetric
    otherwise.
    """
    if not (0 <= i <= n - 2 and 0 <= j <= n - 2):
        raise IndexError(f"indices ({i}, {j}) out of range for n={n}")
    a, b = min(i, j) + 1, max(i, j) + 1
    return a * (n - b) / n


def h_inverse_entry(i: int, j: int, l: int) -> float:
    """Entry (i, j) of the inverse of the l x l tridiagonal (2, -1) block, zero-based.

    The block equals the Gram matrix of a signal of length l+1, so the closed
    form is (one-based a <= b): a (l + 1 - b) / (l + 1).
    """
    if l < 1:
        raise IndexError(f"block size must be >= 1, got {l}")
    if not (0 <= i < l and 0 <= j < l):
        raise IndexError(f"indices ({i}, {j}) out of range for block size {l}")
    return gram_inverse_entry(i, j, l + 1)


def _solve_unit_block(rhs: np.ndarray) -> np.ndarray:
    """Solve H(l) t = rhs for one tridiagonal (2, -1) block.

    Thomas elimination for this matrix reduces to two cumulative sums: the
    forward sweep gives d_i = (sum_{j<=i} (j+1) rhs_j) / (i+2) and the back
    substitution t_i = (i+1) * sum_{j>=i} d_j / (j+1).
    """
    l = rhs.shape[0]
    idx = np.arange(1.0, l + 1.0)
    d = np.cumsum(idx * rhs) / (idx + 1.0)
    tail = np.cumsum((d / idx)[::-1])[::-1]
    return idx * tail


def solve_restricted_gram(pattern, rhs) -> np.ndarray:
    """Solve the Gram system restricted to a pattern's flat groups.

    The restriction of BB^T to the zero-gradient support is block diagonal, one
    tridiagonal (2, -1) block per flat group, so each group is solved
    independently.  ``rhs`` holds one entry per support index, in index order.
    """
    rhs = np.asarray(rhs, dtype=float)
    sizes = [e - b + 1 for b, e in pattern.groups]
    if rhs.shape != (sum(sizes),):
        raise ValueError(f"rhs length {rhs.shape} does not match support size {sum(sizes)}")
    out = np.empty_like(rhs)
    pos = 0
    for size in sizes:
        out[pos:pos + size] = _solve_unit_block(rhs[pos:pos + size])
        pos += size
    return out


@dataclass(frozen=True)
class DifferenceOperator:
    """Matrix-free forward-difference operator on signals of length n."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"signal length must be >= 2, got {self.n}")

    def forward(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.n:
            raise ValueError(f"expected signal of length {self.n}, got {x.shape[-1]}")
        return apply_forward_difference(x)

    def adjoint(self, w) -> np.ndarray:
        w = np.asarray(w, dtype=float)
        if w.shape[-1] != self.n - 1:
            raise ValueError(f"expected gradient of length {self.n - 1}, got {w.shape[-1]}")
        return apply_adjoint_difference(w)

    def gram(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        if u.shape[-1] != self.n - 1:
            raise ValueError(f"expected gradient of length {self.n - 1}, got {u.shape[-1]}")
        return gram_matvec(u)
