"""Gaussian mean-square distances to the scaled subdifferential and its cone.

For a pattern with free support S and pinned signs elsewhere, the admissible
subgradients are B^T v with v_S in [-1, 1]^|S| and v pinned outside S.  The
squared distance from g to the set scaled by lambda,

    dist^2(g, lambda * dF) = min_v || g - lambda B^T v ||^2,

is computed by projected gradient descent on the substituted variable
u = lambda v (box [-lambda, lambda] on S), where the fixed step 1/4 matches the
spectral bound 4 on BB^T; in the original variable this is the fixed step
1/(4 lambda^2).  The distance to the cone of the subdifferential is the minimum
of the scaled distance over lambda >= 0, which is convex in lambda (partial
minimization of a jointly convex problem over the cone
{(lambda, u): |u_S| <= lambda, u_Sc = lambda * signs}), so a golden-section
search over an expanding bracket locates it.

Monte Carlo estimators average these distances over g ~ N(0, I_n) with
per-sample derived seeds and index-ordered reduction, so results do not depend
on scheduling.  The scale minimization uses common random numbers: one fixed
sample set evaluated at every candidate lambda.
"""

import logging
from dataclasses import dataclass

import numpy as np

from tvphase.diffop import apply_adjoint_difference
from tvphase.pattern import GradientPattern, random_pattern
from tvphase.seeding import gaussian_samples, spawn_rng

logger = logging.getLogger(__name__)

_INV_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0

#: Additive slack of the sandwich bound between min-over-scale and cone values.
SANDWICH_BOUND = 6.0

DEFAULT_TOL = 1e-9
DEFAULT_MAX_ITER = 100_000
DEFAULT_LAM_TOL = 1e-6
DEFAULT_LAM_CAP = 1e6


@dataclass(frozen=True)
class DistanceResult:
    """Value and minimizer of one box-constrained distance computation."""

    value: float
    minimizer_v: np.ndarray
    lam: float
    iterations: int
    kkt_residual: float
    cap_reached: bool = False


@dataclass(frozen=True)
class DimensionEstimate:
    """Monte Carlo mean-square distance with its standard error."""

    mean: float
    stderr: float
    samples: int
    lambda_star: float | None = None
    cap_reached: bool = False


@dataclass(frozen=True)
class CurvePoint:
    """One point of the predicted phase-transition curve."""

    epsilon: float
    delta_pred: float
    stderr: float
    lambda_star: float
    samples: int
    n: int
    seed: int


@dataclass(frozen=True)
class SandwichReport:
    """Common-random-number comparison of the two dimension estimates."""

    scaled: DimensionEstimate
    cone: DimensionEstimate
    difference: float
    diff_stderr: float
    bound: float
    sigma_mult: float
    passed: bool


def epsilon_to_k(epsilon: float, n: int) -> int:
    """Gradient sparsity k corresponding to the fraction epsilon = k/(n-1)."""
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must be in [0, 1], got {epsilon}")
    return int(round(epsilon * (n - 1)))


def _decrease_tol(val: np.ndarray | float):
    return 1e-11 * (1.0 + np.abs(val))


class _BoxDistance:
    """Batched projected-gradient solver for one pattern, with warm starts."""

    def __init__(self, pattern: GradientPattern, tol: float, max_iter: int):
        self.pattern = pattern
        self.tol = tol
        self.max_iter = max_iter
        self.free = pattern.free_indices
        self.fixed = pattern.fixed_indices
        self.signs = pattern.fixed_sign_values

    def solve(self, G: np.ndarray, lam_rows: np.ndarray, u0: np.ndarray | None = None):
        """Minimize ||g - B^T u||^2 rowwise over the per-row box of radius lam.

        G is (s, n); lam_rows is broadcastable to (s,).  u0 is a warm start for
        the free coordinates.  Returns (u, values, pg, iters) where pg is the
        projected-gradient norm in the v variable (the reported KKT residual).
        """
        s, n = G.shape
        lam_rows = np.broadcast_to(np.asarray(lam_rows, dtype=float), (s,)).astype(float)
        nfree = self.free.size

        U = np.zeros((s, n - 1))
        if self.fixed.size:
            U[:, self.fixed] = lam_rows[:, None] * self.signs

        if nfree == 0:
            r = G - apply_adjoint_difference(U)
            values = np.einsum("ij,ij->i", r, r)
            return np.zeros((s, 0)), values, np.zeros(s), np.zeros(s, dtype=int)

        box = lam_rows[:, None]
        u = np.zeros((s, nfree)) if u0 is None else np.clip(u0, -box, box)

        u_out = np.empty((s, nfree))
        pg_out = np.empty(s)
        it_out = np.empty(s, dtype=int)
        rows = np.arange(s)

        it = 0
        while True:
            it += 1
            U[:, self.free] = u
            r = G - apply_adjoint_difference(U)
            br = r[:, :-1] - r[:, 1:]
            u_new = np.clip(u + 0.25 * br[:, self.free], -box, box)
            delta = u - u_new
            pg = 4.0 * lam_rows * np.sqrt(np.einsum("ij,ij->i", delta, delta))
            u = u_new

            stalled = np.max(np.abs(delta), axis=1) <= 1e-15 * (1.0 + np.max(np.abs(u), axis=1))
            done = (pg <= self.tol) | stalled
            if it >= self.max_iter:
                done[:] = True
                logger.debug("projected gradient hit iteration cap %d", self.max_iter)
            if np.any(done):
                idx = rows[done]
                u_out[idx] = u[done]
                pg_out[idx] = pg[done]
                it_out[idx] = it
                if np.all(done):
                    break
                keep = ~done
                rows, u, lam_rows, box = rows[keep], u[keep], lam_rows[keep], box[keep]
                G, U = G[keep], U[keep]

        full_lam = np.broadcast_to(
            np.zeros(1), (s,)
        )  # placeholder replaced below; values recomputed per final u
        del full_lam
        values = self._values(u_out, pg_out, it_out)
        return u_out, values, pg_out, it_out

    def _values(self, u, pg, it):
        raise NotImplementedError  # populated in __init__ wrapper below


def _solve_box(pattern, G, lam_rows, u0, tol, max_iter):
    """Functional wrapper for the batched solve; returns (u, values, pg, iters)."""
    free = pattern.free_indices
    fixed = pattern.fixed_indices
    signs = pattern.fixed_sign_values
    s, n = G.shape
    lam_rows = np.broadcast_to(np.asarray(lam_rows, dtype=float), (s,)).astype(float)
    lam_all = lam_rows.copy()
    nfree = free.size

    def residual(u_rows, lam_sub, g_rows):
        U = np.zeros((u_rows.shape[0], n - 1))
        if fixed.size:
            U[:, fixed] = lam_sub[:, None] * signs
        if nfree:
            U[:, free] = u_rows
        return g_rows - apply_adjoint_difference(U)

    if nfree == 0:
        r = residual(np.zeros((s, 0)), lam_rows, G)
        values = np.einsum("ij,ij->i", r, r)
        return np.zeros((s, 0)), values, np.zeros(s), np.zeros(s, dtype=int)

    box = lam_rows[:, None]
    u = np.zeros((s, nfree)) if u0 is None else np.clip(np.asarray(u0, dtype=float), -box, box)

    u_out = np.empty((s, nfree))
    pg_out = np.empty(s)
    it_out = np.empty(s, dtype=int)
    rows = np.arange(s)
    G_act = G

    it = 0
    while True:
        it += 1
        r = residual(u, lam_rows, G_act)
        br = r[:, :-1] - r[:, 1:]
        u_new = np.clip(u + 0.25 * br[:, free], -box, box)
        delta = u - u_new
        pg = 4.0 * lam_rows * np.sqrt(np.einsum("ij,ij->i", delta, delta))
        u = u_new

        stalled = np.max(np.abs(delta), axis=1) <= 1e-15 * (1.0 + np.max(np.abs(u), axis=1))
        done = (pg <= tol) | stalled
        if it >= max_iter:
            done[:] = True
            logger.debug("projected gradient hit iteration cap %d", max_iter)
        if np.any(done):
            idx = rows[done]
            u_out[idx] = u[done]
            pg_out[idx] = pg[done]
            it_out[idx] = it
            if np.all(done):
                break
            keep = ~done
            rows, u, lam_rows, box = rows[keep], u[keep], lam_rows[keep], box[keep]
            G_act = G_act[keep]

    r = residual(u_out, lam_all, G)
    values = np.einsum("ij,ij->i", r, r)
    return u_out, values, pg_out, it_out


def dist_sq_scaled_subdiff(
    g,
    lam: float,
    pattern: GradientPattern,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    v_init=None,
) -> DistanceResult:
    """Squared distance from g to the subdifferential set scaled by lam.

    Solved by projected gradient with the fixed step dictated by the spectral
    bound on BB^T, stopping when the projected-gradient norm drops below tol
    (or no further float progress is possible, with the achieved residual
    reported).  lam = 0 degenerates to ||g||^2.
    """
    g = np.asarray(g, dtype=float)
    if g.ndim != 1 or g.size != pattern.n:
        raise ValueError(f"g must have length {pattern.n}")
    if not np.all(np.isfinite(g)) or not np.isfinite(lam):
        raise ValueError("inputs must be finite")
    if lam < 0:
        raise ValueError("lam must be nonnegative")
    if tol <= 0:
        raise ValueError("tol must be positive")

    if lam == 0.0:
        return DistanceResult(
            value=float(g @ g),
            minimizer_v=pattern.fixed_vector(),
            lam=0.0,
            iterations=0,
            kkt_residual=0.0,
        )

    u0 = None
    if v_init is not None:
        v_init = np.asarray(v_init, dtype=float)
        u0 = (lam * v_init[pattern.free_indices])[None, :]
    u, values, pg, iters = _solve_box(pattern, g[None, :], np.array([lam]), u0, tol, max_iter)
    v = pattern.fixed_vector()
    if pattern.free_indices.size:
        v[pattern.free_indices] = u[0] / lam
    return DistanceResult(
        value=float(values[0]),
        minimizer_v=v,
        lam=float(lam),
        iterations=int(iters[0]),
        kkt_residual=float(pg[0]),
    )


def _cone_min_batched(
    G,
    pattern,
    tol,
    max_iter,
    lam_tol,
    lam_cap,
    lam0=1.0,
):
    """Per-row minimization over lam >= 0 of the scaled distance, in lockstep.

    Bracket expansion doubles lam until the objective stops decreasing (or the
    cap is hit, which is flagged); golden section then shrinks each row's
    bracket.  Warm starts are rescaled with lam between evaluations.  Returns
    (values, lam_star, capped, pg_last, total_inner_iters).
    """
    s, n = G.shape
    nfree = pattern.free_indices.size
    phi0 = np.einsum("ij,ij->i", G, G)

    warm = np.zeros((s, nfree))
    lam_last = np.zeros(s)
    pg_last = np.zeros(s)
    inner_total = 0

    def eval_at(lams, rows):
        nonlocal inner_total
        scale = np.ones(rows.size)
        old = lam_last[rows]
        np.divide(lams, old, out=scale, where=old > 0)
        u0 = warm[rows] * scale[:, None] if nfree else None
        u, vals, pg, iters = _solve_box(pattern, G[rows], lams, u0, tol, max_iter)
        if nfree:
            warm[rows] = u
        lam_last[rows] = lams
        pg_last[rows] = pg
        inner_total += int(np.sum(iters))
        return vals

    all_rows = np.arange(s)

    # Bracket expansion.
    a = np.zeros(s)
    prev_lam = np.zeros(s)
    prev_val = phi0.copy()
    cur_lam = np.full(s, float(lam0))
    cur_val = eval_at(cur_lam, all_rows)
    capped = np.zeros(s, dtype=bool)
    expanding = np.ones(s, dtype=bool)
    while np.any(expanding):
        rows = all_rows[expanding]
        decreasing = cur_val[rows] < prev_val[rows] - _decrease_tol(prev_val[rows])
        expanding[rows[~decreasing]] = False
        rows = rows[decreasing]
        if rows.size == 0:
            break
        at_cap = cur_lam[rows] >= lam_cap
        capped[rows[at_cap]] = True
        expanding[rows[at_cap]] = False
        rows = rows[~at_cap]
        if rows.size == 0:
            break
        a[rows] = prev_lam[rows]
        prev_lam[rows] = cur_lam[rows]
        prev_val[rows] = cur_val[rows]
        cur_lam[rows] = np.minimum(cur_lam[rows] * 2.0, lam_cap)
        cur_val[rows] = eval_at(cur_lam[rows], rows)

    values = np.where(capped, cur_val, np.inf)
    lam_star = np.where(capped, cur_lam, 0.0)

    search = all_rows[~capped]
    if search.size:
        b = cur_lam[search].copy()
        lo = a[search].copy()
        width = b - lo
        x1 = b - _INV_GOLDEN * width
        x2 = lo + _INV_GOLDEN * width
        f1 = eval_at(x1, search)
        f2 = eval_at(x2, search)
        active = width > lam_tol * (1.0 + b)
        while np.any(active):
            idx = np.flatnonzero(active)
            rows = search[idx]
            left = f1[idx] < f2[idx]

            li = idx[left]
            b[li] = x2[li]
            x2[li] = x1[li]
            f2[li] = f1[li]
            x1[li] = b[li] - _INV_GOLDEN * (b[li] - lo[li])

            ri = idx[~left]
            lo[ri] = x1[ri]
            x1[ri] = x2[ri]
            f1[ri] = f2[ri]
            x2[ri] = lo[ri] + _INV_GOLDEN * (b[ri] - lo[ri])

            new_lams = np.where(left, x1[idx], x2[idx])
            new_vals = eval_at(new_lams, rows)
            f1[idx[left]] = new_vals[left]
            f2[idx[~left]] = new_vals[~left]
            active[idx] = (b[idx] - lo[idx]) > lam_tol * (1.0 + b[idx])

        best_interior = np.where(f1 < f2, f1, f2)
        best_lam = np.where(f1 < f2, x1, x2)
        use_zero = phi0[search] < best_interior
        values[search] = np.where(use_zero, phi0[search], best_interior)
        lam_star[search] = np.where(use_zero, 0.0, best_lam)

    return values, lam_star, capped, pg_last, inner_total


def dist_sq_cone(
    g,
    pattern: GradientPattern,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    lam_tol: float = DEFAULT_LAM_TOL,
    lam_cap: float = DEFAULT_LAM_CAP,
) -> DistanceResult:
    """Squared distance from g to the cone of the subdifferential.

    Golden-section search over the scale on an expanding bracket, warm-starting
    the inner box solve.  A bracket that is still descending at lam_cap returns
    the capped evaluation with cap_reached set.
    """
    g = np.asarray(g, dtype=float)
    if g.ndim != 1 or g.size != pattern.n:
        raise ValueError(f"g must have length {pattern.n}")
    if not np.all(np.isfinite(g)):
        raise ValueError("g must be finite")
    if tol <= 0:
        raise ValueError("tol must be positive")

    values, lam_star, capped, pg, inner = _cone_min_batched(
        g[None, :], pattern, tol, max_iter, lam_tol, lam_cap
    )
    lam = float(lam_star[0])
    if lam > 0:
        final = dist_sq_scaled_subdiff(g, lam, pattern, tol=tol, max_iter=max_iter)
        v = final.minimizer_v
        value = min(float(values[0]), final.value)
        kkt = final.kkt_residual
    else:
        v = pattern.fixed_vector()
        value = float(values[0])
        kkt = 0.0
    return DistanceResult(
        value=value,
        minimizer_v=v,
        lam=lam,
        iterations=int(inner),
        kkt_residual=kkt,
        cap_reached=bool(capped[0]),
    )


def estimate_expected_dist(
    pattern: GradientPattern,
    lam: float,
    samples: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> DimensionEstimate:
    """Monte Carlo mean of dist^2(g, lam * dF) over g ~ N(0, I_n)."""
    if samples < 2:
        raise ValueError("samples must be >= 2")
    G = gaussian_samples(seed, samples, pattern.n)
    _, values, _, _ = _solve_box(pattern, G, np.full(samples, float(lam)), None, tol, max_iter)
    return DimensionEstimate(
        mean=float(np.mean(values)),
        stderr=float(np.std(values, ddof=1) / np.sqrt(samples)),
        samples=samples,
    )


def minimize_expected_dist(
    pattern: GradientPattern,
    samples: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    lam_tol: float = DEFAULT_LAM_TOL,
    lam_cap: float = DEFAULT_LAM_CAP,
    lam0: float = 1.0,
) -> DimensionEstimate:
    """Minimize the sample-average scaled distance over the scale.

    Common random numbers: the same Gaussian sample set is evaluated at every
    candidate lambda, so the sample-average objective is a fixed convex
    function of lambda and the golden-section search is exact to tolerance.
    """
    if samples < 2:
        raise ValueError("samples must be >= 2")
    G = gaussian_samples(seed, samples, pattern.n)
    nfree = pattern.free_indices.size
    warm = {"u": np.zeros((samples, nfree)), "lam": 0.0}

    def phi(lam: float) -> float:
        scale = lam / warm["lam"] if warm["lam"] > 0 else 0.0
        u0 = warm["u"] * scale if nfree else None
        u, vals, _, _ = _solve_box(
            pattern, G, np.full(samples, lam), u0, tol, max_iter
        )
        if nfree:
            warm["u"] = u
            warm["lam"] = lam
        return float(np.mean(vals))

    lam_star, capped = _golden_min_scalar(phi, lam_tol, lam_cap, lam0)
    _, values, _, _ = _solve_box(
        pattern,
        G,
        np.full(samples, lam_star),
        warm["u"] * (lam_star / warm["lam"]) if nfree and warm["lam"] > 0 else None,
        tol,
        max_iter,
    )
    return DimensionEstimate(
        mean=float(np.mean(values)),
        stderr=float(np.std(values, ddof=1) / np.sqrt(samples)),
        samples=samples,
        lambda_star=float(lam_star),
        cap_reached=capped,
    )


def _golden_min_scalar(phi, lam_tol, lam_cap, lam0):
    """Minimize a convex phi over [0, inf): expanding bracket + golden section."""
    val0 = phi(0.0)
    a = 0.0
    prev_lam, prev_val = 0.0, val0
    cur_lam = float(lam0)
    cur_val = phi(cur_lam)
    while cur_val < prev_val - _decrease_tol(prev_val):
        if cur_lam >= lam_cap:
            return cur_lam, True
        a = prev_lam
        prev_lam, prev_val = cur_lam, cur_val
        cur_lam = min(cur_lam * 2.0, lam_cap)
        cur_val = phi(cur_lam)
    b = cur_lam

    x1 = b - _INV_GOLDEN * (b - a)
    x2 = a + _INV_GOLDEN * (b - a)
    f1, f2 = phi(x1), phi(x2)
    while (b - a) > lam_tol * (1.0 + b):
        if f1 < f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_GOLDEN * (b - a)
            f1 = phi(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_GOLDEN * (b - a)
            f2 = phi(x2)
    candidates = [(val0, 0.0), (f1, x1), (f2, x2)]
    _, lam_star = min(candidates, key=lambda t: t[0])
    return lam_star, False


def estimate_cone_dim(
    pattern: GradientPattern,
    samples: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    lam_tol: float = DEFAULT_LAM_TOL,
    lam_cap: float = DEFAULT_LAM_CAP,
) -> DimensionEstimate:
    """Monte Carlo mean of the per-sample cone distance (min over scale inside)."""
    if samples < 2:
        raise ValueError("samples must be >= 2")
    G = gaussian_samples(seed, samples, pattern.n)
    values, _, capped, _, _ = _cone_min_batched(
        G, pattern, tol, max_iter, lam_tol, lam_cap
    )
    return DimensionEstimate(
        mean=float(np.mean(values)),
        stderr=float(np.std(values, ddof=1) / np.sqrt(samples)),
        samples=samples,
        cap_reached=bool(np.any(capped)),
    )


def predicted_curve(
    n: int,
    epsilon_grid,
    samples: int,
    seed: int,
    patterns_per_eps: int = 5,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    lam_tol: float = DEFAULT_LAM_TOL,
    lam_cap: float = DEFAULT_LAM_CAP,
) -> list[CurvePoint]:
    """Predicted transition curve: delta(eps) = min-over-scale estimate / n.

    Each epsilon averages the minimized estimate over patterns_per_eps random
    sign/support patterns at sparsity k = round(eps (n-1)); the reported
    standard error combines the per-pattern Monte Carlo error with the spread
    across patterns.
    """
    if patterns_per_eps < 1:
        raise ValueError("patterns_per_eps must be >= 1")
    points = []
    for i, eps in enumerate(epsilon_grid):
        k = epsilon_to_k(float(eps), n)
        means, errs, lams = [], [], []
        for p in range(patterns_per_eps):
            pat_seed = int(spawn_rng(seed, i, p, 0).integers(2**63 - 1))
            mc_seed = int(spawn_rng(seed, i, p, 1).integers(2**63 - 1))
            pat = random_pattern(n, k, pat_seed)
            est = minimize_expected_dist(
                pat, samples, mc_seed, tol=tol, max_iter=max_iter,
                lam_tol=lam_tol, lam_cap=lam_cap,
            )
            means.append(est.mean)
            errs.append(est.stderr)
            lams.append(est.lambda_star)
        means = np.asarray(means)
        errs = np.asarray(errs)
        var_within = float(np.sum(errs**2)) / len(means) ** 2
        var_between = float(np.var(means, ddof=1)) / len(means) if len(means) > 1 else 0.0
        points.append(
            CurvePoint(
                epsilon=float(eps),
                delta_pred=float(np.mean(means)) / n,
                stderr=float(np.sqrt(var_within + var_between)) / n,
                lambda_star=float(np.mean(lams)),
                samples=samples,
                n=n,
                seed=seed,
            )
        )
    return points


def sandwich_check(
    pattern: GradientPattern,
    samples: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    lam_tol: float = DEFAULT_LAM_TOL,
    lam_cap: float = DEFAULT_LAM_CAP,
    sigma_mult: float = 3.0,
) -> SandwichReport:
    """Check the two-sided bound between the minimized and cone estimates.

    Both estimates share one Gaussian sample set, so their difference is the
    mean of per-sample gaps (each nonnegative up to solver tolerance) and must
    sit in [0, 6] up to sigma_mult standard errors.
    """
    if samples < 2:
        raise ValueError("samples must be >= 2")
    G = gaussian_samples(seed, samples, pattern.n)
    nfree = pattern.free_indices.size

    warm = {"u": np.zeros((samples, nfree)), "lam": 0.0}

    def phi(lam: float) -> float:
        scale = lam / warm["lam"] if warm["lam"] > 0 else 0.0
        u0 = warm["u"] * scale if nfree else None
        u, vals, _, _ = _solve_box(pattern, G, np.full(samples, lam), u0, tol, max_iter)
        if nfree:
            warm["u"] = u
            warm["lam"] = lam
        return float(np.mean(vals))

    lam_star, capped_scaled = _golden_min_scalar(phi, lam_tol, lam_cap, 1.0)
    _, scaled_vals, _, _ = _solve_box(
        pattern,
        G,
        np.full(samples, lam_star),
        warm["u"] * (lam_star / warm["lam"]) if nfree and warm["lam"] > 0 else None,
        tol,
        max_iter,
    )
    cone_vals, _, capped_cone, _, _ = _cone_min_batched(
        G, pattern, tol, max_iter, lam_tol, lam_cap
    )

    scaled = DimensionEstimate(
        mean=float(np.mean(scaled_vals)),
        stderr=float(np.std(scaled_vals, ddof=1) / np.sqrt(samples)),
        samples=samples,
        lambda_star=float(lam_star),
        cap_reached=capped_scaled,
    )
    cone = DimensionEstimate(
        mean=float(np.mean(cone_vals)),
        stderr=float(np.std(cone_vals, ddof=1) / np.sqrt(samples)),
        samples=samples,
        cap_reached=bool(np.any(capped_cone)),
    )
    gaps = scaled_vals - cone_vals
    difference = float(np.mean(gaps))
    diff_stderr = float(np.std(gaps, ddof=1) / np.sqrt(samples))
    passed = bool(
        -sigma_mult * diff_stderr <= difference <= SANDWICH_BOUND + sigma_mult * diff_stderr
    )
    return SandwichReport(
        scaled=scaled,
        cone=cone,
        difference=difference,
        diff_stderr=diff_stderr,
        bound=SANDWICH_BOUND,
        sigma_mult=sigma_mult,
        passed=passed,
    )
