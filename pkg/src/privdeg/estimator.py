"""Moment-equation estimation of vertex parameters from noisy degrees.

Given a noisy degree sequence dtilde, the estimate alpha_hat solves the
moment system

    F_i(alpha) = dtilde_i - sum_{j != i} p(alpha_i + alpha_j) = 0,

by damped Newton iteration on the full system. The negated Jacobian
V = -F'(alpha) is symmetric, has positive off-diagonal entries
V_ij = p'(alpha_i + alpha_j), and is diagonally balanced:
V_ii = sum_{j != i} V_ij. Its diagonal doubles as the plug-in
asymptotic precision of alpha_hat_i (variance 1 / V_ii), which feeds
the confidence intervals and the standardized pair statistic.

For the log link the moment function is evaluated through the analytic
extension exp(alpha_i + alpha_j), defined for all real pair sums; see
``moment_residual`` for why.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.stats import norm

from .links import LinkKind, link_inverse, pair_sum_matrix

__all__ = [
    "SolverOptions",
    "EstimateResult",
    "JacobianMatrix",
    "NonexistentEstimateError",
    "moment_residual",
    "jacobian",
    "approx_inverse_s",
    "initial_point",
    "solve",
    "confidence_interval",
    "xi_statistic",
]


class NonexistentEstimateError(RuntimeError):
    """Raised when a quantity is requested from a nonexistent estimate."""


@dataclass(frozen=True)
class SolverOptions:
    """Newton solver controls.

    tol is relative: convergence requires the sup-norm residual to drop
    below tol * max(1, max|dtilde|). Step halving (at most max_halvings
    per iteration) enforces a monotone decrease of the residual norm.
    approx_jacobian replaces the exact linear solve by the diagonal
    approximate inverse S = diag(1 / V_ii); useful at large n, converges
    to the same root where both converge.
    """

    tol: float = 1e-8
    max_iter: int = 200
    max_halvings: int = 40
    approx_jacobian: bool = False


@dataclass(frozen=True)
class EstimateResult:
    """Fit output; alpha_hat and v_hat are None when exists is False."""

    alpha_hat: Optional[np.ndarray]
    v_hat: Optional[np.ndarray]
    converged: bool
    iterations: int
    residual_inf: float
    exists: bool
    reason: Optional[str] = None
    # diagnostic only: sup over pairs of |alpha_i + alpha_j| at the fit,
    # reported so callers can see how far the fit strays from a bounded
    # parameter box (and, for the log link, whether any p exceeds 1)
    max_abs_pair_sum: Optional[float] = None

    @property
    def n(self) -> int:
        if self.alpha_hat is None:
            raise NonexistentEstimateError(self.reason or "estimate does not exist")
        return self.alpha_hat.size


@dataclass(frozen=True)
class JacobianMatrix:
    """Negated moment-system Jacobian V with its off-diagonal range [m, M]."""

    matrix: np.ndarray
    m: float
    M: float


def _pm_extended(link: LinkKind, X: np.ndarray) -> np.ndarray:
    """p(X) without the log-domain guard (analytic extension for log)."""
    if link == LinkKind.LOG:
        return np.exp(X)
    if link == LinkKind.LOGIT:
        out = np.empty_like(X)
        pos = X >= 0
        out[pos] = 1.0 / (1.0 + np.exp(-X[pos]))
        e = np.exp(X[~pos])
        out[~pos] = e / (1.0 + e)
        return out
    return -np.expm1(-np.exp(np.clip(X, None, 690.0)))


def _dpm_extended(link: LinkKind, X: np.ndarray) -> np.ndarray:
    if link == LinkKind.LOG:
        return np.exp(X)
    if link == LinkKind.LOGIT:
        p = _pm_extended(link, X)
        return p * (1.0 - p)
    Xc = np.clip(X, None, 690.0)
    return np.exp(Xc - np.exp(Xc))


def moment_residual(link: LinkKind, alpha: np.ndarray, dtilde: np.ndarray) -> np.ndarray:
    """Residual vector F_i = dtilde_i - sum_{j != i} p(alpha_i + alpha_j).

    For the log link the sum is evaluated through exp() on all of R, not
    just on pair sums below zero: the moment system itself is smooth
    everywhere, and fits of real release data routinely sit at points
    where a few pair sums are positive (individual p_ij formally above
    one). The strict probability domain is enforced where probabilities
    are consumed as probabilities (sampling, edge_prob); here the
    residual is kept total so the solver and its diagnostics remain
    defined at such fits.
    """
    a = np.asarray(alpha, dtype=float).reshape(-1)
    d = np.asarray(dtilde, dtype=float).reshape(-1)
    if a.size != d.size:
        raise ValueError(f"length mismatch: alpha has {a.size}, dtilde has {d.size}")
    P = _pm_extended(link, pair_sum_matrix(a))
    np.fill_diagonal(P, 0.0)
    return d - P.sum(axis=1)


def jacobian(link: LinkKind, alpha: np.ndarray) -> JacobianMatrix:
    """Negated Jacobian V of the moment system at alpha.

    V_ij = p'(alpha_i + alpha_j) for i != j and V_ii = sum_{j != i} V_ij
    exactly, so the diagonal-balance identity holds by construction.
    """
    a = np.asarray(alpha, dtype=float).reshape(-1)
    V = _dpm_extended(link, pair_sum_matrix(a))
    np.fill_diagonal(V, 0.0)
    off_min = float(V[~np.eye(a.size, dtype=bool)].min())
    off_max = float(V[~np.eye(a.size, dtype=bool)].max())
    np.fill_diagonal(V, V.sum(axis=1))
    return JacobianMatrix(V, off_min, off_max)


def approx_inverse_s(v: JacobianMatrix | np.ndarray) -> np.ndarray:
    """Diagonal approximate inverse S = diag(1 / V_ii)."""
    V = v.matrix if isinstance(v, JacobianMatrix) else np.asarray(v, dtype=float)
    d = np.diag(V)
    if np.any(d == 0) or not np.all(np.isfinite(d)):
        raise np.linalg.LinAlgError("degenerate Jacobian diagonal")
    return np.diag(1.0 / d)


def initial_point(link: LinkKind, dtilde: np.ndarray) -> np.ndarray:
    """Starting point: half the link inverse of the clamped degree ratio.

    alpha0_i = g(clip(dtilde_i / (n-1), delta, 1-delta)) / 2 with
    delta = 1 / (2(n-1)); exact when all entries of dtilde are equal.
    """
    d = np.asarray(dtilde, dtype=float).reshape(-1)
    n = d.size
    delta = 1.0 / (2.0 * (n - 1))
    r = np.clip(d / (n - 1), delta, 1.0 - delta)
    return 0.5 * np.asarray(link_inverse(link, r))


def _nonexistence_reason(link: LinkKind, d: np.ndarray) -> Optional[str]:
    n = d.size
    if np.any(d <= 0):
        return "noisy degree at or below 0"
    if link in (LinkKind.LOGIT, LinkKind.CLOGLOG) and np.any(d >= n - 1):
        return "noisy degree at or above n-1"
    return None


def solve(link: LinkKind, dtilde: np.ndarray,
          options: SolverOptions | None = None,
          x0: Optional[np.ndarray] = None) -> EstimateResult:
    """Solve the moment system for a noisy degree sequence.

    Statistical nonexistence (a boundary degree, a solver breakdown, or
    failure to converge within the iteration budget) is reported through
    ``exists=False`` on the result, never raised: frequencies of this
    event are themselves a quantity of interest. Structural problems
    (wrong lengths, n < 2, non-finite input) do raise. x0 overrides the
    default starting point.
    """
    opts = options or SolverOptions()
    d = np.asarray(dtilde, dtype=float).reshape(-1)
    if d.size < 2:
        raise ValueError(f"need at least 2 vertices, got {d.size}")
    if not np.all(np.isfinite(d)):
        raise ValueError("noisy degrees must be finite")

    def fail(reason: str, it: int, res: float) -> EstimateResult:
        return EstimateResult(None, None, False, it, res, False, reason)

    reason = _nonexistence_reason(link, d)
    if reason is not None:
        return fail(reason, 0, float("inf"))

    tol = opts.tol * max(1.0, float(np.max(np.abs(d))))
    a = (np.asarray(x0, dtype=float).reshape(-1).copy()
         if x0 is not None else initial_point(link, d))
    if a.size != d.size:
        raise ValueError("x0 length must match dtilde")
    F = moment_residual(link, a, d)
    res = float(np.max(np.abs(F)))

    for it in range(opts.max_iter):
        if res <= tol:
            jac = jacobian(link, a)
            pair_abs = np.abs(pair_sum_matrix(a))
            np.fill_diagonal(pair_abs, 0.0)
            return EstimateResult(a, np.diag(jac.matrix).copy(), True, it, res,
                                  True, None, float(pair_abs.max()))
        V = _dpm_extended(link, pair_sum_matrix(a))
        np.fill_diagonal(V, 0.0)
        diag = V.sum(axis=1)
        if opts.approx_jacobian:
            if np.any(diag <= 0) or not np.all(np.isfinite(diag)):
                return fail("degenerate Jacobian diagonal", it, res)
            step = F / diag
        else:
            np.fill_diagonal(V, diag)
            try:
                step = np.linalg.solve(V, F)
            except np.linalg.LinAlgError:
                return fail("singular Jacobian", it, res)
        if not np.all(np.isfinite(step)):
            return fail("non-finite Newton step", it, res)

        # damping: halve until the sup-norm residual strictly decreases
        scale = 1.0
        accepted = False
        for _ in range(opts.max_halvings + 1):
            a_try = a + scale * step
            F_try = moment_residual(link, a_try, d)
            res_try = float(np.max(np.abs(F_try)))
            if np.isfinite(res_try) and res_try < res:
                a, F, res = a_try, F_try, res_try
                accepted = True
                break
            scale *= 0.5
        if not accepted:
            return fail("step stalled (no residual decrease)", it, res)

    if res <= tol:
        jac = jacobian(link, a)
        pair_abs = np.abs(pair_sum_matrix(a))
        np.fill_diagonal(pair_abs, 0.0)
        return EstimateResult(a, np.diag(jac.matrix).copy(), True, opts.max_iter,
                              res, True, None, float(pair_abs.max()))
    return fail("iteration limit reached", opts.max_iter, res)


def _require(result: EstimateResult) -> None:
    if not result.exists or result.alpha_hat is None:
        raise NonexistentEstimateError(result.reason or "estimate does not exist")


def confidence_interval(result: EstimateResult, i: int, j: Optional[int] = None,
                        level: float = 0.95) -> tuple[float, float]:
    """Normal-theory confidence interval from the fitted precision diagonal.

    With j given (0-based, j != i), the interval is for the difference
    alpha_i - alpha_j:

        (ahat_i - ahat_j) +/- z * sqrt(1/v_ii + 1/v_jj).

    With j omitted, the single-coordinate interval
    ahat_i +/- z / sqrt(v_ii).
    """
    _require(result)
    if not (0 < level < 1):
        raise ValueError("confidence level must be in (0, 1)")
    z = float(norm.ppf(0.5 + level / 2.0))
    a, v = result.alpha_hat, result.v_hat
    if j is None:
        half = z / np.sqrt(v[i])
        return float(a[i] - half), float(a[i] + half)
    if i == j:
        raise ValueError("difference interval needs two distinct coordinates")
    half = z * np.sqrt(1.0 / v[i] + 1.0 / v[j])
    c = a[i] - a[j]
    return float(c - half), float(c + half)


def xi_statistic(result: EstimateResult, truth: np.ndarray, i: int, j: int) -> float:
    """Standardized pair-sum statistic

        (ahat_i + ahat_j - alpha*_i - alpha*_j) / sqrt(1/v_ii + 1/v_jj),

    asymptotically standard normal at the true parameter. The
    denominator combines the two coordinate precisions; i and j are
    0-based and distinct.
    """
    _require(result)
    if i == j:
        raise ValueError("pair statistic needs two distinct coordinates")
    t = np.asarray(truth, dtype=float).reshape(-1)
    a, v = result.alpha_hat, result.v_hat
    num = (a[i] + a[j]) - (t[i] + t[j])
    return float(num / np.sqrt(1.0 / v[i] + 1.0 / v[j]))
