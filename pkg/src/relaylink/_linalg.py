"""Stationary distributions of dense row-stochastic matrices."""

import numpy as np


class StationarySolveError(RuntimeError):
    """Raised when neither the direct solve nor power iteration converges."""


def stationary_distribution(m, tol=1e-10, power_tol=1e-12, max_iter=1_000_000):
    """Solve pi @ m = pi with sum(pi) = 1, pi >= 0.

    Direct dense solve of the transposed balance equations with one
    equation replaced by the normalization; falls back to power
    iteration if the linear system is singular.  Transient states are
    allowed and receive mass 0.
    """
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError(f"matrix must be square, got shape {m.shape}")

    a = m.T - np.eye(n)
    a[-1, :] = 1.0
    b = np.zeros(n)
    b[-1] = 1.0
    try:
        pi = np.linalg.solve(a, b)
    except np.linalg.LinAlgError:
        pi = None

    if pi is not None:
        # Tiny negative entries are roundoff on transient or
        # near-transient states; clip them and keep the direct
        # solution as long as the balance residual still checks out.
        pi = np.clip(pi, 0.0, None)
        total = pi.sum()
        if total > 0.0:
            pi = pi / total
            residual = np.max(np.abs(pi @ m - pi))
            if residual <= tol:
                return pi

    pi = _power_iteration(m, power_tol, max_iter)
    pi = pi / pi.sum()
    residual = np.max(np.abs(pi @ m - pi))
    if residual > tol:
        raise StationarySolveError(
            f"stationary solve residual {residual:.3e} exceeds {tol:.1e}"
        )
    return pi


def _power_iteration(m, tol, max_iter):
    n = m.shape[0]
    pi = np.full(n, 1.0 / n)
    for _ in range(int(max_iter)):
        nxt = pi @ m
        nxt /= nxt.sum()
        if np.max(np.abs(nxt - pi)) < tol:
            return nxt
        pi = nxt
    raise StationarySolveError("power iteration did not converge")
