"""Dense LU factorisation with partial (row) pivoting."""

import logging

import numpy as np

__all__ = ["SingularMatrixError", "lu_factor", "lu_solve", "PIVOT_RTOL"]

log = logging.getLogger(__name__)

PIVOT_RTOL = 1e-12


class SingularMatrixError(np.linalg.LinAlgError):
    pass


def lu_factor(a, pivot_rtol=PIVOT_RTOL):
    """Factor ``P a = L U`` in place on a copy.

    Returns ``(lu, perm)`` where `lu` holds the unit-lower factor below the
    diagonal and U on and above it, and ``a[perm] = L @ U``.  A pivot whose
    magnitude is below ``pivot_rtol * max_i sum_j |a_ij|`` is treated as zero.
    """
    lu = np.array(a, dtype=float, copy=True)
    if lu.ndim != 2 or lu.shape[0] != lu.shape[1] or lu.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {lu.shape}")
    n = lu.shape[0]
    threshold = pivot_rtol * np.abs(lu).sum(axis=1).max()
    perm = np.arange(n)
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if abs(lu[p, k]) <= threshold:
            raise SingularMatrixError(
                f"matrix is singular to working precision: pivot {abs(lu[p, k]):.3e} "
                f"in column {k} is below {threshold:.3e}"
            )
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
        lu[k + 1:, k] /= lu[k, k]
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return lu, perm


def lu_solve(a, b, pivot_rtol=PIVOT_RTOL, return_residual=False):
    """Solve ``a x = b`` by LU with row pivoting.

    With `return_residual` the pair ``(x, ||a x - b||_inf)`` is returned.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    lu, perm = lu_factor(a, pivot_rtol)
    n = lu.shape[0]
    if b.shape[0] != n:
        raise ValueError(f"right-hand side has length {b.shape[0]}, expected {n}")
    y = b[perm].copy()
    for i in range(1, n):
        y[i] -= lu[i, :i] @ y[:i]
    for i in range(n - 1, -1, -1):
        y[i] = (y[i] - lu[i, i + 1:] @ y[i + 1:]) / lu[i, i]
    residual = float(np.abs(a @ y - b).max())
    log.debug("lu_solve n=%d residual=%.3e", n, residual)
    return (y, residual) if return_residual else y
