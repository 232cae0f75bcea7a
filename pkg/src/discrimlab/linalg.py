"""Dense real linear algebra for small symmetric problems.

Matrices and vectors are plain numpy float64 arrays.  Everything here is
self-contained: Cholesky factorization, SPD inversion/solves, a cyclic
Jacobi eigensolver for symmetric matrices, and the symmetric-definite
generalized problem B v = lambda W v reduced through the Cholesky factor
of W.  Sizes stay in the single digits for this package, so clarity and
determinism win over blocked performance tricks.

Eigenvector sign convention: the first entry with |entry| > 1e-8 is made
positive, so results are reproducible down to the last bit.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NonConvergence, NotPositiveDefinite

_SYM_RTOL = 1e-10
_PIVOT_RTOL = 1e-12
_JACOBI_SWEEPS = 100


@dataclass(frozen=True)
class EigenResult:
    """Eigenvalues sorted descending with matching unit-norm column vectors."""
    values: np.ndarray   # (k,)
    vectors: np.ndarray  # (k, k), column i pairs with values[i]


def as_matrix(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError("expected a 2-D matrix with at least one row and column")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def as_vector(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or v.shape[0] < 1:
        raise ValueError("expected a 1-D vector with at least one entry")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return v


def _require_symmetric(a: np.ndarray) -> np.ndarray:
    a = as_matrix(a)
    n, m = a.shape
    if n != m:
        raise ValueError("matrix must be square")
    scale = max(np.abs(a).max(), 1.0)
    if np.abs(a - a.T).max() > _SYM_RTOL * scale:
        raise ValueError("matrix must be symmetric within 1e-10 relative")
    return a


def cholesky(a) -> np.ndarray:
    """Lower-triangular L with L L^T = a, for symmetric positive definite a.

    Raises NotPositiveDefinite when a pivot drops to <= 1e-12 times the
    largest diagonal entry — the signal used throughout the package for a
    singular or indefinite covariance.
    """
    a = _require_symmetric(a)
    n = a.shape[0]
    tol = _PIVOT_RTOL * max(a.diagonal().max(), 0.0)
    L = np.zeros_like(a)
    for j in range(n):
        pivot = a[j, j] - L[j, :j] @ L[j, :j]
        if pivot <= tol:
            raise NotPositiveDefinite(
                f"pivot {pivot:.3e} at row {j} (tolerance {tol:.3e})")
        L[j, j] = np.sqrt(pivot)
        for i in range(j + 1, n):
            L[i, j] = (a[i, j] - L[i, :j] @ L[j, :j]) / L[j, j]
    return L


def _forward_sub(L: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve L y = b for lower-triangular L; b may be a vector or matrix."""
    n = L.shape[0]
    y = np.array(b, dtype=float)
    for i in range(n):
        y[i] = (y[i] - L[i, :i] @ y[:i]) / L[i, i]
    return y


def _back_sub(L: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Solve L^T x = y for lower-triangular L."""
    n = L.shape[0]
    x = np.array(y, dtype=float)
    for i in range(n - 1, -1, -1):
        x[i] = (x[i] - L[i + 1:, i] @ x[i + 1:]) / L[i, i]
    return x


def solve_spd(a, b) -> np.ndarray:
    """Solve a x = b for SPD a via Cholesky; b is a vector or a matrix."""
    a = as_matrix(a)
    b = np.asarray(b, dtype=float)
    if b.shape[0] != a.shape[1]:
        raise ValueError("dimension mismatch between matrix and right-hand side")
    L = cholesky(a)
    return _back_sub(L, _forward_sub(L, b))


def invert_spd(a) -> np.ndarray:
    """Inverse of an SPD matrix; the result is symmetrized exactly."""
    a = as_matrix(a)
    inv = solve_spd(a, np.eye(a.shape[0]))
    return (inv + inv.T) / 2.0


def log_det_spd(a) -> float:
    """log det of an SPD matrix as 2 * sum(log diag(cholesky(a)))."""
    return float(2.0 * np.log(cholesky(a).diagonal()).sum())


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    v = vectors.copy()
    for j in range(v.shape[1]):
        col = v[:, j]
        big = np.nonzero(np.abs(col) > 1e-8)[0]
        lead = big[0] if big.size else int(np.argmax(np.abs(col)))
        if col[lead] < 0:
            v[:, j] = -col
    return v


def sym_eigen(a, max_sweeps: int = _JACOBI_SWEEPS) -> EigenResult:
    """Full eigendecomposition of a symmetric matrix by cyclic Jacobi.

    Rotations are applied in row-cyclic order until the off-diagonal mass
    is negligible relative to the Frobenius norm.  Values come back sorted
    descending, vectors as unit-norm columns with the package sign
    convention.  Raises NonConvergence after `max_sweeps` sweeps (the
    default cap of 100 is far beyond what any sane input needs).
    """
    a = _require_symmetric(a)
    n = a.shape[0]
    A = a.copy()
    V = np.eye(n)
    fro = max(np.sqrt((a * a).sum()), np.finfo(float).tiny)
    stop = 1e-14 * fro

    def off(m):
        return np.sqrt(2.0 * (np.triu(m, 1) ** 2).sum())

    sweeps = 0
    while off(A) > stop:
        if sweeps >= max_sweeps:
            raise NonConvergence(f"Jacobi sweep cap ({max_sweeps}) reached")
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= stop / max(n, 1):
                    continue
                # classic 2x2 symmetric Schur rotation: A <- J' A J
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rot = np.array([[c, -s], [s, c]])
                idx = [p, q]
                A[idx, :] = rot @ A[idx, :]
                A[:, idx] = A[:, idx] @ rot.T
                V[:, idx] = V[:, idx] @ rot.T
        sweeps += 1

    values = A.diagonal().copy()
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = _fix_signs(V[:, order])
    return EigenResult(values=values, vectors=vectors)


def gen_eigen_spd(b, w, max_sweeps: int = _JACOBI_SWEEPS) -> EigenResult:
    """Symmetric-definite generalized eigenproblem B v = lambda W v.

    Reduction: with W = L L^T the problem becomes the ordinary symmetric
    eigenproblem for C = L^-1 B L^-T; eigenvectors are recovered by the
    back-substitution v = L^-T u and returned unit-norm.  Exact for this
    package because B is symmetric PSD and W is SPD.
    """
    b = _require_symmetric(b)
    w = as_matrix(w)
    if b.shape != w.shape:
        raise ValueError("b and w must have identical shape")
    L = cholesky(w)
    # C = L^-1 B L^-T, built with triangular solves only
    C = _forward_sub(L, _forward_sub(L, b.T).T)
    C = (C + C.T) / 2.0
    inner = sym_eigen(C, max_sweeps=max_sweeps)
    vectors = _back_sub(L, inner.vectors)
    vectors = vectors / np.sqrt((vectors * vectors).sum(axis=0))
    return EigenResult(values=inner.values, vectors=_fix_signs(vectors))
