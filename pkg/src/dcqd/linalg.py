"""Small dense complex linear algebra.

Matrices are plain ``numpy`` complex128 arrays. LU factorisation with
partial pivoting is done here; the Hermitian eigensolver delegates to
LAPACK through ``numpy.linalg.eigh``.
"""
from __future__ import annotations

import numpy as np

from .errors import NotHermitian, SingularMatrix

PIVOT_RTOL = 1e-12
HERMITIAN_ATOL = 1e-10
COND_CUTOFF = 1e-14


def as_matrix(a) -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    return a


def kron(a, b) -> np.ndarray:
    """Kronecker product, ``a`` as the most significant factor."""
    a = as_matrix(a)
    b = as_matrix(b)
    ra, ca = a.shape
    rb, cb = b.shape
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(ra * rb, ca * cb)


def lu_factor(a):
    """Partial-pivot LU of a square matrix.

    Returns ``(lu, perm, sign, singular)`` where ``lu`` packs the unit-lower
    factor below the diagonal and the upper factor on/above it, ``perm`` is the
    row permutation (``a[perm] == L @ U``) and ``sign`` its parity. ``singular``
    is set when a pivot falls below ``PIVOT_RTOL`` times the largest entry of
    its original row.
    """
    lu = as_matrix(a).copy()
    n, m = lu.shape
    if n != m:
        raise ValueError(f"LU needs a square matrix, got {lu.shape}")
    row_scale = np.abs(lu).max(axis=1) if n else np.zeros(0)
    perm = np.arange(n)
    sign = 1
    singular = False
    for k in range(n):
        piv = k + int(np.argmax(np.abs(lu[k:, k])))
        if piv != k:
            lu[[k, piv]] = lu[[piv, k]]
            perm[[k, piv]] = perm[[piv, k]]
            sign = -sign
        scale = row_scale[perm[k]]
        if scale == 0.0 or abs(lu[k, k]) < PIVOT_RTOL * scale:
            singular = True
            continue
        lu[k + 1:, k] /= lu[k, k]
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return lu, perm, sign, singular


def lu_solve(a, b) -> np.ndarray:
    """Solve ``a x = b`` for a vector (or stacked columns) ``b``."""
    lu, perm, _, singular = lu_factor(a)
    if singular:
        raise SingularMatrix("pivot below relative threshold in LU solve")
    b = np.asarray(b, dtype=np.complex128)
    if b.shape[0] != lu.shape[0]:
        raise ValueError(f"rhs length {b.shape[0]} does not match matrix size {lu.shape[0]}")
    x = b[perm].copy()
    n = lu.shape[0]
    for k in range(n):
        x[k + 1:] -= np.multiply.outer(lu[k + 1:, k], x[k])
    for k in range(n - 1, -1, -1):
        x[k] /= lu[k, k]
        x[:k] -= np.multiply.outer(lu[:k, k], x[k])
    return x


def det(a) -> complex:
    lu, _, sign, singular = lu_factor(a)
    if singular:
        return 0j
    return complex(sign * np.prod(np.diag(lu)))


def is_hermitian(a, atol: float = HERMITIAN_ATOL) -> bool:
    a = as_matrix(a)
    return a.shape[0] == a.shape[1] and float(np.abs(a - a.conj().T).max(initial=0.0)) <= atol


def eig_hermitian(a):
    """Eigenvalues (descending) and column eigenvectors of a Hermitian matrix."""
    a = as_matrix(a)
    if not is_hermitian(a):
        raise NotHermitian("matrix deviates from its adjoint by more than 1e-10")
    w, v = np.linalg.eigh((a + a.conj().T) / 2)
    return w[::-1].copy(), v[:, ::-1].copy()


def singular_values(a) -> np.ndarray:
    """Singular values from the spectrum of ``a^dagger a``, descending."""
    a = as_matrix(a)
    w, _ = eig_hermitian(a.conj().T @ a)
    return np.sqrt(np.clip(w, 0.0, None))


def condition_number(a) -> float:
    """2-norm condition number; ``inf`` once the matrix is numerically singular."""
    s = singular_values(a)
    if s.size == 0 or s[0] == 0.0 or s[-1] < COND_CUTOFF * s[0]:
        return float("inf")
    return float(s[0] / s[-1])
