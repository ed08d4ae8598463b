"""Dense complex kernels: cyclic Jacobi for Hermitian matrices, Gauss
elimination with partial pivoting, and pairwise summation."""
from __future__ import annotations

import math

import numpy as np

from .errors import SingularError

MAX_SWEEPS = 100
OFFDIAG_REL_TOL = 1e-14
PIVOT_REL_TOL = 1e-12


def jacobi_eigh(a, max_sweeps=MAX_SWEEPS, rel_tol=OFFDIAG_REL_TOL):
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(w, v)`` with ascending real eigenvalues ``w`` and orthonormal
    eigenvectors in the columns of ``v``.  The input is symmetrized first, so
    callers are responsible for checking hermiticity.
    """
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    if n == 0:
        return np.zeros(0), v
    thresh = rel_tol * np.linalg.norm(a)
    off_mask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        off = math.sqrt(float(np.sum(np.abs(a[off_mask]) ** 2)))
        if off <= thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0 or mag <= 1e-3 * thresh / n:
                    continue
                phase = apq / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                sp = s * phase
                spc = sp.conjugate()
                # A <- A J with J = [[c, s e], [-s conj(e), c]]
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - spc * col_q
                a[:, q] = sp * col_p + c * col_q
                # A <- J^H A
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - sp * row_q
                a[q, :] = spc * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - spc * vq
                v[:, q] = sp * vp + c * vq
    w = a.diagonal().real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def gauss_solve(a, b, pivot_tol=PIVOT_REL_TOL):
    """Solve ``a x = b`` by Gauss elimination with partial pivoting.

    A pivot smaller than ``pivot_tol * max|a|`` raises :class:`SingularError`.
    """
    a = np.array(a, dtype=complex)
    b = np.array(b, dtype=complex)
    n = a.shape[0]
    vector_rhs = b.ndim == 1
    if vector_rhs:
        b = b[:, None]
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    floor = pivot_tol * scale
    for k in range(n):
        piv = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[piv, k]) <= floor or scale == 0.0:
            raise SingularError(f"pivot {abs(a[piv, k]):.3e} at column {k} below {floor:.3e}")
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            b[[k, piv]] = b[[piv, k]]
        factors = a[k + 1:, k] / a[k, k]
        a[k + 1:, k:] -= np.outer(factors, a[k, k:])
        b[k + 1:] -= np.outer(factors, b[k])
    x = np.zeros_like(b)
    for k in range(n - 1, -1, -1):
        x[k] = (b[k] - a[k, k + 1:] @ x[k + 1:]) / a[k, k]
    return x[:, 0] if vector_rhs else x


def gauss_inverse(a, pivot_tol=PIVOT_REL_TOL):
    a = np.asarray(a, dtype=complex)
    try:
        return gauss_solve(a, np.eye(a.shape[0], dtype=complex), pivot_tol)
    except SingularError as exc:
        raise SingularError(str(exc), min_singular_value=min_singular_value(a)) from None


def min_singular_value(a):
    a = np.asarray(a, dtype=complex)
    if a.size == 0:
        return 0.0
    w, _ = jacobi_eigh(a.conj().T @ a)
    return math.sqrt(max(float(w[0]), 0.0))


def pairwise_sum(terms):
    """Sum a sequence by recursive halving; the order of evaluation is fixed
    by the sequence length alone."""
    terms = list(terms)
    if not terms:
        raise ValueError("pairwise_sum of an empty sequence")
    while len(terms) > 1:
        paired = [terms[i] + terms[i + 1] for i in range(0, len(terms) - 1, 2)]
        if len(terms) % 2:
            paired.append(terms[-1])
        terms = paired
    return terms[0]
