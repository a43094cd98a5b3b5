"""Small dense kernels: one-sided Jacobi SVD and bit-packed GF(2) rank."""

from __future__ import annotations

from typing import Iterable

import numpy as np

__all__ = ["jacobi_svd", "gf2_rank", "pack_columns"]


def _hestenes(b: np.ndarray, max_sweeps: int, tol: float):
    """Orthogonalize the columns of tall `b` in place; return the rotation matrix."""
    q = b.shape[1]
    v = np.eye(q)
    for _ in range(max_sweeps):
        rotated = False
        for i in range(q - 1):
            for j in range(i + 1, q):
                bi, bj = b[:, i], b[:, j]
                alpha = bi @ bi
                beta = bj @ bj
                gamma = bi @ bj
                if gamma == 0.0 or abs(gamma) <= tol * np.sqrt(alpha * beta):
                    continue
                rotated = True
                zeta = (beta - alpha) / (2.0 * gamma)
                t = np.copysign(1.0, zeta) / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                b[:, [i, j]] = np.column_stack((c * bi - s * bj, s * bi + c * bj))
                vi, vj = v[:, i].copy(), v[:, j].copy()
                v[:, i] = c * vi - s * vj
                v[:, j] = s * vi + c * vj
        if not rotated:
            break
    return v


def _complete_basis(u: np.ndarray, keep: np.ndarray) -> np.ndarray:
    """Replace columns not in `keep` by unit vectors orthogonal to the rest."""
    m, k = u.shape
    basis = [u[:, j] for j in range(k) if keep[j]]
    out = u.copy()
    candidates = iter(np.eye(m))
    for j in range(k):
        if keep[j]:
            continue
        for e in candidates:
            w = e.copy()
            for _ in range(2):
                for b in basis:
                    w -= (b @ w) * b
            nrm = np.linalg.norm(w)
            if nrm > 1e-8:
                w /= nrm
                basis.append(w)
                out[:, j] = w
                break
    return out


def jacobi_svd(a, max_sweeps: int = 60, tol: float = 1e-15):
    """Thin SVD ``a = u @ diag(s) @ vt`` by one-sided (Hestenes) Jacobi rotations.

    Singular values come back in descending order. Each left singular vector is
    sign-fixed so that its largest-magnitude entry is positive, which makes the
    result reproducible.

    Parameters
    ----------
    a : array_like, shape (m, n)
    max_sweeps : int
        Upper bound on full pair sweeps.
    tol : float
        Relative off-orthogonality below which a column pair is left alone.

    Returns
    -------
    u : ndarray, shape (m, k)
    s : ndarray, shape (k,)
    vt : ndarray, shape (k, n)
        with ``k = min(m, n)``.
    """
    a = np.array(a, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError("jacobi_svd expects a matrix")
    m, n = a.shape
    wide = m < n
    b = a.T.copy() if wide else a.copy()
    rot = _hestenes(b, max_sweeps, tol)
    s = np.linalg.norm(b, axis=0)
    order = np.argsort(-s, kind="stable")
    s = s[order]
    b = b[:, order]
    rot = rot[:, order]
    scale = s[0] if s.size and s[0] > 0 else 1.0
    keep = s > scale * 1e-14 * max(b.shape)
    left = np.zeros_like(b)
    left[:, keep] = b[:, keep] / s[keep]
    s = np.where(keep, s, 0.0)
    if not np.all(keep):
        left = _complete_basis(left, keep)
    # b = left diag(s), a (or a.T) = left diag(s) rot.T
    if wide:
        u, vt = rot, left.T
    else:
        u, vt = left, rot.T
    for j in range(u.shape[1]):
        if u[np.argmax(np.abs(u[:, j])), j] < 0:
            u[:, j] = -u[:, j]
            vt[j, :] = -vt[j, :]
    return u, s, vt


def pack_columns(matrix) -> list[int]:
    """Encode each column of a 0/1 matrix as an int bitmask over rows."""
    matrix = np.asarray(matrix)
    cols = []
    for j in range(matrix.shape[1]):
        bits = 0
        for i in np.flatnonzero(matrix[:, j] & 1):
            bits |= 1 << int(i)
        cols.append(bits)
    return cols


def gf2_rank(vectors: Iterable[int]) -> int:
    """Rank over GF(2) of vectors given as int bitmasks.

    Gaussian elimination keyed on the leading bit: each vector is reduced
    against the pivots found so far and becomes a new pivot if anything is left.
    """
    pivots: dict[int, int] = {}
    for x in vectors:
        while x:
            top = x.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = x
                break
            x ^= p
    return len(pivots)
