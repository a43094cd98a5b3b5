"""Dense d-way tensors and the multilinear kernels built on them.

Storage is row-major (last index fastest). Mode numbers are 1-based in the
public API, matching the usual ``n_1 x ... x n_d`` notation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimsError, ModeError, ShapeError

__all__ = [
    "Tensor",
    "contract_all_but_one",
    "unfold",
    "fold",
    "symmetrize",
    "is_symmetric",
    "mode_product",
    "multi_mode_product",
    "khatri_rao",
    "outer",
]


@dataclass(frozen=True, eq=False)
class Tensor:
    """Immutable dense real tensor.

    Parameters
    ----------
    data : array_like
        Any real array; it is copied to a read-only C-contiguous float64 array.
    """

    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.float64, order="C", copy=True)
        if arr.ndim < 1:
            raise DimsError("tensor order must be >= 1")
        if any(n < 1 for n in arr.shape):
            raise DimsError(f"dims must be positive, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("tensor values must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def from_values(cls, dims: Sequence[int], values: Sequence[float]) -> "Tensor":
        dims = tuple(int(n) for n in dims)
        values = np.asarray(values, dtype=np.float64).ravel()
        if len(dims) < 1 or any(n < 1 for n in dims):
            raise DimsError(f"dims must be a nonempty list of positive integers, got {dims}")
        if values.size != math.prod(dims):
            raise DimsError(f"{values.size} values do not fill dims {dims}")
        return cls(values.reshape(dims))

    @classmethod
    def zeros(cls, dims: Sequence[int]) -> "Tensor":
        return cls(np.zeros(tuple(dims)))

    @property
    def dims(self) -> tuple[int, ...]:
        return self.data.shape

    @property
    def order(self) -> int:
        return self.data.ndim

    @property
    def values(self) -> np.ndarray:
        """Flat row-major view of the entries."""
        return self.data.ravel()

    @property
    def is_cubical(self) -> bool:
        return len(set(self.dims)) == 1

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))

    def __mul__(self, alpha):
        return Tensor(self.data * float(alpha))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.dims == other.dims and bool(np.array_equal(self.data, other.data))

    def __repr__(self):
        return f"Tensor(dims={self.dims})"


def _require_cubical(t: Tensor) -> int:
    if not t.is_cubical:
        raise ShapeError(f"cubical tensor required, got dims {t.dims}")
    return t.dims[0]


def contract_all_but_one(t: Tensor, v) -> np.ndarray:
    """Return ``T v^{d-1}``, contracting every mode except the first with `v`.

    ``w[i] = sum T[i, i2, ..., id] v[i2] ... v[id]``. For a matrix this is the
    ordinary product ``T @ v``.
    """
    if t.order < 2:
        raise ShapeError("contraction needs a tensor of order >= 2")
    n = _require_cubical(t)
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (n,):
        raise DimsError(f"vector of length {n} expected, got shape {v.shape}")
    w = t.data
    for _ in range(t.order - 1):
        w = w @ v
    return w


def unfold(t: Tensor, mode: int) -> np.ndarray:
    """Mode-`mode` matricization (1-based).

    Columns run lexicographically over the remaining indices, last fastest.
    """
    if not 1 <= mode <= t.order:
        raise ModeError(f"mode {mode} outside 1..{t.order}")
    return np.moveaxis(t.data, mode - 1, 0).reshape(t.dims[mode - 1], -1)


def fold(matrix, mode: int, dims: Sequence[int]) -> Tensor:
    """Inverse of :func:`unfold`."""
    dims = tuple(dims)
    if not 1 <= mode <= len(dims):
        raise ModeError(f"mode {mode} outside 1..{len(dims)}")
    matrix = np.asarray(matrix, dtype=np.float64)
    lead = dims[mode - 1]
    rest = tuple(n for i, n in enumerate(dims) if i != mode - 1)
    if matrix.shape != (lead, math.prod(rest)):
        raise DimsError(f"matrix shape {matrix.shape} incompatible with dims {dims}")
    return Tensor(np.moveaxis(matrix.reshape((lead,) + rest), 0, mode - 1))


def is_symmetric(t: Tensor, atol: float = 0.0) -> bool:
    if not t.is_cubical:
        return False
    for perm in itertools.permutations(range(t.order)):
        diff = np.abs(t.data - np.transpose(t.data, perm))
        if np.any(diff > atol):
            return False
    return True


def symmetrize(t: Tensor) -> Tensor:
    """Average `t` over all d! index permutations.

    The result is exactly symmetric: every orbit is assigned the single value
    computed at its sorted index, so applying it twice changes nothing.
    """
    n = _require_cubical(t)
    if is_symmetric(t):
        return t
    d = t.order
    perms = list(itertools.permutations(range(d)))
    acc = np.zeros_like(t.data)
    for perm in perms:
        acc += np.transpose(t.data, perm)
    acc /= len(perms)
    idx = np.indices((n,) * d).reshape(d, -1)
    canon = np.sort(idx, axis=0)
    flat = acc[tuple(canon)]
    return Tensor(flat.reshape((n,) * d))


def mode_product(t: Tensor, matrix, mode: int) -> Tensor:
    """``T x_mode M``: replace mode `mode` (size n) by ``M`` of shape (J, n)."""
    if not 1 <= mode <= t.order:
        raise ModeError(f"mode {mode} outside 1..{t.order}")
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[1] != t.dims[mode - 1]:
        raise DimsError(
            f"matrix shape {matrix.shape} cannot act on mode {mode} of size {t.dims[mode - 1]}"
        )
    out = np.tensordot(matrix, t.data, axes=([1], [mode - 1]))
    return Tensor(np.moveaxis(out, 0, mode - 1))


def multi_mode_product(t: Tensor, matrices, transpose: bool = False) -> Tensor:
    """Apply one matrix per mode; with ``transpose`` each matrix is used as ``M.T``."""
    if len(matrices) != t.order:
        raise DimsError(f"{len(matrices)} matrices for a tensor of order {t.order}")
    out = t
    for m, mat in enumerate(matrices, start=1):
        mat = np.asarray(mat, dtype=np.float64)
        out = mode_product(out, mat.T if transpose else mat, m)
    return out


def khatri_rao(matrices) -> np.ndarray:
    """Column-wise Kronecker product; the first matrix varies slowest.

    With this ordering ``unfold(T, m) = A_m @ diag(w) @ khatri_rao(others).T`` for
    a CP tensor, consistent with the row-major unfolding above.
    """
    matrices = [np.asarray(a, dtype=np.float64) for a in matrices]
    if not matrices:
        raise DimsError("khatri_rao needs at least one matrix")
    rank = matrices[0].shape[1]
    if any(a.ndim != 2 or a.shape[1] != rank for a in matrices):
        raise DimsError("khatri_rao operands need the same number of columns")
    out = matrices[0]
    for a in matrices[1:]:
        out = (out[:, None, :] * a[None, :, :]).reshape(-1, rank)
    return out


def outer(vectors) -> np.ndarray:
    """Outer product of a sequence of vectors as a plain array."""
    out = np.asarray(vectors[0], dtype=np.float64)
    for v in vectors[1:]:
        out = np.multiply.outer(out, np.asarray(v, dtype=np.float64))
    return out
