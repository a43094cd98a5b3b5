"""CP (alternating least squares) and Tucker (HOSVD) decompositions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import DimsError
from .linalg import jacobi_svd
from .synth import derive_seed, rng_for
from .tensor import Tensor, khatri_rao, mode_product, multi_mode_product, unfold

__all__ = [
    "CPModel",
    "TuckerModel",
    "cp_als",
    "tucker_hosvd",
    "cp_eigenvalues",
    "tucker_eigenvalues",
    "reconstruct",
    "mse",
]

RIDGE = 1e-12


@dataclass(frozen=True)
class CPModel:
    """Weighted sum of rank-one terms with unit-norm factor columns.

    ``errors`` holds the Frobenius fit error after every ALS sweep of the run
    that produced the model.
    """

    weights: np.ndarray
    factors: tuple
    errors: tuple = field(default=())

    @property
    def rank(self) -> int:
        return len(self.weights)

    @property
    def dims(self) -> tuple:
        return tuple(f.shape[0] for f in self.factors)


@dataclass(frozen=True)
class TuckerModel:
    core: Tensor
    factors: tuple

    @property
    def core_dims(self) -> tuple:
        return self.core.dims

    @property
    def dims(self) -> tuple:
        return tuple(f.shape[0] for f in self.factors)


def _normalize_columns(a: np.ndarray):
    norms = np.linalg.norm(a, axis=0)
    out = np.zeros_like(a)
    live = norms > 0
    out[:, live] = a[:, live] / norms[live]
    out[0, ~live] = 1.0
    return out, np.where(live, norms, 0.0)


def _cp_reconstruct(weights, factors) -> np.ndarray:
    dims = tuple(f.shape[0] for f in factors)
    kr = khatri_rao(list(factors[1:])) if len(factors) > 1 else np.ones((1, len(weights)))
    return ((factors[0] * weights) @ kr.T).reshape(dims)


def _als_run(t: Tensor, rank: int, rng, max_sweeps: int, tol: float):
    d = t.order
    norm_t = t.norm()
    factors = [_normalize_columns(rng.standard_normal((n, rank)))[0] for n in t.dims]
    weights = np.ones(rank)
    unfoldings = [unfold(t, m + 1) for m in range(d)]
    errors = []
    fit_prev = None
    for _ in range(max_sweeps):
        for m in range(d):
            others = [factors[j] for j in range(d) if j != m]
            gram = np.ones((rank, rank))
            for a in others:
                gram *= a.T @ a
            mttkrp = unfoldings[m] @ khatri_rao(others) if others else unfoldings[m]
            sol = np.linalg.solve(gram + RIDGE * np.eye(rank), mttkrp.T).T
            factors[m], weights = _normalize_columns(sol)
        err = float(np.linalg.norm(t.data - _cp_reconstruct(weights, factors)))
        errors.append(err)
        fit = 1.0 - err / norm_t if norm_t > 0 else 1.0
        if fit_prev is not None and abs(fit - fit_prev) < tol:
            break
        fit_prev = fit
    return weights, factors, errors


def _canonical_cp(weights, factors):
    weights = weights.copy()
    factors = [f.copy() for f in factors]
    for f in factors:
        for r in range(f.shape[1]):
            if f[np.argmax(np.abs(f[:, r])), r] < 0:
                f[:, r] = -f[:, r]
                weights[r] = -weights[r]
    order = np.argsort(-np.abs(weights), kind="stable")
    return weights[order], [f[:, order] for f in factors]


def cp_als(
    t: Tensor,
    rank: int,
    restarts: int = 1,
    seed: int = 0,
    max_sweeps: int = 500,
    tol: float = 1e-8,
) -> CPModel:
    """Rank-`rank` CP fit by alternating least squares, best of `restarts` runs.

    Each run starts from Gaussian factors drawn from its own stream
    (``derive_seed(seed, run)``) and stops once the relative fit
    ``1 - |T - T_hat| / |T|`` changes by less than `tol`, or after `max_sweeps`.
    Normal equations carry a 1e-12 ridge so collinear factors never make the
    solve singular. The returned weights are sorted by descending magnitude;
    each factor column is oriented so its largest entry is positive, with the
    sign moved into the weight.
    """
    if rank < 1:
        raise ValueError("rank must be >= 1")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    best = None
    for run in range(restarts):
        weights, factors, errors = _als_run(t, rank, rng_for(derive_seed(seed, run)), max_sweeps, tol)
        if best is None or errors[-1] < best[2][-1]:
            best = (weights, factors, errors)
    weights, factors = _canonical_cp(best[0], best[1])
    return CPModel(weights, tuple(factors), tuple(best[2]))


def _leading_left(matrix: np.ndarray, k: int) -> np.ndarray:
    u, _, _ = jacobi_svd(matrix)
    return u[:, :k]


def tucker_hosvd(t: Tensor, core_dims: Sequence[int], hooi_iters: int = 0) -> TuckerModel:
    """Truncated higher-order SVD, optionally refined by `hooi_iters` HOOI sweeps.

    Factor m holds the leading ``core_dims[m]`` left singular vectors of the
    mode-m unfolding; the core is ``T x_1 U_1^T ... x_d U_d^T``.
    """
    core_dims = tuple(int(c) for c in core_dims)
    if len(core_dims) != t.order or any(c < 1 or c > n for c, n in zip(core_dims, t.dims)):
        raise DimsError(f"core_dims {core_dims} must lie in 1..dims {t.dims}")
    factors = [_leading_left(unfold(t, m + 1), c) for m, c in enumerate(core_dims)]
    for _ in range(hooi_iters):
        for m in range(t.order):
            y = t
            for j in range(t.order):
                if j != m:
                    y = mode_product(y, factors[j].T, j + 1)
            factors[m] = _leading_left(unfold(y, m + 1), core_dims[m])
    core = multi_mode_product(t, factors, transpose=True)
    return TuckerModel(core, tuple(factors))


def cp_eigenvalues(m: CPModel) -> list[float]:
    return [float(w) for w in m.weights]


def tucker_eigenvalues(t: Tensor, m: TuckerModel) -> list[list[float]]:
    """Row per mode: the leading ``core_dims[mode]`` singular values of that unfolding."""
    rows = []
    for mode, c in enumerate(m.core_dims):
        _, s, _ = jacobi_svd(unfold(t, mode + 1))
        rows.append([float(x) for x in s[:c]])
    return rows


def reconstruct(model: Union[CPModel, TuckerModel]) -> Tensor:
    if isinstance(model, CPModel):
        return Tensor(_cp_reconstruct(model.weights, model.factors))
    if isinstance(model, TuckerModel):
        return multi_mode_product(model.core, model.factors)
    raise TypeError(f"cannot reconstruct {type(model).__name__}")


def mse(a: Tensor, b: Tensor) -> float:
    """Mean squared entrywise difference, ``|a - b|_F^2 / numel``."""
    if a.dims != b.dims:
        raise DimsError(f"dims differ: {a.dims} vs {b.dims}")
    diff = a.data - b.data
    return float(np.mean(diff * diff))
