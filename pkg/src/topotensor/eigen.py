"""Z-eigenpairs of symmetric tensors: ``T v^{d-1} = lambda v`` with ``|v| = 1``.

The solver runs shifted symmetric higher-order power iterations (SS-HOPM) from
many seeded starts, once with a positive shift (local maxima of ``T v^d`` on the
sphere) and once with a negative shift (local minima). Every iterate, and every
raw start, is then polished by Newton's method on the full eigen-system, which
also reaches saddle-type eigenpairs that SS-HOPM cannot.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import ConvergenceError, DimsError, ShapeError, SymmetryError
from .synth import rng_for
from .tensor import Tensor, contract_all_but_one, is_symmetric

__all__ = [
    "EigenPair",
    "SolverConfig",
    "z_eigenpairs",
    "oracle_sweep_2",
    "residual",
    "canonical_pair",
    "distinct_values",
]


@dataclass(frozen=True)
class EigenPair:
    lam: float
    v: tuple
    residual: float

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.v)

    def to_dict(self) -> dict:
        return {"lambda": self.lam, "v": list(self.v), "residual": self.residual}


@dataclass(frozen=True)
class SolverConfig:
    starts: int = 64
    max_iters: int = 1000
    tol: float = 1e-10
    dedup_tol: float = 1e-6
    seed: int = 0
    newton_iters: int = 40

    def __post_init__(self):
        if self.starts < 1 or self.max_iters < 1 or self.newton_iters < 0:
            raise ValueError("starts and max_iters must be positive")
        if not (self.tol > 0 and self.dedup_tol > 0):
            raise ValueError("tol and dedup_tol must be positive")
        if self.seed < 0:
            raise ValueError("seed must be unsigned")


def residual(t: Tensor, p: EigenPair) -> float:
    v = np.asarray(p.v, dtype=np.float64)
    if not t.is_cubical or v.shape != (t.dims[0],):
        raise DimsError(f"eigenvector of length {v.size} does not match dims {t.dims}")
    return float(np.linalg.norm(contract_all_but_one(t, v) - p.lam * v))


def canonical_pair(t: Tensor, v) -> EigenPair:
    """Normalize `v`, orient it and recompute lambda and residual.

    The orientation makes the first entry with magnitude above 1e-8 positive.
    """
    v = np.asarray(v, dtype=np.float64)
    v = v / np.linalg.norm(v)
    nz = np.flatnonzero(np.abs(v) > 1e-8)
    if nz.size and v[nz[0]] < 0:
        v = -v
    w = contract_all_but_one(t, v)
    lam = float(v @ w)
    res = float(np.linalg.norm(w - lam * v))
    return EigenPair(lam, tuple(float(x) for x in v), res)


def _batch_contract(data: np.ndarray, x: np.ndarray, times: int) -> np.ndarray:
    """Contract the trailing `times` modes of `data` with each column of x (n, S)."""
    n = x.shape[0]
    d = data.ndim
    if times == 0:
        return np.broadcast_to(data[..., None], data.shape + (x.shape[1],))
    out = data.reshape(-1, n) @ x
    for j in range(1, times):
        out = np.einsum("ajs,js->as", out.reshape(n ** (d - 1 - j), n, -1), x)
    return out.reshape((n,) * (d - times) + (x.shape[1],))


def _ss_hopm(data, x, shift, max_iters, step_tol=1e-14):
    d = data.ndim
    sign = 1.0 if shift > 0 else -1.0
    for _ in range(max_iters):
        y = sign * (_batch_contract(data, x, d - 1) + shift * x)
        y /= np.linalg.norm(y, axis=0)
        delta = np.max(np.linalg.norm(y - x, axis=0))
        x = y
        if delta < step_tol:
            break
    return x


def _newton(data, x, iters, tol):
    """Projected Newton on F(v, lam) = (T v^{d-1} - lam v, (1 - v.v)/2)."""
    d = data.ndim
    n, s = x.shape
    x = x / np.linalg.norm(x, axis=0)
    eye = np.eye(n)
    for _ in range(iters):
        w = _batch_contract(data, x, d - 1)
        lam = np.einsum("is,is->s", x, w)
        res = np.linalg.norm(w - lam * x, axis=0)
        active = res > 1e-3 * tol
        if not np.any(active):
            break
        xa, wa, la = x[:, active], w[:, active], lam[active]
        m = _batch_contract(data, xa, d - 2)  # (n, n, S)
        jac = np.zeros((xa.shape[1], n + 1, n + 1))
        jac[:, :n, :n] = (d - 1) * np.moveaxis(m, -1, 0) - la[:, None, None] * eye
        jac[:, :n, n] = -xa.T
        jac[:, n, :n] = -xa.T
        rhs = np.zeros((xa.shape[1], n + 1))
        rhs[:, :n] = -(wa - la * xa).T
        try:
            step = np.linalg.solve(jac, rhs[..., None])[..., 0]
        except np.linalg.LinAlgError:
            step = np.stack([np.linalg.lstsq(j, r, rcond=None)[0] for j, r in zip(jac, rhs)])
        xa = xa + step[:, :n].T
        norms = np.linalg.norm(xa, axis=0)
        norms[norms == 0] = 1.0
        x[:, active] = xa / norms
    return x


def _dedup(pairs, tol):
    pairs = sorted(pairs, key=lambda p: (-p.lam, p.v))
    kept: list[EigenPair] = []
    for p in pairs:
        v = np.array(p.v)
        dup = False
        for q in reversed(kept):
            if q.lam - p.lam >= tol:
                break
            u = np.array(q.v)
            if min(np.linalg.norm(u - v), np.linalg.norm(u + v)) < tol:
                dup = True
                break
        if not dup:
            kept.append(p)
    return kept


def z_eigenpairs(t: Tensor, cfg: SolverConfig = SolverConfig()) -> list[EigenPair]:
    """Real Z-eigenpairs of a symmetric cubical tensor, sorted by descending lambda.

    Duplicates (lambda within ``dedup_tol`` and ``v`` within ``dedup_tol`` up to
    sign) are merged. For odd order, ``(lam, v)`` and ``(-lam, -v)`` are the same
    pair and only the orientation with a positive leading entry is reported.

    Raises
    ------
    SymmetryError
        If `t` is not symmetric; call :func:`topotensor.tensor.symmetrize` first.
    ConvergenceError
        If no start reached a residual below ``cfg.tol``.
    """
    if t.order < 2 or not t.is_cubical:
        raise ShapeError(f"cubical tensor of order >= 2 required, got dims {t.dims}")
    scale = max(1.0, float(np.max(np.abs(t.data))))
    if not is_symmetric(t, atol=1e-12 * scale):
        raise SymmetryError("z_eigenpairs needs a symmetric tensor")
    n, d = t.dims[0], t.order
    data = t.data

    rng = rng_for(cfg.seed)
    x0 = rng.standard_normal((n, cfg.starts))
    x0 = np.hstack([x0 / np.linalg.norm(x0, axis=0), np.eye(n)])

    # (d-1) |T|_F bounds the spectral radius of (d-1) T v^{d-2}, so this shift
    # makes the shifted objective convex on the sphere
    alpha = 1.0 + (d - 1) * t.norm()
    candidates = [x0]
    for shift in (alpha, -alpha):
        candidates.append(_ss_hopm(data, x0.copy(), shift, cfg.max_iters))
    x = np.hstack(candidates)
    if cfg.newton_iters:
        x = _newton(data, x, cfg.newton_iters, cfg.tol)

    pairs = []
    best = math.inf
    for col in x.T:
        if not np.all(np.isfinite(col)) or np.linalg.norm(col) == 0:
            continue
        p = canonical_pair(t, col)
        best = min(best, p.residual)
        if p.residual < cfg.tol:
            pairs.append(p)
    if not pairs:
        raise ConvergenceError(f"no start converged below tol={cfg.tol}", best)
    return _dedup(pairs, cfg.dedup_tol)


def distinct_values(pairs, tol: float = 1e-6) -> list[float]:
    """Eigenvalues of `pairs` with values closer than `tol` merged (descending)."""
    out: list[float] = []
    for lam in sorted((p.lam for p in pairs), reverse=True):
        if not out or out[-1] - lam >= tol:
            out.append(lam)
    return out


def oracle_sweep_2(t: Tensor, step: float = 1e-4, dedup_tol: float = 1e-6) -> list[EigenPair]:
    """All eigenpairs of a symmetric tensor with n = 2, by brute-force angle sweep.

    With ``v = (cos th, sin th)`` and ``w = T v^{d-1}``, v is an eigenvector iff
    ``g(th) = w_2 cos th - w_1 sin th`` vanishes. Sign changes of g on a grid
    over ``[0, pi]`` are refined by bisection to 1e-12; grid points where g is
    numerically zero and tangential zeros (local minima of |g|) are kept too.
    Results are merged by eigenvalue, so an isotropic tensor yields one pair.
    """
    if not t.is_cubical or t.dims[0] != 2 or t.order < 2:
        raise ShapeError(f"oracle_sweep_2 needs a cubical tensor with n = 2, got {t.dims}")
    data = t.data
    d = t.order

    def g_vec(th):
        x = np.vstack((np.cos(th), np.sin(th)))
        w = _batch_contract(data, x, d - 1)
        return w[1] * x[0] - w[0] * x[1]

    def g(th):
        return float(g_vec(np.array([th]))[0])

    grid = np.arange(0.0, np.pi + step, step)
    grid[-1] = min(grid[-1], np.pi)
    vals = g_vec(grid)
    scale = max(float(np.max(np.abs(vals))), t.norm(), 1e-300)
    zero = 1e-13 * scale

    roots = list(grid[np.abs(vals) <= zero])
    for i in np.flatnonzero(vals[:-1] * vals[1:] < 0):
        lo, hi, glo = grid[i], grid[i + 1], vals[i]
        while hi - lo > 1e-12:
            mid = 0.5 * (lo + hi)
            gm = g(mid)
            if gm == 0.0:
                lo = hi = mid
                break
            if (gm < 0) == (glo < 0):
                lo, glo = mid, gm
            else:
                hi = mid
        roots.append(0.5 * (lo + hi))
    absv = np.abs(vals)
    for i in range(1, len(grid) - 1):
        if zero < absv[i] <= min(absv[i - 1], absv[i + 1]) and absv[i] < 1e-3 * scale:
            if vals[i - 1] * vals[i + 1] < 0:
                continue
            r = minimize_scalar(
                lambda th: abs(g(th)),
                bounds=(grid[i - 1], grid[i + 1]),
                method="bounded",
                options={"xatol": 1e-13},
            )
            if abs(r.fun) <= 1e-10 * scale:
                roots.append(float(r.x))

    pairs = [canonical_pair(t, (math.cos(th), math.sin(th))) for th in roots]
    pairs.sort(key=lambda p: (-p.lam, p.residual))
    kept: list[EigenPair] = []
    for p in pairs:
        if kept and kept[-1].lam - p.lam < dedup_tol:
            continue
        kept.append(p)
    return kept
