"""Seeded synthetic tensors for the validation scenarios.

All randomness comes from ``numpy.random.Generator(PCG64(seed))``; PCG64 is a
fixed, documented algorithm, so a given seed reproduces the same tensor on any
platform running the same NumPy release.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict
from typing import Optional

import numpy as np

from .errors import SpecError
from .tensor import Tensor, outer

__all__ = ["GenSpec", "generate", "rng_for", "derive_seed", "random_orthonormal", "KINDS"]

KINDS = ("random", "low_rank", "rank_deficient", "diagonal", "explicit")


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed)))


def derive_seed(master: int, *path: int) -> int:
    """Child seed for an independent stream, e.g. ``derive_seed(master, scenario_index)``."""
    ss = np.random.SeedSequence(int(master), spawn_key=tuple(int(p) for p in path))
    return int(ss.generate_state(1, dtype=np.uint32)[0])


def random_orthonormal(rng: np.random.Generator, n: int, k: int) -> np.ndarray:
    """n x k matrix with orthonormal columns (QR of a Gaussian matrix, sign-fixed)."""
    q, r = np.linalg.qr(rng.standard_normal((n, k)))
    signs = np.where(np.diag(r) < 0, -1.0, 1.0)
    return q * signs


@dataclass
class GenSpec:
    kind: str
    dims: tuple
    seed: int = 0
    rank: Optional[int] = None
    core_dims: Optional[tuple] = None
    diag: Optional[tuple] = None
    values: Optional[tuple] = None

    def __post_init__(self):
        self.dims = tuple(int(n) for n in self.dims)
        if self.core_dims is not None:
            self.core_dims = tuple(int(n) for n in self.core_dims)
        if self.diag is not None:
            self.diag = tuple(float(x) for x in self.diag)
        if self.values is not None:
            self.values = tuple(float(x) for x in self.values)

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise SpecError(f"unknown kind {self.kind!r}; expected one of {KINDS}")
        if not self.dims or any(n < 1 for n in self.dims):
            raise SpecError(f"dims must be positive integers, got {self.dims}")
        if not isinstance(self.seed, (int, np.integer)) or self.seed < 0:
            raise SpecError(f"seed must be an unsigned integer, got {self.seed!r}")
        if self.kind == "low_rank" and (self.rank is None or self.rank < 1):
            raise SpecError("low_rank requires rank >= 1")
        if self.kind == "rank_deficient":
            if self.core_dims is None or len(self.core_dims) != len(self.dims):
                raise SpecError("rank_deficient requires core_dims with one entry per mode")
            if any(c < 1 or c > n for c, n in zip(self.core_dims, self.dims)):
                raise SpecError(f"core_dims {self.core_dims} must lie in 1..dims {self.dims}")
        if self.kind == "diagonal":
            if len(set(self.dims)) != 1:
                raise SpecError("diagonal requires equal dims")
            if self.diag is None or len(self.diag) != self.dims[0]:
                raise SpecError(f"diagonal requires {self.dims[0]} diag values")
        if self.kind == "explicit":
            if self.values is None or len(self.values) != math.prod(self.dims):
                raise SpecError("explicit requires prod(dims) values")

    def to_dict(self) -> dict:
        out = {k: v for k, v in asdict(self).items() if v is not None}
        return {k: list(v) if isinstance(v, tuple) else v for k, v in out.items()}

    @classmethod
    def from_dict(cls, d: dict) -> "GenSpec":
        known = {"kind", "dims", "seed", "rank", "core_dims", "diag", "values"}
        extra = set(d) - known
        if extra:
            raise SpecError(f"unknown GenSpec fields {sorted(extra)}")
        if "kind" not in d or "dims" not in d:
            raise SpecError("GenSpec needs 'kind' and 'dims'")
        return cls(**d)


def generate(spec: GenSpec) -> Tensor:
    """Build the tensor described by `spec`; equal specs give bitwise-equal tensors."""
    spec.validate()
    dims = spec.dims
    if spec.kind == "explicit":
        return Tensor.from_values(dims, spec.values)
    if spec.kind == "diagonal":
        data = np.zeros(dims)
        for i, a in enumerate(spec.diag):
            data[(i,) * len(dims)] = a
        return Tensor(data)

    rng = rng_for(spec.seed)
    if spec.kind == "random":
        return Tensor(rng.standard_normal(dims))
    if spec.kind == "low_rank":
        data = np.zeros(dims)
        for _ in range(spec.rank):
            data += outer([rng.standard_normal(n) for n in dims])
        return Tensor(data)
    # rank_deficient: Tucker form core x_1 U_1 ... x_d U_d
    data = rng.standard_normal(spec.core_dims)
    for m, (n, c) in enumerate(zip(dims, spec.core_dims)):
        u = random_orthonormal(rng, n, c)
        data = np.moveaxis(np.tensordot(u, data, axes=([1], [m])), 0, m)
    return Tensor(data)
