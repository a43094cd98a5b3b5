"""Simplicial complexes, GF(2) boundary matrices and Betti numbers."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimsError, StrategyError
from .linalg import gf2_rank
from .tensor import Tensor

__all__ = [
    "SimplicialComplex",
    "BettiSignature",
    "ComplexStrategy",
    "build_complex",
    "boundary_matrix",
    "boundary_columns",
    "betti",
    "euler_characteristic",
    "barycentric_subdivide",
    "relabel",
    "STRATEGIES",
]

STRATEGIES = ("multipartite", "symmetric_clique")


class SimplicialComplex:
    """Downward-closed set of simplices over vertices ``0..num_vertices-1``.

    Simplices are strictly increasing vertex tuples, stored per dimension in
    lexicographic order. Instances are immutable; build them with
    :meth:`from_simplices`, which adds every face of every given simplex.
    """

    __slots__ = ("_n", "_simplices", "_index")

    def __init__(self, num_vertices: int, simplices_by_dim: Sequence[Iterable[tuple]]):
        self._n = int(num_vertices)
        if self._n < 0:
            raise DimsError("num_vertices must be nonnegative")
        layers = []
        for k, layer in enumerate(simplices_by_dim):
            layer = sorted(set(tuple(int(x) for x in s) for s in layer))
            for s in layer:
                if len(s) != k + 1 or any(a >= b for a, b in zip(s, s[1:])):
                    raise ValueError(f"{s} is not a strictly increasing {k}-simplex")
                if s[0] < 0 or s[-1] >= self._n:
                    raise ValueError(f"{s} references a vertex outside [0, {self._n})")
            layers.append(tuple(layer))
        while layers and not layers[-1]:
            layers.pop()
        self._simplices = tuple(layers)
        self._index = tuple({s: i for i, s in enumerate(layer)} for layer in layers)
        for k in range(1, len(layers)):
            below = self._index[k - 1]
            for s in layers[k]:
                for face in itertools.combinations(s, k):
                    if face not in below:
                        raise ValueError(f"face {face} of {s} missing: not downward closed")

    @classmethod
    def from_simplices(cls, num_vertices: int, simplices: Iterable[Sequence[int]]) -> "SimplicialComplex":
        """Closure of the given simplices (any vertex order, duplicates allowed)."""
        layers: list[set] = []
        for s in simplices:
            s = tuple(sorted(set(int(x) for x in s)))
            if not s:
                continue
            for size in range(1, len(s) + 1):
                while len(layers) < size:
                    layers.append(set())
                layers[size - 1].update(itertools.combinations(s, size))
        return cls(num_vertices, layers)

    @classmethod
    def empty(cls, num_vertices: int = 0) -> "SimplicialComplex":
        return cls(num_vertices, [])

    @property
    def num_vertices(self) -> int:
        return self._n

    @property
    def dimension(self) -> int:
        """Largest simplex dimension; -1 for the empty complex."""
        return len(self._simplices) - 1

    def simplices(self, k: int) -> tuple:
        if 0 <= k < len(self._simplices):
            return self._simplices[k]
        return ()

    def all_simplices(self):
        for layer in self._simplices:
            yield from layer

    def index(self, simplex: tuple) -> int:
        return self._index[len(simplex) - 1][simplex]

    def f_vector(self) -> list[int]:
        return [len(layer) for layer in self._simplices]

    def maximal_simplices(self) -> list[tuple]:
        out = []
        for k, layer in enumerate(self._simplices):
            covered = set()
            for s in self.simplices(k + 1):
                covered.update(itertools.combinations(s, k + 1))
            out.extend(s for s in layer if s not in covered)
        return out

    def __len__(self):
        return sum(self.f_vector())

    def __contains__(self, simplex):
        s = tuple(simplex)
        k = len(s) - 1
        return 0 <= k < len(self._index) and s in self._index[k]

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._n == other._n and self._simplices == other._simplices

    def __hash__(self):
        return hash((self._n, self._simplices))

    def __repr__(self):
        return f"SimplicialComplex(num_vertices={self._n}, f={self.f_vector()})"


@dataclass(frozen=True)
class BettiSignature:
    betti: tuple

    def __post_init__(self):
        vals = tuple(int(b) for b in self.betti)
        if any(b < 0 for b in vals):
            raise ValueError("Betti numbers are nonnegative")
        object.__setattr__(self, "betti", vals)

    def padded(self, length: int) -> "BettiSignature":
        if length < len(self.betti):
            if any(self.betti[length:]):
                raise ValueError("cannot drop nonzero Betti numbers")
            return BettiSignature(self.betti[:length])
        return BettiSignature(self.betti + (0,) * (length - len(self.betti)))

    def euler(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    def __iter__(self):
        return iter(self.betti)

    def __len__(self):
        return len(self.betti)

    def __getitem__(self, k):
        return self.betti[k]

    def tolist(self) -> list[int]:
        return list(self.betti)


@dataclass(frozen=True)
class ComplexStrategy:
    mode: str = "multipartite"
    threshold: float = 0.0

    def __post_init__(self):
        mode = self.mode.replace("-", "_")
        if mode not in STRATEGIES:
            raise StrategyError(f"unknown strategy {self.mode!r}; expected one of {STRATEGIES}")
        if not self.threshold >= 0:
            raise StrategyError("threshold must be >= 0")
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "threshold", float(self.threshold))


def build_complex(t: Tensor, s: ComplexStrategy = ComplexStrategy()) -> SimplicialComplex:
    """Associate a simplicial complex with `t`.

    Every entry with ``|T[i_1..i_d]| > threshold`` spans one simplex:

    * ``multipartite`` -- on vertices ``(m, i_m)``, one per mode index, so the
      simplex has exactly d vertices. Vertex ``(m, i)`` gets id
      ``n_1 + ... + n_{m-1} + i``.
    * ``symmetric_clique`` -- on vertices ``0..n-1``, spanning the set of
      distinct indices of the entry. Needs a cubical tensor.
    """
    hits = np.argwhere(np.abs(t.data) > s.threshold)
    if s.mode == "multipartite":
        offsets = np.concatenate(([0], np.cumsum(t.dims)[:-1]))
        tops = [tuple(int(x) for x in row + offsets) for row in hits]
        return SimplicialComplex.from_simplices(int(sum(t.dims)), tops)
    if not t.is_cubical:
        raise StrategyError(f"symmetric_clique needs a cubical tensor, got dims {t.dims}")
    tops = {tuple(sorted(set(int(x) for x in row))) for row in hits}
    return SimplicialComplex.from_simplices(t.dims[0], tops)


def boundary_columns(k: int, c: SimplicialComplex) -> list[int]:
    """Columns of the GF(2) boundary map as row bitmasks (bit i = (k-1)-simplex i)."""
    if k < 1:
        raise ValueError("boundary_matrix needs k >= 1")
    rows = c._index[k - 1] if k - 1 < len(c._index) else {}
    cols = []
    for s in c.simplices(k):
        bits = 0
        for face in itertools.combinations(s, k):
            bits |= 1 << rows[face]
        cols.append(bits)
    return cols


def boundary_matrix(k: int, c: SimplicialComplex) -> np.ndarray:
    """Dense 0/1 matrix of shape ``(f_{k-1}, f_k)``; rows and columns in lexicographic order."""
    if k < 1:
        raise ValueError("boundary_matrix needs k >= 1")
    out = np.zeros((len(c.simplices(k - 1)), len(c.simplices(k))), dtype=np.uint8)
    for j, s in enumerate(c.simplices(k)):
        for face in itertools.combinations(s, k):
            out[c.index(face), j] = 1
    return out


def betti(c: SimplicialComplex, up_to: int | None = None) -> BettiSignature:
    """Betti numbers ``beta_0..beta_up_to`` over GF(2), zero-padded.

    ``beta_k = f_k - rank d_k - rank d_{k+1}`` with ``rank d_0 = 0``. Defaults to
    the complex's own dimension.
    """
    if up_to is None:
        up_to = max(c.dimension, 0)
    if up_to < 0:
        raise ValueError("up_to must be >= 0")
    f = c.f_vector()
    ranks = [0] * (up_to + 2)
    for k in range(1, min(up_to + 1, c.dimension) + 1):
        ranks[k] = gf2_rank(boundary_columns(k, c))
    out = []
    for k in range(up_to + 1):
        fk = f[k] if k < len(f) else 0
        out.append(fk - ranks[k] - ranks[k + 1])
    return BettiSignature(tuple(out))


def euler_characteristic(c: SimplicialComplex) -> int:
    return sum((-1) ** k * fk for k, fk in enumerate(c.f_vector()))


def barycentric_subdivide(c: SimplicialComplex) -> SimplicialComplex:
    """First barycentric subdivision.

    Output vertex j is the j-th input simplex in (dimension, lexicographic)
    order; output simplices are inclusion chains of input simplices.
    """
    ids = {s: i for i, s in enumerate(c.all_simplices())}
    flags = []
    for top in c.maximal_simplices():
        for perm in itertools.permutations(top):
            flags.append([ids[tuple(sorted(perm[: j + 1]))] for j in range(len(perm))])
    return SimplicialComplex.from_simplices(len(ids), flags)


def relabel(c: SimplicialComplex, perm: Sequence[int]) -> SimplicialComplex:
    """Rename vertex v to ``perm[v]``."""
    perm = list(perm)
    if sorted(perm) != list(range(c.num_vertices)):
        raise ValueError("perm must be a permutation of the vertex ids")
    return SimplicialComplex.from_simplices(
        c.num_vertices, ([perm[v] for v in s] for s in c.all_simplices())
    )
