"""Topological eigenvalue ``lambda = sum_k c_k beta_k`` and its companions.

The weights ``c_k`` are configuration: a :class:`CoefficientScheme` either lists
them explicitly or generates the affine sequence ``c_k = a*k + b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from numbers import Real
from typing import Sequence

from .complex import (
    BettiSignature,
    ComplexStrategy,
    SimplicialComplex,
    betti,
    build_complex,
)
from .eigen import SolverConfig, z_eigenpairs
from .errors import SchemeError
from .tensor import Tensor

__all__ = [
    "CoefficientScheme",
    "TopoEigenReport",
    "make_coefficients",
    "topological_eigenvalue",
    "eigenvalue_count_bound",
    "topo_report",
    "invariance_check",
    "count_bound_diagnostic",
    "parse_number",
]


def parse_number(text: str):
    """``"2"`` -> 2, ``"2.5"`` -> 2.5; integers stay exact."""
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        try:
            return float(text)
        except ValueError:
            raise SchemeError(f"not a number: {text!r}") from None


def _num(x):
    if isinstance(x, bool) or not isinstance(x, Real):
        raise SchemeError(f"coefficient {x!r} is not a real number")
    return x if isinstance(x, int) else float(x)


@dataclass(frozen=True)
class CoefficientScheme:
    kind: str = "affine"
    values: tuple = ()
    a: float = 1
    b: float = 2

    def __post_init__(self):
        if self.kind not in ("affine", "explicit"):
            raise SchemeError(f"unknown scheme {self.kind!r}")
        object.__setattr__(self, "values", tuple(_num(x) for x in self.values))
        object.__setattr__(self, "a", _num(self.a))
        object.__setattr__(self, "b", _num(self.b))

    @classmethod
    def affine(cls, a=1, b=2) -> "CoefficientScheme":
        return cls("affine", (), a, b)

    @classmethod
    def explicit(cls, values: Sequence) -> "CoefficientScheme":
        return cls("explicit", tuple(values))

    @classmethod
    def parse(cls, text: str) -> "CoefficientScheme":
        """Parse ``affine:a,b`` or ``explicit:v1,v2,...``."""
        kind, _, rest = text.partition(":")
        parts = [parse_number(p) for p in rest.split(",") if p.strip()]
        if kind == "affine":
            if len(parts) != 2:
                raise SchemeError("affine scheme needs exactly two numbers: affine:a,b")
            return cls.affine(*parts)
        if kind == "explicit":
            if not parts:
                raise SchemeError("explicit scheme needs at least one value")
            return cls.explicit(parts)
        raise SchemeError(f"unknown scheme {text!r}; use affine:a,b or explicit:v1,...")

    def to_dict(self) -> dict:
        if self.kind == "affine":
            return {"scheme": "affine", "a": self.a, "b": self.b}
        return {"scheme": "explicit", "values": list(self.values)}

    @classmethod
    def from_dict(cls, d: dict) -> "CoefficientScheme":
        kind = d.get("scheme")
        if kind == "affine":
            return cls.affine(d.get("a", 1), d.get("b", 2))
        if kind == "explicit":
            return cls.explicit(d.get("values", ()))
        raise SchemeError(f"unknown scheme in {d!r}")


def make_coefficients(s: CoefficientScheme, length: int) -> list:
    if length < 1:
        raise SchemeError("coefficient length must be positive")
    if s.kind == "affine":
        return [s.a * k + s.b for k in range(length)]
    if len(s.values) != length:
        raise SchemeError(f"explicit scheme has {len(s.values)} values, {length} needed")
    return list(s.values)


def topological_eigenvalue(betti_sig, coeffs) -> float:
    b = list(betti_sig)
    c = list(coeffs)
    if len(b) != len(c):
        raise SchemeError(f"{len(c)} coefficients for a signature of length {len(b)}")
    return sum(ck * bk for ck, bk in zip(c, b))


def eigenvalue_count_bound(betti_sig) -> int:
    """Upper bound on the number of distinct eigenvalues: the total Betti number."""
    return int(sum(betti_sig))


@dataclass(frozen=True)
class TopoEigenReport:
    betti: BettiSignature
    coeffs: tuple
    lambda_topo: float
    count_bound: int

    def to_dict(self) -> dict:
        return {
            "betti": self.betti.tolist(),
            "coeffs": list(self.coeffs),
            "lambda_topo": self.lambda_topo,
            "count_bound": self.count_bound,
        }


def topo_report(sig: BettiSignature, scheme: CoefficientScheme) -> TopoEigenReport:
    coeffs = make_coefficients(scheme, len(sig))
    return TopoEigenReport(
        sig, tuple(coeffs), topological_eigenvalue(sig, coeffs), eigenvalue_count_bound(sig)
    )


@dataclass(frozen=True)
class InvarianceResult:
    equivalent_signature: bool
    lambda1: float
    lambda2: float
    betti1: tuple = field(default=())
    betti2: tuple = field(default=())


def invariance_check(
    c1: SimplicialComplex, c2: SimplicialComplex, s: CoefficientScheme
) -> InvarianceResult:
    """Compare two complexes through their Betti signatures.

    Equal signatures are necessary for homotopy equivalence, and equal
    signatures force equal topological eigenvalues under a shared scheme.
    """
    length = max(c1.dimension, c2.dimension, 0) + 1
    b1 = betti(c1, length - 1)
    b2 = betti(c2, length - 1)
    coeffs = make_coefficients(s, length)
    return InvarianceResult(
        b1 == b2,
        topological_eigenvalue(b1, coeffs),
        topological_eigenvalue(b2, coeffs),
        b1.betti,
        b2.betti,
    )


@dataclass(frozen=True)
class BoundDiagnostic:
    distinct_eigenvalues: int
    bound: int
    satisfied: bool

    def to_dict(self) -> dict:
        return {
            "distinct_eigenvalues": self.distinct_eigenvalues,
            "bound": self.bound,
            "satisfied": self.satisfied,
        }


def count_bound_diagnostic(
    t: Tensor, s: ComplexStrategy = ComplexStrategy(), cfg: SolverConfig = SolverConfig()
) -> BoundDiagnostic:
    """Compare the solver's spectrum size with the Betti bound; reports, never raises on violation."""
    pairs = z_eigenpairs(t, cfg)
    bound = eigenvalue_count_bound(betti(build_complex(t, s), t.order - 1))
    return BoundDiagnostic(len(pairs), bound, len(pairs) <= bound)
