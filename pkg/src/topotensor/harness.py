"""Validation harness: scenario tensors -> Betti numbers, topological eigenvalue,
CP/Tucker fits and the eigenvalue-count diagnostic, collected into one report.

Reports are byte-deterministic for a fixed config: records are sorted by
scenario name, JSON keys are sorted, and every random stream is derived from
(master seed, scenario index).
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Optional

from . import __version__
from .complex import ComplexStrategy, betti, build_complex
from .decomp import cp_als, cp_eigenvalues, mse, reconstruct, tucker_eigenvalues, tucker_hosvd
from .eigen import SolverConfig, z_eigenpairs
from .errors import FormatError
from .synth import GenSpec, derive_seed, generate
from .tensor import symmetrize
from .topo import CoefficientScheme, eigenvalue_count_bound, make_coefficients, topological_eigenvalue

__all__ = [
    "Scenario",
    "ExperimentConfig",
    "default_config",
    "run_validation",
    "report_to_json",
    "report_to_csv",
    "serialize_report",
    "load_config",
    "RECORD_FIELDS",
    "SEED_ENV",
]

SEED_ENV = "TOPOTENSOR_SEED"

RECORD_FIELDS = (
    "name",
    "seed",
    "dims",
    "betti",
    "coeffs",
    "lambda_topo",
    "count_bound",
    "cp_eigenvalues",
    "tucker_eigenvalues",
    "mse_cp",
    "mse_tucker",
    "solver_distinct_eigenvalues",
    "bound_satisfied",
    "error",
)

DEFINITIONS = {
    "mse": "mean of squared entrywise reconstruction error, |T - T_hat|_F^2 / numel",
    "cp_eigenvalues": "CP component weights, descending magnitude, signs kept",
    "tucker_eigenvalues": "per mode, leading singular values of the mode unfolding",
    "eigen_input": "z-eigenpairs of the symmetrized scenario tensor",
    "homology": "GF(2) coefficients",
}


@dataclass
class Scenario:
    """A named tensor generator; ``seed=None`` derives it from the master seed."""

    name: str
    kind: str
    dims: tuple
    seed: Optional[int] = None
    rank: Optional[int] = None
    core_dims: Optional[tuple] = None
    diag: Optional[tuple] = None
    values: Optional[tuple] = None
    cp_rank: Optional[int] = None
    tucker_core_dims: Optional[tuple] = None

    def gen_spec(self, seed: int) -> GenSpec:
        return GenSpec(
            self.kind, self.dims, seed, self.rank, self.core_dims, self.diag, self.values
        )

    def to_dict(self) -> dict:
        out = {k: v for k, v in asdict(self).items() if v is not None}
        return {k: list(v) if isinstance(v, tuple) else v for k, v in out.items()}


@dataclass
class ExperimentConfig:
    scenarios: list = field(default_factory=list)
    strategy: ComplexStrategy = field(default_factory=ComplexStrategy)
    scheme: CoefficientScheme = field(default_factory=CoefficientScheme.affine)
    solver: SolverConfig = field(default_factory=SolverConfig)
    cp_rank: int = 3
    cp_restarts: int = 8
    tucker_core_dims: tuple = (2, 2, 2)
    hooi_iters: int = 0
    output_format: str = "json"
    seed: int = 0

    def validate(self) -> None:
        names = [s.name for s in self.scenarios]
        if len(set(names)) != len(names):
            raise FormatError(f"scenario names must be unique: {names}")
        if self.output_format not in ("json", "csv"):
            raise FormatError("output_format must be json or csv")
        if self.cp_rank < 1 or self.cp_restarts < 1:
            raise FormatError("cp_rank and cp_restarts must be positive")
        if self.seed < 0:
            raise FormatError("seed must be unsigned")

    def to_dict(self) -> dict:
        return {
            "scenarios": [s.to_dict() for s in self.scenarios],
            "strategy": {"mode": self.strategy.mode, "threshold": self.strategy.threshold},
            "scheme": self.scheme.to_dict(),
            "solver": asdict(self.solver),
            "cp_rank": self.cp_rank,
            "cp_restarts": self.cp_restarts,
            "tucker_core_dims": list(self.tucker_core_dims),
            "hooi_iters": self.hooi_iters,
            "output_format": self.output_format,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        known = set(cls.__dataclass_fields__)
        extra = set(d) - known
        if extra:
            raise FormatError(f"unknown config fields {sorted(extra)}")
        try:
            kw = dict(d)
            if "scenarios" in kw:
                kw["scenarios"] = [Scenario(**s) for s in kw["scenarios"]]
            if "strategy" in kw:
                kw["strategy"] = ComplexStrategy(**kw["strategy"])
            if "scheme" in kw:
                kw["scheme"] = CoefficientScheme.from_dict(kw["scheme"])
            if "solver" in kw:
                kw["solver"] = SolverConfig(**kw["solver"])
            if "tucker_core_dims" in kw:
                kw["tucker_core_dims"] = tuple(kw["tucker_core_dims"])
            cfg = cls(**kw)
        except (TypeError, ValueError) as exc:
            raise FormatError(f"invalid config: {exc}") from None
        for s in cfg.scenarios:
            s.dims = tuple(s.dims)
        cfg.validate()
        return cfg


def default_config() -> ExperimentConfig:
    """Three 3x3x3 scenarios: random, CP rank 2, and Tucker core (2, 2, 2)."""
    return ExperimentConfig(
        scenarios=[
            Scenario("random", "random", (3, 3, 3)),
            Scenario("low_rank", "low_rank", (3, 3, 3), rank=2),
            Scenario("rank_deficient", "rank_deficient", (3, 3, 3), core_dims=(2, 2, 2)),
        ]
    )


def load_config(path=None, environ=None) -> ExperimentConfig:
    """Read a JSON config (or the default) and apply the ``TOPOTENSOR_SEED`` override."""
    if path is None:
        cfg = default_config()
    else:
        try:
            with open(path) as fh:
                cfg = ExperimentConfig.from_dict(json.load(fh))
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON ({exc})") from None
    environ = os.environ if environ is None else environ
    if environ.get(SEED_ENV):
        try:
            cfg.seed = int(environ[SEED_ENV])
        except ValueError:
            raise FormatError(f"{SEED_ENV} must be an unsigned integer") from None
        cfg.validate()
    return cfg


def _run_scenario(cfg: ExperimentConfig, index: int, sc: Scenario) -> dict:
    seed = sc.seed if sc.seed is not None else derive_seed(cfg.seed, index)
    rec: dict = {k: None for k in RECORD_FIELDS}
    rec.update(name=sc.name, seed=seed, dims=list(sc.dims))
    try:
        t = generate(sc.gen_spec(seed))
        d = t.order
        sig = betti(build_complex(t, cfg.strategy), d - 1)
        coeffs = make_coefficients(cfg.scheme, d)
        rec["betti"] = sig.tolist()
        rec["coeffs"] = coeffs
        rec["lambda_topo"] = topological_eigenvalue(sig, coeffs)
        rec["count_bound"] = eigenvalue_count_bound(sig)

        cp = cp_als(t, sc.cp_rank or cfg.cp_rank, cfg.cp_restarts, derive_seed(seed, 1))
        rec["cp_eigenvalues"] = cp_eigenvalues(cp)
        rec["mse_cp"] = mse(t, reconstruct(cp))

        core = tuple(sc.tucker_core_dims or cfg.tucker_core_dims)
        tk = tucker_hosvd(t, core, cfg.hooi_iters)
        rec["tucker_eigenvalues"] = tucker_eigenvalues(t, tk)
        rec["mse_tucker"] = mse(t, reconstruct(tk))

        solver = replace(cfg.solver, seed=derive_seed(seed, 2))
        pairs = z_eigenpairs(symmetrize(t), solver)
        rec["solver_distinct_eigenvalues"] = len(pairs)
        rec["bound_satisfied"] = len(pairs) <= rec["count_bound"]
    except Exception as exc:  # failures are recorded, the run continues
        rec["error"] = f"{type(exc).__name__}: {exc}"
    return rec


def run_validation(cfg: ExperimentConfig, jobs: int = 1) -> dict:
    """Run every scenario; returns the report as a plain dict.

    Scenarios are independent; with ``jobs > 1`` they run on a thread pool.
    The output does not depend on `jobs`.
    """
    cfg.validate()
    items = list(enumerate(cfg.scenarios))
    if jobs > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(lambda it: _run_scenario(cfg, *it), items))
    else:
        records = [_run_scenario(cfg, i, sc) for i, sc in items]
    records.sort(key=lambda r: r["name"])
    return {
        "tool": "topotensor",
        "version": __version__,
        "config": cfg.to_dict(),
        "definitions": DEFINITIONS,
        "records": records,
    }


def report_to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True)
    if isinstance(value, bool):
        return "true" if value else "false"
    return repr(value) if isinstance(value, float) else str(value)


def report_to_csv(report: dict) -> str:
    """One row per scenario; list-valued fields are JSON-encoded in their cell."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RECORD_FIELDS)
    for rec in report["records"]:
        writer.writerow([_cell(rec.get(k)) for k in RECORD_FIELDS])
    return buf.getvalue()


def serialize_report(report: dict, fmt: str = "json") -> str:
    if fmt == "json":
        return report_to_json(report)
    if fmt == "csv":
        return report_to_csv(report)
    raise FormatError(f"unknown format {fmt!r}")
