"""Command-line interface: ``topotensor <subcommand> ...``.

Exit status is 0 on success, 1 on usage errors (bad flags, unreadable or
malformed files) and 2 when the computation itself fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import __version__
from .complex import ComplexStrategy, barycentric_subdivide, betti, build_complex
from .decomp import cp_als, cp_eigenvalues, mse, reconstruct, tucker_eigenvalues, tucker_hosvd
from .eigen import SolverConfig, z_eigenpairs
from .errors import FormatError, SpecError, TopoTensorError
from .harness import load_config, run_validation, serialize_report
from .io import format_dten, format_scpx, read_dten, read_scpx, sniff
from .synth import KINDS, GenSpec, generate
from .tensor import symmetrize
from .topo import CoefficientScheme, topo_report


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text: str) -> tuple:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _scheme(text: str) -> CoefficientScheme:
    try:
        return CoefficientScheme.parse(text)
    except TopoTensorError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, help="master seed (default 0; for validate, overrides config and env)")
    p.add_argument("--threshold", type=float, default=0.0)
    p.add_argument(
        "--strategy", choices=["multipartite", "symmetric-clique"], default="multipartite"
    )
    p.add_argument("--scheme", type=_scheme, default=CoefficientScheme.affine(1, 2))
    p.add_argument("--rank", type=int)
    p.add_argument("--core", type=_int_list)
    p.add_argument("--tol", type=float, default=SolverConfig.tol)
    p.add_argument("--max-iters", type=int, default=SolverConfig.max_iters)
    p.add_argument("--starts", type=int, default=SolverConfig.starts)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", metavar="PATH")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="topotensor", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"topotensor {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", parents=[common], help="write a synthetic tensor as DTEN")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--dims", type=_int_list, required=True)
    p.add_argument("--diag", type=_float_list)
    p.add_argument("--values", type=_float_list)

    p = sub.add_parser("betti", parents=[common], help="Betti numbers of a DTEN or scpx file")
    p.add_argument("file")
    p.add_argument("--up-to", type=int)

    p = sub.add_parser("eig", parents=[common], help="Z-eigenpairs of a symmetric DTEN tensor")
    p.add_argument("file")
    p.add_argument("--symmetrize", action="store_true", help="symmetrize the input first")

    p = sub.add_parser("topo-eig", parents=[common], help="topological eigenvalue report")
    p.add_argument("file")

    p = sub.add_parser("decomp", parents=[common], help="CP or Tucker model summary")
    p.add_argument("method", choices=["cp", "tucker"])
    p.add_argument("file")
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--hooi-iters", type=int, default=0)

    p = sub.add_parser("validate", parents=[common], help="run the validation harness")
    p.add_argument("config", nargs="?", help="JSON experiment config (default: built-in)")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("subdivide", parents=[common], help="barycentric subdivision of an scpx file")
    p.add_argument("file")
    return parser


def _strategy(args) -> ComplexStrategy:
    return ComplexStrategy(args.strategy, args.threshold)


def _solver(args) -> SolverConfig:
    return SolverConfig(starts=args.starts, max_iters=args.max_iters, tol=args.tol, seed=args.seed or 0)


def _load_complex(args):
    if sniff(args.file) == "scpx":
        return read_scpx(args.file), None
    t = read_dten(args.file)
    return build_complex(t, _strategy(args)), t.order


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        writer = csv.writer(buf, lineterminator="\n")
        keys = list(rows[0])
        writer.writerow(keys)
        for row in rows:
            writer.writerow(
                [json.dumps(row[k]) if isinstance(row[k], (list, dict)) else row[k] for k in keys]
            )
    return buf.getvalue()


def _render(payload, fmt: str) -> str:
    if fmt == "csv":
        return _csv(payload if isinstance(payload, list) else [payload])
    return json.dumps(payload, sort_keys=True) + "\n"


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args):
    spec = GenSpec(
        args.kind, args.dims, args.seed or 0, args.rank, args.core, args.diag, args.values
    )
    _emit(format_dten(generate(spec)), args.out)


def cmd_betti(args):
    c, order = _load_complex(args)
    up_to = args.up_to
    if up_to is None:
        up_to = order - 1 if order is not None else max(c.dimension, 0)
    sig = betti(c, up_to).tolist()
    _emit(_render({"betti": sig}, "csv") if args.format == "csv" else json.dumps(sig) + "\n", args.out)


def cmd_eig(args):
    t = read_dten(args.file)
    if args.symmetrize:
        t = symmetrize(t)
    pairs = z_eigenpairs(t, _solver(args))
    _emit(_render([p.to_dict() for p in pairs], args.format), args.out)


def cmd_topo_eig(args):
    c, order = _load_complex(args)
    length = order if order is not None else max(c.dimension, 0) + 1
    report = topo_report(betti(c, length - 1), args.scheme)
    _emit(_render(report.to_dict(), args.format), args.out)


def cmd_decomp(args):
    t = read_dten(args.file)
    if args.method == "cp":
        model = cp_als(t, args.rank or 3, args.restarts, args.seed or 0)
        summary = {
            "method": "cp",
            "rank": model.rank,
            "cp_eigenvalues": cp_eigenvalues(model),
            "mse": mse(t, reconstruct(model)),
            "sweeps": len(model.errors),
        }
    else:
        core = args.core or tuple(min(2, n) for n in t.dims)
        model = tucker_hosvd(t, core, args.hooi_iters)
        summary = {
            "method": "tucker",
            "core_dims": list(model.core_dims),
            "tucker_eigenvalues": tucker_eigenvalues(t, model),
            "mse": mse(t, reconstruct(model)),
        }
    summary["dims"] = list(t.dims)
    _emit(_render(summary, args.format), args.out)


def cmd_validate(args):
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    report = run_validation(cfg, jobs=args.jobs)
    _emit(serialize_report(report, args.format), args.out)


def cmd_subdivide(args):
    if sniff(args.file) != "scpx":
        raise FormatError("subdivide expects an scpx file")
    _emit(format_scpx(barycentric_subdivide(read_scpx(args.file))), args.out)


COMMANDS = {
    "gen": cmd_gen,
    "betti": cmd_betti,
    "eig": cmd_eig,
    "topo-eig": cmd_topo_eig,
    "decomp": cmd_decomp,
    "validate": cmd_validate,
    "subdivide": cmd_subdivide,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        COMMANDS[args.command](args)
    except (UsageError, FormatError, SpecError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (TopoTensorError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
