import json

import numpy as np
import pytest

from topotensor.cli import main
from topotensor.complex import ComplexStrategy, betti, build_complex
from topotensor.eigen import z_eigenpairs
from topotensor.io import read_dten, read_scpx, write_dten
from topotensor.synth import GenSpec, generate
from topotensor.tensor import Tensor


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    sphere = tmp_path / "sphere.scpx"
    sphere.write_text("scpx 1\n4\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n")
    eight = tmp_path / "eight.scpx"
    eight.write_text("scpx 1\n5\n0 1\n1 2\n0 2\n0 3\n3 4\n0 4\n")
    k23 = tmp_path / "k23.dten"
    write_dten(Tensor(np.ones((2, 3))), k23)
    return {"sphere": sphere, "eight": eight, "k23": k23}


def test_betti_sphere(capsys, files):
    code, out, _ = run(capsys, "betti", files["sphere"])
    assert code == 0 and out == "[1, 0, 1]\n"


@pytest.mark.parametrize("name", ["k23", "eight"])
def test_topo_eig_explicit_scheme(capsys, files, name):
    code, out, _ = run(capsys, "topo-eig", files[name], "--scheme", "explicit:2,3")
    report = json.loads(out)
    assert code == 0
    assert report == {"betti": [1, 2], "coeffs": [2, 3], "count_bound": 3, "lambda_topo": 8}


def test_topo_eig_csv(capsys, files):
    code, out, _ = run(capsys, "topo-eig", files["k23"], "--format", "csv")
    header, row = out.splitlines()
    assert code == 0 and header.split(",") == ["betti", "coeffs", "lambda_topo", "count_bound"]
    assert row.endswith(",8,3")


def test_gen_then_betti_and_eig(capsys, tmp_path):
    path = tmp_path / "t.dten"
    code, _, _ = run(capsys, "gen", "--kind", "random", "--dims", "2,2,2", "--seed", 11, "--out", path)
    assert code == 0
    t = generate(GenSpec("random", (2, 2, 2), 11))
    assert read_dten(path) == t

    code, out, _ = run(capsys, "betti", path, "--threshold", "0.5", "--strategy", "symmetric-clique")
    expected = betti(build_complex(t, ComplexStrategy("symmetric_clique", 0.5)), 2).tolist()
    assert code == 0 and json.loads(out) == expected

    code, out, _ = run(capsys, "eig", path, "--symmetrize")
    pairs = json.loads(out)
    assert code == 0 and pairs
    assert all(set(p) == {"lambda", "v", "residual"} for p in pairs)


def test_eig_matches_library(capsys, tmp_path):
    path = tmp_path / "d.dten"
    run(capsys, "gen", "--kind", "diagonal", "--dims", "2,2,2", "--diag", "3,1", "--out", path)
    code, out, _ = run(capsys, "eig", path)
    lams = [p["lambda"] for p in json.loads(out)]
    assert code == 0
    np.testing.assert_allclose(lams, [p.lam for p in z_eigenpairs(read_dten(path))], atol=1e-12)
    assert len(lams) == 3


def test_eig_non_symmetric_is_computation_error(capsys, tmp_path):
    path = tmp_path / "r.dten"
    write_dten(Tensor(np.arange(8.0).reshape(2, 2, 2)), path)
    code, out, err = run(capsys, "eig", path)
    assert code == 2 and out == "" and "symmetric" in err


@pytest.mark.parametrize("method,key", [("cp", "cp_eigenvalues"), ("tucker", "tucker_eigenvalues")])
def test_decomp(capsys, tmp_path, method, key):
    path = tmp_path / "lr.dten"
    run(capsys, "gen", "--kind", "low_rank", "--dims", "3,3,3", "--rank", 2, "--seed", 3, "--out", path)
    extra = ["--rank", "2"] if method == "cp" else ["--core", "2,2,2"]
    code, out, _ = run(capsys, "decomp", method, path, *extra)
    summary = json.loads(out)
    assert code == 0 and summary["method"] == method and summary["dims"] == [3, 3, 3]
    assert summary["mse"] < 1e-6
    assert key in summary


def test_validate_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "validate", "--out", a)[0] == 0
    assert run(capsys, "validate", "--out", b, "--jobs", 2)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    report = json.loads(a.read_text())
    assert len(report["records"]) == 3


def test_validate_config_and_seed(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"scenarios": [{"name": "x", "kind": "random", "dims": [2, 2, 2]}]}))
    code, out, _ = run(capsys, "validate", cfg, "--format", "csv")
    assert code == 0 and len(out.splitlines()) == 2
    monkeypatch.setenv("TOPOTENSOR_SEED", "9")
    env = json.loads(run(capsys, "validate", cfg)[1])
    assert env["config"]["seed"] == 9
    flag = json.loads(run(capsys, "validate", cfg, "--seed", 4)[1])
    assert flag["config"]["seed"] == 4


def test_subdivide(capsys, files, tmp_path):
    out = tmp_path / "sd.scpx"
    code, _, _ = run(capsys, "subdivide", files["sphere"], "--out", out)
    sd = read_scpx(out)
    assert code == 0
    assert sd.f_vector() == [14, 36, 24]
    assert betti(sd).tolist() == [1, 0, 1]


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["betti"],
        ["bogus"],
        ["betti", "x", "--no-such-flag"],
        ["topo-eig", "x", "--scheme", "poly:1"],
        ["gen", "--kind", "random", "--dims", "a,b"],
    ],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 1


def test_file_errors(capsys, tmp_path, files):
    bad = tmp_path / "bad.dten"
    bad.write_text("dten 1\n2\n2 2\n1 2 3\n")
    assert run(capsys, "betti", bad)[0] == 1
    assert run(capsys, "betti", tmp_path / "missing.dten")[0] == 1
    assert run(capsys, "subdivide", files["k23"])[0] == 1
    assert run(capsys, "gen", "--kind", "low_rank", "--dims", "2,2")[0] == 1


def test_computation_error_exit_code(capsys, files):
    # core larger than the tensor is a shape error raised during computation
    assert run(capsys, "decomp", "tucker", files["k23"], "--core", "3,3")[0] == 2
