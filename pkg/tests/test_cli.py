"""CLI subcommands, file formats, exit codes, determinism."""

import json

import pytest

from wittpolar import samples
from wittpolar.cli import main
from wittpolar.gfq import gf_build

F2 = gf_build(2, 1)


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_witt_poly_emits_sum_polys(capsys, tmp_path):
    rc, out, err = run(capsys, "witt-poly", "--p", "2", "--n", "2",
                       "--kind", "sum")
    assert rc == 0 and err == ""
    data = json.loads(out)
    assert data["format"] == "wittpolar/1"
    level1 = data["levels"][1]
    assert {tuple(t["exp"]): int(t["num"]) for t in level1["terms"]} == {
        (0, 1, 0, 0): 1, (0, 0, 0, 1): 1, (1, 0, 1, 0): -1}


def test_witt_poly_rejects_non_prime(capsys):
    rc, out, err = run(capsys, "witt-poly", "--p", "4", "--n", "1",
                       "--kind", "sum")
    assert rc == 1
    assert json.loads(err)["error"] == "validation"


def test_bad_subcommand_is_validation_error(capsys):
    rc, out, err = run(capsys, "frobnicate")
    assert rc == 1
    assert json.loads(err)["error"] == "validation"


@pytest.fixture
def algebra_file(tmp_path):
    A = samples.trunc_nil_polar(F2, 4)
    data = A.to_json()
    data["format"] = "wittpolar/1"
    path = tmp_path / "alg.json"
    path.write_text(json.dumps(data))
    return path


def test_witt_eval_expression(capsys, tmp_path, algebra_file):
    A = samples.trunc_nil_polar(F2, 4)
    lit = {"op": "lit", "coords": [[[1], [0], [0]], [[0], [0], [0]]]}
    expr = {"format": "wittpolar/1", "algebra": json.loads(
        algebra_file.read_text()), "expr": {"op": "add", "args": [lit, lit]}}
    path = tmp_path / "expr.json"
    path.write_text(json.dumps(expr))
    rc, out, err = run(capsys, "witt-eval", str(path))
    assert rc == 0
    assert json.loads(out)["coords"] == [[[0], [0], [0]], [[0], [1], [0]]]


def test_cw_pipeline(capsys, tmp_path, algebra_file):
    x = {"format": "wittpolar/1", "tail": [[1], [0], [0]],
         "exceptions": {"0": [[0], [1], [0]]}, "witness": [0, 2]}
    xp = tmp_path / "x.json"
    xp.write_text(json.dumps(x))
    rc, out, _ = run(capsys, "cw", "validate", "--algebra",
                     str(algebra_file), str(xp))
    assert rc == 0 and json.loads(out)["valid"] is True
    rc, out, _ = run(capsys, "cw", "add", "--algebra", str(algebra_file),
                     str(xp), str(xp))
    assert rc == 0
    data = json.loads(out)
    assert data["tail"] == [[0], [1], [0]]
    rc, out, _ = run(capsys, "cw", "v", "--algebra", str(algebra_file),
                     str(xp))
    assert rc == 0 and json.loads(out)["exceptions"] == {}


def test_split_reports_zero_points_for_nil(capsys, algebra_file):
    rc, out, _ = run(capsys, "split", str(algebra_file))
    assert rc == 0
    data = json.loads(out)
    assert data["point_count"] == 0 and data["nil_dim"] == 3


def test_split_quadratic_extension(capsys, tmp_path):
    A = samples.field_ext_polar(F2, 2)
    data = A.to_json()
    data["format"] = "wittpolar/1"
    path = tmp_path / "f4.json"
    path.write_text(json.dumps(data))
    rc, out, _ = run(capsys, "split", str(path))
    assert rc == 0
    data = json.loads(out)
    assert data["point_count"] == 2
    assert data["extension_degree"] == 2
    assert data["frobenius_permutation"] == "(0 1)"
    assert data["orbits"] == [[0, 1]]


def test_polarize_roundtrip(capsys, tmp_path):
    F = F2
    tab = samples.nil_poly_table(F, 3)
    table_json = [[[list(F.coords(c)) for c in entry] for entry in row]
                  for row in tab]
    path = tmp_path / "comm.json"
    path.write_text(json.dumps({"format": "wittpolar/1",
                                "field": F.to_json(), "dim": 2,
                                "table": table_json}))
    rc, out, _ = run(capsys, "polarize", str(path))
    assert rc == 0
    data = json.loads(out)
    assert data["mu"] == [{"idx": [0, 0], "val": [[0], [1]]}]


def test_polarize_zero_mu_example(capsys, tmp_path):
    # x F_3[x]/(x^3) at p = 3 polarizes to the zero tensor
    F3 = gf_build(3, 1)
    tab = samples.nil_poly_table(F3, 3)
    table_json = [[[list(F3.coords(c)) for c in entry] for entry in row]
                  for row in tab]
    path = tmp_path / "comm3.json"
    path.write_text(json.dumps({"format": "wittpolar/1",
                                "field": F3.to_json(), "dim": 2,
                                "table": table_json}))
    rc, out, _ = run(capsys, "polarize", str(path))
    assert rc == 0 and json.loads(out)["mu"] == []


def test_fgl_subcommand(capsys):
    rc, out, _ = run(capsys, "fgl", "--p", "3", "--precision", "9",
                     "--log-coeffs", "1,1/3,1/9")
    assert rc == 0
    data = json.loads(out)
    assert data["exp_support_ok"] is True
    assert data["law_p_integral"] is True
    assert data["law_associative"] is True


def test_outputs_are_byte_identical(capsys, tmp_path):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    assert main(["witt-poly", "--p", "3", "--n", "2", "--kind", "prod",
                 "--out", str(out1)]) == 0
    assert main(["witt-poly", "--p", "3", "--n", "2", "--kind", "prod",
                 "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_verify_single_suite_deterministic(capsys):
    rc1, out1, _ = run(capsys, "verify", "--suite", "dwork", "--seed", "5")
    rc2, out2, _ = run(capsys, "verify", "--suite", "dwork", "--seed", "5")
    assert rc1 == rc2 == 0
    assert out1 == out2
    assert "PASS" in out1


def test_verify_unknown_suite(capsys):
    rc, _, err = run(capsys, "verify", "--suite", "nope")
    assert rc == 1 and json.loads(err)["error"] == "validation"


def test_verify_teichmuller_suite_filtered(capsys):
    rc, out, _ = run(capsys, "verify", "--suite", "teichmuller", "--p", "3")
    assert rc == 0
    assert "FAIL" not in out
    assert "Teichmuller" in out
