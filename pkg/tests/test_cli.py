import json

import numpy as np
import pytest

from sicforge import dim3, jsonio
from sicforge.cli import canonical, main, parse_angle
from sicforge.weyl import SicCandidate


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classes_sl_affine(capsys):
    code, out, _ = run(capsys, "classes", "--p", "5", "--group", "sl-affine")
    data = json.loads(out)
    assert code == 0
    assert data["n_classes"] == 14 and data["group_order"] == 5 * 24 * 25


def test_classes_esl_by_orbits(capsys):
    code, out, _ = run(capsys, "classes", "--p", "3", "--group", "esl")
    assert code == 0 and json.loads(out)["group_order"] == 48


def test_dim3_classify_decimal_input_snaps(capsys):
    code, out, _ = run(capsys, "dim3-classify", "--t", "0.6981")
    data = json.loads(out)
    assert code == 0
    assert data["class_rep"] == 0.0
    assert abs(data["phi_min"] - np.pi / 3) < 1e-10


def test_dim3_classify_pi_units(capsys):
    _, out, _ = run(capsys, "dim3-classify", "--t", "1/3", "--pi-units")
    data = json.loads(out)
    assert data["kind"] == "exceptional_pi3" and data["orbit_size"] == 4


def test_sic_verify_failure_exits_1(capsys, tmp_path):
    f = tmp_path / "notasic.json"
    f.write_text(json.dumps({"dim": 3, "vectors": [[[1, 0], [0, 0], [0, 0]]] * 9}))
    code, out, _ = run(capsys, "sic-verify", "--file", str(f))
    assert code == 1 and json.loads(out)["is_sic"] is False


def test_sic_verify_round_trip(capsys, tmp_path):
    f = tmp_path / "sic.json"
    jsonio.save_sic(dim3.family_sic(0.2), f)
    code, out, _ = run(capsys, "sic-verify", "--file", str(f))
    assert code == 0 and json.loads(out)["is_sic"]


def test_vector_file_input(capsys, tmp_path):
    f = tmp_path / "v.json"
    f.write_text(json.dumps({"dim": 3, "vector": [[0, 0], [0.7071067811865476, 0], [-0.7071067811865476, 0]]}))
    code, out, _ = run(capsys, "sic-symmetry", "--file", str(f))
    assert code == 0 and json.loads(out)["order"] == 216


def test_sic_symmetry_and_phases(capsys):
    _, out, _ = run(capsys, "sic-symmetry", "--t", "0.2")
    data = json.loads(out)
    assert (data["order"], data["n_hw"], data["n_normal_hw"]) == (27, 3, 3)
    _, out, _ = run(capsys, "sic-phases", "--t", "0.2")
    assert [p["multiplicity"] for p in json.loads(out)["phases"]] == [3, 18, 3, 3, 1]


def test_hw_and_clifford(capsys):
    _, out, _ = run(capsys, "hw", "--p", "7")
    assert json.loads(out)["orbit_sizes"] == [16, 16, 16]
    code, out, _ = run(capsys, "clifford", "--p", "5", "--F", "0", "1", "-1", "0", "--chi", "1", "2")
    data = json.loads(out)
    assert code == 0 and data["deviation"] < 1e-9 and data["F"] == [[0, 1], [4, 0]]
    code, out, _ = run(capsys, "clifford", "--p", "5", "--spectra")
    assert code == 0 and all(r["match"] for r in json.loads(out)["classes"])


def test_regroup(capsys):
    _, out, _ = run(capsys, "dim3-regroup", "--t", "0.2")
    data = json.loads(out)
    assert data["n_hidden"] == 24 and data["orbit_size"] == 8


def test_search_with_output(capsys, tmp_path):
    f = tmp_path / "found.json"
    code, out, _ = run(capsys, "search", "--dim", "3", "--seed", "2", "--out", str(f))
    data = json.loads(out)
    assert code == 0 and data["converged"] and "dim3" in data
    c = jsonio.sic_from_json(jsonio.load(f))
    assert isinstance(c, SicCandidate) and len(c) == 9


def test_search_failure_exits_1(capsys):
    code, _, err = run(capsys, "search", "--dim", "7", "--restarts", "1", "--max-iters", "2", "--target", "1e-30")
    assert code == 1


@pytest.mark.parametrize("argv", [
    ["classes", "--p", "4"],
    ["classes", "--p", "5", "--bogus"],
    ["dim3-classify"],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as e:
        main(argv)
    assert e.value.code == 2
    out, err = capsys.readouterr()
    assert out == "" and err


def test_bad_inputs_go_to_stderr(capsys, tmp_path):
    code, out, err = run(capsys, "dim3-classify", "--t", "abc")
    assert code == 2 and out == "" and "abc" in err
    code, out, err = run(capsys, "sic-verify", "--file", str(tmp_path / "missing.json"))
    assert code == 2 and out == ""
    code, out, err = run(capsys, "sic-phases")
    assert code == 2


def test_output_is_byte_identical(capsys):
    a = run(capsys, "sic-phases", "--t", "0.123")[1]
    b = run(capsys, "sic-phases", "--t", "0.123")[1]
    assert a == b


def test_csv(capsys):
    code, out, _ = run(capsys, "--format", "csv", "classes", "--p", "3")
    assert code == 0 and out.splitlines()[0] == "label,order,size" and len(out.splitlines()) == 8
    _, out, _ = run(capsys, "dim3-classify", "--t", "0.1", "--format", "csv")
    assert out.startswith("canonical_t,")


def test_canonical_floats():
    assert canonical({"a": -0.0, "b": [1 / 3, np.float64(2.0)], "c": np.int64(3)}) == \
        {"a": 0.0, "b": [0.333333333333, 2.0], "c": 3}


def test_parse_angle():
    assert parse_angle("2/9", True)[0] == pytest.approx(2 * np.pi / 9)
    assert parse_angle("0.6981", False)[1] == pytest.approx(5e-5)
    assert parse_angle("1", False)[1] == dim3.SNAP
