import io
import json

from unexpcurves.cli import run


def _json(argv):
    buf = io.StringIO()
    code = run(argv, buf)
    return code, json.loads(buf.getvalue()) if buf.getvalue().strip().startswith("{") else buf.getvalue()


def test_invariants_b3():
    code, out = _json(["invariants", "--catalog", "b3"])
    assert code == 0
    assert out["schema"] == "1"
    assert out["splitting"] == ["3", "5"]
    assert out["unexpected"] is True


def test_output_is_deterministic_for_fixed_seed():
    a, b = io.StringIO(), io.StringIO()
    run(["invariants", "--catalog", "h19", "--seed", "7"], a)
    run(["invariants", "--catalog", "h19", "--seed", "7"], b)
    assert a.getvalue() == b.getvalue()


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("UNEXPCURVES_SEED", "7")
    a = io.StringIO()
    run(["invariants", "--catalog", "b3"], a)
    b = io.StringIO()
    run(["invariants", "--catalog", "b3", "--seed", "7"], b)
    assert a.getvalue() == b.getvalue()


def test_points_from_file(tmp_path):
    path = tmp_path / "z.json"
    path.write_text(json.dumps({"field": "Q", "points": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"],
                                                         ["1", "1", "1"]]}))
    code, out = _json(["invariants", "--in", str(path)])
    assert code == 0
    assert out["splitting"] == ["1", "2"]


def test_arrangement_freeness():
    code, out = _json(["arrangement", "--catalog", "example20_a"])
    assert code == 0
    assert out["free"] is True


def test_curve_with_decomposition():
    code, out = _json(["curve", "--catalog", "b3", "--P", "3,7,11", "--decompose"])
    assert code == 0
    assert out["curve"]["degree"] == "4"
    assert out["curve"]["irreducible_for_this_P"] is True


def test_slp_table(tmp_path):
    path = tmp_path / "f.json"
    path.write_text(json.dumps([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]))
    code, out = _json(["slp", "--forms", str(path), "--exp", "2", "--range", "1"])
    assert code == 0


def test_table_format_and_out_file(tmp_path):
    target = tmp_path / "o.txt"
    code = run(["catalog", "--list", "--format", "table", "--out", str(target)], io.StringIO())
    assert code == 0
    assert "fano" in target.read_text()


def test_bad_field_is_error_exit():
    code, _ = _json(["invariants", "--catalog", "fano", "--field", "Q"])
    assert code == 1


def test_usage_error_exit():
    assert run(["invariants", "--mode", "bogus"], io.StringIO()) == 2


def test_verify_single_criterion():
    buf = io.StringIO()
    code = run(["verify-paper", "--only", "1", "--format", "table"], buf)
    assert code == 0
    assert "PASS" in buf.getvalue()
