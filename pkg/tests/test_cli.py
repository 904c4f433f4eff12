import json

import pytest

from mft.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip().startswith("{") else out


def test_gen_scene_schema(capsys):
    code, obj = run(capsys, "gen-scene", "--views", "2", "--seed", "3")
    assert code == 0
    assert obj["schema"] == "mft/1"
    assert len(obj["frames"]) == 2


def test_gen_scene_rational_mode(capsys):
    code, obj = run(capsys, "--mode", "rational", "gen-scene", "--seed", "1")
    assert code == 0
    assert obj["motions"][0]["repr"] == "rational"


def test_tensor_and_check_pipeline(tmp_path, capsys):
    code, scene = run(capsys, "--mode", "rational", "gen-scene", "--views", "3", "--seed", "5")
    assert code == 0
    scene_path = tmp_path / "scene.json"
    scene_path.write_text(json.dumps(scene))

    code, tens = run(capsys, "tensor", str(scene_path))
    assert code == 0
    assert tens["invariant"] == "trifocal"
    tensor_path = tmp_path / "tensor.json"
    tensor_path.write_text(json.dumps(tens))

    code, rep = run(capsys, "check", str(tensor_path))
    assert code == 0
    assert rep["report"]["pass"] is True


def test_check_fails_on_garbage_tensor(tmp_path, capsys):
    import random

    from mft.focal import FocalTensor

    rng = random.Random(0)
    t = FocalTensor.from_flat(4, (2, 1, 2), [rng.gauss(0, 1) for _ in range(27)])
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"tensor": t.to_json()}))
    code, rep = run(capsys, "check", str(path))
    assert code == 1
    assert rep["report"]["pass"] is False


def test_missing_file_is_usage_error(capsys):
    code = main(["check", "/nonexistent/tensor.json"])
    assert code == 2


def test_estimate_round_trip(capsys):
    code, obj = run(capsys, "estimate", "--views", "2", "--seed", "7")
    assert code == 0
    assert obj["pass"] is True
    assert obj["rank"] == 8


def test_estimate_rational(capsys):
    code, obj = run(capsys, "--mode", "rational", "estimate", "--views", "2", "--seed", "2")
    assert code == 0
    assert obj["alignment_error"] in (0, "0/1", "0")


def test_verify_identities(capsys):
    code, obj = run(capsys, "--mode", "rational", "verify-identities", "--trials", "2")
    assert code == 0
    assert obj["pass"] is True
    assert obj["max_residual"] == 0


def test_verify_cartan(capsys):
    code, obj = run(capsys, "verify-cartan")
    assert code == 0
    assert obj["failures"] == []


def test_invariant_dump(capsys):
    code, obj = run(capsys, "invariant", "trifocal", "--weight")
    assert code == 0
    assert obj["weight"] == -2
    assert len(obj["invariant"]["coeffs"]) == 12


def test_unknown_invariant_is_usage_error(capsys):
    code = main(["invariant", "bogus"])
    assert code == 2


def test_env_mode(monkeypatch, capsys):
    monkeypatch.setenv("MFT_MODE", "rational")
    code, obj = run(capsys, "gen-scene", "--seed", "4")
    assert code == 0
    assert obj["mode"] == "rational"
