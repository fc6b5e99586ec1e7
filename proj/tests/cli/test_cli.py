import json
import os
import subprocess
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[2]
DATA = ROOT / "data"
SGF = os.environ.get("SGF_BIN", str(ROOT / "build" / "sgf"))


def sgf(*args, cwd=None):
    return subprocess.run([SGF, *map(str, args)], capture_output=True, text=True, cwd=cwd, timeout=300)


def sgf_json(*args):
    r = sgf("--json", *args)
    return r.returncode, json.loads(r.stdout)


def test_build_trellis_memory2():
    code, body = sgf_json("build-trellis", DATA / "memory2.json")
    assert code == 0
    assert body["ok"]
    assert [s["stage"] for s in body["stages"]] == ["verify", "graph", "controllability", "signature", "solvability"]


def test_corrupted_phi_fails_at_verify(tmp_path):
    s = json.loads((DATA / "memory2.json").read_text())
    img = s["phi"]["image"]
    img[1], img[2] = img[2], img[1]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(s))
    code, body = sgf_json("build-trellis", bad)
    assert code == 2
    assert body["failed_stage"] == "verify"


def test_missing_file_is_io_error(tmp_path):
    r = sgf("verify-shift", tmp_path / "nope.json")
    assert r.returncode == 4
    assert r.stdout.startswith("error: ")


def test_bad_json_is_schema_error(tmp_path):
    f = tmp_path / "g.json"
    f.write_text('{"order": 2}')
    assert sgf("validate-group", f).returncode == 4


def test_find_iso_exit_codes():
    assert sgf("find-iso", "catalog:D8", "catalog:D8").returncode == 0
    assert sgf("find-iso", "catalog:Q8", "catalog:D8").returncode == 3


def test_derive_shift_matches_data(tmp_path):
    out = tmp_path / "m2.json"
    r = sgf("derive-shift", "--register", 2, 2, "--out", out)
    assert r.returncode == 0
    assert json.loads(out.read_text()) == json.loads((DATA / "memory2.json").read_text())


def test_controllability_of_register_trellis():
    code, body = sgf_json("controllability", DATA / "register_q2_m2_trellis.json")
    assert code == 0
    assert body["agree"]
    assert (body["matrix"], body["states"], body["edges"]) == (2, 4, 8)


def test_gamma_then_synthesize(tmp_path):
    inp = tmp_path / "inp.json"
    assert sgf("gamma", DATA / "memory2.json", "--out", inp).returncode == 0
    assert json.loads(inp.read_text())["schema"] == "sgf.synthesis_input/1"
    code, body = sgf_json("synthesize", inp)
    assert code == 0


def test_find_state_groups_writes_witnesses(tmp_path):
    r = sgf("find-state-groups", "catalog:C2", "[[0],[0],[0,1]]", "--out", tmp_path)
    assert r.returncode == 0
    witnesses = sorted(tmp_path.glob("sg*_witness.json"))
    assert witnesses
    for w in witnesses:
        assert sgf("verify-state-group", w).returncode == 0
        assert sgf("synthesize", w).returncode == 0


def test_mols_and_roundtrip():
    code, _ = sgf_json("mols", "catalog:C2xC2")
    assert code == 0
    assert sgf("roundtrip", DATA / "memory2.json").returncode == 0


def test_bound_exceeded(tmp_path):
    r = sgf("gen-catalog", "--max-order", 1024, "--out", tmp_path / "cat")
    assert r.returncode == 3


@pytest.mark.parametrize("args", [
    ("build-trellis", DATA / "memory2.json"),
    ("signature", DATA / "memory2.json"),
    ("build-latin", DATA / "memory2.json"),
    ("export-dot", DATA / "memory1.json"),
])
def test_deterministic(args):
    a = sgf("--json", *args)
    b = sgf("--json", *args)
    assert a.returncode == b.returncode
    assert a.stdout == b.stdout
