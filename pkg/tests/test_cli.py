import json
import re

import numpy as np

from sphere7.cli import main
from sphere7.fock import build_rho, load_representation


def run(tmp_path, *args):
    return main([*args, "--out", str(tmp_path)])


def test_verify_small(tmp_path):
    code = run(tmp_path, "verify", "--m", "1..2", "--ell", "0..1")
    assert code == 0
    report = json.loads((tmp_path / "verify.json").read_text())
    assert report["passed"] is True
    names = {c["check"] for c in report["checks"]}
    assert {"jacobi-spinor", "cross-basis", "embedding-exact-sector",
            "rep-bracket", "commuting-diagram"} <= names


def test_verify_invalid_m(tmp_path):
    assert run(tmp_path, "verify", "--m", "0") == 2


def test_verify_mutated_fails_and_names_pair(tmp_path):
    code = run(tmp_path, "verify", "--m", "2", "--ell", "0..0",
               "--mutate", "k-bracket")
    assert code == 1
    report = json.loads((tmp_path / "verify.json").read_text())
    failing = [c for c in report["checks"] if not c["passed"]]
    assert failing
    assert any("K+" in c.get("detail", "") or "triple" in c.get("detail", "")
               for c in failing)


def test_eds_check(tmp_path):
    assert run(tmp_path, "eds-check", "--samples", "25", "--seed", "5") == 0
    report = json.loads((tmp_path / "eds.json").read_text())
    assert report["passed"]


def test_transport_reeb(tmp_path):
    spec = {"type": "reeb_loop", "r": [0.5, 0.5, 0.5, 0.5],
            "theta": [0, 0, 0, 0], "m": 2, "steps": 2000,
            "psi_i": [1, 0, 0, 0], "psi_f": [1, 0, 0, 0]}
    pfile = tmp_path / "path.json"
    pfile.write_text(json.dumps(spec))
    assert run(tmp_path, "transport", str(pfile)) == 0
    report = json.loads((tmp_path / "transport.json").read_text())
    assert report["result"]["holonomy_distance"] < 1e-5
    assert abs(report["probability"] - 1.0) < 1e-8


def test_transport_constant(tmp_path):
    spec = {"type": "constant", "at": {"x": [1, 0, 0, 0], "y": [0, 0, 0, 0]},
            "m": 2, "steps": 10}
    pfile = tmp_path / "path.json"
    pfile.write_text(json.dumps(spec))
    assert run(tmp_path, "transport", str(pfile)) == 0
    report = json.loads((tmp_path / "transport.json").read_text())
    assert report["result"]["holonomy_distance"] == 0


def test_transport_malformed(tmp_path):
    pfile = tmp_path / "bad.json"
    pfile.write_text("{not json")
    assert run(tmp_path, "transport", str(pfile)) == 2
    missing = tmp_path / "missing.json"
    assert run(tmp_path, "transport", str(missing)) == 2
    pfile2 = tmp_path / "unknown.json"
    pfile2.write_text(json.dumps({"type": "warp-drive"}))
    assert run(tmp_path, "transport", str(pfile2)) == 2


def test_table(tmp_path):
    assert run(tmp_path, "table", "--m", "1..3", "--ell", "0..1") == 0
    text = (tmp_path / "table.csv").read_text()
    assert "trivial representation" in text
    rows = [r.split(",") for r in text.strip().splitlines() if r]
    dims = [r[1] for r in rows[1:4]]
    assert dims == ["1", "4", "10"]


def test_dump_rep_roundtrip(tmp_path):
    assert run(tmp_path, "dump-rep", "--m", "2..2", "--format", "json") == 0
    header, rep = load_representation(tmp_path / "rho_m2.json")
    orig = build_rho(2)
    for g in orig:
        assert np.allclose(rep[g], orig[g])


def _strip_timestamp(text):
    return re.sub(r'"generated_at": "[^"]*"', '"generated_at": "X"', text)


def test_determinism(tmp_path):
    d1 = tmp_path / "r1"
    assert main(["eds-check", "--samples", "10", "--seed", "11",
                 "--out", str(d1)]) == 0
    t1 = _strip_timestamp((d1 / "eds.json").read_text())
    assert main(["eds-check", "--samples", "10", "--seed", "11",
                 "--out", str(d1)]) == 0
    t2 = _strip_timestamp((d1 / "eds.json").read_text())
    assert t1 == t2


def test_threads_env(tmp_path, monkeypatch):
    monkeypatch.setenv("SPHERE7_THREADS", "1")
    assert run(tmp_path, "verify", "--m", "1..1", "--ell", "0..0") == 0


def test_config_file(tmp_path):
    cfile = tmp_path / "config.json"
    cfile.write_text(json.dumps({"m_range": [1, 2], "ell_range": [0, 1],
                                 "seed": 3}))
    assert run(tmp_path, "verify", "--config", str(cfile)) == 0
    cfile.write_text(json.dumps({"not_a_key": 1}))
    assert run(tmp_path, "verify", "--config", str(cfile)) == 2
