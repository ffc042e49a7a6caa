import json
import subprocess
import sys

import pytest

from iovauth import cli


def run(state, *args):
    return cli.main(["--state", str(state), *args])


def pipeline(state, report):
    assert run(state, "setup", "--backend", "toy", "--params", "TINY", "--seed", "1") == 0
    assert run(state, "register-obu", "--id", "OBU-1", "--seed", "2") == 0
    assert run(state, "register-rsu", "--id", "RSU-1", "--region", "R1") == 0
    assert run(state, "issue-epoch", "--region", "R1", "--start", "0", "--length", "3600", "--seed", "3") == 0
    assert run(state, "sign", "--id", "OBU-1", "--report", str(report), "--time", "1000", "--seed", "4") == 0


@pytest.fixture
def report(tmp_path):
    p = tmp_path / "road.bin"
    p.write_bytes(b"ice on the bridge")
    return p


def test_pipeline_exit_codes(tmp_path, report):
    st = tmp_path / "st"
    pipeline(st, report)
    legit = (st / "legit.txt").read_text().splitlines()
    assert sum(line.startswith("user ") for line in legit) == 1
    assert run(st, "verify", "--time", "1100", "--delta", "300") == 0
    assert (st / "mac.hex").exists()
    assert run(st, "verify", "--time", "2000", "--delta", "300") == cli.EXIT_REPLAY
    assert run(st, "track", "--region", "R1", "--evidence", "case-1") == 0
    assert "OBU-1" in (st / "revoked.txt").read_text()
    assert run(st, "verify", "--time", "1100") == cli.EXIT_DENIED


def test_tampered_request_exit_code(tmp_path, report):
    st = tmp_path / "st"
    pipeline(st, report)
    blob = bytearray((st / "request.bin").read_bytes())
    blob[-1] ^= 1
    (st / "request.bin").write_bytes(bytes(blob))
    assert run(st, "verify", "--time", "1000") == cli.EXIT_BAD_SIGNATURE


def test_untraceable(tmp_path, report):
    st = tmp_path / "st"
    pipeline(st, report)
    assert run(st, "track", "--region", "R9") == cli.EXIT_UNTRACEABLE


def test_missing_state_names_file(tmp_path, capsys):
    st = tmp_path / "empty"
    assert run(st, "register-obu", "--id", "A") == cli.EXIT_MISSING
    assert "params.json" in capsys.readouterr().err


def test_hex_offset(tmp_path, report, capsys):
    st = tmp_path / "st"
    pipeline(st, report)
    path = st / "obu" / "OBU-1.json"
    rec = json.loads(path.read_text())
    rec["PK2"] = "0z"
    path.write_text(json.dumps(rec))
    assert run(st, "sign", "--id", "OBU-1", "--report", str(report), "--time", "5") == cli.EXIT_INVALID
    assert "byte offset 0" in capsys.readouterr().err


def test_setup_refuses_overwrite(tmp_path):
    st = tmp_path / "st"
    assert run(st, "setup", "--seed", "1") == 0
    assert run(st, "setup", "--seed", "1") == cli.EXIT_INVALID
    assert run(st, "setup", "--seed", "1", "--force") == 0


def snapshot(root):
    return {p.relative_to(root).as_posix(): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()}


def test_seed_determinism(tmp_path, report):
    a, b = tmp_path / "a", tmp_path / "b"
    pipeline(a, report)
    pipeline(b, report)
    assert snapshot(a) == snapshot(b)


def test_artifact_roundtrip(tmp_path, report):
    from iovauth.store import StateDir
    st = tmp_path / "st"
    pipeline(st, report)
    sd = StateDir(st)
    params = sd.load_params()
    keys = sd.load_obu(params.group, "OBU-1")
    sd2 = StateDir(tmp_path / "copy")
    sd2.save_params(params)
    sd2.save_obu(params.group, keys)
    assert (tmp_path / "copy" / "params.json").read_bytes() == (st / "params.json").read_bytes()
    assert (tmp_path / "copy" / "obu" / "OBU-1.json").read_bytes() == (st / "obu" / "OBU-1.json").read_bytes()


def test_config_file(tmp_path, monkeypatch, report):
    cfg = tmp_path / "iov.conf"
    cfg.write_text(f"# test config\nstate_dir = {tmp_path / 'cfgstate'}\nbackend = toy\nparams = MEDIUM\ndelta = 50\n")
    monkeypatch.setenv(cli.CONFIG_ENV, str(cfg))
    assert cli.main(["setup", "--seed", "1"]) == 0
    rec = json.loads((tmp_path / "cfgstate" / "params.json").read_text())
    assert rec["params"] == "MEDIUM"
    assert cli.main(["register-obu", "--id", "V", "--seed", "2"]) == 0
    assert cli.main(["register-rsu", "--id", "R", "--region", "Z"]) == 0
    assert cli.main(["issue-epoch", "--region", "Z", "--seed", "3"]) == 0
    assert cli.main(["sign", "--id", "V", "--report", str(report), "--time", "100", "--seed", "4"]) == 0
    assert cli.main(["verify", "--time", "140"]) == 0
    assert cli.main(["verify", "--time", "151"]) == cli.EXIT_REPLAY


@pytest.mark.parametrize("text", ["delta = 0\n", "q = eleven\n", "colour = blue\n", "backend\n",
                                  "params = custom\nq = 11\np = 29\ng0 = 2\n"])
def test_bad_config(tmp_path, text):
    cfg = tmp_path / "bad.conf"
    cfg.write_text(text)
    assert cli.main(["--config", str(cfg), "setup"]) == cli.EXIT_INVALID


def test_custom_params(tmp_path):
    st = tmp_path / "st"
    assert run(st, "setup", "--params", "custom", "--q", "1031", "--p", "2063", "--g0", "4", "--seed", "1") == 0
    assert run(st, "setup", "--params", "custom", "--q", "1031", "--p", "2069", "--g0", "4", "--force") == \
        cli.EXIT_INVALID


def test_simulate_and_cost_model(tmp_path, capsys):
    summary = tmp_path / "s.json"
    assert cli.main(["simulate", "--builtin", "malice", "--seed", "3", "--transcript", str(tmp_path / "t.log"),
                     "--summary", str(summary)]) == 0
    doc = json.loads(summary.read_text())
    assert doc["tracked"] == ["OBU-2"] and doc["verdicts"]["Denied"] == 3
    sc = tmp_path / "sc.json"
    from iovauth.simnet import BUILTIN
    sc.write_text(BUILTIN["replay"](2).to_json())
    assert cli.main(["simulate", "--scenario", str(sc), "--summary", str(summary), "--transcript",
                     str(tmp_path / "t2.log")]) == 0
    assert json.loads(summary.read_text())["verdicts"]["Replay"] == 2
    assert cli.main(["cost-model", "--csv", str(tmp_path / "c.csv"), "--n", "1,100"]) == 0
    assert "Ours,20.12,42.06,62.18,NO" in (tmp_path / "c.csv").read_text()
    assert cli.main(["bench", "--ops-only"]) == 0
    assert "clss_verify: pairings=1 g1_muls=3" in capsys.readouterr().out


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.main(["sign"])
    assert exc.value.code == 2


def test_module_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "iovauth", "--state", str(tmp_path / "x"), "verify", "--time", "1"],
                         capture_output=True, text=True)
    assert out.returncode == cli.EXIT_MISSING
    assert "params.json" in out.stderr
