import csv
import io
import json

import pytest

from hbops.cli import main, parse_point
from hbops.power_series import coordinate
from hbops.serialization import series_from_json, series_to_json


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return str(p)

    z = coordinate(1, 0)
    return {
        "z": write("z.json", series_to_json(z)),
        "z2": write("z2.json", series_to_json(z**2)),
        "half": write("half.json", {"kind": "linear", "matrix": [[0.5]]}),
        "log": write("log.json", {"kind": "log", "b": [{"re": 0.9, "im": 0.0}], "power": 2}),
        "dir": tmp_path,
    }


def run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_point():
    assert list(parse_point("0.6,0")) == [0.6]
    assert list(parse_point("0.5,0,0.1,0.2")) == [0.5, 0.1 + 0.2j]


def test_rderiv_example(capsys, files):
    code, out, _ = run(capsys, ["rderiv", "--function", files["z2"], "--order", "2"])
    assert code == 0
    rep = json.loads(out)
    assert rep["schema"] == "hbops/1"
    assert series_from_json(rep["result"]) == 4 * coordinate(1, 0) ** 2


def test_rderiv_output_is_accepted_back(capsys, files):
    out_path = str(files["dir"] / "d.json")
    assert main(["rderiv", "--function", files["z2"], "--out", out_path]) == 0
    code, out, _ = run(capsys, ["rderiv", "--function", out_path])
    assert code == 0
    assert series_from_json(json.loads(out)["result"]) == 4 * coordinate(1, 0) ** 2


@pytest.mark.parametrize("mode", ["--exact", "--quad"])
def test_apply_example(capsys, files, mode):
    code, out, _ = run(capsys, ["apply", "--f", files["z"], "--phi", "id", "--g", files["z"],
                                "--z", "0.6,0", mode])
    assert code == 0
    rep = json.loads(out)
    assert rep["value"]["re"] == pytest.approx(0.18, rel=1e-14)
    assert rep["path"] == mode[2:]
    assert rep["config"]["z"] == [{"re": 0.6, "im": 0.0}]


def test_apply_with_test_function(capsys, files):
    code, out, _ = run(capsys, ["apply", "--testfn", "h_a", "--a", "0.9,0", "--phi", files["half"],
                                "--g", files["log"], "--z", "0.3,0.2"])
    assert code == 0
    assert json.loads(out)["path"] == "quad"


def test_missing_g(capsys, files):
    code, _, err = run(capsys, ["apply", "--f", files["z"], "--phi", "id", "--z", "0.6,0"])
    assert code == 1
    assert "missing required: g" in err


@pytest.mark.parametrize("argv,needle", [
    (["apply", "--f", "nope.json", "--phi", "id", "--g", "nope.json", "--z", "0.1,0"], "g"),
    (["norm", "--space", "bloch", "--testfn", "h_a", "--a", "0.9"], "a"),
    (["norm", "--space", "hardy", "--testfn", "h_a", "--a", "0.9,0"], "space"),
    (["criteria", "--phi", "id", "--set", "bounded"], "g"),
    (["verify"], "suite"),
    (["sweep", "--family", "linear-lambda", "--values", "0.5", "--criteria", "B99"], "B99"),
    (["norm", "--space", "bloch", "--testfn", "h_a", "--a", "0.9,0", "--shells", "0"], "shells"),
    ([], "command"),
])
def test_malformed_input_exit_1(capsys, argv, needle):
    code, _, err = run(capsys, argv)
    assert code == 1
    assert needle in err


def test_unknown_json_field_exit_1(capsys, files, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "linear", "matrix": [[0.5]], "comment": "x"}))
    code, _, err = run(capsys, ["criteria", "--phi", str(bad), "--g", files["z"], "--set", "bounded"])
    assert code == 1 and "comment" in err


def test_norm_json_and_csv(capsys, files):
    code, out, _ = run(capsys, ["norm", "--space", "zygmund", "--function", files["z"]])
    rep = json.loads(out)
    assert code == 0 and rep["estimate"]["value"] == pytest.approx(1.3849, abs=1e-3)
    assert rep["config"]["grid"] == {"n": 1, "shells": 16, "points": 256, "seed": 0, "substeps": 8}
    code, out, _ = run(capsys, ["norm", "--space", "zygmund0", "--testfn", "h_a", "--a", "0.9,0",
                                "--csv", "--shells", "10"])
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["space", "level", "radius", "max"] and len(rows) == 11


def test_criteria_report(capsys, files):
    code, out, _ = run(capsys, ["criteria", "--phi", files["half"], "--g", files["z"], "--set", "bounded"])
    rep = json.loads(out)
    assert code == 0
    b10, b11 = rep["criteria"]
    assert b10["value"] == pytest.approx(0.1436, abs=0.002)
    assert b11["value"] == pytest.approx(0.42, abs=0.01)
    assert len(b10["estimate"]["trace"]) == 16


def test_seed_env_fallback(capsys, files, monkeypatch):
    monkeypatch.setenv("HBOPS_SEED", "9")
    _, out, _ = run(capsys, ["norm", "--space", "sup", "--function", files["z"], "--shells", "4"])
    assert json.loads(out)["config"]["grid"]["seed"] == 9
    _, out, _ = run(capsys, ["norm", "--space", "sup", "--function", files["z"], "--shells", "4",
                             "--seed", "2"])
    assert json.loads(out)["config"]["grid"]["seed"] == 2


def test_sweep_lambda(capsys):
    values = ",".join(f"0.{k}" for k in range(1, 10))
    code, out, _ = run(capsys, ["sweep", "--family", "linear-lambda", "--values", values,
                                "--criteria", "B10"])
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 9
    vals = [float(r["value"]) for r in rows]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_sweep_empty_grid_is_header_only(capsys):
    code, out, _ = run(capsys, ["sweep", "--family", "log-radius", "--values", ""])
    assert code == 0
    assert out.strip().splitlines() == ["family,parameter,criterion,value,classification,witness_re,witness_im"]


def test_sweep_log_radius_grows(capsys):
    _, out, _ = run(capsys, ["sweep", "--family", "log-radius", "--values", "1,2,3,4,5,6,7,8",
                             "--criteria", "B10"])
    vals = [float(r["value"]) for r in csv.DictReader(io.StringIO(out))]
    assert vals[-1] > 10 * vals[0]


def test_csv_floats_round_trip(capsys):
    _, out, _ = run(capsys, ["sweep", "--family", "linear-lambda", "--values", "0.3"])
    for r in csv.DictReader(io.StringIO(out)):
        assert repr(float(r["value"])) == r["value"]


def test_verify_exit_codes(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"levels": 12, "points_1d": 128}))
    out = tmp_path / "r.json"
    assert main(["verify", "--suite", "thm5", "--config", str(cfg), "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["schema"] == "hbops/1" and rep["outcome"] == "pass"
    assert rep["config"]["levels"] == 12
    # a vanish fraction of 1e-9 cannot be met on a finite grid
    cfg.write_text(json.dumps({"levels": 12, "points_1d": 128, "vanish_fraction": 1e-9}))
    code = main(["verify", "--suite", "membership", "--config", str(cfg), "--out", str(out)])
    assert code in (2, 3)
    assert json.loads(out.read_text())["outcome"] in ("fail", "inconclusive")
    capsys.readouterr()


def test_verify_rejects_unknown_config_field(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"levels": 12, "tolerance": 1}))
    code, _, err = run(capsys, ["verify", "--suite", "thm5", "--config", str(cfg)])
    assert code == 1 and "tolerance" in err
