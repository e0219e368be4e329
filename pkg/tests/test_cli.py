import json
import subprocess
import sys

import pytest

from gravheight import cli
from gravheight.errors import EXIT_CODES


def run(*argv):
    return cli.main([str(a) for a in argv])


@pytest.fixture
def jump_file(tmp_path):
    path = tmp_path / "jump.jsonl"
    assert run("simulate", "jumper", "-o", path, "--truth", tmp_path / "truth.json", "--countermovement", "0.1") == 0
    return path


def test_exit_codes_are_distinct():
    assert len(set(EXIT_CODES.values())) == len(EXIT_CODES)
    assert cli.ARGUMENT_ERROR not in EXIT_CODES.values()
    assert cli.IO_ERROR not in EXIT_CODES.values()


def test_estimate_recovers_truth(jump_file, tmp_path, capsys):
    out = tmp_path / "r.json"
    assert run("estimate", jump_file, "--json", out) == 0
    report = json.loads(out.read_text())
    truth = json.loads((tmp_path / "truth.json").read_text())
    assert report["aggregate"] == pytest.approx(truth["h_true"], rel=1e-6)
    assert report["population_mean"] == 1.689
    text = capsys.readouterr().out
    assert text.startswith("input: jump.jsonl\n")
    assert "height: 1.800000 m (median of 1 segment)" in text


def test_trajectory_csv(jump_file, tmp_path):
    csv = tmp_path / "t.csv"
    assert run("estimate", jump_file, "-o", tmp_path / "r.txt", "--trajectory-csv", csv) == 0
    rows = csv.read_text().splitlines()
    assert rows[0] == "t,x,y,valid,inlier"
    assert len(rows) == 1 + 240
    assert sum(r.endswith(",1") for r in rows[1:]) > 5


def test_no_flight_exit_code(tmp_path, capsys):
    path = tmp_path / "still.jsonl"
    assert run("simulate", "jumper", "-o", path, "--jump-height", "0") == 0
    assert run("estimate", path) == EXIT_CODES["NoFlightDetected"] == 4
    assert capsys.readouterr().err.startswith("error: NoFlightDetected: ")


def test_parse_error_exit_code(tmp_path, capsys):
    path = tmp_path / "empty.jsonl"
    path.write_text("")
    assert run("estimate", path) == 3
    assert "error: ParseError:" in capsys.readouterr().err


def test_missing_file(tmp_path, capsys):
    assert run("estimate", tmp_path / "nope.jsonl") == cli.IO_ERROR
    assert "error: IOError:" in capsys.readouterr().err


def test_invalid_value(jump_file, capsys):
    assert run("estimate", jump_file, "--fraction", "1.5") == cli.ARGUMENT_ERROR
    assert "InvalidArgument" in capsys.readouterr().err


def test_unknown_flag_is_usage_error(jump_file):
    with pytest.raises(SystemExit) as exc:
        run("estimate", jump_file, "--bogus")
    assert exc.value.code == 2


def test_bad_config_file(jump_file, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text('{"colour": "red"}')
    assert run("estimate", jump_file, "--config", cfg) == 3


def test_config_file_then_flags(jump_file, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"method": "distance", "ransac": True, "seed": 11}))
    out = tmp_path / "r.json"
    assert run("estimate", jump_file, "--config", cfg, "--json", out, "-o", tmp_path / "r.txt") == 0
    report = json.loads(out.read_text())
    assert (report["method"], report["ransac"], report["seed"]) == ("distance", True, 11)
    assert run("estimate", jump_file, "--config", cfg, "--method", "curve", "--no-ransac", "--json", out,
               "-o", tmp_path / "r.txt") == 0
    report = json.loads(out.read_text())
    assert (report["method"], report["ransac"], report["seed"]) == ("curve", False, 11)


def test_build_config_keeps_base_for_absent_flags():
    args = cli.build_parser().parse_args(["ball", "x.jsonl", "--ransac"])
    from gravheight.config import RunConfig

    config = cli.build_config(args, RunConfig(segment_mode="lateral"))
    assert config.segment_mode == "lateral" and config.ransac is True


def test_simulate_is_deterministic(tmp_path):
    paths = [tmp_path / f"{k}.jsonl" for k in range(3)]
    for path, seed in zip(paths, (4, 4, 5)):
        assert run("simulate", "jumper", "-o", path, "--noise", "1", "--outlier-rate", "0.05", "--seed", seed) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert paths[0].read_bytes() != paths[2].read_bytes()


def test_simulate_rejects_bad_matrix(tmp_path):
    assert run("simulate", "jumper", "-o", tmp_path / "a.jsonl", "--camera", "affine",
               "--affine-matrix", "[[1, 0]]") == cli.ARGUMENT_ERROR


def test_ball_round_trip(tmp_path, capsys):
    path = tmp_path / "ball.jsonl"
    assert run("simulate", "ball", "-o", path, "--truth", tmp_path / "t.json") == 0
    assert run("ball", path) == 0
    out = capsys.readouterr().out
    assert "size: 0.073000 m (median of 2 segments)" in out
    assert "pixel size: 18.2500 px" in out


def test_ball_size_override(tmp_path):
    path = tmp_path / "ball.jsonl"
    assert run("simulate", "ball", "-o", path) == 0
    out = tmp_path / "r.json"
    assert run("ball", path, "--size-px", "36.5", "--json", out, "-o", tmp_path / "r.txt") == 0
    assert json.loads(out.read_text())["aggregate"] == pytest.approx(0.146, rel=1e-6)


def test_table_to_file(tmp_path, capsys):
    out = tmp_path / "table.csv"
    assert run("table", "--phases", "2", "-o", out) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "angle_deg,d=4m,d=7m,d=15m,d=30m"
    assert len(lines) == 5
    printed = capsys.readouterr().out.splitlines()
    assert printed and all(line.startswith(("PASS ", "FAIL ")) for line in printed)


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "gravheight.cli", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    for verb in ("estimate", "ball", "simulate", "table"):
        assert verb in proc.stdout
