import json
import math
import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from fracschrodinger.cli import UsageError, main, parse_config, parse_modes

GOLDEN = Path(__file__).parent / "golden"

# small grids keep the frozen files readable
GOLDEN_CASES = {
    "ml": ["ml", "--alpha", "0.5", "--beta", "1", "--z=-1+0.5j"],
    "free": ["free", "--nu", "0.8", "--t-max", "2", "--nt", "3", "--nx", "9"],
    "well": ["well", "--nu", "0.5", "--modes", "1:1,2:0.5j", "--t-max", "2", "--nt", "3", "--nx", "9"],
    "green": ["green", "--nu", "1.2", "--kind", "wheeler", "--t-min", "-1", "--t-max", "1",
              "--nt", "3", "--nx", "9"],
    "fracderiv": ["fracderiv", "--lambda", "0.5", "--nx", "41", "--x-min", "-8", "--x-max", "8"],
    "free_json": ["free", "--nu", "1", "--t-max", "1", "--nt", "2", "--nx", "5", "--format", "json"],
}


def run_cli(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden(name, capsys, update_golden):
    code, out, _ = run_cli(GOLDEN_CASES[name], capsys)
    assert code == 0
    path = GOLDEN / f"{name}.txt"
    if update_golden:
        GOLDEN.mkdir(exist_ok=True)
        path.write_text(out)
    assert path.exists(), f"missing golden file {path}; run pytest --update-golden"
    assert out == path.read_text()


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_deterministic(name, capsys):
    _, a, _ = run_cli(GOLDEN_CASES[name], capsys)
    _, b, _ = run_cli(GOLDEN_CASES[name], capsys)
    assert a == b


class TestOutputs:
    def test_ml_prints_e(self, capsys):
        code, out, _ = run_cli(["ml", "--alpha", "1", "--beta", "1", "--z", "1"], capsys)
        assert code == 0
        re, im, bound, method = out.split()
        assert abs(float(re) - math.e) < 1e-12 and float(im) == 0
        assert float(bound) >= 0 and method == "TaylorSeries"

    def test_well_sine_at_zero(self, capsys):
        code, out, _ = run_cli(["well", "--nu", "1", "--width", "3.141592653589793", "--modes", "1:1",
                                "--t-max", "0", "--nt", "2"], capsys)
        assert code == 0
        rows = np.loadtxt(out.splitlines()[1:], delimiter=",")
        assert np.max(np.abs(rows[:, 2] - np.sin(rows[:, 1]))) < 1e-12
        assert np.all(rows[:, 3] == 0)

    def test_csv_layout(self, capsys):
        _, out, _ = run_cli(GOLDEN_CASES["free"], capsys)
        lines = out.splitlines()
        assert lines[0] == "t,x,re,im,abs2"
        rows = np.loadtxt(lines[1:], delimiter=",")
        assert rows.shape == (27, 5)
        # t-major, then x
        assert np.all(np.diff(rows[:, 0]) >= 0)
        assert np.allclose(rows[:9, 1], np.linspace(-10, 10, 9))
        assert np.allclose(rows[:, 4], rows[:, 2] ** 2 + rows[:, 3] ** 2, rtol=1e-14, atol=1e-300)

    def test_json_mirrors_csv(self, capsys):
        argv = GOLDEN_CASES["free_json"]
        _, js, _ = run_cli(argv, capsys)
        _, csv, _ = run_cli(argv[:-2], capsys)
        data = json.loads(js)
        assert data["columns"] == csv.splitlines()[0].split(",")
        assert np.array_equal(np.array(data["rows"]), np.loadtxt(csv.splitlines()[1:], delimiter=","))

    def test_wheeler_half_retarded(self, capsys):
        base = ["green", "--nu", "1", "--t-min", "0.5", "--t-max", "2", "--nt", "3", "--nx", "11"]
        _, w, _ = run_cli(base + ["--kind", "wheeler"], capsys)
        _, r, _ = run_cli(base + ["--kind", "retarded"], capsys)
        w = np.loadtxt(w.splitlines()[1:], delimiter=",")
        r = np.loadtxt(r.splitlines()[1:], delimiter=",")
        assert np.array_equal(w[:, 2:4], 0.5 * r[:, 2:4])

    def test_kernel_header(self, capsys):
        code, out, _ = run_cli(["green", "--kernel", "--t-min", "1", "--t-max", "2", "--nt", "2",
                                "--nk", "8"], capsys)
        assert code == 0
        assert out.splitlines()[0] == "t,k,re,im"
        assert len(out.splitlines()) == 1 + 2 * 8

    def test_fracderiv_header(self, capsys):
        _, out, _ = run_cli(GOLDEN_CASES["fracderiv"], capsys)
        assert out.splitlines()[0] == "x,re,im,abs2"

    def test_offshell_part(self, capsys):
        base = ["free", "--nu", "0.5", "--t-min", "1", "--t-max", "2", "--nt", "2", "--nx", "7"]
        parts = {}
        for part in ("full", "onshell", "offshell"):
            code, out, _ = run_cli(base + ["--part", part], capsys)
            assert code == 0
            parts[part] = np.loadtxt(out.splitlines()[1:], delimiter=",")
        total = parts["onshell"][:, 2:4] + parts["offshell"][:, 2:4]
        assert np.max(np.abs(total - parts["full"][:, 2:4])) < 1e-6

    def test_output_file_atomic(self, tmp_path, capsys):
        target = tmp_path / "out.csv"
        code, out, _ = run_cli(GOLDEN_CASES["free"] + ["--output", str(target)], capsys)
        assert code == 0 and out == ""
        _, direct, _ = run_cli(GOLDEN_CASES["free"], capsys)
        assert target.read_text() == direct
        assert [p.name for p in tmp_path.iterdir()] == ["out.csv"]

    def test_config_echo(self, capsys):
        _, _, err = run_cli(GOLDEN_CASES["free"], capsys)
        echoed = json.loads(err.splitlines()[0])
        assert echoed["subcommand"] == "free" and echoed["nu"] == [0.8, 0.0]
        assert echoed["nk"] == 512 and echoed["tol"] == 1e-12


class TestConfig:
    def test_defaults_filled(self):
        cfg = parse_config(["free", "--nu", "1", "--nm", "1", "--k-center", "0", "--sigma-k", "1",
                            "--t-max", "5"])
        assert cfg.nu == 1 and cfg.grid["t_max"] == 5 and cfg.grid["nx"] == 201
        assert cfg.params["x0"] == 0.0 and cfg.output_format == "csv"

    def test_flag_overrides_file(self, tmp_path):
        p = tmp_path / "c.json"
        p.write_text(json.dumps({"nu": 2, "nx": 33}))
        cfg = parse_config(["free", "--config", str(p), "--nu", "1"])
        assert cfg.nu == 1 and cfg.grid["nx"] == 33

    def test_nu_parts_override_file_nu(self, tmp_path):
        p = tmp_path / "c.json"
        p.write_text(json.dumps({"nu": 2}))
        assert parse_config(["free", "--config", str(p), "--nu-re", "0.5", "--nu-im", "0.1"]).nu == 0.5 + 0.1j

    def test_unknown_key(self, tmp_path):
        p = tmp_path / "c.json"
        p.write_text(json.dumps({"nu": 1, "colour": "red"}))
        with pytest.raises(UsageError, match="colour"):
            parse_config(["free", "--config", str(p)])

    def test_scenario_key_from_file(self, tmp_path):
        p = tmp_path / "c.json"
        p.write_text(json.dumps({"modes": "2:1", "width": 2.0}))
        cfg = parse_config(["well", "--config", str(p)])
        assert cfg.params["modes"] == [(2, 1 + 0j)] and cfg.grid["x_max"] == 2.0

    @pytest.mark.parametrize("argv,flag", [
        (["free", "--nu-re", "0"], "--nu"),
        (["free", "--nu", "-1"], "--nu"),
        (["free", "--tol", "0.5"], "--tol"),
        (["free", "--nx", "1"], "--nx"),
        (["free", "--t-min", "-1"], "--t-min"),
        (["well", "--modes", "0:1"], "--modes"),
        (["well", "--modes", "a"], "--modes"),
        (["ml", "--z", "abc"], "--z"),
        (["free", "--nu", "1", "--bogus"], "--bogus"),
        (["free", "--x-min", "1"], "--x-min"),
    ])
    def test_usage_errors_name_flag(self, argv, flag):
        with pytest.raises(UsageError, match=flag):
            parse_config(argv)

    def test_parse_modes(self):
        assert parse_modes("1:1,3:0.5j") == [(1, 1 + 0j), (3, 0.5j)]


class TestExitCodes:
    def test_success(self, capsys):
        assert run_cli(["ml", "--z", "0.5"], capsys)[0] == 0

    def test_usage(self, capsys):
        code, _, err = run_cli(["free", "--nu-re", "0"], capsys)
        assert code == 2 and "Re(nu)" in err

    def test_missing_subcommand(self, capsys):
        assert run_cli([], capsys)[0] == 2

    def test_value_error_in_run(self, capsys):
        # onshell/offshell parts exist only at nu = 1/2
        code, _, err = run_cli(["free", "--nu", "1", "--part", "onshell"], capsys)
        assert code == 2 and "--part" in err

    def test_numerical_failure(self, capsys):
        code, _, err = run_cli(["ml", "--alpha", "1", "--z", "30", "--method", "series",
                                "--max-terms", "5"], capsys)
        assert code == 1
        payload = json.loads(err.splitlines()[-1])
        assert payload["error"] == "NonConvergent"
        assert "bound" in payload and "value" in payload

    def test_singular_green(self, capsys):
        code, _, err = run_cli(["green", "--nu", "0.5", "--t-min", "0", "--t-max", "1", "--nt", "2"], capsys)
        assert code == 2 and "SingularAtZero" in err

    def test_console_script(self):
        env = dict(os.environ)
        r = subprocess.run([sys.executable, "-m", "fracschrodinger", "ml", "--z", "1"],
                           capture_output=True, text=True, env=env, timeout=120)
        assert r.returncode == 0
        assert abs(float(r.stdout.split()[0]) - math.e) < 1e-12
        r = subprocess.run([sys.executable, "-m", "fracschrodinger", "free", "--nu-re", "0"],
                           capture_output=True, text=True, env=env, timeout=120)
        assert r.returncode == 2
