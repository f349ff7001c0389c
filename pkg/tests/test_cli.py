import json
import math
import subprocess
import sys

import numpy as np
import pytest

from geophase import DiscretizedPath
from geophase.artifacts import FLUX_HEADER, JUMP_HEADER, TRACE_HEADER, parse_trace_csv, read_csv
from geophase.cli import main

from conftest import UP_X, UP_Y, UP_Z


def run(tmp_path, *argv):
    return main([*argv, "--out-dir", str(tmp_path)])


def listing(d):
    return sorted(p.name for p in d.iterdir()) if d.exists() else []


def test_polarization_example(tmp_path):
    assert run(tmp_path, "polarization", "--epsilon", "1e-3", "--steps", "2001") == 0
    assert listing(tmp_path) == ["jumps.csv", "polarization.csv", "polarization.json"]
    header, rows = read_csv(tmp_path / "jumps.csv")
    assert tuple(header) == JUMP_HEADER
    assert len(rows) == 1
    assert int(rows[0][2]) == 1
    assert abs(abs(float(rows[0][1])) - math.pi) < 1e-2
    trace = parse_trace_csv(tmp_path / "polarization.csv")
    assert trace.cumulative_phase.size == 2001


def test_ring_flux_example(tmp_path):
    assert run(tmp_path, "ring-flux", "--pi-junctions", "1", "--n-min", "-1", "--n-max", "1") == 0
    header, rows = read_csv(tmp_path / "ring-flux.csv")
    assert tuple(header) == FLUX_HEADER
    assert [float(r[1]) for r in rows] == [-0.5, 0.5, 1.5]


def test_gouy_example(tmp_path):
    assert run(tmp_path, "gouy", "--dims", "2", "--z-over-zr", "-1000", "1000") == 0
    _, rows = read_csv(tmp_path / "gouy.csv")
    total = float(rows[-1][2]) - float(rows[0][2])
    # finite range: the asymptotic pi is reached only up to 2 atan(1e-3)
    assert total == pytest.approx(2 * math.atan(1000.0), abs=1e-10)


def test_mode_gouy(tmp_path):
    assert run(tmp_path, "mode-gouy", "--samples", "201") == 0
    header, rows = read_csv(tmp_path / "mode-gouy.csv")
    arr = np.array(rows, dtype=float)
    assert np.abs(arr[:, 4] - arr[:, 5]).max() < 1e-9
    side = json.loads((tmp_path / "mode-gouy.json").read_text())
    assert side["summary"]["max_abs_error_rad"] < 1e-9


def test_ring_energy_and_beta_sweep(tmp_path):
    assert run(tmp_path, "ring-energy", "--beta-l", "10") == 0
    _, rows = read_csv(tmp_path / "ring-energy.csv")
    lowest = min(float(r[2]) for r in rows)
    ground = sorted(float(r[1]) for r in rows if float(r[2]) - lowest < 1e-9)
    assert ground == pytest.approx([-0.453964311890, 0.453964311890], abs=1e-9)
    assert run(tmp_path, "beta-sweep", "--beta-l", "2", "10", "100") == 0
    header, rows = read_csv(tmp_path / "beta-sweep.csv")
    assert header[-1] == "beta_l"
    f = [float(r[1]) for r in rows]
    assert f == pytest.approx([0.301677282201, 0.453964311890, 0.495048714235], abs=1e-11)


def test_ring_json_input(tmp_path):
    ring_file = tmp_path / "ring.json"
    ring_file.write_text(json.dumps({"junctions": [{"offset": "pi", "ej": 1.0}], "beta_l": 5.0,
                                "external_flux": 0.0}))
    out = tmp_path / "out"
    assert main(["ring-energy", "--ring", str(ring_file), "-o", str(out)]) == 0
    side = json.loads((out / "ring-energy.json").read_text())
    assert side["config"]["ring"]["beta_l"] == 5.0
    ring_file.write_text(json.dumps({"junctions": [], "beta_l": 5.0, "bogus": 1}))
    assert main(["ring-flux", "--ring", str(ring_file), "-o", str(tmp_path / "bad")]) == 2
    assert not (tmp_path / "bad").exists()


def test_sidecar_is_sorted_and_complete(tmp_path):
    # exponent-form negatives need the --flag=value spelling
    run(tmp_path, "polarization", "--epsilon=-1e-3", "--steps", "501")
    text = (tmp_path / "polarization.json").read_text(encoding="utf-8")
    side = json.loads(text)
    assert text == json.dumps(side, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    cfg = side["config"]
    assert cfg["epsilon"] == -1e-3 and cfg["steps"] == 501 and cfg["seed"] == 0
    assert side["summary"]["jumps"][0]["sign"] == -1


def write_path(tmp_path, states, name="path.json"):
    p = tmp_path / name
    p.write_text(json.dumps(DiscretizedPath(states).to_json()))
    return p


def test_trace_closed_loop_and_gauge(tmp_path):
    p = write_path(tmp_path, [UP_Z, UP_X, UP_Y])
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["trace", "--path", str(p), "--closed", "-o", str(a)]) == 0
    assert main(["trace", "--path", str(p), "--closed", "--random-gauge", "--seed", "7",
                 "-o", str(b)]) == 0
    sa = json.loads((a / "trace.json").read_text())["summary"]
    sb = json.loads((b / "trace.json").read_text())["summary"]
    assert sa["closed_loop_phase_rad"] == pytest.approx(-math.pi / 4, abs=1e-12)
    assert sb["closed_loop_phase_rad"] == pytest.approx(sa["closed_loop_phase_rad"], abs=1e-12)
    header, rows = read_csv(a / "trace.csv")
    assert tuple(header) == TRACE_HEADER
    assert len(rows) == 4 and rows[0][2] == ""


@pytest.mark.parametrize(
    "argv, key",
    [
        (["polarization", "--epsilon", "0.7"], "--epsilon"),
        (["polarization", "--steps", "1"], "--steps"),
        (["polarization", "--theta-end-rad", "-1"], "--theta-end-rad"),
        (["polarization", "--dip-threshold", "0.6"], "--recovery-threshold"),
        (["gouy", "--dims", "3", "--z-over-zr", "-1", "1"], "--dims"),
        (["gouy", "--z-over-zr", "1", "-1"], "--z-over-zr"),
        (["gouy", "--z-over-zr", "-1", "1", "--rayleigh-range", "-2", "1"], "--rayleigh-range"),
        (["mode-gouy", "--grid-points", "32"], "--grid-points"),
        (["mode-gouy", "--grid-half-width-w0", "10"], "--grid-half-width-w0"),
        (["ring-flux", "--n-min", "2", "--n-max", "1"], "--n-max"),
        (["ring-flux", "--pi-junctions", "-1"], "--pi-junctions"),
        (["ring-energy", "--beta-l", "0"], "--beta-l"),
        (["beta-sweep", "--beta-l", "2", "0.5"], "--beta-l"),
        (["trace", "--path", "/nonexistent/path.json"], "--path"),
        (["polarization", "--seed", "-1"], "--seed"),
    ],
)
def test_config_errors_exit_2_and_write_nothing(tmp_path, capsys, argv, key):
    out = tmp_path / "out"
    assert main([*argv, "-o", str(out)]) == 2
    assert key in capsys.readouterr().err
    assert listing(out) == []


def test_unknown_flag_rejected(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["polarization", "--ellipticity", "1e-3", "-o", str(tmp_path)])
    assert exc.value.code == 2


def test_numerical_error_exit_3(tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["polarization", "--epsilon", "0", "-o", str(out)]) == 3
    assert "OrthogonalStep" in capsys.readouterr().err
    assert listing(out) == []


def test_trace_orthogonal_step_exit_3(tmp_path):
    p = write_path(tmp_path, [UP_Z, [0, 1]])
    assert main(["trace", "--path", str(p), "-o", str(tmp_path / "o")]) == 3
    assert not (tmp_path / "o").exists()


def test_malformed_path_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"states": [[[1, 0], [0, 0]]], "extra": 1}')
    assert main(["trace", "--path", str(bad), "-o", str(tmp_path / "o")]) == 2
    bad.write_text("not json")
    assert main(["trace", "--path", str(bad), "-o", str(tmp_path / "o")]) == 2


CASES = [
    ["polarization", "--epsilon", "1e-3"],
    ["gouy", "--z-over-zr", "-1000", "1000"],
    ["mode-gouy", "--samples", "101"],
    ["ring-flux", "--pi-junctions", "3", "--beta-l", "2.5", "--flux-phi0", "0.1"],
    ["ring-energy", "--beta-l", "7", "--flux-phi0", "0.2"],
    ["beta-sweep", "--beta-l", "1.5", "3", "30"],
]


@pytest.mark.parametrize("argv", CASES, ids=lambda a: a[0])
def test_deterministic_bytes(tmp_path, argv):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main([*argv, "-o", str(a)]) == 0
    assert main([*argv, "-o", str(b)]) == 0
    assert listing(a) == listing(b)
    for name in listing(a):
        assert (a / name).read_bytes() == (b / name).read_bytes()
    assert not [n for n in listing(a) if n.endswith(".tmp")]


@pytest.mark.parametrize("argv", CASES, ids=lambda a: a[0])
def test_csv_schema_round_trip(tmp_path, argv):
    assert main([*argv, "-o", str(tmp_path)]) == 0
    for csv_file in tmp_path.glob("*.csv"):
        raw = csv_file.read_bytes()
        assert b"\r" not in raw and raw.endswith(b"\n")
        header, rows = read_csv(csv_file)
        assert header[0] in ("index", "n_or_branch")
        assert all(len(r) == len(header) for r in rows)
        for r in rows:
            for cell in r[1:]:
                if cell:
                    v = float(cell)
                    assert math.isfinite(v)
                    # 12 significant digits at most
                    mant = cell.lstrip("-").split("e")[0].replace(".", "").lstrip("0")
                    assert len(mant) <= 12
        if tuple(header) == TRACE_HEADER:
            parse_trace_csv(csv_file)


def test_random_gauge_seeded(tmp_path):
    rng = np.random.default_rng(5)
    states = [rng.normal(size=3) + 1j * rng.normal(size=3) for _ in range(6)]
    p = write_path(tmp_path, states)
    outs = []
    for seed, name in ((3, "a"), (3, "b"), (4, "c")):
        assert main(["trace", "--path", str(p), "--random-gauge", "--seed", str(seed),
                     "-o", str(tmp_path / name)]) == 0
        outs.append((tmp_path / name / "trace.csv").read_bytes())
    assert outs[0] == outs[1]
    # step phases depend on the gauge, overlaps do not
    assert outs[0] != outs[2]


def test_module_entry_point(tmp_path):
    r = subprocess.run(
        [sys.executable, "-m", "geophase", "ring-flux", "--pi-junctions", "1", "-o", str(tmp_path)],
        capture_output=True, text=True,
    )
    assert r.returncode == 0
    assert (tmp_path / "ring-flux.csv").exists()
