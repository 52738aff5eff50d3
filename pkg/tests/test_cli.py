import csv
import io
import json

import numpy as np
import pytest

from nuccr import cli, runner
from nuccr.ccr import CCRReport
from nuccr.runner import ScenarioConfig

FAST = ["--steps", "40"]


def run(capsys, argv):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def read_table(text):
    lines = text.splitlines()
    assert lines[0].startswith("# time in units of 1/m1") or lines[0].startswith("# momentum")
    rows = list(csv.reader(io.StringIO("\n".join(lines[1:]))))
    return rows[0], np.array(rows[1:], dtype=float)


def test_parse_defaults():
    cfg = cli.parse_config(["single", "purity", "--p-over-m1", "0.1"])
    assert cfg == ScenarioConfig(model="single", quantity="purity", p_over_m1=(0.1,))
    assert cfg.sin2_theta == 0.306 and cfg.dm2_over_m1sq == 0.001 and cfg.precision == 12
    assert cli.parse_config(["verify"]).steps == cli.VERIFY_STEPS
    assert cli.parse_config(["pair", "spin-ccr-global"]).quantity == "spin_ccr_global"


def test_flag_overrides_file(tmp_path):
    conf = tmp_path / "run.conf"
    conf.write_text("# figure run\np-over-m1 = 0.1, 1\nsteps = 17  # short\nsin2_theta = 0.2\n")
    cfg = cli.parse_config(["single", "purity", "--config", str(conf), "--steps", "9"])
    assert cfg.p_over_m1 == (0.1, 1.0)
    assert cfg.steps == 9
    assert cfg.sin2_theta == 0.2


@pytest.mark.parametrize(
    "argv, body",
    [
        (["single", "purity", "--t-max", "-1"], None),
        (["single", "purity", "--steps", "1"], None),
        (["single", "purity", "--sin2-theta", "1.0"], None),
        (["single", "spin-ccr-global"], None),
        (["single", "purity", "--config", "CONF"], "colour = blue\n"),
        (["single", "purity", "--config", "CONF"], "steps = many\n"),
        (["single", "purity", "--config", "CONF"], "steps\n"),
        (["single", "purity", "--config", "/nonexistent/x.conf"], None),
    ],
)
def test_usage_errors_exit_2(tmp_path, argv, body):
    if body is not None:
        conf = tmp_path / "bad.conf"
        conf.write_text(body)
        argv = [str(conf) if a == "CONF" else a for a in argv]
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 2


def test_single_purity_large_momentum(capsys):
    code, out, _ = run(capsys, ["single", "purity", "--p-over-m1", "10", "--steps", "4000"])
    assert code == 0
    cols, rows = read_table(out)
    assert cols == ["t", "purity"]
    # deficit stays within the chiral ripple scale (m1/E1)^2 of 0.999
    assert rows[:, 1].min() >= 0.999 - 1 / 101
    assert rows[0, 0] == 0
    assert rows[-1, 0] == pytest.approx(4 * np.pi / (np.sqrt(101.001) - np.sqrt(101)), rel=1e-9)


def test_single_ccr_first_row(capsys):
    code, out, _ = run(capsys, ["single", "ccr", "--p-over-m1", "1", *FAST])
    assert code == 0
    cols, rows = read_table(out)
    assert cols == ["t", "coherence", "predictability", "entropy", "residual"]
    np.testing.assert_allclose(rows[0, 1:4], [0, 2, 0], atol=1e-12)
    assert np.max(np.abs(rows[:, 4])) < 1e-8
    np.testing.assert_allclose(rows[:, 1:4].sum(axis=1), 2, atol=1e-10)


def test_pair_quantities(capsys):
    code, out, _ = run(capsys, ["pair", "amplitude", "--p-over-m1", "5", *FAST])
    assert code == 0
    cols, rows = read_table(out)
    assert cols == ["p_over_m1", "amplitude"] and rows[0, 0] == 0 and rows[0, 1] == 1
    assert rows[-1, 0] == 5
    for q, ncols in (("spin-ccr-global", 5), ("spin-ccr-parties", 6), ("purity", 2)):
        code, out, _ = run(capsys, ["pair", q, "--p-over-m1", "1", "--steps", "8"])
        assert code == 0
        cols, rows = read_table(out)
        assert len(cols) == ncols and rows.shape == (8, ncols)
        if cols[-1] == "residual":
            assert np.max(np.abs(rows[:, -1])) < 1e-8


def test_survival_and_entropy_columns(capsys):
    _, out, _ = run(capsys, ["single", "survival", "--p-over-m1", "1", *FAST])
    assert read_table(out)[0] == ["t", "P_ee", "P_ee_standard"]
    _, out, _ = run(capsys, ["single", "entropy", "--p-over-m1", "1", *FAST])
    cols, rows = read_table(out)
    assert cols == ["t", "entropy"] and rows[0, 1] == 0


def test_files_sidecar_and_determinism(tmp_path, capsys):
    out = tmp_path / "fig" / "purity.csv"
    argv = ["single", "purity", "--p-over-m1", "0.1", "1", "--steps", "50", "--out", str(out), "--precision", "8"]
    assert cli.main(argv) == 0
    files = sorted(p.name for p in out.parent.iterdir())
    assert files == ["purity.json", "purity_p0.1.csv", "purity_p1.csv"]
    first = (out.parent / "purity_p1.csv").read_bytes()
    assert b"\r" not in first and first.startswith(b"# time in units of 1/m1; p/m1=1\nt,purity\n")
    t_last = first.split()[-1].split(b",")[0].decode()
    assert t_last == f"{float(t_last):.8g}"
    meta = json.loads((out.parent / "purity.json").read_text())
    assert meta["p_over_m1"] == [0.1, 1.0] and meta["steps"] == 50 and len(meta["files"]) == 2
    assert cli.main(argv) == 0
    assert (out.parent / "purity_p1.csv").read_bytes() == first


def test_io_failure_exit_3(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code, _, err = run(capsys, ["single", "purity", "--steps", "5", "--out", str(blocker / "x.csv")])
    assert code == 3 and "nuccr:" in err
    code, _, _ = run(capsys, ["verify", "--steps", "3", "--p-over-m1", "1", "--out", str(blocker / "r.json")])
    assert code == 3


def test_invariant_violation_exit_1(monkeypatch, capsys):
    def broken(state, k):
        return CCRReport("pure_entropic", {"coherence": 0.0, "predictability": 2.0, "entropy": 0.0}, 2.0, 1e-6)

    monkeypatch.setattr(runner, "ccr_pure", broken)
    code, out, err = run(capsys, ["single", "ccr", "--steps", "5"])
    assert code == 1 and out == "" and "residual" in err


def test_verify_passes(capsys):
    code, out, _ = run(capsys, ["verify", "--p-over-m1", "0.1", "1", "10", "--steps", "30"])
    assert code == 0
    report = json.loads(out)
    assert report["pass"] is True
    for name in ("ccr_single_flavor", "ccr_pair_spins_global", "ccr_pair_spins_parties"):
        assert report["checks"][name]["max_residual"] < 1e-10
    rec = report["reconciliation"]
    assert rec["purity_printed"]["max_abs_dev"] > 0.1
    assert rec["amplitude_limit"]["rel_dev_printed"] > 0.5


def test_verify_detects_corrupted_gamma_sign():
    def corrupted(c, cp, t, params):
        g1, g2, g3, g4 = runner.pm.gamma_coefficients(c, cp, t, params)
        return g1, g2, -g3, g4

    cfg = ScenarioConfig(model="verify", quantity="all", p_over_m1=(1.0,), steps=5)
    report = runner.verify(cfg, gamma_fn=corrupted)
    assert report["pass"] is False
    assert report["checks"]["pair_gamma_vs_direct"]["pass"] is False
    assert all(v["pass"] for k, v in report["checks"].items() if k != "pair_gamma_vs_direct")


def test_verify_failure_exit_1(monkeypatch, capsys):
    monkeypatch.setattr(cli, "verify", lambda cfg: {"pass": False, "checks": {}})
    code, out, _ = run(capsys, ["verify", "--steps", "3"])
    assert code == 1 and json.loads(out)["pass"] is False
