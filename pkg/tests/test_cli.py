import json

import pytest

from braidcircuit import cli, layout
from braidcircuit.layout import CircuitLayout, sample_layout


def run(capsys, *argv):
    code = cli.dispatch(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestGridParsing:
    def test_inclusive_endpoints(self):
        assert cli._grid("-2:2:0.5") == pytest.approx(
            [-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0])

    def test_single_value(self):
        assert cli._grid("0.7") == [0.7]

    def test_bad_grid(self):
        import argparse
        with pytest.raises(argparse.ArgumentTypeError):
            cli._grid("1:2")
        with pytest.raises(argparse.ArgumentTypeError):
            cli._grid("1:2:-1")


class TestVerify:
    def test_all_pass_exit_zero(self, capsys):
        code, out, _ = run(capsys, "verify", "--c", "1")
        assert code == 0
        reports = json.loads(out)
        assert all(r["passed"] for r in reports)

    def test_unknown_flag_is_usage_error(self, capsys):
        code, _, _ = run(capsys, "verify", "--frobnicate")
        assert code == 2

    def test_missing_subcommand_is_usage_error(self, capsys):
        assert run(capsys, )[0] == 2


class TestHopf:
    def test_clifford_grid_passes(self, capsys):
        code, out, _ = run(capsys, "hopf", "--c-grid", "0:1:1")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "c,abs_dense,closed_form,phase"
        assert len(lines) == 3

    def test_generic_c_fails(self, capsys):
        code, _, _ = run(capsys, "hopf", "--c-grid", "0.5")
        assert code == 1


class TestLinkEntropy:
    def test_piece_curve(self, capsys):
        code, out, _ = run(capsys, "link-entropy", "--piece", "a",
                           "--c-grid", "0:1:0.5")
        assert code == 0
        rows = [line.split(",") for line in out.strip().splitlines()[1:]]
        vals = {float(c): float(s) for c, s in rows}
        assert vals[0.0] == pytest.approx(0.0, abs=1e-10)
        assert vals[1.0] == pytest.approx(0.0, abs=1e-10)
        assert vals[0.5] > 0.5


class TestLayoutCommands:
    def test_sample_layout_roundtrips(self, capsys, tmp_path):
        path = tmp_path / "lay.json"
        code, _, _ = run(capsys, "sample-layout", "--L", "8", "--p", "0.5",
                         "--q", "0.5", "--seed", "3", "--out", str(path))
        assert code == 0
        lay = layout.load(path)
        assert lay.L == 8 and lay.T == 8

    def test_run_loop_engine(self, capsys):
        code, out, _ = run(capsys, "run", "--engine", "loop", "--L", "8",
                           "--p", "1", "--q", "0.5")
        assert code == 0
        assert json.loads(out)["S"] == 8

    def test_compare_engines_agree_at_clifford(self, capsys, tmp_path):
        path = tmp_path / "lay.json"
        sample_layout(6, 6, 0.5, 0.5, 0.0, 11).save(path)
        code, out, _ = run(capsys, "compare-engines", "--layout", str(path))
        assert code == 0
        rows = dict(line.split(",") for line in out.strip().splitlines()[1:])
        assert float(rows["loop"]) == float(rows["stabilizer"])
        assert float(rows["dense"]) == pytest.approx(float(rows["loop"]),
                                                     abs=1e-8)

    def test_renyi2_instance(self, capsys, tmp_path):
        path = tmp_path / "open.json"
        CircuitLayout(L=16, T=3, c=1.0, p=1, q=0, r=0, seed=0,
                      layers=(("R",) * 8, ("R",) * 7 + ("I",),
                              ("R",) * 8)).save(path)
        code, out, _ = run(capsys, "renyi2", "--layout", str(path),
                           "--region", "6")
        assert code == 0
        assert out.strip() == "S2_bits,2"

    def test_renyi2_rejects_measurements(self, capsys, tmp_path):
        path = tmp_path / "meas.json"
        sample_layout(8, 8, 0.0, 1.0, 0.0, 1).save(path)
        code, _, err = run(capsys, "renyi2", "--layout", str(path),
                           "--region", "4")
        assert code == 1
        assert "error" in err


class TestSweepCommand:
    def test_sweep_writes_files(self, capsys, tmp_path):
        path = tmp_path / "sweep.csv"
        code, out, _ = run(capsys, "sweep", "--engine", "loop", "--L", "8",
                           "--p", "0.5", "--q", "0.5", "--samples", "16",
                           "--mode", "independent", "--out", str(path))
        assert code == 0
        assert path.exists()
        assert (tmp_path / "sweep.csv.manifest.json").exists()

    def test_sweep_without_output_path(self, capsys):
        code, _, _ = run(capsys, "sweep", "--engine", "loop")
        assert code == 2

    def test_workers_env_fallback(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("BRAIDCIRCUIT_WORKERS", "1")
        path = tmp_path / "s.csv"
        code, _, _ = run(capsys, "sweep", "--engine", "loop", "--L", "4",
                         "--p", "1", "--q", "0.5", "--samples", "4",
                         "--mode", "independent", "--out", str(path))
        assert code == 0
