"""Command-line interface: subcommands, formats, exit codes, determinism."""

import json

import pytest

from padiclab.cli import (
    EXIT_CONFIG,
    EXIT_OK,
    EXIT_VALIDATION,
    main,
)

P211_ARGS = ["--p", "2", "--e", "1", "--f", "1"]


def _run(tmp_path, name, argv):
    out = tmp_path / name
    rc = main(argv + ["--out", str(out)])
    return rc, out


class TestSpectrumCommand:
    def test_json_document(self, tmp_path):
        rc, out = _run(tmp_path, "spectrum.json", ["spectrum", *P211_ARGS])
        assert rc == EXIT_OK
        doc = json.loads(out.read_text())
        assert set(doc) == {"params", "command", "results", "meta"}
        assert doc["command"] == "spectrum"
        assert doc["params"] == {"p": 2, "e": 1, "f": 1}
        assert set(doc["meta"]) == {"version", "seed", "tolerances"}
        rows = doc["results"]
        assert len(rows) == 24  # default m <= 3, n <= 5
        assert set(rows[0]) == {"m", "n", "lambda", "value", "multiplicity"}
        values = [r["value"] for r in rows]
        assert values == sorted(values)
        assert rows[0]["value"] == pytest.approx(0.6931022916506043, rel=1e-12)

    def test_csv_header_and_precision(self, tmp_path):
        rc, out = _run(
            tmp_path, "spectrum.csv", ["spectrum", *P211_ARGS, "--format", "csv"]
        )
        assert rc == EXIT_OK
        lines = out.read_text().splitlines()
        assert lines[0] == "m,n,lambda,value,multiplicity"
        assert len(lines) == 25
        # Floats carry full round-trip precision (%.17g).
        first = lines[1].split(",")
        assert float(first[2]) == pytest.approx(0.6931022916506043, rel=1e-16)
        assert len(first[2]) >= 17


class TestValidateCommand:
    def test_passes(self, tmp_path):
        rc, out = _run(
            tmp_path,
            "val.json",
            ["validate", *P211_ARGS, "--depth", "8", "--no-drift"],
        )
        assert rc == EXIT_OK
        doc = json.loads(out.read_text())
        names = [r["name"] for r in doc["results"]]
        assert "spectrum:eigenvalue-match" in names
        assert "hs:closed-vs-double-sum" in names
        assert any(n.startswith("seminorm:") for n in names)
        assert all(r["passed"] for r in doc["results"] if r["passed"] is not None)

    def test_injected_error_exits_3(self, tmp_path):
        rc, out = _run(
            tmp_path,
            "bad.json",
            ["validate", *P211_ARGS, "--depth", "8", "--no-drift",
             "--inject-error", "1e-4"],
        )
        assert rc == EXIT_VALIDATION
        doc = json.loads(out.read_text())
        failed = [r["name"] for r in doc["results"] if r["passed"] is False]
        assert "spectrum:eigenvalue-match" in failed

    def test_hs_direction_depends_on_ramification(self, tmp_path):
        rc, out = _run(
            tmp_path,
            "val212.json",
            ["validate", "--p", "2", "--e", "1", "--f", "2", "--depth", "5",
             "--no-drift", "--k", "4"],
        )
        assert rc == EXIT_OK
        names = [r["name"] for r in json.loads(out.read_text())["results"]]
        assert "hs:total-diverges" in names
        assert "hs:total-converges" not in names


class TestZetaCommand:
    def test_grid_with_pole_row(self, tmp_path):
        rc, out = _run(
            tmp_path,
            "zeta.json",
            ["zeta", "--p", "2", "--e", "1", "--f", "2",
             "--s-min", "1", "--s-max", "3", "--s-step", "1"],
        )
        assert rc == EXIT_OK
        rows = json.loads(out.read_text())["results"]
        assert [r["pole"] for r in rows] == [True, False, False]
        pole = rows[0]
        assert pole["re_zeta"] is None and pole["im_zeta"] is None
        regular = rows[1]
        assert regular["re_zeta"] == pytest.approx(2.68641975308642, rel=1e-12)
        assert regular["tail_bound"] < 1e-12

    def test_csv_empty_cells_for_pole(self, tmp_path):
        rc, out = _run(
            tmp_path,
            "zeta.csv",
            ["zeta", "--p", "2", "--e", "1", "--f", "2", "--format", "csv",
             "--s-min", "1", "--s-max", "2", "--s-step", "1"],
        )
        assert rc == EXIT_OK
        lines = out.read_text().splitlines()
        assert lines[0].startswith("re_s,im_s,re_zeta")
        assert ",,," in lines[1] or lines[1].split(",")[2] == ""


class TestConfigErrors:
    def test_composite_p(self, tmp_path):
        rc = main(["spectrum", "--p", "6", "--e", "1", "--f", "1",
                   "--out", str(tmp_path / "x.json")])
        assert rc == EXIT_CONFIG

    def test_unknown_flag(self):
        assert main(["spectrum", "--bogus"]) == EXIT_CONFIG

    def test_unknown_command(self):
        assert main(["frobnicate"]) == EXIT_CONFIG

    def test_no_command(self):
        assert main([]) == EXIT_CONFIG


class TestOutputRouting:
    def test_outdir_env(self, tmp_path, monkeypatch):
        monkeypatch.setenv("PADICLAB_OUTDIR", str(tmp_path))
        rc = main(["spectrum", *P211_ARGS])
        assert rc == EXIT_OK
        assert (tmp_path / "spectrum.json").exists()

    def test_stdout_fallback(self, capsys, monkeypatch):
        monkeypatch.delenv("PADICLAB_OUTDIR", raising=False)
        rc = main(["spectrum", *P211_ARGS, "--n-max", "1", "--m-max", "1"])
        assert rc == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert doc["command"] == "spectrum"


class TestDeterminism:
    @pytest.mark.parametrize("fmt", ["json", "csv"])
    def test_byte_identical_reruns(self, tmp_path, fmt):
        argv = ["spectrum", *P211_ARGS, "--format", fmt]
        _, a = _run(tmp_path, f"a.{fmt}", argv)
        _, b = _run(tmp_path, f"b.{fmt}", argv)
        assert a.read_bytes() == b.read_bytes()
