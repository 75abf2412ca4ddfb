import hashlib
import json
from pathlib import Path

import pytest

from beamplots import cli, figures, io

DATA = Path(__file__).parent / "data"


def sha256(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def write_tradeoff(path, rows):
    lines = ["scheme,rho,crb_bp_sqrt_m,crb_ms_sqrt_m,solve_time_s,status"]
    lines += [",".join(r) for r in rows]
    Path(path).write_text("\n".join(lines) + "\n")


def write_manifest(path, **extra):
    manifest = {
        "tool": "crbeam", "version": "0.1.0", "command": "sweep",
        "aod_markers_deg": [
            {"label": "UE", "aod_deg": -14.0, "aod_front_deg": -14.0},
            {"label": "target1", "aod_deg": -33.7, "aod_front_deg": -33.7},
        ],
    }
    manifest.update(extra)
    Path(path).write_text(json.dumps(manifest))


@pytest.fixture()
def sweep_inputs(tmp_path):
    csv = tmp_path / "tradeoff.csv"
    write_tradeoff(csv, [
        ("APA", "", "0.18", "0.20", "1e-3", "ok"),
        ("FDB-WCRB", "0.0", "0.102", "0.125", "1.0", "ok"),
        ("FDB-WCRB", "0.5", "0.085", "0.129", "1.0", "ok"),
        ("FDB-WCRB", "1.0", "0.071", "0.201", "1.0", "ok"),
    ])
    manifest = tmp_path / "manifest.json"
    write_manifest(manifest)
    return csv, manifest


@pytest.fixture()
def pattern_inputs(tmp_path):
    csv = tmp_path / "beampattern.csv"
    lines = ["angle_deg,power_db"]
    lines += [f"{a},{-0.01 * (a + 14.0) ** 2}" for a in range(-90, 91)]
    csv.write_text("\n".join(lines) + "\n")
    manifest = tmp_path / "manifest.json"
    write_manifest(manifest, command="beampattern", scheme="FDB-WCRB", rho=1.0)
    return csv, manifest


class TestReaders:
    def test_tradeoff_rows(self, sweep_inputs):
        rows = io.read_tradeoff(sweep_inputs[0])
        assert len(rows) == 4
        assert rows[0].scheme == "APA" and rows[0].rho is None
        assert rows[1].rho == 0.0

    def test_missing_column_names_it(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("scheme,rho,crb_bp_sqrt_m,solve_time_s,status\n")
        with pytest.raises(io.SchemaError, match="crb_ms_sqrt_m"):
            io.read_tradeoff(bad)

    def test_empty_csv_rejected(self, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("")
        with pytest.raises(io.SchemaError):
            io.read_tradeoff(empty)

    def test_header_only_rejected(self, tmp_path):
        csv = tmp_path / "none.csv"
        write_tradeoff(csv, [])
        with pytest.raises(io.SchemaError, match="no usable rows"):
            io.read_tradeoff(csv)

    def test_failed_rows_skipped(self, tmp_path):
        csv = tmp_path / "mixed.csv"
        write_tradeoff(csv, [
            ("FDB-WCRB", "0.0", "0.1", "0.1", "1.0", "ok"),
            ("FDB-WCRB", "0.5", "", "", "1.0", "solver_failed"),
        ])
        rows = io.read_tradeoff(csv)
        assert len(rows) == 1

    def test_beampattern_reader(self, pattern_inputs):
        angles, powers = io.read_beampattern(pattern_inputs[0])
        assert len(angles) == 181
        assert angles[0] == -90.0 and angles[-1] == 90.0

    def test_manifest_markers(self, sweep_inputs):
        manifest = io.read_manifest(sweep_inputs[1])
        markers = io.aod_markers(manifest)
        assert ("UE", -14.0) in markers


class TestTradeoffFigure:
    def test_writes_raster_and_vector(self, sweep_inputs, tmp_path):
        out = tmp_path / "fig" / "tradeoff.png"
        written = figures.plot_tradeoff(*sweep_inputs, out)
        assert len(written) == 2
        for path in written:
            assert Path(path).stat().st_size > 0
        assert {Path(p).suffix for p in written} == {".png", ".pdf"}

    def test_inputs_unmodified(self, sweep_inputs, tmp_path):
        before = [sha256(p) for p in sweep_inputs]
        figures.plot_tradeoff(*sweep_inputs, tmp_path / "out.png")
        assert [sha256(p) for p in sweep_inputs] == before

    def test_single_scheme(self, tmp_path):
        csv = tmp_path / "one.csv"
        write_tradeoff(csv, [("CPA-WVM", "0.0", "0.2", "0.1", "1.0", "ok"),
                             ("CPA-WVM", "1.0", "0.1", "0.2", "1.0", "ok")])
        manifest = tmp_path / "m.json"
        write_manifest(manifest)
        written = figures.plot_tradeoff(csv, manifest, tmp_path / "one.png")
        assert Path(written[0]).stat().st_size > 0

    def test_empty_input_writes_nothing(self, tmp_path):
        csv = tmp_path / "none.csv"
        write_tradeoff(csv, [])
        manifest = tmp_path / "m.json"
        write_manifest(manifest)
        out = tmp_path / "missing.png"
        with pytest.raises(io.SchemaError):
            figures.plot_tradeoff(csv, manifest, out)
        assert not out.exists()

    def test_deterministic_png(self, sweep_inputs, tmp_path):
        a = figures.plot_tradeoff(*sweep_inputs, tmp_path / "a.png")
        b = figures.plot_tradeoff(*sweep_inputs, tmp_path / "b.png")
        png_a = next(p for p in a if p.endswith(".png"))
        png_b = next(p for p in b if p.endswith(".png"))
        assert sha256(png_a) == sha256(png_b)

    def test_every_scheme_has_a_style(self, sweep_inputs):
        rows = io.read_tradeoff(sweep_inputs[0])
        for row in rows:
            style = figures.style_for(row.scheme)
            assert "color" in style and "marker" in style


class TestBeampatternFigure:
    def test_writes_both_formats(self, pattern_inputs, tmp_path):
        written = figures.plot_beampattern(*pattern_inputs, tmp_path / "bp.png")
        for path in written:
            assert Path(path).stat().st_size > 0

    def test_inputs_unmodified(self, pattern_inputs, tmp_path):
        before = [sha256(p) for p in pattern_inputs]
        figures.plot_beampattern(*pattern_inputs, tmp_path / "bp.png")
        assert [sha256(p) for p in pattern_inputs] == before

    def test_missing_column_named(self, tmp_path, pattern_inputs):
        bad = tmp_path / "bad.csv"
        bad.write_text("angle_deg\n-90\n")
        with pytest.raises(io.SchemaError, match="power_db"):
            figures.plot_beampattern(bad, pattern_inputs[1], tmp_path / "x.png")


class TestCli:
    def test_tradeoff_entry(self, sweep_inputs, tmp_path, capsys):
        code = cli.tradeoff_main([str(sweep_inputs[0]), str(sweep_inputs[1]),
                                  str(tmp_path / "fig.png")])
        assert code == 0
        assert "wrote" in capsys.readouterr().out

    def test_beampattern_entry(self, pattern_inputs, tmp_path):
        code = cli.beampattern_main([str(pattern_inputs[0]), str(pattern_inputs[1]),
                                     str(tmp_path / "fig.png")])
        assert code == 0

    def test_schema_error_exit_code(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("nope\n1\n")
        manifest = tmp_path / "m.json"
        write_manifest(manifest)
        code = cli.tradeoff_main([str(bad), str(manifest), str(tmp_path / "f.png")])
        assert code == 1
        assert "error" in capsys.readouterr().err
