"""Acceptance: regenerate both figure types from a reference sweep's artifacts."""

import hashlib
from pathlib import Path

from beamplots import figures

DATA = Path(__file__).parent / "data"


def sha256(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def test_regenerates_reference_figures(tmp_path):
    inputs = [
        DATA / "reference_tradeoff.csv",
        DATA / "reference_tradeoff_manifest.json",
        DATA / "reference_beampattern.csv",
        DATA / "reference_beampattern_manifest.json",
    ]
    before = [sha256(p) for p in inputs]

    written = figures.plot_tradeoff(inputs[0], inputs[1], tmp_path / "tradeoff.png")
    written += figures.plot_beampattern(inputs[2], inputs[3],
                                        tmp_path / "beampattern.png")
    assert len(written) == 4
    for path in written:
        assert Path(path).stat().st_size > 0, path

    after = [sha256(p) for p in inputs]
    ok = after == before
    print(f"ACCEPTANCE plot-regeneration: {'PASS' if ok else 'FAIL'} "
          f"({len(written)} non-empty files, inputs unchanged: {ok})")
    assert ok
