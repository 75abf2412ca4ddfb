"""Figure builders: tradeoff curves and beampatterns from sweep artifacts.

Each builder writes both a raster (.png) and a vector (.pdf) file next to the
requested output path and returns the written paths.  Output is deterministic
for identical inputs (PDF metadata dates are stripped).
"""

from __future__ import annotations

from collections import OrderedDict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .io import aod_markers, read_beampattern, read_manifest, read_tradeoff

DB_FLOOR = -40.0

SCHEME_STYLES = {
    "FDB-WCRB": {"color": "#0072bd", "marker": "o"},
    "FDB-WBF": {"color": "#d95319", "marker": "s"},
    "FDB-WVM": {"color": "#edb120", "marker": "^"},
    "CPA-WCRB": {"color": "#7e2f8e", "marker": "o"},
    "CPA-WBF": {"color": "#77ac30", "marker": "s"},
    "CPA-WVM": {"color": "#4dbeee", "marker": "^"},
    "APA": {"color": "#a2142f", "marker": "*"},
}
FALLBACK_COLORS = ("#336699", "#996633", "#339966", "#663399")


def style_for(scheme: str) -> dict:
    if scheme in SCHEME_STYLES:
        return SCHEME_STYLES[scheme]
    return {"color": FALLBACK_COLORS[hash(scheme) % len(FALLBACK_COLORS)],
            "marker": "d"}


def _output_paths(out_image) -> tuple[Path, Path]:
    base = Path(out_image)
    if base.suffix:
        base = base.with_suffix("")
    return base.with_suffix(".png"), base.with_suffix(".pdf")


def _save(fig, out_image) -> list[str]:
    png, pdf = _output_paths(out_image)
    png.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(png, dpi=200)
    fig.savefig(pdf, metadata={"CreationDate": None})
    plt.close(fig)
    return [str(png), str(pdf)]


def plot_tradeoff(csv_path, manifest_path, out_image) -> list[str]:
    """Bound-vs-bound curves, one line per scheme, single marker for APA."""
    rows = read_tradeoff(csv_path)
    read_manifest(manifest_path)  # validated for traceability even if unused
    by_scheme: OrderedDict[str, list] = OrderedDict()
    for row in rows:
        by_scheme.setdefault(row.scheme, []).append(row)

    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    for scheme, entries in by_scheme.items():
        entries = sorted(entries, key=lambda r: -1.0 if r.rho is None else r.rho)
        xs = [r.crb_bp_sqrt_m for r in entries]
        ys = [r.crb_ms_sqrt_m for r in entries]
        style = style_for(scheme)
        if len(entries) == 1:
            ax.plot(xs, ys, linestyle="none", markersize=12, label=scheme, **style)
        else:
            ax.plot(xs, ys, linewidth=1.8, markersize=4, label=scheme, **style)
    ax.set_xlabel(r"$\sqrt{\mathrm{CRB}}$ of BP [m]")
    ax.set_ylabel(r"$\sqrt{\mathrm{CRB}}$ of MS [m]")
    ax.grid(True, alpha=0.3)
    ax.margins(0.05)
    ax.legend(fontsize=8, ncol=2)
    fig.tight_layout()
    return _save(fig, out_image)


def plot_beampattern(csv_path, manifest_path, out_image) -> list[str]:
    """Normalized transmit pattern with object-direction markers."""
    angles, powers = read_beampattern(csv_path)
    manifest = read_manifest(manifest_path)
    floored = [max(p, DB_FLOOR) for p in powers]

    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot(angles, floored, color="#0072bd", linewidth=1.8)
    for label, angle in aod_markers(manifest):
        ax.axvline(angle, color="#888888", linestyle=":", linewidth=1.0)
        ax.text(angle, 0.5, label, rotation=90, fontsize=7,
                ha="right", va="bottom")
    title_bits = [str(manifest.get("scheme", ""))]
    if manifest.get("rho") is not None:
        title_bits.append(f"rho={manifest['rho']:g}")
    ax.set_title(" ".join(b for b in title_bits if b))
    ax.set_xlabel("angle [deg]")
    ax.set_ylabel("normalized power [dB]")
    ax.set_xlim(min(angles), max(angles))
    ax.set_ylim(DB_FLOOR, 3.0)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    return _save(fig, out_image)
