"""Readers for the sweep harness artifacts (CSV tables + JSON manifest)."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass


class SchemaError(ValueError):
    """Input file does not match the documented artifact schema."""


TRADEOFF_COLUMNS = ("scheme", "rho", "crb_bp_sqrt_m", "crb_ms_sqrt_m",
                    "solve_time_s", "status")
PATTERN_COLUMNS = ("angle_deg", "power_db")


@dataclass(frozen=True)
class TradeoffRow:
    scheme: str
    rho: float | None
    crb_bp_sqrt_m: float
    crb_ms_sqrt_m: float
    status: str


def _check_columns(found, expected, path):
    for column in expected:
        if column not in found:
            raise SchemaError(f"{path}: missing column {column!r}")


def read_tradeoff(path) -> list[TradeoffRow]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise SchemaError(f"{path}: empty file")
        _check_columns(reader.fieldnames, TRADEOFF_COLUMNS, path)
        rows = []
        for rec in reader:
            if rec["status"] != "ok":
                continue
            rows.append(TradeoffRow(
                scheme=rec["scheme"],
                rho=float(rec["rho"]) if rec["rho"] else None,
                crb_bp_sqrt_m=float(rec["crb_bp_sqrt_m"]),
                crb_ms_sqrt_m=float(rec["crb_ms_sqrt_m"]),
                status=rec["status"],
            ))
    if not rows:
        raise SchemaError(f"{path}: no usable rows")
    return rows


def read_beampattern(path) -> tuple[list[float], list[float]]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise SchemaError(f"{path}: empty file")
        _check_columns(reader.fieldnames, PATTERN_COLUMNS, path)
        angles, powers = [], []
        for rec in reader:
            angles.append(float(rec["angle_deg"]))
            powers.append(float(rec["power_db"]))
    if not angles:
        raise SchemaError(f"{path}: no samples")
    return angles, powers


def read_manifest(path) -> dict:
    try:
        with open(path) as fh:
            manifest = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(manifest, dict):
        raise SchemaError(f"{path}: manifest must be a JSON object")
    return manifest


def aod_markers(manifest: dict) -> list[tuple[str, float]]:
    """(label, front-range angle in degrees) pairs for pattern annotations."""
    out = []
    for entry in manifest.get("aod_markers_deg", []):
        try:
            out.append((str(entry["label"]), float(entry["aod_front_deg"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad aod marker entry {entry!r}") from exc
    return out
