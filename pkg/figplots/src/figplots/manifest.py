"""Loading and validation of figure manifests.

Expected layout of a manifest directory:

    manifest.json
    <curve files referenced by the manifest>

Manifest schema: figure_id, title, panels; each panel has a name, axis
labels, a nonempty list of curves {file, x, y, label} and a list of
reference lines {orientation h|v, value, label, style}.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

__all__ = ["ManifestError", "Curve", "ReferenceLine", "Panel", "FigureManifest",
           "load_manifest"]


class ManifestError(ValueError):
    pass


@dataclass(frozen=True)
class Curve:
    file: str
    x: str
    y: str
    label: str


@dataclass(frozen=True)
class ReferenceLine:
    orientation: str  # "h" or "v"
    value: float
    label: str
    style: str = "dashed"


@dataclass(frozen=True)
class Panel:
    name: str
    xlabel: str
    ylabel: str
    curves: tuple
    reference_lines: tuple


@dataclass(frozen=True)
class FigureManifest:
    figure_id: str
    title: str
    panels: tuple
    directory: str


def _require(d: dict, key: str, ctx: str):
    if key not in d:
        raise ManifestError(f"{ctx}: missing field {key!r}")
    return d[key]


def _parse_curve(d: dict, ctx: str) -> Curve:
    return Curve(
        file=str(_require(d, "file", ctx)),
        x=str(_require(d, "x", ctx)),
        y=str(_require(d, "y", ctx)),
        label=str(d.get("label", "")),
    )


def _parse_refline(d: dict, ctx: str) -> ReferenceLine:
    orientation = str(_require(d, "orientation", ctx))
    if orientation not in ("h", "v"):
        raise ManifestError(f"{ctx}: orientation must be 'h' or 'v', "
                            f"got {orientation!r}")
    try:
        value = float(_require(d, "value", ctx))
    except (TypeError, ValueError) as exc:
        raise ManifestError(f"{ctx}: reference value is not a number") from exc
    return ReferenceLine(orientation, value, str(d.get("label", "")),
                         str(d.get("style", "dashed")))


def _parse_panel(d: dict, directory: str, ctx: str) -> Panel:
    curves = [_parse_curve(c, f"{ctx} curve {i}")
              for i, c in enumerate(_require(d, "curves", ctx))]
    if not curves:
        raise ManifestError(f"{ctx}: panel has no curves")
    for c in curves:
        path = os.path.join(directory, c.file)
        if not os.path.isfile(path):
            raise ManifestError(f"{ctx}: curve file {c.file!r} not found")
    refs = [_parse_refline(r, f"{ctx} reference line {i}")
            for i, r in enumerate(d.get("reference_lines", []))]
    return Panel(
        name=str(d.get("name", "")),
        xlabel=str(d.get("xlabel", "")),
        ylabel=str(d.get("ylabel", "")),
        curves=tuple(curves),
        reference_lines=tuple(refs),
    )


def load_manifest(manifest_dir: str) -> FigureManifest:
    path = os.path.join(manifest_dir, "manifest.json")
    if not os.path.isfile(path):
        raise ManifestError(f"no manifest.json in {manifest_dir!r}")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"{path}: invalid JSON: {exc}") from exc
    figure_id = str(_require(raw, "figure_id", path))
    panels_raw = _require(raw, "panels", path)
    if not panels_raw:
        raise ManifestError(f"{path}: no panels")
    panels = tuple(
        _parse_panel(p, manifest_dir, f"{path} panel {i}")
        for i, p in enumerate(panels_raw)
    )
    return FigureManifest(
        figure_id=figure_id,
        title=str(raw.get("title", figure_id)),
        panels=panels,
        directory=os.path.abspath(manifest_dir),
    )
