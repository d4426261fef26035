"""Figure assembly with matplotlib.

Every plotted number is read from a curve CSV or copied from the manifest;
nothing is recomputed here.
"""

from __future__ import annotations

import math
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .manifest import FigureManifest, ManifestError, load_manifest

__all__ = ["render"]

_STYLE_MAP = {"dashed": "--", "dotted": ":", "solid": "-"}


def _read_curve(directory: str, curve) -> tuple[np.ndarray, np.ndarray]:
    path = os.path.join(directory, curve.file)
    try:
        data = np.genfromtxt(path, delimiter=",", names=True)
    except (OSError, ValueError) as exc:
        raise ManifestError(f"cannot read curve file {curve.file!r}: {exc}") from exc
    if data.dtype.names is None:
        raise ManifestError(f"curve file {curve.file!r} has no header row")
    for col in (curve.x, curve.y):
        if col not in data.dtype.names:
            raise ManifestError(
                f"curve file {curve.file!r} has no column {col!r} "
                f"(columns: {', '.join(data.dtype.names)})"
            )
    return np.atleast_1d(data[curve.x]), np.atleast_1d(data[curve.y])


def render(manifest_dir: str, out_path: str | None = None,
           fmt: str | None = None):
    """Render one manifest directory; returns the matplotlib Figure.

    If out_path is given the figure is also written there; fmt overrides the
    format implied by the file extension.
    """
    manifest = load_manifest(manifest_dir)
    n = len(manifest.panels)
    ncols = 1 if n == 1 else 2
    nrows = math.ceil(n / ncols)
    fig, axes = plt.subplots(
        nrows, ncols, figsize=(5.2 * ncols, 3.6 * nrows), squeeze=False
    )
    flat = axes.ravel()
    for ax in flat[n:]:
        ax.set_visible(False)
    for ax, panel in zip(flat, manifest.panels):
        for curve in panel.curves:
            x, y = _read_curve(manifest.directory, curve)
            ax.plot(x, y, label=curve.label or None)
        for ref in panel.reference_lines:
            ls = _STYLE_MAP.get(ref.style, "--")
            if ref.orientation == "h":
                ax.axhline(ref.value, linestyle=ls, color="0.35", linewidth=0.9)
            else:
                ax.axvline(ref.value, linestyle=ls, color="0.35", linewidth=0.9)
        ax.set_xlabel(panel.xlabel)
        ax.set_ylabel(panel.ylabel)
        if any(c.label for c in panel.curves):
            ax.legend(fontsize="small")
        if panel.name and n > 1:
            ax.set_title(panel.name, fontsize="small")
    fig.suptitle(manifest.title)
    fig.tight_layout(rect=(0.0, 0.0, 1.0, 0.96))
    if out_path is not None:
        kwargs = {"format": fmt} if fmt else {}
        fig.savefig(out_path, **kwargs)
    return fig
