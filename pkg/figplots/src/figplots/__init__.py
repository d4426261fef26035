"""Render figures from data directories (one CSV per curve + manifest.json).

This package never computes physics: every number drawn comes from a CSV
file or from the manifest itself.
"""

__version__ = "0.1.0"

from .manifest import FigureManifest, ManifestError, load_manifest
from .render import render
