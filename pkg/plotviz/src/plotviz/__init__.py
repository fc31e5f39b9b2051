"""Heatmap and surface rendering for qubitpair scan artifacts."""

from .loader import EXPECTED_HEADER, GRID_NAMES, ScanFormatError, SurfaceData, load_scan
from .render import RenderInfo, render

__version__ = "0.1.0"
