"""Heptagrid {7,3} tiling engine with interwoven triangles and tile sets."""

from ._accel import backend_name

__all__ = ["backend_name"]
__version__ = "0.1.0"
