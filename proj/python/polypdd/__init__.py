"""Distance distributions of triangles, polygons and rings."""

from ._core import (
    DiagnosticError,
    KMConfig,
    SampleConfig,
    closed_form_pdf,
    ks_distance,
    mc_samples,
    pair_pdd,
    polygon_pdd,
    ring_pdd,
    triangle_pdd,
    triangle_pdd_angles,
)

__all__ = [
    "DiagnosticError",
    "KMConfig",
    "SampleConfig",
    "closed_form_pdf",
    "ks_distance",
    "mc_samples",
    "pair_pdd",
    "polygon_pdd",
    "ring_pdd",
    "triangle_pdd",
    "triangle_pdd_angles",
]
