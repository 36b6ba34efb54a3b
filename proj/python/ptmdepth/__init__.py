"""Projection-depth trimming: depth, trimmed means, and efficiency tools."""

from ._ptmcore import (
    PtmError,
    alpha_d,
    are_vs_mean,
    breakdown_point,
    depth,
    halfspace_depth,
    if_ptm,
    if_radius,
    mad_k,
    med_k,
    outlyingness,
    projection_median,
    ptm,
    radius_profile,
    run_study,
    sample,
    stahel_donoho,
)

__all__ = [
    "PtmError",
    "alpha_d",
    "are_vs_mean",
    "breakdown_point",
    "depth",
    "halfspace_depth",
    "if_ptm",
    "if_radius",
    "mad_k",
    "med_k",
    "outlyingness",
    "projection_median",
    "ptm",
    "radius_profile",
    "run_study",
    "sample",
    "stahel_donoho",
]
