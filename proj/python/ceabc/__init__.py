"""Epidemic calibration engine: cross-entropy optimization with ABC refinement."""

from ._ceabc import (
    calibrate,
    ce_minimize,
    compartment_names,
    default_bounds,
    default_nominal,
    infer_initial_condition,
    misfit,
    param_names,
    quantile,
    rhs,
    sample_truncated_gaussian,
    select_elite,
    simulate,
    transmission_rate,
    truncated_normal_moments,
    weighted_rms_norm,
)

__all__ = [
    "calibrate",
    "ce_minimize",
    "compartment_names",
    "default_bounds",
    "default_nominal",
    "infer_initial_condition",
    "misfit",
    "param_names",
    "quantile",
    "rhs",
    "sample_truncated_gaussian",
    "select_elite",
    "simulate",
    "transmission_rate",
    "truncated_normal_moments",
    "weighted_rms_norm",
]
