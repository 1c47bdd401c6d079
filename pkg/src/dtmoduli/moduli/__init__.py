"""Intersection numbers, Weil-Petersson volumes and their asymptotics."""

from .asymptotics import (
    MZConstants,
    anomaly_coefficient,
    b_genus,
    card_dt_asymptotic,
    card_q_asymptotic,
    fitted_volume_exponent,
    mz_asymptotic_volume,
    mz_constants,
    puncture_ratios,
    string_susceptibility,
    wp_genus_bound_check,
)
from .intersection import TauCorrelator, intersection_number
from .volumes import PiScaledRational, wp_volume

__all__ = [
    "MZConstants",
    "PiScaledRational",
    "TauCorrelator",
    "anomaly_coefficient",
    "b_genus",
    "card_dt_asymptotic",
    "card_q_asymptotic",
    "fitted_volume_exponent",
    "intersection_number",
    "mz_asymptotic_volume",
    "mz_constants",
    "puncture_ratios",
    "string_susceptibility",
    "wp_genus_bound_check",
    "wp_volume",
]
