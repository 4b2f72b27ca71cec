"""Liaison hexapods: Moebius curves, bonds, tangency conditions and self-motions."""
from __future__ import annotations

from .exactalg import GaussRat, GPoly, rat
from .moebius import SixTuple, matched_directions, moebius_general_test, photographic_map
from .liaison import (
    Hexapod,
    movability_certificate,
    tang2_solve,
    tang3_solve,
    verify_residual_platform,
)
from .study import motion_curve, observation_checks, sample_motion

__all__ = [
    "GaussRat",
    "GPoly",
    "rat",
    "SixTuple",
    "matched_directions",
    "moebius_general_test",
    "photographic_map",
    "Hexapod",
    "movability_certificate",
    "tang2_solve",
    "tang3_solve",
    "verify_residual_platform",
    "motion_curve",
    "observation_checks",
    "sample_motion",
]
