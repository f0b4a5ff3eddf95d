"""Geometry of two-parabolic groups in PU(2,1) and sufficient discreteness criteria."""

from .criteria import (
    GeneratorParams,
    NormalizationError,
    ball_radius,
    build_generators,
    classify_equality,
    evaluate_criteria,
    normalize_delta_theta,
)
from .heisenberg import INFINITY, ORIGIN, HeisPoint, PointCloud, cygan_distance
from .kernels import BACKEND
from .rcircle import diameter, farthest_point
from .spheres import CyganSphere, isometric_sphere

__all__ = [
    "BACKEND",
    "CyganSphere",
    "GeneratorParams",
    "HeisPoint",
    "INFINITY",
    "NormalizationError",
    "ORIGIN",
    "PointCloud",
    "ball_radius",
    "build_generators",
    "classify_equality",
    "cygan_distance",
    "diameter",
    "evaluate_criteria",
    "farthest_point",
    "isometric_sphere",
    "normalize_delta_theta",
]
