"""Numerical geometry of the Heisenberg group with its left-invariant metrics."""

from .heis_core import (
    ConnectionTable,
    CoordVector,
    FrameVector,
    IsometryElement,
    MetricKind,
    ModelPoint,
    connection,
    coord_to_frame,
    covariant_derivative,
    cross,
    frame_to_coord,
    inner,
    isometry_apply,
    isometry_differential,
    plane_flattening_isometry,
)

__version__ = "0.1.0"
