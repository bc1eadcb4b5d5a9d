"""Left-invariant frame calculus on the Heisenberg group H3.

Points use the model coordinates (x, y, z) in which the Riemannian metric is
``dx^2 + dy^2 + (dz + (y dx - x dy)/2)^2``.  Tangent vectors are stored in the
left-invariant frame

    e1 = d/dx - (y/2) d/dz,   e2 = d/dy + (x/2) d/dz,   e3 = d/dz,

which is orthonormal for the Riemannian metric and for the Lorentzian metric
(where <e3, e3> = -1).  Coordinate components only appear at the boundary.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .tolerances import TOLERANCES


class MetricKind(enum.Enum):
    RIEMANNIAN = "riemannian"
    LORENTZIAN = "lorentzian"

    @property
    def signature(self) -> tuple[int, int, int]:
        return (1, 1, 1) if self is MetricKind.RIEMANNIAN else (1, 1, -1)


@dataclass(frozen=True)
class ModelPoint:
    x: float
    y: float
    z: float

    def __post_init__(self):
        if not all(math.isfinite(c) for c in (self.x, self.y, self.z)):
            raise ValueError(f"non-finite model point {self!r}")

    @classmethod
    def origin(cls) -> "ModelPoint":
        return cls(0.0, 0.0, 0.0)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


@dataclass(frozen=True)
class CoordVector:
    """Tangent vector with components along d/dx, d/dy, d/dz."""

    base: ModelPoint
    u: float
    v: float
    w: float

    def as_array(self) -> np.ndarray:
        return np.array([self.u, self.v, self.w], dtype=float)


@dataclass(frozen=True)
class FrameVector:
    """Tangent vector with components along e1, e2, e3."""

    base: ModelPoint
    a1: float
    a2: float
    a3: float

    @classmethod
    def from_array(cls, base: ModelPoint, comps: Sequence[float]) -> "FrameVector":
        a1, a2, a3 = (float(c) for c in comps)
        return cls(base, a1, a2, a3)

    def as_array(self) -> np.ndarray:
        return np.array([self.a1, self.a2, self.a3], dtype=float)

    def __add__(self, other: "FrameVector") -> "FrameVector":
        _check_same_base(self, other)
        return FrameVector.from_array(self.base, self.as_array() + other.as_array())

    def __sub__(self, other: "FrameVector") -> "FrameVector":
        _check_same_base(self, other)
        return FrameVector.from_array(self.base, self.as_array() - other.as_array())

    def scaled(self, c: float) -> "FrameVector":
        return FrameVector(self.base, c * self.a1, c * self.a2, c * self.a3)


def _check_same_base(v, w):
    if v.base != w.base:
        raise ValueError(f"vectors live at different points: {v.base} vs {w.base}")


def frame_to_coord(v: FrameVector) -> CoordVector:
    p = v.base
    return CoordVector(p, v.a1, v.a2, v.a3 - v.a1 * p.y / 2 + v.a2 * p.x / 2)


def coord_to_frame(v: CoordVector) -> FrameVector:
    p = v.base
    return FrameVector(p, v.u, v.v, v.w + 0.5 * (p.y * v.u - p.x * v.v))


def frame_components(point, coord) -> np.ndarray:
    """Array version of :func:`coord_to_frame`; broadcasts over leading axes."""
    point = np.asarray(point, dtype=float)
    coord = np.asarray(coord, dtype=float)
    out = coord.copy()
    out[..., 2] = coord[..., 2] + 0.5 * (point[..., 1] * coord[..., 0] - point[..., 0] * coord[..., 1])
    return out


def coord_components(point, frame) -> np.ndarray:
    """Array version of :func:`frame_to_coord`."""
    point = np.asarray(point, dtype=float)
    frame = np.asarray(frame, dtype=float)
    out = frame.copy()
    out[..., 2] = frame[..., 2] - 0.5 * (point[..., 1] * frame[..., 0] - point[..., 0] * frame[..., 1])
    return out


def inner_components(a, b, kind: MetricKind):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    sign = 1.0 if kind is MetricKind.RIEMANNIAN else -1.0
    return a[..., 0] * b[..., 0] + a[..., 1] * b[..., 1] + sign * a[..., 2] * b[..., 2]


def cross_components(a, b, kind: MetricKind) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a1, a2, a3 = a[..., 0], a[..., 1], a[..., 2]
    b1, b2, b3 = b[..., 0], b[..., 1], b[..., 2]
    third = a1 * b2 - a2 * b1
    if kind is MetricKind.LORENTZIAN:
        third = -third
    return np.stack([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, third], axis=-1)


def inner(v: FrameVector, w: FrameVector, kind: MetricKind) -> float:
    _check_same_base(v, w)
    return float(inner_components(v.as_array(), w.as_array(), kind))


def cross(v: FrameVector, w: FrameVector, kind: MetricKind) -> FrameVector:
    """Exterior product; for the Lorentzian kind the e3 row of the determinant is negated."""
    _check_same_base(v, w)
    return FrameVector.from_array(v.base, cross_components(v.as_array(), w.as_array(), kind))


# --- connections -----------------------------------------------------------

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ConnectionTable:
    """``gamma[i][j][k]`` is the e_k coefficient of the derivative of e_j along e_i.

    Indices are 0-based here (e1 is index 0).
    """

    kind: MetricKind
    gamma: tuple

    def as_array(self) -> np.ndarray:
        return np.array([[[float(c) for c in row] for row in block] for block in self.gamma])

    def apply(self, a, b) -> np.ndarray:
        """Bilinear term sum_ij a_i b_j gamma[i][j] for frame-component arrays."""
        return np.einsum("...i,...j,ijk->...k", np.asarray(a, float), np.asarray(b, float), self.as_array())


def _table(entries: dict) -> tuple:
    g = [[[Fraction(0)] * 3 for _ in range(3)] for _ in range(3)]
    for (i, j), vec in entries.items():
        g[i - 1][j - 1] = [Fraction(c) for c in vec]
    return tuple(tuple(tuple(row) for row in block) for block in g)


_RIEMANNIAN = _table({
    (1, 2): (0, 0, _HALF), (2, 1): (0, 0, -_HALF),
    (1, 3): (0, -_HALF, 0), (3, 1): (0, -_HALF, 0),
    (2, 3): (_HALF, 0, 0), (3, 2): (_HALF, 0, 0),
})
_LORENTZIAN = _table({
    (1, 2): (0, 0, _HALF), (2, 1): (0, 0, -_HALF),
    (1, 3): (0, _HALF, 0), (3, 1): (0, _HALF, 0),
    (2, 3): (-_HALF, 0, 0), (3, 2): (-_HALF, 0, 0),
})

# [e_i, e_j] in frame components; only [e1, e2] = -[e2, e1] = e3 is nonzero.
_ZERO = (Fraction(0),) * 3
BRACKETS = {(i, j): _ZERO for i in range(3) for j in range(3)}
BRACKETS[(0, 1)] = (Fraction(0), Fraction(0), Fraction(1))
BRACKETS[(1, 0)] = (Fraction(0), Fraction(0), Fraction(-1))


def connection(kind: MetricKind) -> ConnectionTable:
    return ConnectionTable(kind, _RIEMANNIAN if kind is MetricKind.RIEMANNIAN else _LORENTZIAN)


def torsion_defects(table: ConnectionTable) -> list[tuple[int, int, int, Fraction]]:
    """Nonzero entries of the torsion tensor, (i, j, k, value); empty when torsion-free."""
    out = []
    g = table.gamma
    for i in range(3):
        for j in range(3):
            for k in range(3):
                val = g[i][j][k] - g[j][i][k] - BRACKETS[(i, j)][k]
                if val != 0:
                    out.append((i, j, k, val))
    return out


def compatibility_defects(table: ConnectionTable) -> list[tuple[int, int, int, Fraction]]:
    """Nonzero values of <D_i e_j, e_k> + <e_j, D_i e_k> over all 27 index triples."""
    eta = table.kind.signature
    g = table.gamma
    out = []
    for i in range(3):
        for j in range(3):
            for k in range(3):
                val = g[i][j][k] * eta[k] + g[i][k][j] * eta[j]
                if val != 0:
                    out.append((i, j, k, val))
    return out


def covariant_derivative(
    field: Callable[..., FrameVector],
    direction: int,
    at: Sequence[float],
    kind: MetricKind,
    step: float = TOLERANCES["fd_step"],
    velocity: Callable[..., Sequence[float]] | None = None,
    richardson: bool = False,
) -> FrameVector:
    """Covariant derivative of a vector field along a parametrized map.

    ``field(*params)`` returns the field at the map point ``field(*params).base``.
    The direction vector is the central-difference velocity of those base
    points, unless ``velocity(*params)`` supplies its frame components.
    """
    if not step > 0:
        raise ValueError(f"step must be positive, got {step}")
    at = tuple(float(c) for c in at)
    center = field(*at)

    def shifted(h):
        plus = list(at)
        minus = list(at)
        plus[direction] += h
        minus[direction] -= h
        return field(*plus), field(*minus)

    def estimate(h):
        fp, fm = shifted(h)
        dv = (fp.as_array() - fm.as_array()) / (2 * h)
        if velocity is not None:
            vel = np.asarray(velocity(*at), dtype=float)
        else:
            dp = (fp.base.as_array() - fm.base.as_array()) / (2 * h)
            vel = frame_components(center.base.as_array(), dp)
        return dv + connection(kind).apply(vel, center.as_array())

    result = estimate(step)
    if richardson:
        result = (4 * estimate(step / 2) - result) / 3
    return FrameVector.from_array(center.base, result)


# --- isometries ------------------------------------------------------------


@dataclass(frozen=True)
class IsometryElement:
    """Element of the identity component SO(2) x R^3 of the isometry group."""

    theta: float = 0.0
    A: float = 0.0
    B: float = 0.0
    C: float = 0.0

    def jacobian(self) -> np.ndarray:
        c, s = math.cos(self.theta), math.sin(self.theta)
        return np.array([
            [c, -s, 0.0],
            [s, c, 0.0],
            [0.5 * (self.A * s - self.B * c), 0.5 * (self.A * c + self.B * s), 1.0],
        ])

    def translation(self) -> np.ndarray:
        return np.array([self.A, self.B, self.C])

    def apply_array(self, pts) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        return pts @ self.jacobian().T + self.translation()

    def compose(self, other: "IsometryElement") -> "IsometryElement":
        """``self`` after ``other``."""
        jac = self.jacobian()
        A, B, C = jac @ other.translation() + self.translation()
        return IsometryElement(self.theta + other.theta, A, B, C)

    def inverse(self) -> "IsometryElement":
        jinv = np.linalg.inv(self.jacobian())
        A, B, C = -jinv @ self.translation()
        return IsometryElement(-self.theta, A, B, C)


def isometry_apply(iso: IsometryElement, p: ModelPoint) -> ModelPoint:
    x, y, z = iso.apply_array(p.as_array())
    return ModelPoint(float(x), float(y), float(z))


def isometry_differential(iso: IsometryElement, v: FrameVector) -> FrameVector:
    image = isometry_apply(iso, v.base)
    coord = iso.jacobian() @ frame_to_coord(v).as_array()
    return coord_to_frame(CoordVector(image, *(float(c) for c in coord)))


def plane_flattening_isometry(a: float, b: float, d: float) -> IsometryElement:
    """Isometry sending the plane ``a x + b y + z + d = 0`` onto ``z = 0``."""
    return IsometryElement(0.0, 2 * b, -2 * a, d)
