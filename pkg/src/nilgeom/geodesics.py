"""Geodesics of the Riemannian Heisenberg group.

In model coordinates the geodesic equations read

    x'' = -y' J,   y'' = x' J,   J' = 0,   J = z' + (x' y - x y') / 2,

where J is the e3 frame component of the velocity.  The integrator carries J as
a fixed parameter of each trajectory and recovers z' from it, so conservation
of J is built into the reduced first-order system.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import Sequence, TextIO

import numpy as np

from .heis_core import FrameVector, ModelPoint, frame_to_coord
from .tolerances import TOLERANCES

CSV_HEADER = "t,x,y,z,dx,dy,dz,J"


@dataclass(frozen=True)
class GeodesicState:
    x: float
    y: float
    z: float
    dx: float
    dy: float
    dz: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z, self.dx, self.dy, self.dz])


@dataclass(frozen=True)
class Line3:
    """Euclidean straight line ``base + t * direction`` in model coordinates."""

    base: ModelPoint
    direction: tuple[float, float, float]

    def __post_init__(self):
        if not any(self.direction):
            raise ValueError("line direction must be nonzero")

    def at(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)[..., None]
        return self.base.as_array() + t * np.asarray(self.direction, dtype=float)


@dataclass(frozen=True)
class GeodesicTrace:
    t: np.ndarray = field(repr=False)
    states: np.ndarray = field(repr=False)  # columns x, y, z, dx, dy, dz

    @property
    def positions(self) -> np.ndarray:
        return self.states[:, :3]

    def momentum(self) -> np.ndarray:
        return momentum_array(self.states)

    def state(self, i: int) -> GeodesicState:
        return GeodesicState(*(float(c) for c in self.states[i]))

    def write_csv(self, fh: TextIO, comment: str | None = None) -> None:
        if comment is not None:
            fh.write(f"# {comment}\n")
        fh.write(CSV_HEADER + "\n")
        J = self.momentum()
        for ti, row, Ji in zip(self.t, self.states, J):
            fh.write(",".join(f"{v:.17g}" for v in (ti, *row, Ji)) + "\n")

    def to_csv(self, comment: str | None = None) -> str:
        buf = io.StringIO()
        self.write_csv(buf, comment)
        return buf.getvalue()


def momentum_array(states) -> np.ndarray:
    s = np.asarray(states, dtype=float)
    x, y, dx, dy, dz = s[..., 0], s[..., 1], s[..., 3], s[..., 4], s[..., 5]
    return dz + 0.5 * (dx * y - x * dy)


def momentum(s: GeodesicState) -> float:
    return float(momentum_array(s.as_array()))


def geodesic_rhs(s: GeodesicState) -> GeodesicState:
    """Time derivative of ``s``; the returned ``dx, dy, dz`` slots hold accelerations."""
    J = momentum(s)
    ddx = -s.dy * J
    ddy = s.dx * J
    # (dx*y - x*dy)' = ddx*y - x*ddy, which keeps J' = 0
    ddz = -0.5 * (ddx * s.y - s.x * ddy)
    return GeodesicState(s.dx, s.dy, s.dz, ddx, ddy, ddz)


def _reduced_rhs(y: np.ndarray, J: np.ndarray) -> np.ndarray:
    px, py, _, u, v = y.T
    out = np.empty_like(y)
    out[:, 0] = u
    out[:, 1] = v
    out[:, 2] = J - 0.5 * (u * py - px * v)
    out[:, 3] = -v * J
    out[:, 4] = u * J
    return out


def _full_states(y: np.ndarray, J: np.ndarray) -> np.ndarray:
    px, py, _, u, v = y.T
    dz = J - 0.5 * (u * py - px * v)
    return np.column_stack([y, dz])


def integrate_batch(points, velocities, t_max: float, step: float = TOLERANCES["geodesic_step"]):
    """Integrate many geodesics at once with classical fixed-step RK4.

    ``points`` and ``velocities`` are (N, 3) arrays of model points and
    coordinate velocities.  The step is shrunk so that ``t_max`` is an exact
    multiple.  Returns ``(t, states)`` with ``states`` of shape (n+1, N, 6).
    """
    if not (step > 0 and t_max > 0):
        raise ValueError(f"step and t_max must be positive, got step={step}, t_max={t_max}")
    points = np.atleast_2d(np.asarray(points, dtype=float))
    velocities = np.atleast_2d(np.asarray(velocities, dtype=float))
    n = max(1, int(math.ceil(t_max / step - 1e-9)))
    h = t_max / n
    J = momentum_array(np.column_stack([points, velocities]))
    y = np.column_stack([points, velocities[:, :2]])
    out = np.empty((n + 1, len(points), 6))
    out[0] = _full_states(y, J)
    for i in range(1, n + 1):
        k1 = _reduced_rhs(y, J)
        k2 = _reduced_rhs(y + 0.5 * h * k1, J)
        k3 = _reduced_rhs(y + 0.5 * h * k2, J)
        k4 = _reduced_rhs(y + h * k3, J)
        y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(y)):
            bad = int(np.argmin(np.all(np.isfinite(y), axis=1)))
            raise FloatingPointError(
                f"non-finite geodesic state at t={i * h:.6g} for trajectory {bad} "
                f"(start {points[bad].tolist()}, velocity {velocities[bad].tolist()})"
            )
        out[i] = _full_states(y, J)
    return np.arange(n + 1) * h, out


def rk4_spans(rhs, y0, spans, step: float = TOLERANCES["geodesic_step"]) -> np.ndarray:
    """Integrate ``dy/dsigma = rhs(sigma, y)`` row-wise from 0 to ``spans[i]``.

    All rows take the same number of RK4 steps, each row with its own step
    ``spans[i] / n`` (at most ``step`` in magnitude).  ``sigma`` is passed to
    ``rhs`` as a per-row array.
    """
    y = np.atleast_2d(np.asarray(y0, dtype=float)).copy()
    spans = np.broadcast_to(np.asarray(spans, dtype=float), (len(y),))
    n = max(1, int(math.ceil(np.max(np.abs(spans)) / step - 1e-9)))
    h = (spans / n)[:, None]
    sig = np.zeros(len(y))
    for _ in range(n):
        k1 = rhs(sig, y)
        k2 = rhs(sig + h[:, 0] / 2, y + 0.5 * h * k1)
        k3 = rhs(sig + h[:, 0] / 2, y + 0.5 * h * k2)
        k4 = rhs(sig + h[:, 0], y + h * k3)
        y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        sig = sig + h[:, 0]
    return y


def geodesic_endpoints(points, velocities, times, step: float = TOLERANCES["geodesic_step"]) -> np.ndarray:
    """Positions at ``times[i]`` of the geodesics with the given starts and coordinate velocities."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    velocities = np.atleast_2d(np.asarray(velocities, dtype=float))
    J = momentum_array(np.column_stack([points, velocities]))
    y0 = np.column_stack([points, velocities[:, :2]])
    return rk4_spans(lambda _, y: _reduced_rhs(y, J), y0, times, step)[:, :3]


def integrate_geodesic(
    p0: ModelPoint, v0: FrameVector, t_max: float, step: float = TOLERANCES["geodesic_step"]
) -> GeodesicTrace:
    coord = frame_to_coord(FrameVector(p0, v0.a1, v0.a2, v0.a3))
    t, states = integrate_batch(p0.as_array(), coord.as_array(), t_max, step)
    return GeodesicTrace(t, states[:, 0, :])


def horizontal_geodesic(
    p0: ModelPoint, v0: FrameVector, tol: float = TOLERANCES["horizontal_a3"]
) -> Line3:
    """Closed-form geodesic through ``p0`` with horizontal initial velocity ``v0``."""
    if abs(v0.a3) > tol:
        raise ValueError(f"not horizontal: e3 component {v0.a3!r}")
    coord = frame_to_coord(FrameVector(p0, v0.a1, v0.a2, 0.0))
    return Line3(p0, (coord.u, coord.v, coord.w))


def is_geodesic_line(line: Line3, tol: float = TOLERANCES["line_condition"]) -> bool:
    a1, a2, a3 = line.direction
    b = line.base
    if a1 == 0 and a2 == 0:
        return True
    return abs(a3 + 0.5 * (a1 * b.y - a2 * b.x)) <= tol


def line_deviation(line: Line3, t_max: float = 1.0, step: float = TOLERANCES["geodesic_step"]) -> float:
    """Max distance on [0, t_max] between ``line`` and the geodesic sharing its initial data."""
    t, states = integrate_batch(line.base.as_array(), np.asarray(line.direction), t_max, step)
    return float(np.max(np.abs(states[:, 0, :3] - line.at(t))))


def line_deviations(bases, directions, t_max: float = 1.0, step: float = TOLERANCES["geodesic_step"]) -> np.ndarray:
    """Vectorized :func:`line_deviation` over (N, 3) arrays."""
    bases = np.asarray(bases, dtype=float)
    directions = np.asarray(directions, dtype=float)
    t, states = integrate_batch(bases, directions, t_max, step)
    lines = bases[None, :, :] + t[:, None, None] * directions[None, :, :]
    return np.max(np.abs(states[:, :, :3] - lines), axis=(0, 2))


def j1_oracle(t) -> np.ndarray:
    """Exact geodesic from the origin with initial velocity e1 + e3."""
    t = np.asarray(t, dtype=float)
    return np.stack([np.sin(t), 1 - np.cos(t), 1.5 * t - 0.5 * np.sin(t)], axis=-1)


def geodesic_residual(t: Sequence[float], positions) -> float:
    """Max residual of the geodesic equations for a sampled curve, by central differences."""
    t = np.asarray(t, dtype=float)
    p = np.asarray(positions, dtype=float)
    h = t[1] - t[0]
    d1 = (p[2:] - p[:-2]) / (2 * h)
    d2 = (p[2:] - 2 * p[1:-1] + p[:-2]) / h**2
    x, y = p[1:-1, 0], p[1:-1, 1]
    J = d1[:, 2] + 0.5 * (d1[:, 0] * y - x * d1[:, 1])
    r1 = d2[:, 0] + d1[:, 1] * J
    r2 = d2[:, 1] - d1[:, 0] * J
    r3 = d2[:, 2] + 0.5 * (d2[:, 0] * y - x * d2[:, 1])
    return float(np.max(np.abs(np.concatenate([r1, r2, r3]))))


__all__ = [
    "CSV_HEADER",
    "GeodesicState",
    "GeodesicTrace",
    "Line3",
    "geodesic_endpoints",
    "geodesic_residual",
    "geodesic_rhs",
    "horizontal_geodesic",
    "integrate_batch",
    "integrate_geodesic",
    "is_geodesic_line",
    "j1_oracle",
    "line_deviation",
    "line_deviations",
    "momentum",
    "momentum_array",
    "rk4_spans",
]
