"""Fundamental forms, mean curvature and graph equations under either metric.

Second fundamental forms are built from covariant second derivatives of the
immersion against the unit normal ``cross(X_s, X_t, kind) / sqrt(|<N, N>|)``,
and the mean curvature is ``(G l - 2 F m + E n) / (2 (E G - F^2))``.
For a graph ``z = f(x, y)`` the slopes ``p = f_x + y/2`` and ``q = f_y - x/2``
are the e3 components of the coordinate tangents.
"""

from __future__ import annotations

import enum
import io
from dataclasses import dataclass, field
from typing import Callable, Sequence, TextIO

import numpy as np
from numpy.polynomial import polynomial as P

from .heis_core import (
    FrameVector,
    IsometryElement,
    MetricKind,
    ModelPoint,
    connection,
    cross_components,
    frame_components,
    inner_components,
)
from .tolerances import TOLERANCES

RESIDUAL_CSV_HEADER = "x,y,riem_residual,lorentz_residual,diff_eq7,laplacian,causal"


class DegenerateParametrization(ValueError):
    pass


class LightlikePoint(ValueError):
    pass


@dataclass(frozen=True)
class Immersion:
    """Parametrized surface ``(s, t) -> (x, y, z)`` in model coordinates.

    ``partials(s, t)`` may return the coordinate tangents ``(X_s, X_t)`` and
    ``second_partials(s, t)`` the triple ``(X_ss, X_st, X_tt)``; whatever is
    missing is obtained by central differences.
    """

    map: Callable[[float, float], Sequence[float]]
    partials: Callable | None = None
    second_partials: Callable | None = None
    step: float = TOLERANCES["fd_step"]
    step2: float = TOLERANCES["fd_step_second"]
    richardson: bool = False

    def point(self, s, t) -> np.ndarray:
        return np.asarray(self.map(s, t), dtype=float)

    def model_point(self, s: float, t: float) -> ModelPoint:
        return ModelPoint(*(float(c) for c in self.point(s, t)))

    def _extrapolate(self, rule, h):
        est = rule(h)
        if self.richardson:
            est = (4 * rule(h / 2) - est) / 3
        return est

    def first(self, s: float, t: float) -> tuple[np.ndarray, np.ndarray]:
        if self.partials is not None:
            xs, xt = self.partials(s, t)
            return np.asarray(xs, float), np.asarray(xt, float)

        def rule(h):
            xs = (self.point(s + h, t) - self.point(s - h, t)) / (2 * h)
            xt = (self.point(s, t + h) - self.point(s, t - h)) / (2 * h)
            return np.stack([xs, xt])

        xs, xt = self._extrapolate(rule, self.step)
        return xs, xt

    def second(self, s: float, t: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        if self.second_partials is not None:
            return tuple(np.asarray(v, float) for v in self.second_partials(s, t))
        if self.partials is not None:
            def rule(h):
                xs_p, xt_p = self.first(s + h, t)
                xs_m, xt_m = self.first(s - h, t)
                xs_tp, xt_tp = self.first(s, t + h)
                xs_tm, xt_tm = self.first(s, t - h)
                xst = 0.5 * ((xs_tp - xs_tm) + (xt_p - xt_m)) / (2 * h)
                return np.stack([(xs_p - xs_m) / (2 * h), xst, (xt_tp - xt_tm) / (2 * h)])

            h = self.step
        else:
            def rule(h):
                c = self.point(s, t)
                xss = (self.point(s + h, t) - 2 * c + self.point(s - h, t)) / h**2
                xtt = (self.point(s, t + h) - 2 * c + self.point(s, t - h)) / h**2
                xst = (self.point(s + h, t + h) - self.point(s + h, t - h)
                       - self.point(s - h, t + h) + self.point(s - h, t - h)) / (4 * h**2)
                return np.stack([xss, xst, xtt])

            h = self.step2
        xss, xst, xtt = self._extrapolate(rule, h)
        return xss, xst, xtt

    def transformed(self, iso: IsometryElement) -> "Immersion":
        """Image of this immersion under ``iso``; partials map through the constant Jacobian."""
        jac = iso.jacobian()
        first = None if self.partials is None else (
            lambda s, t: tuple(jac @ np.asarray(v, float) for v in self.partials(s, t)))
        second = None if self.second_partials is None else (
            lambda s, t: tuple(jac @ np.asarray(v, float) for v in self.second_partials(s, t)))
        return Immersion(lambda s, t: iso.apply_array(self.map(s, t)), first, second,
                         self.step, self.step2, self.richardson)


@dataclass(frozen=True)
class FundamentalForms:
    E: float
    F: float
    G: float
    l: float  # noqa: E741
    m: float
    n: float

    @property
    def W2(self) -> float:
        return self.E * self.G - self.F**2


@dataclass(frozen=True)
class SurfaceFrame:
    """Frame data of an immersion at one parameter point."""

    point: np.ndarray
    Xs: np.ndarray
    Xt: np.ndarray
    Xss: np.ndarray  # covariant derivative of X_s along X_s
    Xst: np.ndarray  # covariant derivative of X_s along X_t
    Xtt: np.ndarray


def _frame_derivative(point, along, field_coord, field_second):
    """Derivative of the frame components of a coordinate field along one parameter."""
    out = field_second.copy()
    out[2] = field_second[2] + 0.5 * (
        along[1] * field_coord[0] + point[1] * field_second[0]
        - along[0] * field_coord[1] - point[0] * field_second[1]
    )
    return out


def surface_frame(imm: Immersion, s: float, t: float, kind: MetricKind) -> SurfaceFrame:
    p = imm.point(s, t)
    xs, xt = imm.first(s, t)
    xss, xst, xtt = imm.second(s, t)
    a_s = frame_components(p, xs)
    a_t = frame_components(p, xt)
    gamma = connection(kind)
    d_ss = _frame_derivative(p, xs, xs, xss) + gamma.apply(a_s, a_s)
    d_st = _frame_derivative(p, xt, xs, xst) + gamma.apply(a_t, a_s)
    d_tt = _frame_derivative(p, xt, xt, xtt) + gamma.apply(a_t, a_t)
    return SurfaceFrame(p, a_s, a_t, d_ss, d_st, d_tt)


def unit_normal(a_s, a_t, kind: MetricKind) -> np.ndarray:
    N = cross_components(a_s, a_t, kind)
    if np.linalg.norm(N) < TOLERANCES["degenerate"]:
        raise DegenerateParametrization("degenerate parametrization: X_s x X_t vanishes")
    eps = float(inner_components(N, N, kind))
    if abs(eps) < TOLERANCES["lightlike_band"]:
        raise LightlikePoint("lightlike point: normal has zero length")
    return N / np.sqrt(abs(eps))


def fundamental_forms(imm: Immersion, s: float, t: float, kind: MetricKind) -> FundamentalForms:
    fr = surface_frame(imm, s, t, kind)
    nrm = unit_normal(fr.Xs, fr.Xt, kind)
    ip = lambda a, b: float(inner_components(a, b, kind))  # noqa: E731
    return FundamentalForms(
        ip(fr.Xs, fr.Xs), ip(fr.Xs, fr.Xt), ip(fr.Xt, fr.Xt),
        ip(fr.Xss, nrm), ip(fr.Xst, nrm), ip(fr.Xtt, nrm),
    )


def mean_curvature(imm: Immersion, s: float, t: float, kind: MetricKind) -> float:
    ff = fundamental_forms(imm, s, t, kind)
    if abs(ff.W2) < TOLERANCES["degenerate"]:
        raise LightlikePoint("degenerate/lightlike: EG - F^2 vanishes")
    return 0.5 * (ff.G * ff.l - 2 * ff.F * ff.m + ff.E * ff.n) / ff.W2


def normal_vector(imm: Immersion, s: float, t: float, kind: MetricKind) -> FrameVector:
    fr = surface_frame(imm, s, t, kind)
    return FrameVector.from_array(ModelPoint(*map(float, fr.point)), unit_normal(fr.Xs, fr.Xt, kind))


# --- graphs ----------------------------------------------------------------


@dataclass(frozen=True)
class GraphFunction:
    """Height function ``z = f(x, y)`` with analytic partials up to order two."""

    f: Callable
    fx: Callable
    fy: Callable
    fxx: Callable
    fxy: Callable
    fyy: Callable
    name: str = field(default="f", compare=False)

    def p(self, x, y):
        return self.fx(x, y) + np.asarray(y) / 2

    def q(self, x, y):
        return self.fy(x, y) - np.asarray(x) / 2

    def immersion(self) -> Immersion:
        def partials(x, y):
            return (np.array([1.0, 0.0, self.fx(x, y)]), np.array([0.0, 1.0, self.fy(x, y)]))

        def second(x, y):
            return (np.array([0.0, 0.0, self.fxx(x, y)]), np.array([0.0, 0.0, self.fxy(x, y)]),
                    np.array([0.0, 0.0, self.fyy(x, y)]))

        return Immersion(lambda x, y: np.array([x, y, self.f(x, y)], dtype=float), partials, second)

    @classmethod
    def polynomial(cls, coeffs, name: str = "poly") -> "GraphFunction":
        """``f = sum c[i, j] x^i y^j``."""
        c = np.asarray(coeffs, dtype=float)
        cx, cy = P.polyder(c, axis=0), P.polyder(c, axis=1)
        cxx, cxy, cyy = P.polyder(cx, axis=0), P.polyder(cx, axis=1), P.polyder(cy, axis=1)
        ev = lambda k: (lambda x, y: P.polyval2d(x, y, k))  # noqa: E731
        return cls(ev(c), ev(cx), ev(cy), ev(cxx), ev(cxy), ev(cyy), name)

    @classmethod
    def zero(cls) -> "GraphFunction":
        return cls.polynomial([[0.0]], "plane")

    @classmethod
    def hyperbolic_paraboloid(cls) -> "GraphFunction":
        return cls.polynomial([[0.0, 0.0], [0.0, -0.5]], "hpb")

    @classmethod
    def helicoid(cls, lam: float) -> "GraphFunction":
        """Branch ``z = arctan(y/x) / lam`` of ``tan(lam z) = y/x`` over the half-plane x > 0."""
        if lam == 0:
            raise ValueError("helicoid needs a nonzero lambda")

        def r2(x, y):
            return np.asarray(x) ** 2 + np.asarray(y) ** 2

        return cls(
            lambda x, y: np.arctan(np.asarray(y) / x) / lam,
            lambda x, y: -np.asarray(y) / (lam * r2(x, y)),
            lambda x, y: np.asarray(x) / (lam * r2(x, y)),
            lambda x, y: 2 * np.asarray(x) * y / (lam * r2(x, y) ** 2),
            lambda x, y: (np.asarray(y) ** 2 - np.asarray(x) ** 2) / (lam * r2(x, y) ** 2),
            lambda x, y: -2 * np.asarray(x) * y / (lam * r2(x, y) ** 2),
            f"helicoid:{lam:g}",
        )


class CausalType(enum.Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"


def graph_minimal_residual(f: GraphFunction, x, y):
    p, q = f.p(x, y), f.q(x, y)
    return (1 + q**2) * f.fxx(x, y) - 2 * p * q * f.fxy(x, y) + (1 + p**2) * f.fyy(x, y)


def graph_lorentz_residual(f: GraphFunction, x, y):
    p, q = f.p(x, y), f.q(x, y)
    return (1 - q**2) * f.fxx(x, y) + 2 * p * q * f.fxy(x, y) + (1 - p**2) * f.fyy(x, y)


def doubly_zero_residuals(f: GraphFunction, x, y):
    """Half-difference and half-sum of the two graph residuals.

    The difference is ``q^2 f_xx - 2 p q f_xy + p^2 f_yy`` and the sum is the
    Laplacian of ``f``.
    """
    riem = graph_minimal_residual(f, x, y)
    lor = graph_lorentz_residual(f, x, y)
    return 0.5 * (riem - lor), 0.5 * (riem + lor)


def causal_type(f: GraphFunction, x: float, y: float, band: float = TOLERANCES["lightlike_band"]) -> CausalType:
    gap = 1.0 - (f.p(x, y) ** 2 + f.q(x, y) ** 2)
    if gap > band:
        return CausalType.SPACELIKE
    if gap < -band:
        return CausalType.TIMELIKE
    return CausalType.LIGHTLIKE


def ruling_field(f: GraphFunction, x: float, y: float) -> tuple[FrameVector, FrameVector]:
    """Horizontal tangent field ``X = -q e1 + p e2`` and the defect ``X x D_X X``.

    The defect vanishes exactly where ``X`` is a pregeodesic direction.
    """
    p, q = float(f.p(x, y)), float(f.q(x, y))
    fxx, fxy, fyy = float(f.fxx(x, y)), float(f.fxy(x, y)), float(f.fyy(x, y))
    base = ModelPoint(float(x), float(y), float(f.f(x, y)))
    X = np.array([-q, p, 0.0])
    DXX = np.array([q * (fxy - 0.5) - p * fyy, p * (fxy + 0.5) - q * fxx, 0.0])
    defect = cross_components(X, DXX, MetricKind.RIEMANNIAN)
    return FrameVector.from_array(base, X), FrameVector.from_array(base, defect)


def ruling_obstruction(f: GraphFunction, x, y):
    p, q = f.p(x, y), f.q(x, y)
    return q**2 * f.fxx(x, y) - 2 * p * q * f.fxy(x, y) + p**2 * f.fyy(x, y)


@dataclass(frozen=True)
class ResidualRow:
    x: float
    y: float
    riem: float
    lorentz: float
    diff: float
    laplacian: float
    causal: CausalType


def residual_scan(f: GraphFunction, xs: Sequence[float], ys: Sequence[float]) -> list[ResidualRow]:
    """Row-major scan (y outer, x inner) of both residuals over a grid."""
    rows = []
    for y in ys:
        for x in xs:
            riem = float(graph_minimal_residual(f, x, y))
            lor = float(graph_lorentz_residual(f, x, y))
            rows.append(ResidualRow(float(x), float(y), riem, lor, 0.5 * (riem - lor),
                                    0.5 * (riem + lor), causal_type(f, x, y)))
    return rows


def write_residual_csv(rows: Sequence[ResidualRow], fh: TextIO, comment: str | None = None) -> None:
    if comment is not None:
        fh.write(f"# {comment}\n")
    fh.write(RESIDUAL_CSV_HEADER + "\n")
    for r in rows:
        nums = (r.x, r.y, r.riem, r.lorentz, r.diff, r.laplacian)
        fh.write(",".join("" if v is None else f"{v:.17g}" for v in nums) + f",{r.causal.value}\n")


def residual_csv(rows: Sequence[ResidualRow], comment: str | None = None) -> str:
    buf = io.StringIO()
    write_residual_csv(rows, buf, comment)
    return buf.getvalue()


# --- vertical cylinders ----------------------------------------------------


@dataclass(frozen=True)
class PlanarCurve:
    x: Callable
    y: Callable
    dx: Callable
    dy: Callable
    ddx: Callable
    ddy: Callable

    @classmethod
    def circle(cls, radius: float = 1.0) -> "PlanarCurve":
        r = radius
        return cls(lambda s: r * np.cos(s), lambda s: r * np.sin(s),
                   lambda s: -r * np.sin(s), lambda s: r * np.cos(s),
                   lambda s: -r * np.cos(s), lambda s: -r * np.sin(s))

    @classmethod
    def x_axis(cls) -> "PlanarCurve":
        zero = lambda s: 0.0 * s  # noqa: E731
        return cls(lambda s: s, zero, lambda s: 1.0 + 0.0 * s, zero, zero, zero)

    def cylinder(self) -> Immersion:
        """Vertical cylinder ``(s, t) -> (x(s), y(s), t)``."""
        return Immersion(
            lambda s, t: np.array([self.x(s), self.y(s), t], dtype=float),
            lambda s, t: (np.array([self.dx(s), self.dy(s), 0.0]), np.array([0.0, 0.0, 1.0])),
            lambda s, t: (np.array([self.ddx(s), self.ddy(s), 0.0]), np.zeros(3), np.zeros(3)),
        )


def cylinder_mean_curvature(curve: PlanarCurve, s: float) -> float:
    dx, dy = float(curve.dx(s)), float(curve.dy(s))
    speed2 = dx**2 + dy**2
    if speed2 < TOLERANCES["degenerate"]:
        raise DegenerateParametrization(f"singular curve point at s={s}")
    return (float(curve.ddx(s)) * dy - dx * float(curve.ddy(s))) / speed2**1.5
