"""Surfaces ruled by geodesics: closed forms, minimality tests and the catalog.

A ruled surface is parametrized so that the t-curves are the ruling
geodesics.  With profile functions h, alpha, g the frame components of
X_s and X_t, and of the covariant derivatives of X_s along X_t and along X_s,
are known in closed form; the minimality functional

    Htilde = <X_t, X_t> <X_{s;s}, X_s x X_t> - 2 <X_s, X_t> <X_{s;t}, X_s x X_t>

vanishes identically exactly for minimal surfaces.  Surfaces ruled by
horizontal geodesics use the profile pair (alpha, beta) instead.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence, TextIO

import numpy as np
from numpy.polynomial import Polynomial

from .geodesics import geodesic_endpoints, rk4_spans
from .heis_core import ModelPoint, coord_components
from .surface_ops import Immersion
from .tolerances import TOLERANCES


@dataclass(frozen=True)
class Smooth:
    """Scalar function of one variable with its first two derivatives."""

    f: Callable
    df: Callable
    ddf: Callable

    def __call__(self, s):
        return self.f(s)

    @classmethod
    def poly(cls, coeffs: Sequence[float]) -> "Smooth":
        """Polynomial with ascending coefficients ``c0 + c1 s + c2 s^2 + ...``."""
        p = Polynomial(np.asarray(coeffs, dtype=float))
        return cls(p, p.deriv(1), p.deriv(2))

    @classmethod
    def taylor(cls, value: float, d1: float = 0.0, d2: float = 0.0) -> "Smooth":
        """Quadratic with the given value and derivatives at 0."""
        return cls.poly([value, d1, d2 / 2])

    @classmethod
    def const(cls, c: float) -> "Smooth":
        return cls.poly([c])

    @classmethod
    def shifted(cls, fn: "Smooth", s0: float) -> "Smooth":
        return cls(lambda s: fn.f(s + s0), lambda s: fn.df(s + s0), lambda s: fn.ddf(s + s0))


@dataclass(frozen=True)
class RuledProfile:
    h: Smooth
    alpha: Smooth
    g: Smooth

    @classmethod
    def from_jets(cls, h0=0.0, dh0=0.0, ddh0=0.0, dalpha0=0.0, ddalpha0=0.0, g0=0.0, dg0=0.0, alpha0=0.0):
        return cls(Smooth.taylor(h0, dh0, ddh0), Smooth.taylor(alpha0, dalpha0, ddalpha0), Smooth.taylor(g0, dg0))

    def shifted(self, s0: float) -> "RuledProfile":
        return RuledProfile(Smooth.shifted(self.h, s0), Smooth.shifted(self.alpha, s0), Smooth.shifted(self.g, s0))


@dataclass(frozen=True)
class HorizontalRuledProfile:
    alpha: Smooth
    beta: Smooth


# --- closed forms ------------------------------------------------------------


def _jets(profile: RuledProfile, s):
    return (profile.h(s), profile.h.df(s), profile.h.ddf(s),
            profile.alpha(s), profile.alpha.df(s), profile.alpha.ddf(s),
            profile.g(s), profile.g.df(s))


def ruled_tangents(profile: RuledProfile, s, t) -> tuple[np.ndarray, np.ndarray]:
    """Frame components of X_s and X_t; the last axis holds (e1, e2, e3)."""
    h, dh, _, a, da, _, g, _ = _jets(profile, s)
    t = np.asarray(t, dtype=float)
    c, sn = np.cos(t - a), np.sin(t - a)
    xs1 = np.sin(a) + dh * sn + dh * np.sin(a) - h * da * c + h * da * np.cos(a)
    xs2 = np.cos(a) - dh * c + dh * np.cos(a) - h * da * sn - h * da * np.sin(a)
    xs3 = (g - h * np.sin(t) + t * h * dh - h * dh * np.sin(t)
           + h**2 * da - h**2 * da * np.cos(t))
    xt1 = h * c
    xt2 = h * sn
    xt3 = np.ones_like(xt1)
    return np.stack(np.broadcast_arrays(xs1, xs2, xs3), -1), np.stack(np.broadcast_arrays(xt1, xt2, xt3), -1)


def xss1_uncorrected(profile: RuledProfile, s, t):
    """First component of X_{s;s} with the multiplier missing its h' and h alpha' factors.

    Kept only to show that the finite-difference oracle rejects it.  :func:`ruled_second_derivatives` uses the corrected factor.
    """
    h, dh, ddh, a, da, dda, g, _ = _jets(profile, s)
    t = np.asarray(t, dtype=float)
    c, sn = np.cos(t - a), np.sin(t - a)
    k = -g + h * (np.sin(t) + dh * (np.sin(t) - t) - 2 * h * da * np.sin(t / 2) ** 2)
    return (da * np.cos(a) - 2 * dh * da * c + 2 * dh * da * np.cos(a) - h * da**2 * sn - h * da**2 * np.sin(a)
            + (-np.cos(a) + c - dh * np.cos(a) + h * sn + da * np.sin(a)) * k
            + ddh * sn + ddh * np.sin(a) - h * dda * c + h * dda * np.cos(a))


def ruled_second_derivatives(profile: RuledProfile, s, t) -> tuple[np.ndarray, np.ndarray]:
    """Frame components of X_{s;t} (along X_t) and X_{s;s} (along X_s).

    X_{t;t} vanishes because the rulings are geodesics.
    """
    h, dh, ddh, a, da, dda, g, dg = _jets(profile, s)
    t = np.asarray(t, dtype=float)
    c, sn = np.cos(t - a), np.sin(t - a)
    half2 = np.sin(t / 2) ** 2
    xst1 = 0.5 * (np.cos(a) + dh * c + dh * np.cos(a) + h * da * sn - h * da * np.sin(a)
                  + h * sn * (g + h * (-np.sin(t) + dh * (t - np.sin(t)) + 2 * h * da * half2)))
    xst2 = 0.5 * (-np.sin(a) + dh * sn - dh * np.sin(a) - h * da * c - h * da * np.cos(a)
                  + h * c * (-g + h * (np.sin(t) - dh * (t - np.sin(t)) - 2 * h * da * half2)))
    xst3 = 0.5 * h * (-np.cos(t) - dh * (np.cos(t) - 1) + h * da * np.sin(t))

    # common factor: minus the e3 component of X_s
    k = -g + h * (np.sin(t) + dh * (np.sin(t) - t) - 2 * h * da * half2)
    xss1 = (da * np.cos(a) - 2 * dh * da * c + 2 * dh * da * np.cos(a) - h * da**2 * sn - h * da**2 * np.sin(a)
            + (-np.cos(a) + dh * c - dh * np.cos(a) + h * da * sn + h * da * np.sin(a)) * k
            + ddh * sn + ddh * np.sin(a) - h * dda * c + h * dda * np.cos(a))
    xss2 = (-da * np.sin(a) - 2 * dh * da * sn - 2 * dh * da * np.sin(a) + h * da**2 * c - h * da**2 * np.cos(a)
            + (np.sin(a) + dh * (sn + np.sin(a)) + 2 * h * da * np.sin(t / 2) * np.sin(t / 2 - a)) * k
            - ddh * c + ddh * np.cos(a) - h * dda * sn - h * dda * np.sin(a))
    xss3 = (dg + dh**2 * (t - np.sin(t)) - dh * (np.sin(t) - 4 * h * da * half2)
            + h * (ddh * (t - np.sin(t)) - h * dda * (np.cos(t) - 1)))
    xst = np.stack(np.broadcast_arrays(xst1, xst2, xst3), -1)
    xss = np.stack(np.broadcast_arrays(xss1, xss2, xss3), -1)
    return xst, xss


def htilde(profile: RuledProfile, s, t):
    xs, xt = ruled_tangents(profile, s, t)
    xst, xss = ruled_second_derivatives(profile, s, t)
    n = np.cross(xs, xt)
    return (np.sum(xt * xt, -1) * np.sum(xss * n, -1)
            - 2 * np.sum(xs * xt, -1) * np.sum(xst * n, -1))


# --- expansion of Htilde(0, t) -----------------------------------------------

BASIS_NAMES = ("A0", "A1", "A2", "A3", "B0", "B1", "B2", "B3", "B4", "B5",
               "C0", "C1", "C2", "C3", "C4", "C5")


def expansion_basis(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    c1, c2, c3 = np.cos(t), np.cos(2 * t), np.cos(3 * t)
    s1, s2, s3 = np.sin(t), np.sin(2 * t), np.sin(3 * t)
    one = np.ones_like(t)
    return np.stack([one, t, t**2, t**3, c1, t * c1, t**2 * c1, c2, t * c2, c3,
                     s1, t * s1, t**2 * s1, s2, t * s2, s3], axis=-1)


@dataclass(frozen=True)
class LeadingCoefficients:
    A3: float
    B1: float
    B5: float
    C5: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.A3, self.B1, self.B5, self.C5)


def leading_coefficients(h0, dh0, ddh0, dalpha0, ddalpha0, g0, dg0) -> LeadingCoefficients:
    """Closed-form t^3, t cos t, cos 3t and sin 3t coefficients of Htilde(0, t) when alpha(0) = 0.

    ``ddalpha0`` and ``dg0`` do not enter these four coefficients.
    """
    h, dh, ddh, da, g = h0, dh0, ddh0, dalpha0, g0
    A3 = h**5 * dh**3
    B1 = (-3 * h * dh**2 - h**3 * dh**2 - 3 * h * dh**3 - h**3 * dh**3 - 2 * h**3 * g * dh * da
          - 6 * g * h**5 * dh * da - 3 * h**3 * dh * da**2 - 9 * dh * h**5 * da**2 - 6 * h**7 * dh * da**2
          - h**4 * ddh - h**2 * ddh)
    B5 = 0.25 * (3 * h**4 * da + 3 * h**6 * da + 6 * h**4 * dh * da + 6 * h**6 * dh * da
                 + 3 * h**4 * dh**2 * da + 3 * dh**2 * da * h**6 - h**6 * da**3 - h**8 * da**3)
    C5 = 0.25 * (h**3 + h**5 + 3 * h**3 * dh + 3 * h**5 * dh + 3 * h**3 * dh**2 + 3 * h**5 * dh**2
                 + h**3 * dh**3 + h**5 * dh**3 - 3 * h**5 * da**2 - 3 * h**7 * da**2
                 - 3 * h**5 * dh * da**2 - 3 * dh * h**7 * da**2)
    return LeadingCoefficients(A3, B1, B5, C5)


@dataclass(frozen=True)
class ExpansionFit:
    values: np.ndarray
    residual: float
    condition: float

    def __getitem__(self, name: str) -> float:
        return float(self.values[BASIS_NAMES.index(name)])

    def leading(self) -> LeadingCoefficients:
        return LeadingCoefficients(self["A3"], self["B1"], self["B5"], self["C5"])

    def as_dict(self) -> dict[str, float]:
        return {k: float(v) for k, v in zip(BASIS_NAMES, self.values)}


def extract_expansion_coefficients(profile: RuledProfile, nodes: int = 64, max_condition: float = 1e12) -> ExpansionFit:
    """Least-squares fit of Htilde(0, t) on ``nodes`` uniform points of [0, 2 pi)."""
    if abs(float(profile.alpha(0.0))) > 1e-12:
        raise ValueError("alpha(0) must be 0; rotate the profile first")
    if nodes < len(BASIS_NAMES):
        raise ValueError(f"need at least {len(BASIS_NAMES)} nodes, got {nodes}")
    t = 2 * np.pi * np.arange(nodes) / nodes
    basis = expansion_basis(t)
    # equilibrate columns; t^3 reaches ~250 on [0, 2 pi)
    scale = np.linalg.norm(basis, axis=0)
    scaled = basis / scale
    cond = float(np.linalg.cond(scaled))
    if not cond < max_condition:
        raise np.linalg.LinAlgError(f"ill-conditioned expansion basis (cond={cond:.3g})")
    y = htilde(profile, 0.0, t)
    sol, *_ = np.linalg.lstsq(scaled, y, rcond=None)
    coeffs = sol / scale
    resid = float(np.max(np.abs(basis @ coeffs - y)))
    return ExpansionFit(coeffs, resid, cond)


# --- horizontally ruled surfaces ---------------------------------------------


def horizontal_ruled_residual(profile: HorizontalRuledProfile, s, t):
    a1, a2 = profile.alpha.df(s), profile.alpha.ddf(s)
    b, b1 = profile.beta(s), profile.beta.df(s)
    t = np.asarray(t, dtype=float)
    return (b1 + t * (a1 * b1 * np.cos(b) - a2 * np.sin(b))
            + 0.5 * t**2 * (a1 * b1 * np.sin(b) + a2 * np.cos(b)))


def horizontal_tangents(profile: HorizontalRuledProfile, s, t) -> tuple[np.ndarray, np.ndarray]:
    """Frame components of Y_s and Y_t."""
    a, da, b = profile.alpha(s), profile.alpha.df(s), profile.beta(s)
    t = np.asarray(t, dtype=float)
    ys = np.stack(np.broadcast_arrays(
        -np.cos(b) * np.sin(a) - t * da * np.sin(a),
        np.cos(b) * np.cos(a) + t * da * np.cos(a),
        np.sin(b) - t * np.cos(b) - 0.5 * t**2 * da), -1)
    yt = np.stack(np.broadcast_arrays(np.cos(a), np.sin(a), 0.0 * t), -1)
    return ys, yt


def horizontal_base_curve(profile: HorizontalRuledProfile, base: ModelPoint, s, step: float = TOLERANCES["geodesic_step"]):
    """Points Y(s, 0), integrating the coordinate form of Y_s(s, 0) from ``base`` at s = 0."""
    s = np.atleast_1d(np.asarray(s, dtype=float))

    def rhs(sig, y):
        a, b = profile.alpha(sig), profile.beta(sig)
        frame = np.stack([-np.cos(b) * np.sin(a), np.cos(b) * np.cos(a), np.sin(b)], -1)
        return coord_components(y, frame)

    y0 = np.tile(base.as_array(), (len(s), 1))
    return rk4_spans(rhs, y0, s, step)


def horizontal_ruled_surface(profile: HorizontalRuledProfile, base: ModelPoint,
                             step: float = TOLERANCES["geodesic_step"]) -> Immersion:
    """Immersion whose rulings are the horizontal straight-line geodesics through the base curve."""

    def ruling_direction(s, p0):
        a = profile.alpha(s)
        return coord_components(p0, np.stack([np.cos(a), np.sin(a), 0.0 * a], -1))

    def surface(s, t):
        s_arr, t_arr = np.broadcast_arrays(np.asarray(s, float), np.asarray(t, float))
        p0 = horizontal_base_curve(profile, base, s_arr.ravel(), step)
        pts = p0 + t_arr.ravel()[:, None] * ruling_direction(s_arr.ravel(), p0)
        return pts.reshape(s_arr.shape + (3,))

    def partials(s, t):
        p = surface(s, t)
        p0 = horizontal_base_curve(profile, base, s, step)[0]
        ys, _ = horizontal_tangents(profile, s, t)
        return coord_components(p, ys), ruling_direction(s, p0)

    return Immersion(surface, partials)


class PlaneCase:
    """Marker returned by :func:`helicoid_lambda` when the helicoid degenerates to z = 0."""

    def __repr__(self):
        return "PlaneCase()"

    def __eq__(self, other):
        return isinstance(other, PlaneCase)

    def __hash__(self):
        return hash(PlaneCase)


def helicoid_lambda(a: float, b: float, tol: float = TOLERANCES["plane_case"]):
    if a == 0:
        raise ValueError("a = 0 belongs to the hyperbolic paraboloid / vertical plane branch")
    denom = 1 + math.cos(2 * b) + 4 * a * math.sin(b)
    if abs(denom) <= tol:
        return PlaneCase()
    return 4 * a**2 / denom


def helicoid_family_surface(a: float, b: float) -> Immersion:
    """Horizontally ruled surface with alpha = a s, beta = b, based at (cos b / a, 0, 0)."""
    prof = HorizontalRuledProfile(Smooth.poly([0.0, a]), Smooth.const(b))
    return horizontal_ruled_surface(prof, ModelPoint(math.cos(b) / a, 0.0, 0.0))


def paraboloid_family_surface(b: float) -> Immersion:
    """Horizontally ruled surface with alpha = 0, beta = b, based at (-tan b, 0, 0)."""
    prof = HorizontalRuledProfile(Smooth.const(0.0), Smooth.const(b))
    return horizontal_ruled_surface(prof, ModelPoint(-math.tan(b), 0.0, 0.0))


# --- catalog -----------------------------------------------------------------


class CatalogTag(enum.Enum):
    HORIZONTAL_PLANE = "plane"
    VERTICAL_PLANE = "vplane"
    HELICOID = "helicoid"
    HYPERBOLIC_PARABOLOID = "hpb"


@dataclass(frozen=True)
class CatalogSurface:
    tag: CatalogTag
    parametrization: Immersion
    implicit: Callable
    lam: float | None = None

    @property
    def name(self) -> str:
        return f"helicoid:{self.lam:g}" if self.tag is CatalogTag.HELICOID else self.tag.value


def _affine(map_, xs, xt, xss=None, xst=None, xtt=None):
    z = np.zeros(3)
    second = (lambda s, t: (xss(s, t), xst(s, t), xtt(s, t))) if xss else (lambda s, t: (z, z, z))
    return Immersion(map_, lambda s, t: (xs(s, t), xt(s, t)), second)


def catalog_surface(tag: CatalogTag | str, lam: float | None = None) -> CatalogSurface:
    """One of the four classified surfaces.

    The helicoid is parametrized as ``(t cos s, t sin s, s / lam)`` and its
    implicit function is ``y cos(lam z) - x sin(lam z)``, which is bounded and
    vanishes exactly where ``tan(lam z) = y / x``.
    """
    tag = CatalogTag(tag)
    if tag is CatalogTag.HORIZONTAL_PLANE:
        imm = _affine(lambda s, t: np.array([s, t, 0.0]),
                      lambda s, t: np.array([1.0, 0.0, 0.0]), lambda s, t: np.array([0.0, 1.0, 0.0]))
        return CatalogSurface(tag, imm, lambda x, y, z: z)
    if tag is CatalogTag.VERTICAL_PLANE:
        imm = _affine(lambda s, t: np.array([s, 0.0, t]),
                      lambda s, t: np.array([1.0, 0.0, 0.0]), lambda s, t: np.array([0.0, 0.0, 1.0]))
        return CatalogSurface(tag, imm, lambda x, y, z: y)
    if tag is CatalogTag.HYPERBOLIC_PARABOLOID:
        e3 = np.array([0.0, 0.0, 1.0])
        imm = _affine(lambda s, t: np.array([s, t, -s * t / 2]),
                      lambda s, t: np.array([1.0, 0.0, -t / 2]), lambda s, t: np.array([0.0, 1.0, -s / 2]),
                      lambda s, t: 0 * e3, lambda s, t: -0.5 * e3, lambda s, t: 0 * e3)
        return CatalogSurface(tag, imm, lambda x, y, z: z + x * y / 2)
    if lam is None or lam == 0:
        raise ValueError("helicoid needs a nonzero lambda")
    lam = float(lam)
    imm = _affine(
        lambda s, t: np.array([t * np.cos(s), t * np.sin(s), s / lam]),
        lambda s, t: np.array([-t * np.sin(s), t * np.cos(s), 1 / lam]),
        lambda s, t: np.array([np.cos(s), np.sin(s), 0.0]),
        lambda s, t: np.array([-t * np.cos(s), -t * np.sin(s), 0.0]),
        lambda s, t: np.array([-np.sin(s), np.cos(s), 0.0]),
        lambda s, t: np.zeros(3),
    )
    return CatalogSurface(tag, imm, lambda x, y, z: y * np.cos(lam * z) - x * np.sin(lam * z), lam)


def parse_surface(selector: str) -> CatalogSurface:
    """``plane``, ``vplane``, ``hpb`` or ``helicoid:<lambda>``."""
    name, _, arg = selector.partition(":")
    if name == "helicoid":
        if not arg:
            raise ValueError("helicoid selector needs a lambda, e.g. helicoid:2")
        return catalog_surface(CatalogTag.HELICOID, float(arg))
    if arg:
        raise ValueError(f"surface {name!r} takes no parameter")
    return catalog_surface(CatalogTag(name))


# --- helicoid limit ----------------------------------------------------------


class OutsideChart(ValueError):
    pass


def helicoid_pullback_height(lam: float, x, y, tol: float = TOLERANCES["bisection"]):
    """Height of the recentred helicoid over (x, y) on the principal branch.

    The helicoid ``y = x tan(lam z)`` is pulled back by the isometry moving
    ``(sqrt(2/lam), 0, 0)`` to the origin; the root of
    ``y - (x + r) tan(lam z + r lam y / 2)`` is bracketed by bisection.
    """
    if not lam > 0:
        raise ValueError("lambda must be positive")
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    r = math.sqrt(2 / lam)
    if np.any(x + r <= 0):
        raise OutsideChart(f"no principal-branch root: x + r <= 0 for r = {r:g}")
    shift = r * lam * y / 2

    def g(z):
        u = lam * z + shift
        return y * np.cos(u) - (x + r) * np.sin(u)

    lo = (-math.pi / 2 - shift) / lam
    hi = (math.pi / 2 - shift) / lam
    glo = g(lo)
    for _ in range(400):
        if np.all(hi - lo <= tol):
            break
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        left = np.sign(gm) == np.sign(glo)
        lo = np.where(left, mid, lo)
        glo = np.where(left, gm, glo)
        hi = np.where(left, hi, mid)
    z = 0.5 * (lo + hi)
    return float(z) if z.ndim == 0 else z


def limit_grid(domain: Sequence[float], n: int) -> tuple[np.ndarray, np.ndarray]:
    x0, x1, y0, y1 = domain
    return np.meshgrid(np.linspace(x0, x1, n), np.linspace(y0, y1, n))


def limit_error(lam: float, domain: Sequence[float] = (-1.0, 1.0, -1.0, 1.0), n: int = 21) -> float:
    """Sup-norm distance on a grid between the recentred helicoid and ``z = -x y / 2``."""
    X, Y = limit_grid(domain, n)
    Z = helicoid_pullback_height(lam, X, Y)
    return float(np.max(np.abs(Z + X * Y / 2)))


def convergence_table(lambdas: Sequence[float], domain=(-1.0, 1.0, -1.0, 1.0), n: int = 21):
    """Rows ``(lambda, sup_error, ratio_to_prev)``; the first ratio is None."""
    rows = []
    prev = None
    for lam in lambdas:
        err = limit_error(lam, domain, n)
        rows.append((lam, err, None if prev is None else err / prev))
        prev = err
    return rows


def write_convergence_csv(rows, fh: TextIO, comment: str | None = None) -> None:
    if comment is not None:
        fh.write(f"# {comment}\n")
    fh.write("lambda,sup_error,ratio_to_prev\n")
    for lam, err, ratio in rows:
        fh.write(f"{lam:.17g},{err:.17g},{'' if ratio is None else format(ratio, '.17g')}\n")


# --- numerically constructed ruled surfaces ---------------------------------


def ruled_surface_points(profile: RuledProfile, s, t, step: float = TOLERANCES["geodesic_step"]) -> np.ndarray:
    """Points X(s, t) built by integration, independent of the closed forms.

    The base curve integrates X_s(s, 0) from the origin; each ruling is the
    geodesic with initial velocity X_t(s, 0).
    """
    s, t = np.broadcast_arrays(np.atleast_1d(np.asarray(s, float)), np.atleast_1d(np.asarray(t, float)))

    def rhs(sig, y):
        a = profile.alpha(sig)
        frame = np.stack([np.sin(a), np.cos(a), profile.g(sig) + 0.0 * sig], -1)
        return coord_components(y, frame)

    base = rk4_spans(rhs, np.zeros((s.size, 3)), s.ravel(), step)
    h, a = profile.h(s.ravel()), profile.alpha(s.ravel())
    vel = coord_components(base, np.stack([h * np.cos(a), -h * np.sin(a), np.ones_like(a)], -1))
    return geodesic_endpoints(base, vel, t.ravel(), step).reshape(s.shape + (3,))


# --- mesh export -------------------------------------------------------------


def grid_mesh(imm: Immersion, s_values: Sequence[float], t_values: Sequence[float]):
    """Vertices (row-major over s, then t) and triangles (0-based) of a grid mesh."""
    verts = np.array([imm.point(s, t) for s in s_values for t in t_values], dtype=float)
    nt = len(t_values)
    faces = []
    for i in range(len(s_values) - 1):
        for j in range(nt - 1):
            k = i * nt + j
            faces.append((k, k + nt, k + nt + 1))
            faces.append((k, k + nt + 1, k + 1))
    return verts, np.array(faces, dtype=int).reshape(-1, 3)


def write_mesh(verts, faces, fh: TextIO, comment: str | None = None) -> None:
    """Plaintext ``v x y z`` / ``f i j k`` records, 1-based faces, 9 significant digits."""
    if comment is not None:
        fh.write(f"# {comment}\n")
    for v in verts:
        fh.write("v " + " ".join(f"{c:.9g}" for c in v) + "\n")
    for f in faces:
        fh.write("f " + " ".join(str(int(i) + 1) for i in f) + "\n")


def read_mesh_vertices(lines) -> np.ndarray:
    return np.array([[float(c) for c in ln.split()[1:4]] for ln in lines if ln.startswith("v ")])
