import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilgeom import surface_ops as so
from nilgeom.heis_core import IsometryElement, MetricKind

R, L = MetricKind.RIEMANNIAN, MetricKind.LORENTZIAN
X_SQUARED = so.GraphFunction.polynomial([[0, 0], [0, 0], [1, 0]], "x^2")
HPB = so.GraphFunction.hyperbolic_paraboloid()


def test_plane_forms_at_origin():
    for kind in (R, L):
        ff = so.fundamental_forms(so.GraphFunction.zero().immersion(), 0.0, 0.0, kind)
        assert (ff.E, ff.F, ff.G) == pytest.approx((1, 0, 1))
        assert ff.l == pytest.approx(0, abs=1e-15)
        assert ff.n == pytest.approx(0, abs=1e-15)


def test_paraboloid_lorentz_forms_at_origin():
    ff = so.fundamental_forms(HPB.immersion(), 0.0, 0.0, L)
    assert (ff.E, ff.F, ff.G) == pytest.approx((1, 0, 1))


def test_graph_first_form_matches_p_q():
    # E = 1 + kappa p^2, F = kappa p q, G = 1 + kappa q^2 with kappa = +1 / -1
    f = so.GraphFunction.polynomial([[0.1, 0.3, -0.2], [0.4, 0.5, 0.0], [-0.3, 0.0, 0.0]])
    x, y = 0.3, -0.4
    p, q = f.p(x, y), f.q(x, y)
    for kind, kappa in ((R, 1), (L, -1)):
        ff = so.fundamental_forms(f.immersion(), x, y, kind)
        assert (ff.E, ff.F, ff.G) == pytest.approx((1 + kappa * p * p, kappa * p * q, 1 + kappa * q * q))


@pytest.mark.parametrize("kind", [R, L])
def test_horizontal_plane_is_minimal(kind):
    imm = so.GraphFunction.zero().immersion()
    for s, t in [(0, 0), (0.5, -0.7), (-1, 1)]:
        assert abs(so.mean_curvature(imm, s, t, kind)) < 1e-10


@pytest.mark.parametrize("kind", [R, L])
def test_paraboloid_is_minimal_with_numeric_partials(kind):
    # plain map, every derivative by finite differences
    imm = so.Immersion(lambda s, t: np.array([s, t, -s * t / 2]))
    for s in np.linspace(-0.8, 0.8, 5):
        for t in np.linspace(-1, 1, 5):
            assert abs(so.mean_curvature(imm, s, t, kind)) < 1e-6
    assert abs(so.mean_curvature(HPB.immersion(), 0.3, 0.8, kind)) < 1e-12


@pytest.mark.parametrize("kind", [R, L])
@pytest.mark.parametrize("radius", [1.0, 2.0])
def test_round_cylinder(kind, radius):
    curve = so.PlanarCurve.circle(radius)
    for s in (0.0, 1.0, 2.5):
        H = so.mean_curvature(curve.cylinder(), s, 0.4, kind)
        assert H == pytest.approx(0.5 * so.cylinder_mean_curvature(curve, s), abs=1e-10)
    assert abs(H) == pytest.approx(0.5 / radius)


def test_cylinder_curvature_examples():
    assert so.cylinder_mean_curvature(so.PlanarCurve.x_axis(), 0.3) == 0
    for s in (0.0, 1.0, 4.0):
        assert so.cylinder_mean_curvature(so.PlanarCurve.circle(), s) == pytest.approx(-1)
        assert so.cylinder_mean_curvature(so.PlanarCurve.circle(2.0), s) == pytest.approx(-0.5)


def test_cylinder_singular_point():
    stuck = so.PlanarCurve(*(lambda s: 0.0 * s,) * 6)
    with pytest.raises(so.DegenerateParametrization):
        so.cylinder_mean_curvature(stuck, 0.0)


def test_paraboloid_is_lightlike_on_x_equals_one():
    # q = -x there, so p^2 + q^2 = 1
    with pytest.raises(so.LightlikePoint):
        so.mean_curvature(HPB.immersion(), 1.0, 0.3, L)
    assert so.causal_type(HPB, -1.0, 0.7) is so.CausalType.LIGHTLIKE


def test_degenerate_parametrization():
    imm = so.Immersion(lambda s, t: np.array([s, 0.0, 0.0]))
    with pytest.raises(so.DegenerateParametrization):
        so.mean_curvature(imm, 0.0, 0.0, R)


def test_lightlike_point():
    f = so.GraphFunction.polynomial([[0], [1]], "x")
    with pytest.raises(so.LightlikePoint):
        so.mean_curvature(f.immersion(), 0.0, 0.0, L)
    assert so.mean_curvature(f.immersion(), 0.0, 0.0, R) == pytest.approx(0)


coeff = st.floats(-1, 1, allow_nan=False)
polys = st.lists(coeff, min_size=9, max_size=9).map(lambda c: so.GraphFunction.polynomial(np.reshape(c, (3, 3))))
points = st.tuples(st.floats(-0.5, 0.5), st.floats(-0.5, 0.5))


@settings(max_examples=40, deadline=None)
@given(polys, points)
def test_mean_curvature_matches_graph_residual(f, pt):
    # independent route: the two graph equations, divided by the area factor
    x, y = pt
    p, q = f.p(x, y), f.q(x, y)
    H = so.mean_curvature(f.immersion(), x, y, R)
    assert H == pytest.approx(0.5 * so.graph_minimal_residual(f, x, y) / (1 + p * p + q * q) ** 1.5, abs=1e-10)
    w = 1 - p * p - q * q
    if w > 0.05:
        HL = so.mean_curvature(f.immersion(), x, y, L)
        assert HL == pytest.approx(0.5 * so.graph_lorentz_residual(f, x, y) / w**1.5, abs=1e-9)


@settings(max_examples=25, deadline=None)
@given(polys, points, st.builds(IsometryElement, st.floats(0, 6.3), coeff, coeff, coeff))
def test_mean_curvature_invariant_under_isometries(f, pt, iso):
    imm = f.immersion()
    moved = imm.transformed(iso)
    assert np.allclose(moved.point(*pt), iso.apply_array(imm.point(*pt)))
    H = so.mean_curvature(imm, *pt, R)
    assert so.mean_curvature(moved, *pt, R) == pytest.approx(H, abs=1e-9)


def test_numeric_and_analytic_derivatives_agree():
    f = so.GraphFunction.polynomial([[0.1, 0.3, -0.2], [0.4, 0.5, 0.0], [-0.3, 0.0, 0.0]])
    plain = so.Immersion(f.immersion().map)
    for kind in (R, L):
        assert so.mean_curvature(plain, 0.2, 0.1, kind) == pytest.approx(
            so.mean_curvature(f.immersion(), 0.2, 0.1, kind), abs=1e-6)


def test_graph_residual_examples():
    zero = so.GraphFunction.zero()
    X, Y = np.meshgrid(np.linspace(-1, 1, 7), np.linspace(-1, 1, 7))
    for fn in (so.graph_minimal_residual, so.graph_lorentz_residual):
        assert np.all(fn(zero, X, Y) == 0)
        assert np.all(fn(HPB, X, Y) == 0)
        assert fn(X_SQUARED, 0.0, 0.0) == 2


def test_doubly_zero_examples():
    X, Y = np.meshgrid(np.linspace(-1, 1, 7), np.linspace(-1, 1, 7))
    diff, lap = so.doubly_zero_residuals(HPB, X, Y)
    assert np.all(diff == 0) and np.all(lap == 0)
    X, Y = np.meshgrid(np.linspace(0.5, 2, 9), np.linspace(-1, 1, 9))
    diff, lap = so.doubly_zero_residuals(so.GraphFunction.helicoid(2.0), X, Y)
    assert np.max(np.abs(diff)) < 1e-10 and np.max(np.abs(lap)) < 1e-10
    assert so.doubly_zero_residuals(X_SQUARED, 0.0, 0.0) == (0, 2)
    assert so.ruling_obstruction(X_SQUARED, 0.0, 0.0) == 0


def test_helicoid_graph_partials():
    f = so.GraphFunction.helicoid(2.0)
    x, y, h = 1.2, -0.4, 1e-5
    assert f.fx(x, y) == pytest.approx((f.f(x + h, y) - f.f(x - h, y)) / (2 * h), abs=1e-9)
    assert f.fxy(x, y) == pytest.approx((f.fx(x, y + h) - f.fx(x, y - h)) / (2 * h), abs=1e-9)
    assert math.tan(2 * f.f(x, y)) == pytest.approx(y / x)


def test_causal_types():
    assert so.causal_type(HPB, 0, 0) is so.CausalType.SPACELIKE
    assert so.causal_type(so.GraphFunction.polynomial([[0], [2]]), 0, 0) is so.CausalType.TIMELIKE
    assert so.causal_type(so.GraphFunction.polynomial([[0], [1]]), 0, 0) is so.CausalType.LIGHTLIKE


def test_ruling_field_examples():
    X, defect = so.ruling_field(HPB, 1.0, 1.0)
    assert X.as_array().tolist() == [1, 0, 0]
    assert np.all(defect.as_array() == 0)
    X, defect = so.ruling_field(X_SQUARED, 1.0, 0.0)
    assert X.as_array().tolist() == [0.5, 2, 0]
    assert defect.a3 == pytest.approx(0.5)
    X, defect = so.ruling_field(HPB, 0.0, 0.0)
    assert np.all(X.as_array() == 0) and np.all(defect.as_array() == 0)


@settings(max_examples=30, deadline=None)
@given(polys, points)
def test_ruling_defect_is_obstruction(f, pt):
    _, defect = so.ruling_field(f, *pt)
    assert defect.a3 == pytest.approx(so.ruling_obstruction(f, *pt), abs=1e-12)


def test_residual_scan_and_csv():
    xs, ys = [0.0, 0.5, 1.0], [-1.0, 1.0]
    rows = so.residual_scan(X_SQUARED, xs, ys)
    assert [(r.x, r.y) for r in rows[:4]] == [(0, -1), (0.5, -1), (1, -1), (0, 1)]
    text = so.residual_csv(rows, "cfg")
    lines = text.splitlines()
    assert lines[:2] == ["# cfg", so.RESIDUAL_CSV_HEADER]
    assert len(lines) == 2 + 6
    first = lines[2].split(",")
    assert float(first[2]) == pytest.approx(float(so.graph_minimal_residual(X_SQUARED, 0.0, -1.0)))
    assert first[-1] in {c.value for c in so.CausalType}
    assert so.residual_csv(rows, "cfg") == text
