import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilgeom.heis_core import (
    BRACKETS,
    CoordVector,
    FrameVector,
    IsometryElement,
    MetricKind,
    ModelPoint,
    compatibility_defects,
    connection,
    coord_components,
    coord_to_frame,
    covariant_derivative,
    cross,
    cross_components,
    frame_components,
    frame_to_coord,
    inner,
    inner_components,
    isometry_apply,
    isometry_differential,
    plane_flattening_isometry,
    torsion_defects,
)
from nilgeom.verification import tampered_table

R, L = MetricKind.RIEMANNIAN, MetricKind.LORENTZIAN
coord = st.floats(-5, 5, allow_nan=False)
angle = st.floats(0, 2 * math.pi)
triples = st.tuples(coord, coord, coord)


def e(i, p=ModelPoint.origin()):
    comps = [0.0, 0.0, 0.0]
    comps[i - 1] = 1.0
    return FrameVector.from_array(p, comps)


def test_frame_to_coord_examples():
    o = ModelPoint.origin()
    assert frame_to_coord(FrameVector(o, 1, 0, 0)).as_array().tolist() == [1, 0, 0]
    assert frame_to_coord(FrameVector(ModelPoint(1, 2, 0), 1, 0, 0)).as_array().tolist() == [1, 0, -1]
    p = ModelPoint(-3.0, 0.7, 2.0)
    assert frame_to_coord(FrameVector(p, 0, 0, 1)).as_array().tolist() == [0, 0, 1]


def test_coord_to_frame_examples():
    assert coord_to_frame(CoordVector(ModelPoint(1, 2, 0), 1, 0, 0)).as_array().tolist() == [1, 0, 1]
    assert coord_to_frame(CoordVector(ModelPoint.origin(), 0, 1, 0)).as_array().tolist() == [0, 1, 0]


@given(triples, triples)
def test_frame_coord_round_trip(p, v):
    base = ModelPoint(*p)
    back = coord_to_frame(frame_to_coord(FrameVector(base, *v)))
    assert np.allclose(back.as_array(), v, atol=1e-12)
    assert np.allclose(coord_components(p, frame_components(p, v)), v, atol=1e-12)


def test_e1_matches_its_coordinate_formula():
    # e1 = d/dx - (y/2) d/dz at an arbitrary point
    p = ModelPoint(0.3, -1.4, 2.0)
    assert np.allclose(frame_to_coord(e(1, p)).as_array(), [1, 0, 1.4 / 2])
    assert np.allclose(frame_to_coord(e(2, p)).as_array(), [0, 1, 0.3 / 2])


def test_inner_product_signatures():
    assert inner(e(3), e(3), R) == 1
    assert inner(e(3), e(3), L) == -1
    for kind in (R, L):
        assert inner(e(1), e(2), kind) == 0
        assert inner(e(1), e(1), kind) == 1


def test_mismatched_base_points_rejected():
    with pytest.raises(ValueError):
        inner(e(1), e(2, ModelPoint(1, 0, 0)), R)
    with pytest.raises(ValueError):
        cross(e(1), e(2, ModelPoint(1, 0, 0)), L)
    with pytest.raises(ValueError):
        e(1) + e(1, ModelPoint(0, 1, 0))


def test_non_finite_point_rejected():
    with pytest.raises(ValueError):
        ModelPoint(math.nan, 0, 0)


def test_cross_products_of_frame():
    assert cross(e(1), e(2), R).as_array().tolist() == [0, 0, 1]
    assert cross(e(1), e(2), L).as_array().tolist() == [0, 0, -1]


@given(triples, triples)
def test_cross_product_orthogonal_to_factors(a, b):
    for kind in (R, L):
        n = cross_components(a, b, kind)
        scale = 1 + np.linalg.norm(a) * np.linalg.norm(b)
        assert abs(inner_components(n, a, kind)) <= 1e-12 * scale * np.linalg.norm(a)
        assert abs(inner_components(n, b, kind)) <= 1e-12 * scale * np.linalg.norm(b)


@given(triples, st.floats(-3, 3))
def test_lorentz_cross_vanishes_on_dependent_vectors(v, c):
    assert np.allclose(cross_components(v, np.multiply(c, v), L), 0, atol=1e-12)
    assert np.all(cross_components(v, v, L) == 0)


def test_connection_entries():
    assert connection(R).gamma[0][1] == (0, 0, Fraction(1, 2))
    assert connection(L).gamma[0][2] == (0, Fraction(1, 2), 0)
    for kind in (R, L):
        for i in range(3):
            assert connection(kind).gamma[i][i] == (0, 0, 0)


@pytest.mark.parametrize("kind", [R, L])
def test_connection_is_levi_civita(kind):
    assert torsion_defects(connection(kind)) == []
    assert compatibility_defects(connection(kind)) == []


def test_tampered_table_is_detected():
    bad = tampered_table(L)
    assert compatibility_defects(bad)
    assert torsion_defects(bad)


def test_only_bracket_is_e1_e2():
    nonzero = {k: v for k, v in BRACKETS.items() if any(v)}
    assert nonzero == {(0, 1): (0, 0, 1), (1, 0): (0, 0, -1)}


def test_brackets_from_coordinate_fields():
    # [e_i, e_j] computed from the coordinate expressions by finite differences
    def field(i, p):
        return frame_to_coord(e(i + 1, ModelPoint(*p))).as_array()

    p, h = np.array([0.4, -0.9, 1.3]), 1e-6
    for i in range(3):
        for j in range(3):
            def deriv(f, along):
                return sum(along[k] * (f(p + h * np.eye(3)[k]) - f(p - h * np.eye(3)[k])) / (2 * h)
                           for k in range(3))
            br = deriv(lambda q: field(j, q), field(i, p)) - deriv(lambda q: field(i, q), field(j, p))
            want = frame_to_coord(FrameVector.from_array(ModelPoint(*p), [float(c) for c in BRACKETS[(i, j)]]))
            assert np.allclose(br, want.as_array(), atol=1e-8)


@pytest.mark.parametrize("kind,expected", [(R, [0, -0.5, 0]), (L, [0, 0.5, 0])])
def test_covariant_derivative_of_e3_along_x_axis(kind, expected):
    d = covariant_derivative(lambda t: e(3, ModelPoint(t, 0, 0)), 0, (0.3,), kind)
    assert np.allclose(d.as_array(), expected, atol=1e-12)


def test_covariant_derivative_uses_supplied_velocity():
    d = covariant_derivative(lambda t: e(3, ModelPoint(t, 0, 0)), 0, (0.0,), R, velocity=lambda t: (2.0, 0.0, 0.0))
    assert np.allclose(d.as_array(), [0, -1, 0])


def test_covariant_derivative_rejects_bad_step():
    with pytest.raises(ValueError):
        covariant_derivative(lambda t: e(3), 0, (0.0,), R, step=0)


def test_horizontal_geodesic_velocity_is_parallel():
    # the straight line p + t(u, v, (v x - u y)/2) has constant frame components (u, v, 0)
    p, u, v = np.array([0.5, -0.2, 1.0]), 0.6, -0.8
    w = (v * p[0] - u * p[1]) / 2

    def velocity_field(t):
        q = p + t * np.array([u, v, w])
        return FrameVector.from_array(ModelPoint(*q), frame_components(q, [u, v, w]))

    for step in (1e-2, 1e-3):
        d = covariant_derivative(velocity_field, 0, (0.7,), R, step)
        assert np.max(np.abs(d.as_array())) < 10 * step**2


def test_richardson_improves_estimate():
    def field(t):
        q = ModelPoint(math.cos(t), math.sin(t), t)
        return FrameVector(q, math.sin(2 * t), t**2, 1.0)

    exact = covariant_derivative(field, 0, (0.4,), L, 1e-5).as_array()
    plain = covariant_derivative(field, 0, (0.4,), L, 1e-2).as_array()
    extrap = covariant_derivative(field, 0, (0.4,), L, 1e-2, richardson=True).as_array()
    assert np.max(np.abs(extrap - exact)) < np.max(np.abs(plain - exact)) / 100


def test_isometry_examples():
    rot = IsometryElement(math.pi / 2)
    assert np.allclose(isometry_apply(rot, ModelPoint(1, 0, 0)).as_array(), [0, 1, 0], atol=1e-15)
    r = 1.7
    p = ModelPoint(0.3, -0.6, 2.2)
    img = isometry_apply(IsometryElement(0, r, 0, 0), p)
    assert img.as_array().tolist() == [p.x + r, p.y, p.z + r * p.y / 2]
    assert isometry_apply(IsometryElement(), p) == p


def test_identity_differential():
    v = FrameVector(ModelPoint(1, 2, 3), 0.1, -0.2, 0.3)
    assert isometry_differential(IsometryElement(), v) == v


isometries = st.builds(IsometryElement, angle, coord, coord, coord)


@settings(max_examples=50)
@given(isometries, isometries, triples)
def test_group_law(g1, g2, p):
    lhs = g1.compose(g2).apply_array(p)
    rhs = g1.apply_array(g2.apply_array(p))
    assert np.allclose(lhs, rhs, atol=1e-9)
    assert np.allclose(g1.inverse().apply_array(g1.apply_array(p)), p, atol=1e-9)


@settings(max_examples=50)
@given(isometries, triples, triples, triples)
def test_isometries_preserve_both_metrics(g, p, v, w):
    base = ModelPoint(*p)
    V, W = FrameVector(base, *v), FrameVector(base, *w)
    dV, dW = isometry_differential(g, V), isometry_differential(g, W)
    for kind in (R, L):
        assert inner(dV, dW, kind) == pytest.approx(inner(V, W, kind), abs=1e-9)


def test_isometry_preserves_left_invariant_metric_form():
    # pull back dx^2 + dy^2 + (dz + (y dx - x dy)/2)^2 via the Jacobian, independent of the frame code
    def gram(q):
        x, y = q[0], q[1]
        omega = np.array([y / 2, -x / 2, 1.0])
        return np.diag([1.0, 1.0, 0.0]) + np.outer(omega, omega)

    g = IsometryElement(1.1, 0.4, -2.0, 0.3)
    q = np.array([0.7, 1.9, -0.4])
    J = g.jacobian()
    assert np.allclose(J.T @ gram(g.apply_array(q)) @ J, gram(q), atol=1e-12)


@pytest.mark.parametrize("a,b,d", [(0, 0, 0), (1.5, -0.5, 2.0), (-3, 4, 0.25)])
def test_plane_flattening(a, b, d):
    iso = plane_flattening_isometry(a, b, d)
    if (a, b, d) == (0, 0, 0):
        assert iso == IsometryElement()
    xy = np.random.default_rng(1).uniform(-3, 3, (20, 2))
    pts = np.column_stack([xy, -a * xy[:, 0] - b * xy[:, 1] - d])
    assert np.max(np.abs(iso.apply_array(pts)[:, 2])) < 1e-12
