import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilgeom import geodesics as geo
from nilgeom.heis_core import FrameVector, ModelPoint

O = ModelPoint.origin()


def test_rhs_examples():
    assert geo.geodesic_rhs(geo.GeodesicState(0, 0, 0, 1, 0, 0)).as_array()[3:].tolist() == [0, 0, 0]
    r = geo.geodesic_rhs(geo.GeodesicState(0, 0, 0, 0, 0, 1))
    assert (r.dx, r.dy) == (0, 0)
    r = geo.geodesic_rhs(geo.GeodesicState(0, 0, 0, 1, 0, 1))
    assert (r.dx, r.dy) == (0, 1)


def test_momentum_examples():
    assert geo.momentum(geo.GeodesicState(0, 0, 0, 1, 0, 0)) == 0
    assert geo.momentum(geo.GeodesicState(0, 0, 0, 0, 0, 1)) == 1
    assert geo.momentum(geo.GeodesicState(1, 2, 0, 1, 0, 0)) == 1


def test_horizontal_trace_is_x_axis():
    tr = geo.integrate_geodesic(O, FrameVector(O, 1, 0, 0), 5.0)
    assert np.max(np.abs(tr.positions - np.column_stack([tr.t, 0 * tr.t, 0 * tr.t]))) < 1e-8


def test_vertical_trace_is_fibre():
    tr = geo.integrate_geodesic(O, FrameVector(O, 0, 0, 1), 3.0)
    assert np.max(np.abs(tr.positions - np.column_stack([0 * tr.t, 0 * tr.t, tr.t]))) < 1e-12


def test_unit_momentum_oracle():
    tr = geo.integrate_geodesic(O, FrameVector(O, 1, 0, 1), math.pi)
    assert np.allclose(tr.positions[-1], [0, 2, 3 * math.pi / 2], atol=1e-6)
    assert np.max(np.abs(tr.positions - geo.j1_oracle(tr.t))) < 1e-6


def test_oracle_solves_equations():
    t = np.linspace(0, 6, 6001)
    assert geo.geodesic_residual(t, geo.j1_oracle(t)) < 1e-5


def test_integrated_trace_solves_equations():
    p = ModelPoint(0.2, -0.5, 1.0)
    tr = geo.integrate_geodesic(p, FrameVector(p, 0.3, 0.9, -0.7), 4.0)
    assert geo.geodesic_residual(tr.t, tr.positions) < 1e-6


def test_step_size_convergence():
    # RK4: halving the step shrinks the error about 16 fold
    errs = []
    for h in (0.1, 0.05):
        tr = geo.integrate_geodesic(O, FrameVector(O, 1, 0, 1), 2.0, h)
        errs.append(np.max(np.abs(tr.positions[-1] - geo.j1_oracle(2.0))))
    assert 12 < errs[0] / errs[1] < 20


def test_step_divides_horizon():
    t, _ = geo.integrate_batch([0, 0, 0], [1, 0, 0], 1.0, 0.3)
    assert t[-1] == pytest.approx(1.0, abs=1e-15)
    assert np.allclose(np.diff(t), 0.25)


def test_bad_integration_parameters():
    with pytest.raises(ValueError):
        geo.integrate_batch([0, 0, 0], [1, 0, 0], 1.0, 0.0)
    with pytest.raises(ValueError):
        geo.integrate_batch([0, 0, 0], [1, 0, 0], -1.0, 0.1)


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_non_finite_state_aborts_with_diagnostic():
    with pytest.raises(FloatingPointError, match="trajectory 1"):
        geo.integrate_batch([[0, 0, 0], [0, 0, 0]], [[1, 0, 0], [1e200, 1e200, 1e300]], 1.0, 0.5)


def test_batch_matches_single_integration():
    pts = np.array([[0.1, 0.2, 0.3], [-1, 0.5, 0]])
    vel = np.array([[1, -1, 0.5], [0.2, 0.3, -2]])
    _, batch = geo.integrate_batch(pts, vel, 2.0)
    for i in range(2):
        _, single = geo.integrate_batch(pts[i], vel[i], 2.0)
        assert np.array_equal(batch[:, i], single[:, 0])


def test_endpoints_match_full_traces():
    pts = np.array([[0.1, 0.2, 0.3], [-1, 0.5, 0]])
    vel = np.array([[1, -1, 0.5], [0.2, 0.3, -2]])
    ends = geo.geodesic_endpoints(pts, vel, [1.5, -0.5])
    _, fwd = geo.integrate_batch(pts[0], vel[0], 1.5)
    _, back = geo.integrate_batch(pts[1], -vel[1], 0.5)
    assert np.allclose(ends[0], fwd[-1, 0, :3], atol=1e-12)
    assert np.allclose(ends[1], back[-1, 0, :3], atol=1e-12)


finite = st.floats(-2, 2, allow_nan=False)


@settings(max_examples=30, deadline=None)
@given(st.tuples(finite, finite, finite), st.tuples(finite, finite, finite))
def test_momentum_and_speed_conserved(p, v):
    _, states = geo.integrate_batch(p, v, 3.0)
    J = geo.momentum_array(states)
    assert np.max(np.abs(J - J[0])) < 1e-12
    speed = states[..., 3] ** 2 + states[..., 4] ** 2
    assert np.max(np.abs(speed - speed[0])) < 1e-8 * (1 + speed[0, 0])


def test_horizontal_geodesic_examples():
    assert geo.horizontal_geodesic(O, FrameVector(O, 1, 0, 0)).direction == (1, 0, 0)
    p = ModelPoint(0, 1, 0)
    line = geo.horizontal_geodesic(p, FrameVector(p, 1, 0, 0))
    assert np.allclose(line.at(2.0), [2, 1, -1])
    q = ModelPoint(0, 0, 1)
    assert np.allclose(geo.horizontal_geodesic(q, FrameVector(q, 1, 0, 0)).at(3.0), [3, 0, 1])


def test_horizontal_geodesic_rejects_vertical_component():
    with pytest.raises(ValueError, match="not horizontal"):
        geo.horizontal_geodesic(O, FrameVector(O, 1, 0, 0.1))


def test_line_criterion_examples():
    assert geo.is_geodesic_line(geo.Line3(O, (1, 0, 0)))
    p = ModelPoint(0, 1, 0)
    assert not geo.is_geodesic_line(geo.Line3(p, (1, 0, 0)))
    good = geo.Line3(p, (1, 0, -0.5))
    assert geo.is_geodesic_line(good)
    assert geo.line_deviation(good) < 1e-10
    assert geo.line_deviation(geo.Line3(p, (1, 0, 0))) > 1e-2
    assert geo.is_geodesic_line(geo.Line3(ModelPoint(3, -2, 1), (0, 0, -4)))


def test_zero_direction_rejected():
    with pytest.raises(ValueError):
        geo.Line3(O, (0, 0, 0))


def test_trace_csv():
    tr = geo.integrate_geodesic(O, FrameVector(O, 1, 0, 1), 0.01, 0.005)
    text = tr.to_csv("cfg")
    lines = text.splitlines()
    assert lines[0] == "# cfg"
    assert lines[1] == geo.CSV_HEADER
    assert len(lines) == 2 + 3
    row = [float(c) for c in lines[-1].split(",")]
    assert row[0] == pytest.approx(0.01)
    assert row[-1] == pytest.approx(1.0, abs=1e-15)
    buf = io.StringIO()
    tr.write_csv(buf, "cfg")
    assert buf.getvalue() == text
