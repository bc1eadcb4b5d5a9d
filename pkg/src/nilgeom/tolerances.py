"""Central table of numerical defaults and acceptance thresholds.

Every threshold used by the verification suites and the CLI is read from
``TOLERANCES``; the CLI ``--tol name=value`` flag overrides entries per run.
"""

TOLERANCES = {
    # numerics
    "fd_step": 1e-5,
    "fd_step_second": 1e-4,
    "geodesic_step": 1e-3,
    "degenerate": 1e-12,
    "lightlike_band": 1e-12,
    "bisection": 1e-12,
    "plane_case": 1e-12,
    "horizontal_a3": 1e-12,
    # acceptance thresholds
    "connection_exact": 1e-15,
    "momentum_drift": 1e-9,
    "horizontal_line": 1e-8,
    "line_condition": 1e-10,
    "line_trace": 1e-6,
    "j1_oracle": 1e-6,
    "mean_curvature": 1e-8,
    "graph_residual": 1e-10,
    "coefficient_match": 1e-6,
    "fit_residual": 1e-8,
    "htilde_witness": 0.1,
    "horizontal_residual": 1e-12,
    "implicit_residual": 1e-9,
    "rate_low": 0.35,
    "rate_high": 0.65,
    "limit_small_lambda": 1e-2,
    "isometry_invariance": 1e-10,
    "plane_flattening": 1e-12,
    "ratio_center": 4.0,
    "ratio_halfwidth": 0.5,
    "tangent_numeric": 1e-6,
}


def resolved(overrides: dict | None = None) -> dict:
    """Copy of the table with ``overrides`` applied; unknown names raise KeyError."""
    table = dict(TOLERANCES)
    for name, value in (overrides or {}).items():
        if name not in table:
            raise KeyError(f"unknown tolerance {name!r}")
        table[name] = float(value)
    return table
