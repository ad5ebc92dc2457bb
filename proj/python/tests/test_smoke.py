import math

import numpy as np
import pytest

import ergodamp as ed


def grid_nodes(n):
    x = np.arange(n) / n
    return np.meshgrid(x, x, indexing="ij")


def test_canonicalize_and_norms():
    assert ed.canonicalize([1.25, -0.25]) == pytest.approx([0.25, 0.75])
    x0, x1 = grid_nodes(16)
    f = np.sin(2 * math.pi * x0) * np.cos(2 * math.pi * x1)
    assert ed.lp_norm(f, 2.0) == pytest.approx(0.5, abs=1e-12)
    assert ed.lp_norm(f, math.inf) == pytest.approx(np.abs(f).max())
    assert ed.spatial_average(np.full((8, 8), 3.0)) == pytest.approx(3.0)
    c = ed.to_spectral(f + 2.0)
    assert c.shape == (16, 16)
    assert c[0, 0] == pytest.approx(2.0)


def test_interpolation_reproduces_trigonometric_data():
    x0, x1 = grid_nodes(16)
    f = np.cos(2 * math.pi * (x0 + 2 * x1))
    got = ed.interpolate(f, [[0.123, 0.456]])
    assert got[0] == pytest.approx(math.cos(2 * math.pi * (0.123 + 2 * 0.456)), abs=1e-12)


def test_catalog_and_errors():
    phi = ed.AnalyticField.parse("cosprod a=1 b=1", 2)
    assert phi.mean() == pytest.approx(1.0)
    assert ed.AnalyticField.parse(str(phi), 2).mean() == phi.mean()
    assert phi.sample(8).shape == (8, 8)
    with pytest.raises(ed.Error):
        ed.AnalyticField.parse("nonsense", 2)
    with pytest.raises(ed.Error):
        ed.lp_norm(np.zeros((4, 6)), 2.0)


def test_vector_field_and_ergodicity():
    v = ed.VectorField.constant([1.0, math.sqrt(2.0)], "irrational")
    assert v([0.3, 0.4]) == pytest.approx([1.0, math.sqrt(2.0)])
    assert v.is_divergence_free()
    assert ed.ergodicity(v)["verdict"] == "uniquely_ergodic"
    rational = ed.VectorField.constant([1.0, 2.0], "rational")
    assert ed.ergodicity(rational)["verdict"] == "not_ergodic"
    shear = ed.VectorField.shear(0.2, 1.0)
    assert shear([0.0, 0.0]) == pytest.approx([1.2, 0.0])


def test_flow_map_matches_constant_drift():
    v = ed.VectorField.constant([0.25, 0.5])
    flow = ed.FlowMap(v)
    assert flow(2.0, [0.1, 0.2]) == pytest.approx([0.6, 0.2], abs=1e-12)
    assert flow.gradient(1.0, [0.0, 0.0]) == pytest.approx(np.eye(2))


def test_inviscid_constant_damping():
    v = ed.VectorField.constant([1.0, (1 + math.sqrt(5)) / 2], "irrational")
    n = 16
    theta0 = ed.AnalyticField.parse("cosine a=1 b=0.5", 2).sample(n)
    damping = np.full((n, n), 0.3)
    sols = ed.solve_inviscid(v, damping, theta0, [0.0, 1.0])
    assert ed.lp_norm(sols[1], 2.0) == pytest.approx(math.exp(-0.3) * ed.lp_norm(theta0, 2.0), rel=1e-6)
    h = ed.inviscid_norms(v, damping, theta0, [0.0, 1.0, 2.0])
    assert h["max_relative_gap"] < 1e-6


def test_viscous_pure_diffusion():
    n = 16
    x0, _ = grid_nodes(n)
    theta0 = np.sin(2 * math.pi * x0)
    nu = 0.01
    res = ed.solve_viscous(ed.VectorField.constant([0.0, 0.0]), np.zeros((n, n)), theta0, nu, [0.0, 1.0])
    expect = math.exp(-4 * math.pi**2 * nu) * theta0
    assert np.abs(res["final"] - expect).max() < 1e-10


def test_fit_and_window():
    t = np.linspace(0, 10, 50)
    fit = ed.fit_decay_rate(list(t), list(3.0 * np.exp(-0.7 * t)), 1.0, 9.0)
    assert fit["rate"] == pytest.approx(0.7, rel=1e-10)
    assert ed.log_window_end(2.0, math.exp(-4)) == pytest.approx(2.0)


def test_run_experiment_flow(tmp_path):
    text = "kind = flow\nmode = 0 0  0.25 0  0.7071067811865476 0\nt_final = 4\npoint = 0.1 0.9\n"
    assert "kind = flow" in ed.check_config(text)
    summary = ed.run_experiment(text, str(tmp_path))
    assert summary["kind"] == "flow"
    assert summary["passed"]
    assert summary["checks"]["closed_form_orbit"]["passed"]
    assert (tmp_path / "trajectory.csv").exists()
