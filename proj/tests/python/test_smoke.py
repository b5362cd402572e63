import math

import numpy as np
import pytest

import dnls


def test_homogeneous_wave():
    w = dnls.solve_homogeneous(dnls.Grid(1, 40), 1.0, 1.0)
    assert w.family == "homogeneous"
    assert 1.0 < w.multiplier < 3.0
    assert w.residual < 1e-12
    assert w.field.shape == (w.grid.side,)
    assert w.field.min() >= -1e-12
    phi = dnls.to_profile(w)
    assert dnls.profile_residual(phi.grid, phi.field, 1.0, 1.0) < 1e-12


def test_normalized_wave_and_refusal():
    w = dnls.solve_normalized(dnls.Grid(1, 40), 1.0, 2.0)
    assert w.multiplier > 0.0
    assert w.H < 0.0
    assert math.isclose(float(np.sum(w.field**2)), 2.0, rel_tol=1e-12)
    with pytest.raises(dnls.ConfigError):
        dnls.solve_normalized(dnls.Grid(1, 20), 3.0, 0.1)


def test_trivial_seed_is_rejected():
    g = dnls.Grid(1, 10)
    with pytest.raises(dnls.SolverError, match="trivial"):
        dnls.newton_refine(g, np.zeros(21), 1.0, 1.0)


def test_spectrum_and_indices():
    w = dnls.to_profile(dnls.solve_homogeneous(dnls.Grid(1, 30), 1.0, 1.0))
    spec = np.array(dnls.linearized_spectrum(w))
    assert spec.shape == (2 * w.grid.side,)
    m = dnls.morse_indices(w)
    assert (m.n_plus, m.n_minus, m.ker_plus, m.ker_minus) == (1, 0, 0, 1)
    assert dnls.vk_inner(w) < 0.0


def test_sweep_verdicts():
    curve = dnls.continue_family(dnls.Grid(1, 60), 2.0, 0.4, 1.6, 0.01)
    assert len(curve) == 121
    assert not curve.gaps
    lo = dnls.stability_verdict(curve, 0.5)
    hi = dnls.stability_verdict(curve, 1.5)
    assert lo.verdict == "unstable" and hi.verdict == "stable"
    assert not lo.disagreement and not hi.disagreement
    assert curve.slope(0.5) < 0.0 < curve.slope(1.5)


def test_heat_semigroup_and_rearrangement():
    k = dnls.heat_kernel(0.5, 10)
    assert all(a > b for a, b in zip(k, k[1:]))
    g = dnls.Grid(1, 10, "periodic")
    f = np.random.default_rng(0).uniform(0.0, 1.0, g.side)
    out = dnls.apply_heat_semigroup(g, f, 0.7)
    assert out.min() > 0.0
    assert math.isclose(out.sum(), f.sum(), rel_tol=1e-12)
    values, center = dnls.symmetric_decreasing_rearrangement([-1.0, 2.0, -3.0])
    assert values[center] == 3.0
    assert dnls.edge_energy([1.0, 3.0, 2.0], 2.0) == pytest.approx(10.0)


def test_property_suites():
    results = dnls.run_checks("szego")
    assert set(results) == {"szego"}
    assert all(ok for _, ok, _ in results["szego"])
    with pytest.raises(dnls.ConfigError):
        dnls.run_checks("unknown")
