import math

import numpy as np
import pytest
from scipy.integrate import quad

from resdecay import (
    DomainError,
    InitialState,
    PotentialSpec,
    QuadratureConfig,
    build_solution,
    external_tail_estimate,
    eval_state,
    flux_conservation_scan,
    integrate_external,
    integrate_internal,
    survival_amplitude,
    unitarity_check,
    wavefront_positions,
)

# small but physical working set: 24 pole pairs, cutoff 400 a
CFG = QuadratureConfig(r_max=400.0)


@pytest.fixture(scope="module")
def sol(sol_small):
    return sol_small


def test_config_validation():
    with pytest.raises(DomainError):
        QuadratureConfig(abs_tol=0.0)
    with pytest.raises(DomainError):
        QuadratureConfig(min_points_per_oscillation=4)
    with pytest.raises(DomainError):
        QuadratureConfig(r_max=-1.0)
    assert QuadratureConfig().resolve_r_max(2.0) == 8000.0
    with pytest.raises(DomainError):
        QuadratureConfig(r_max=0.5).resolve_r_max(1.0)


def test_internal_integral_at_t0(sol):
    assert integrate_internal(sol, 0.0, CFG) == pytest.approx(1.0, abs=1e-10)


def test_external_integral_at_t0(sol):
    assert integrate_external(sol, 0.0, CFG) == 0.0


def test_nonescape_bounds(sol):
    for t in (0.3, 3.0, 30.0):
        val = integrate_internal(sol, t, CFG)
        assert 0.0 <= val <= 1.0 + 1e-6


def test_single_pole_oracle_at_one_lifetime(sol):
    tau = sol.lifetime
    got = integrate_internal(sol, tau, CFG)
    c1, s1 = sol.coeffs.C[0], sol.states[0]
    weight = quad(lambda r: abs(c1 * eval_state(s1, r)) ** 2, 0.0, 1.0)[0]
    oracle = weight * math.exp(-s1.pole.gamma * tau)
    assert got == pytest.approx(oracle, rel=0.15)


def test_unitarity_snapshot_fields(sol):
    tau = sol.lifetime
    snap = unitarity_check(sol, 0.1 * tau, CFG)
    assert snap.I_in >= 0.0 and snap.I_ex >= 0.0
    assert np.all(snap.density >= 0.0)
    assert snap.grid.shape == snap.density.shape
    assert snap.deficit == 1.0 - snap.I_in - snap.I_ex
    assert abs(snap.deficit) < 1e-3
    # the cutoff truncates fast forerunners at this time
    assert any("truncated front" in w for w in snap.warnings)


def test_unitarity_at_t0(sol):
    snap = unitarity_check(sol, 0.0, CFG)
    assert abs(snap.deficit) < 1e-10


def test_tail_estimate_magnitude(sol):
    tau = sol.lifetime
    t = 0.1 * tau
    est = external_tail_estimate(sol, t, CFG)
    const = abs(sol.full_set_shell_sum) ** 2 * t / math.pi
    assert est == pytest.approx(const / 400.0, rel=1e-12)
    assert est < 1e-3


def test_quadrature_self_consistency(sol):
    t = 2.0
    loose = integrate_external(sol, t, CFG)
    tight_cfg = QuadratureConfig(r_max=400.0, abs_tol=5e-7, rel_tol=5e-9)
    tight = integrate_external(sol, t, tight_cfg)
    assert abs(loose - tight) < CFG.abs_tol


def test_front_resolution_guard(sol):
    t = 2.0
    base = integrate_external(sol, t, CFG)
    fine_cfg = QuadratureConfig(r_max=400.0, min_points_per_oscillation=40)
    fine = integrate_external(sol, t, fine_cfg)
    assert abs(base - fine) < 1e-5


def test_truncated_cutoff_negative_control(sol):
    tau = sol.lifetime
    bad_cfg = QuadratureConfig(r_max=2.0)
    snap = unitarity_check(sol, 2.0 * tau, bad_cfg)
    assert any("truncated front" in w for w in snap.warnings)
    assert abs(snap.deficit) > 0.01


def test_flux_scan_constant_total(sol):
    tau = sol.lifetime
    times = [0.05 * tau, 0.1 * tau, 0.2 * tau]
    rows = flux_conservation_scan(sol, times, CFG)
    assert len(rows) == 3
    for t, total, deriv, tol in rows:
        assert abs(deriv) < tol
        assert total == pytest.approx(1.0, abs=2e-3)


def test_flux_scan_validation(sol):
    with pytest.raises(DomainError):
        flux_conservation_scan(sol, [1.0, 1.0, 2.0], CFG)
    with pytest.raises(DomainError):
        flux_conservation_scan(sol, [1.0, 2.0], CFG)


def test_single_pole_truncation_breaks_conservation(spec100):
    # a single pole pair happens to carry almost all of the q = 1 state
    # (C_1 Cbar_1 = 0.9997), so its one-term expansion stays unitary to
    # ~7e-4; the q = 2 state spreads over many poles and its one-term
    # truncation loses essentially all probability
    sol1 = build_solution(spec100, InitialState(q=2, a=1.0), n_poles=1,
                          deficit_bound=2.0)
    tau = 1.0 / sol1.states[0].pole.gamma
    cfg = QuadratureConfig(r_max=1500.0)
    snap = unitarity_check(sol1, 0.5 * tau, cfg)
    assert abs(snap.deficit) > 0.01
    sol_q1 = build_solution(spec100, InitialState(q=1, a=1.0), n_poles=1)
    snap_q1 = unitarity_check(sol_q1, 2.0 * tau, cfg)
    assert abs(snap_q1.deficit) < 1e-3


def test_survival_initial_value(sol):
    sv = survival_amplitude(sol, 0.0, CFG)
    assert abs(sv.amplitude - 1.0) < 1e-10
    assert sv.probability == pytest.approx(1.0, abs=1e-10)


def test_survival_below_nonescape(sol):
    tau = sol.lifetime
    for t in (0.1 * tau, 0.5 * tau, 1.5 * tau):
        s = survival_amplitude(sol, t, CFG).probability
        p = integrate_internal(sol, t, CFG)
        assert s <= p + 1e-8


def test_survival_exponential_slope(sol):
    tau = sol.lifetime
    times = np.array([0.5, 0.875, 1.25, 1.625, 2.0]) * tau
    logs = [math.log(survival_amplitude(sol, float(t), CFG).probability)
            for t in times]
    slope = np.polyfit(times, logs, 1)[0]
    assert slope == pytest.approx(-sol.states[0].pole.gamma, rel=0.10)


def test_wavefront_positions(sol):
    tau = sol.lifetime
    fronts = wavefront_positions(sol, tau)
    assert fronts[0] == (1, 1.0 + 2.0 * sol.states[0].pole.alpha * tau)
    assert [n for n, _ in fronts] == list(range(1, 25))
    with pytest.raises(DomainError):
        wavefront_positions(sol, 0.0)


def test_forerunner_peaks_near_predictions(sol):
    # compact version of the figure-3 check at the small working set
    from resdecay import psi_external_grid
    tau = sol.lifetime
    t = 0.5 * tau
    r = np.linspace(1.0, 1100.0, 40000)
    d = np.abs(psi_external_grid(sol, r, t)) ** 2
    fronts = dict(wavefront_positions(sol, t))
    interior = (d[1:-1] > d[:-2]) & (d[1:-1] > d[2:])
    peaks = r[np.nonzero(interior)[0] + 1]
    vals = d[np.nonzero(interior)[0] + 1]
    for n in (2, 3):
        target = fronts[n]
        near = np.abs(peaks - target) < 0.2 * target
        assert np.any(near)
        strongest = peaks[near][np.argmax(vals[near])]
        assert abs(strongest - target) / target < 0.05
