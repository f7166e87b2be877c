import cmath
import math

import numpy as np
import pytest
from scipy.integrate import quad

from resdecay import (
    DomainError,
    InitialState,
    PotentialSpec,
    ResonantState,
    eval_state,
    eval_state_grid,
    expansion_coefficients,
    normalize_state,
    overlap_coefficient,
    solve_poles,
    sum_rule_check,
)
from resdecay.resonant_states import matching_residuals, norm_residual


@pytest.fixture(scope="module")
def spec():
    return PotentialSpec(lam=100.0, a=1.0)


@pytest.fixture(scope="module")
def states(spec):
    return [normalize_state(p, spec) for p in solve_poles(spec, 100)]


def complex_quad(f, lo, hi):
    re = quad(lambda r: f(r).real, lo, hi, limit=400)[0]
    im = quad(lambda r: f(r).imag, lo, hi, limit=400)[0]
    return complex(re, im)


# ----------------------------------------------------------------------
# normalization and matching
# ----------------------------------------------------------------------

def test_normalization_residuals(states):
    for s in states:
        assert norm_residual(s) < 1e-10


def test_normalization_against_quadrature(states):
    for s in states[:5]:
        k, a = s.kappa, s.a
        integral = complex_quad(lambda r: (s.A * np.sin(k * r)) ** 2, 0.0, a)
        u_a = s.u_shell
        assert abs(integral + 0.5j * u_a * u_a / k - 1.0) < 1e-10


def test_branch_convention(states):
    for s in states:
        assert s.A.real > 0.0


def test_continuity_and_jump_conditions(states, spec):
    for s in states:
        cont, jump = matching_residuals(s, spec)
        assert abs(cont) < 1e-13 * abs(s.A)
        scale = spec.lam * abs(s.A * cmath.sin(s.kappa * s.a))
        assert abs(jump) < 1e-12 * scale


def test_closed_box_limit_of_amplitude():
    spec = PotentialSpec(lam=1e6, a=1.0)
    s = normalize_state(solve_poles(spec, 1)[0], spec)
    assert abs(s.A - math.sqrt(2.0)) < 1e-5


def test_reference_amplitudes(states, ref):
    for n_str, entry in ref["states_lam100_a1"].items():
        s = states[int(n_str) - 1]
        assert abs(s.A - complex(*entry["A"])) < 1e-12 * abs(s.A)
        assert abs(s.B - complex(*entry["B"])) < 1e-12 * abs(s.B)


# ----------------------------------------------------------------------
# eval_state
# ----------------------------------------------------------------------

def test_eval_state_origin_and_shell(states):
    s = states[0]
    assert eval_state(s, 0.0) == 0.0
    inner = s.A * cmath.sin(s.kappa * s.a)
    outer = s.B * cmath.exp(1j * s.kappa * s.a)
    assert abs(inner - outer) < 1e-13 * abs(inner)


def test_eval_state_grows_outside(states):
    s = states[0]
    assert abs(eval_state(s, 2.0)) > abs(eval_state(s, 1.0))
    expected = abs(s.B) * math.exp(s.pole.beta * 2.0)
    assert abs(eval_state(s, 2.0)) == pytest.approx(expected, rel=1e-12)


def test_eval_state_domain_and_grid(states):
    s = states[2]
    with pytest.raises(DomainError):
        eval_state(s, -0.1)
    r = np.linspace(0.0, 3.0, 50)
    grid = eval_state_grid(s, r)
    for rr, v in zip(r, grid):
        assert abs(v - eval_state(s, float(rr))) < 1e-14 * max(abs(v), 1.0)


# ----------------------------------------------------------------------
# initial state
# ----------------------------------------------------------------------

def test_initial_state_normalized():
    for q in (1, 2, 3):
        init = InitialState(q=q, a=1.0)
        norm = quad(lambda r: init.amplitude(r) ** 2, 0.0, 1.0)[0]
        assert norm == pytest.approx(1.0, abs=1e-12)
        assert init.amplitude(0.0) == 0.0
        assert abs(init.amplitude(1.0)) < 1e-15


def test_initial_state_validation():
    with pytest.raises(DomainError):
        InitialState(q=0, a=1.0)
    with pytest.raises(DomainError):
        InitialState(q=1, a=-1.0)


# ----------------------------------------------------------------------
# overlap coefficients
# ----------------------------------------------------------------------

def test_reference_coefficients(states, ref):
    for q in (1, 2):
        init = InitialState(q=q, a=1.0)
        for n_str, entry in ref["states_lam100_a1"].items():
            s = states[int(n_str) - 1]
            c = overlap_coefficient(init, s)
            target = complex(*entry[f"C_q{q}"])
            # small coefficients are differences of O(1) sine quotients,
            # so they carry an absolute floor of a few ulp of 1
            assert abs(c - target) < 1e-14 + 1e-12 * abs(target), (q, n_str)


def test_overlap_matches_quadrature_randomized(states):
    rng = np.random.default_rng(5)
    for _ in range(12):
        q = int(rng.integers(1, 6))
        n = int(rng.integers(1, 51))
        init = InitialState(q=q, a=1.0)
        s = states[n - 1]
        direct = complex_quad(
            lambda r: init.amplitude(r) * s.A * np.sin(s.kappa * r), 0.0, 1.0)
        closed = overlap_coefficient(init, s)
        assert abs(closed - direct) < 1e-10 * max(abs(closed), 1e-3), (q, n)


def test_conjugated_route_equals_plain_for_real_states(states):
    init = InitialState(q=1, a=1.0)
    for s in states[:10]:
        assert overlap_coefficient(init, s) == overlap_coefficient(
            init, s, conjugate_initial=True)


def test_closed_box_limit_of_coefficients():
    # kappa_1 sits within 1e-5 of pi/a: exercises the series switch in
    # the sine quotient and the single-mode limit
    spec = PotentialSpec(lam=1e6, a=1.0)
    poles = solve_poles(spec, 5)
    states = [normalize_state(p, spec) for p in poles]
    init = InitialState(q=1, a=1.0)
    assert abs(poles[0].kappa - math.pi) < 1e-4
    c1 = overlap_coefficient(init, states[0])
    assert abs(c1) > 0.999999
    for s in states[1:]:
        assert abs(overlap_coefficient(init, s)) < 1e-3


def test_branch_flip_leaves_products_invariant(states):
    init = InitialState(q=1, a=1.0)
    s = states[0]
    flipped = ResonantState(pole=s.pole, A=-s.A, B=-s.B, a=s.a)
    c = overlap_coefficient(init, s)
    c_f = overlap_coefficient(init, flipped)
    assert abs(c_f + c) < 1e-14 * abs(c)
    r = 0.37
    assert abs(c * eval_state(s, r) - c_f * eval_state(flipped, r)) \
        < 1e-14 * abs(c * eval_state(s, r))


def test_mismatched_radii_rejected(states):
    init = InitialState(q=1, a=2.0)
    with pytest.raises(DomainError):
        overlap_coefficient(init, states[0])


# ----------------------------------------------------------------------
# sum rule
# ----------------------------------------------------------------------

def test_sum_rule_reference_partials(states, ref):
    for q in (1, 2):
        init = InitialState(q=q, a=1.0)
        coeffs = expansion_coefficients(init, states)
        for n_str, target in ref["sum_rule_partials"][f"q{q}"].items():
            got = sum_rule_check(coeffs, int(n_str))
            assert got == pytest.approx(target, abs=1e-12), (q, n_str)


def test_sum_rule_convergence(states):
    for q in (1, 2):
        init = InitialState(q=q, a=1.0)
        coeffs = expansion_coefficients(init, states)
        deficits = [abs(1.0 - sum_rule_check(coeffs, n)) for n in (25, 50, 100)]
        assert deficits[0] < 1e-2
        assert deficits[2] < 1e-3
        assert deficits[0] > deficits[1] > deficits[2]


def test_sum_rule_first_term_is_c1_squared(states, ref):
    init = InitialState(q=1, a=1.0)
    coeffs = expansion_coefficients(init, states)
    assert sum_rule_check(coeffs, 1) == pytest.approx(ref["c1c1bar_q1"], abs=1e-12)


def test_sum_rule_bounds_validation(states):
    init = InitialState(q=1, a=1.0)
    coeffs = expansion_coefficients(init, states)
    with pytest.raises(DomainError):
        sum_rule_check(coeffs, 0)
    with pytest.raises(DomainError):
        sum_rule_check(coeffs, 101)
