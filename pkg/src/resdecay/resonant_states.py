"""Normalized resonant eigenfunctions and expansion coefficients.

For each pole kappa the eigenfunction is

    u(r) = A sin(kappa r)          r <= a
    u(r) = B exp(i kappa r)        r >= a

with B = A sin(kappa a) exp(-i kappa a) from continuity at the shell and
A fixed by the residue normalization

    int_0^a u^2 dr + i u^2(a) / (2 kappa) = 1,

which gives in closed form

    A = [ a/2 - sin(2 kappa a)/(4 kappa) + i sin^2(kappa a)/(2 kappa) ]^{-1/2}.

The square-root branch is chosen so Re A > 0 (Im A > 0 on a tie); every
observable is invariant under flipping the branch because coefficients
and eigenfunctions always enter in products.

Expansion coefficients for an initially confined state are the
non-Hermitian overlaps (no conjugation)

    C_n    = int_0^a Psi(r,0)  u_n(r) dr,
    Cbar_n = int_0^a Psi*(r,0) u_n(r) dr,

closed-form for the quantum-box family Psi(r,0) = sqrt(2/a) sin(q pi r/a).
The modified closure relation of the full pole set gives the sum rule
Re sum_n C_n Cbar_n = 1 for a unit-norm initial state.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateStateError, DomainError
from .pole_solver import Pole, PotentialSpec

__all__ = [
    "ResonantState",
    "InitialState",
    "ExpansionCoefficients",
    "normalize_state",
    "eval_state",
    "eval_state_grid",
    "matching_residuals",
    "norm_residual",
    "overlap_coefficient",
    "expansion_coefficients",
    "sum_rule_check",
]

_BRACKET_MIN = 1e-14
_SINC_SWITCH = 1e-4  # |x·a| below which the series form of sin(xa)/x is used


@dataclass(frozen=True)
class ResonantState:
    """One normalized resonant eigenfunction."""

    pole: Pole
    A: complex
    B: complex
    a: float

    @property
    def kappa(self) -> complex:
        return self.pole.kappa

    @property
    def u_shell(self) -> complex:
        """Boundary value u(a) = A sin(kappa a)."""
        return self.A * cmath.sin(self.kappa * self.a)


@dataclass(frozen=True)
class InitialState:
    """Quantum-box initial state sqrt(2/a) sin(q pi r / a) on [0, a]."""

    q: int
    a: float

    def __post_init__(self):
        if not (isinstance(self.q, int) and self.q >= 1):
            raise DomainError(f"box quantum number must be a positive integer, got {self.q}")
        if self.a <= 0.0:
            raise DomainError(f"box width must be positive, got {self.a}")

    @property
    def wavenumber(self) -> float:
        return self.q * math.pi / self.a

    def amplitude(self, r):
        """Psi(r, 0); vanishes outside [0, a].  Accepts scalars or arrays."""
        r = np.asarray(r, dtype=np.float64)
        amp = math.sqrt(2.0 / self.a)
        vals = np.where((r >= 0.0) & (r <= self.a),
                        amp * np.sin(self.wavenumber * r), 0.0)
        if vals.ndim == 0:
            return float(vals)
        return vals


@dataclass(frozen=True)
class ExpansionCoefficients:
    """Overlap coefficients C_n and Cbar_n, n = 1..n_terms."""

    C: tuple
    C_bar: tuple
    n_terms: int

    def __post_init__(self):
        if not (len(self.C) == len(self.C_bar) == self.n_terms):
            raise DomainError("coefficient lists must match n_terms")


def normalize_state(p: Pole, spec: PotentialSpec) -> ResonantState:
    """Closed-form interior/exterior amplitudes for a converged pole."""
    k = p.kappa
    a = spec.a
    sin_ka = cmath.sin(k * a)
    bracket = 0.5 * a - cmath.sin(2.0 * k * a) / (4.0 * k) \
        + 0.5j * sin_ka * sin_ka / k
    if abs(bracket) < _BRACKET_MIN:
        raise DegenerateStateError(
            f"pole {p.n}: normalization bracket vanished ({bracket})"
        )
    A = 1.0 / cmath.sqrt(bracket)
    if A.real < 0.0 or (A.real == 0.0 and A.imag < 0.0):
        A = -A
    B = A * sin_ka * cmath.exp(-1j * k * a)
    return ResonantState(pole=p, A=A, B=B, a=a)


def eval_state(s: ResonantState, r: float) -> complex:
    """u(r): interior sine for r <= a, outgoing exponential for r >= a."""
    if r < 0.0:
        raise DomainError(f"eval_state: r must be non-negative, got {r}")
    if r <= s.a:
        return s.A * cmath.sin(s.kappa * r)
    return s.B * cmath.exp(1j * s.kappa * r)


def eval_state_grid(s: ResonantState, r) -> np.ndarray:
    """Vectorized eval_state over an array of radii."""
    r = np.asarray(r, dtype=np.float64)
    if np.any(r < 0.0):
        raise DomainError("eval_state_grid: radii must be non-negative")
    out = np.empty(r.shape, dtype=np.complex128)
    inner = r <= s.a
    out[inner] = s.A * np.sin(s.kappa * r[inner])
    out[~inner] = s.B * np.exp(1j * s.kappa * r[~inner])
    return out


def matching_residuals(s: ResonantState, spec: PotentialSpec):
    """Continuity and delta-jump residuals at the shell (diagnostics)."""
    k, a = s.kappa, s.a
    continuity = s.A * cmath.sin(k * a) - s.B * cmath.exp(1j * k * a)
    jump = s.B * 1j * k * cmath.exp(1j * k * a) \
        - s.A * k * cmath.cos(k * a) - spec.lam * s.A * cmath.sin(k * a)
    return continuity, jump


def norm_residual(s: ResonantState) -> float:
    """| int_0^a u^2 dr + i u^2(a)/(2 kappa) - 1 | from the closed forms."""
    k, a = s.kappa, s.a
    integral = s.A * s.A * (0.5 * a - cmath.sin(2.0 * k * a) / (4.0 * k))
    u_a = s.u_shell
    return abs(integral + 0.5j * u_a * u_a / k - 1.0)


def _sine_quotient(x: complex, a: float) -> complex:
    """sin(x a)/x with a series switch across the removable zero at x = 0."""
    u = x * a
    if abs(u) < _SINC_SWITCH:
        u2 = u * u
        return a * (1.0 - u2 / 6.0 * (1.0 - u2 / 20.0 * (1.0 - u2 / 42.0)))
    return cmath.sin(u) / x


def overlap_coefficient(init: InitialState, s: ResonantState,
                        conjugate_initial: bool = False) -> complex:
    """Overlap of the box state (or its conjugate) with a resonant state.

    The product-to-sum form of int_0^a sin(p r) sin(kappa r) dr is

        (1/2) [ sin((p-kappa)a)/(p-kappa) - sin((p+kappa)a)/(p+kappa) ],

    with p = q pi / a.  Near kappa = p the first quotient has a
    removable singularity handled by _sine_quotient.  Box states are
    real, so the conjugated-initial-state coefficient Cbar equals C;
    the flag exists so future complex initial states keep both routes.
    """
    if abs(init.a - s.a) > 1e-12 * s.a:
        raise DomainError("initial state and resonant state use different radii")
    p = init.wavenumber
    k = s.kappa
    integral = 0.5 * (_sine_quotient(p - k, s.a) - _sine_quotient(p + k, s.a))
    amp = math.sqrt(2.0 / init.a)
    # amplitude(r) is real: conjugation leaves the closed form unchanged
    del conjugate_initial
    return amp * s.A * integral


def expansion_coefficients(init: InitialState,
                           states: list[ResonantState]) -> ExpansionCoefficients:
    """C_n and Cbar_n for all supplied states, in pole order."""
    C = tuple(overlap_coefficient(init, s) for s in states)
    C_bar = tuple(overlap_coefficient(init, s, conjugate_initial=True)
                  for s in states)
    return ExpansionCoefficients(C=C, C_bar=C_bar, n_terms=len(C))


def sum_rule_check(coeffs: ExpansionCoefficients, n_terms: int | None = None) -> float:
    """Partial sum Re sum_{n<=n_terms} C_n Cbar_n (exactly 1 at n -> inf)."""
    if n_terms is None:
        n_terms = coeffs.n_terms
    if not 1 <= n_terms <= coeffs.n_terms:
        raise DomainError(f"n_terms must be in 1..{coeffs.n_terms}, got {n_terms}")
    return math.fsum((c * cb).real
                     for c, cb in zip(coeffs.C[:n_terms], coeffs.C_bar[:n_terms]))
