"""Complex resonance poles of the s-wave delta-shell potential.

The potential V(r) = lambda * delta(r - a) has purely outgoing solutions
at complex wavenumbers kappa_n = alpha_n - i beta_n (fourth quadrant)
satisfying

    2 i kappa + lambda (exp(2 i kappa a) - 1) = 0.

For n pi << lambda a the roots are well approximated by

    kappa_n ~ (n pi / a)(1 - 1/(lambda a)) - i (1/a)(n pi/(lambda a))^2,

which seeds a damped Newton iteration.  The approximation degrades once
n pi is comparable to lambda a (the imaginary part then grows only
logarithmically, not quadratically), so higher poles are seeded by
linear continuation from the two previously converged poles instead.
Third-quadrant partners follow from time-reversal symmetry,
kappa_{-n} = -conj(kappa_n).
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

from .errors import BasinJumpError, DomainError, SolverError

__all__ = [
    "PotentialSpec",
    "Pole",
    "pole_equation",
    "pole_equation_prime",
    "initial_guess",
    "solve_poles",
    "mirror_pole",
    "residual_floor",
]

DEFAULT_TOL = 1e-12
MAX_NEWTON_ITERATIONS = 50
_ORIGIN_EXCLUSION = 1e-6  # reject iterates within this of kappa = 0 (units 1/a)
_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class PotentialSpec:
    """Delta-shell potential: intensity lam (1/length), radius a (length)."""

    lam: float
    a: float

    def __post_init__(self):
        if not (self.lam > 0.0 and math.isfinite(self.lam)):
            raise DomainError(f"potential intensity must be positive, got {self.lam}")
        if not (self.a > 0.0 and math.isfinite(self.a)):
            raise DomainError(f"potential radius must be positive, got {self.a}")
        if self.lam * self.a < 10.0:
            warnings.warn(
                f"lambda*a = {self.lam * self.a:.3g} < 10: the analytic pole "
                "seeds are unreliable in this regime",
                stacklevel=3,
            )

    @property
    def opacity(self) -> float:
        """Dimensionless strength lambda*a controlling seed quality."""
        return self.lam * self.a


@dataclass(frozen=True)
class Pole:
    """One fourth-quadrant resonance pole.

    kappa = alpha - i beta, energy = kappa^2 = E_n - i Gamma_n/2,
    residual = |pole_equation(kappa)| after convergence.
    """

    n: int
    kappa: complex
    residual: float

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"pole index must be >= 1, got {self.n}")
        if not (self.kappa.real > 0.0 and self.kappa.imag < 0.0):
            raise SolverError(
                f"pole {self.n} not in the fourth quadrant: {self.kappa}", n=self.n
            )

    @property
    def alpha(self) -> float:
        return self.kappa.real

    @property
    def beta(self) -> float:
        return -self.kappa.imag

    @property
    def energy(self) -> complex:
        return self.kappa * self.kappa

    @property
    def e_position(self) -> float:
        """Resonance energy E_n = Re(kappa^2)."""
        return self.energy.real

    @property
    def gamma(self) -> float:
        """Resonance width Gamma_n = -2 Im(kappa^2) = 4 alpha beta."""
        return -2.0 * self.energy.imag

    @property
    def is_proper(self) -> bool:
        """alpha > beta: the pole contributes an identifiable exponential."""
        return self.alpha > self.beta


def pole_equation(kappa: complex, spec: PotentialSpec) -> complex:
    """Left side of the pole condition 2 i kappa + lam (e^{2 i kappa a} - 1)."""
    kappa = complex(kappa)
    if not (math.isfinite(kappa.real) and math.isfinite(kappa.imag)):
        raise DomainError("pole_equation: non-finite kappa")
    return 2j * kappa + spec.lam * (cmath.exp(2j * kappa * spec.a) - 1.0)


def pole_equation_prime(kappa: complex, spec: PotentialSpec) -> complex:
    """Analytic derivative 2i + 2 i lam a e^{2 i kappa a} for Newton steps."""
    return 2j + 2j * spec.lam * spec.a * cmath.exp(2j * complex(kappa) * spec.a)


def initial_guess(n: int, spec: PotentialSpec) -> complex:
    """Analytic seed for the n-th pole (first correction in 1/(lambda a))."""
    if n < 1:
        raise DomainError(f"initial_guess: n must be >= 1, got {n}")
    x = n * math.pi / spec.opacity
    return complex(n * math.pi / spec.a * (1.0 - 1.0 / spec.opacity),
                   -x * x / spec.a)


def mirror_pole(p: Pole) -> complex:
    """Third-quadrant partner kappa_{-n} = -conj(kappa_n)."""
    return -p.kappa.conjugate()


def residual_floor(kappa: complex, spec: PotentialSpec) -> float:
    """Smallest raw residual achievable at a double-precision kappa.

    The root is generally not representable; the nearest double sits up
    to half an ulp away, so |pole_equation| cannot fall below roughly
    |f'(kappa)| * ulp(kappa) / 2 there, plus the evaluation roundoff of
    the equation itself.  Grows like n^2 along the pole ladder, which is
    why a fixed raw tolerance cannot hold for high pole indices.
    """
    kappa = complex(kappa)
    fp = abs(pole_equation_prime(kappa, spec))
    scale = 2.0 * abs(kappa) + spec.lam * (
        1.0 + abs(cmath.exp(2j * kappa * spec.a))
    )
    return _EPS * (fp * (abs(kappa.real) + abs(kappa.imag)) + 4.0 * scale)


def _newton(seed: complex, n: int, spec: PotentialSpec, tol: float) -> complex:
    """Damped Newton iteration with step halving on residual growth.

    Accepts an iterate once |f| < tol, or once step halving cannot
    improve it further while |f| is already at the double-precision
    residual floor.
    """
    kappa = seed
    f = pole_equation(kappa, spec)
    for _ in range(MAX_NEWTON_ITERATIONS):
        if abs(f) < tol:
            break
        step = -f / pole_equation_prime(kappa, spec)
        improved = False
        for _ in range(25):
            trial = kappa + step
            f_trial = pole_equation(trial, spec)
            if abs(f_trial) < abs(f):
                kappa, f = trial, f_trial
                improved = True
                break
            step *= 0.5
        if not improved:
            if abs(f) <= residual_floor(kappa, spec):
                break
            raise SolverError(
                f"pole {n}: damped Newton stalled at kappa = {kappa} with "
                f"|residual| = {abs(f):.3e} above the arithmetic floor",
                n=n, last_iterate=kappa,
            )
    else:
        if abs(f) > max(tol, residual_floor(kappa, spec)):
            raise SolverError(
                f"pole {n}: no convergence within {MAX_NEWTON_ITERATIONS} "
                f"iterations (|residual| = {abs(f):.3e})",
                n=n, last_iterate=kappa,
            )
    if abs(kappa) < _ORIGIN_EXCLUSION / spec.a:
        raise SolverError(
            f"pole {n}: converged to the trivial root kappa = 0",
            n=n, last_iterate=kappa,
        )
    return kappa


def solve_poles(spec: PotentialSpec, n_poles: int = 100,
                tol: float = DEFAULT_TOL) -> list[Pole]:
    """Poles n = 1..n_poles, ordered by increasing real part.

    Seeds come from initial_guess while n pi <= lambda a / 2 (its
    validity regime) and from linear continuation of the two previous
    poles beyond that.  A converged root farther than pi/(2a) from its
    seed indicates a basin jump and raises instead of silently
    reindexing.
    """
    if n_poles < 1:
        raise DomainError(f"solve_poles: n_poles must be >= 1, got {n_poles}")
    if tol <= 0.0:
        raise DomainError(f"solve_poles: tol must be positive, got {tol}")

    n_direct = max(2, int(0.5 * spec.opacity / math.pi))
    guard = 0.5 * math.pi / spec.a
    poles: list[Pole] = []
    kappas: list[complex] = []
    for n in range(1, n_poles + 1):
        if n <= n_direct or len(kappas) < 2:
            seed = initial_guess(n, spec)
        else:
            seed = 2.0 * kappas[-1] - kappas[-2]
        kappa = _newton(seed, n, spec, tol)
        if abs(kappa - seed) > guard:
            raise BasinJumpError(
                f"pole {n}: converged root {kappa} is {abs(kappa - seed):.3g} "
                f"away from its seed {seed} (> pi/2a); basin jump",
                n=n, last_iterate=kappa,
            )
        if kappas:
            gap = kappa.real - kappas[-1].real
            if gap <= 0.0 or abs(kappa - kappas[-1]) < 1e-8 * abs(kappa):
                raise SolverError(
                    f"pole {n}: ordering violated (previous {kappas[-1]}, "
                    f"found {kappa})",
                    n=n, last_iterate=kappa,
                )
        pole = Pole(n=n, kappa=kappa, residual=abs(pole_equation(kappa, spec)))
        if not pole.is_proper:
            warnings.warn(
                f"pole {n} is not proper (alpha <= beta): {kappa}", stacklevel=2
            )
        poles.append(pole)
        kappas.append(kappa)
    return poles
