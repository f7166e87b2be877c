"""Complex error (Faddeyeva) function and the transient functions built on it.

The Faddeyeva function

    w(z) = exp(-z^2) erfc(-iz)

is evaluated with a region-switched scheme in the upper half-plane:

* ``|z| <= 1``   Maclaurin series  w(z) = sum_k (iz)^k / Gamma(k/2 + 1)
* ``1 < |z| < 8``  rational approximation after the Moebius map
  Z = (L + iz)/(L - iz) with coefficients precomputed in 50-digit
  arithmetic (Weideman, SIAM J. Numer. Anal. 31, 1497 (1994))
* ``|z| >= 8``   Laplace continued fraction, fixed depth per band

Lower half-plane arguments are never evaluated directly: w grows there
like exp(|Im z|^2) and loses all significant digits.  Instead the
reflection identity w(z) = 2 exp(-z^2) - w(-z) is applied, with the
exponential checked against overflow before it is formed.

Measured accuracy against a 50-digit reference: <= 1e-15 relative for
Im z >= 0, <= 2e-14 relative in the lower half-plane away from the
zeros of w.

The transient (Moshinsky) function

    M(y) = (1/2) exp(i (r-a)^2 / 4t) w(iy),
    y    = exp(-i pi/4) (1/4t)^{1/2} [ (r-a) - 2 kappa t ],

carries all the time dependence of the resonant-state expansion.  For
Re y < 0 (the exponentially growing half-plane of w(iy)) it is folded
through

    M(y) = exp(i kappa (r-a) - i kappa^2 t) - M(-y),

so w only ever sees arguments with non-negative imaginary part and the
large term appears as a single explicit exponential whose exponent is
combined before exponentiation (its real part is negative behind a
proper-pole wavefront, so no intermediate overflow occurs).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ._faddeyeva_data import SERIES_COEF, WEIDEMAN_COEF, WEIDEMAN_L
from .errors import DomainError, FaddeyevaOverflowError

__all__ = [
    "faddeyeva",
    "TransientArgument",
    "transient_argument",
    "flip_argument",
    "transient_m",
    "transient_m_asymptotic",
    "transient_m_values",
]

_SQRT_PI = math.sqrt(math.pi)
_INV_SQRT_PI = 1.0 / _SQRT_PI
_EXP_ARG_MAX = 709.0  # log(DBL_MAX) with margin for the factor 2

# Continued-fraction depth, and large-|z| series coefficients
# (2k-1)!!/2^k, both calibrated in tools/calibrate_faddeyeva.py.
_CF_DEPTH = 12
_CF_END = 12.0
_LARGE_COEF = np.array([1.0, 0.5, 0.75, 1.875, 6.5625, 29.53125, 162.421875,
                        1055.7421875, 7918.06640625])

_EIGHTH_PI = cmath.exp(-0.25j * math.pi)  # e^{-i pi/4}


def _w_upper(z: np.ndarray) -> np.ndarray:
    """w(z) for an array with Im z >= 0 elementwise."""
    out = np.empty(z.shape, dtype=np.complex128)
    az = np.abs(z)

    small = az <= 1.0
    if np.any(small):
        iz = 1j * z[small]
        acc = np.full(iz.shape, SERIES_COEF[-1], dtype=np.complex128)
        for c in SERIES_COEF[-2::-1]:
            acc = acc * iz + c
        out[small] = acc

    mid = (~small) & (az < 8.0)
    if np.any(mid):
        iz = 1j * z[mid]
        den = WEIDEMAN_L - iz
        big = (WEIDEMAN_L + iz) / den
        poly = np.zeros(big.shape, dtype=np.complex128)
        for c in WEIDEMAN_COEF:
            poly = poly * big + c
        out[mid] = 2.0 * poly / (den * den) + _INV_SQRT_PI / den

    cf = (az >= 8.0) & (az < _CF_END)
    if np.any(cf):
        zz = z[cf]
        f = np.zeros(zz.shape, dtype=np.complex128)
        for m in range(_CF_DEPTH, 0, -1):
            f = (0.5 * m) / (zz - f)
        out[cf] = (1j * _INV_SQRT_PI) / (zz - f)

    far = az >= _CF_END
    if np.any(far):
        zz = z[far]
        inv2 = 1.0 / (zz * zz)
        acc = np.full(zz.shape, _LARGE_COEF[-1], dtype=np.complex128)
        for c in _LARGE_COEF[-2::-1]:
            acc = acc * inv2 + c
        out[far] = (1j * _INV_SQRT_PI) * acc / zz
    return out


def faddeyeva(z):
    """Faddeyeva function w(z) = exp(-z^2) erfc(-iz).

    Accepts a complex scalar or ndarray and returns the same shape.
    Raises DomainError on non-finite input and FaddeyevaOverflowError
    when the reflected exponential for Im z < 0 would overflow.
    """
    scalar = np.isscalar(z) or (isinstance(z, np.ndarray) and z.ndim == 0)
    za = np.asarray(z, dtype=np.complex128)
    flat = np.atleast_1d(za)
    if not np.all(np.isfinite(flat)):
        raise DomainError("faddeyeva: non-finite argument")

    lower = flat.imag < 0.0
    if np.any(lower):
        zl = flat[lower]
        # Re(-z^2) = Im(z)^2 - Re(z)^2 controls the size of 2 exp(-z^2)
        re_exp = zl.imag * zl.imag - zl.real * zl.real
        if np.any(re_exp > _EXP_ARG_MAX):
            bad = zl[np.argmax(re_exp)]
            raise FaddeyevaOverflowError(
                f"faddeyeva: 2*exp(-z^2) overflows for z = {bad}"
            )
        res = np.empty(flat.shape, dtype=np.complex128)
        res[~lower] = _w_upper(flat[~lower])
        res[lower] = 2.0 * np.exp(-zl * zl) - _w_upper(-zl)
    else:
        res = _w_upper(flat)

    if scalar:
        return complex(res[0])
    return res.reshape(za.shape)


@dataclass(frozen=True)
class TransientArgument:
    """Argument y of the transient function together with its context.

    y = exp(-i pi/4) (1/4t)^{1/2} [ dr - 2 kappa t ],  dr = r - a.

    The context (dr, t, kappa) is retained because both the phase
    prefactor of M and the reflection exponential need it.
    """

    y: complex
    dr: float
    t: float
    kappa: complex

    def __abs__(self) -> float:
        return abs(self.y)


def transient_argument(r: float, a: float, t: float,
                       kappa: complex) -> TransientArgument:
    """Build the transient argument for radius r, shell radius a, time t."""
    if t <= 0.0:
        raise DomainError(f"transient_argument: t must be positive, got {t}")
    if a <= 0.0:
        raise DomainError(f"transient_argument: a must be positive, got {a}")
    dr = r - a
    kappa = complex(kappa)
    y = _EIGHTH_PI * (dr - 2.0 * kappa * t) / (2.0 * math.sqrt(t))
    return TransientArgument(y=y, dr=dr, t=t, kappa=kappa)


def flip_argument(arg: TransientArgument) -> TransientArgument:
    """The argument -y; equivalent to flipping the signs of dr and kappa."""
    return TransientArgument(y=-arg.y, dr=-arg.dr, t=arg.t, kappa=-arg.kappa)


def transient_m(arg: TransientArgument) -> complex:
    """Transient function M(y) = (1/2) exp(i dr^2/4t) w(iy).

    Evaluated through the half-plane-stable path: for Re y < 0 the
    reflection M(y) = exp(i kappa dr - i kappa^2 t) - M(-y) is applied
    first, so w sees only arguments with Im >= 0.
    """
    y, dr, t, kappa = arg.y, arg.dr, arg.t, arg.kappa
    if y.real >= 0.0:
        return 0.5 * cmath.exp(0.25j * dr * dr / t) * faddeyeva(1j * y)
    exponent = 1j * kappa * dr - 1j * kappa * kappa * t
    if exponent.real > _EXP_ARG_MAX:
        raise FaddeyevaOverflowError(
            f"transient_m: exponential term overflows (exponent {exponent})"
        )
    return cmath.exp(exponent) - transient_m(flip_argument(arg))


def transient_m_values(kappa: complex, dr, t: float,
                       phase_prefactor: np.ndarray | None = None) -> np.ndarray:
    """Vectorized M over an array of radial offsets dr = r - a.

    Same mathematics as transient_m; one pole, many radii.  Used by the
    wavefunction grid paths where the per-pole constants are reused
    across the whole grid.  The pole-independent phase factor
    0.5 exp(i dr^2/4t) may be precomputed once per grid and passed in.
    """
    if t <= 0.0:
        raise DomainError(f"transient_m_values: t must be positive, got {t}")
    dr = np.asarray(dr, dtype=np.float64)
    kappa = complex(kappa)
    y = _EIGHTH_PI * (dr - 2.0 * kappa * t) / (2.0 * math.sqrt(t))
    if phase_prefactor is None:
        pref = 0.5 * np.exp(0.25j * dr * dr / t)
    else:
        pref = phase_prefactor

    out = np.empty(dr.shape, dtype=np.complex128)
    direct = y.real >= 0.0
    if np.any(direct):
        out[direct] = pref[direct] * faddeyeva(1j * y[direct])
    refl = ~direct
    if np.any(refl):
        exponent = 1j * kappa * dr[refl] - 1j * kappa * kappa * t
        if np.any(exponent.real > _EXP_ARG_MAX):
            raise FaddeyevaOverflowError(
                "transient_m_values: exponential term overflows"
            )
        out[refl] = np.exp(exponent) - pref[refl] * faddeyeva(-1j * y[refl])
    return out


# Coefficients (-1)^k (2k-1)!! / 2^k of the large-|y| expansion
# w(iy) ~ (1/sqrt(pi)) sum_k c_k / y^{2k+1}
_ASYMPTOTIC_COEF = (1.0, -0.5, 0.75, -1.875, 6.5625, -29.53125, 162.421875,
                    -1055.7421875)

MAX_ASYMPTOTIC_TERMS = len(_ASYMPTOTIC_COEF)


def transient_m_asymptotic(arg: TransientArgument, n_terms: int) -> complex:
    """Large-|y| expansion of the transient function.

    M(y) ~ (1/2) exp(i dr^2/4t) (1/sqrt(pi)) [ 1/y - 1/(2y^3) + 3/(4y^5) - ... ]

    The coefficients are the standard odd double factorials of the
    complementary-error-function expansion; the prefactor phase is the
    one that makes this agree with the exact path (exp(i dr^2/4t), the
    same as in M itself).  For Re y < 0 the same reflection as in the
    exact path is applied before expanding, since the plain series is
    only valid away from the growing half-plane.

    Requires |y| >= 8; with six terms the agreement with the exact path
    is below 1e-8 relative from |y| = 10 upward.
    """
    if not 1 <= n_terms <= MAX_ASYMPTOTIC_TERMS:
        raise DomainError(
            f"transient_m_asymptotic: n_terms must be in 1..{MAX_ASYMPTOTIC_TERMS}"
        )
    y = arg.y
    if abs(y) < 8.0:
        raise DomainError(
            f"transient_m_asymptotic: |y| = {abs(y):.3g} < 8; use transient_m"
        )
    if y.real < 0.0:
        exponent = 1j * arg.kappa * arg.dr - 1j * arg.kappa * arg.kappa * arg.t
        return cmath.exp(exponent) - transient_m_asymptotic(flip_argument(arg), n_terms)
    inv_y2 = 1.0 / (y * y)
    acc = 0.0 + 0.0j
    for c in _ASYMPTOTIC_COEF[n_terms - 1::-1]:
        acc = acc * inv_y2 + c
    series = acc / y
    return 0.5 * cmath.exp(0.25j * arg.dr * arg.dr / arg.t) * _INV_SQRT_PI * series
