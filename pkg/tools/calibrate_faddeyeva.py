"""Calibration study for the region-switched Faddeyeva evaluator.

Generates the Weideman rational-approximation coefficients in high
precision (mpmath), tunes the continued-fraction depths per |z| band,
and measures the relative accuracy of the combined scheme against an
mpmath reference w(z) = exp(-z^2) erfc(-iz) at 50 digits.

Run:  python3 tools/calibrate_faddeyeva.py [--emit-coeffs]
"""

import argparse
import cmath
import math

import mpmath as mp
import numpy as np

mp.mp.dps = 50

SQRT_PI = math.sqrt(math.pi)


def w_ref(z: complex) -> complex:
    zm = mp.mpc(z)
    val = mp.exp(-zm * zm) * mp.erfc(-1j * zm)
    return complex(val)


# ----------------------------------------------------------------------
# Weideman coefficients (J.A.C. Weideman, SIAM J. Numer. Anal. 31 (1994))
# ----------------------------------------------------------------------

def weideman_coeffs_float(n_terms: int) -> tuple[float, np.ndarray]:
    big_l = math.sqrt(n_terms / math.sqrt(2.0))
    m2 = 2 * n_terms
    ind = np.arange(-m2 + 1, m2)
    theta = (math.pi / m2) * ind
    t = big_l * np.tan(0.5 * theta)
    fn = np.empty(ind.size + 1)
    fn[0] = 0.0
    fn[1:] = np.exp(-t * t) * (big_l * big_l + t * t)
    coefs = np.fft.fft(np.fft.fftshift(fn)).real / (2 * m2)
    coefs = np.flipud(coefs[1 : n_terms + 1])
    return big_l, coefs


def weideman_coeffs_mp(n_terms: int) -> tuple[float, np.ndarray]:
    """Same construction with the DFT done in 50-digit arithmetic."""
    big_l = mp.sqrt(n_terms / mp.sqrt(2))
    m2 = 2 * n_terms
    m4 = 4 * n_terms  # DFT length

    # fn in "fftshift-ed" layout directly: fftshift(x)[k] = x[(k + M/2) % M]
    fn = [mp.mpf(0)] * m4
    fn[0] = mp.mpf(0)  # placeholder; filled below like the float path
    raw = [mp.mpf(0)] * m4
    raw[0] = mp.mpf(0)
    for j, i in enumerate(range(-m2 + 1, m2)):
        th = mp.pi * i / m2
        t = big_l * mp.tan(th / 2)
        raw[j + 1] = mp.exp(-t * t) * (big_l * big_l + t * t)
    shifted = [raw[(k + m4 // 2) % m4] for k in range(m4)]
    coefs = []
    for k in range(1, n_terms + 1):
        acc = mp.mpf(0)
        for j in range(m4):
            acc += shifted[j] * mp.cos(2 * mp.pi * k * j / m4)
        coefs.append(acc / (2 * m2))
    coefs = list(reversed(coefs))
    return float(big_l), np.array([float(c) for c in coefs])


def w_weideman(z: complex, big_l: float, coefs: np.ndarray) -> complex:
    iz = 1j * z
    den = big_l - iz
    bigz = (big_l + iz) / den
    poly = 0.0 + 0.0j
    for c in coefs:
        poly = poly * bigz + c
    return 2.0 * poly / (den * den) + (1.0 / SQRT_PI) / den


# ----------------------------------------------------------------------
# Laplace continued fraction, fixed depth, backward recurrence
# ----------------------------------------------------------------------

def w_cf(z: complex, depth: int) -> complex:
    f = 0.0 + 0.0j
    for m in range(depth, 0, -1):
        f = (0.5 * m) / (z - f)
    return (1j / SQRT_PI) / (z - f)


# ----------------------------------------------------------------------
# Maclaurin series  w(z) = sum (iz)^k / Gamma(k/2 + 1)
# ----------------------------------------------------------------------

SERIES_COEF = np.array([1.0 / math.gamma(0.5 * k + 1.0) for k in range(96)])


def w_series(z: complex, n_terms: int = 96) -> complex:
    iz = 1j * z
    p = 1.0 + 0.0j
    acc = SERIES_COEF[0] + 0.0j
    for k in range(1, n_terms):
        p *= iz
        acc += SERIES_COEF[k] * p
    return acc


def rel_err(approx: complex, ref: complex) -> float:
    if ref == 0:
        return abs(approx - ref)
    return abs(approx - ref) / abs(ref)


def sample_ring(rmin, rmax, n_r=14, n_th=41):
    pts = []
    for r in np.linspace(rmin, rmax, n_r):
        for th in np.linspace(0.0, math.pi, n_th):
            z = r * cmath.exp(1j * th)
            if abs(z.imag) < 1e-300:
                z = complex(z.real, 0.0)
            pts.append(z)
    return pts


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--emit-coeffs", action="store_true")
    ap.add_argument("--n-weideman", type=int, default=64)
    args = ap.parse_args()

    nw = args.n_weideman
    lf, cf_f = weideman_coeffs_float(nw)
    lm, cf_m = weideman_coeffs_mp(nw)
    print(f"Weideman N={nw}: L={lm!r}; max |float-mp| coeff diff ="
          f" {np.max(np.abs(cf_f - cf_m)):.3e}")

    # --- series region
    worst = 0.0
    for z in sample_ring(0.05, 2.0):
        worst = max(worst, rel_err(w_series(z), w_ref(z)))
    print(f"series  |z|<=2   : max rel err {worst:.3e}")

    # --- Weideman annulus with mp coefficients
    for lo, hi in [(2.0, 4.0), (4.0, 6.0), (6.0, 8.0)]:
        worst = 0.0
        worst_z = None
        for z in sample_ring(lo, hi):
            e = rel_err(w_weideman(z, lm, cf_m), w_ref(z))
            if e > worst:
                worst, worst_z = e, z
        print(f"weideman {lo}-{hi}: max rel err {worst:.3e} at {worst_z}")

    # --- continued fraction depth tuning per band
    for lo, hi in [(8.0, 12.0), (12.0, 20.0), (20.0, 40.0), (40.0, 100.0),
                   (100.0, 1000.0)]:
        for depth in (6, 8, 10, 12, 16, 20, 24, 28, 32, 40, 48):
            worst = 0.0
            for z in sample_ring(lo, hi, n_r=8, n_th=25):
                worst = max(worst, rel_err(w_cf(z, depth), w_ref(z)))
            if worst < 3e-14:
                print(f"cf band {lo}-{hi}: depth {depth} -> {worst:.3e}")
                break
        else:
            print(f"cf band {lo}-{hi}: depth 48 -> {worst:.3e} (no depth met target)")

    if args.emit_coeffs:
        print(f"WEIDEMAN_L = {lm!r}")
        print("WEIDEMAN_COEF = np.array([")
        for c in cf_m:
            print(f"    {c!r},")
        print("])")


if __name__ == "__main__":
    main()
