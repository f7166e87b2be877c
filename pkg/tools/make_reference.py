"""Generate frozen high-precision reference values for the test suite.

All quantities are computed with mpmath at 50 digits, independently of
the library code paths:

* w(z) from exp(-z^2) erfc(-iz) (mpmath erfc);
* the transient function from its defining contour integral,
  numerically integrated along the steepest-descent line through the
  saddle k0 = dr/(2t) (plus the residue when the pole lies between the
  real axis and that line);
* poles from mpmath.findroot on the pole equation;
* amplitudes/coefficients from the closed forms, cross-checked against
  direct mpmath quadrature of the defining integrals.

Writes tests/data/reference.json.  Rerunning is deterministic.
"""

import json
import os

import mpmath as mp

mp.mp.dps = 50

OUT = os.path.join(os.path.dirname(__file__), "..", "tests", "data",
                   "reference.json")


def c2l(z) -> list[float]:
    z = mp.mpc(z)
    return [float(mp.re(z)), float(mp.im(z))]


def w_ref(z):
    z = mp.mpc(z)
    return mp.exp(-z * z) * mp.erfc(-1j * z)


def transient_m_ref(r, a, t, kappa, extra_dps=0):
    """M from the defining contour integral (independent of w)."""
    with mp.workdps(50 + extra_dps):
        dr = mp.mpf(r) - mp.mpf(a)
        t = mp.mpf(t)
        kappa = mp.mpc(kappa)
        k0 = dr / (2 * t)
        ray = mp.exp(-1j * mp.pi / 4)
        pref = (1j / (2 * mp.pi)) * mp.exp(1j * dr * dr / (4 * t)) * ray

        def integrand(s):
            return mp.exp(-s * s * t) / (k0 + ray * s - kappa)

        val = pref * mp.quad(integrand, [-mp.inf, 0, mp.inf])
        v = kappa - k0
        ang = mp.arg(v)
        if -mp.pi / 4 < ang < 0:
            val += mp.exp(1j * kappa * dr - 1j * kappa * kappa * t)
        return val


def m_closed(r, a, t, kappa):
    dr = mp.mpf(r) - mp.mpf(a)
    y = mp.exp(-1j * mp.pi / 4) * (dr - 2 * mp.mpc(kappa) * mp.mpf(t)) \
        / (2 * mp.sqrt(mp.mpf(t)))
    return mp.mpf("0.5") * mp.exp(1j * dr * dr / (4 * mp.mpf(t))) * w_ref(1j * y)


def solve_poles_mp(lam, a, n_max):
    lam, a = mp.mpf(lam), mp.mpf(a)
    f = lambda k: 2j * k + lam * (mp.exp(2j * k * a) - 1)
    out = []
    prev = prev2 = None
    for n in range(1, n_max + 1):
        if n * mp.pi <= 0.5 * lam * a or prev2 is None:
            seed = n * mp.pi / a * (1 - 1 / (lam * a)) \
                - 1j / a * (n * mp.pi / (lam * a)) ** 2
        else:
            seed = 2 * prev - prev2
        k = mp.findroot(f, seed)
        assert mp.re(k) > 0 and mp.im(k) < 0, (n, k)
        out.append(k)
        prev2, prev = prev, k
    return out


def state_amplitudes(k, a):
    br = a / 2 - mp.sin(2 * k * a) / (4 * k) + 1j * mp.sin(k * a) ** 2 / (2 * k)
    A = 1 / mp.sqrt(br)
    if mp.re(A) < 0 or (mp.re(A) == 0 and mp.im(A) < 0):
        A = -A
    B = A * mp.sin(k * a) * mp.exp(-1j * k * a)
    return A, B


def overlap(q, k, A, a):
    p = q * mp.pi / a

    def quotient(x):
        return mp.sin(x * a) / x if abs(x * a) > mp.mpf("1e-30") else a

    return mp.sqrt(2 / a) * A * (quotient(p - k) - quotient(p + k)) / 2


def main() -> None:
    data = {}

    # ---- scalar special values
    data["erfc_one"] = float(mp.erfc(1))
    data["e_erfc_one"] = float(mp.e * mp.erfc(1))

    # ---- Faddeyeva reference points across all evaluation regions
    pts = [
        0.3 + 0.2j, 0.9j, -0.7 + 0.6j, 1.0 + 0.0j,          # series
        1.5 + 0.4j, 2.5 + 1.0j, -3.0 + 0.5j, 4.0 + 0.0j,
        6.0 + 2.0j, 7.9 + 0.05j,                             # rational
        8.5 + 0.0j, 9.0 + 4.0j, -10.0 + 1.0j, 11.5 + 0.1j,   # continued fraction
        15.0 + 0.0j, 40.0 + 7.0j, -120.0 + 30.0j, 300.0 + 0.2j,  # large-z series
        0.5 - 0.3j, -2.0 - 1.0j, 3.0 - 2.0j, 9.0 - 2.5j,     # lower half-plane
        12.0 - 11.0j,
    ]
    data["faddeyeva"] = [{"z": c2l(z), "w": c2l(w_ref(z))} for z in pts]

    # ---- transient function from the contour integral
    # validate the oracle first: mirror pole (no residue ambiguity)
    k_m = mp.mpc(-2.0, -0.5)
    check = abs(transient_m_ref(1.5, 1.0, 0.8, k_m) - m_closed(1.5, 1.0, 0.8, k_m))
    assert check < mp.mpf("1e-40"), check
    # continuity across the residue wedge boundary
    for eps in (mp.mpf("1e-8"), -mp.mpf("1e-8")):
        kk = (mp.mpf(3.0) + eps) * mp.exp(-1j * mp.pi / 8)
        lo = transient_m_ref(1.0, 1.0, 0.7, kk)
        hi = m_closed(1.0, 1.0, 0.7, kk)
        assert abs(lo - hi) < mp.mpf("1e-35"), (eps, abs(lo - hi))

    m_cases = [
        # (r, a, t, kappa, extra_dps)
        (1.5, 1.0, 0.8, 2.0 - 0.5j, 0),      # proper pole, behind the front
        (1.0, 1.0, 2.0, 3.0 - 0.05j, 0),     # at the shell
        (1.0, 1.0, 2.0, -3.0 - 0.05j, 0),    # mirror partner
        (30.0, 1.0, 0.5, 1.0 - 0.3j, 220),   # |y| ~ 20, far ahead of the front
        (2.0, 1.0, 1000.0, 0.5 - 0.2j, 0),   # long time, reflected path
        (1.2, 1.0, 1e-3, 5.0 - 1.0j, 20),    # short time, |y| ~ 15
        (4.0, 1.0, 0.02, 6.0 - 2.0j, 120),   # strongly improper pole
    ]
    rows = []
    for r, a, t, kap, extra in m_cases:
        val = transient_m_ref(r, a, t, kap, extra_dps=extra)
        closed = m_closed(r, a, t, kap)
        rel = abs(val - closed) / abs(closed)
        assert rel < mp.mpf("1e-30"), (r, a, t, kap, rel)
        rows.append({"r": r, "a": a, "t": t, "kappa": c2l(kap), "M": c2l(val)})
    data["transient_m"] = rows

    # ---- poles
    ks100 = solve_poles_mp(100, 1, 100)
    data["poles_lam100_a1"] = [c2l(k) for k in ks100]
    data["poles_lam1000_a1"] = [c2l(k) for k in solve_poles_mp(1000, 1, 3)]
    data["gamma_1"] = float(-2 * mp.im(ks100[0] ** 2))
    data["tau"] = float(-1 / (2 * mp.im(ks100[0] ** 2)))

    # ---- states and coefficients at lambda = 100, a = 1
    a = mp.mpf(1)
    sel = [1, 2, 5, 10, 50, 100]
    states = {}
    for n in sel:
        k = ks100[n - 1]
        A, B = state_amplitudes(k, a)
        # cross-check the closed-form normalization by quadrature
        norm = mp.quad(lambda rr: (A * mp.sin(k * rr)) ** 2, [0, a]) \
            + 1j * (A * mp.sin(k * a)) ** 2 / (2 * k)
        assert abs(norm - 1) < mp.mpf("1e-40"), (n, abs(norm - 1))
        entry = {"A": c2l(A), "B": c2l(B)}
        for q in (1, 2):
            C = overlap(q, k, A, a)
            Cq = mp.quad(
                lambda rr: mp.sqrt(2 / a) * mp.sin(q * mp.pi * rr / a)
                * A * mp.sin(k * rr), [0, a])
            assert abs(C - Cq) < mp.mpf("1e-40") * max(1, abs(C)), (n, q)
            entry[f"C_q{q}"] = c2l(C)
        states[str(n)] = entry
    data["states_lam100_a1"] = states

    # ---- sum-rule partials
    sums = {}
    for q in (1, 2):
        tot = mp.mpf(0)
        marks = {}
        for i, k in enumerate(ks100, start=1):
            A, _ = state_amplitudes(k, a)
            C = overlap(q, k, A, a)
            tot += mp.re(C * C)
            if i in (1, 2, 25, 50, 100):
                marks[str(i)] = float(tot)
        sums[f"q{q}"] = marks
    data["sum_rule_partials"] = sums
    data["c1c1bar_q1"] = sums["q1"]["1"]

    os.makedirs(os.path.dirname(OUT), exist_ok=True)
    with open(OUT, "w") as fh:
        json.dump(data, fh, indent=1)
        fh.write("\n")
    print(f"wrote {OUT}")
    print(f"tau = {data['tau']!r}, Gamma_1 = {data['gamma_1']!r}")
    print(f"Re C1*C1bar (q=1) = {data['c1c1bar_q1']!r}")


if __name__ == "__main__":
    main()
