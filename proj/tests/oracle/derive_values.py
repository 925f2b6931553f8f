#!/usr/bin/env python3
"""Reference values for the C++ tests, computed without the library.

Matsubara sums use mpmath; real-frequency integrals use scipy QUADPACK with
Cauchy principal-value and Fourier weights (the C++ engine instead folds the
atomic pole and integrates the oscillatory lambda integral per panel).
Prints one `name = value` line per quantity; the tests freeze these numbers.
"""

import math

import mpmath as mp
import numpy as np
from scipy import integrate

mp.mp.dps = 30

HBARC_EV_NM = 197.3269804
HBAR_EV_S = 6.582119569e-16
KB_EV_K = 8.617333262e-5
N_PER_EV2 = 1.602176634e-19 / (HBARC_EV_NM * 1e-9)
M_TO_INV_EV = 1e9 / HBARC_EV_NM
S_TO_INV_EV = 1.0 / HBAR_EV_S

WP, GAMMA = 8.9, 0.0357
ALPHA0 = 4.73e-29 * M_TO_INV_EV**3
OMEGA = HBAR_EV_S * 2.35e15


def eps(w):
    return 1 - WP**2 / (w * (w + 1j * GAMMA))


def kT(T):
    return KB_EV_K * T


def coth_half(T, w):
    return 1.0 if T == 0 else 1.0 / math.tanh(w / (2 * kT(T)))


def coth_diff(T1, T2, w):
    n = lambda T: 1.0 / math.expm1(w / kT(T))
    return 2 * (n(T1) - n(T2))


# ---- Matsubara equilibrium force (mpmath) ---------------------------------

def eq_force(z_m, T, wt=0.0):
    z = mp.mpf(z_m) * M_TO_INV_EV
    a0, W = mp.mpf(ALPHA0), mp.mpf(OMEGA)

    def h(xi):
        if xi == 0:
            rp0 = 1 if wt == 0 else None
            return -mp.mpf(3) / 4 * a0 * rp0 / z**4
        e = 1 + mp.mpf(WP)**2 / (xi**2 + GAMMA * xi + wt**2)
        al = a0 * W**2 / (W**2 + xi**2)

        def g(k):
            km = mp.sqrt(k**2 + (e - 1) * xi**2)
            rs = (k - km) / (k + km)
            rp = (e * k - km) / (e * k + km)
            return k * mp.exp(-2 * k * z) * ((2 * k**2 - xi**2) * rp - xi**2 * rs)

        return -al * mp.quad(g, [xi, xi + 1 / z, xi + 5 / z, xi + 20 / z, mp.inf])

    if T == 0:
        f = mp.quad(h, [0, 1 / z, 5 / z, 20 / z, mp.inf]) / mp.pi
    else:
        t = mp.mpf(kT(T))
        f = 2 * t * mp.nsum(lambda n: h(2 * mp.pi * t * n) * (mp.mpf(1) / 2 if n == 0 else 1), [0, mp.inf])
    return float(f) * N_PER_EV2


def perfect_mirror_check():
    # r_p = 1, r_s = -1, static alpha, T = 0: -3 alpha0 / (2 pi z^5)
    z = 5.0
    val = -1 / mp.pi * mp.quad(lambda xi: ALPHA0 * mp.quad(lambda k: k * mp.exp(-2 * k * z) * 2 * k**2, [xi, mp.inf]),
                               [0, mp.inf])
    return float(val / (-3 * ALPHA0 / (2 * mp.pi * z**5)))


# ---- real-frequency integrals (scipy) -------------------------------------

def fresnel(w, k):
    e = eps(w)
    kz = np.sqrt(complex(w * w - k * k))
    if kz.imag < 0:
        kz = -kz
    K = np.sqrt(e * w * w - k * k)
    if K.imag < 0:
        K = -K
    return (kz - K) / (kz + K), (e * kz - K) / (e * kz + K), kz


def ew_inner(w, z):
    """int_0^inf du u Im{[R_TE + (1 + 2u^2) R_TM] e^{-2 w z u}}"""

    def f(u):
        k = w * math.sqrt(1 + u * u)
        e = eps(w)
        kz = 1j * w * u
        K = w * np.sqrt(e - 1 - u * u)
        if K.imag < 0:
            K = -K
        rte = (kz - K) / (kz + K)
        rtm = (e * kz - K) / (e * kz + K)
        return u * ((rte + (1 + 2 * u * u) * rtm) * math.exp(-2 * w * z * u)).imag

    L = 1 / (2 * w * z)
    e = eps(w)
    pts = [0.1 * L, L, 5 * L]
    usp2 = (-1 / (e + 1)).real
    if usp2 > 0:
        pts += [f_ * math.sqrt(usp2) for f_ in (0.5, 0.9, 1.0, 1.1, 2.0)]
    top = 60 * L + 3 * max(pts)
    pts = sorted(p for p in pts if p < top)
    v, _ = integrate.quad(f, 0, top, points=pts, limit=2000, epsabs=0, epsrel=1e-12)
    return v


def pv_frequency_integral(g, z, w_top):
    """-(1/pi) PV int_0^w_top dw w^4 Re alpha(w) g(w), Re alpha = a0 W^2 / (W^2 - w^2)."""
    W = OMEGA
    # a0 W^2 / (W^2 - w^2) = -a0 W^2 / ((w - W)(w + W))
    core = lambda w: -ALPHA0 * W**2 * w**4 * g(w) / (w + W)
    pv, _ = integrate.quad(core, 0.5 * W, 1.5 * W, weight="cauchy", wvar=W, epsabs=0, epsrel=1e-11, limit=2000)
    full = lambda w: ALPHA0 * W**2 / (W**2 - w**2) * w**4 * g(w)
    wsp = WP / math.sqrt(2)
    brk = sorted(p for p in [wsp * 0.9, wsp * 0.99, wsp, wsp * 1.01, wsp * 1.1, WP, 2 * W] if 1.5 * W < p < w_top)
    lo, _ = integrate.quad(full, 0, 0.5 * W, epsabs=0, epsrel=1e-11, limit=2000)
    hi, _ = integrate.quad(full, 1.5 * W, w_top, points=brk, epsabs=0, epsrel=1e-11, limit=4000)
    return -(lo + pv + hi) / math.pi


def ew_force(z_m, T):
    z = z_m * M_TO_INV_EV
    w_top = max(20 * OMEGA, 20 * WP, 20 / z)
    return pv_frequency_integral(lambda w: coth_half(T, w) * ew_inner(w, z), z, w_top) * N_PER_EV2


def neq_ew(z_m, TM, TE):
    z = z_m * M_TO_INV_EV
    w_top = 80 * kT(max(TM, TE))
    W = OMEGA
    g = lambda w: coth_diff(TM, TE, w) * ew_inner(w, z)
    # the thermal window ends far below Omega: no principal value needed
    full = lambda w: ALPHA0 * W**2 / (W**2 - w**2) * w**4 * g(w)
    T = kT(max(TM, TE))
    v, _ = integrate.quad(full, 0, w_top, points=[T, 5 * T, 20 * T], epsabs=0, epsrel=1e-11, limit=2000)
    return -v / math.pi * N_PER_EV2


def neq_pw(TM, TE):
    W = mp.mpf(OMEGA)
    e = mp.mpc(eps(OMEGA))

    def integrand(q):
        d = e - q * q
        S = mp.sqrt(mp.re(d) + abs(d))
        a = mp.sqrt(1 - q * q)
        b = mp.sqrt(d)
        if mp.im(b) < 0:
            b = -b
        B = 1 / abs(a + b) ** 2 + (q * q + abs(d)) / abs(e * a + b) ** 2
        return q * a * S * B

    J = mp.quad(integrand, [0, 0.5, 0.9, 0.99, 1])
    val = ALPHA0 * W**5 / mp.sqrt(2) * coth_diff(TM, TE, OMEGA) * J
    return float(val) * N_PER_EV2


def dipole_force(z_m, T):
    z = z_m * M_TO_INV_EV
    w = OMEGA

    def pw(th):
        rte, rtm, kz = fresnel(w, w * math.sin(th))
        M = rte + rtm * (math.sin(th) ** 2 - math.cos(th) ** 2)
        return (math.sin(th) * math.cos(th) * M * np.exp(2j * kz * z)).real

    def ew(u):
        rte, rtm, kz = fresnel(w, w * math.sqrt(1 + u * u))
        return (u * (rte + (1 + 2 * u * u) * rtm) * math.exp(-2 * w * z * u)).real

    a, _ = integrate.quad(pw, 0, math.pi / 2, epsabs=0, epsrel=1e-12, limit=2000)
    e = eps(w)
    usp = math.sqrt((-1 / (e + 1)).real)
    b, _ = integrate.quad(ew, 0, 80 / (2 * w * z), points=[0.5 * usp, usp, 2 * usp], epsabs=0, epsrel=1e-12, limit=2000)
    ReF = w * w * (a + b)
    return -0.5 * ALPHA0 * w**3 * coth_half(T, w) * ReF * N_PER_EV2


def dyn_integral(z_m, tau_s, T=295.0):
    z = z_m * M_TO_INV_EV
    tau = tau_s * S_TO_INV_EV
    W = OMEGA
    beta = 1 / kT(T)

    def G(l):
        b = GAMMA * (tau + l) / WP**2
        k_scale = 1 / math.sqrt(b)
        f = lambda k: k**3 / math.tanh(beta * k / 2) * math.exp(-b * k * k) if k > 0 else 0.0
        v, _ = integrate.quad(f, 0, 10 * k_scale, epsabs=0, epsrel=1e-12, limit=200)
        return v

    # sin W(tau - l) = sin(W tau) cos(W l) - cos(W tau) sin(W l)
    c, _ = integrate.quad(G, 0, tau, weight="cos", wvar=W, epsabs=0, epsrel=1e-10, limit=2000)
    s, _ = integrate.quad(G, 0, tau, weight="sin", wvar=W, epsabs=0, epsrel=1e-10, limit=2000)
    lam = math.sin(W * tau) * c - math.cos(W * tau) * s
    P = -3 / (32 * math.pi**2) * ALPHA0 * W * GAMMA**2 / WP**4
    return P / z**3 * lam * N_PER_EV2


def medium_hadamard(w, T):
    """2 coth(beta w/2) Im g_ret for the Drude oscillator, 40 digits."""
    with mp.workdps(40):
        w = mp.mpf(w)
        g = 1 / (-w**2 - 1j * mp.mpf(GAMMA) * w)
        return float(2 * mp.coth(w / (2 * mp.mpf(KB_EV_K) * T)) * mp.im(g))


def poles(k):
    coeffs = [1, GAMMA, WP**2 + k * k, k * k * GAMMA, 0]
    return sorted(mp.polyroots(coeffs, maxsteps=200, extraprec=200), key=lambda r: (float(mp.im(r)), float(mp.re(r))))


def main():
    out = []
    out.append(("perfect_mirror_ratio", perfect_mirror_check()))
    out.append(("alpha0_eV3", ALPHA0))
    out.append(("omega_eV", OMEGA))
    out.append(("kT295_eV", kT(295)))
    for w in (0.1, 1.0, 5.0):
        e = eps(w)
        out.append((f"eps_re_{w}", e.real))
        out.append((f"eps_im_{w}", e.imag))
    out.append(("medium_hadamard_0.1_295", medium_hadamard(0.1, 295)))
    for q in (0.5, 2.0):
        rte, rtm, _ = fresnel(1.0, q)
        out += [(f"rte_re_q{q}", rte.real), (f"rte_im_q{q}", rte.imag), (f"rtm_re_q{q}", rtm.real), (f"rtm_im_q{q}", rtm.imag)]
    for i, r in enumerate(poles(1.0)):
        out += [(f"pole{i}_re", float(mp.re(r))), (f"pole{i}_im", float(mp.im(r)))]
    out.append(("eq_1um_295", eq_force(1e-6, 295)))
    out.append(("eq_1um_0", eq_force(1e-6, 0)))
    out.append(("eq_100nm_295", eq_force(1e-7, 295)))
    out.append(("dipole_1um_295", dipole_force(1e-6, 295)))
    out.append(("ew_1um_0", ew_force(1e-6, 0)))
    out.append(("ew_1um_295", ew_force(1e-6, 295)))
    out.append(("neq_ew_2um_400_295", neq_ew(2e-6, 400, 295)))
    out.append(("neq_pw_400_295", neq_pw(400, 295)))
    out.append(("dyn_1um_1us", dyn_integral(1e-6, 1e-6)))
    out.append(("dyn_1um_2us", dyn_integral(1e-6, 2e-6)))
    for name, v in out:
        print(f"{name} = {v:.16e}")


if __name__ == "__main__":
    main()
