#!/usr/bin/env python3
"""Independent high-precision values frozen into the unit tests.

Each block recomputes a quantity from its defining formula with mpmath
(dense grids and bisection where a root is needed) and prints it with 17
significant digits.
"""

import mpmath as mp

mp.mp.dps = 40


def show(name, v):
    if isinstance(v, mp.mpc):
        print(f"{name}: {mp.nstr(v.real, 17)} {mp.nstr(v.imag, 17)}")
    else:
        print(f"{name}: {mp.nstr(v, 17)}")


# ---- Coulomb, atomic units (hbar = m = e2 = 1) ----
def alpha_of(E):
    return mp.sqrt(-1 / (2 * mp.mpf(E)))


def coulomb_xi(E, Eref):
    a, b = alpha_of(E), alpha_of(Eref)
    return 2 * (mp.log(a / b) - mp.digamma(1 - a) + mp.digamma(1 - b) + 1 / (2 * b) - 1 / (2 * a))


def coulomb_xi_from_modes(E, Eref, x=mp.mpf("1e-12")):
    """Wronskian ratio built directly from the Whittaker modes near +0."""
    a, b = alpha_of(E), alpha_of(Eref)
    eta, kap = 1 / a, 1 / b
    psi = lambda t: mp.whitw(a, 0.5, 2 * eta * t)
    p1 = lambda t: mp.whitm(b, 0.5, 2 * kap * t) / (2 * kap)
    p2 = lambda t: -mp.gamma(1 - b) * mp.whitw(b, 0.5, 2 * kap * t)
    W = lambda f, g: f(x) * mp.diff(g, x) - mp.diff(f, x) * g(x)
    return W(psi, p2) / W(psi, p1)


show("coulomb sigma(alpha=2.5)", mp.rgamma(1 - mp.mpf(2.5)))
a, b = mp.mpf(0.5), mp.mpf(0.25)
show("coulomb xi(alpha=0.5,beta=0.25)",
     2 * (mp.log(a / b) - mp.digamma(1 - a) + mp.digamma(1 - b) + 1 / (2 * b) - 1 / (2 * a)))
mp.mp.dps = 30
show("coulomb xi via modes E=-0.3 Eref=-0.2", coulomb_xi_from_modes(-0.3, -0.2))
show("coulomb xi formula E=-0.3 Eref=-0.2", coulomb_xi(-0.3, -0.2))
mp.mp.dps = 40
show("coulomb phase(gamma=0.5)", mp.im(mp.loggamma(1 + 0.5j)))


def gam(E):
    return -1 / mp.sqrt(2 * mp.mpf(E))


def f_ref(E):
    g = gam(E)
    return 2 * mp.log(g) - mp.digamma(1 - 1j * g) - mp.digamma(1 + 1j * g)


show("coulomb rho(ref=2,Ek=1)", f_ref(2) - f_ref(1))
g = mp.mpf(0.5)
show("coulomb Omega(k=1,gamma=0.5,rho=0.2)",
     mp.mpc(1 * mp.exp(-mp.pi * g) * abs(mp.gamma(1 + 1j * g)) ** 2, 0.2))


def dense_roots(fun, lo, hi, n):
    xs = [lo + (hi - lo) * i / n for i in range(n + 1)]
    out = []
    prev = fun(xs[0])
    for x0, x1 in zip(xs, xs[1:]):
        cur = fun(x1)
        if prev * cur < 0 and abs(prev) < 50 and abs(cur) < 50:
            out.append(mp.findroot(fun, (x0, x1), solver="bisect"))
        prev = cur
    return out


# theta = pi/2, L0 = 1: w = sin + xi cos vanishes where xi = -1; scan in alpha
Eref = mp.mpf(-0.2)
w = lambda al: coulomb_xi(-1 / (2 * al * al), Eref) + 1
roots = dense_roots(w, mp.mpf("0.02"), mp.mpf("4.98"), 20000)
for r in roots[:4]:
    show("coulomb theta=pi/2 level", -1 / (2 * r * r))


# ---- oscillator + g/x^2, hbar = m = omega = 1 ----
def osc_xi(lam, a):
    a = mp.mpf(a)
    c1, c2 = 1 + a, 1 - a
    return 1 / (c2 - c1) * mp.gamma(c2) / mp.gamma(c1) * mp.gamma((c1 - lam) / 2) / mp.gamma((c2 - lam) / 2)


show("oscillator xi(lambda=0.9, a=0.75)", osc_xi(mp.mpf("0.9"), 0.75))
show("oscillator xi(lambda=-3.2, a=0.6)", osc_xi(mp.mpf("-3.2"), 0.6))

# theta+ = theta- = 2.0, L0 = 0.8: roots of sin + L0 xi cos on a dense grid
th, L0 = mp.mpf(2), mp.mpf("0.8")
w = lambda l: mp.sin(th / 2) + L0 * osc_xi(l, 0.75) * mp.cos(th / 2)
xs = [mp.mpf("-6.0003") + i * mp.mpf("0.001") for i in range(14001)]
found = []
prev = w(xs[0])
for x0, x1 in zip(xs, xs[1:]):
    cur = w(x1)
    if prev * cur < 0 and abs(prev) < 20 and abs(cur) < 20:
        found.append(mp.findroot(w, (x0, x1), solver="bisect"))
    prev = cur
for r in found[:4]:
    show("oscillator theta=2 L0=0.8 level", r)
