"""Regenerate the frozen arbitrary-precision test fixtures.

Every [derived] constant asserted in the test suite is computed here at
30 significant digits with mpmath and printed to 17 digits for freezing.
Not part of the package; requires the dev extra (mpmath).

Usage: python tools/derive_constants.py
"""

import mpmath as mp

mp.mp.dps = 30


def phi(p, x):
    return (1 - x**p) ** (mp.mpf(1) / p)


def phi_d1(p, x):
    return -(x ** (p - 1)) * (1 - x**p) ** (mp.mpf(1) / p - 1)


def phi_d2(p, x):
    return -(p - 1) * x ** (p - 2) * (1 - x**p) ** (mp.mpf(1) / p - 2)


def x_star(p):
    return ((2 - p) / (p + 1)) ** (mp.mpf(1) / p)


def m_of_p(p):
    return (2 - p) ** (1 - 2 / p) * (2 * p - 1) ** (1 / p - 2) * (p + 1) ** (1 + 1 / p)


def theta_star(p):
    return mp.atan(-1 / phi_d1(p, x_star(p)))


def base_phase(p):
    xs, th = x_star(p), theta_star(p)
    return mp.cos(th) * xs + mp.sin(th) * phi(p, xs)


def v_of_p(p):
    th = theta_star(p)
    return 1 / (mp.sqrt(mp.pi) * mp.sin(th) ** mp.mpf(1.5) * mp.sqrt((p - 1) * m_of_p(p)))


def curvature(p, x):
    return abs(phi_d2(p, x)) / (1 + phi_d1(p, x) ** 2) ** mp.mpf(1.5)


def fresnel_symmetric(m):
    # int_{-m}^m sin(x^2) dx in terms of the normalised Fresnel S
    return 2 * mp.sqrt(mp.pi / 2) * mp.fresnels(m * mp.sqrt(2 / mp.pi))


def ball_area(p):
    return 4 * mp.gamma(1 + 1 / p) ** 2 / mp.gamma(1 + 2 / p)


def show(label, value):
    print(f"{label:<28} = {mp.nstr(value, 17)}")


if __name__ == "__main__":
    p15 = mp.mpf("1.5")
    show("phi(1.5, 0.5)", phi(p15, mp.mpf("0.5")))
    show("phi_d1(1.5, x*)", phi_d1(p15, x_star(p15)))
    show("x_star(1.5)", x_star(p15))
    show("m(1.5)", m_of_p(p15))
    show("theta_star(1.5)", theta_star(p15))
    show("(p-1) m(p) at 1.5", (p15 - 1) * m_of_p(p15))
    show("min_curvature(1.5)", (p15 - 1) * 2 ** (1 / p15 - mp.mpf("0.5")))
    show("curvature(1.5, 0.5)", curvature(p15, mp.mpf("0.5")))
    show("base_phase(1.5)", base_phase(p15))
    show("v_of_p(1.5)", v_of_p(p15))
    show("v limit 2^(3/4)/(2 sqrt(pi))", 2 ** mp.mpf("0.75") / (2 * mp.sqrt(mp.pi)))
    show("area(B_1.5)", ball_area(p15))
    show("chi_l1(pi, 2pi) = -4/(3pi^3)", -4 / (3 * mp.pi**3))
    show("sqrt(pi/2)", mp.sqrt(mp.pi / 2))
    show("sqrt(2/pi)", mp.sqrt(2 / mp.pi))
    show("int_0^1 sin(10x) dx", (1 - mp.cos(10)) / 10)
    for r in (1, 10, 50, 100):
        show(f"J1({r})", mp.besselj(1, r))
    for m in ("0.5", "1", "2", "4", "10", "30", "100"):
        show(f"fresnel_symmetric({m})", fresnel_symmetric(mp.mpf(m)))
