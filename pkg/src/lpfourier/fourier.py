"""Fourier transform of the l^p-ball indicator via 1-D reductions.

Normalization: chi_hat(alpha, beta) = (1/2pi) iint exp(-i(x alpha + y beta))
over the ball.  The transform is real and even in both arguments, and
symmetric under swapping alpha and beta, so frequencies reduce to the
canonical octant 0 <= alpha <= beta.  For beta > 0 the transform equals

    (2 / (pi beta)) * int_0^1 cos(alpha x) sin(beta phi_p(x)) dx

(x-slicing); swapping roles gives the y-slicing form, and in polar form
(alpha, beta) = r (cos t, sin t) the product splits into the two phases

    psi(x)  =  cos(t) x + sin(t) phi_p(x)
    psi~(x) = -cos(t) x + sin(t) phi_p(x)

giving chi_hat = (1/(pi r sin t)) int_0^1 [sin(r psi) + sin(r psi~)] dx.

Three independent cross-checks live here as well: the p = 1 closed form,
a Bessel J1 evaluated from its own integral representation for the disk,
and a brute-force 2-D tensor quadrature that never touches the adaptive
engine.
"""

import functools
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from . import _kernels, lpgeom
from .lpgeom import as_p
from .oscquad import Phase, QuadConfig, integrate_oscillatory

_BRUTEFORCE_MAX_FREQ = 50.0


@dataclass(frozen=True)
class Frequency:
    """A frequency-plane point carried in Cartesian and polar form."""

    alpha: float
    beta: float
    r: float
    theta: float

    @classmethod
    def from_cartesian(cls, alpha, beta):
        alpha = float(alpha)
        beta = float(beta)
        if not (np.isfinite(alpha) and np.isfinite(beta)):
            raise ValueError("frequency components must be finite")
        r = math.hypot(alpha, beta)
        theta = math.atan2(beta, alpha) if r > 0.0 else 0.0
        return cls(alpha, beta, r, theta)

    @classmethod
    def from_polar(cls, r, theta):
        r = float(r)
        theta = float(theta)
        if not (np.isfinite(r) and np.isfinite(theta)) or r < 0.0:
            raise ValueError("need finite r >= 0 and finite theta")
        return cls(r * math.cos(theta), r * math.sin(theta), r, theta)


def as_frequency(omega):
    """Coerce a Frequency or an (alpha, beta) pair."""
    if isinstance(omega, Frequency):
        return omega
    alpha, beta = omega
    return Frequency.from_cartesian(alpha, beta)


def reduce_symmetry(omega):
    """Canonical representative with 0 <= alpha <= beta.

    Value-preserving: the transform is even in each argument and
    symmetric under swapping them.
    """
    omega = as_frequency(omega)
    a, b = abs(omega.alpha), abs(omega.beta)
    if a > b:
        a, b = b, a
    return Frequency.from_cartesian(a, b)


@dataclass(frozen=True)
class TransformResult:
    value: float
    err_estimate: float
    method: str  # reduction-x | reduction-y | closed-l1 | zero-frequency


@dataclass(frozen=True)
class PhasePair:
    """The split-form phases psi, psi~ for one (p, theta)."""

    psi: Phase
    psi_tilde: Phase
    p: float
    theta: float


def psi_pair(p, theta):
    """Phases of the polar split, with derivatives wired to the closed forms."""
    p = as_p(p)
    theta = float(theta)
    ct, st = math.cos(theta), math.sin(theta)

    def make(sign, name):
        return Phase(
            eval=lambda x: sign * ct * np.asarray(x) + st * lpgeom.phi(p, x),
            d1=lambda x: sign * ct + st * lpgeom.phi_d1(p, x),
            d2=lambda x: st * lpgeom.phi_d2(p, x),
            label=f"{name}(p={p:g}, theta={theta:.12g})",
        )

    return PhasePair(psi=make(1.0, "psi"), psi_tilde=make(-1.0, "psi~"), p=p, theta=theta)


def lp_initial_breaks(p, alpha, beta, cfg):
    """Panel boundaries for int_0^1 cos(alpha x) sin(beta phi_p(x)) dx.

    Uniform panels sized for the interior phase rate alpha + beta, then
    geometric refinement toward x = 1, first until the remaining phase
    variation beta*phi(a) + alpha*(1-a) over the last panel drops below
    pi/2, then further until the crude tail bound beta*phi(a)*(1-a) is
    negligible against abs_tol.  The second stage keeps the Hoelder
    endpoint behaviour of phi out of the error estimator's blind spot:
    the whole tail panel contributes less than the tolerance outright.
    """
    p = as_p(p)
    rate = abs(alpha) + abs(beta)
    n0 = max(1, min(int(math.ceil(rate * cfg.panels_per_wavelength / (2.0 * math.pi))), 2**18))
    breaks = list(np.linspace(0.0, 1.0, n0 + 1))
    extra = []
    a = breaks[-2]
    tail_target = 0.1 * cfg.abs_tol
    while len(extra) < 200 and (1.0 - a) > 1e-13:
        tail_phase = beta * lpgeom.phi(p, a)
        if tail_phase + alpha * (1.0 - a) <= 0.5 * math.pi and tail_phase * (1.0 - a) <= tail_target:
            break
        a = 0.5 * (a + 1.0)
        extra.append(a)
    if extra:
        breaks = np.unique(np.concatenate([breaks, extra]))
    return np.asarray(breaks, dtype=np.float64)


def _reduction_integral(p, alpha, beta, cfg):
    # int_0^1 cos(alpha x) sin(beta phi_p(x)) dx with the specialised kernel
    breaks = lp_initial_breaks(p, alpha, beta, cfg)

    def panel_sums(lefts, rights):
        return _kernels.lp_cos_sin_panel_sums(lefts, rights, p, alpha, beta)

    f = lambda x: np.cos(alpha * x) * np.sin(beta * _kernels._phi_array(x, p))
    return integrate_oscillatory(
        f, 0.0, 1.0, alpha + beta, cfg, initial_breaks=breaks, panel_sums=panel_sums
    )


@functools.lru_cache(maxsize=128)
def _ball_area_quad(p, cfg):
    # no oscillation; grade toward x = 1 for the slope singularity only
    breaks = np.unique(np.concatenate([[0.0, 1.0], 1.0 - 2.0 ** -np.arange(1.0, 46.0)]))
    return integrate_oscillatory(
        lambda x: _kernels._phi_array(x, p), 0.0, 1.0, 0.0, cfg, initial_breaks=breaks
    )


def ball_area(p, cfg=None):
    """Area of the l^p ball as 4 int_0^1 phi_p, by graded quadrature."""
    return 4.0 * _ball_area_quad(as_p(p), cfg or QuadConfig()).value


def chi_hat_lp(p, omega, cfg=None):
    """chi_hat of the l^p ball at omega, by the 1-D x-slicing reduction.

    Zero frequency short-circuits to area/(2 pi).  The result records
    the evaluation path and the propagated quadrature error estimate.
    """
    p = as_p(p)
    cfg = cfg or QuadConfig()
    omega = reduce_symmetry(omega)
    if omega.r == 0.0:
        area = _ball_area_quad(p, cfg)
        scale = 4.0 / (2.0 * math.pi)
        return TransformResult(scale * area.value, scale * area.err_estimate, "zero-frequency")
    alpha, beta = omega.alpha, omega.beta  # beta >= alpha >= 0, beta > 0
    res = _reduction_integral(p, alpha, beta, cfg)
    scale = 2.0 / (math.pi * beta)
    return TransformResult(scale * res.value, scale * res.err_estimate, "reduction-x")


def chi_hat_lp_via_y(p, omega, cfg=None):
    """Same transform through the y-slicing form (2/(pi alpha)) int cos(beta y) sin(alpha phi).

    Requires alpha > 0 after reduction; used as the cross-check route.
    """
    p = as_p(p)
    cfg = cfg or QuadConfig()
    omega = reduce_symmetry(omega)
    alpha, beta = omega.alpha, omega.beta
    if alpha == 0.0:
        raise ValueError("y-slicing needs alpha != 0")
    res = _reduction_integral(p, beta, alpha, cfg)  # roles swapped
    scale = 2.0 / (math.pi * alpha)
    return TransformResult(scale * res.value, scale * res.err_estimate, "reduction-y")


def psi_split_integrals(p, r, theta, cfg=None):
    """The two polar-split integrals (int sin(r psi), int sin(r psi~)).

    Shares the graded partition of the reduction path; the two pieces
    are what the stationary-phase analysis bounds separately.
    """
    p = as_p(p)
    cfg = cfg or QuadConfig()
    r = float(r)
    theta = float(theta)
    if r <= 0.0:
        raise ValueError("need r > 0")
    ct, st = math.cos(theta), math.sin(theta)
    alpha, beta = r * ct, r * st
    breaks = lp_initial_breaks(p, abs(alpha), abs(beta), cfg)
    out = []
    for sign in (1.0, -1.0):

        def panel_sums(lefts, rights, s=sign):
            return _kernels.lp_phase_sin_panel_sums(lefts, rights, p, r, ct, st, s)

        f = lambda x, s=sign: np.sin(r * (s * ct * x + st * _kernels._phi_array(x, p)))
        out.append(
            integrate_oscillatory(
                f, 0.0, 1.0, abs(alpha) + abs(beta), cfg,
                initial_breaks=breaks, panel_sums=panel_sums,
            )
        )
    return out[0], out[1]


def chi_hat_lp_polar(p, r, theta, cfg=None):
    """chi_hat via the split form (1/(pi r sin theta)) int [sin(r psi) + sin(r psi~)].

    Differs from the reduction path only by a trig identity; agreement of
    the two routes is a consistency invariant of the build.
    """
    cfg = cfg or QuadConfig()
    res_psi, res_tilde = psi_split_integrals(p, r, theta, cfg)
    st = math.sin(float(theta))
    if st <= 0.0:
        raise ValueError("polar path needs sin(theta) > 0")
    scale = 1.0 / (math.pi * r * st)
    return TransformResult(
        scale * (res_psi.value + res_tilde.value),
        scale * (res_psi.err_estimate + res_tilde.err_estimate),
        "reduction-x",
    )


def _sin_over(x):
    x = np.asarray(x, dtype=np.float64)
    out = np.ones_like(x)
    nz = x != 0.0
    out[nz] = np.sin(x[nz]) / x[nz]
    return out


def chi_hat_l1_closed(omega):
    """Closed form for the diamond: -2(cos b - cos a)/(pi (b^2 - a^2)).

    Evaluated in the cancellation-free product form
    (1/pi) * sinc((a+b)/2) * sinc((b-a)/2), which also carries the
    removable a = b diagonal (limit sin(b)/(pi b)) and the zero-frequency
    value area/(2 pi) = 1/pi.
    """
    omega = reduce_symmetry(omega)
    s = 0.5 * (omega.alpha + omega.beta)
    d = 0.5 * (omega.beta - omega.alpha)
    return float(_sin_over(s) * _sin_over(d) / math.pi)


def chi_hat_l1_bound(omega):
    """The coarse diamond bound (2/pi) / |omega|."""
    omega = as_frequency(omega)
    if omega.r == 0.0:
        raise ValueError("bound needs |omega| > 0")
    return 2.0 / (math.pi * omega.r)


@functools.lru_cache(maxsize=8)
def _gl_rule(n):
    return leggauss(n)


def _composite_gl_nodes(breaks, n_per_panel=8):
    xg, wg = _gl_rule(n_per_panel)
    l, r = breaks[:-1], breaks[1:]
    half = 0.5 * (r - l)[:, None]
    mid = 0.5 * (r + l)[:, None]
    return (mid + half * xg[None, :]).ravel(), (half * wg[None, :]).ravel()


def bruteforce_parts(p, omega, grid_n=2000):
    """Direct 2-D tensor quadrature of (1/2pi) iint e^{-i(x a + y b)} over the ball.

    Independent of the adaptive engine: composite Gauss-Legendre in both
    directions on a fixed, symmetric partition of [-1, 1] with geometric
    refinement toward the slope singularities at x = +-1.  Returns
    (real part, imaginary part); no symmetry reduction is applied, so the
    imaginary part is an honest numerical zero.

    Certified for |omega| <= 50 only.
    """
    p = as_p(p)
    omega = as_frequency(omega)
    if omega.r > _BRUTEFORCE_MAX_FREQ:
        raise ValueError(f"brute-force oracle is limited to |omega| <= {_BRUTEFORCE_MAX_FREQ}")
    if grid_n < 64:
        raise ValueError("grid_n too small")
    alpha, beta = omega.alpha, omega.beta

    nseg = max(16, grid_n // 8)
    base = np.linspace(-1.0, 1.0, nseg + 1)
    w0 = base[1] - base[0]
    edge = w0 * 0.5 ** np.arange(1.0, 46.0)
    breaks = np.unique(np.concatenate([base, -1.0 + edge, 1.0 - edge]))
    x, wx = _composite_gl_nodes(breaks)
    ph = _kernels._phi_array(np.abs(x), p)

    t_breaks = np.linspace(-1.0, 1.0, max(8, grid_n // 8) + 1)
    t, wt = _composite_gl_nodes(t_breaks)
    # vertical slice y = t*phi(x): weight picks up the slice half-height
    phase = alpha * x[:, None] + beta * np.outer(ph, t)
    re_slices = (np.cos(phase) @ wt) * ph
    im_slices = (np.sin(phase) @ wt) * ph
    re = float((re_slices @ wx) / (2.0 * math.pi))
    im = float(-(im_slices @ wx) / (2.0 * math.pi))
    return re, im


def chi_hat_bruteforce(p, omega, grid_n=2000):
    """Real part of the brute-force transform; checks the imaginary part is ~0."""
    re, im = bruteforce_parts(p, omega, grid_n)
    if abs(im) > 1e-8:
        raise ArithmeticError(f"brute-force imaginary part {im:.3e} not negligible")
    return re


_J1_CFG = QuadConfig(abs_tol=1e-12, rel_tol=1e-12, panels_per_wavelength=10)


def bessel_j1_oracle(r):
    """J1(r) from the integral representation (1/pi) int_0^pi cos(t - r sin t) dt.

    Deliberately not a closed-form or library evaluation: an independent
    route for the disk cross-check, run at its own tight tolerances.
    """
    r = float(r)
    res = integrate_oscillatory(
        lambda t: np.cos(t - r * np.sin(t)), 0.0, math.pi, 1.0 + abs(r), _J1_CFG
    )
    return res.value / math.pi


def chi_hat_disk_oracle(r):
    """Disk transform J1(r)/r, with the r -> 0 limit 1/2."""
    r = float(r)
    if r == 0.0:
        return 0.5
    return bessel_j1_oracle(r) / r
