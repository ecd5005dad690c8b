"""Adaptive panel quadrature for oscillatory integrands on an interval.

The engine uses an embedded 15-point Kronrod / 7-point Gauss pair per
panel.  The initial partition is seeded from a frequency hint (largest
phase rate r*max|psi'|), sized at ``panels_per_wavelength`` panels per
2*pi of phase; panels whose error estimate exceeds their share of the
tolerance are bisected until the summed estimate meets the target.
Everything is deterministic: panels are kept sorted and summed in
interval order, so repeated runs give bit-identical results.

Also provides evaluators for the two van der Corput bounds, the leading
stationary-phase magnitude and the symmetric Fresnel sine integral.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ._kernels import KRONROD_NODES, panel_sums_from_values

_MIN_PANEL_WIDTH = 1e-14
_STAGNANT_ROUNDS = 3


@dataclass(frozen=True)
class Phase:
    """A smooth phase psi with its first two derivatives.

    The callables must be finite on the open interval handed to any
    operation; endpoint singularities are the caller's business.
    """

    eval: Callable[[np.ndarray], np.ndarray]
    d1: Callable[[np.ndarray], np.ndarray]
    d2: Callable[[np.ndarray], np.ndarray]
    label: str = ""


@dataclass(frozen=True)
class QuadConfig:
    """Tolerances and budgets for one oscillatory integration."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    max_panels: int = 2**20
    endpoint_inset: float = 1e-6
    panels_per_wavelength: int = 8

    def __post_init__(self):
        if not (self.abs_tol > 0.0 and self.rel_tol > 0.0):
            raise ValueError("tolerances must be positive")
        if self.max_panels < 1:
            raise ValueError("max_panels must be at least 1")
        if not (0.0 < self.endpoint_inset <= 1e-3):
            raise ValueError("endpoint_inset must lie in (0, 1e-3]")
        if self.panels_per_wavelength < 4:
            raise ValueError("panels_per_wavelength must be at least 4")


@dataclass(frozen=True)
class QuadResult:
    value: float
    err_estimate: float
    panels_used: int


class QuadratureBudgetError(RuntimeError):
    """Tolerance not met within the panel budget (or at the roundoff floor)."""

    def __init__(self, message, partial_value, err_estimate, panels_used):
        super().__init__(message)
        self.partial_value = partial_value
        self.err_estimate = err_estimate
        self.panels_used = panels_used


class NonFiniteIntegrandError(RuntimeError):
    """Integrand returned a non-finite value."""

    def __init__(self, abscissa):
        super().__init__(f"integrand is not finite near x = {abscissa!r}")
        self.abscissa = abscissa


def _numpy_panel_sums(f):
    def panel_sums(lefts, rights):
        half = 0.5 * (rights - lefts)
        mid = 0.5 * (rights + lefts)
        x = mid[:, None] + half[:, None] * KRONROD_NODES[None, :]
        v = np.asarray(f(x), dtype=np.float64)
        return panel_sums_from_values(v, half)

    return panel_sums


def _locate_nonfinite(f, lefts, rights, k15, err):
    bad = ~(np.isfinite(k15) & np.isfinite(err))
    i = int(np.argmax(bad))
    if f is not None:
        half = 0.5 * (rights[i] - lefts[i])
        mid = 0.5 * (rights[i] + lefts[i])
        x = mid + half * KRONROD_NODES
        v = np.asarray(f(x), dtype=np.float64)
        j = np.argmax(~np.isfinite(v))
        return float(x[j])
    return float(0.5 * (lefts[i] + rights[i]))


def integrate_oscillatory(
    f: Optional[Callable],
    a: float,
    b: float,
    frequency_hint: float,
    cfg: Optional[QuadConfig] = None,
    *,
    initial_breaks=None,
    panel_sums=None,
) -> QuadResult:
    """Integrate f over [a, b] to the configured tolerance.

    ``f`` must accept an ndarray of abscissae and return the integrand
    values elementwise.  ``frequency_hint`` is an estimate of the largest
    phase rate, used only to size the initial uniform partition; callers
    with sharper knowledge may pass ``initial_breaks`` (a sorted array of
    panel boundaries from a to b) instead.  ``panel_sums`` overrides the
    node-evaluation kernel (signature: (lefts, rights) -> (k15, err));
    the specialised numba kernels plug in here.

    Raises QuadratureBudgetError carrying the partial value when the
    panel budget is exhausted or the estimate stalls at the roundoff
    floor, and NonFiniteIntegrandError with the offending abscissa when
    the integrand misbehaves.
    """
    cfg = cfg or QuadConfig()
    a = float(a)
    b = float(b)
    if not (a < b):
        raise ValueError("need a < b")
    if frequency_hint < 0.0 or not np.isfinite(frequency_hint):
        raise ValueError("frequency_hint must be finite and >= 0")
    if panel_sums is None:
        if f is None:
            raise ValueError("either f or panel_sums is required")
        panel_sums = _numpy_panel_sums(f)

    if initial_breaks is None:
        n0 = int(math.ceil(frequency_hint * cfg.panels_per_wavelength / (2.0 * math.pi)))
        n0 = max(1, min(n0, cfg.max_panels))
        breaks = np.linspace(a, b, n0 + 1)
    else:
        breaks = np.asarray(initial_breaks, dtype=np.float64)
        if breaks.ndim != 1 or breaks.size < 2 or np.any(np.diff(breaks) <= 0.0):
            raise ValueError("initial_breaks must be strictly increasing with >= 2 entries")
        if not (breaks[0] == a and breaks[-1] == b):
            raise ValueError("initial_breaks must span [a, b]")
        if breaks.size - 1 > cfg.max_panels:
            raise QuadratureBudgetError(
                "initial partition exceeds max_panels", 0.0, np.inf, breaks.size - 1
            )

    lefts = breaks[:-1]
    rights = breaks[1:]
    k15, err = panel_sums(lefts, rights)
    if not (np.all(np.isfinite(k15)) and np.all(np.isfinite(err))):
        raise NonFiniteIntegrandError(_locate_nonfinite(f, lefts, rights, k15, err))

    prev_err = math.inf
    stagnant = 0
    while True:
        total = float(np.sum(k15))
        total_err = float(np.sum(err))
        tol = max(cfg.abs_tol, cfg.rel_tol * abs(total))
        if total_err <= tol:
            return QuadResult(total, total_err, len(lefts))

        # no useful progress: the estimate sits at the roundoff floor
        stagnant = stagnant + 1 if total_err > 0.98 * prev_err else 0
        if stagnant >= _STAGNANT_ROUNDS:
            raise QuadratureBudgetError(
                f"error estimate stalled at {total_err:.3e} (tol {tol:.3e}); "
                "the requested tolerance sits below the attainable floor",
                total,
                total_err,
                len(lefts),
            )
        prev_err = total_err

        n = len(lefts)
        bad = (err > tol / (2.0 * n)) & ((rights - lefts) > _MIN_PANEL_WIDTH)
        if not bad.any():
            raise QuadratureBudgetError(
                "offending panels reached minimal width without meeting the tolerance",
                total,
                total_err,
                n,
            )
        if n + int(bad.sum()) > cfg.max_panels:
            raise QuadratureBudgetError(
                f"panel budget {cfg.max_panels} exhausted (err {total_err:.3e} > tol {tol:.3e})",
                total,
                total_err,
                n,
            )

        bl, br = lefts[bad], rights[bad]
        mids = 0.5 * (bl + br)
        new_l = np.concatenate([bl, mids])
        new_r = np.concatenate([mids, br])
        nk, ne = panel_sums(new_l, new_r)
        if not (np.all(np.isfinite(nk)) and np.all(np.isfinite(ne))):
            raise NonFiniteIntegrandError(_locate_nonfinite(f, new_l, new_r, nk, ne))

        lefts = np.concatenate([lefts[~bad], new_l])
        rights = np.concatenate([rights[~bad], new_r])
        k15 = np.concatenate([k15[~bad], nk])
        err = np.concatenate([err[~bad], ne])
        order = np.argsort(lefts, kind="stable")
        lefts, rights, k15, err = lefts[order], rights[order], k15[order], err[order]


def vdc_bound_first(r, lam):
    """First-derivative van der Corput bound 2/(r*lambda)."""
    if not (r > 0.0 and lam > 0.0):
        raise ValueError("r and lambda must be positive")
    return 2.0 / (r * lam)


def vdc_bound_second(r, lam):
    """Second-derivative van der Corput bound 6/sqrt(r*lambda)."""
    if not (r > 0.0 and lam > 0.0):
        raise ValueError("r and lambda must be positive")
    return 6.0 / math.sqrt(r * lam)


def stationary_phase_magnitude(r, lam):
    """Leading magnitude sqrt(pi)/sqrt(r*lambda) of int sin(r*psi).

    Valid when psi and psi' vanish at the stationary point and
    lambda = |psi''| there is also the minimum of |psi''|.
    """
    if not (r > 0.0 and lam > 0.0):
        raise ValueError("r and lambda must be positive")
    return math.sqrt(math.pi) / math.sqrt(r * lam)


_FRESNEL_SPLIT = 4.0
_FRESNEL_CFG = QuadConfig(abs_tol=1e-10, rel_tol=1e-10)


def _fresnel_sine_to(t):
    # int_0^t sin(x^2) dx = sum_k (-1)^k t^(4k+3) / ((2k+1)! (4k+3)), t <= split
    total = 0.0
    power = t**3
    t4 = t**4
    fact = 1.0
    k = 0
    while True:
        term = power / (fact * (4 * k + 3))
        total += -term if (k & 1) else term
        if term < 1e-17 * max(1.0, abs(total)):
            return total
        k += 1
        power *= t4
        fact *= (2 * k) * (2 * k + 1)


def fresnel_symmetric(m):
    """int_{-m}^{m} sin(x^2) dx; tends to sqrt(pi/2) with an O(1/m) tail.

    Series evaluation up to the split point, graded oscillatory
    quadrature beyond it (the naive series cancels catastrophically for
    large m).
    """
    m = float(m)
    if m < 0.0:
        raise ValueError("m must be >= 0")
    if m == 0.0:
        return 0.0
    if m <= _FRESNEL_SPLIT:
        return 2.0 * _fresnel_sine_to(m)
    head = _fresnel_sine_to(_FRESNEL_SPLIT)
    tail = integrate_oscillatory(
        lambda x: np.sin(x * x), _FRESNEL_SPLIT, m, frequency_hint=2.0 * m, cfg=_FRESNEL_CFG
    )
    return 2.0 * (head + tail.value)
