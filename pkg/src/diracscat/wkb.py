"""Leading-order semiclassical predictions and the real-axis correction series.

The analytic symbols multiplying the leading terms are not computable from
the asymptotic statements, so each prediction carries only an error order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson

from .errors import HypothesisError, RegionError
from .model import CustomProfile, PhysicalParams, PotentialProfile
from .phase import (classical_action, phase_T, phase_T0, phase_Ttilde, q_integral)
from .spectral import EnergyRegion, classify_energy, find_turning_points

__all__ = [
    "WkbPrediction",
    "WkbSeriesResult",
    "predict_klein",
    "predict_zero_mass",
    "predict_total_transmission",
    "predict_total_reflection",
    "wkb_series",
    "mirror_profile",
    "MAX_SERIES_ORDER",
    "reduce_angle",
]

MAX_SERIES_ORDER = 8
TWO_PI = 2.0 * math.pi

O_H = "O(h)"
O_EXP = "O(e^{-C/h})"


def reduce_angle(phi: float) -> float:
    """``phi mod 2 pi`` in ``[0, 2 pi)``; non-finite input passes through."""
    if not math.isfinite(phi):
        return phi
    r = phi % TWO_PI
    return 0.0 if r >= TWO_PI else r


@dataclass(frozen=True)
class WkbPrediction:
    """``leading_phase`` is reduced to ``[0, 2 pi)``; ``phase_unreduced`` keeps the winding."""

    quantity: str
    leading_modulus: float
    leading_phase: float
    error_order: str
    phase_unreduced: float

    @classmethod
    def make(cls, quantity, modulus, phase, order):
        return cls(quantity, modulus, reduce_angle(phase), order, phase)

    def phase_defect(self, value: complex) -> float:
        """Distance on the circle between ``arg(value)`` and the predicted phase."""
        d = (np.angle(value) - self.phase_unreduced) % TWO_PI
        return float(min(d, TWO_PI - d))


@dataclass(frozen=True)
class WkbSeriesResult:
    n_max: int
    w_even_partial: complex
    w_odd_partial: complex
    interval: tuple[float, float]


def mirror_profile(profile: PotentialProfile) -> PotentialProfile:
    """``x -> -V(-x)``: swaps regions IV/II and V/I when combined with ``E -> -E``."""
    return CustomProfile(lambda x: -profile(-np.asarray(x)),
                         lambda x: profile.deriv(-np.asarray(x)),
                         -profile.v_plus, -profile.v_minus, profile.K, profile.delta,
                         monotone=profile.monotone)


def _require(region, allowed, E):
    if region not in allowed:
        names = ", ".join(str(r) for r in allowed)
        raise RegionError(f"E={E} is in region {region}; prediction needs {names}")


def predict_klein(params: PhysicalParams, profile: PotentialProfile, E: float):
    """``(s11, s21, s12)`` leading terms in the Klein zone."""
    if params.m <= 0:
        raise HypothesisError("Klein-zone formulas need m > 0")
    _require(classify_energy(params, profile, E), (EnergyRegion.III,), E)
    tps = find_turning_points(params, profile, E)
    t1, t2 = tps[0].location, tps[-1].location
    h = params.h
    S = classical_action(params, profile, E)
    T = phase_T(params, profile, E)
    c2 = params.c**2
    root_m = math.sqrt(((profile.v_minus - E) ** 2 - params.mc2**2) / c2)
    root_p = math.sqrt(((profile.v_plus - E) ** 2 - params.mc2**2) / c2)
    qm = q_integral(params, profile, E, "-")
    qp = q_integral(params, profile, E, "+")
    s11 = WkbPrediction.make("s11", math.exp(-S / h), T / h, O_H)
    s21 = WkbPrediction.make("s21", 1.0, math.pi / 2 + 2.0 / h * (t1 * root_m + qm), O_H)
    s12 = WkbPrediction.make("s12", 1.0, math.pi / 2 + 2.0 / h * (t2 * root_p - qp), O_H)
    return s11, s21, s12


def predict_zero_mass(profile: PotentialProfile, E: float, c: float, h: float):
    """Massless case: ``s11`` is unimodular with phase ``T0/h``; off-diagonal entries are ``O(h)``."""
    T0 = phase_T0(profile, E, c)
    s11 = WkbPrediction.make("s11", 1.0, T0 / h, O_H)
    s21 = WkbPrediction.make("s21", 0.0, math.nan, O_H)
    s12 = WkbPrediction.make("s12", 0.0, math.nan, O_H)
    return s11, s21, s12


def predict_total_transmission(params: PhysicalParams, profile: PotentialProfile, E: float):
    """Unimodular ``s11`` with phase ``T~/h`` in region I and ``-T~/h`` in region V."""
    region = classify_energy(params, profile, E)
    _require(region, (EnergyRegion.I, EnergyRegion.V), E)
    if find_turning_points(params, profile, E):
        raise HypothesisError(f"turning points present at E={E}")
    Tt = phase_Ttilde(params, profile, E)
    # below both continua every momentum enters with the opposite sign
    sgn = -1.0 if region is EnergyRegion.V else 1.0
    s11 = WkbPrediction.make("s11", 1.0, sgn * Tt / params.h, O_H)
    s21 = WkbPrediction.make("s21", 0.0, math.nan, O_EXP)
    s12 = WkbPrediction.make("s12", 0.0, math.nan, O_EXP)
    return s11, s21, s12


def predict_total_reflection(params: PhysicalParams, profile: PotentialProfile, E: float):
    """``(alpha_out, beta_d)`` for the bounded solution in region II (IV by mirroring)."""
    if params.m <= 0:
        raise HypothesisError("total reflection needs m > 0")
    region = classify_energy(params, profile, E)
    _require(region, (EnergyRegion.II, EnergyRegion.IV), E)
    mirrored = region is EnergyRegion.IV
    if mirrored:
        profile, E = mirror_profile(profile), -E
    tps = find_turning_points(params, profile, E)
    if len(tps) != 1 or not tps.simple:
        raise HypothesisError(f"need one simple turning point, found {list(tps)}")
    t1 = tps[0].location
    h, c2 = params.h, params.c**2
    root_m = math.sqrt(((profile.v_minus - E) ** 2 - params.mc2**2) / c2)
    kappa_p = math.sqrt((params.mc2**2 - (profile.v_plus - E) ** 2) / c2)
    qm = q_integral(params, profile, E, "-")
    qk = q_integral(params, profile, E, "+")  # int_{t1}^inf (kappa - kappa+)
    wind = qm + root_m * t1
    modulus = math.exp((-qk + kappa_p * t1) / h)
    if mirrored:
        # charge-conjugate image: windings reverse and the beta tag moves to -3pi/4
        alpha = WkbPrediction.make("alpha_out_plus", 1.0, -math.pi / 2 - 2.0 / h * wind, O_H)
        beta = WkbPrediction.make("beta_d_minus", modulus, -3 * math.pi / 4 - wind / h, O_H)
        return alpha, beta
    alpha = WkbPrediction.make("alpha_out_minus", 1.0, -math.pi / 2 + 2.0 / h * wind, O_H)
    beta = WkbPrediction.make("beta_d_plus", modulus, math.pi / 4 + wind / h, O_H)
    return alpha, beta


def _cumint(y, xs):
    # cumulative_simpson is real-only
    return (cumulative_simpson(y.real, x=xs, initial=0.0)
            + 1j * cumulative_simpson(y.imag, x=xs, initial=0.0))


def wkb_series(params: PhysicalParams, profile: PotentialProfile, E: float,
               interval: tuple[float, float], n_max: int, sign: str = "+",
               points_per_wavelength: int = 64) -> WkbSeriesResult:
    """Partial sums ``sum_{n<=n_max} w_{2n}`` and ``sum_{n<=n_max} w_{2n+1}`` at the right end.

    Iterated integrals run along the real interval from its left endpoint:
    ``w_{2n+1}(x) = int exp(+-2(z(y) - z(x))/h) L w_{2n}``,
    ``w_{2n+2}(x) = int L w_{2n+1}``, with ``z = i int P`` and
    ``L = d log H/dx = (mc^2/2) V' / ((V - E)^2 - m^2c^4)``.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if n_max > MAX_SERIES_ORDER:
        raise ValueError(f"n_max={n_max} exceeds the cost guard {MAX_SERIES_ORDER}")
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    a, b = map(float, interval)
    if not b > a:
        raise ValueError("interval must have a < b")
    region = classify_energy(params, profile, E)
    _require(region, (EnergyRegion.I,), E)
    xs = np.linspace(a, b, 2049)
    gap = (E - profile(xs)) ** 2 - params.mc2**2
    if np.any(gap <= 0):
        raise HypothesisError(f"interval [{a}, {b}] contains a turning point")
    p_max = math.sqrt(gap.max()) / params.c
    n = int(math.ceil((b - a) * p_max / (math.pi * params.h) * points_per_wavelength))
    n = max(n, 2048) | 1
    xs = np.linspace(a, b, n + 1)
    v = profile(xs)
    p = np.sqrt((E - v) ** 2 - params.mc2**2) / params.c
    ell = 0.5 * params.mc2 * profile.deriv(xs) / ((v - E) ** 2 - params.mc2**2)
    theta = cumulative_simpson(p, x=xs, initial=0.0)
    s = 1.0 if sign == "+" else -1.0
    osc = np.exp(2j * s * theta / params.h)
    w = np.ones_like(xs, dtype=complex)
    even, odd = complex(w[-1]), 0j
    for k in range(n_max + 1):
        w_odd = np.conj(osc) * _cumint(osc * ell * w, xs)
        w = _cumint(ell * w_odd, xs)
        odd += w_odd[-1]
        if k < n_max:
            even += w[-1]
    return WkbSeriesResult(n_max, even, odd, (a, b))
