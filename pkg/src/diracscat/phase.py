"""Regularised phases, classical action, Q-integrals and WKB amplitudes.

Momenta along the real axis:

* ``P(x) = sqrt((E - V)^2 - m^2c^4)/c`` on allowed stretches,
* ``kappa(x) = sqrt(m^2c^4 - (E - V)^2)/c`` on forbidden stretches,

both taken positive.  Improper integrals are split at a finite reach and
finished with an infinite-interval Gauss-Kronrod rule; square-root zeros at
turning points are removed by ``t = t_k +- s^2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import (DomainError, HypothesisError, PathCrossesTurningPointError,
                     RegionError, SingularPointError, TailNotConvergedError)
from .model import MAX_RANGE, PhysicalParams, PotentialProfile, tail_cutoffs
from .spectral import EnergyRegion, classify_energy, find_turning_points, side_kind

__all__ = [
    "QUAD_TOL",
    "PhaseData",
    "AmplitudeFactors",
    "phi",
    "amp_A",
    "phase_at_infinity",
    "classical_action",
    "q_integral",
    "q_minus_integral",
    "phase_T",
    "phase_T0",
    "phase_Ttilde",
    "amplitude_H",
    "tail_error_estimate",
    "phase_data",
    "amplitude_factors",
]

QUAD_TOL = 1e-11


@dataclass(frozen=True)
class PhaseData:
    z_inf_minus: complex
    z_inf_plus: complex
    action_S: float | None
    phase_T: float | None
    phase_T0: float | None
    phase_Ttilde: float | None
    E_minus: float
    E_plus: float


@dataclass(frozen=True)
class AmplitudeFactors:
    """Asymptotic amplitude data on one side; ``alpha_pm`` carries the unimodular tag."""

    phi_of_E: float | None
    a_of_E: float | None
    h_tilde: float | None
    h_amp: float | None
    alpha_pm: complex


def _check_open(params, E_rel):
    if not abs(E_rel) > params.mc2:
        raise DomainError(f"|E_rel| = {abs(E_rel)} must exceed mc^2 = {params.mc2}")


def phi(params: PhysicalParams, E_rel: float) -> float:
    """``sgn(E) sqrt(E^2 - m^2c^4)``."""
    _check_open(params, E_rel)
    return math.copysign(math.sqrt(E_rel * E_rel - params.mc2**2), E_rel)


def amp_A(params: PhysicalParams, E_rel: float) -> float:
    """``((E + mc^2)/(E - mc^2))^(1/4)``, positive."""
    _check_open(params, E_rel)
    return ((E_rel + params.mc2) / (E_rel - params.mc2)) ** 0.25


def tail_error_estimate(profile: PotentialProfile, x_cut: float, lipschitz: float = 1.0) -> float:
    """Bound on ``int_{|x| > x_cut} lipschitz * |V - V(+-inf)|`` from the declared envelope."""
    x = max(abs(x_cut), 1.0)
    return lipschitz * profile.K * x ** (1.0 - profile.delta) / (profile.delta - 1.0)


# -- integration helpers -----------------------------------------------------

def _quad(f, a, b):
    val, err = quad(f, a, b, epsabs=QUAD_TOL, epsrel=1e-13, limit=400)
    return val, err


def _quad_sqrt_ends(f, a, b, sing_a=False, sing_b=False):
    """``int_a^b f`` with ``t = a + s^2`` / ``t = b - s^2`` near flagged endpoints."""
    if a == b:
        return 0.0, 0.0
    mid = 0.5 * (a + b)
    total, err = 0.0, 0.0
    if sing_a:
        v, e = _quad(lambda s: 2.0 * s * f(a + s * s), 0.0, math.sqrt(mid - a))
    else:
        v, e = _quad(f, a, mid)
    total, err = total + v, err + e
    if sing_b:
        v, e = _quad(lambda s: 2.0 * s * f(b - s * s), 0.0, math.sqrt(b - mid))
    else:
        v, e = _quad(f, mid, b)
    return total + v, err + e


def _reach(profile, side):
    try:
        cut = tail_cutoffs(profile)
        return cut.x_plus if side == "+" else cut.x_minus
    except TailNotConvergedError:
        return MAX_RANGE if side == "+" else -MAX_RANGE


def _momentum_fn(params, profile, E, kind):
    mc4, c = params.mc2**2, params.c
    if kind == "P":
        return lambda t: math.sqrt(max((E - profile(t)) ** 2 - mc4, 0.0)) / c
    return lambda t: math.sqrt(max(mc4 - (E - profile(t)) ** 2, 0.0)) / c


def _limit_momentum(params, E, v_lim, kind):
    q = (E - v_lim) ** 2 - params.mc2**2
    return math.sqrt(q if kind == "P" else -q) / params.c


def _tail_integral(params, profile, E, x, side, kind, singular=False):
    """``int`` of ``f(t) - f(+-inf)`` from ``x`` outwards to ``+-inf`` (positive orientation).

    Returns ``(value, error_estimate)`` where value is ``int_x^inf`` for '+'
    and ``int_-inf^x`` for '-'.
    """
    f = _momentum_fn(params, profile, E, kind)
    v_lim = profile.v_plus if side == "+" else profile.v_minus
    f_lim = _limit_momentum(params, E, v_lim, kind)
    g = lambda t: f(t) - f_lim  # noqa: E731
    reach = _reach(profile, side)
    if side == "+":
        b = max(x, reach)
        v1, e1 = _quad_sqrt_ends(g, x, b, sing_a=singular) if b > x else (0.0, 0.0)
        v2, e2 = _quad(g, b, np.inf)
        cut = b
    else:
        a = min(x, reach)
        v1, e1 = _quad_sqrt_ends(g, a, x, sing_b=singular) if a < x else (0.0, 0.0)
        v2, e2 = _quad(g, -np.inf, a)
        cut = a
    e_rel = E - v_lim
    lip = abs(e_rel) / (params.c * math.sqrt(abs(e_rel**2 - params.mc2**2)))
    return v1 + v2, e1 + e2 + tail_error_estimate(profile, cut, lip)


def _turning_points(params, profile, E):
    try:
        return find_turning_points(params, profile, E)
    except TailNotConvergedError:
        from .model import TailCutoffs
        return find_turning_points(params, profile, E, TailCutoffs(-MAX_RANGE, MAX_RANGE, math.inf))


# -- public operations ----------------------------------------------------

def phase_at_infinity(params: PhysicalParams, profile: PotentialProfile, E: float,
                      x: float, side: str) -> complex:
    """Regularised phase ``z(x, +-inf)`` on the real axis.

    Oscillatory sides use the root in ``i R+``, so ``z`` is purely imaginary;
    evanescent sides use the root in ``R-``, so ``z`` is real.
    """
    if side not in ("+", "-"):
        raise ValueError(f"side must be '+' or '-', got {side!r}")
    region = classify_energy(params, profile, E)
    if region in (EnergyRegion.BOUNDARY, EnergyRegion.SPECTRAL_GAP):
        raise RegionError(f"no phase at infinity for E={E} (region {region})")
    for tp in _turning_points(params, profile, E):
        beyond = tp.location > x if side == "+" else tp.location < x
        if beyond and abs(tp.location - x) > 1e-9:
            raise PathCrossesTurningPointError(
                f"turning point {tp.location:.6g} lies between x={x} and {side}inf")
    kind = "P" if side_kind(params, profile, E, side) == "oscillatory" else "K"
    v_lim = profile.v_plus if side == "+" else profile.v_minus
    f_lim = _limit_momentum(params, E, v_lim, kind)
    tail, _ = _tail_integral(params, profile, E, x, side, kind)
    # orient from +-inf to x
    reg = -tail if side == "+" else tail
    if kind == "P":
        return complex(0.0, reg + f_lim * x)
    return complex(-(reg + f_lim * x), 0.0)


def _region_three_points(params, profile, E):
    region = classify_energy(params, profile, E)
    if region is not EnergyRegion.III:
        raise RegionError(f"needs region III, E={E} is in region {region}")
    tps = _turning_points(params, profile, E)
    if len(tps) != 2 or not tps.simple or tps[0].branch_tag != "t1-type":
        raise HypothesisError(
            f"need exactly two simple turning points t1 < t2, found {list(tps)}")
    return tps[0].location, tps[1].location


def classical_action(params: PhysicalParams, profile: PotentialProfile, E: float) -> float:
    """``S(E) = int_{t1}^{t2} kappa(t) dt``."""
    if params.m == 0:
        raise HypothesisError("classical action needs m > 0")
    t1, t2 = _region_three_points(params, profile, E)
    val, _ = _quad_sqrt_ends(_momentum_fn(params, profile, E, "K"), t1, t2, True, True)
    return val


def _one_point(params, profile, E):
    region = classify_energy(params, profile, E)
    tps = _turning_points(params, profile, E)
    if len(tps) != 1 or not tps.simple:
        raise HypothesisError(f"need one simple turning point, found {list(tps)}")
    return region, tps[0].location


def q_integral(params: PhysicalParams, profile: PotentialProfile, E: float, side: str) -> float:
    """Regularised momentum integral on one side.

    Region III: ``int_{-inf}^{t1} Q-`` or ``int_{t2}^{inf} Q+``.  Regions I
    and V: the same integrands split at 0.  Regions II/IV: the oscillatory
    side is integrated up to the turning point; the evanescent side uses
    ``kappa - kappa(+-inf)`` from the turning point outwards.
    """
    if side not in ("+", "-"):
        raise ValueError(f"side must be '+' or '-', got {side!r}")
    region = classify_energy(params, profile, E)
    if region is EnergyRegion.III:
        t1, t2 = _region_three_points(params, profile, E)
        x = t1 if side == "-" else t2
        return _tail_integral(params, profile, E, x, side, "P", singular=True)[0]
    if region in (EnergyRegion.I, EnergyRegion.V):
        if _turning_points(params, profile, E):
            raise HypothesisError(f"turning points present at E={E} in region {region}")
        return _tail_integral(params, profile, E, 0.0, side, "P")[0]
    if region.reflecting:
        _, t = _one_point(params, profile, E)
        kind = "P" if side_kind(params, profile, E, side) == "oscillatory" else "K"
        return _tail_integral(params, profile, E, t, side, kind, singular=True)[0]
    raise RegionError(f"no Q-integral for E={E} in region {region}")


def q_minus_integral(params: PhysicalParams, profile: PotentialProfile, E: float) -> float:
    """``int_{t1}^{inf} (kappa - kappa+)`` on the evanescent side of region II."""
    region = classify_energy(params, profile, E)
    if region is not EnergyRegion.II:
        raise RegionError(f"needs region II, E={E} is in region {region}")
    return q_integral(params, profile, E, "+")


def _e_pm(params, profile, E):
    c2 = params.c**2
    e_minus = ((profile.v_minus - E) ** 2 - params.mc2**2) / c2
    e_plus = ((profile.v_plus - E) ** 2 - params.mc2**2) / c2
    return e_minus, e_plus


def phase_T(params: PhysicalParams, profile: PotentialProfile, E: float) -> float:
    """``int Q- - int Q+ + t1 sqrt(E-) + t2 sqrt(E+)`` (region III)."""
    t1, t2 = _region_three_points(params, profile, E)
    e_minus, e_plus = _e_pm(params, profile, E)
    return (q_integral(params, profile, E, "-") - q_integral(params, profile, E, "+")
            + t1 * math.sqrt(e_minus) + t2 * math.sqrt(e_plus))


def phase_T0(profile: PotentialProfile, E: float, c: float = 1.0) -> float:
    """Massless phase: the single zero ``t0`` of ``V - E`` splits the regularised integrals."""
    params = PhysicalParams(m=0.0, c=c, h=1.0)
    tps = _turning_points(params, profile, E)
    if len(tps) != 1 or not tps.simple:
        raise HypothesisError(f"need one simple zero of V - E, found {list(tps)}")
    t0 = tps[0].location
    reach_m, reach_p = _reach(profile, "-"), _reach(profile, "+")
    left = (_quad(lambda t: profile.v_minus - profile(t), min(reach_m, t0), t0)[0]
            + _quad(lambda t: -profile.signed_tail(t), -np.inf, min(reach_m, t0))[0])
    right = (_quad(lambda t: profile(t) - profile.v_plus, t0, max(reach_p, t0))[0]
             + _quad(profile.signed_tail, max(reach_p, t0), np.inf)[0])
    return (left - right + t0 * (profile.v_plus - profile.v_minus)) / c


def phase_Ttilde(params: PhysicalParams, profile: PotentialProfile, E: float) -> float:
    """``int_{-inf}^0 Q- + int_0^inf Q+`` (regions I and V)."""
    region = classify_energy(params, profile, E)
    if region not in (EnergyRegion.I, EnergyRegion.V):
        raise RegionError(f"needs region I or V, E={E} is in region {region}")
    return q_integral(params, profile, E, "-") + q_integral(params, profile, E, "+")


def amplitude_H(params: PhysicalParams, profile: PotentialProfile, E: float, x: float,
                variant: str = "H-tilde") -> complex:
    """Real-axis amplitude ``H~ = ((E-V+mc^2)/(E-V-mc^2))^(1/4)`` or
    ``H = ((mc^2+E-V)/(mc^2-E+V))^(1/4)``.

    Each variant is real positive where its radicand is positive; elsewhere
    the value carries the unimodular tag ``exp(-i pi/4)`` of the continued root.
    """
    v = float(profile(x))
    e = E - v
    mc2 = params.mc2
    if abs(abs(e) - mc2) <= 1e-14 * max(1.0, mc2, abs(e)):
        raise SingularPointError(f"x={x} is a turning point for E={E}")
    if variant == "H-tilde":
        q = (e + mc2) / (e - mc2)
    elif variant == "H":
        q = (mc2 + e) / (mc2 - e)
    else:
        raise ValueError(f"variant must be 'H' or 'H-tilde', got {variant!r}")
    if q > 0:
        return complex(q**0.25, 0.0)
    # continued root carries the tag exp(-i pi/4)
    return abs(q) ** 0.25 * complex(math.cos(math.pi / 4), -math.sin(math.pi / 4))


def phase_data(params: PhysicalParams, profile: PotentialProfile, E: float,
               x: float = 0.0) -> PhaseData:
    """Collect every phase quantity that applies at energy ``E``."""
    region = classify_energy(params, profile, E)
    e_minus, e_plus = _e_pm(params, profile, E)

    def attempt(fn, *a):
        try:
            return fn(*a)
        except (RegionError, HypothesisError, PathCrossesTurningPointError):
            return None
    z_m = attempt(phase_at_infinity, params, profile, E, x, "-")
    z_p = attempt(phase_at_infinity, params, profile, E, x, "+")
    S = T = T0 = Tt = None
    if region is EnergyRegion.III and params.m > 0:
        S = attempt(classical_action, params, profile, E)
        T = attempt(phase_T, params, profile, E)
    if params.m == 0 and region is EnergyRegion.III:
        T0 = attempt(phase_T0, profile, E, params.c)
    if region in (EnergyRegion.I, EnergyRegion.V):
        Tt = attempt(phase_Ttilde, params, profile, E)
    return PhaseData(z_m, z_p, S, T, T0, Tt, e_minus, e_plus)


def amplitude_factors(params: PhysicalParams, profile: PotentialProfile, E: float,
                      side: str, x: float | None = None) -> AmplitudeFactors:
    """Amplitude data on ``side`` with the unimodular constant of the Jost normalisation.

    ``alpha_pm`` is the limit of ``H`` with its region-dependent tag:
    ``exp(i pi/4)`` (oscillatory, ``E - V > 0``), ``exp(-i pi/4)``
    (oscillatory, ``E - V < 0``) or ``1`` (evanescent).
    """
    v_lim = profile.v_plus if side == "+" else profile.v_minus
    e = E - v_lim
    osc = side_kind(params, profile, E, side) == "oscillatory"
    xs = x if x is not None else (_reach(profile, side))
    if osc:
        base = amp_A(params, e)
        tag = complex(math.cos(math.pi / 4), math.copysign(math.sin(math.pi / 4), e))
        h_t = amplitude_H(params, profile, E, xs, "H-tilde").real
        return AmplitudeFactors(phi(params, e), amp_A(params, e), h_t, None, base * tag)
    h = amplitude_H(params, profile, E, xs, "H").real
    alpha = ((params.mc2 + e) / (params.mc2 - e)) ** 0.25
    return AmplitudeFactors(None, None, None, h, complex(alpha, 0.0))
