"""Essential spectrum, energy regions, turning points and local momentum."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import InconclusiveRootError, SingularPointError
from .model import PhysicalParams, PotentialProfile, TailCutoffs, tail_cutoffs

__all__ = [
    "EnergyRegion",
    "TurningPoint",
    "TurningPoints",
    "essential_spectrum",
    "classify_energy",
    "side_kind",
    "find_turning_points",
    "momentum",
    "REGION_EPS",
    "N_SCAN",
    "ROOT_XTOL",
    "DEGENERACY_TOL",
]

REGION_EPS = 1e-12
N_SCAN = 2048
ROOT_XTOL = 1e-12
DEGENERACY_TOL = 1e-8


class EnergyRegion(enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    BOUNDARY = "Boundary"
    SPECTRAL_GAP = "SpectralGap"

    def __str__(self):
        return self.value

    @property
    def scattering(self) -> bool:
        """Four oscillatory Jost solutions exist."""
        return self in (EnergyRegion.I, EnergyRegion.III, EnergyRegion.V)

    @property
    def reflecting(self) -> bool:
        return self in (EnergyRegion.II, EnergyRegion.IV)


def _limits(profile):
    if isinstance(profile, PotentialProfile):
        return profile.v_minus, profile.v_plus
    v_minus, v_plus = profile
    return v_minus, v_plus


def essential_spectrum(params: PhysicalParams, profile) -> tuple:
    """Endpoints ``(V+ - mc^2, V- + mc^2)`` of ``(-inf, a] U [b, +inf)``.

    ``profile`` may also be a ``(v_minus, v_plus)`` pair; exact input types
    such as ``Fraction`` are preserved.
    """
    v_minus, v_plus = _limits(profile)
    mc2 = params.m * params.c**2
    return v_plus - mc2, v_minus + mc2


def side_kind(params: PhysicalParams, profile, E: float, side: str) -> str:
    """``'oscillatory'`` or ``'evanescent'`` behaviour at ``side`` = '+' or '-'."""
    v_minus, v_plus = _limits(profile)
    lim = v_plus if side == "+" else v_minus
    return "oscillatory" if abs(E - lim) > params.mc2 else "evanescent"


def classify_energy(params: PhysicalParams, profile, E: float,
                    region_eps: float = REGION_EPS) -> EnergyRegion:
    v_minus, v_plus = _limits(profile)
    mc2 = params.mc2
    edges = (v_minus - mc2, v_minus + mc2, v_plus - mc2, v_plus + mc2)
    for edge in edges:
        if abs(E - edge) <= region_eps * max(1.0, abs(edge)):
            return EnergyRegion.BOUNDARY
    left = E - v_minus
    right = E - v_plus
    left_osc = abs(left) > mc2
    right_osc = abs(right) > mc2
    if left_osc and right_osc:
        if left > 0 and right > 0:
            return EnergyRegion.I
        if left < 0 and right < 0:
            return EnergyRegion.V
        return EnergyRegion.III
    if left_osc:
        # left > 0 is the only option since v_minus < v_plus and |right| < mc2
        return EnergyRegion.II
    if right_osc:
        return EnergyRegion.IV
    return EnergyRegion.SPECTRAL_GAP


@dataclass(frozen=True)
class TurningPoint:
    location: float
    multiplicity: int
    branch_tag: str  # 't1-type' | 't2-type' | 't0-type'


class TurningPoints(tuple):
    """Ordered tuple of :class:`TurningPoint`."""

    @property
    def locations(self) -> list[float]:
        return [tp.location for tp in self]

    def of_type(self, tag: str) -> list[TurningPoint]:
        return [tp for tp in self if tp.branch_tag == tag]

    @property
    def simple(self) -> bool:
        return all(tp.multiplicity == 1 for tp in self)


def _factors(params, E):
    mc2 = params.mc2
    if params.m == 0:
        return [("t0-type", lambda v: v - E)]
    return [("t1-type", lambda v: E - v - mc2), ("t2-type", lambda v: E - v + mc2)]


def find_turning_points(params: PhysicalParams, profile: PotentialProfile, E: float,
                        cutoffs: TailCutoffs | None = None, n_scan: int = N_SCAN,
                        xtol: float = ROOT_XTOL,
                        degeneracy_tol: float = DEGENERACY_TOL) -> TurningPoints:
    """Real zeros of ``m^2c^4 - (V - E)^2`` (of ``V - E`` when ``m = 0``).

    Each zero of ``m^2c^4 - (V-E)^2`` is a zero of exactly one factor
    ``E - V -+ mc^2``, which fixes its branch tag.  Jumps of piecewise
    profiles are not turning points.
    """
    if cutoffs is None:
        cutoffs = tail_cutoffs(profile)
    lo, hi = cutoffs.x_minus, cutoffs.x_plus
    xs = np.linspace(lo, hi, n_scan)
    vs = profile(xs)
    scale = 1.0 + abs(E) + params.mc2 + max(abs(profile.v_minus), abs(profile.v_plus))
    zero_tol = 1e-10 * scale
    mc2 = params.mc2
    roots = []
    for tag, g in _factors(params, E):
        gs = g(vs)
        for edge in (0, -1):
            if abs(gs[edge]) <= 1e-12 * scale:
                raise InconclusiveRootError(
                    f"{tag} zero at truncation boundary x={xs[edge]:.6g}")
        sgn = np.sign(gs)
        cand = []
        for i in np.flatnonzero(sgn[:-1] * sgn[1:] < 0):
            fun = lambda x: g(profile(x))
            x0 = brentq(fun, xs[i], xs[i + 1], xtol=xtol, rtol=4 * np.finfo(float).eps)
            if abs(fun(x0)) > zero_tol:
                continue  # jump discontinuity, not a zero
            cand.append(x0)
        for i in np.flatnonzero(sgn == 0):
            cand.append(float(xs[i]))
        # tangential zeros: local minima of |g| without a sign change
        ag = np.abs(gs)
        strict_min = (ag[1:-1] < ag[:-2]) & (ag[1:-1] < ag[2:]) & (sgn[:-2] == sgn[2:])
        for i in np.flatnonzero(strict_min) + 1:
            res = minimize_scalar(lambda x: abs(g(profile(x))),
                                  bounds=(xs[i - 1], xs[i + 1]), method="bounded",
                                  options={"xatol": xtol})
            if res.fun <= zero_tol:
                cand.append(float(res.x))
        for x0 in cand:
            if any(abs(x0 - r[0]) < 10 * xtol for r in roots):
                continue
            vp = profile.deriv(x0)
            if params.m == 0:
                slope = abs(vp)
            else:
                # d/dx (m^2c^4 - (V - E)^2) = -2 (V - E) V'
                slope = abs(2.0 * (profile(x0) - E) * vp)
            mult = 1 if slope > degeneracy_tol else 2
            roots.append((float(x0), mult, tag))
    roots.sort()
    return TurningPoints(TurningPoint(*r) for r in roots)


def momentum(params: PhysicalParams, profile: PotentialProfile, E: float, x: float) -> complex:
    """Branch-resolved ``sqrt(m^2c^4 - (V - E)^2)/c``.

    Positive real in forbidden zones, positive imaginary in allowed zones.
    """
    v = profile(x)
    q = params.mc2**2 - (v - E) ** 2
    scale = params.mc2**2 + (v - E) ** 2
    if abs(q) <= 1e-14 * max(scale, 1e-300) or scale == 0.0:
        raise SingularPointError(f"x={x} is a turning point for E={E}")
    if q > 0:
        return complex(math.sqrt(q) / params.c, 0.0)
    return complex(0.0, math.sqrt(-q) / params.c)
