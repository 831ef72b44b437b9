"""Exact scattering for piecewise-constant potentials by interface matching.

On a constant slab with level ``v`` and ``e = E - v`` the two channel spinors are

* ``exp(+-i Phi(e)(x - x_ref)/(hc)) (A(e), +-1/A(e))`` when ``|e| > mc^2``,
* ``exp(+-kappa (x - x_ref)/h) (+-i A_d, 1/A_d)`` when ``|e| < mc^2``,

with ``A_d = ((mc^2 + e)/(mc^2 - e))^(1/4)``.  The first-order system keeps
the spinor continuous across a jump, which is the whole matching condition.
Outer slabs use ``x_ref = 0`` so that their channels coincide with the
normalised Jost solutions; interior slabs use their left edge.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateChannelError, ProfileError, RegionError
from .jost import ReflectionCoefficients, ScatteringMatrix, TransferMatrix
from .model import (DEFAULT_TAIL_TOL, ConstantPotential, PhysicalParams, PiecewiseConstant, PotentialProfile,
                    tail_cutoffs)
from .spectral import EnergyRegion, classify_energy

__all__ = [
    "StepPotential",
    "channel_matrix",
    "interface_product",
    "step_transfer",
    "step_scattering",
    "step_reflection",
    "staircase_approximation",
]


@dataclass(frozen=True)
class StepPotential:
    breaks: tuple[float, ...]
    levels: tuple[float, ...]

    def __post_init__(self):
        breaks = tuple(float(b) for b in self.breaks)
        levels = tuple(float(v) for v in self.levels)
        object.__setattr__(self, "breaks", breaks)
        object.__setattr__(self, "levels", levels)
        if len(levels) != len(breaks) + 1:
            raise ProfileError("need exactly one more level than breaks")
        if not all(math.isfinite(v) for v in breaks + levels):
            raise ProfileError("breaks and levels must be finite")
        if any(b1 >= b2 for b1, b2 in zip(breaks, breaks[1:])):
            raise ProfileError("breaks must be strictly increasing")
        # equal outer levels are allowed here so that a flat potential is expressible
        if not levels[0] <= levels[-1]:
            raise ProfileError("need V- <= V+")

    @property
    def v_minus(self) -> float:
        return self.levels[0]

    @property
    def v_plus(self) -> float:
        return self.levels[-1]

    def to_profile(self) -> PiecewiseConstant:
        if len(set(self.levels)) == 1:
            return ConstantPotential(self.levels[0])
        return PiecewiseConstant(self.breaks, self.levels)

    def to_dict(self) -> dict:
        return self.to_profile().to_dict()

    @classmethod
    def from_profile(cls, profile: PiecewiseConstant) -> "StepPotential":
        return cls(profile.breaks, profile.steps)


def _check_channel(params, e):
    if abs(abs(e) - params.mc2) <= 1e-12 * max(1.0, params.mc2):
        raise DegenerateChannelError(f"|E - level| = mc^2 (E - level = {e})")


def channel_matrix(params: PhysicalParams, level: float, E: float, x: float,
                   x_ref: float = 0.0) -> np.ndarray:
    """Columns ``(f_+, f_-)`` of the two channel spinors evaluated at ``x``."""
    e = E - level
    _check_channel(params, e)
    mc2, hc = params.mc2, params.h * params.c
    d = x - x_ref
    if abs(e) > mc2:
        phi = math.copysign(math.sqrt(e * e - mc2 * mc2), e)
        a = ((e + mc2) / (e - mc2)) ** 0.25
        w = np.exp(1j * phi * d / hc)
        return np.array([[a * w, a / w], [w / a, -1.0 / (a * w)]])
    kappa = math.sqrt(mc2 * mc2 - e * e) / params.c
    a = ((mc2 + e) / (mc2 - e)) ** 0.25
    g = math.exp(kappa * d / params.h)
    return np.array([[1j * a * g, -1j * a / g], [g / a, 1.0 / (a * g)]], dtype=complex)


def interface_product(params: PhysicalParams, step: StepPotential, E: float) -> np.ndarray:
    """Matrix ``M`` with ``c_right = M c_left`` in the channel bases of the outer slabs."""
    for v in step.levels:
        _check_channel(params, E - v)
    M = np.eye(2, dtype=complex)
    n = len(step.breaks)
    refs = [0.0] + list(step.breaks[:-1]) + [0.0] if n else [0.0]
    for j, b in enumerate(step.breaks):
        left = channel_matrix(params, step.levels[j], E, b, refs[j])
        right = channel_matrix(params, step.levels[j + 1], E, b, refs[j + 1])
        M = np.linalg.solve(right, left) @ M
    return M


def step_transfer(params: PhysicalParams, step: StepPotential, E: float) -> TransferMatrix:
    """``t``, ``r`` from ``(w_in-, w_out-) = (w_out+, w_in+) T``."""
    region = classify_energy(params, (step.v_minus, step.v_plus), E)
    if not region.scattering:
        raise RegionError(f"step scattering needs region I, III or V, got {region}")
    M = interface_product(params, step, E)
    return TransferMatrix(complex(M[0, 0]), complex(M[0, 1]))


def step_scattering(params: PhysicalParams, step: StepPotential, E: float) -> ScatteringMatrix:
    return ScatteringMatrix.from_transfer(step_transfer(params, step, E))


def step_reflection(params: PhysicalParams, step: StepPotential, E: float) -> ReflectionCoefficients:
    """Bounded solution ``w_in + alpha w_out = beta w_d`` in regions II and IV."""
    region = classify_energy(params, (step.v_minus, step.v_plus), E)
    M = interface_product(params, step, E)
    if region is EnergyRegion.II:
        # left basis (w_in-, w_out-); right basis (growing, w_d+)
        alpha = -M[0, 0] / M[0, 1]
        beta = M[1, 0] + alpha * M[1, 1]
        return ReflectionCoefficients(complex(alpha), complex(beta), "-")
    if region is EnergyRegion.IV:
        # left basis (w_d-, growing); right basis (w_out+, w_in+)
        beta = 1.0 / M[1, 0]
        alpha = M[0, 0] * beta
        return ReflectionCoefficients(complex(alpha), complex(beta), "+")
    raise RegionError(f"total reflection needs region II or IV, got {region}")


def staircase_approximation(profile: PotentialProfile, n_steps: int,
                            tail_tol: float = DEFAULT_TAIL_TOL) -> StepPotential:
    """Midpoint sampling on ``n_steps`` equal slabs over the tail cutoffs.

    The outer levels are the limits, so the staircase has ``n_steps + 1`` breaks.
    """
    if n_steps < 1:
        raise ValueError("n_steps must be at least 1")
    cut = tail_cutoffs(profile, tail_tol)
    edges = np.linspace(cut.x_minus, cut.x_plus, n_steps + 1)
    mids = 0.5 * (edges[1:] + edges[:-1])
    levels = [profile.v_minus, *np.atleast_1d(profile(mids)).tolist(), profile.v_plus]
    return StepPotential(tuple(edges.tolist()), tuple(levels))
