"""Numerical Jost solutions, Wronskians, transfer and scattering matrices.

The Dirac system ``(H - E)u = 0`` is written as ``u' = B(x) u`` with

    u1' =  i (E - V + mc^2)/(hc) u2
    u2' =  i (E - V - mc^2)/(hc) u1

In the variables ``y = (u1, -i u2)`` the coefficient matrix becomes real and
traceless, so every step propagator lies in SL(2, R).  Steps are taken with
a sixth-order Magnus integrator (embedded fourth-order error estimate) on an
adaptively refined grid; step propagators are built in double precision and
then renormalised to unit determinant in extended precision, which keeps
Wronskians, current and ``|t|^2 - |r|^2 = 1`` exact to working precision even
when tunnelling amplifies solutions by ``exp(S/h)``.
"""
from __future__ import annotations

import csv
import math
import operator
from dataclasses import dataclass, field
from functools import cached_property

import mpmath
import numpy as np

from .errors import (IntegrationQualityError, PrecisionError, RegionError,
                     ResolutionError)
from .model import _fixed_ctx, PhysicalParams, PotentialProfile, TailCutoffs, tail_cutoffs
from .spectral import EnergyRegion, classify_energy, find_turning_points, side_kind

__all__ = [
    "SolverSettings",
    "Spinor",
    "JostSolution",
    "TransferMatrix",
    "ScatteringMatrix",
    "ReflectionCoefficients",
    "Propagation",
    "dirac_rhs",
    "jost_solution",
    "wronskian",
    "transfer_matrix",
    "scattering_matrix",
    "scattering_matrix_direct",
    "reflection_transmission",
    "total_reflection_solve",
    "current",
]

_SQ15 = math.sqrt(15.0)
_GAUSS3 = (0.5 - _SQ15 / 10.0, 0.5, 0.5 + _SQ15 / 10.0)


@dataclass(frozen=True)
class SolverSettings:
    rtol: float = 1e-11
    steps_per_wavelength: int = 20
    tail_tol: float = 1e-10
    exp_range_max: float = 30.0
    max_steps: int = 400_000
    wronskian_drift_tol: float = 1e-6
    guard_digits: int = 30
    # 'magnus': double-precision Magnus steps renormalised in extended precision;
    # 'taylor': fixed-point Taylor steps, accurate to ``dps`` digits
    method: str = "magnus"
    dps: int | None = None
    taylor_step: float = 4.0

    def __post_init__(self):
        if self.method not in ("magnus", "taylor"):
            raise ValueError(f"unknown method {self.method!r}")


DEFAULT_SETTINGS = SolverSettings()


@dataclass(frozen=True)
class Spinor:
    upper: complex
    lower: complex

    def __iter__(self):
        yield self.upper
        yield self.lower

    def __getitem__(self, i):
        return (self.upper, self.lower)[i]


def dirac_rhs(params: PhysicalParams, profile: PotentialProfile, E: float, x, u):
    """Right-hand side ``du/dx`` of the first-order Dirac system.

    Derived from ``(mc^2 + V - E) u1 - i h c u2' = 0`` and
    ``-i h c u1' + (-mc^2 + V - E) u2 = 0``.  Vectorised over ``x``.
    """
    u1, u2 = u[0], u[1]
    v = profile(x)
    hc = params.h * params.c
    a = E - v + params.mc2
    b = E - v - params.mc2
    return np.array([1j * a / hc * u2, 1j * b / hc * u1])


def wronskian(u, v):
    """``u1 v2 - u2 v1``."""
    return u[0] * v[1] - u[1] * v[0]


def current(u):
    """Probability current ``2 Re(conj(u1) u2)`` (in units of c)."""
    return 2.0 * (np.conj(u[0]) * u[1]).real


# -- sl(2) algebra on triples (g, a, b) <-> [[g, a], [b, -g]] -----------------

def _comm(X, Y):
    g1, a1, b1 = X
    g2, a2, b2 = Y
    return (a1 * b2 - a2 * b1, 2.0 * (g1 * a2 - a1 * g2), 2.0 * (b1 * g2 - g1 * b2))


def _lin(*terms):
    g = sum(c * t[0] for c, t in terms)
    a = sum(c * t[1] for c, t in terms)
    b = sum(c * t[2] for c, t in terms)
    return g, a, b


def _expm_sl2(W):
    """exp of ``[[g, a], [b, -g]]`` as arrays (p, q, r, s)."""
    g, a, b = W
    mu2 = g * g + a * b
    amu = np.sqrt(np.abs(mu2))
    small = amu < 1e-4
    with np.errstate(invalid="ignore", divide="ignore"):
        ch = np.where(mu2 >= 0, np.cosh(amu), np.cos(amu))
        sh = np.where(mu2 >= 0, np.sinh(amu), np.sin(amu)) / np.where(small, 1.0, amu)
    # series for |mu| small: sinh(mu)/mu = 1 + mu^2/6 + mu^4/120
    sh = np.where(small, 1.0 + mu2 / 6.0 + mu2 * mu2 / 120.0, sh)
    ch = np.where(small, 1.0 + mu2 / 2.0 + mu2 * mu2 / 24.0, ch)
    return ch + sh * g, sh * a, sh * b, ch - sh * g


def _magnus_steps(x0, dx, coef):
    """Sixth- and fourth-order Magnus propagators for steps [x0, x0 + dx]."""
    A = [coef(x0 + c * dx) for c in _GAUSS3]
    a1 = _lin((dx, A[1]))
    a2 = _lin((_SQ15 * dx / 3.0, A[2]), (-_SQ15 * dx / 3.0, A[0]))
    a3 = _lin((10.0 * dx / 3.0, A[2]), (-20.0 * dx / 3.0, A[1]), (10.0 * dx / 3.0, A[0]))
    c1 = _comm(a1, a2)
    c2 = _lin((-1.0 / 60.0, _comm(a1, _lin((2.0, a3), (1.0, c1)))))
    tail = _comm(_lin((-20.0, a1), (-1.0, a3), (1.0, c1)), _lin((1.0, a2), (1.0, c2)))
    om6 = _lin((1.0, a1), (1.0 / 12.0, a3), (1.0 / 240.0, tail))
    om4 = _lin((1.0, a1), (1.0 / 12.0, a3), (-1.0 / 12.0, c1))
    return _expm_sl2(om6), _expm_sl2(om4)


@dataclass
class JostSolution:
    """A Jost solution sampled on the propagation grid.

    ``values`` holds ``(u1, u2)`` per node in double precision; ``exact``
    keeps the extended-precision values used for Wronskians.
    """

    kind: str  # 'in' | 'out' | 'decaying'
    side: str  # '+' | '-'
    grid: np.ndarray
    values: np.ndarray
    norm_data: dict
    exact: list = field(repr=False, default_factory=list)

    def index_of(self, x: float) -> int:
        return int(np.argmin(np.abs(self.grid - x)))

    def spinor(self, i: int) -> Spinor:
        return Spinor(*self.values[i])

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x", "re_u1", "im_u1", "re_u2", "im_u2"])
            for x, (u1, u2) in zip(self.grid, self.values):
                w.writerow([repr(float(v)) for v in (x, u1.real, u1.imag, u2.real, u2.imag)])


@dataclass(frozen=True)
class TransferMatrix:
    """``T = [[t, r], [conj r, conj t]]``; entries kept in extended precision."""

    t: object
    r: object

    @property
    def matrix(self) -> np.ndarray:
        t, r = complex(self.t), complex(self.r)
        return np.array([[t, r], [r.conjugate(), t.conjugate()]])

    def det(self):
        """``|t|^2 - |r|^2`` evaluated at the entries' own precision."""
        return abs(self.t) ** 2 - abs(self.r) ** 2

    def det_defect(self) -> float:
        return float(abs(self.det() - 1))


@dataclass(frozen=True)
class ScatteringMatrix:
    s11: complex
    s12: complex
    s21: complex
    s22: complex

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.s11, self.s12], [self.s21, self.s22]])

    @property
    def R(self) -> float:
        return abs(self.s21) ** 2

    @property
    def T(self) -> float:
        return abs(self.s11) ** 2

    def unitarity_defect(self) -> float:
        S = self.matrix
        return float(np.abs(S.conj().T @ S - np.eye(2)).max())

    def relation_defects(self) -> tuple[float, float]:
        """``|s11 - s22|`` and ``|s12 conj(s11) + conj(s21) s11|``."""
        d1 = abs(self.s11 - self.s22)
        d2 = abs(self.s12 * self.s11.conjugate() + self.s21.conjugate() * self.s11)
        return d1, d2

    @classmethod
    def from_transfer(cls, T: TransferMatrix) -> "ScatteringMatrix":
        t, r = T.t, T.r
        tb = t.conjugate()
        s11 = 1 / tb
        return cls(complex(s11), complex(-r / tb), complex(r.conjugate() / tb), complex(s11))


@dataclass(frozen=True)
class ReflectionCoefficients:
    """Bounded solution ``w_in + alpha w_out = beta w_d`` (regions II/IV).

    ``side`` names the side carrying the oscillatory pair: '-' for region II
    (``alpha_out^-``, ``beta_d^+``) and '+' for region IV.
    """

    alpha_out: complex
    beta_d: complex
    side: str
    exact_alpha: object = None

    @property
    def alpha_out_minus(self):
        return self.alpha_out

    @property
    def beta_d_plus(self):
        return self.beta_d


def _eval_point(params, profile, E, region, cutoffs):
    if profile.breaks:
        return 0.5 * (profile.breaks[0] + profile.breaks[-1])
    try:
        tps = find_turning_points(params, profile, E, cutoffs)
    except Exception:
        tps = ()
    if tps:
        x = 0.5 * (tps[0].location + tps[-1].location)
    else:
        x = 0.0
    return min(max(x, cutoffs.x_minus), cutoffs.x_plus)


class Propagation:
    """Grid, step propagators and Jost solutions for one ``(params, profile, E)``."""

    def __init__(self, params: PhysicalParams, profile: PotentialProfile, E: float,
                 settings: SolverSettings = DEFAULT_SETTINGS,
                 cutoffs: TailCutoffs | None = None):
        self.params = params
        self.profile = profile
        self.E = float(E)
        self.settings = settings
        self.region = classify_energy(params, profile, E)
        if self.region in (EnergyRegion.BOUNDARY, EnergyRegion.SPECTRAL_GAP):
            raise RegionError(f"no Jost solutions at E={E} (region {self.region})")
        self.cutoffs = cutoffs or tail_cutoffs(profile, settings.tail_tol)
        self.x_eval = _eval_point(params, profile, self.E, self.region, self.cutoffs)
        self.ctx = mpmath.MPContext()
        self._mp_steps = None
        self._taylor_order = 32
        if settings.method == "taylor":
            self._build_taylor_grid()
        else:
            self._build_grid()
        self._check_range()
        self.ctx.dps = settings.dps or self.dps
        self._solutions: dict[tuple[str, str], JostSolution] = {}

    # -- grid --------------------------------------------------------------
    def _coef(self, x):
        v = self.profile(x)
        hc = self.params.h * self.params.c
        zero = np.zeros_like(v)
        return zero, -(self.E - v + self.params.mc2) / hc, (self.E - v - self.params.mc2) / hc

    def _local_k(self, x):
        v = self.profile(x)
        return np.sqrt(np.abs(self.params.mc2**2 - (v - self.E) ** 2)) / (self.params.h * self.params.c)

    def _initial_nodes(self, a, b):
        fine = np.linspace(a, b, 4001)
        k = self._local_k(fine)
        density = k * self.settings.steps_per_wavelength / (2.0 * math.pi)
        density = np.maximum(density, 8.0 / (b - a))
        cum = np.concatenate([[0.0], np.cumsum(0.5 * (density[1:] + density[:-1]) * np.diff(fine))])
        n = max(int(math.ceil(cum[-1])), 1)
        return np.interp(np.linspace(0.0, cum[-1], n + 1), cum, fine)

    def _marks(self):
        lo, hi = self.cutoffs.x_minus, self.cutoffs.x_plus
        marks = {lo, hi, self.x_eval}
        marks.update(b for b in self.profile.breaks if lo < b < hi)
        return sorted(marks)

    def _build_taylor_grid(self):
        if self.profile.taylor_fixed(0.0, 0.1, 2, 64) is None:
            raise ValueError(f"profile family {self.profile.family!r} has no Taylor expansion")
        marks = self._marks()
        p = self.params
        sample = self.profile(np.linspace(marks[0], marks[-1], 4001))
        omega = (np.abs(self.E - sample).max() + p.mc2) / (p.h * p.c)
        ctx = mpmath.MPContext()
        ctx.dps = (self.settings.dps or 60) + 10
        xs_mp = []
        for a, b in zip(marks[:-1], marks[1:]):
            radius = min(self.profile.analytic_radius(x) for x in np.linspace(a, b, 64))
            dx = min(self.settings.taylor_step / omega, radius / 8.0)
            n = max(int(math.ceil((b - a) / dx)), 1)
            a_mp, w = ctx.mpf(a), (ctx.mpf(b) - ctx.mpf(a)) / n
            xs_mp.extend(a_mp + i * w for i in range(n))
        xs_mp.append(ctx.mpf(marks[-1]))
        if len(xs_mp) > self.settings.max_steps:
            raise ResolutionError(f"more than {self.settings.max_steps} Taylor steps needed")
        self._xs_mp = xs_mp
        self.grid = np.array([float(x) for x in xs_mp])
        self.steps = None
        self.eval_index = int(np.argmin(np.abs(self.grid - self.x_eval)))

    def _taylor_step(self, x0, dx, prec):
        """Real fundamental matrix over ``[x0, x0 + dx]`` as fixed-point integers."""
        p = self.params
        ctx = _fixed_ctx(prec + 40)
        one = 1 << prec
        scale = ctx.mpf(dx) / (ctx.mpf(p.h) * ctx.mpf(p.c))
        d = int(scale * one)
        e_minus = int((ctx.mpf(self.E) - p.mc2) * scale * one)
        e_plus = int((ctx.mpf(self.E) + p.mc2) * scale * one)
        order = self._taylor_order
        bound = 1 << 4
        while True:
            v = self.profile.taylor_fixed(x0, dx, order, prec)
            # drop negligible high-order potential coefficients (long in the tails)
            keep = len(v)
            while keep > 1 and abs(v[keep - 1]) <= 1:
                keep -= 1
            al = [((d * v[0]) >> prec) - e_plus] + [(d * c) >> prec for c in v[1:keep]]
            be = [e_minus - ((d * v[0]) >> prec)] + [-((d * c) >> prec) for c in v[1:keep]]
            cols = []
            for y1, y2 in (([one], [0]), ([0], [one])):
                for n in range(order):
                    lo = max(0, n + 1 - keep)
                    y1.append((sum(map(operator.mul, al, reversed(y2[lo:]))) >> prec) // (n + 1))
                    y2.append((sum(map(operator.mul, be, reversed(y1[lo:n + 1]))) >> prec) // (n + 1))
                cols.append((y1, y2))
            tails = [abs(c) for y1, y2 in cols for c in (y1[-1], y1[-2], y2[-1], y2[-2])]
            if max(tails) < bound:
                break
            order *= 2
            if order > 4096:
                raise ResolutionError("Taylor series failed to converge on a step")
            self._taylor_order = order
        (p1, r1), (q1, s1) = cols
        return sum(p1), sum(q1), sum(r1), sum(s1)

    def _build_grid(self):
        marks = self._marks()
        lo, hi = marks[0], marks[-1]
        nodes = [self._initial_nodes(a, b)[:-1] for a, b in zip(marks[:-1], marks[1:])]
        nodes = np.concatenate(nodes + [[hi]])
        # evaluation nodes sit on segment ends, so the nudge keeps each step inside one piece
        for _ in range(60):
            x0 = nodes[:-1]
            dx = np.diff(nodes)
            m6, m4 = _magnus_steps(x0 + 0.0, dx, self._piece_coef(x0, dx))
            err = np.max(np.abs(np.array(m6) - np.array(m4)), axis=0)
            scale = np.maximum(1.0, np.max(np.abs(np.array(m6)), axis=0))
            bad = err / scale > self.settings.rtol
            if not bad.any():
                break
            mids = x0[bad] + 0.5 * dx[bad]
            nodes = np.sort(np.concatenate([nodes, mids]))
            if nodes.size > self.settings.max_steps:
                raise ResolutionError(
                    f"more than {self.settings.max_steps} steps needed at h={self.params.h}; "
                    "increase h or max_steps")
        else:
            raise ResolutionError("step refinement did not converge")
        self.grid = nodes
        self.steps = np.array(m6)  # (4, n-1): p, q, r, s
        self.eval_index = int(np.argmin(np.abs(nodes - self.x_eval)))

    def _piece_coef(self, x0, dx):
        """Coefficient function that samples each step on its own constant piece."""
        if not self.profile.breaks:
            return self._coef
        mid = x0 + 0.5 * dx
        piece_v = self.profile(mid)
        hc = self.params.h * self.params.c
        E, mc2 = self.E, self.params.mc2

        def coef(x):
            zero = np.zeros_like(piece_v)
            return zero, -(E - piece_v + mc2) / hc, (E - piece_v - mc2) / hc
        return coef

    def _check_range(self):
        kappa = np.sqrt(np.maximum(self.params.mc2**2 - (self.profile(self.grid) - self.E) ** 2, 0.0))
        growth = float(np.trapezoid(kappa, self.grid)) / (self.params.c * self.params.h)
        self.log_growth = growth
        if self.region.scattering and growth > self.settings.exp_range_max:
            raise PrecisionError(
                f"tunnelling range S/h ~ {growth:.1f} exceeds {self.settings.exp_range_max}; "
                f"use h >= {growth * self.params.h / self.settings.exp_range_max:.3g}")
        self.dps = self.settings.guard_digits + int(math.ceil(2.0 * growth / math.log(10.0)))

    # -- extended-precision propagation ------------------------------------
    def _mp_step_list(self):
        if self._mp_steps is None and self.settings.method == "taylor":
            prec = int(self.ctx.prec) + 32
            ldexp, mpf = self.ctx.ldexp, self.ctx.mpf
            out = []
            for x0, x1 in zip(self._xs_mp[:-1], self._xs_mp[1:]):
                ints = self._taylor_step(x0, x1 - x0, prec)
                out.append(tuple(ldexp(mpf(c), -prec) for c in ints))
            self._mp_steps = out
        if self._mp_steps is None:
            mpf, sqrt = self.ctx.mpf, self.ctx.sqrt
            out = []
            for p, q, r, s in self.steps.T:
                p, q, r, s = mpf(p), mpf(q), mpf(r), mpf(s)
                k = 1 / sqrt(p * s - q * r)
                out.append((p * k, q * k, r * k, s * k))
            self._mp_steps = out
        return self._mp_steps

    def _anchor(self, kind: str, side: str):
        """Asymptotic spinor at the side's cutoff, extended precision, u-basis."""
        ctx = self.ctx
        p = self.params
        x_a = self.cutoffs.x_plus if side == "+" else self.cutoffs.x_minus
        lim = self.profile.v_plus if side == "+" else self.profile.v_minus
        sgn_side = 1 if side == "+" else -1
        e_loc = ctx.mpf(self.E) - ctx.mpf(float(self.profile(x_a)))
        e_lim = ctx.mpf(self.E) - ctx.mpf(lim)
        mc2 = ctx.mpf(p.mc2)
        h, c = ctx.mpf(p.h), ctx.mpf(p.c)
        osc = side_kind(p, self.profile, self.E, side) == "oscillatory"
        tail = self.profile.tail_integral(side, x_a)
        if osc:
            if kind not in ("in", "out"):
                raise RegionError(f"no decaying solution on oscillatory side {side}")
            amp = ctx.root((e_loc + mc2) / (e_loc - mc2), 4)
            root = ctx.sqrt(e_lim**2 - mc2**2)
            # regularised phase: Phi(E - V(+-inf)) x / c plus the linearised tail integral
            theta = ctx.sign(e_lim) * root / c * ctx.mpf(x_a)
            theta += sgn_side * abs(e_lim) / (root * c) * ctx.mpf(tail)
            s = -sgn_side if kind == "in" else sgn_side
            ph = ctx.expj(s * theta / h)
            u = (ph * amp, ph * s / amp)
            norm = {"Phi": float(ctx.sign(e_lim) * ctx.sqrt(e_lim**2 - mc2**2)),
                    "A": float(amp), "phase_at_cutoff": float(theta), "x_anchor": x_a}
        else:
            if kind != "decaying":
                raise RegionError(f"only a decaying solution exists on evanescent side {side}")
            amp = ctx.root((mc2 + e_loc) / (mc2 - e_loc), 4)
            root = ctx.sqrt(mc2**2 - e_lim**2)
            kappa = root / c
            z = kappa * ctx.mpf(x_a) - sgn_side * e_lim / (root * c) * ctx.mpf(tail)
            mag = ctx.exp(-sgn_side * z / h)
            u = (ctx.mpc(0, -sgn_side) * amp * mag, mag / amp)
            norm = {"decay_rate": float(kappa), "A": float(amp), "x_anchor": x_a}
        return u, norm

    def solution(self, kind: str, side: str) -> JostSolution:
        key = (kind, side)
        if key in self._solutions:
            return self._solutions[key]
        ctx = self.ctx
        u, norm = self._anchor(kind, side)
        steps = self._mp_step_list()
        n = self.grid.size
        j = ctx.mpc(0, 1)
        # y = (u1, -i u2) evolves with the real step matrices
        y1, y2 = u[0], -j * u[1]
        ys = [None] * n
        if side == "-":
            ys[0] = (y1, y2)
            for i, (a, b, cc, d) in enumerate(steps):
                y1, y2 = a * y1 + b * y2, cc * y1 + d * y2
                ys[i + 1] = (y1, y2)
        else:
            ys[-1] = (y1, y2)
            for i in range(n - 2, -1, -1):
                a, b, cc, d = steps[i]
                y1, y2 = d * y1 - b * y2, -cc * y1 + a * y2
                ys[i] = (y1, y2)
        exact = [(v1, j * v2) for v1, v2 in ys]
        values = np.array([[complex(v1), complex(v2)] for v1, v2 in exact])
        sol = JostSolution(kind, side, self.grid, values, norm, exact)
        self._solutions[key] = sol
        return sol

    def wronskian(self, u: JostSolution, v: JostSolution, index: int | None = None):
        i = self.eval_index if index is None else index
        return wronskian(u.exact[i], v.exact[i])

    def wronskian_drift(self, u: JostSolution, v: JostSolution, floor: float = 0.0) -> float:
        """Largest ``|W(x) - W(x0)|`` over the grid, relative to ``max(|W(x0)|, floor)``."""
        w0 = self.wronskian(u, v)
        scale = max(abs(w0), floor)
        worst = 0
        for a, b in zip(u.exact, v.exact):
            d = abs(wronskian(a, b) - w0)
            if d > worst:
                worst = d
        return float(worst / scale) if scale else float(worst)

    def certify(self, pairs, floor: float = 0.0) -> None:
        # ``floor`` is the denominator Wronskian: a vanishing numerator (r = 0) is
        # judged on the scale that actually enters the coefficient
        for u, v in pairs:
            drift = self.wronskian_drift(u, v, floor)
            if drift > self.settings.wronskian_drift_tol:
                raise IntegrationQualityError(
                    f"Wronskian drift {drift:.2e} for ({u.kind}{u.side}, {v.kind}{v.side})")

    # -- derived quantities ------------------------------------------------
    @cached_property
    def transfer(self) -> TransferMatrix:
        if not self.region.scattering:
            raise RegionError(f"transfer matrix needs region I, III or V, got {self.region}")
        in_m, in_p = self.solution("in", "-"), self.solution("in", "+")
        out_p, out_m = self.solution("out", "+"), self.solution("out", "-")
        w = self.wronskian(out_p, in_p)
        self.certify([(in_m, in_p), (out_p, in_p), (out_m, in_p)], float(abs(w)))
        t = self.wronskian(in_m, in_p) / w
        r = self.wronskian(out_m, in_p) / w
        return TransferMatrix(t, r)

    @cached_property
    def reflection(self) -> ReflectionCoefficients:
        if self.region is EnergyRegion.II:
            osc, ev = "-", "+"
        elif self.region is EnergyRegion.IV:
            osc, ev = "+", "-"
        else:
            raise RegionError(f"total reflection needs region II or IV, got {self.region}")
        w_in, w_out = self.solution("in", osc), self.solution("out", osc)
        w_d = self.solution("decaying", ev)
        den = self.wronskian(w_d, w_out)
        self.certify([(w_in, w_d), (w_d, w_out), (w_in, w_out)], float(abs(den)))
        alpha = self.wronskian(w_in, w_d) / den
        beta = self.wronskian(w_in, w_out) / den
        return ReflectionCoefficients(complex(alpha), complex(beta), osc, alpha)


def jost_solution(params: PhysicalParams, profile: PotentialProfile, E: float,
                  kind: str, side: str, settings: SolverSettings = DEFAULT_SETTINGS) -> JostSolution:
    """One Jost solution on the adaptive grid over ``[x_minus, x_plus]``."""
    if kind not in ("in", "out", "decaying") or side not in ("+", "-"):
        raise ValueError(f"bad kind/side {kind!r}/{side!r}")
    return Propagation(params, profile, E, settings).solution(kind, side)


def transfer_matrix(params, profile, E, settings: SolverSettings = DEFAULT_SETTINGS) -> TransferMatrix:
    return Propagation(params, profile, E, settings).transfer


def scattering_matrix(params, profile, E, settings: SolverSettings = DEFAULT_SETTINGS) -> ScatteringMatrix:
    """``S = (1/conj t) [[1, -r], [conj r, 1]]``."""
    return ScatteringMatrix.from_transfer(transfer_matrix(params, profile, E, settings))


def scattering_matrix_direct(prop: Propagation) -> ScatteringMatrix:
    """All four entries from ``(w_in-, w_in+) = (w_out+, w_out-) S`` by Wronskians."""
    in_m, in_p = prop.solution("in", "-"), prop.solution("in", "+")
    out_p, out_m = prop.solution("out", "+"), prop.solution("out", "-")
    w = prop.wronskian(out_p, out_m)
    s11 = prop.wronskian(in_m, out_m) / w
    s21 = -prop.wronskian(in_m, out_p) / w
    s12 = prop.wronskian(in_p, out_m) / w
    s22 = -prop.wronskian(in_p, out_p) / w
    return ScatteringMatrix(complex(s11), complex(s12), complex(s21), complex(s22))


def reflection_transmission(S: ScatteringMatrix) -> tuple[float, float]:
    return S.R, S.T


def total_reflection_solve(params, profile, E,
                           settings: SolverSettings = DEFAULT_SETTINGS) -> ReflectionCoefficients:
    """Coefficients of the unique bounded solution in regions II and IV."""
    return Propagation(params, profile, E, settings).reflection
