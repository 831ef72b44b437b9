"""Physical parameters and potential profiles.

A profile is an immutable, real step-like potential with limits
``v_minus < v_plus`` at -inf and +inf (``ConstantPotential`` is the one
flat exception, kept for free-particle checks).  Every profile also declares a
tail bound ``|V(x) - V(+-inf)| <= K <x>^-delta`` with ``delta > 1``; the
sector analyticity parameters are carried as metadata only.
"""
from __future__ import annotations

import csv
import functools
import json
import math
import operator
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Sequence

import mpmath
import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq
from scipy.special import erfc, expit

from .errors import DomainError, ProfileError, TailNotConvergedError

__all__ = [
    "PhysicalParams",
    "PotentialProfile",
    "TanhStep",
    "ErfStep",
    "RationalStep",
    "PiecewiseConstant",
    "Tabulated",
    "ConstantPotential",
    "CustomProfile",
    "TailCutoffs",
    "FAMILIES",
    "DEFAULT_TAIL_TOL",
    "MAX_RANGE",
    "potential_eval",
    "potential_limits",
    "tail_cutoffs",
    "parse_profile",
    "load_profile",
]

DEFAULT_TAIL_TOL = 1e-10
MAX_RANGE = 200.0
PIECEWISE_MARGIN = 1.0


@dataclass(frozen=True)
class PhysicalParams:
    """Mass ``m >= 0``, light speed ``c > 0`` and semiclassical parameter ``h > 0``."""

    m: float = 1.0
    c: float = 1.0
    h: float = 0.1

    def __post_init__(self):
        for name in ("m", "c", "h"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")
        if self.m < 0:
            raise DomainError(f"mass must be non-negative, got {self.m}")
        if self.c <= 0:
            raise DomainError(f"c must be positive, got {self.c}")
        if self.h <= 0:
            raise DomainError(f"h must be positive, got {self.h}")

    @property
    def mc2(self) -> float:
        return self.m * self.c**2

    def with_h(self, h: float) -> "PhysicalParams":
        return replace(self, h=h)

    def with_m(self, m: float) -> "PhysicalParams":
        return replace(self, m=m)


@dataclass(frozen=True)
class TailCutoffs:
    x_minus: float
    x_plus: float
    tail_tol: float


@functools.lru_cache(maxsize=8)
def _fixed_ctx(prec: int) -> mpmath.MPContext:
    """Private context at ``prec`` bits for building fixed-point series."""
    ctx = mpmath.MPContext()
    ctx.prec = prec
    return ctx


def _japanese(x):
    return np.sqrt(1.0 + np.square(x))


class PotentialProfile:
    """Base class for potentials.

    Subclasses implement ``_value`` and ``_deriv`` on float arrays and set
    ``v_minus``, ``v_plus``, ``delta`` and ``K``.  ``breaks`` lists jump
    locations (empty for smooth profiles).
    """

    family = "custom"
    monotone = False
    breaks: tuple = ()
    flat_allowed = False

    def __init__(self, v_minus: float, v_plus: float, delta: float = 2.0,
                 sector: tuple[float, float] | None = None):
        v_minus, v_plus, delta = float(v_minus), float(v_plus), float(delta)
        if not (math.isfinite(v_minus) and math.isfinite(v_plus)):
            raise ProfileError("limits must be finite")
        if not (v_minus < v_plus or (self.flat_allowed and v_minus == v_plus)):
            raise ProfileError(f"need v_minus < v_plus, got {v_minus} >= {v_plus}")
        if not delta > 1.0:
            raise ProfileError(f"decay exponent must exceed 1, got {delta}")
        self.v_minus = v_minus
        self.v_plus = v_plus
        self.delta = delta
        # (epsilon, eta) of the analyticity sector; never checked
        self.sector = sector
        self.K = float(v_plus - v_minus)

    # -- evaluation -------------------------------------------------------
    def _value(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _deriv(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _check_domain(self, x: np.ndarray) -> None:
        if not np.all(np.isfinite(x)):
            raise DomainError("x must be finite")

    def __call__(self, x):
        arr = np.asarray(x, dtype=float)
        self._check_domain(arr)
        out = self._value(arr)
        return float(out) if np.ndim(x) == 0 else out

    value = __call__

    def deriv(self, x):
        arr = np.asarray(x, dtype=float)
        self._check_domain(arr)
        out = self._deriv(arr)
        return float(out) if np.ndim(x) == 0 else out

    @property
    def limits(self) -> tuple[float, float]:
        return self.v_minus, self.v_plus

    @property
    def jump(self) -> float:
        return self.v_plus - self.v_minus

    def limit_for(self, x):
        """``V(-inf)`` for ``x < 0`` and ``V(+inf)`` otherwise."""
        return np.where(np.asarray(x) < 0, self.v_minus, self.v_plus)

    def tail_bound(self, x):
        """Declared envelope ``K <x>^-delta``."""
        return self.K * _japanese(np.asarray(x, dtype=float)) ** (-self.delta)

    def signed_tail(self, x):
        """``V(x) - limit_for(x)``; subclasses compute it without cancellation."""
        arr = np.asarray(x, dtype=float)
        out = self._value(arr) - self.limit_for(arr)
        return float(out) if np.ndim(x) == 0 else out

    def deviation(self, x):
        return np.abs(self.signed_tail(x))

    def tail_integral(self, side: str, x_a: float) -> float:
        """``int_{x_a}^{+inf} (V - V+)`` for side '+', ``int_{-inf}^{x_a} (V - V-)`` for '-'."""
        lo, hi = (x_a, np.inf) if side == "+" else (-np.inf, x_a)
        val, _ = quad(self.signed_tail, lo, hi, epsabs=1e-300, epsrel=1e-10, limit=200)
        return float(val)

    def analytic_radius(self, x: float) -> float | None:
        """Distance from real ``x`` to the nearest complex singularity, if known."""
        return None

    def taylor_fixed(self, x0: float, dx: float, order: int, prec: int) -> list[int] | None:
        """Coefficients of ``t -> V(x0 + dx t)`` as integers scaled by ``2**prec``.

        ``None`` means the profile offers no high-precision expansion.
        """
        return None

    def to_dict(self) -> dict:
        return {"family": self.family, "v_minus": self.v_minus,
                "v_plus": self.v_plus, "delta": self.delta}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def __repr__(self):
        return f"{type(self).__name__}({self.to_dict()})"

    def __eq__(self, other):
        return type(self) is type(other) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(self.to_json())


def _sup_poly_exp(delta: float, rate: float) -> float:
    # sup_{s>=0} (1+s)^delta exp(-rate*s)
    s = delta / rate - 1.0
    if s <= 0:
        return 1.0
    return (1.0 + s) ** delta * math.exp(-rate * s)


def _sup_poly_gauss(delta: float, a: float) -> float:
    # sup_{s>=0} (1+s)^delta exp(-s^2/a^2)
    s = (-1.0 + math.sqrt(1.0 + 2.0 * delta * a * a)) / 2.0
    return (1.0 + s) ** delta * math.exp(-(s / a) ** 2)


class _SmoothStep(PotentialProfile):
    monotone = True

    def __init__(self, v_minus, v_plus, width=1.0, center=0.0, delta=2.0, sector=None):
        super().__init__(v_minus, v_plus, delta, sector)
        width, center = float(width), float(center)
        if not width > 0:
            raise ProfileError(f"width must be positive, got {width}")
        if not math.isfinite(center):
            raise ProfileError("center must be finite")
        self.width = width
        self.center = center
        k0 = self._centered_K()
        if center != 0.0:
            # Peetre: <x>/<x - x0> <= sqrt(2) <x0>
            jx0 = math.sqrt(1.0 + center**2)
            k0 = max(k0 * (math.sqrt(2.0) * jx0) ** self.delta,
                     self.jump * jx0**self.delta)
        self.K = k0

    def _centered_K(self) -> float:
        raise NotImplementedError

    def _shape(self, y):
        """Monotone map R -> (0, 1)."""
        raise NotImplementedError

    def _shape_deriv(self, y):
        raise NotImplementedError

    def _value(self, x):
        return self.v_minus + self.jump * self._shape((x - self.center) / self.width)

    def _deriv(self, x):
        return self.jump * self._shape_deriv((x - self.center) / self.width) / self.width

    def signed_tail(self, x):
        arr = np.asarray(x, dtype=float)
        y = (arr - self.center) / self.width
        # shapes are odd about 1/2, so 1 - shape(y) = shape(-y)
        out = np.where(arr < 0, self.jump * self._shape(y), -self.jump * self._shape(-y))
        return float(out) if np.ndim(x) == 0 else out

    def analytic_radius(self, x):
        return self.width * self._unit_radius((x - self.center) / self.width)

    def _unit_radius(self, y):
        raise NotImplementedError

    def _shape_series(self, y0, dy, order, prec, ctx):
        raise NotImplementedError

    def taylor_fixed(self, x0, dx, order, prec):
        ctx = _fixed_ctx(prec + 40)
        y0 = (ctx.mpf(x0) - self.center) / self.width
        dy = ctx.mpf(dx) / self.width
        sig = self._shape_series(y0, dy, order, prec, ctx)
        one = 1 << prec
        jump = int(ctx.mpf(self.jump) * one)
        out = [(jump * c) >> prec for c in sig]
        out[0] += int(ctx.mpf(self.v_minus) * one)
        return out

    def to_dict(self):
        d = super().to_dict()
        d["width"] = self.width
        if self.center:
            d["center"] = self.center
        return d


class TanhStep(_SmoothStep):
    """``V- + (V+ - V-)(1 + tanh((x - x0)/a))/2``."""

    family = "tanh-step"

    def _centered_K(self):
        # |V - V+-| <= dV exp(-2|x|/a) and (1+|x|)^delta >= <x>^delta
        return self.jump * _sup_poly_exp(self.delta, 2.0 / self.width)

    def _shape(self, y):
        return expit(2.0 * y)

    def _shape_deriv(self, y):
        return 0.5 / np.cosh(y) ** 2

    def _unit_radius(self, y):
        # poles of tanh at i*pi/2 + i*pi*k
        return math.hypot(y, math.pi / 2.0)

    def _shape_series(self, y0, dy, order, prec, ctx):
        # s = expit(2y) obeys s' = 2 s (1 - s)
        one = 1 << prec
        s = [int(1 / (1 + ctx.exp(-2 * y0)) * one)]
        k = int(2 * dy * one)
        for n in range(order):
            conv = sum(map(operator.mul, s, reversed(s))) >> prec
            s.append(((k * (s[n] - conv)) >> prec) // (n + 1))
        return s


class ErfStep(_SmoothStep):
    """``V- + (V+ - V-)(1 + erf((x - x0)/a))/2``."""

    family = "erf-step"

    def _centered_K(self):
        # erfc(y) <= exp(-y^2) for y >= 0
        return 0.5 * self.jump * _sup_poly_gauss(self.delta, self.width)

    def _shape(self, y):
        return 0.5 * erfc(-y)

    def _shape_deriv(self, y):
        return np.exp(-y * y) / math.sqrt(math.pi)

    def _unit_radius(self, y):
        return math.inf

    def _shape_series(self, y0, dy, order, prec, ctx):
        # g = exp(-y^2): g' = -2 y g; shape' = g / sqrt(pi)
        one = 1 << prec
        g = [int(ctx.exp(-y0 * y0) * one)]
        a = int(-2 * dy * y0 * one)
        b = int(-2 * dy * dy * one)
        for n in range(order):
            acc = a * g[n] + (b * g[n - 1] if n else 0)
            g.append((acc >> prec) // (n + 1))
        c = int(dy / ctx.sqrt(ctx.pi) * one)
        sig = [int(ctx.erfc(-y0) / 2 * one)]
        sig += [((c * g[n]) >> prec) // (n + 1) for n in range(order)]
        return sig


class RationalStep(_SmoothStep):
    """``V- + (V+ - V-)(1 + y/sqrt(1 + y^2))/2`` with ``y = (x - x0)/a``.

    Algebraic tails ``~ x^-2``, so the declared ``delta`` may not exceed 2.
    """

    family = "rational-step"

    def __init__(self, v_minus, v_plus, width=1.0, center=0.0, delta=2.0, sector=None):
        if float(delta) > 2.0:
            raise ProfileError(f"rational-step decays like x^-2; delta={delta} > 2")
        super().__init__(v_minus, v_plus, width, center, delta, sector)

    def _centered_K(self):
        # dV/2 * a^2/(a^2 + x^2) <= dV/2 * max(1, a^2) <x>^-2
        return 0.5 * self.jump * max(1.0, self.width**2)

    def _shape(self, y):
        r = np.sqrt(1.0 + y * y)
        # 1 + y/r = 1/(r (r - y)) avoids cancellation for y < 0
        return np.where(y < 0, 0.5 / (r * (r - y)), 0.5 * (1.0 + y / r))

    def _shape_deriv(self, y):
        return 0.5 * (1.0 + y * y) ** -1.5

    def _unit_radius(self, y):
        return math.hypot(y, 1.0)

    def _shape_series(self, y0, dy, order, prec, ctx):
        # u = (1 + y^2)^(-1/2): (1 + y^2) u' = -y u, then shape = (1 + y u)/2
        one = 1 << prec
        p0 = 1 + y0 * y0
        inv_p0 = int(one / p0)
        p1 = int(2 * y0 * dy * one)
        p2 = int(dy * dy * one)
        a = int(y0 * dy * one)
        b = p2
        u = [int(one / ctx.sqrt(p0))]
        for n in range(order):
            acc = -(a * u[n]) - p1 * n * u[n]
            if n:
                acc -= b * u[n - 1] + p2 * (n - 1) * u[n - 1]
            u.append((((acc >> prec) * inv_p0) >> prec) // (n + 1))
        y0f, dyf = int(y0 * one), int(dy * one)
        f = [(y0f * u[n] + (dyf * u[n - 1] if n else 0)) >> prec for n in range(order + 1)]
        sig = [c // 2 for c in f]
        sig[0] += one // 2
        return sig


class PiecewiseConstant(PotentialProfile):
    """Levels ``steps[0], ..., steps[n]`` separated by increasing ``breaks``.

    The value at a break is the level on its right.
    """

    family = "piecewise-constant"

    def __init__(self, breaks: Sequence[float], steps: Sequence[float], delta=2.0, sector=None):
        breaks = tuple(float(b) for b in breaks)
        steps = tuple(float(s) for s in steps)
        if len(steps) != len(breaks) + 1:
            raise ProfileError(f"need len(steps) == len(breaks) + 1, got {len(steps)} and {len(breaks)}")
        if not all(math.isfinite(v) for v in breaks + steps):
            raise ProfileError("breaks and steps must be finite")
        if any(b1 >= b2 for b1, b2 in zip(breaks, breaks[1:])):
            raise ProfileError("breaks must be strictly increasing")
        super().__init__(steps[0], steps[-1], delta, sector)
        self.breaks = breaks
        self.steps = steps
        if breaks:
            reach = max(abs(breaks[0]), abs(breaks[-1]))
            gap = max(max(abs(s - self.v_minus), abs(s - self.v_plus)) for s in steps)
            self.K = gap * (1.0 + reach * reach) ** (self.delta / 2.0)
        else:
            self.K = 0.0
        lo, hi = min(steps), max(steps)
        self.monotone = all(s1 <= s2 for s1, s2 in zip(steps, steps[1:])) and lo >= self.v_minus and hi <= self.v_plus

    def _value(self, x):
        idx = np.searchsorted(np.asarray(self.breaks), x, side="right")
        return np.asarray(self.steps)[idx]

    def _deriv(self, x):
        return np.zeros_like(x, dtype=float)

    def tail_integral(self, side, x_a):
        return 0.0

    def analytic_radius(self, x):
        return math.inf

    def taylor_fixed(self, x0, dx, order, prec):
        # constant on each step: steps never straddle a break
        ctx = _fixed_ctx(prec + 40)
        level = float(self(x0 + 0.5 * dx))
        return [int(ctx.mpf(level) * (1 << prec))] + [0] * order

    def to_dict(self):
        d = super().to_dict()
        d["breaks"] = list(self.breaks)
        d["steps"] = list(self.steps)
        return d


class ConstantPotential(PiecewiseConstant):
    """``V(x) = level`` everywhere: the free problem shifted in energy."""

    family = "constant"
    flat_allowed = True

    def __init__(self, level: float = 0.0, delta=2.0, sector=None):
        super().__init__((), (level,), delta, sector)

    @property
    def level(self) -> float:
        return self.v_minus

    def to_dict(self):
        return {"family": self.family, "level": self.level, "delta": self.delta}


class Tabulated(PotentialProfile):
    """Cubic-spline interpolation of a two-column table; undefined outside it."""

    family = "custom-tabulated"

    def __init__(self, x: Sequence[float], v: Sequence[float], delta=2.0, sector=None, source=None):
        x = np.asarray(x, dtype=float)
        v = np.asarray(v, dtype=float)
        if x.ndim != 1 or x.shape != v.shape or x.size < 4:
            raise ProfileError("table needs at least 4 (x, V) rows")
        if not np.all(np.isfinite(x)) or not np.all(np.isfinite(v)):
            raise ProfileError("table values must be finite")
        if np.any(np.diff(x) <= 0):
            raise ProfileError("table x column must be strictly increasing")
        super().__init__(v[0], v[-1], delta, sector)
        self.x = x
        self.v = v
        self.source = source
        self._spline = CubicSpline(x, v)
        self._dspline = self._spline.derivative()
        dev = np.abs(v - self.limit_for(x)) * _japanese(x) ** self.delta
        self.K = float(dev.max())

    def _check_domain(self, x):
        super()._check_domain(x)
        if np.any(x < self.x[0]) or np.any(x > self.x[-1]):
            raise DomainError(f"x outside table range [{self.x[0]}, {self.x[-1]}]")

    def _value(self, x):
        return self._spline(x)

    def _deriv(self, x):
        return self._dspline(x)

    def tail_integral(self, side, x_a):
        return 0.0

    def to_dict(self):
        d = super().to_dict()
        if self.source is not None:
            d["table"] = str(self.source)
        else:
            d["x"] = self.x.tolist()
            d["v"] = self.v.tolist()
        return d


class CustomProfile(PotentialProfile):
    """Wrap user callables ``func(x)`` and ``deriv(x)`` (numpy-vectorized)."""

    family = "custom"

    def __init__(self, func, deriv, v_minus, v_plus, K, delta=2.0, monotone=False, sector=None):
        super().__init__(v_minus, v_plus, delta, sector)
        self._func = func
        self._dfunc = deriv
        self.K = float(K)
        self.monotone = monotone

    def _value(self, x):
        return np.asarray(self._func(x), dtype=float)

    def _deriv(self, x):
        return np.asarray(self._dfunc(x), dtype=float)

    def to_dict(self):
        d = super().to_dict()
        d["callable"] = getattr(self._func, "__name__", "func")
        return d


FAMILIES = {
    "tanh-step": TanhStep,
    "erf-step": ErfStep,
    "rational-step": RationalStep,
    "piecewise-constant": PiecewiseConstant,
    "custom-tabulated": Tabulated,
    "constant": ConstantPotential,
}


def potential_eval(profile: PotentialProfile, x):
    return profile(x)


def potential_limits(profile: PotentialProfile) -> tuple[float, float]:
    return profile.limits


def tail_cutoffs(profile: PotentialProfile, tail_tol: float = DEFAULT_TAIL_TOL,
                 max_range: float = MAX_RANGE) -> TailCutoffs:
    """Truncation points beyond which ``V`` is within ``tail_tol`` of its limit.

    Raises
    ------
    TailNotConvergedError
        If the tolerance is not met inside ``[-max_range, max_range]``.
    """
    if not tail_tol > 0:
        raise DomainError(f"tail_tol must be positive, got {tail_tol}")
    if isinstance(profile, PiecewiseConstant):
        if not profile.breaks:
            return TailCutoffs(-PIECEWISE_MARGIN, PIECEWISE_MARGIN, tail_tol)
        return TailCutoffs(profile.breaks[0] - PIECEWISE_MARGIN,
                           profile.breaks[-1] + PIECEWISE_MARGIN, tail_tol)
    if isinstance(profile, Tabulated):
        lo, hi = float(profile.x[0]), float(profile.x[-1])
        if abs(profile(hi) - profile.v_plus) > tail_tol or abs(profile(lo) - profile.v_minus) > tail_tol:
            raise TailNotConvergedError("table endpoints do not reach the limits")
        return TailCutoffs(lo, hi, tail_tol)

    xs = np.linspace(-max_range, max_range, 40001)
    log_tol = math.log(tail_tol)
    with np.errstate(divide="ignore"):
        gap = np.log(profile.deviation(xs)) - log_tol
    right_bad = np.flatnonzero((gap > 0) & (xs >= 0))
    left_bad = np.flatnonzero((gap > 0) & (xs < 0))
    if right_bad.size and right_bad[-1] == xs.size - 1:
        raise TailNotConvergedError(
            f"|V - V+| > {tail_tol:g} at x = {max_range}; loosen tail_tol")
    if left_bad.size and left_bad[0] == 0:
        raise TailNotConvergedError(
            f"|V - V-| > {tail_tol:g} at x = {-max_range}; loosen tail_tol")

    def log_gap(x):
        d = float(profile.deviation(x))
        return (math.log(d) if d > 0 else -1e300) - log_tol

    def refine(bad, outward):
        if not bad.size:
            return 0.0
        i = bad[-1] if outward > 0 else bad[0]
        j = i + outward
        a, b = sorted((xs[i], xs[j]))
        x0 = brentq(log_gap, a, b, xtol=1e-12)
        # brentq lands on the boundary; nudge outward so the invariant holds strictly
        return math.nextafter(x0, outward * math.inf) + outward * 1e-9

    return TailCutoffs(float(min(refine(left_bad, -1), 0.0)),
                       float(max(refine(right_bad, 1), 0.0)), tail_tol)


def _flatten_steps(steps):
    out = []
    for s in steps:
        if isinstance(s, (list, tuple)):
            if len(s) != 1:
                raise ProfileError(f"step entries must be numbers or 1-element lists, got {s!r}")
            s = s[0]
        out.append(float(s))
    return out


def _read_table(path) -> tuple[np.ndarray, np.ndarray]:
    rows = []
    with open(path, newline="") as fh:
        for rec in csv.reader(fh):
            if not rec or rec[0].lstrip().startswith("#"):
                continue
            try:
                rows.append((float(rec[0]), float(rec[1])))
            except (ValueError, IndexError):
                if rows:
                    raise ProfileError(f"bad table row {rec!r} in {path}")
                continue  # header
    if not rows:
        raise ProfileError(f"empty table {path}")
    arr = np.asarray(rows)
    return arr[:, 0], arr[:, 1]


def parse_profile(doc: str | dict | Any, base_dir: str | Path | None = None) -> PotentialProfile:
    """Build a profile from a JSON document (string or parsed mapping).

    Schema: ``{"family", "v_minus", "v_plus", "width"?, "center"?, "breaks"?,
    "steps"?, "delta"?}``; tabulated profiles give ``"table": <csv path>`` or
    inline ``"x"``/``"v"`` arrays.
    """
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ProfileError(f"profile is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ProfileError("profile document must be a JSON object")
    family = doc.get("family")
    if family not in FAMILIES:
        raise ProfileError(f"unknown family {family!r}; expected one of {sorted(FAMILIES)}")
    delta = doc.get("delta", 2.0)
    try:
        if family == "piecewise-constant":
            if "steps" not in doc:
                raise ProfileError("piecewise-constant needs 'steps'")
            steps = _flatten_steps(doc["steps"])
            breaks = [float(b) for b in doc.get("breaks", [])]
            prof = PiecewiseConstant(breaks, steps, delta=delta)
            for key, lim in (("v_minus", prof.v_minus), ("v_plus", prof.v_plus)):
                if key in doc and float(doc[key]) != lim:
                    raise ProfileError(f"{key}={doc[key]} disagrees with steps ({lim})")
            return prof
        if family == "constant":
            return ConstantPotential(float(doc.get("level", 0.0)), delta=delta)
        if family == "custom-tabulated":
            if "table" in doc:
                path = Path(doc["table"])
                if base_dir is not None and not path.is_absolute():
                    path = Path(base_dir) / path
                xs, vs = _read_table(path)
                prof = Tabulated(xs, vs, delta=delta, source=path)
            else:
                prof = Tabulated(doc["x"], doc["v"], delta=delta)
            return prof
        for key in ("v_minus", "v_plus"):
            if key not in doc:
                raise ProfileError(f"{family} needs '{key}'")
        cls = FAMILIES[family]
        return cls(doc["v_minus"], doc["v_plus"], width=doc.get("width", 1.0),
                   center=doc.get("center", 0.0), delta=delta)
    except (TypeError, KeyError) as exc:
        raise ProfileError(f"malformed {family} profile: {exc}") from None


def load_profile(source: str) -> PotentialProfile:
    """Parse ``source`` as inline JSON, a JSON file, or a two-column CSV table."""
    text = source.strip()
    if text.startswith("{"):
        return parse_profile(text)
    path = Path(source)
    if not path.exists():
        raise ProfileError(f"profile file not found: {source}")
    if path.suffix.lower() == ".csv":
        xs, vs = _read_table(path)
        return Tabulated(xs, vs, source=path)
    return parse_profile(path.read_text(), base_dir=path.parent)
