"""Phase integrals against an independent tanh-sinh (mpmath) quadrature.

Frozen reference values were produced by ``_mp_quad`` below at 30 digits.
"""
import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from diracscat.errors import (DomainError, HypothesisError, PathCrossesTurningPointError,
                              RegionError, SingularPointError)
from diracscat.model import (CustomProfile, ConstantPotential, ErfStep, PhysicalParams,
                             RationalStep, TanhStep)
from diracscat.phase import (amp_A, amplitude_factors, amplitude_H, classical_action, phase_at_infinity,
                             phase_data, phase_T, phase_T0, phase_Ttilde, phi, q_integral,
                             q_minus_integral, tail_error_estimate)

T1 = math.atanh(0.5)
S_CLOSED = math.pi * (2 - math.sqrt(3))

# tanh profile 2(1 + tanh x), m = c = 1
INT_QMINUS_E2 = -0.731063492056941485690929376982
TTILDE_E6 = 0.10990638977202760466194757797
Z_E2_XM3_IMAG = -5.20187214016183110346646480963
Z_E4_X3 = -3.00001224807420135196345928701
INT_QMINUS_E4 = -3.01154280120112602392673847021
INT_KAPPA_E4 = -0.186822009376689313383034695224
# rational step 2 + 2x/sqrt(1+x^2)
RATIONAL_QMINUS_E2 = -1.42211205513691904901340845557
RATIONAL_S_E2 = 0.873152581892675549645633563233


def _mp_quad(f, a, b):
    with mpmath.workdps(30):
        return float(mpmath.quad(f, [a, b]))


class TestPhiAndA:
    def test_examples(self, unit):
        assert phi(unit, 2.0) == pytest.approx(math.sqrt(3), rel=1e-15)
        assert phi(unit, -2.0) == pytest.approx(-math.sqrt(3), rel=1e-15)
        assert amp_A(unit, 2.0) == pytest.approx(3**0.25, rel=1e-15)
        assert amp_A(unit, -2.0) == pytest.approx(3**-0.25, rel=1e-15)
        assert amp_A(unit, 1e6) == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("e", [1.0, -1.0, 0.3, 0.0])
    def test_domain(self, unit, e):
        with pytest.raises(DomainError):
            phi(unit, e)
        with pytest.raises(DomainError):
            amp_A(unit, e)

    @given(st.floats(1.0001, 1e4), st.booleans(), st.floats(0.1, 3.0))
    def test_identities(self, mag, negative, m):
        p = PhysicalParams(m, 1.0)
        e = -mag * p.mc2 if negative else mag * p.mc2
        A = amp_A(p, e)
        assert A**4 * (e - p.mc2) == pytest.approx(e + p.mc2, rel=1e-9)
        assert phi(p, e) * math.copysign(1.0, e) >= 0


class TestPhaseAtInfinity:
    def test_free(self, unit, free):
        assert phase_at_infinity(unit, free, 2.0, 1.0, "+") == pytest.approx(1j * math.sqrt(3), abs=1e-14)

    def test_allowed_side(self, unit, tanh):
        z = phase_at_infinity(unit, tanh, 2.0, -3.0, "-")
        assert z.real == 0.0
        assert z.imag == pytest.approx(Z_E2_XM3_IMAG, abs=1e-10)

    def test_evanescent_side_real_negative(self, unit, tanh):
        z = phase_at_infinity(unit, tanh, 4.0, 3.0, "+")
        assert z.imag == 0.0 and z.real < 0
        assert z.real == pytest.approx(Z_E4_X3, abs=1e-10)

    def test_crossing(self, unit, tanh):
        with pytest.raises(PathCrossesTurningPointError):
            phase_at_infinity(unit, tanh, 2.0, 0.0, "-")
        with pytest.raises(PathCrossesTurningPointError):
            phase_at_infinity(unit, tanh, 2.0, 0.0, "+")

    @given(st.floats(-9.0, -0.7))
    def test_additivity(self, x):
        """``z(t1, -inf) = z(x, -inf) - z(x, t1)`` with ``z(x, t1) = i int_{t1}^x P``."""
        p, prof = PhysicalParams(1.0, 1.0), TanhStep(0.0, 4.0)
        direct = phase_at_infinity(p, prof, 2.0, -T1, "-")
        inner = _mp_quad(lambda t: mpmath.sqrt(max((2 - 2 * (1 + mpmath.tanh(t))) ** 2 - 1, 0)),
                         -T1, x)
        assert abs(direct - (phase_at_infinity(p, prof, 2.0, x, "-") - 1j * inner)) < 1e-9


class TestAction:
    def test_closed_form(self, unit, tanh):
        assert classical_action(unit, tanh, 2.0) == pytest.approx(S_CLOSED, abs=1e-10)

    def test_positive_across_zone(self, unit, tanh):
        vals = [classical_action(unit, tanh, E) for E in (1.5, 2.0, 2.5)]
        assert all(v > 0 for v in vals)
        assert vals[0] == pytest.approx(vals[2], abs=1e-10)  # point symmetry about E = 2

    def test_rational(self, unit):
        assert classical_action(unit, RationalStep(0.0, 4.0), 2.0) == pytest.approx(RATIONAL_S_E2, abs=1e-9)

    def test_step_has_no_pair(self, unit, step):
        with pytest.raises(HypothesisError):
            classical_action(unit, step, 2.0)

    def test_wrong_region(self, unit, tanh):
        with pytest.raises((RegionError, HypothesisError)):
            classical_action(unit, tanh, 6.0)


class TestQIntegrals:
    def test_constant(self, unit, free):
        assert q_integral(unit, free, 2.0, "-") == 0.0
        assert q_integral(unit, free, 2.0, "+") == 0.0

    def test_symmetric_sides(self, unit, tanh):
        qm = q_integral(unit, tanh, 2.0, "-")
        assert qm == pytest.approx(INT_QMINUS_E2, abs=1e-10)
        assert q_integral(unit, tanh, 2.0, "+") == pytest.approx(qm, abs=1e-10)

    def test_region_two(self, unit, tanh):
        assert q_integral(unit, tanh, 4.0, "-") == pytest.approx(INT_QMINUS_E4, abs=1e-10)
        assert q_minus_integral(unit, tanh, 4.0) == pytest.approx(INT_KAPPA_E4, abs=1e-10)

    def test_rational_slow_tail(self, unit):
        prof = RationalStep(0.0, 4.0)
        assert q_integral(unit, prof, 2.0, "-") == pytest.approx(RATIONAL_QMINUS_E2, abs=1e-9)
        # truncating at X versus 2X moves the value by no more than the envelope bound
        t1 = -1 / math.sqrt(3)
        f = lambda t: math.sqrt((prof(t) - 2) ** 2 - 1) - math.sqrt(3)
        from scipy.integrate import quad
        for X in (20.0, 40.0):
            a = quad(f, -X, t1, limit=200)[0]
            b = quad(f, -2 * X, t1, limit=200)[0]
            lip = 2 / math.sqrt(3)
            assert abs(a - b) <= tail_error_estimate(prof, X, lip)

    def test_bad_side(self, unit, tanh):
        with pytest.raises(ValueError):
            q_integral(unit, tanh, 2.0, "x")

    def test_q_minus_needs_region_two(self, unit, tanh):
        with pytest.raises(RegionError):
            q_minus_integral(unit, tanh, 2.0)


class TestAssembledPhases:
    def test_T_symmetric_profile(self, unit, tanh):
        # int Q- - int Q+ cancel and t1 = -t2
        assert phase_T(unit, tanh, 2.0) == pytest.approx(0.0, abs=1e-9)

    def test_T_asymmetric(self, unit):
        prof = TanhStep(0.0, 4.0, width=1.3, center=0.4)
        E = 2.2
        with mpmath.workdps(30):
            E = mpmath.mpf(E)  # a float E**2 - 1 leaves a constant residue in the tails
            V = lambda t: 2 * (1 + mpmath.tanh((t - 0.4) / 1.3))
            t1 = 0.4 + 1.3 * mpmath.atanh((E - 1) / 2 - 1)
            t2 = 0.4 + 1.3 * mpmath.atanh((E + 1) / 2 - 1)
            em, ep = E**2 - 1, (4 - E) ** 2 - 1
            qm = mpmath.quad(lambda t: mpmath.sqrt((V(t) - E) ** 2 - 1) - mpmath.sqrt(em), [-mpmath.inf, t1])
            qp = mpmath.quad(lambda t: mpmath.sqrt((V(t) - E) ** 2 - 1) - mpmath.sqrt(ep), [t2, mpmath.inf])
            ref = float(qm - qp + t1 * mpmath.sqrt(em) + t2 * mpmath.sqrt(ep))
        assert phase_T(unit, prof, 2.2) == pytest.approx(ref, abs=1e-9)

    def test_T0_symmetric(self, tanh):
        assert phase_T0(tanh, 2.0, 1.0) == pytest.approx(0.0, abs=1e-10)

    def test_T0_shifted_centre(self):
        # odd about the centre: only the t0 (V+ - V-) term survives
        assert phase_T0(ErfStep(0.0, 4.0, center=0.3), 2.0, 2.0) == pytest.approx(0.6, abs=1e-10)

    def test_T0_two_widths(self):
        # left width 1, right width 2: T0 = -2 ln 2 + 4 ln 2
        f = lambda x: np.where(x < 0, 2 * (1 + np.tanh(x)), 2 * (1 + np.tanh(x / 2)))
        d = lambda x: np.where(x < 0, 2 / np.cosh(x) ** 2, 1 / np.cosh(x / 2) ** 2)
        prof = CustomProfile(f, d, 0.0, 4.0, K=8.0)
        assert phase_T0(prof, 2.0, 1.0) == pytest.approx(2 * math.log(2), abs=1e-9)

    def test_Ttilde(self, unit, tanh, free):
        assert phase_Ttilde(unit, free, 2.0) == 0.0
        assert phase_Ttilde(unit, tanh, 6.0) == pytest.approx(TTILDE_E6, abs=1e-10)

    def test_Ttilde_region(self, unit, tanh):
        with pytest.raises(RegionError):
            phase_Ttilde(unit, tanh, 2.0)

    def test_phase_data(self, unit, tanh):
        pd = phase_data(unit, tanh, 2.0)
        assert pd.action_S == pytest.approx(S_CLOSED, abs=1e-10)
        assert pd.E_minus == pytest.approx(3.0) and pd.E_plus == pytest.approx(3.0)
        assert pd.phase_Ttilde is None and pd.phase_T0 is None
        assert pd.z_inf_minus is None  # x = 0 sits between the turning points
        pd6 = phase_data(unit, tanh, 6.0)
        assert pd6.phase_Ttilde == pytest.approx(TTILDE_E6, abs=1e-10)
        assert pd6.action_S is None


class TestAmplitudes:
    def test_allowed_zone(self, unit, tanh):
        v = tanh(-5.0)
        ref = ((2 - v + 1) / (2 - v - 1)) ** 0.25
        h = amplitude_H(unit, tanh, 2.0, -5.0)
        assert h.imag == 0 and h.real == pytest.approx(ref, rel=1e-14)
        assert h.real == pytest.approx(3**0.25, abs=1e-4)

    def test_free_matches_A(self, unit, free):
        for x in (-3.0, 0.0, 7.0):
            assert amplitude_H(unit, free, 2.0, x) == pytest.approx(amp_A(unit, 2.0), rel=1e-15)

    def test_evanescent_variant(self, unit, tanh):
        v = tanh(3.0)
        h = amplitude_H(unit, tanh, 4.0, 3.0, "H")
        assert h.imag == 0 and h.real > 0
        assert h.real == pytest.approx(((1 + 4 - v) / (1 - 4 + v)) ** 0.25, rel=1e-14)

    def test_continued_root_tag(self, unit, tanh):
        h = amplitude_H(unit, tanh, 2.0, 0.0)  # forbidden zone: radicand negative
        assert cmath.phase(h) == pytest.approx(-math.pi / 4, abs=1e-15)

    def test_turning_point(self, unit, tanh):
        with pytest.raises(SingularPointError):
            amplitude_H(unit, tanh, 2.0, -T1)

    def test_factors(self, unit, tanh):
        left = amplitude_factors(unit, tanh, 2.0, "-")
        assert left.phi_of_E == pytest.approx(math.sqrt(3))
        assert left.alpha_pm == pytest.approx(3**0.25 * cmath.exp(1j * math.pi / 4))
        right = amplitude_factors(unit, tanh, 2.0, "+")
        assert right.alpha_pm == pytest.approx(3**-0.25 * cmath.exp(-1j * math.pi / 4))
        ev = amplitude_factors(unit, tanh, 4.0, "+")
        assert ev.phi_of_E is None and ev.alpha_pm.imag == 0 and ev.alpha_pm.real == pytest.approx(1.0)
