import csv
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diracscat.errors import PrecisionError, RegionError, ResolutionError
from diracscat.jost import (Propagation, ScatteringMatrix, SolverSettings, TransferMatrix, current,
                            dirac_rhs, jost_solution, reflection_transmission, scattering_matrix,
                            scattering_matrix_direct, total_reflection_solve, transfer_matrix,
                            wronskian)
from diracscat.model import ConstantPotential, PhysicalParams, PiecewiseConstant, TanhStep
from diracscat.oracle import StepPotential, channel_matrix, interface_product, step_reflection, step_scattering
from diracscat.phase import classical_action, q_integral

T1 = math.atanh(0.5)
P = PhysicalParams(1.0, 1.0, 0.1)
TANH = TanhStep(0.0, 4.0)


@pytest.fixture(scope="module")
def klein():
    return Propagation(P, TANH, 2.0)


@pytest.fixture(scope="module")
def region_two():
    return Propagation(P, TANH, 4.0)


def _all_pairs(prop):
    sols = [prop.solution(k, s) for k in ("in", "out") for s in "+-"]
    return [(a, b) for i, a in enumerate(sols) for b in sols[i + 1:]]


class TestRhs:
    def test_free_plane_wave(self, free):
        xs = np.linspace(-5, 5, 100)
        phi, a = math.sqrt(3), 3**0.25
        ph = np.exp(1j * phi * xs / P.h)
        u = np.array([a * ph, ph / a])
        du = 1j * phi / P.h * u
        assert np.abs(dirac_rhs(P, free, 2.0, xs, u) - du).max() <= 1e-12 * np.abs(du).max()

    def test_gauge_shift(self, free):
        xs = np.linspace(-1, 1, 7)
        u = np.array([np.cos(xs) + 1j, np.sin(xs) - 2j])
        lhs = dirac_rhs(P, ConstantPotential(1.7), 3.0, xs, u)
        rhs = dirac_rhs(P, free, 3.0 - 1.7, xs, u)
        assert np.allclose(lhs, rhs, atol=1e-13)

    @pytest.mark.parametrize("sign", [1, -1])
    def test_massless_decoupling(self, sign):
        p = PhysicalParams(0.0, 1.0, 0.1)
        E = 2.0
        xs = np.linspace(-4, 4, 100)
        # integral of V = 2(1 + tanh) is 2x + 2 log cosh x
        phase = sign * (E * xs - 2 * xs - 2 * np.log(np.cosh(xs))) / p.h
        w = np.exp(1j * phase)
        u = np.array([w, sign * w]) / math.sqrt(2)
        du = 1j * sign * (E - TANH(xs)) / p.h * u
        assert np.abs(dirac_rhs(p, TANH, E, xs, u) - du).max() <= 1e-12 * np.abs(du).max()


class TestWronskian:
    def test_elementary(self):
        assert wronskian((1, 0), (0, 1)) == 1
        u = (1 + 2j, -0.5j)
        assert wronskian(u, u) == 0

    def test_anchored_normalisation(self, klein):
        for side in "+-":
            out, inn = klein.solution("out", side), klein.solution("in", side)
            for i in (0, klein.eval_index, klein.grid.size - 1):
                w = klein.wronskian(out, inn, i)
                assert abs(complex(w) - (-2 if side == "+" else 2)) < 1e-8
        w = klein.wronskian(klein.solution("in", "-"), klein.solution("out", "-"))
        assert abs(complex(w) + 2) < 1e-8

    def test_constancy(self, klein):
        for u, v in _all_pairs(klein):
            assert klein.wronskian_drift(u, v) <= 1e-6 or abs(complex(klein.wronskian(u, v))) < 1e-10


class TestSolutions:
    def test_free_in_minus(self, free):
        sol = jost_solution(P, free, 2.0, "in", "-")
        ref = np.exp(1j * math.sqrt(3) * sol.grid / P.h)[:, None] * np.array([3**0.25, 3**-0.25])
        assert np.abs(sol.values - ref).max() <= 1e-10

    def test_step_matches_oracle(self, step):
        sol = jost_solution(P, step, 2.0, "in", "-")
        st_ = StepPotential.from_profile(step)
        coeff = interface_product(P, st_, 2.0)[:, 0]
        for i in range(0, sol.grid.size, max(sol.grid.size // 40, 1)):
            x = sol.grid[i]
            if x < 0:
                ref = channel_matrix(P, 0.0, 2.0, x)[:, 0]
            else:
                ref = channel_matrix(P, 4.0, 2.0, x) @ coeff
            assert np.abs(sol.values[i] - ref).max() <= 1e-8

    def test_current_conservation(self, klein):
        for kind in ("in", "out"):
            for side in "+-":
                j = current(klein.solution(kind, side).values.T)
                assert np.abs(j - j[0]).max() <= 1e-8 * abs(j[0])

    def test_conjugation_symmetry(self, klein):
        beta = np.array([1.0, -1.0])
        for side in "+-":
            out = klein.solution("out", side).values
            inn = klein.solution("in", side).values
            scale = np.abs(out).max()
            assert np.abs(beta * inn.conj() - out).max() <= 1e-8 * scale

    def test_decaying_region_two(self, region_two):
        sol = region_two.solution("decaying", "+")
        mags = np.linalg.norm(sol.values, axis=1)
        start = int(np.searchsorted(sol.grid, T1 + 1))
        window = mags[start:start + 21]
        assert window.size == 21 and np.all(np.diff(window) < 0)
        assert sol.norm_data["decay_rate"] == pytest.approx(0.0) or sol.norm_data["decay_rate"] > 0

    def test_decaying_needs_evanescent_side(self, klein, region_two):
        with pytest.raises(RegionError):
            klein.solution("decaying", "+")
        with pytest.raises(RegionError):
            region_two.solution("in", "+")

    def test_bad_kind(self, free):
        with pytest.raises(ValueError):
            jost_solution(P, free, 2.0, "sideways", "+")

    def test_csv(self, free, tmp_path):
        sol = jost_solution(P, free, 2.0, "out", "+")
        path = tmp_path / "sol.csv"
        sol.to_csv(path)
        rows = list(csv.reader(open(path)))
        assert rows[0] == ["x", "re_u1", "im_u1", "re_u2", "im_u2"]
        assert len(rows) == sol.grid.size + 1
        assert complex(float(rows[5][1]), float(rows[5][2])) == sol.values[4, 0]


class TestTransferAndScattering:
    def test_free(self, free):
        T = transfer_matrix(P, free, 2.0)
        assert abs(complex(T.t) - 1) < 1e-12 and abs(complex(T.r)) < 1e-12
        S = scattering_matrix(P, free, 2.0)
        assert np.allclose(S.matrix, np.eye(2), atol=1e-12)
        assert reflection_transmission(S) == pytest.approx((0.0, 1.0), abs=1e-12)

    def test_step_oracle(self, step):
        num = scattering_matrix(P, step, 2.0)
        ref = step_scattering(P, StepPotential.from_profile(step), 2.0)
        assert np.abs(num.matrix - ref.matrix).max() <= 1e-8
        assert num.R + num.T == pytest.approx(1.0, abs=1e-12)

    def test_tanh_determinant(self, klein):
        assert klein.transfer.det_defect() <= 1e-6
        S = ScatteringMatrix.from_transfer(klein.transfer)
        assert S.unitarity_defect() <= 1e-6
        assert max(S.relation_defects()) <= 1e-10

    def test_direct_agrees(self, klein):
        a = ScatteringMatrix.from_transfer(klein.transfer).matrix
        b = scattering_matrix_direct(klein).matrix
        assert np.abs(a - b).max() <= 1e-10

    def test_tunnelling_order_of_magnitude(self, klein):
        S = ScatteringMatrix.from_transfer(klein.transfer)
        predicted = -2 * classical_action(P, TANH, 2.0) / P.h
        assert 0.5 < math.log(S.T) / predicted < 2.0

    def test_transfer_from_entries(self):
        T = TransferMatrix(1.25 + 0j, 0.75j)
        assert T.det_defect() < 1e-15
        S = ScatteringMatrix.from_transfer(T)
        assert S.unitarity_defect() < 1e-15

    @settings(max_examples=8)
    @given(st.sampled_from([-3.0, -2.0, 1.5, 2.0, 2.5, 5.5, 7.0]), st.sampled_from([0.2, 0.1]))
    def test_unitarity_property(self, E, h):
        S = scattering_matrix(PhysicalParams(1.0, 1.0, h), TanhStep(0.0, 4.0, width=0.8), E)
        assert S.unitarity_defect() <= 1e-6

    def test_wrong_region(self, region_two):
        with pytest.raises(RegionError):
            region_two.transfer

    def test_precision_guard(self):
        with pytest.raises(PrecisionError, match="use h >="):
            transfer_matrix(PhysicalParams(1.0, 1.0, 0.001), TANH, 2.0)

    def test_step_budget(self):
        with pytest.raises(ResolutionError):
            transfer_matrix(P, TANH, 6.0, SolverSettings(max_steps=50))

    def test_boundary_energy(self):
        with pytest.raises(RegionError):
            Propagation(P, TANH, 3.0)


class TestTotalReflection:
    def test_modulus_one(self, region_two):
        assert abs(abs(region_two.reflection.alpha_out_minus) - 1) <= 1e-4

    def test_phase_improves_with_h(self):
        E = 4.0
        errs = []
        for h in (0.2, 0.1):
            p = P.with_h(h)
            alpha = total_reflection_solve(p, TANH, E).alpha_out_minus
            predicted = 2 / h * (q_integral(p, TANH, E, "-") + math.sqrt(15) * T1) - math.pi / 2
            errs.append(abs(np.angle(alpha * np.exp(-1j * predicted))))
        assert errs[1] < errs[0]

    def test_step_oracle(self, step):
        num = total_reflection_solve(P, step, 4.0)
        ref = step_reflection(P, StepPotential.from_profile(step), 4.0)
        assert abs(num.alpha_out_minus - ref.alpha_out) <= 1e-8
        assert abs(num.beta_d_plus - ref.beta_d) <= 1e-8

    def test_region_four(self):
        refl = total_reflection_solve(P, TANH, -0.5)
        assert refl.side == "+"
        assert abs(abs(refl.alpha_out) - 1) <= 1e-8

    def test_wrong_region(self, klein):
        with pytest.raises(RegionError):
            klein.reflection
