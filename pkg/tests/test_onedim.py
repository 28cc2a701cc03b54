import math

import numpy as np
import pytest
from scipy import integrate, optimize
from scipy.integrate import trapezoid

import heatbind as hb


class TestClosedFormEnergies:
    def test_exact_values(self):
        assert hb.exact_ground_energy(2, 1.0) == pytest.approx(-0.125)
        assert hb.exact_ground_energy(3, 2.0) == pytest.approx(-2.0)
        assert hb.exact_ground_energy(1, 5.0) == 0.0

    def test_hartree_values(self):
        assert hb.hartree_ground_energy(2, 1.0) == pytest.approx(-1 / 12)
        assert hb.hartree_ground_energy(1, 3.0) == 0.0

    @pytest.mark.parametrize("n", [2, 5, 100, 1000])
    def test_ratio_is_n_over_n_plus_one(self, n):
        ratio = hb.hartree_ground_energy(n, 1.0) / hb.exact_ground_energy(n, 1.0)
        assert ratio == pytest.approx(n / (n + 1), rel=1e-14)

    def test_ratio_tends_to_one(self):
        assert hb.hartree_ground_energy(100, 1.0) / hb.exact_ground_energy(100, 1.0) == (
            pytest.approx(0.990099, abs=1e-6)
        )

    def test_validation(self):
        with pytest.raises(ValueError):
            hb.exact_ground_energy(0, 1.0)


class TestHartreeProfile:
    def test_peak_value(self):
        # b = lam n / 4 = 1: sqrt(1/2)
        assert hb.hartree_profile(4, 1.0, 0.0) == pytest.approx(math.sqrt(0.5), rel=1e-14)

    def test_unit_norm_by_quadrature(self):
        x = np.linspace(-60.0, 60.0, 200001)
        psi = hb.hartree_profile(3, 1.2, x)
        assert trapezoid(psi * psi, x) == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("b", [0.5, 1.0, 4.0])
    def test_kinetic_energy_b2_over_3(self, b):
        # profile sqrt(b/2) sech(bx): int |psi'|^2 = b^2/3
        n, lam = 4, b  # makes lam*n/4 = b
        val, _ = integrate.quad(
            lambda x: (b * math.sqrt(b / 2) * math.tanh(b * x) / math.cosh(b * x)) ** 2,
            -80 / b,
            80 / b,
            limit=200,
        )
        assert val == pytest.approx(b * b / 3, rel=1e-8)
        assert hb.hartree_profile(n, lam, 0.0) == pytest.approx(math.sqrt(b / 2), rel=1e-14)


class TestSobolev1d:
    def test_q4_value(self):
        assert hb.sobolev_1d(4) == pytest.approx(3 ** 0.25, abs=1e-15)

    def test_rejects_q_at_most_two(self):
        with pytest.raises(ValueError):
            hb.sobolev_1d(2.0)

    @pytest.mark.parametrize("b", [0.5, 1.0, 4.0])
    def test_sech_saturates_equality_at_q4(self, b):
        # int u^4 = K^{1/2}[u]/sqrt(3) for u = sqrt(b/2) sech(bx)
        x = np.linspace(-80 / b, 80 / b, 400001)
        u = np.sqrt(b / 2) / np.cosh(b * x)
        quartic = trapezoid(u**4, x)
        kinetic = b * b / 3
        assert quartic == pytest.approx(math.sqrt(kinetic) / math.sqrt(3), abs=1e-8)

    def test_gaussian_strictly_inside_inequality(self):
        # ||u'||^theta ||u||^{1-theta} > S_{1,4} ||u||_4 off the saturator family
        x = np.linspace(-40.0, 40.0, 400001)
        u = np.exp(-x * x / 2)
        u /= math.sqrt(trapezoid(u * u, x))
        kinetic = trapezoid(np.gradient(u, x) ** 2, x)
        lhs = kinetic ** 0.25
        rhs = hb.sobolev_1d(4) * trapezoid(u**4, x) ** 0.5
        assert lhs > rhs * (1 + 1e-4)


class TestTwoBodyPhi1d:
    def test_values(self):
        assert hb.two_body_phi_1d(1.0, -1.0, verify=True) == pytest.approx(
            1 - 1 / math.sqrt(8), rel=1e-12
        )
        assert hb.two_body_phi_1d(1.0, -0.125) == pytest.approx(0.0, abs=1e-15)

    def test_deep_energy_limit(self):
        assert hb.two_body_phi_1d(2.0, -1e12) == pytest.approx(0.5, rel=1e-6)

    @pytest.mark.parametrize("lam", [0.5, 1.0, 2.0, 5.0])
    def test_zero_matches_exact_two_body_energy(self, lam):
        root = optimize.brentq(
            lambda e: hb.two_body_phi_1d(lam, e),
            -100 * lam * lam,
            -1e-6 * lam * lam,
            xtol=1e-14,
            rtol=8.9e-16,
        )
        assert root == pytest.approx(hb.exact_ground_energy(2, lam), rel=1e-10)

    def test_monotone_decreasing_in_energy(self):
        es = np.linspace(-30.0, -0.01, 50)
        vals = [hb.two_body_phi_1d(1.0, e) for e in es]
        assert all(a > b for a, b in zip(vals, vals[1:]))


class TestMeanField1d:
    def test_closed_form(self):
        assert hb.meanfield_1d_solve(100, 1.0) == pytest.approx(-1e6 / 48, rel=1e-12)

    def test_ratio_to_hartree_tends_to_one(self):
        n = 1000
        ratio = hb.meanfield_1d_solve(n, 1.0) / hb.hartree_ground_energy(n, 1.0)
        assert ratio == pytest.approx(n / (n - 1), rel=1e-9)
        assert ratio == pytest.approx(1.0, abs=2e-3)

    def test_saturating_width_recovered(self):
        # z = n K = |E| with K = b^2/3 gives b = lam n / 4
        n, lam = 40, 0.7
        abs_e = abs(hb.meanfield_1d_solve(n, lam))
        b = math.sqrt(3 * abs_e / n)
        assert b == pytest.approx(lam * n / 4, rel=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError):
            hb.meanfield_1d_solve(2, 1.0)


class TestComparisonRows:
    def test_row_contents(self):
        rows = hb.comparison_rows([2, 100], 1.0)
        assert rows[0][0] == 2 and rows[0][1] == pytest.approx(-0.125)
        assert math.isnan(rows[0][3])
        n, exact, hartree, mf, h_gap, mf_gap = rows[1]
        assert exact == pytest.approx(-20831.25)
        assert mf == pytest.approx(-1e6 / 48, rel=1e-12)
        assert h_gap == pytest.approx(hartree / exact - 1, rel=1e-12)
