import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import optimize
from scipy.integrate import trapezoid

import heatbind as hb
from heatbind.errors import NumericalError

K32_REFERENCE = 0.4272605428625267  # Aubin formula at (D, q) = (3, 2), mpmath


class TestKdq:
    def test_working_2d_value(self):
        assert hb.kdq(2, 1) == 2 / math.pi

    def test_k32_against_independent_transcription(self):
        # separate re-derivation of each factor
        D, q = 3, 2
        omega2 = 4 * math.pi
        head = ((q - 1) / (D - q)) * ((D - q) / (D * (q - 1))) ** (1 / q)
        tail = (
            math.gamma(D + 1)
            / (math.gamma(D / q) * math.gamma(D + 1 - D / q) * omega2)
        ) ** (1 / D)
        assert hb.kdq(3, 2) == pytest.approx(head * tail, rel=1e-14)
        assert hb.kdq(3, 2) == pytest.approx(K32_REFERENCE, rel=1e-13)

    def test_continuity_in_q_above_one(self):
        # the general formula approaches its own q -> 1 limit smoothly
        qs = np.linspace(1.0001, 1.4, 40)
        vals = [hb.kdq(2, q) for q in qs]
        diffs = np.abs(np.diff(vals))
        assert np.all(diffs < 0.01)
        assert hb.kdq(2, 1.0 + 1e-7) == pytest.approx(1 / (2 * math.sqrt(math.pi)), rel=1e-3)

    def test_rejects_bad_exponents(self):
        with pytest.raises(ValueError):
            hb.kdq(2, 2)
        with pytest.raises(ValueError):
            hb.kdq(2, 3)
        with pytest.raises(ValueError):
            hb.kdq(3, 0.5)


class TestAubinDefaults:
    def test_zero_on_open_manifolds(self):
        assert hb.aubin_constant(hb.Plane()) == 0.0
        assert hb.aubin_constant(hb.Hyperbolic(2.0)) == 0.0

    def test_compact_requires_user_value(self):
        with pytest.raises(ValueError):
            hb.aubin_constant(hb.Torus(1.0))


class TestMaximizeRatio:
    def test_closed_forms(self):
        assert hb.maximize_ratio(1.0, 2.0) == (2.0, 5.0)
        assert hb.maximize_ratio(0.5, 1.0) == (2.0, 3.0)

    def test_grid_against_golden_section(self):
        # 10x10 grid; the numeric maximizer must land within 1e-6 of beta/alpha
        for alpha in np.linspace(0.5, 5.0, 10):
            for beta in np.linspace(0.5, 5.0, 10):
                zstar, fmax = hb.maximize_ratio(alpha, beta)
                res = optimize.minimize_scalar(
                    lambda z: -((1 + beta * z) ** 2) / (1 + alpha * z * z),
                    bounds=(1e-8, 50 * zstar),
                    method="bounded",
                    options={"xatol": 1e-10},
                )
                assert res.x == pytest.approx(zstar, abs=1e-6, rel=1e-6)
                assert -res.fun == pytest.approx(fmax, rel=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(
        alpha=st.floats(min_value=0.2, max_value=5.0),
        beta=st.floats(min_value=0.2, max_value=5.0),
    )
    def test_against_golden_section(self, alpha, beta):
        zstar, fmax = hb.maximize_ratio(alpha, beta)
        res = optimize.minimize_scalar(
            lambda z: -((1 + beta * z) ** 2) / (1 + alpha * z * z),
            bounds=(1e-8, 50 * zstar),
            method="bounded",
            options={"xatol": 1e-10},
        )
        assert res.x == pytest.approx(zstar, rel=1e-5, abs=1e-6)
        assert -res.fun == pytest.approx(fmax, rel=1e-10)

    def test_validation(self):
        with pytest.raises(ValueError):
            hb.maximize_ratio(0.0, 1.0)


class TestMeanFieldBound:
    def test_reference_point(self):
        x = hb.meanfield_bound(hb.MeanFieldProblem(n=10, mu2=1.0, aubin=1.0))
        assert x == pytest.approx(640 / math.pi, rel=1e-13)

    def test_two_point_slope(self):
        x10 = hb.meanfield_bound(hb.MeanFieldProblem(n=10, mu2=1.0, aubin=1.0))
        x20 = hb.meanfield_bound(hb.MeanFieldProblem(n=20, mu2=1.0, aubin=1.0))
        assert x20 == pytest.approx(2 * 640 / math.pi, rel=1e-12)
        assert (x20 - x10) / 10 == pytest.approx(64 / math.pi, rel=1e-12)

    def test_aubin_zero_reports_limit(self):
        x = hb.meanfield_bound(hb.MeanFieldProblem(n=10, mu2=1.0, aubin=0.0))
        assert x == pytest.approx(64 * 10 / math.pi, rel=1e-15)

    def test_warns_below_ten(self):
        with pytest.warns(UserWarning):
            hb.meanfield_bound(hb.MeanFieldProblem(n=5, mu2=1.0, aubin=1.0))

    def test_linearity_of_sweep(self):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            rows = hb.meanfield_sweep(list(range(10, 201, 10)), aubin=1.0)
        ns = np.array([r[0] for r in rows], dtype=float)
        xs = np.array([r[1] for r in rows])
        slope, intercept = np.polyfit(ns, xs, 1)
        fit = slope * ns + intercept
        r2 = 1 - np.sum((xs - fit) ** 2) / np.sum((xs - xs.mean()) ** 2)
        assert r2 > 0.999
        assert slope == pytest.approx(hb.CHAIN_GROWTH_RATE, rel=1e-10)
        # documented factor-two gap with the steeper quoted rate
        assert hb.CHAIN_GROWTH_RATE * 2 == pytest.approx(hb.PAPER_GROWTH_RATE)

    def test_problem_validation(self):
        with pytest.raises(ValueError):
            hb.MeanFieldProblem(n=2, mu2=1.0, aubin=1.0)
        with pytest.raises(ValueError):
            hb.MeanFieldProblem(n=10, mu2=-1.0, aubin=1.0)
        with pytest.raises(ValueError):
            hb.MeanFieldProblem(n=10, mu2=1.0, aubin=-0.5)


def _orthogonalized_pair_profile(u0):
    """psi0 orthogonal to both u0 and |u0|^2 on the grid, unit-normalized."""
    r = u0.r
    basis = []
    for w in (u0.values, u0.values**2):
        v = w.astype(float)
        for b in basis:
            v = v - hb.profile_integral(u0, v * b) * b
        basis.append(v / math.sqrt(hb.profile_integral(u0, v * v)))
    seed = (1.0 - 0.35 * r * r) * np.exp(-r * r / 4.0)
    for _ in range(2):  # reorthogonalize to kill roundoff leakage
        for b in basis:
            seed = seed - hb.profile_integral(u0, seed * b) * b
    seed /= math.sqrt(hb.profile_integral(u0, seed * seed))
    return hb.RadialProfile(r, seed)


class TestMeanFieldResidual:
    def test_gaussian_scan_single_sign_change(self):
        u0 = hb.gaussian_radial()
        es = -np.geomspace(1.0, 1e8, 25)[::-1]
        res = [hb.meanfield_residual(hb.Plane(), 50, 1.0, e, u0) for e in es]
        signs = np.sign(res)
        assert int(np.sum(np.abs(np.diff(signs)) > 0)) == 1

    def test_lhs_up_rhs_down_in_depth(self):
        # monotone sides imply the unique crossing
        u0 = hb.gaussian_radial()
        kin = hb.profile_kinetic(u0)
        psi0 = hb.saturating_pair_profile(u0)
        i1 = hb.profile_integral(u0, u0.values**2 * psi0.values)
        i2 = hb.profile_integral(u0, u0.values * psi0.values)
        n = 50
        abs_es = np.geomspace(1.0, 1e8, 25)
        lhs = np.log(abs_es) / (8 * math.pi)
        rhs = (0.5 * n * n * i1**2 + 2 * n * i2**2) / (abs_es + n * kin)
        assert np.all(np.diff(lhs) > 0)
        assert np.all(np.diff(rhs) < 0)

    def test_orthogonal_pair_profile_kills_rhs(self):
        u0 = hb.gaussian_radial()
        psi0 = _orthogonalized_pair_profile(u0)
        E = -100.0
        residual = hb.meanfield_residual(hb.Plane(), 50, 1.0, E, u0, psi0)
        lhs = math.log(100.0) / (8 * math.pi)
        assert residual == pytest.approx(lhs, abs=1e-12)

    def test_doubling_n_quadruples_pairing_numerator(self):
        u0 = hb.gaussian_radial()
        psi0 = hb.saturating_pair_profile(u0)
        i1 = hb.profile_integral(u0, u0.values**2 * psi0.values)
        num = lambda n: 0.5 * n * n * i1**2
        assert num(100) / num(50) == pytest.approx(4.0, rel=1e-14)

    def test_cauchy_schwarz_overlap_bound(self):
        # (int u0 |u0|^2)^2 / int |u0|^4 <= 1 for any normalized profile
        for sigma in (0.5, 1.0, 2.3):
            u0 = hb.gaussian_radial(sigma=sigma)
            num = hb.profile_integral(u0, u0.values**3) ** 2
            den = hb.profile_integral(u0, u0.values**4)
            assert num / den <= 1.0 + 1e-12

    def test_torus_constant_profile_analytic(self):
        length, n, E = 2.0, 5, -10.0
        grid = np.full((16, 16), 1.0 / length)
        tp = hb.TorusProfile(length, grid)
        got = hb.meanfield_residual(hb.Torus(length), n, 1.0, E, tp)
        rhs = (0.5 * n * n / length**2 + 2 * n) / 10.0
        expected = math.log(10.0) / (8 * math.pi) - rhs
        assert got == pytest.approx(expected, rel=1e-12)

    def test_unnormalized_profile_rejected(self):
        u0 = hb.gaussian_radial()
        bad = hb.RadialProfile(u0.r, 1.5 * u0.values)
        with pytest.raises(ValueError):
            hb.meanfield_residual(hb.Plane(), 10, 1.0, -5.0, bad)

    def test_coarse_grid_rejected(self):
        # a kink invisible to the coarse grid trips the Richardson check
        r = np.linspace(0.0, 10.0, 41)
        vals = np.exp(-r) * (1 + 0.5 * np.cos(8 * r))
        prof = hb.RadialProfile(r, vals / math.sqrt(trapezoid(vals**2 * 2 * math.pi * r, r)))
        with pytest.raises(NumericalError):
            hb.profile_kinetic(prof)

    def test_kinetic_reference_gaussian(self):
        # K = 1/(2 sigma^2) for the radial Gaussian
        u0 = hb.gaussian_radial(sigma=1.0)
        assert hb.profile_kinetic(u0) == pytest.approx(0.5, rel=1e-4)
