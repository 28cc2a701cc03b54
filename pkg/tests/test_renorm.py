import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy import integrate

import heatbind as hb

EIGHT_PI = 8 * math.pi

# mpmath, 40 digits
E1_AT_1 = 0.21938393439552027
E1_AT_10 = 4.156968929685324e-06
LAMBDA_AT_1 = 114.56053652227483   # 8 pi / E1(1)


def _e1_quadrature(x):
    """Defining integral int_x^inf e^{-u}/u du, independent oracle."""
    val, err = integrate.quad(
        lambda u: math.exp(-u) / u, x, x + 80.0,
        epsabs=1e-15, epsrel=1e-13, limit=300,
    )
    assert err < 1e-11 * val
    return val


def _e1_continued_fraction(x):
    """Lentz continued fraction for E1, valid for x >= 1."""
    tiny = 1e-300
    b = x + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 200):
        a = -i * i
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return math.exp(-x) * h


class TestBareCoupling:
    def test_unit_argument(self):
        lam = hb.bare_coupling(1.0, 1.0)
        assert lam == pytest.approx(LAMBDA_AT_1, rel=1e-12)
        assert 1 / lam == pytest.approx(E1_AT_1 / EIGHT_PI, rel=1e-12)

    def test_against_defining_integral(self):
        for eps, mu2 in [(1.0, 1.0), (0.5, 2.0), (2.5, 4.0)]:
            oracle = EIGHT_PI / _e1_quadrature(eps * mu2)
            assert hb.bare_coupling(eps, mu2) == pytest.approx(oracle, rel=1e-10)

    def test_against_continued_fraction(self):
        oracle = EIGHT_PI / _e1_continued_fraction(10.0)
        got = hb.bare_coupling(10.0, 1.0)
        assert got == pytest.approx(oracle, rel=1e-10)
        assert got == pytest.approx(EIGHT_PI / E1_AT_10, rel=1e-10)

    def test_vanishes_monotonically_at_small_cutoff(self):
        vals = [hb.bare_coupling(10.0**-k, 1.0) for k in range(1, 14)]
        assert all(a > b for a, b in zip(vals, vals[1:]))
        assert vals[-1] < 1.0

    def test_overflow_reported(self):
        with pytest.raises(OverflowError):
            hb.bare_coupling(1e6, 1.0)

    def test_validation(self):
        with pytest.raises(ValueError):
            hb.bare_coupling(0.0, 1.0)
        with pytest.raises(ValueError):
            hb.bare_coupling(1.0, -2.0)


class TestBeta:
    def test_values(self):
        assert hb.beta(2 * math.pi) == pytest.approx(-math.pi, rel=1e-15)
        assert hb.beta(0.0) == 0.0
        assert hb.beta(1.0) == pytest.approx(-1 / (4 * math.pi), rel=1e-15)

    @pytest.mark.parametrize("lam", [0.1, 1.0, 10.0])
    def test_matches_flow_derivative(self, lam):
        h = 1e-5
        fd = (hb.flow(lam, math.exp(h)) - hb.flow(lam, math.exp(-h))) / (2 * h)
        assert fd == pytest.approx(hb.beta(lam), rel=1e-6)


class TestFlow:
    def test_identity_scale(self):
        assert hb.flow(3.7, 1.0) == 3.7

    def test_direct_substitutions(self):
        assert hb.flow(4 * math.pi, math.e) == pytest.approx(2 * math.pi, rel=1e-14)
        assert hb.flow(1.0, math.exp(4 * math.pi)) == pytest.approx(0.5, rel=1e-14)

    def test_landau_pole_is_hard_error(self):
        lam = 4 * math.pi
        with pytest.raises(ValueError):
            hb.flow(lam, math.exp(-1.0000001))
        # just inside the domain still fine
        assert hb.flow(lam, math.exp(-0.999999)) > 0

    @settings(max_examples=60, deadline=None)
    @given(
        lam=st.floats(min_value=0.01, max_value=40.0),
        g1=st.floats(min_value=0.25, max_value=4.0),
        g2=st.floats(min_value=0.25, max_value=4.0),
    )
    def test_composition_law(self, lam, g1, g2):
        assume(1 + lam * math.log(g1) / (4 * math.pi) > 0.05)
        lam1 = hb.flow(lam, g1)
        assume(1 + lam1 * math.log(g2) / (4 * math.pi) > 0.05)
        composed = hb.flow(lam1, g2)
        direct = hb.flow(lam, g1 * g2)
        assert composed == pytest.approx(direct, rel=1e-12, abs=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(
        lam=st.floats(min_value=0.01, max_value=40.0),
        gamma=st.floats(min_value=1.0000001, max_value=1e6),
    )
    def test_asymptotic_freedom_direction(self, lam, gamma):
        assert hb.flow(lam, gamma) < lam


class TestFlowOde:
    @pytest.mark.parametrize(
        "lam,gamma",
        [(4 * math.pi, math.e), (1.0, 10.0), (1.0, 1.0), (0.3, 0.2), (12.0, 5.0)],
    )
    def test_matches_closed_form(self, lam, gamma):
        assert hb.flow_ode(lam, gamma) == pytest.approx(hb.flow(lam, gamma), rel=1e-10)

    def test_landau_rejected_up_front(self):
        with pytest.raises(ValueError):
            hb.flow_ode(4 * math.pi, math.exp(-1.1))


class TestSchemeConvert:
    def test_coupling_to_bound_state(self):
        out = hb.scheme_convert(hb.Coupling(1.0, EIGHT_PI / math.log(4.0)))
        assert isinstance(out, hb.BoundState)
        assert out.mu2 == pytest.approx(0.25, rel=1e-13)

    def test_bound_state_needs_scale_above_mu(self):
        with pytest.raises(ValueError):
            hb.scheme_convert(hb.BoundState(1.0), scale=1.0)
        with pytest.raises(ValueError):
            hb.scheme_convert(hb.BoundState(1.0))
        out = hb.scheme_convert(hb.BoundState(1.0), scale=math.e)
        assert out.coupling == pytest.approx(4 * math.pi, rel=1e-14)

    def test_round_trip(self):
        back = hb.scheme_convert(hb.scheme_convert(hb.Coupling(3.0, 2.0)), scale=3.0)
        assert back.scale == 3.0
        assert back.coupling == pytest.approx(2.0, rel=1e-12)

    @pytest.mark.parametrize("gamma", [0.5, 2.0, 7.0])
    def test_mu2_invariant_under_consistent_flow(self, gamma):
        # flowing (M, lambda_R) together leaves the physical scale unchanged
        start = hb.Coupling(2.0, 3.0)
        flowed = hb.Coupling(gamma * start.scale, hb.flow(start.coupling, gamma))
        mu_a = hb.scheme_convert(start).mu2
        mu_b = hb.scheme_convert(flowed).mu2
        assert mu_b == pytest.approx(mu_a, rel=1e-10)

    def test_scheme_validation(self):
        with pytest.raises(ValueError):
            hb.BoundState(-1.0)
        with pytest.raises(ValueError):
            hb.Coupling(1.0, 0.0)
        with pytest.raises(ValueError):
            hb.Coupling(0.0, 1.0)
