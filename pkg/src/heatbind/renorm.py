"""Coupling renormalization: bare coupling, beta function, exact flow.

Two interchangeable renormalization schemes fix the theory: a two-body
binding scale mu^2 (BoundState) or a dimensionless coupling lambda_R quoted
at momentum scale M (Coupling).  On the flat plane the two are related in
closed form by mu^2 = M^2 exp(-8 pi / lambda_R); curved-manifold conversion
goes through the numerical two-body solve in the principal module.
"""

import math
from dataclasses import dataclass

from scipy.integrate import solve_ivp
from scipy.special import exp1

from .errors import NumericalError

_EIGHT_PI = 8.0 * math.pi
_FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True)
class BoundState:
    """Scheme fixed by the two-body binding scale mu^2 > 0."""

    mu2: float

    def __post_init__(self):
        if not self.mu2 > 0:
            raise ValueError("mu^2 must be positive")


@dataclass(frozen=True)
class Coupling:
    """Scheme fixed by a coupling lambda_R > 0 at momentum scale M > 0."""

    scale: float
    coupling: float

    def __post_init__(self):
        if not self.scale > 0:
            raise ValueError("renormalization scale M must be positive")
        if not self.coupling > 0:
            raise ValueError("renormalized coupling must be positive")


def bare_coupling(eps, mu2):
    """Cutoff coupling lambda(eps) with 1/lambda = int_eps^inf e^{-t mu^2}/(8 pi t) dt.

    The integral is E1(eps*mu^2)/(8*pi), so lambda(eps) = 8*pi/E1(eps*mu^2);
    it vanishes logarithmically as eps -> 0+.
    """
    if not eps > 0:
        raise ValueError("cutoff eps must be positive")
    if not mu2 > 0:
        raise ValueError("mu^2 must be positive")
    e1 = float(exp1(eps * mu2))
    if e1 <= 0.0 or not math.isfinite(e1):
        raise OverflowError("cutoff beyond representable range: E1(eps*mu^2) underflowed")
    return _EIGHT_PI / e1


def beta(lambda_r):
    """Exact beta function -lambda_R^2/(4 pi); negative, asymptotically free."""
    return -lambda_r * lambda_r / _FOUR_PI


def _landau_denominator(lambda_r, gamma):
    if not gamma > 0:
        raise ValueError("scale ratio gamma must be positive")
    denom = 1.0 + lambda_r * math.log(gamma) / _FOUR_PI
    if denom <= 0.0:
        raise ValueError(
            f"Landau pole crossed: 1 + (lambda_R/4pi) ln gamma = {denom:.6g} <= 0"
        )
    return denom


def flow(lambda_r, gamma):
    """Closed-form coupling flow lambda_R(gamma*M) = lambda_R/(1 + lambda_R ln(gamma)/4pi)."""
    if not lambda_r > 0:
        raise ValueError("coupling must be positive")
    return lambda_r / _landau_denominator(lambda_r, gamma)


def flow_ode(lambda_r, gamma, rtol=1e-13):
    """Flow by numerically integrating d lambda / d ln M = -lambda^2/(4 pi).

    Agrees with the closed form to 1e-10 relative; serves as its independent
    cross-check.
    """
    if not lambda_r > 0:
        raise ValueError("coupling must be positive")
    _landau_denominator(lambda_r, gamma)  # reject flows through the pole up front
    span = math.log(gamma)
    if span == 0.0:
        return lambda_r
    sol = solve_ivp(
        lambda _, y: -y * y / _FOUR_PI,
        (0.0, span),
        [lambda_r],
        method="DOP853",
        rtol=rtol,
        atol=1e-15,
    )
    if not sol.success:
        raise NumericalError(f"coupling flow integration failed: {sol.message}")
    return float(sol.y[0, -1])


def scheme_convert(scheme, scale=None):
    """Convert between BoundState and Coupling using the flat two-body relation.

    Coupling(M, lambda_R) -> BoundState(M^2 exp(-8 pi/lambda_R)).  The reverse
    direction needs a target scale M with M^2 > mu^2, else lambda_R would be
    infinite or negative.  The round trip is the identity, and the resulting
    mu^2 is invariant under flowing (M, lambda_R) consistently.
    """
    if isinstance(scheme, Coupling):
        return BoundState(scheme.scale**2 * math.exp(-_EIGHT_PI / scheme.coupling))
    if isinstance(scheme, BoundState):
        if scale is None:
            raise ValueError("converting BoundState -> Coupling needs a target scale M")
        if not scale > 0:
            raise ValueError("renormalization scale M must be positive")
        log_ratio = math.log(scale * scale / scheme.mu2)
        if log_ratio <= 0.0:
            raise ValueError(
                "target scale must satisfy M^2 > mu^2; the coupling diverges at M^2 = mu^2"
            )
        return Coupling(scale, _EIGHT_PI / log_ratio)
    raise ValueError(f"unknown scheme {scheme!r}")
