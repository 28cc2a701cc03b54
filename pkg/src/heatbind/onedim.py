"""One-dimensional attractive delta bosons: the exactly solvable trust anchor.

No renormalization is needed on the line, and both the exact n-body ground
state and its Hartree approximation are in closed form, so every piece of the
two-dimensional machinery has a same-shape counterpart here that can be
checked to machine precision: the two-body zero of the principal function,
the mean-field maximization, the Sobolev step, and the saturating profile.
"""

import math

import numpy as np
from scipy import integrate, optimize

from .errors import NumericalError, QuadratureError


def exact_ground_energy(n, lam):
    """Exact ground-state energy -lam^2 n (n^2 - 1) / 48."""
    if n < 1:
        raise ValueError("boson number must be >= 1")
    return -lam * lam * n * (n * n - 1) / 48.0


def hartree_ground_energy(n, lam):
    """Hartree energy -lam^2 n^2 (n - 1) / 48; exact/Hartree ratio -> 1 as n grows."""
    if n < 1:
        raise ValueError("boson number must be >= 1")
    return -lam * lam * n * n * (n - 1) / 48.0


def hartree_profile(n, lam, x):
    """Hartree single-particle wave function sqrt(b/2) sech(b x), b = lam n / 4."""
    b = lam * n / 4.0
    return math.sqrt(b / 2.0) / np.cosh(b * np.asarray(x, dtype=float))


def sobolev_1d(q):
    """Optimal constant S_{1,q} of the 1D Sobolev interpolation inequality.

    Defined for 2 < q < infinity with theta = (1 - 2/q)/2; at q = 4 the value
    is 3^(1/4), and equality holds exactly on sech-type profiles.
    """
    if q <= 2:
        raise ValueError("the 1D Sobolev constant needs q > 2")
    theta = 0.5 * (1.0 - 2.0 / q)
    head = (
        q * theta**theta * (1.0 - theta) ** (1.0 - theta)
        / (2.0 ** (2.0 / q) * (q - 2.0) ** ((q - 2.0) / q))
    )
    ratio = math.gamma(q / (q - 2.0)) / math.gamma(q / (q - 2.0) + 0.5)
    return head * (math.sqrt(math.pi) * ratio) ** ((q - 2.0) / q)


def two_body_phi_1d(lam, E, verify=False):
    """Zero-momentum two-body principal function 1/lam - 1/sqrt(8|E|).

    With `verify` the defining time integral int_0^inf e^{-t|E|}/sqrt(8 pi t) dt
    is evaluated by quadrature and must agree with the closed form to 1e-10.
    The zero sits at |E| = lam^2/8, the exact two-body binding energy.
    """
    if not lam > 0:
        raise ValueError("coupling must be positive")
    if not E < 0:
        raise ValueError("energy must be negative")
    abs_e = -E
    closed = 1.0 / lam - 1.0 / math.sqrt(8.0 * abs_e)
    if verify:
        # substitute t = u^2 so the 1/sqrt(t) endpoint becomes smooth
        integral, err = integrate.quad(
            lambda u: 2.0 * math.exp(-u * u * abs_e) / math.sqrt(8.0 * math.pi),
            0.0,
            np.inf,
        )
        if err > 1e-7 or abs((1.0 / lam - integral) - closed) > 1e-10:
            raise QuadratureError(
                f"two-body quadrature {integral:.15g} disagrees with closed form"
            )
    return closed


def meanfield_1d_solve(n, lam):
    """Mean-field ground-state energy -lam^2 n^3 / 48.

    The kinetic-variable maximization of n^{3/2} sqrt(z) / (2 sqrt(3)(|E|+z))
    peaks at z = |E|; equating the peak to 1/lam gives the closed form.  The
    numerical maximizer must agree with z = |E| to 1e-6 relative, a built-in
    self-consistency check on the chain.
    """
    if n < 3:
        raise ValueError("the mean-field solve needs n >= 3")
    if not lam > 0:
        raise ValueError("coupling must be positive")
    abs_e = lam * lam * n**3 / 48.0

    def neg_rhs(z):
        return -(n**1.5) * math.sqrt(z) / (2.0 * math.sqrt(3.0) * (abs_e + z))

    res = optimize.minimize_scalar(
        neg_rhs, bounds=(abs_e / 64.0, 64.0 * abs_e), method="bounded",
        options={"xatol": 1e-10 * abs_e},
    )
    if not res.success or abs(res.x - abs_e) > 1e-6 * abs_e:
        raise NumericalError(
            f"mean-field maximizer z* = {res.x:.12g} strayed from |E| = {abs_e:.12g}"
        )
    return -abs_e


def comparison_rows(ns, lam):
    """Rows (n, exact, hartree, meanfield, hartree_gap, meanfield_gap).

    Gaps are relative offsets from the exact energy; the mean-field column is
    populated from n = 3 up.
    """
    rows = []
    for n in ns:
        n = int(n)
        exact = exact_ground_energy(n, lam)
        hartree = hartree_ground_energy(n, lam)
        mf = meanfield_1d_solve(n, lam) if n >= 3 else float("nan")
        h_gap = (hartree - exact) / exact if exact else 0.0
        mf_gap = (mf - exact) / exact if exact else 0.0
        rows.append((n, exact, hartree, mf, h_gap, mf_gap))
    return rows
