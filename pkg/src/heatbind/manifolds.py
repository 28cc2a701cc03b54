"""Heat kernels, heat traces, and Laplacian spectra for the 2D model geometries.

Geometries are immutable value objects: the flat plane, the square flat torus,
the round sphere, the hyperbolic plane (diagonal kernel only), and the real
line (whose kernel lives in the one-dimensional module).  Every kernel and
trace carries dual series representations, image sums at short time and
spectral sums at long time, with each series extended until a certified
analytic tail bound is negligible relative to the partial sum.

Units: hbar = 2m = 1, so exp(-t*H0) has integral kernel K_t and eigenvalues
sigma carry units of 1/length^2.
"""

import csv
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import ExtrapolationError, QuadratureError

# Series are extended until the certified tail bound drops below this fraction
# of the accumulated sum.
_TAIL = 1e-15

_FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True)
class Plane:
    """Flat plane R^2."""


@dataclass(frozen=True)
class Torus:
    """Square flat torus of side `length`, volume length^2."""

    length: float

    def __post_init__(self):
        if not self.length > 0:
            raise ValueError("torus side length must be positive")


@dataclass(frozen=True)
class Sphere:
    """Round sphere of radius `radius`, volume 4*pi*radius^2."""

    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("sphere radius must be positive")


@dataclass(frozen=True)
class Hyperbolic:
    """Hyperbolic plane of constant curvature -1/radius^2.

    Only the diagonal kernel is exposed, through ``mckean_h2_diagonal``.
    """

    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("hyperbolic curvature radius must be positive")


@dataclass(frozen=True)
class Line:
    """Real line.  Its kernel is handled by the one-dimensional module."""


@dataclass(frozen=True)
class HeatKernelValue:
    """A single kernel evaluation K_t at geodesic separation `separation`."""

    value: float
    t: float
    separation: float

    def __float__(self):
        return self.value


def is_compact(m):
    return isinstance(m, (Torus, Sphere))


def volume(m):
    """Riemannian volume; defined only for the compact variants."""
    if isinstance(m, Torus):
        return m.length * m.length
    if isinstance(m, Sphere):
        return _FOUR_PI * m.radius * m.radius
    raise ValueError("volume is defined only for compact manifolds (Torus, Sphere)")


def scalar_curvature(m):
    if isinstance(m, (Plane, Torus, Line)):
        return 0.0
    if isinstance(m, Sphere):
        return 2.0 / m.radius**2
    if isinstance(m, Hyperbolic):
        return -2.0 / m.radius**2
    raise ValueError(f"unknown manifold {m!r}")


# ---------------------------------------------------------------------------
# one-dimensional theta machinery (circle factors of the square torus)

def _theta_direct(a):
    """sum_{m in Z} exp(-a m^2) for a >= pi, certified truncation."""
    total = 1.0
    m = 1
    while True:
        term = 2.0 * math.exp(-a * m * m)
        total += term
        r = math.exp(-a * (2 * m + 1))
        if term * r < _TAIL * total * (1.0 - r):
            return total
        m += 1


def _theta_sum(a):
    """sum_{m in Z} exp(-a m^2), Poisson dual below the a = pi crossover."""
    if not a > 0:
        raise ValueError("theta argument must be positive")
    if a < math.pi:
        return math.sqrt(math.pi / a) * _theta_direct(math.pi * math.pi / a)
    return _theta_direct(a)


def _theta_excess(a):
    """sum_{m != 0} exp(-a m^2) = theta(a) - 1 without cancellation; a >= pi."""
    total = 0.0
    m = 1
    while True:
        term = 2.0 * math.exp(-a * m * m)
        total += term
        r = math.exp(-a * (2 * m + 1))
        if term * r < _TAIL * (1.0 + total) * (1.0 - r):
            return total
        m += 1


def _circle_kernel(L, t, x):
    """Heat kernel of a circle of circumference L at displacement x.

    Image sum for 4*pi*t <= L^2, spectral cosine sum beyond; x may be an
    ndarray.  Both branches are exact series with fixed certified term counts.
    """
    x = np.asarray(x, dtype=float)
    x = x - L * np.floor(x / L + 0.5)  # minimal image in [-L/2, L/2)
    if _FOUR_PI * t <= L * L:
        inv = 0.25 / t
        total = np.exp(-x * x * inv)
        # term_m / total <= 2 exp(-m(m-1) L^2/(4t)) uniformly in x, so stop once
        # that factor undercuts the target precision
        m = 1
        while 2.0 * math.exp(-m * (m - 1) * L * L * inv) >= _TAIL or m < 2:
            total = total + np.exp(-((x + m * L) ** 2) * inv) + np.exp(-((x - m * L) ** 2) * inv)
            m += 1
        return total / math.sqrt(_FOUR_PI * t)
    a = 4.0 * math.pi**2 * t / (L * L)  # >= pi in this branch
    phase = 2.0 * math.pi * x / L
    total = np.ones_like(x)
    m = 1
    while math.exp(-a * m * m) >= _TAIL / 4.0:
        total = total + 2.0 * math.exp(-a * m * m) * np.cos(m * phase)
        m += 1
    return total / L


def _torus_kernel(m, t, dx, dy):
    return _circle_kernel(m.length, t, dx) * _circle_kernel(m.length, t, dy)


def torus_kernel_image(m, t, dx, dy=0.0):
    """Torus kernel by pure image summation (cross-check representation)."""
    L = m.length
    val = 1.0
    for x in (dx, dy):
        x = x - L * math.floor(x / L + 0.5)
        inv = 0.25 / t
        s = math.exp(-x * x * inv)
        k = 1
        while 2.0 * math.exp(-k * (k - 1) * L * L * inv) >= _TAIL or k < 3:
            s += math.exp(-((x + k * L) ** 2) * inv) + math.exp(-((x - k * L) ** 2) * inv)
            k += 1
        val *= s / math.sqrt(_FOUR_PI * t)
    return val


def torus_kernel_spectral(m, t, dx, dy=0.0):
    """Torus kernel by pure spectral summation (cross-check representation)."""
    L = m.length
    a = 4.0 * math.pi**2 * t / (L * L)
    val = 1.0
    for x in (dx, dy):
        phase = 2.0 * math.pi * x / L
        s = 1.0
        k = 1
        while math.exp(-a * k * k) >= 1e-18:
            s += 2.0 * math.exp(-a * k * k) * math.cos(k * phase)
            k += 1
        val *= s / L
    return val


# ---------------------------------------------------------------------------
# sphere kernel (Legendre spectral sum with stable recurrence)

def _sphere_lmax(tau, extra=0.0):
    """Smallest l with tail (1/tau) e^{-l(l+1)tau} below the working target."""
    budget = 38.0 + extra + max(0.0, -math.log(tau))
    return int(math.sqrt(budget / tau)) + 3


def _sphere_kernel_grid(R, t, theta):
    """K_t at geodesic angles `theta` (ndarray) via the Legendre sum.

    Plain float64; accurate in absolute terms everywhere and in relative terms
    wherever the Gaussian suppression exp(-theta^2 R^2/4t) stays above roundoff
    amplification (see heat_kernel for the certified scalar path).
    """
    theta = np.asarray(theta, dtype=float)
    tau = t / (R * R)
    lmax = _sphere_lmax(tau)
    x = np.cos(theta)
    acc = np.ones_like(x)
    if lmax >= 1:
        p_prev = np.ones_like(x)
        p = x.copy()
        acc = acc + 3.0 * math.exp(-2.0 * tau) * p
        for l in range(2, lmax + 1):
            p_next = ((2 * l - 1) * x * p - (l - 1) * p_prev) / l
            w = (2 * l + 1) * math.exp(-l * (l + 1) * tau)
            acc = acc + w * p_next
            p_prev, p = p, p_next
    return acc / (_FOUR_PI * R * R)


def _sphere_kernel_mp(R, t, theta):
    """High-precision Legendre sum for the cancellation-dominated regime."""
    from mpmath import mp, mpf

    tau = t / (R * R)
    expo = theta * theta / (4.0 * tau)
    with mp.workdps(30 + int(0.47 * expo)):
        x = mp.cos(mpf(theta))
        tt = mpf(tau)
        lmax = int(math.sqrt((expo + 60.0 + max(0.0, -math.log(tau))) / tau)) + 4
        acc = mpf(1)
        p_prev = mpf(1)
        p = x
        acc += 3 * mp.e**(-2 * tt) * p
        for l in range(2, lmax + 1):
            p_next = ((2 * l - 1) * x * p - (l - 1) * p_prev) / l
            acc += (2 * l + 1) * mp.e**(-l * (l + 1) * tt) * p_next
            p_prev, p = p, p_next
        out = acc / (4 * mp.pi * mpf(R) ** 2)
        return float(out)


def _sphere_kernel_point(R, t, d):
    theta = d / R
    if theta > math.pi + 1e-12:
        raise ValueError("geodesic separation on the sphere cannot exceed pi*R")
    theta = min(theta, math.pi)
    tau = t / (R * R)
    expo = theta * theta / (4.0 * tau)
    if expo <= 11.0:
        return float(_sphere_kernel_grid(R, t, np.array([theta]))[0])
    if expo <= 400.0:
        return _sphere_kernel_mp(R, t, theta)
    # deep Gaussian tail: leading short-time form; relative error O(tau), on
    # values below exp(-400) of the diagonal
    th = min(theta, 3.0)
    jacobian = math.sqrt(th / math.sin(th))
    return jacobian * math.exp(-expo) / (_FOUR_PI * t)


# ---------------------------------------------------------------------------
# public kernel / trace operations

def heat_kernel(m, t, d):
    """Heat kernel K_t of manifold `m` at geodesic separation `d`.

    For the torus, `d` may be a (dx, dy) displacement pair; a bare float is
    read as displacement (d, 0).  Displacements are reduced to the minimal
    image.  The hyperbolic variant supports only d = 0 (diagonal); the value
    returned is K_t(x,x) itself, evaluated through the 2t-convention integral
    of ``mckean_h2_diagonal``.
    """
    if not t > 0:
        raise ValueError("time must be positive")
    if isinstance(m, Line):
        raise ValueError("the line kernel lives in the one-dimensional module")
    if isinstance(m, Plane):
        d = float(d)
        if d < 0:
            raise ValueError("separation must be nonnegative")
        return HeatKernelValue(math.exp(-d * d / (4.0 * t)) / (_FOUR_PI * t), t, d)
    if isinstance(m, Torus):
        if np.iterable(d):
            dx, dy = (float(c) for c in d)
        else:
            dx, dy = float(d), 0.0
        L = m.length
        rx = dx - L * math.floor(dx / L + 0.5)
        ry = dy - L * math.floor(dy / L + 0.5)
        sep = math.hypot(rx, ry)
        return HeatKernelValue(float(_torus_kernel(m, t, dx, dy)), t, sep)
    if isinstance(m, Sphere):
        d = float(d)
        if d < 0:
            raise ValueError("separation must be nonnegative")
        return HeatKernelValue(_sphere_kernel_point(m.radius, t, d), t, d)
    if isinstance(m, Hyperbolic):
        d = float(d)
        if d != 0.0:
            raise ValueError("hyperbolic kernel is implemented on the diagonal only")
        return HeatKernelValue(mckean_h2_diagonal(m.radius, t / 2.0), t, 0.0)
    raise ValueError(f"unknown manifold {m!r}")


def heat_trace(m, s):
    """Heat trace Theta(s) = sum_l d_l exp(-sigma_l s) of a compact manifold."""
    if not s > 0:
        raise ValueError("time must be positive")
    if isinstance(m, Torus):
        th = _theta_sum(4.0 * math.pi**2 * s / m.length**2)
        return th * th
    if isinstance(m, Sphere):
        return _sphere_trace(m.radius, s)
    raise ValueError("heat trace requires a compact manifold (Torus, Sphere)")


def _sphere_trace(R, s):
    tau = s / (R * R)
    if tau < 1e-7:
        # Weyl series; the omitted tau^4 term is below 1e-21 relative here
        return (1.0 + tau / 3.0 + tau * tau / 15.0 + 4.0 * tau**3 / 315.0) / tau
    lmax = _sphere_lmax(tau)
    while True:
        l = np.arange(lmax + 1, dtype=float)
        total = float(np.sum((2 * l + 1) * np.exp(-l * (l + 1) * tau)))
        tail = math.exp(-lmax * (lmax + 1) * tau) / tau
        if tail < _TAIL * total:
            return total
        lmax *= 2


def kernel_diagonal(m, s):
    """Diagonal kernel K_s(x,x); position-free on these homogeneous spaces."""
    if isinstance(m, Plane):
        return 1.0 / (_FOUR_PI * s)
    return heat_trace(m, s) / volume(m)


def kernel_diagonal_excess(m, s):
    """K_s(x,x) - 1/(4*pi*s), evaluated without cancellation at small s.

    For the torus the short-time branch uses the exact image identity
    K_s(x,x) - 1/(4 pi s) = (sigma^2 - 1)/(4 pi s) with sigma the image theta
    factor, so no subtraction of nearly equal numbers ever occurs.
    """
    if not s > 0:
        raise ValueError("time must be positive")
    if isinstance(m, Torus):
        L = m.length
        if _FOUR_PI * s <= L * L:
            se = _theta_excess(L * L / (4.0 * s))
            return se * (se + 2.0) / (_FOUR_PI * s)
        return heat_trace(m, s) / volume(m) - 1.0 / (_FOUR_PI * s)
    if isinstance(m, Sphere):
        R = m.radius
        tau = s / (R * R)
        if tau < 1e-7:
            # subtraction done on the Weyl series, so no cancellation
            return (1.0 / 3.0 + tau / 15.0 + 4.0 * tau * tau / 315.0) / (_FOUR_PI * R * R)
        return _sphere_trace(R, s) / volume(m) - 1.0 / (_FOUR_PI * s)
    raise ValueError("diagonal excess requires a compact manifold")


# ---------------------------------------------------------------------------
# property checks: semigroup, completeness, comparison bounds

def _torus_grid_n(L, tmin):
    n = 2 * math.ceil((L / (2.0 * math.pi)) * math.sqrt(40.0 / tmin)) + 4
    return min(max(n, 16), 4096)


def _torus_axis_overlap(L, t1, t2, shift):
    """(L/N) sum_z k_{t1}(z) k_{t2}(z - shift) on the periodic axis grid."""
    n = _torus_grid_n(L, min(t1, t2))
    z = np.arange(n) * (L / n)
    k1 = _circle_kernel(L, t1, z)
    k2 = _circle_kernel(L, t2, z - shift)
    return float(np.sum(k1 * k2)) * (L / n)


def _plane_axis_overlap(t1, t2, shift):
    """int g_{t1}(z) g_{t2}(z - shift) dz by Gauss-Legendre on a wide window."""
    half = 9.0 * math.sqrt(t1 + t2) + abs(shift)
    nodes, weights = np.polynomial.legendre.leggauss(160)
    z = 0.5 * (nodes + 1.0) * (2.0 * half) - half + 0.5 * shift
    w = weights * half
    g1 = np.exp(-z * z / (4.0 * t1)) / math.sqrt(_FOUR_PI * t1)
    g2 = np.exp(-((z - shift) ** 2) / (4.0 * t2)) / math.sqrt(_FOUR_PI * t2)
    return float(np.sum(w * g1 * g2))


def semigroup_residual(m, t1, t2, d):
    """|int K_{t1}(x,z) K_{t2}(z,y) dmu(z) - K_{t1+t2}(x,y)| by quadrature.

    Cell quadrature on the torus, angular reduction on the sphere, wide
    Gauss-Legendre windows on the plane.  Raises QuadratureError when the
    residual exceeds 1e-6, since the semigroup identity is exact.
    """
    if not (t1 > 0 and t2 > 0):
        raise ValueError("times must be positive")
    if isinstance(m, Plane):
        d = float(d)
        lhs = _plane_axis_overlap(t1, t2, d) * _plane_axis_overlap(t1, t2, 0.0)
        rhs = heat_kernel(m, t1 + t2, d).value
    elif isinstance(m, Torus):
        if np.iterable(d):
            dx, dy = (float(c) for c in d)
        else:
            dx, dy = float(d), 0.0
        lhs = _torus_axis_overlap(m.length, t1, t2, dx) * _torus_axis_overlap(m.length, t1, t2, dy)
        rhs = heat_kernel(m, t1 + t2, (dx, dy)).value
    elif isinstance(m, Sphere):
        lhs = _sphere_semigroup_lhs(m.radius, t1, t2, float(d))
        rhs = heat_kernel(m, t1 + t2, float(d)).value
    else:
        raise ValueError("semigroup check supports Plane, Torus, Sphere")
    residual = abs(lhs - rhs)
    if residual >= 1e-6:
        raise QuadratureError(
            f"semigroup residual {residual:.3e} exceeds 1e-6 for {m!r}, t1={t1}, t2={t2}, d={d}"
        )
    return residual


def _sphere_semigroup_lhs(R, t1, t2, d):
    th_xy = d / R
    band = _sphere_lmax(t1 / R**2) + _sphere_lmax(t2 / R**2)
    nu = min(band + 8, 600)
    nphi = 2 * nu
    u, wu = np.polynomial.legendre.leggauss(nu)
    theta = np.arccos(u)
    k1 = _sphere_kernel_grid(R, t1, theta)
    phi = 2.0 * math.pi * np.arange(nphi) / nphi
    cospsi = np.clip(
        np.outer(u, np.full(nphi, math.cos(th_xy)))
        + np.outer(np.sqrt(np.maximum(0.0, 1.0 - u * u)) * math.sin(th_xy), np.cos(phi)),
        -1.0,
        1.0,
    )
    k2 = _sphere_kernel_grid(R, t2, np.arccos(cospsi))
    inner = k2.sum(axis=1) * (2.0 * math.pi / nphi)
    return R * R * float(np.sum(wu * k1 * inner))


def stochastic_completeness_residual(m, t):
    """|int K_t(x, y) dmu(y) - 1|.

    Exactly zero in exact arithmetic for all variants here; the plane case is
    evaluated by radial quadrature of the normalized Gaussian.
    """
    if not t > 0:
        raise ValueError("time must be positive")
    if isinstance(m, Plane):
        # radial integral in u = r^2/(4t): int_0^inf e^{-u} du, window certified
        val, err = integrate.quad(lambda u: math.exp(-u), 0.0, 60.0,
                                  epsabs=1e-13, epsrel=1e-12, limit=100)
        if err > 1e-10:
            raise QuadratureError("plane completeness quadrature did not certify 1e-10")
        return abs(val + math.exp(-60.0) - 1.0)
    if isinstance(m, Torus):
        L = m.length
        n = _torus_grid_n(L, t)
        z = np.arange(n) * (L / n)
        axis = float(np.sum(_circle_kernel(L, t, z))) * (L / n)
        return abs(axis * axis - 1.0)
    if isinstance(m, Sphere):
        R = m.radius
        nu = min(_sphere_lmax(t / R**2) + 8, 600)
        u, wu = np.polynomial.legendre.leggauss(nu)
        k = _sphere_kernel_grid(R, t, np.arccos(u))
        total = 2.0 * math.pi * R * R * float(np.sum(wu * k))
        return abs(total - 1.0)
    raise ValueError("stochastic completeness check supports Plane, Torus, Sphere")


def cheeger_yau_check(t, d, L):
    """True when the torus kernel dominates the plane kernel (Ric = 0 bound).

    The image sum is the flat term plus positive corrections, so this holds
    identically; a 1-ulp slack guards the regime where images underflow.
    """
    if not (t > 0 and L > 0):
        raise ValueError("time and side length must be positive")
    torus_val = heat_kernel(Torus(L), t, d).value
    plane_val = heat_kernel(Plane(), t, d).value
    return torus_val >= plane_val * (1.0 - 1e-12)


def mckean_h2_diagonal(R, t):
    """Diagonal hyperbolic kernel at time 2t.

    Evaluates K_{2t}(x,x) on the curvature -1/R^2 hyperbolic plane:

        (R sqrt(2) / (8 pi t)^{3/2}) e^{-t/(2R^2)}
            * int_0^inf s e^{-s^2 R^2 / (8t)} / sqrt(cosh s - 1) ds

    The integrand endpoint s -> 0 is handled by the even series of
    s/sqrt(cosh s - 1), and the integral is taken in the scaled variable
    u = s*R/sqrt(8t) so the Gaussian width is order one for every (R, t).
    """
    if not (R > 0 and t > 0):
        raise ValueError("radius and time must be positive")
    scale = math.sqrt(8.0 * t) / R

    def w(s):
        # s / sqrt(cosh s - 1); even analytic function, sqrt(2) at 0
        if s < 1e-2:
            s2 = s * s
            return math.sqrt(2.0) / math.sqrt(1.0 + s2 / 12.0 + s2 * s2 / 360.0 + s2**3 / 20160.0)
        return s / math.sqrt(math.cosh(s) - 1.0)

    val, err = integrate.quad(lambda u: w(u * scale) * math.exp(-u * u), 0.0, 12.0,
                              epsabs=1e-14, epsrel=1e-12, limit=200)
    integral = val * scale
    if err * scale > 1e-8 * abs(integral):
        raise QuadratureError("hyperbolic diagonal quadrature did not reach 1e-8 relative")
    return R * math.sqrt(2.0) / (8.0 * math.pi * t) ** 1.5 * math.exp(-t / (2.0 * R * R)) * integral


def short_time_u1(m, t0=None, levels=8, rtol=1e-3):
    """Curvature coefficient u1 in 4*pi*t*K_t(x,x) = 1 + u1 t + O(t^2).

    Richardson extrapolation of f(t) = (4*pi*t*K_t(x,x) - 1)/t over a halving
    time sequence; the analytic value is Scal/6.  Raises ExtrapolationError
    with the diagonal sequence when successive estimates fail to settle.
    """
    if not is_compact(m):
        raise ValueError("short-time expansion check requires a compact manifold")
    scale = m.length**2 if isinstance(m, Torus) else m.radius**2
    if t0 is None:
        t0 = 0.01 * scale

    def f(t):
        return _FOUR_PI * kernel_diagonal_excess(m, t)

    diag = []
    rows = []
    floor = 1e-9 / scale  # below this the coefficient is flat-manifold zero
    for k in range(levels):
        row = [f(t0 / 2.0**k)]
        for j in range(1, k + 1):
            fac = 2.0**j
            row.append((fac * row[j - 1] - rows[k - 1][j - 1]) / (fac - 1.0))
        rows.append(row)
        diag.append(row[-1])
        if k >= 2:
            if abs(diag[-1] - diag[-2]) <= rtol * max(abs(diag[-1]), floor):
                return diag[-1]
            if abs(diag[-1]) < floor and abs(diag[-2]) < floor:
                return diag[-1]
    raise ExtrapolationError("u1 extrapolation did not converge", sequence=diag)


# ---------------------------------------------------------------------------
# spectral basis

@dataclass(frozen=True)
class SpectralBasis:
    """Truncated Laplacian spectrum with a certified omitted-trace bound."""

    entries: tuple  # ((sigma, degeneracy), ...) strictly increasing in sigma
    truncation_cutoff: float
    tail_bound: float  # bound on the omitted trace contribution at reference_time
    reference_time: float


def spectral_basis(m, reference_time=1.0, tail_rtol=1e-12):
    """Enumerate the spectrum of a compact manifold up to a certified cutoff."""
    if not reference_time > 0:
        raise ValueError("reference time must be positive")
    if isinstance(m, Torus):
        L = m.length
        a = 4.0 * math.pi**2 * reference_time / (L * L)
        nmax = int(math.sqrt(max(math.log(16.0 / tail_rtol), 1.0) / a)) + 2
        counts = {}
        for n1 in range(-nmax, nmax + 1):
            for n2 in range(-nmax, nmax + 1):
                counts[n1 * n1 + n2 * n2] = counts.get(n1 * n1 + n2 * n2, 0) + 1
        ks = sorted(k for k in counts if k <= nmax * nmax)
        entries = tuple((4.0 * math.pi**2 * k / (L * L), counts[k]) for k in ks)
        partial = sum(d * math.exp(-sig * reference_time) for sig, d in entries)
        tail = max(heat_trace(m, reference_time) - partial, 0.0) + 1e-15 * partial
        return SpectralBasis(entries, entries[-1][0], tail, reference_time)
    if isinstance(m, Sphere):
        R = m.radius
        tau = reference_time / (R * R)
        lmax = _sphere_lmax(tau, extra=max(0.0, math.log(1e-12 / tail_rtol)))
        entries = tuple((l * (l + 1) / (R * R), 2 * l + 1) for l in range(lmax + 1))
        tail = math.exp(-lmax * (lmax + 1) * tau) / tau
        return SpectralBasis(entries, entries[-1][0], tail, reference_time)
    raise ValueError("spectral basis requires a compact manifold (Torus, Sphere)")


def dump_spectral_basis_csv(basis, path):
    """Diagnostic CSV dump with columns sigma, degeneracy."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["sigma", "degeneracy"])
        for sigma, deg in basis.entries:
            writer.writerow([format(sigma, ".17g"), deg])
