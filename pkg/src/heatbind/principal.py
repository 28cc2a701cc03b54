"""Two-body principal-operator machinery on the model geometries.

The lowest eigenvalue in the two-boson sector of a homogeneous compact
manifold is

    omega_0(E) = int_0^inf dt [ e^{-mu^2 t}/(8 pi t) - Theta(2t) e^{-|E|t}/V ],

strictly decreasing in E, whose unique zero is the two-body ground-state
energy.  On the flat plane it collapses to ln(|E|/mu^2)/(8 pi).  The
quadrature splits the integrand as

    [e^{-mu^2 t} - e^{-|E|t}]/(8 pi t)  +  [1/(8 pi t) - Theta(2t)/V] e^{-|E|t},

the first in closed form (a Frullani logarithm), the second bounded at t -> 0
by the Weyl term and evaluated with cancellation-free series, so no
subtraction of nearly equal numbers survives.

This module also samples eigenvalue flow curves over energy grids, evaluates
excited torus modes, and carries the closed-form n-body and hyperbolic
bounds plus the short-time divergence demonstration.
"""

import csv
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import BracketingError, NumericalError, QuadratureError
from .manifolds import (
    Plane,
    Sphere,
    Torus,
    is_compact,
    kernel_diagonal,
    kernel_diagonal_excess,
    volume,
)
from .renorm import BoundState, Coupling

_EIGHT_PI = 8.0 * math.pi
_GL_NODES = np.polynomial.legendre.leggauss(40)


def _thread_count():
    raw = os.environ.get("HEATBIND_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _map_energies(fn, energies):
    n = _thread_count()
    if n > 1 and len(energies) > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            return list(pool.map(fn, energies))
    return [fn(e) for e in energies]


def _time_scale(m):
    if isinstance(m, Torus):
        return m.length**2
    if isinstance(m, Sphere):
        return m.radius**2
    return 1.0


def _laplace_integral(f, abs_e, tscale, weight_power=0, base_tol=1e-13):
    """int_0^inf t^p f(t) e^{-|E| t} dt for bounded smooth f with f(inf) finite.

    Gauss-Legendre below ta (where f is analytic and slowly varying), adaptive
    quadrature in log time up to T = 45/|E|, and an analytic zero-mode tail
    beyond, certified small.
    """
    ta = 1e-3 * min(tscale, 1.0 / abs_e)
    nodes, weights = _GL_NODES
    t_small = 0.5 * (nodes + 1.0) * ta
    w_small = 0.5 * ta * weights
    small = float(
        sum(
            w * (t**weight_power) * f(t) * math.exp(-abs_e * t)
            for t, w in zip(t_small, w_small)
        )
    )

    t_top = 45.0 / abs_e
    f_inf = f(t_top)
    # absolute tolerances scale with the zero-mode magnitude ~ f_inf/|E|,
    # which dwarfs 1 when |E| is far below the binding scale
    scale = 1.0 + abs(f_inf) * (t_top**weight_power) / abs_e

    def g(v):
        t = math.exp(v)
        return (t**weight_power) * f(t) * math.exp(-abs_e * t) * t

    total = small
    err_budget = 0.0
    cuts = sorted({math.log(ta), math.log(min(max(tscale, 2.0 * ta), t_top)), math.log(t_top)})
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        if hi <= lo:
            continue
        out = integrate.quad(g, lo, hi, epsabs=1e-13 * scale, epsrel=1e-11,
                             limit=400, full_output=1)
        val, abserr = out[0], out[1]
        if len(out) > 3 and abserr > 1e-9 * scale:
            raise QuadratureError(f"Laplace-integral quadrature failed: {out[3]}")
        total += val
        err_budget += abserr
    # zero-mode tail: f -> f_inf, so the remainder is close to f_inf e^{-|E|T}/|E|
    total += (t_top**weight_power) * f_inf * math.exp(-abs_e * t_top) / abs_e
    if err_budget > 1e-9 * scale:
        raise QuadratureError(f"Laplace-integral error budget {err_budget:.2e} too large")
    return total


def _scheme_terms(scheme):
    """Additive constant and reference mass^2 implied by the scheme."""
    if isinstance(scheme, BoundState):
        return 0.0, scheme.mu2
    if isinstance(scheme, Coupling):
        return 1.0 / scheme.coupling, scheme.scale**2
    raise ValueError(f"unknown renormalization scheme {scheme!r}")


def _binding_scale(scheme):
    """Natural |E| scale of the scheme's two-body zero (flat-plane relation)."""
    if isinstance(scheme, BoundState):
        return scheme.mu2
    return scheme.scale**2 * math.exp(-_EIGHT_PI / scheme.coupling)


def omega0(m, mu2, E):
    """Lowest principal-operator eigenvalue in the two-boson sector."""
    return _omega(m, BoundState(mu2), E)


def _omega(m, scheme, E, mode=None):
    if not E < 0:
        raise ValueError("energy must be negative")
    const, mass2 = _scheme_terms(scheme)
    abs_e = -E
    base = const + math.log(abs_e / mass2) / _EIGHT_PI
    if isinstance(m, Plane):
        if mode not in (None, 0, (0, 0)):
            raise ValueError("excited modes are implemented on the torus only")
        return base
    if not is_compact(m):
        raise ValueError("omega is defined on Plane, Torus and Sphere")
    if mode in (None, 0):
        f = lambda t: kernel_diagonal_excess(m, 2.0 * t)
    else:
        if not isinstance(m, Torus):
            raise ValueError("excited modes are implemented on the torus only")
        f = _mode_excess(m, mode)
    return base - _laplace_integral(f, abs_e, _time_scale(m))


def omega_mode(m, mu2, E, q):
    """Eigenvalue omega_q(E) on the torus lattice mode q = (q1, q2).

    lambda_q(t) = (1/V) sum_k exp(-t (sigma_k + sigma_{q-k})); the q = 0 mode
    reduces to omega0.  Short times use the Poisson-dual image form, long
    times the direct lattice sum, both with certified truncation.
    """
    if not isinstance(m, Torus):
        raise ValueError("excited modes are implemented on the torus only")
    q = (int(q[0]), int(q[1]))
    return _omega(m, BoundState(mu2), E, mode=q)


def _mode_excess(m, q):
    L = m.length
    q1, q2 = q
    qsq = q1 * q1 + q2 * q2
    sigma_half = 2.0 * math.pi**2 * qsq / (L * L)
    t_cross = L * L / (16.0 * math.pi)

    def small_t(t):
        b = L * L / (8.0 * t)  # >= 2 pi in this branch
        mmax = int(math.sqrt(42.0 / b)) + 1
        img = 0.0
        for m1 in range(-mmax, mmax + 1):
            for m2 in range(-mmax, mmax + 1):
                if m1 == 0 and m2 == 0:
                    continue
                img += (-1.0) ** ((m1 * q1 + m2 * q2) & 1) * math.exp(-b * (m1 * m1 + m2 * m2))
        damp = math.exp(-t * sigma_half)
        return (math.expm1(-t * sigma_half) + damp * img) / (_EIGHT_PI * t)

    def large_t(t):
        a = 4.0 * math.pi**2 * t / (L * L)
        c1, c2 = 0.5 * q1, 0.5 * q2
        rad = math.sqrt(42.0 / (2.0 * a)) + 1.0
        k1 = np.arange(math.ceil(c1 - rad), math.floor(c1 + rad) + 1)
        k2 = np.arange(math.ceil(c2 - rad), math.floor(c2 + rad) + 1)
        kk1, kk2 = np.meshgrid(k1, k2, indexing="ij")
        expo = a * (kk1**2 + kk2**2 + (q1 - kk1) ** 2 + (q2 - kk2) ** 2)
        lam = float(np.sum(np.exp(-expo))) / (L * L)
        return lam - 1.0 / (_EIGHT_PI * t)

    return lambda t: small_t(t) if t <= t_cross else large_t(t)


@dataclass(frozen=True)
class BoundStateResult:
    """Located zero of omega(E) with its final bracket and residual.

    The bracket is ordered by |E|: omega < 0 at bracket[0] (the energy nearer
    zero) and omega > 0 at bracket[1], consistent with omega decreasing in E.
    """

    energy: float
    bracket: tuple
    residual: float
    iterations: int


def solve_two_body(m, scheme, window=(1e-6, 1e6), residual_tol=1e-10, scan_points=49):
    """Two-body ground-state energy: the unique zero of omega(E).

    Scans |E| geometrically over `window` (in units of the scheme's binding
    scale) for a sign change, then bisects in log|E| and polishes with secant
    steps, exploiting guaranteed monotonicity.
    """
    scale = _binding_scale(scheme)
    omega = lambda abs_e: _omega(m, scheme, -abs_e)

    grid = np.geomspace(window[0] * scale, window[1] * scale, scan_points)
    iterations = 0
    lo = hi = None
    prev_a, prev_w = grid[0], omega(grid[0])
    iterations += 1
    for a in grid[1:]:
        w = omega(a)
        iterations += 1
        if prev_w < 0.0 <= w:
            lo, wlo, hi, whi = prev_a, prev_w, a, w
            break
        prev_a, prev_w = a, w
    if lo is None:
        raise BracketingError(
            f"no sign change of omega in |E| in [{grid[0]:.6g}, {grid[-1]:.6g}]",
            window=(float(grid[0]), float(grid[-1])),
        )

    # bisection in log |E| down to relative width ~1e-14
    llo, lhi = math.log(lo), math.log(hi)
    for _ in range(80):
        mid = 0.5 * (llo + lhi)
        wm = omega(math.exp(mid))
        iterations += 1
        if wm < 0.0:
            llo, wlo = mid, wm
        else:
            lhi, whi = mid, wm
        if lhi - llo < 1e-14:
            break

    a_best = math.exp(0.5 * (llo + lhi))
    w_best = omega(a_best)
    iterations += 1
    # secant polish in |E|
    a_prev, w_prev = math.exp(llo), wlo
    for _ in range(8):
        if abs(w_best) < 0.1 * residual_tol or w_best == w_prev:
            break
        a_next = a_best - w_best * (a_best - a_prev) / (w_best - w_prev)
        if not (math.exp(llo) <= a_next <= math.exp(lhi)):
            break
        a_prev, w_prev = a_best, w_best
        a_best, w_best = a_next, omega(a_next)
        iterations += 1
    residual = abs(w_best)
    if residual >= residual_tol:
        raise NumericalError(
            f"two-body solve stalled with residual {residual:.3e} >= {residual_tol:.1e}"
        )
    return BoundStateResult(
        energy=-a_best,
        bracket=(-math.exp(llo), -math.exp(lhi)),
        residual=residual,
        iterations=iterations,
    )


@dataclass(frozen=True)
class PrincipalCurve:
    """Sampled flow of one eigenvalue omega_k over an energy grid."""

    manifold: object
    scheme: object
    mode: object
    energies: np.ndarray
    omega: np.ndarray
    domega: np.ndarray

    @property
    def samples(self):
        return list(zip(self.energies, self.omega, self.domega))


def torus_modes(count):
    """Canonical lattice-mode representatives ordered by |q|^2."""
    reps = [(q1, q2) for q1 in range(0, 14) for q2 in range(0, q1 + 1)]
    reps.sort(key=lambda q: (q[0] ** 2 + q[1] ** 2, q[0], q[1]))
    if count > len(reps):
        raise ValueError("mode count exceeds the enumerated lattice shells")
    return reps[:count]


def flow_curves(m, scheme, energies, modes=(0,)):
    """Sample omega_k over an increasing grid of negative energies.

    The derivative column is a numerical dE difference: central inside the
    grid, one-sided at the ends (np.gradient), which degenerates gracefully
    on a two-point grid.
    """
    energies = np.asarray(energies, dtype=float)
    if energies.size < 2:
        raise ValueError("energy grid needs at least two points")
    if np.any(energies >= 0):
        raise ValueError("energy grid must be entirely negative")
    if np.any(np.diff(energies) <= 0):
        raise ValueError("energy grid must be strictly increasing")
    curves = []
    for mode in modes:
        mode_key = mode if (mode == 0 or isinstance(m, Torus)) else None
        if mode_key is None:
            raise ValueError("excited modes are implemented on the torus only")
        om = np.array(_map_energies(lambda e: _omega(m, scheme, e, mode=mode), energies))
        dom = np.gradient(om, energies)
        curves.append(PrincipalCurve(m, scheme, mode, energies, om, dom))
    return curves


def curves_to_csv(curves, path):
    """Plot-ready CSV with columns E, omega, domega_dE, mode."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["E", "omega", "domega_dE", "mode"])
        for curve in curves:
            label = "0" if curve.mode == 0 else f"{curve.mode[0]},{curve.mode[1]}"
            for e, om, dom in curve.samples:
                writer.writerow([format(e, ".17g"), format(om, ".17g"),
                                 format(dom, ".17g"), label])


def result_to_json_dict(result):
    return {
        "schema_version": 1,
        "E_gr": result.energy,
        "bracket_lo": result.bracket[0],
        "bracket_hi": result.bracket[1],
        "residual": result.residual,
        "iterations": result.iterations,
    }


def domega_de_check(m, scheme, E, rel_step=1e-4):
    """Central-difference domega/dE, cross-checked against the exact integral.

    Differentiating under the integral gives
        domega/dE = -[ 1/(8 pi |E|) + int t (Theta(2t)/V - 1/(8 pi t)) e^{-|E|t} dt ],
    always negative.  Raises NumericalError if the finite difference strays
    from the integral by more than 1e-6 or comes out nonnegative.
    """
    if not E < 0:
        raise ValueError("energy must be negative")
    abs_e = -E
    h = rel_step * abs_e
    fd = (_omega(m, scheme, E + h) - _omega(m, scheme, E - h)) / (2.0 * h)
    if isinstance(m, Plane):
        analytic = -1.0 / (_EIGHT_PI * abs_e)
    else:
        weighted = _laplace_integral(
            lambda t: kernel_diagonal_excess(m, 2.0 * t), abs_e, _time_scale(m), weight_power=1
        )
        analytic = -(1.0 / (_EIGHT_PI * abs_e) + weighted)
    if fd >= 0.0:
        raise NumericalError(f"domega/dE = {fd:.3e} is not negative")
    if abs(fd - analytic) > 1e-6 * max(1.0, abs(analytic)):
        raise NumericalError(
            f"finite-difference slope {fd:.12e} disagrees with integral {analytic:.12e}"
        )
    return fd


def nbody_upper_bound(n, m, mu2):
    """Variational bound omega_0^{(n)}(E2) <= -(n-2)(n+1)/(2 V |E2|).

    Uses the constant two-boson pairing profile on a compact homogeneous
    manifold; E2 is the two-body ground energy at the same mu^2.  Zero at
    n = 2, strictly negative beyond, certifying n-body binding below E2.
    """
    if n < 2 or int(n) != n:
        raise ValueError("boson number n must be an integer >= 2")
    if not is_compact(m):
        raise ValueError("the n-body bound requires a compact manifold")
    e2 = solve_two_body(m, BoundState(mu2)).energy
    return -(n - 2) * (n + 1) / (2.0 * volume(m) * abs(e2))


def hyperbolic_estar(R, mu2, printed_shift=False, tol=1e-12, max_iter=200):
    """Upper-bound energy E* < 0 on the hyperbolic plane of radius R.

    Solves ln((|E*| + s)/mu^2)/(8 pi) = -1/(2 pi (|E*| + s)) for the unique
    root on the increasing branch y > 4.  The default shift is the
    dimensionally consistent s = 1/(2 R^2); `printed_shift` selects the
    s = R^2/2 variant instead.
    """
    if not (R > 0 and mu2 > 0):
        raise ValueError("radius and mu^2 must be positive")
    s = R * R / 2.0 if printed_shift else 1.0 / (2.0 * R * R)

    def gap(y):
        return math.log(y / mu2) / _EIGHT_PI + 1.0 / (2.0 * math.pi * y)

    y_min = 4.0  # stationary point of gap; the root with y > 4 is the bound
    if gap(y_min) >= 0.0:
        raise BracketingError(
            f"no solution: mu^2 = {mu2:.6g} too small (needs mu^2 > 4e)", window=(y_min, mu2)
        )
    lo, hi = y_min, max(mu2, 8.0)
    while gap(hi) <= 0.0:
        hi *= 2.0
        if hi > 1e308:
            raise BracketingError("hyperbolic bound bracket expansion failed")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if gap(mid) < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < tol * hi:
            break
    y = 0.5 * (lo + hi)
    # secant polish
    y_prev, g_prev = lo, gap(lo)
    g_y = gap(y)
    for _ in range(10):
        if g_y == g_prev or abs(g_y) < 1e-16:
            break
        y_next = y - g_y * (y - y_prev) / (g_y - g_prev)
        if not (lo <= y_next <= hi):
            break
        y_prev, g_prev = y, g_y
        y, g_y = y_next, gap(y_next)
    if y <= s:
        raise BracketingError(
            f"solution y = {y:.6g} does not exceed the shift s = {s:.6g}; no |E*| > 0"
        )
    return -(y - s)


def divergence_demo(m, E, eps_list):
    """Regularized integrals I(eps) = int_eps^inf e^{-t|E|} K_t(x,x) dt.

    On a compact manifold the diagonal kernel carries the 1/(4 pi t) Weyl
    term, so I(eps) grows like ln(1/eps)/(4 pi): the state behind it has
    divergent free energy.  Returns [(eps, I(eps)), ...].
    """
    if not is_compact(m):
        raise ValueError("the divergence demonstration requires a compact manifold")
    if not E < 0:
        raise ValueError("energy must be negative")
    eps_list = [float(e) for e in eps_list]
    if any(e <= 0 for e in eps_list):
        raise ValueError("all cutoffs must be positive")
    if any(b >= a for a, b in zip(eps_list, eps_list[1:])):
        raise ValueError("cutoff list must be strictly decreasing")
    abs_e = -E
    t_top = 50.0 / abs_e + _time_scale(m)

    def g(v):
        t = math.exp(v)
        return kernel_diagonal(m, t) * math.exp(-abs_e * t) * t

    out = []
    for eps in eps_list:
        cuts = sorted({math.log(eps), math.log(min(max(_time_scale(m), 2 * eps), t_top)),
                       math.log(t_top)})
        total = 0.0
        for lo, hi in zip(cuts[:-1], cuts[1:]):
            if hi <= lo:
                continue
            res = integrate.quad(g, lo, hi, epsabs=1e-12, epsrel=1e-10, limit=300,
                                 full_output=1)
            if len(res) > 3 and res[1] > 1e-8:
                raise QuadratureError(f"divergence-demo quadrature failed: {res[3]}")
            total += res[0]
        total += math.exp(-abs_e * t_top) / (volume(m) * abs_e)  # zero-mode tail
        out.append((eps, total))
    return out


def divergence_fit(points):
    """Least-squares fit I(eps) = c ln(1/eps) + b; returns (c, b)."""
    eps = np.array([p[0] for p in points])
    vals = np.array([p[1] for p in points])
    c, b = np.polyfit(np.log(1.0 / eps), vals, 1)
    return float(c), float(b)
