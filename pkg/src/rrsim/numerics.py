"""Quadrature and 1-D solvers with explicit error/convergence reporting.

The cubature is a globally adaptive tensor-product Gauss-Kronrod (7/15)
scheme. Each panel's error estimate is the difference between the Kronrod and
the embedded Gauss result, which is pessimistic for smooth integrands.
Panels are refined in a fixed order, so results are bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import optimize

from .errors import MaxPanels, NoBracket

# 15-point Kronrod nodes (positive half, descending) and weights; the
# 7-point Gauss rule lives on the odd-indexed nodes.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
K_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
G_WEIGHTS = np.zeros(15)
G_WEIGHTS[1:7:2] = _WG[:3]
G_WEIGHTS[7] = _WG[3]
G_WEIGHTS[9:14:2] = _WG[2::-1]

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    panels_used: int


@dataclass(frozen=True)
class SolverResult:
    abscissa: float
    residual: float
    iterations: int
    converged: bool


@dataclass(frozen=True)
class Rectangle:
    y0: float
    y1: float
    z0: float
    z1: float

    def __post_init__(self):
        if not (self.y1 > self.y0 and self.z1 > self.z0):
            raise ValueError(f"degenerate rectangle {self}")

    @classmethod
    def centered(cls, half_y, half_z):
        return cls(-half_y, half_y, -half_z, half_z)

    @property
    def area(self):
        return (self.y1 - self.y0) * (self.z1 - self.z0)


@dataclass(frozen=True)
class Disc:
    """Disc of the given radius centred on the origin."""

    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("disc radius must be positive")

    @property
    def area(self):
        return math.pi * self.radius**2


def _tolerance(value, rel_tol, abs_tol):
    return max(rel_tol * abs(value), abs_tol)


def _panel_rules(f, panels):
    """Kronrod value, Gauss value and per-axis error for a batch of panels."""
    y0, y1, z0, z1 = panels.T
    cy, hy = 0.5 * (y0 + y1), 0.5 * (y1 - y0)
    cz, hz = 0.5 * (z0 + z1), 0.5 * (z1 - z0)
    ys = cy[:, None] + hy[:, None] * NODES[None, :]
    zs = cz[:, None] + hz[:, None] * NODES[None, :]
    vals = f(ys[:, :, None], zs[:, None, :])
    vals = np.broadcast_to(vals, (len(panels), 15, 15))
    jac = hy * hz
    kk = np.einsum("pij,i,j->p", vals, K_WEIGHTS, K_WEIGHTS) * jac
    gg = np.einsum("pij,i,j->p", vals, G_WEIGHTS, G_WEIGHTS) * jac
    gk = np.einsum("pij,i,j->p", vals, G_WEIGHTS, K_WEIGHTS) * jac
    kg = np.einsum("pij,i,j->p", vals, K_WEIGHTS, G_WEIGHTS) * jac
    err = np.abs(kk - gg)
    # roundoff floor: no panel is asked for better than a few ulps
    err = np.maximum(err, 50 * _EPS * np.abs(kk))
    return kk, err, np.abs(kk - gk), np.abs(kk - kg)


def _adaptive_rect(f, rect, rel_tol, abs_tol, max_panels):
    panels = np.array([[rect.y0, rect.y1, rect.z0, rect.z1]])
    vals, errs, ey, ez = _panel_rules(f, panels)
    while True:
        value = math.fsum(vals)
        total_err = math.fsum(errs)
        tol = _tolerance(value, rel_tol, abs_tol)
        if total_err <= tol:
            return QuadratureResult(value, total_err, len(panels))
        if len(panels) >= max_panels:
            raise MaxPanels(
                f"quadrature did not converge within {max_panels} panels "
                f"(error {total_err:.3g} > {tol:.3g})",
                QuadratureResult(value, total_err, len(panels)),
            )
        order = np.argsort(-errs, kind="stable")
        budget = tol / len(panels)
        n_split = int(np.count_nonzero(errs > budget))
        n_split = max(1, min(n_split, 512, max_panels - len(panels)))
        pick = order[:n_split]
        keep = np.ones(len(panels), dtype=bool)
        keep[pick] = False

        p = panels[pick]
        split_y = ey[pick] >= ez[pick]
        ym = 0.5 * (p[:, 0] + p[:, 1])
        zm = 0.5 * (p[:, 2] + p[:, 3])
        first = p.copy()
        second = p.copy()
        first[split_y, 1] = ym[split_y]
        second[split_y, 0] = ym[split_y]
        first[~split_y, 3] = zm[~split_y]
        second[~split_y, 2] = zm[~split_y]
        children = np.concatenate([first, second])
        cv, ce, cey, cez = _panel_rules(f, children)

        panels = np.concatenate([panels[keep], children])
        vals = np.concatenate([vals[keep], cv])
        errs = np.concatenate([errs[keep], ce])
        ey = np.concatenate([ey[keep], cey])
        ez = np.concatenate([ez[keep], cez])


def integrate_2d(
    integrand: Callable,
    region,
    rel_tol: float = 1e-8,
    abs_tol: float = 0.0,
    max_panels: int = 20000,
) -> QuadratureResult:
    """Integrate ``integrand(y, z)`` over a :class:`Rectangle` or :class:`Disc`.

    The integrand must accept broadcastable numpy arrays. Discs are mapped to
    polar coordinates before subdivision. Raises :class:`MaxPanels` (carrying
    the best estimate) when the tolerance cannot be met.
    """
    if not (rel_tol > 0 or abs_tol > 0):
        raise ValueError("at least one tolerance must be positive")
    if isinstance(region, Rectangle):
        return _adaptive_rect(integrand, region, rel_tol, abs_tol, max_panels)
    if isinstance(region, Disc):

        def polar(rho, theta):
            return integrand(rho * np.cos(theta), rho * np.sin(theta)) * rho

        box = Rectangle(0.0, region.radius, 0.0, 2.0 * math.pi)
        return _adaptive_rect(polar, box, rel_tol, abs_tol, max_panels)
    raise TypeError(f"unsupported region {region!r}")


def _gk15(f, a, b):
    c, h = 0.5 * (a + b), 0.5 * (b - a)
    x = c[:, None] + h[:, None] * NODES[None, :]
    v = f(x)
    k = (v @ K_WEIGHTS) * h
    g = (v @ G_WEIGHTS) * h
    err = np.maximum(np.abs(k - g), 50 * _EPS * np.abs(k))
    return k, err


def integrate_1d(f, a, b, rel_tol=1e-10, abs_tol=0.0, max_panels=5000, breakpoints=()):
    """Adaptive Gauss-Kronrod on [a, b], optionally pre-split at ``breakpoints``."""
    edges = sorted({a, b, *(x for x in breakpoints if a < x < b)})
    lo = np.array(edges[:-1], dtype=float)
    hi = np.array(edges[1:], dtype=float)
    vals, errs = _gk15(f, lo, hi)
    while True:
        value = math.fsum(vals)
        total_err = math.fsum(errs)
        tol = _tolerance(value, rel_tol, abs_tol)
        if total_err <= tol:
            return QuadratureResult(value, total_err, len(lo))
        if len(lo) >= max_panels:
            raise MaxPanels(
                f"1-D quadrature did not converge within {max_panels} panels",
                QuadratureResult(value, total_err, len(lo)),
            )
        order = np.argsort(-errs, kind="stable")
        n_split = int(np.count_nonzero(errs > tol / len(lo)))
        pick = order[: max(1, min(n_split, 256))]
        keep = np.ones(len(lo), dtype=bool)
        keep[pick] = False
        mid = 0.5 * (lo[pick] + hi[pick])
        new_lo = np.concatenate([lo[pick], mid])
        new_hi = np.concatenate([mid, hi[pick]])
        nv, ne = _gk15(f, new_lo, new_hi)
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        vals = np.concatenate([vals[keep], nv])
        errs = np.concatenate([errs[keep], ne])


def inside_angle(rho, rect):
    """Angular measure of the circle of radius ``rho`` lying inside a centred rectangle."""
    a = rect.y1
    b = rect.z1
    rho = np.asarray(rho, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        cut_a = np.where(rho > a, np.arccos(np.clip(a / rho, -1.0, 1.0)), 0.0)
        cut_b = np.where(rho > b, np.arccos(np.clip(b / rho, -1.0, 1.0)), 0.0)
    return np.clip(2.0 * math.pi - 4.0 * cut_a - 4.0 * cut_b, 0.0, None)


def integrate_radial(profile, region, rel_tol=1e-10, abs_tol=0.0, exclude=(), max_panels=5000):
    """Integrate a radially symmetric ``profile(rho)`` over a centred region.

    ``exclude`` is a sequence of ``(r_lo, r_hi)`` annuli removed from the
    region. Centred rectangles are handled through the exact angular measure
    of each circle inside them, so only a 1-D integral remains.
    """
    if isinstance(region, Disc):
        r_max = region.radius

        def weight(r):
            return 2.0 * math.pi * np.ones_like(r)

        kinks = ()
    elif isinstance(region, Rectangle):
        if not (math.isclose(region.y0, -region.y1) and math.isclose(region.z0, -region.z1)):
            raise ValueError("radial integration needs an origin-centred rectangle")
        r_max = math.hypot(region.y1, region.z1)

        def weight(r):
            return inside_angle(r, region)

        kinks = (region.y1, region.z1)
    else:
        raise TypeError(f"unsupported region {region!r}")

    pieces = [(0.0, r_max)]
    for lo_cut, hi_cut in sorted(exclude):
        nxt = []
        for lo, hi in pieces:
            if hi_cut <= lo or lo_cut >= hi:
                nxt.append((lo, hi))
                continue
            if lo < lo_cut:
                nxt.append((lo, lo_cut))
            if hi_cut < hi:
                nxt.append((hi_cut, hi))
        pieces = nxt

    def integrand(r):
        return profile(r) * weight(r) * r

    total = 0.0
    err = 0.0
    panels = 0
    for lo, hi in pieces:
        res = integrate_1d(integrand, lo, hi, rel_tol, abs_tol, max_panels, breakpoints=kinks)
        total += res.value
        err += res.error_estimate
        panels += res.panels_used
    return QuadratureResult(total, err, panels)


def find_root_bracketed(function, lo, hi, tol=1e-12, max_iter=200):
    """Brent's method on a sign-changing bracket (scipy ``brentq``).

    Raises :class:`NoBracket` when ``function(lo)`` and ``function(hi)`` have
    the same strict sign.
    """
    f_lo = function(lo)
    f_hi = function(hi)
    if f_lo == 0.0:
        return SolverResult(lo, 0.0, 0, True)
    if f_hi == 0.0:
        return SolverResult(hi, 0.0, 0, True)
    if np.sign(f_lo) == np.sign(f_hi):
        raise NoBracket(f"f({lo})={f_lo:.6g} and f({hi})={f_hi:.6g} have the same sign")
    root, info = optimize.brentq(
        function, lo, hi, xtol=tol, rtol=4 * _EPS, maxiter=max_iter, full_output=True, disp=False
    )
    return SolverResult(root, float(function(root)), info.iterations, bool(info.converged))


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def minimize_unimodal(function, lo, hi, tol=1e-9, max_iter=500):
    """Golden-section search for the minimiser of a unimodal function on [lo, hi]."""
    a, b = float(lo), float(hi)
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = function(c), function(d)
    it = 0
    while b - a > tol and it < max_iter:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = function(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = function(d)
        it += 1
    x = 0.5 * (a + b)
    return SolverResult(x, float(function(x)), it, b - a <= tol)
