"""Composite Gauss-Legendre quadrature over the half Brillouin zone.

All integrals in the package have the form ``(1/pi) * int_0^pi f(x, k) dk``
for a batch of x values.  The panel set is shared by the whole batch so
that results at neighbouring x (e.g. finite-difference stencils) are
computed on an identical grid.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import QuadratureError

GL_ORDER = 10
_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(GL_ORDER)

# Graded breakpoints toward k = pi, used when the gap of the chain nearly closes.
_KINK_GRADING = 14
_ROUNDOFF = 64 * np.finfo(float).eps


def initial_breakpoints(panels: int, near_kink: bool) -> np.ndarray:
    """Uniform breakpoints on [0, pi], optionally graded toward k = pi."""
    pts = np.linspace(0.0, math.pi, panels + 1)
    if near_kink:
        width = math.pi / panels
        graded = math.pi - width * 0.5 ** np.arange(1, _KINK_GRADING + 1)
        pts = np.union1d(pts, graded)
    return pts


def _panel_sums(integrand, a: np.ndarray, b: np.ndarray):
    """One-panel and two-half-panel Gauss-Legendre sums for every panel."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    quarter = 0.5 * half
    k_coarse = mid[:, None] + half[:, None] * _NODES
    k_left = (a + quarter)[:, None] + quarter[:, None] * _NODES
    k_right = (mid + quarter)[:, None] + quarter[:, None] * _NODES
    n_panels = a.size
    k_all = np.concatenate([k_coarse.ravel(), k_left.ravel(), k_right.ravel()])
    values = integrand(k_all)  # (n_x, 3 * n_panels * GL_ORDER)
    values = values.reshape(values.shape[0], 3, n_panels, GL_ORDER)
    weighted = values @ _WEIGHTS  # (n_x, 3, n_panels)
    coarse = weighted[:, 0] * half
    fine = (weighted[:, 1] + weighted[:, 2]) * quarter
    magnitude = np.abs(values).max(axis=(0, 1, 3)) * (b - a)
    return coarse, fine, magnitude


def k_average(integrand, breakpoints: np.ndarray, abs_tol: float,
              max_panels: int) -> np.ndarray:
    """Adaptive ``(1/pi) int_0^pi integrand(k) dk`` for a batch.

    ``integrand`` maps a 1-D array of k values to an array of shape
    ``(n_x, k.size)``.  A panel is accepted once the one-panel and
    two-half-panel rules agree to ``abs_tol * width`` for every member of
    the batch; accepted panels contribute their refined value, so the
    total error is bounded by ``abs_tol`` unless that is below the
    roundoff level of the integrand itself.
    """
    a = breakpoints[:-1]
    b = breakpoints[1:]
    total = None
    n_done = 0
    while a.size:
        coarse, fine, magnitude = _panel_sums(integrand, a, b)
        err = np.max(np.abs(fine - coarse), axis=0)
        # below the roundoff floor further bisection cannot help
        floor = _ROUNDOFF * magnitude
        ok = err <= np.maximum(abs_tol * (b - a), floor)
        part = fine[:, ok].sum(axis=1)
        total = part if total is None else total + part
        n_done += int(ok.sum())
        bad_a, bad_b = a[~ok], b[~ok]
        if n_done + 2 * bad_a.size > max_panels:
            raise QuadratureError(
                f"k-quadrature did not reach abs_tol={abs_tol:g} within "
                f"{max_panels} panels (max panel disagreement {err.max():.3g})"
            )
        mid = 0.5 * (bad_a + bad_b)
        a = np.concatenate([bad_a, mid])
        b = np.concatenate([mid, bad_b])
    return total / math.pi
