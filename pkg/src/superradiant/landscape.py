"""Stationary points, regime classification and global maximizer of Omega.

Omega is even in x, so the search runs on the half-line x >= 0 and the
full-line picture is recovered by mirroring: a maximum at x* > 0 stands
for the pair +-x*.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .core_model import (
    DEFAULT_QUAD,
    ModelParams,
    QuadratureSpec,
    curvature_at_origin,
    omega,
    omega_prime,
    omega_second,
)
from .errors import BracketError

SR_TOL = 1e-6
VALUE_TOL = 1e-9
DEGENERACY_FACTOR = 1e-8

Kind = Literal["maximum", "minimum", "degenerate"]


@dataclass(frozen=True)
class SearchSpec:
    """Controls for the stationary-point search on [0, x_max].

    ``x_max=None`` uses ``lam + 1``, beyond which Omega' < 0 for any
    couplings (the k-average of the slope of log cosh is at most beta*lam).
    """

    grid_points: int = 400
    grad_tol: float = 1e-12
    x_tol: float = 1e-10
    x_max: float | None = None
    max_doublings: int = 3

    def __post_init__(self):
        if self.grid_points < 3:
            raise ValueError("grid_points must be >= 3")
        if self.x_tol <= 0 or self.grad_tol < 0:
            raise ValueError("x_tol must be > 0 and grad_tol >= 0")
        if self.x_max is not None and not (self.x_max > 0 and math.isfinite(self.x_max)):
            raise ValueError("x_max must be a positive finite number")


DEFAULT_SEARCH = SearchSpec()


@dataclass(frozen=True)
class StationaryPoint:
    x: float
    omega_value: float
    kind: Kind
    curvature: float
    # Omega falls off on both sides; differs from kind only for degenerate points.
    peak: bool = field(default=False, compare=False)


@dataclass(frozen=True)
class LandscapeProfile:
    params: ModelParams
    stationary_points: tuple[StationaryPoint, ...]
    maxima_count: int
    global_maximizer: float
    omega_star: float
    superradiant: bool

    @property
    def maxima(self) -> tuple[StationaryPoint, ...]:
        return tuple(p for p in self.stationary_points if p.peak)


def degeneracy_tol(params: ModelParams) -> float:
    return DEGENERACY_FACTOR * params.beta


def _kind(curvature: float, tol: float, peak: bool) -> Kind:
    if abs(curvature) < tol:
        return "degenerate"
    return "maximum" if peak else "minimum"


def _search_bound(params: ModelParams, quad: QuadratureSpec, search: SearchSpec) -> float:
    x_max = search.x_max if search.x_max is not None else params.lam + 1.0
    for _ in range(search.max_doublings + 1):
        if omega_prime(params, x_max, quad) < 0:
            return x_max
        x_max *= 2.0
    raise BracketError(
        f"Omega' is not negative at x_max={x_max / 2:g} after "
        f"{search.max_doublings} doublings for {params}"
    )


def _bisect(params, quad, lo, hi, sign_lo, search: SearchSpec):
    """Vectorised bisection of Omega' over several sign-change brackets."""
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    sign_lo = np.array(sign_lo, dtype=float)
    done = np.zeros(lo.shape, dtype=bool)
    root = 0.5 * (lo + hi)
    while not np.all(done):
        live = ~done
        mid = 0.5 * (lo[live] + hi[live])
        d = np.atleast_1d(omega_prime(params, mid, quad))
        same = np.sign(d) == sign_lo[live]
        new_lo = np.where(same, mid, lo[live])
        new_hi = np.where(same, hi[live], mid)
        lo[live], hi[live] = new_lo, new_hi
        root[live] = np.where(np.abs(d) < search.grad_tol, mid, 0.5 * (new_lo + new_hi))
        done[live] = (np.abs(d) < search.grad_tol) | (new_hi - new_lo < search.x_tol)
    return root


def find_stationary_points(params: ModelParams, quad: QuadratureSpec = DEFAULT_QUAD,
                           search: SearchSpec = DEFAULT_SEARCH) -> list[StationaryPoint]:
    """All stationary points of Omega on [0, x_max], ordered by x.

    x = 0 is always included.  Other points come from sign changes of
    Omega' on a uniform grid, refined by bisection.  Just right of the
    origin the sign of Omega' is that of Omega''(0), so a root lying
    inside the first grid cell is still found.
    """
    x_max = _search_bound(params, quad, search)
    xs = np.linspace(0.0, x_max, search.grid_points)
    d = np.asarray(omega_prime(params, xs, quad))
    curv0 = curvature_at_origin(params, quad)
    signs = np.sign(d)
    signs[0] = np.sign(curv0) if curv0 != 0 else signs[1]

    lo, hi, sign_lo, exact = [], [], [], []
    for i in range(1, xs.size):
        if signs[i] == 0:
            # exact zero on the grid: a root only if the sign flips across it
            signs[i] = signs[i + 1] if i + 1 < xs.size else signs[i - 1]
            if signs[i - 1] * signs[i] < 0:
                exact.append((xs[i], signs[i - 1]))
            continue
        if signs[i - 1] * signs[i] < 0:
            lo.append(xs[i - 1])
            hi.append(xs[i])
            sign_lo.append(signs[i - 1])
    roots = list(_bisect(params, quad, lo, hi, sign_lo, search)) if lo else []
    incoming = list(sign_lo)
    for x0, s in exact:
        roots.append(x0)
        incoming.append(s)
    order = np.argsort(roots)
    roots = [float(roots[i]) for i in order]
    incoming = [incoming[i] for i in order]

    all_x = np.array([0.0] + roots)
    values = np.atleast_1d(omega(params, all_x, quad))
    curvs = np.empty(all_x.size)
    curvs[0] = curv0
    if roots:
        curvs[1:] = np.atleast_1d(omega_second(params, np.array(roots), quad))

    tol = degeneracy_tol(params)
    points = [StationaryPoint(0.0, float(values[0]), _kind(curv0, tol, signs[0] < 0),
                              float(curv0), peak=bool(signs[0] < 0))]
    for x, v, c, s in zip(roots, values[1:], curvs[1:], incoming):
        peak = bool(s > 0)  # Omega' goes from + to -
        points.append(StationaryPoint(x, float(v), _kind(c, tol, peak), float(c), peak=peak))
    return points


def _pick_global(points) -> StationaryPoint:
    best = None
    for p in points:
        if not p.peak:
            continue
        # ties within VALUE_TOL keep the smaller x
        if best is None or p.omega_value > best.omega_value + VALUE_TOL:
            best = p
    return best


def profile_from_points(params: ModelParams, points) -> LandscapeProfile:
    count = sum((1 if p.x == 0 else 2) for p in points if p.peak)
    best = _pick_global(points)
    return LandscapeProfile(
        params=params,
        stationary_points=tuple(points),
        maxima_count=count,
        global_maximizer=best.x,
        omega_star=best.omega_value,
        superradiant=best.x > SR_TOL,
    )


def classify_landscape(params: ModelParams, quad: QuadratureSpec = DEFAULT_QUAD,
                       search: SearchSpec = DEFAULT_SEARCH) -> LandscapeProfile:
    """Stationary points plus the one/two/three-maxima classification.

    ``maxima_count`` counts local maxima over the full line: a maximum at
    the origin counts once, one at x* > 0 twice (for +-x*).
    """
    return profile_from_points(params, find_stationary_points(params, quad, search))


def global_maximizer(params: ModelParams, quad: QuadratureSpec = DEFAULT_QUAD,
                     search: SearchSpec = DEFAULT_SEARCH) -> tuple[float, float]:
    """(x*, Omega(x*)) for the dominant maximum on x >= 0."""
    prof = classify_landscape(params, quad, search)
    return prof.global_maximizer, prof.omega_star
