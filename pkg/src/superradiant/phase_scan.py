"""Parameter sweeps: regime maps, transition location, hysteresis branches."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Literal, Sequence

import numpy as np

from .core_model import DEFAULT_QUAD, ModelParams, QuadratureSpec, omega_second
from .errors import ContinuationError, SuperradiantError, TransitionError
from .landscape import (
    DEFAULT_SEARCH,
    VALUE_TOL,
    SearchSpec,
    classify_landscape,
    find_stationary_points,
)

JUMP_TOL = 1e-3
# Width of the final flag bracket used to measure the maximizer jump.  Much
# finer than the reported resolution: near a continuous transition x* grows
# like sqrt(distance), so a coarser probe would mimic a jump.
JUMP_PROBE = 1e-9
MATCH_RADIUS = 0.025
MIN_STEP = 1e-7
# A lost branch counts as a spinodal only if it has flattened this much.
SPINODAL_FLATNESS = 0.05

PARAM_ALIASES = {
    "lambda": "lam",
    "lam": "lam",
    "epsilon": "epsilon",
    "eps": "epsilon",
    "J": "j_coupling",
    "j": "j_coupling",
    "j_coupling": "j_coupling",
    "beta": "beta",
}


def field_name(name: str) -> str:
    """Map a user-facing parameter name onto its ModelParams field."""
    try:
        return PARAM_ALIASES[name]
    except KeyError:
        raise ValueError(f"unknown parameter {name!r}; expected one of {sorted(PARAM_ALIASES)}") from None


def with_param(params: ModelParams, name: str, value: float) -> ModelParams:
    return replace(params, **{field_name(name): float(value)})


@dataclass(frozen=True)
class Axis:
    name: str
    values: tuple[float, ...]

    def __post_init__(self):
        field_name(self.name)
        vals = tuple(float(v) for v in self.values)
        if not vals:
            raise ValueError(f"axis {self.name!r} has no values")
        if not all(math.isfinite(v) for v in vals):
            raise ValueError(f"axis {self.name!r} has non-finite values")
        if any(b < a for a, b in zip(vals, vals[1:])):
            raise ValueError(f"axis {self.name!r} values must be sorted")
        object.__setattr__(self, "values", vals)

    @classmethod
    def linspace(cls, name: str, start: float, stop: float, num: int) -> "Axis":
        return cls(name, tuple(np.linspace(start, stop, num)))


@dataclass(frozen=True)
class Cell:
    maxima_count: int
    global_maximizer: float
    omega_star: float
    superradiant: bool
    error: str | None = None


@dataclass(frozen=True)
class PhaseGrid:
    axis1: Axis
    axis2: Axis
    fixed: ModelParams
    cells: tuple[tuple[Cell, ...], ...]

    def params_at(self, i: int, j: int) -> ModelParams:
        p = with_param(self.fixed, self.axis1.name, self.axis1.values[i])
        return with_param(p, self.axis2.name, self.axis2.values[j])

    def maximizer_surface(self) -> np.ndarray:
        return np.array([[c.global_maximizer for c in row] for row in self.cells])

    def failed_cells(self) -> list[tuple[int, int, str]]:
        return [(i, j, c.error) for i, row in enumerate(self.cells)
                for j, c in enumerate(row) if c.error is not None]


@dataclass(frozen=True)
class Sweep:
    parameter: str
    start: float
    stop: float

    def __post_init__(self):
        field_name(self.parameter)
        if not (math.isfinite(self.start) and math.isfinite(self.stop)) or self.start >= self.stop:
            raise ValueError(f"sweep needs finite start < stop, got [{self.start}, {self.stop}]")


@dataclass(frozen=True)
class TransitionPoint:
    swept_parameter: str
    value: float
    order: Literal["first", "second"]
    jump: float
    branches: tuple[float, float]


@dataclass(frozen=True)
class HysteresisBranch:
    swept_parameter: str
    direction: Literal["forward", "backward"]
    samples: tuple[tuple[float, float, float], ...]
    terminus: float | None


# ---------------------------------------------------------------------------
# grid scan


def _cell(params: ModelParams, quad: QuadratureSpec, search: SearchSpec) -> Cell:
    try:
        prof = classify_landscape(params, quad, search)
    except SuperradiantError as exc:
        nan = float("nan")
        return Cell(0, nan, nan, False, error=f"{type(exc).__name__}: {exc}")
    return Cell(prof.maxima_count, prof.global_maximizer, prof.omega_star, prof.superradiant)


def _row(args) -> tuple[Cell, ...]:
    params_row, quad, search = args
    return tuple(_cell(p, quad, search) for p in params_row)


def scan_grid(axis1: Axis, axis2: Axis, fixed: ModelParams,
              quad: QuadratureSpec = DEFAULT_QUAD, search: SearchSpec = DEFAULT_SEARCH,
              workers: int = 1) -> PhaseGrid:
    """Classify the landscape on every (axis1, axis2) cell.

    Rows (axis1) are distributed over ``workers`` processes; the result is
    independent of the worker count.  A failing cell records its error
    message and NaN values instead of aborting the scan.
    """
    if field_name(axis1.name) == field_name(axis2.name):
        raise ValueError("scan axes must name distinct parameters")
    rows = []
    for v1 in axis1.values:
        base = with_param(fixed, axis1.name, v1)
        rows.append(([with_param(base, axis2.name, v2) for v2 in axis2.values], quad, search))
    if workers > 1 and len(rows) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            cells = tuple(pool.map(_row, rows))
    else:
        cells = tuple(_row(r) for r in rows)
    return PhaseGrid(axis1, axis2, fixed, cells)


def grid_transitions(grid: PhaseGrid) -> list[tuple[int, int, str]]:
    """Phase boundaries between neighbouring cells along axis2.

    Returns ``(i, j, kind)`` for each pair (j, j + 1) in row i whose
    superradiant flags differ.  ``kind`` is ``"cliff"`` when either cell has
    three maxima (a metastable branch coexists, so x* jumps) and
    ``"collapse"`` otherwise (x* shrinks continuously into the origin).
    """
    found = []
    for i, row in enumerate(grid.cells):
        for j in range(len(row) - 1):
            a, b = row[j], row[j + 1]
            if a.error or b.error or a.superradiant == b.superradiant:
                continue
            kind = "cliff" if 3 in (a.maxima_count, b.maxima_count) else "collapse"
            found.append((i, j, kind))
    return found


# ---------------------------------------------------------------------------
# transitions


def _peaks(params, quad, search):
    return [p for p in find_stationary_points(params, quad, search) if p.peak]


def _nearest_peak(params, x, quad, search):
    return min(_peaks(params, quad, search), key=lambda p: abs(p.x - x))


def locate_transition(sweep: Sweep, fixed: ModelParams, quad: QuadratureSpec = DEFAULT_QUAD,
                      search: SearchSpec = DEFAULT_SEARCH,
                      resolution: float = 1e-6) -> TransitionPoint:
    """Locate where the superradiant flag flips inside ``sweep``.

    The flag is bisected down to a bracket of width ``JUMP_PROBE``; the
    maximizer difference across that bracket is the jump, and decides the
    order against ``JUMP_TOL``.  A first-order point is then moved to where
    the two competing maxima have equal Omega.
    """
    name = sweep.parameter
    a, b = sweep.start, sweep.stop
    pa = classify_landscape(with_param(fixed, name, a), quad, search)
    pb = classify_landscape(with_param(fixed, name, b), quad, search)
    if pa.superradiant == pb.superradiant:
        raise TransitionError(
            f"superradiant flag is {pa.superradiant} at both ends of {name} in [{a}, {b}]"
        )
    while b - a > min(resolution, JUMP_PROBE):
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        pm = classify_landscape(with_param(fixed, name, m), quad, search)
        if pm.superradiant == pa.superradiant:
            a, pa = m, pm
        else:
            b, pb = m, pm
    jump = abs(pb.global_maximizer - pa.global_maximizer)
    if jump <= JUMP_TOL:
        return TransitionPoint(name, 0.5 * (a + b), "second", jump, (pa.omega_star, pb.omega_star))
    value, branches = _equal_height_point(name, fixed, quad, search, a, b,
                                          pa.global_maximizer, pb.global_maximizer,
                                          pad=max(resolution, b - a))
    return TransitionPoint(name, value, "first", jump, branches)


def _equal_height_point(name, fixed, quad, search, a, b, xa, xb, pad):
    """Bisect Omega(branch b) - Omega(branch a) for a first-order point.

    The argmax flag flips where the difference reaches VALUE_TOL (ties go to
    the smaller x), so the bracket is padded to be sure it holds the root.
    """

    def branch_values(v):
        p = with_param(fixed, name, v)
        peaks = _peaks(p, quad, search)
        ra = min(peaks, key=lambda q: abs(q.x - xa))
        rb = min(peaks, key=lambda q: abs(q.x - xb))
        return ra.omega_value, rb.omega_value

    lo, hi = a - pad, b + pad
    fa, fb = branch_values(lo), branch_values(hi)
    dlo, dhi = fa[1] - fa[0], fb[1] - fb[0]
    if dlo * dhi > 0:
        mid = 0.5 * (a + b)
        return mid, branch_values(mid)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = branch_values(mid)
        dm = fm[1] - fm[0]
        if abs(dm) < 0.1 * VALUE_TOL:
            return mid, fm
        if dm * dlo > 0:
            lo, dlo = mid, dm
        else:
            hi = mid
    mid = 0.5 * (lo + hi)
    return mid, branch_values(mid)


# ---------------------------------------------------------------------------
# hysteresis


def _follow(name, fixed, quad, search, start, end, steps, direction):
    sign = 1.0 if end > start else -1.0
    span = abs(end - start)
    base_step = span / steps
    p0 = with_param(fixed, name, start)
    prof = classify_landscape(p0, quad, search)
    x = prof.global_maximizer
    curv = [_curvature(p0, x, prof, quad)]
    samples = [(float(start), x, prof.omega_star)]
    v, step = start, base_step
    terminus = None
    while sign * (end - v) > 0:
        v_new = v + sign * min(step, abs(end - v))
        params = with_param(fixed, name, v_new)
        peak = _nearest_peak(params, x, quad, search)
        if abs(peak.x - x) <= MATCH_RADIUS:
            v, x = v_new, peak.x
            samples.append((float(v), peak.x, peak.omega_value))
            curv.append(peak.curvature)
            step = min(2.0 * step, base_step)
            continue
        step *= 0.5
        if step < MIN_STEP:
            scale = max(abs(c) for c in curv)
            if abs(curv[-1]) > SPINODAL_FLATNESS * scale:
                raise ContinuationError(
                    f"{direction} branch at x={x:.6g} lost at {name}={v:.9g} "
                    f"with curvature {curv[-1]:.3g} (not a spinodal)"
                )
            terminus = float(v)
            break
    return HysteresisBranch(name, direction, tuple(samples), terminus)


def _curvature(params, x, prof, quad):
    for p in prof.stationary_points:
        if p.x == x:
            return p.curvature
    return float(omega_second(params, x, quad))


def trace_hysteresis(sweep: Sweep, fixed: ModelParams, quad: QuadratureSpec = DEFAULT_QUAD,
                     search: SearchSpec = DEFAULT_SEARCH,
                     steps: int = 200) -> tuple[HysteresisBranch, HysteresisBranch]:
    """Follow the dominant maximum from each end of ``sweep``.

    The forward branch starts at the global maximizer at ``sweep.start``
    and continues the same local maximum upward; the backward branch does
    the same downward from ``sweep.stop``.  Successive maxima are matched by
    proximity in x, halving the step when no maximum lies within
    ``MATCH_RADIUS``.  A branch that is still lost at ``MIN_STEP`` has
    reached its spinodal, recorded as ``terminus`` (None if the branch
    survives the whole sweep).
    """
    name = sweep.parameter
    fwd = _follow(name, fixed, quad, search, sweep.start, sweep.stop, steps, "forward")
    bwd = _follow(name, fixed, quad, search, sweep.stop, sweep.start, steps, "backward")
    return fwd, bwd


def coexistence_window(forward: HysteresisBranch,
                       backward: HysteresisBranch) -> tuple[float, float] | None:
    """Parameter interval on which the two branches differ, or None.

    The forward branch lives on [start, forward.terminus] and the backward
    one on [backward.terminus, stop]; they coexist on the overlap.
    """
    start = forward.samples[0][0]
    stop = backward.samples[0][0]
    lo = backward.terminus if backward.terminus is not None else start
    hi = forward.terminus if forward.terminus is not None else stop
    if forward.terminus is None and backward.terminus is None:
        same_end = abs(forward.samples[-1][1] - backward.samples[0][1]) <= MATCH_RADIUS
        same_start = abs(forward.samples[0][1] - backward.samples[-1][1]) <= MATCH_RADIUS
        if same_end and same_start:
            return None
    if hi <= lo:
        return None
    return lo, hi


def branch_x(branch: HysteresisBranch, values: Sequence[float]) -> np.ndarray:
    """Branch maximizer linearly interpolated at ``values`` (NaN outside)."""
    pts = sorted(branch.samples)
    v = np.array([s[0] for s in pts])
    x = np.array([s[1] for s in pts])
    return np.interp(values, v, x, left=np.nan, right=np.nan)
