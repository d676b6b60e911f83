"""Free-energy landscape of the qubit-cavity model with transverse coupling.

In the thermodynamic limit the partition function per spin is dominated by
the maximum over the rescaled cavity field ``x = Re(alpha) / sqrt(N)`` of

    Omega(x) = -beta x**2 + I(x),
    I(x)     = (1/2pi) int_0^{2pi} log cosh(beta xi_k(x) / 2) dk,
    xi_k(x)  = 2J sqrt(1 + g**2 + 2 g cos k),
    g(x)     = sqrt((lam x / J)**2 + (eps / (2J))**2).

The additive ``log 2`` of the single-fermion trace is dropped throughout;
oracles that compare against a full trace add it back explicitly.

Every function accepts a scalar or an array of x and returns the same
shape.  Energies are in units of the cavity frequency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._quadrature import initial_breakpoints, k_average
from .errors import DomainError

LOG2 = math.log(2.0)

# |g - 1| below this pre-splits panels toward k = pi.
KINK_WINDOW = 0.05
# Below this g(0) the origin curvature uses its small-g series.
_SMALL_G = 1e-6
# Below this y the ratios tanh(y)/y and friends use their Taylor series.
_SMALL_Y = 1e-3


@dataclass(frozen=True)
class ModelParams:
    """Couplings of the model.

    Attributes
    ----------
    lam : float
        Spin-cavity coupling lambda (>= 0).
    epsilon : float
        Qubit level splitting (>= 0).
    j_coupling : float
        Nearest-neighbour sigma^Y sigma^Y strength (>= 0).  Zero selects
        the closed-form Dicke limit.
    beta : float
        Inverse temperature (> 0).
    """

    lam: float
    epsilon: float
    j_coupling: float
    beta: float

    def __post_init__(self):
        for name in ("lam", "epsilon", "j_coupling", "beta"):
            value = getattr(self, name)
            if not isinstance(value, (int, float, np.floating, np.integer)) or not math.isfinite(value):
                raise ValueError(f"{name} must be a finite real number, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.beta <= 0:
            raise ValueError(f"beta must be > 0, got {self.beta}")
        for name in ("lam", "epsilon", "j_coupling"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0, got {getattr(self, name)}")


@dataclass(frozen=True)
class QuadratureSpec:
    """Controls for the adaptive k-integration.

    ``panels`` uniform Gauss-Legendre panels on [0, pi] are bisected until
    the estimated absolute error of each k-average is below ``abs_tol``.
    """

    panels: int = 16
    abs_tol: float = 1e-10
    max_panels: int = 4096

    def __post_init__(self):
        if int(self.panels) != self.panels or self.panels < 16:
            raise ValueError(f"panels must be an integer >= 16, got {self.panels}")
        if not (self.abs_tol > 0 and math.isfinite(self.abs_tol)):
            raise ValueError(f"abs_tol must be a positive finite number, got {self.abs_tol}")
        if int(self.max_panels) != self.max_panels or self.max_panels < self.panels:
            raise ValueError(f"max_panels must be an integer >= panels, got {self.max_panels}")


DEFAULT_QUAD = QuadratureSpec()


# ---------------------------------------------------------------------------
# overflow-safe scalar kernels


def logcosh(y):
    """log cosh(y) without overflow for large |y|."""
    y = np.abs(y)
    return y + np.log1p(np.exp(-2.0 * y)) - LOG2


def _sech2(y):
    y = np.abs(y)
    e = np.exp(-2.0 * y)
    return 4.0 * e / (1.0 + e) ** 2


def _tanh_ratio(y):
    """tanh(y) / y, equal to 1 at y = 0."""
    y = np.abs(y)
    small = y < _SMALL_Y
    safe = np.where(small, 1.0, y)
    return np.where(small, 1.0 - y * y / 3.0, np.tanh(safe) / safe)


def _curv_ratio(y):
    """(sech^2 y - tanh(y)/y) / y^2, equal to -2/3 at y = 0."""
    y = np.abs(y)
    small = y < _SMALL_Y
    safe = np.where(small, 1.0, y)
    direct = (_sech2(safe) - np.tanh(safe) / safe) / (safe * safe)
    return np.where(small, -2.0 / 3.0 + 8.0 * y * y / 15.0, direct)


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _shape_out(values, scalar):
    return float(values.reshape(())) if scalar else values


def _require_chain(params: ModelParams):
    if params.j_coupling <= 0:
        raise DomainError("j_coupling = 0 has no chain dispersion; use the Dicke-limit functions")


# ---------------------------------------------------------------------------
# closed-form quantities


def effective_field(params: ModelParams, x):
    """Transverse field g(x) of the rotated chain, in units of J."""
    _require_chain(params)
    x, scalar = _as_array(x)
    J = params.j_coupling
    g = np.hypot(params.lam * x / J, params.epsilon / (2.0 * J))
    return _shape_out(g, scalar)


def dispersion(params: ModelParams, x, k):
    """Quasiparticle energy xi_k(x) = 2J sqrt(1 + g^2 + 2 g cos k).

    ``x`` and ``k`` broadcast against each other.
    """
    g = np.asarray(effective_field(params, x))
    xi = _xi_grid(params, g, np.asarray(k, dtype=float))
    return float(xi) if xi.ndim == 0 else xi


def _xi_grid(params: ModelParams, g, k):
    """xi_k for broadcastable g and k.

    1 + g^2 + 2g cos k is summed as (1 - g)^2 + 4g cos^2(k/2), which has no
    cancellation where the gap closes (g -> 1, k -> pi).
    """
    return 2.0 * params.j_coupling * np.sqrt((1.0 - g) ** 2 + 4.0 * g * np.cos(0.5 * k) ** 2)


def _g_plus_cos(g, k):
    """g + cos k, accurate near g = 1, k = pi."""
    return (g - 1.0) + 2.0 * np.cos(0.5 * k) ** 2


def _breakpoints(g, quad: QuadratureSpec):
    near = bool(np.any(np.abs(np.asarray(g) - 1.0) < KINK_WINDOW))
    return initial_breakpoints(quad.panels, near)


# ---------------------------------------------------------------------------
# Dicke limit (J = 0)


def _dicke_field(params: ModelParams, x):
    return np.hypot(params.lam * x, 0.5 * params.epsilon)


def dicke_limit_omega(params: ModelParams, x):
    """Omega(x) at J = 0: -beta x^2 + log cosh(beta sqrt((lam x)^2 + eps^2/4))."""
    x, scalar = _as_array(x)
    h = _dicke_field(params, x)
    return _shape_out(-params.beta * x * x + logcosh(params.beta * h), scalar)


def _dicke_prime(params: ModelParams, x):
    b = params.beta
    h = _dicke_field(params, x)
    # d/dx log cosh(b h) = b tanh(b h) * lam^2 x / h
    return -2.0 * b * x + b * b * _tanh_ratio(b * h) * params.lam ** 2 * x


def _dicke_second(params: ModelParams, x):
    b = params.beta
    h = _dicke_field(params, x)
    lam2 = params.lam ** 2
    y = b * h
    hp2 = (lam2 * x) ** 2  # (h h')^2
    return (-2.0 * b + b * b * _tanh_ratio(y) * lam2
            + b ** 4 * _curv_ratio(y) * hp2)


# ---------------------------------------------------------------------------
# k-integrals


def free_energy_integral(params: ModelParams, x, quad: QuadratureSpec = DEFAULT_QUAD):
    """I(x): k-average of log cosh(beta xi_k / 2), without the log 2.

    At ``j_coupling == 0`` the closed-form limit log cosh(beta h) is
    returned.
    """
    x, scalar = _as_array(x)
    if params.j_coupling == 0:
        return _shape_out(logcosh(params.beta * _dicke_field(params, x)), scalar)
    g = np.asarray(effective_field(params, x)).reshape(-1, 1)
    half_beta = 0.5 * params.beta

    def integrand(k):
        return logcosh(half_beta * _xi_grid(params, g, k))

    values = k_average(integrand, _breakpoints(g, quad), quad.abs_tol, quad.max_panels)
    return _shape_out(values.reshape(x.shape), scalar)


def omega(params: ModelParams, x, quad: QuadratureSpec = DEFAULT_QUAD):
    """Omega(x) = -beta x^2 + I(x).  Even in x; all x share one k-grid."""
    x, scalar = _as_array(x)
    if params.j_coupling == 0:
        return dicke_limit_omega(params, x if not scalar else float(x))
    values = -params.beta * x * x + free_energy_integral(params, x, quad)
    return _shape_out(np.asarray(values), scalar)


def _slope_terms(params: ModelParams, x):
    """Per-x constants of d(xi^2)/dx and d^2(xi^2)/dx^2.

    With a = (lam/J)^2 and c = cos k,
        S'  = 8 J^2 a x (1 + c/g),
        S'' = 8 J^2 a (1 + c/g - a x^2 c / g^3).
    """
    J = params.j_coupling
    a = (params.lam / J) ** 2
    g = np.asarray(effective_field(params, x)).reshape(-1, 1)
    xc = x.reshape(-1, 1)
    pref = 8.0 * J * J * a
    return a, g, xc, pref


def omega_prime(params: ModelParams, x, quad: QuadratureSpec = DEFAULT_QUAD):
    """dOmega/dx by differentiation under the k-integral.

    Exactly zero at x = 0 and whenever lam = 0.
    """
    x, scalar = _as_array(x)
    if params.j_coupling == 0:
        out = _dicke_prime(params, x)
        out = np.where(x == 0, 0.0, out)
        return _shape_out(out, scalar)
    b = params.beta
    out = -2.0 * b * x
    flat = x.reshape(-1)
    active = (flat != 0) & (params.lam > 0)
    if np.any(active):
        xa = flat[active]
        a, g, xc, pref = _slope_terms(params, xa)
        sprime_base = pref * xc  # S' = sprime_base * (1 + c/g)

        def integrand(k):
            y = 0.5 * b * _xi_grid(params, g, k)
            # L'(xi) xi' = (beta/2) tanh(y)/xi * S'/2, tanh(y)/xi = (beta/2) tanh(y)/y
            return 0.125 * b * b * _tanh_ratio(y) * sprime_base * _g_plus_cos(g, k) / g

        integral = k_average(integrand, _breakpoints(g, quad), quad.abs_tol, quad.max_panels)
        flat_out = out.reshape(-1).copy()
        flat_out[active] += integral
        out = flat_out.reshape(x.shape)
    return _shape_out(np.asarray(out, dtype=float), scalar)


def omega_second(params: ModelParams, x, quad: QuadratureSpec = DEFAULT_QUAD):
    """d^2 Omega / dx^2 by differentiation under the k-integral.

    Written so that no term is singular where xi_k vanishes:
        d^2/dx^2 log cosh(beta xi/2)
            = beta^4 q(y) S'^2 / 64 + (beta^2/8) (tanh y / y) S''
    with y = beta xi / 2 and q(y) = (sech^2 y - tanh(y)/y) / y^2.
    """
    x, scalar = _as_array(x)
    if params.j_coupling == 0:
        return _shape_out(_dicke_second(params, x), scalar)
    flat = x.reshape(-1)
    g0 = params.epsilon / (2.0 * params.j_coupling)
    series = (flat == 0) & (g0 < _SMALL_G)
    out = np.empty(flat.shape)
    if np.any(series):
        out[series] = _origin_curvature_small_g(params)
    rest = ~series
    if np.any(rest):
        out[rest] = _omega_second_quad(params, flat[rest], quad)
    return _shape_out(out.reshape(x.shape), scalar)


def _omega_second_quad(params: ModelParams, x, quad: QuadratureSpec):
    b = params.beta
    if params.lam == 0:
        return np.full(x.shape, -2.0 * b)
    a, g, xc, pref = _slope_terms(params, x)

    def integrand(k):
        c = np.cos(k)
        y = 0.5 * b * _xi_grid(params, g, k)
        one_plus = _g_plus_cos(g, k) / g  # 1 + c/g
        s1 = pref * xc * one_plus
        s2 = pref * (one_plus - a * xc * xc * c / g ** 3)
        return b ** 4 * _curv_ratio(y) * s1 * s1 / 64.0 + 0.125 * b * b * _tanh_ratio(y) * s2

    integral = k_average(integrand, _breakpoints(g, quad), quad.abs_tol, quad.max_panels)
    return -2.0 * b + integral


def _origin_curvature_small_g(params: ModelParams):
    """Omega''(0) in the limit g(0) -> 0.

    I depends on x only through s = g^2 = (lam x / J)^2 + g0^2, and
    dI/ds at s = 0 equals J L'(2J)/2 + J^2 L''(2J) with L = log cosh(beta xi/2).
    """
    b, J = params.beta, params.j_coupling
    y = b * J
    dI_ds = 0.25 * J * b * np.tanh(y) + 0.25 * (J * b) ** 2 * _sech2(y)
    return float(-2.0 * b + 2.0 * (params.lam / J) ** 2 * dI_ds)


def curvature_at_origin(params: ModelParams, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Omega''(0); negative means the normal phase is locally stable."""
    return float(omega_second(params, 0.0, quad))
