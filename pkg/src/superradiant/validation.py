"""Named cross-checks of the landscape code against the oracles."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core_model import (
    DEFAULT_QUAD,
    ModelParams,
    curvature_at_origin,
    dicke_limit_omega,
    dispersion,
    effective_field,
    free_energy_integral,
    omega,
    omega_prime,
)
from .oracle import (
    CavitySpec,
    ChainSpec,
    cavity_ed,
    dicke_critical_coupling,
    discrete_k_free_energy,
    spin_chain_ed,
)
from .phase_scan import Sweep, locate_transition


@dataclass(frozen=True)
class Check:
    name: str
    computed: float
    expected: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return abs(self.computed - self.expected) <= self.tolerance


# fixed points inside the working window: (lam, eps, J, beta, x)
_WINDOW_POINTS = (
    (1.3, 1.0, 0.5, 100.0, 0.4),
    (0.7, 0.3, 0.15, 10.0, 0.9),
    (1.5, 1.12, 0.56, 100.0, 0.0),
    (1.0, 2.0, 0.6, 1.0, 0.25),
    (0.5, 0.2, 0.1, 100.0, 0.1),
)


def run_validation() -> list[Check]:
    quad = DEFAULT_QUAD
    checks = []
    log2 = math.log(2.0)

    for i, (lam, eps, J, beta, x) in enumerate(_WINDOW_POINTS):
        p = ModelParams(lam, eps, J, beta)
        checks.append(Check(f"quadrature_vs_dense_k[{i}]",
                            free_energy_integral(p, x, quad) + log2,
                            discrete_k_free_energy(p, x, 2 ** 16), 1e-8))

    h = 1e-5
    for i, (lam, eps, J, beta, x) in enumerate(_WINDOW_POINTS):
        p = ModelParams(lam, eps, J, beta)
        xg = x + 0.3
        lo, hi = omega(p, np.array([xg - h, xg + h]), quad)
        fd = (hi - lo) / (2 * h)
        analytic = omega_prime(p, xg, quad)
        checks.append(Check(f"gradient_vs_central_difference[{i}]", analytic, fd,
                            1e-6 * max(1.0, abs(analytic))))

    p = ModelParams(1.3, 1.0, 0.5, 100.0)
    hc = 1e-4
    w = omega(p, np.array([-hc, 0.0, hc]), quad)
    fd2 = (w[0] - 2 * w[1] + w[2]) / hc ** 2
    c0 = curvature_at_origin(p, quad)
    checks.append(Check("origin_curvature_vs_second_difference", c0, fd2, 1e-4 * abs(fd2)))

    xs = np.linspace(0.05, 3.0, 25)
    w = omega(p, np.concatenate([xs, -xs]), quad)
    checks.append(Check("omega_evenness", float(np.max(np.abs(w[:25] - w[25:]))), 0.0, 1e-12))

    k = np.linspace(0.0, 2 * np.pi, 1001)
    worst = 0.0
    for lam, eps, J, beta, x in _WINDOW_POINTS:
        q = ModelParams(lam, eps, J, beta)
        g = effective_field(q, x)
        xi = dispersion(q, x, k)
        lo_b, hi_b = 2 * J * abs(1 - g), 2 * J * (1 + g)
        worst = max(worst, float(np.max(np.maximum(lo_b - xi, xi - hi_b))), 0.0)
    checks.append(Check("dispersion_bounds_violation", worst, 0.0, 1e-12))

    q = ModelParams(1.3, 1.0, 1e-6, 100.0)
    checks.append(Check("dicke_limit_consistency",
                        free_energy_integral(q, 0.3, quad),
                        dicke_limit_omega(q, 0.3) + q.beta * 0.09, 1e-4))

    t = locate_transition(Sweep("lambda", 0.5, 1.5), ModelParams(1.0, 1.0, 1e-6, 100.0), quad)
    checks.append(Check("dicke_critical_coupling", t.value, dicke_critical_coupling(1.0, 100.0), 1e-3))
    checks.append(Check("dicke_transition_jump", t.jump, 0.0, 1e-3))

    q = ModelParams(0.0, 0.0, 0.7, 2.0)
    checks.append(Check("chain_ed_two_site_spectrum", spin_chain_ed(q, ChainSpec(2)),
                        0.5 * math.log(4 * math.cosh(2 * q.beta * q.j_coupling)), 1e-12))
    q = ModelParams(1.3, 1.0, 0.5, 1.0)
    checks.append(Check("chain_ed_vs_integral[N=10]", spin_chain_ed(q, ChainSpec(10, 0.4)),
                        free_energy_integral(q, 0.4, quad) + log2, 0.02))

    q = ModelParams(0.0, 0.0, 0.4, 1.5)
    checks.append(Check("discrete_k_flat_band", discrete_k_free_energy(q, 0.3, 7),
                        math.log(2 * math.cosh(q.beta * q.j_coupling)), 1e-12))

    q = ModelParams(0.0, 0.5, 0.3, 1.0)
    obs = cavity_ed(q, CavitySpec(2, 40))
    checks.append(Check("cavity_free_mode_photons", obs.photons_per_spin * 2,
                        1.0 / math.expm1(q.beta), 1e-9))
    return checks
