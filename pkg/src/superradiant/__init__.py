"""Superradiant transitions of qubits with transverse nearest-neighbour coupling in a cavity."""

__version__ = "0.1.0"

from .core_model import (
    ModelParams,
    QuadratureSpec,
    curvature_at_origin,
    dicke_limit_omega,
    dispersion,
    effective_field,
    free_energy_integral,
    omega,
    omega_prime,
    omega_second,
)
from .landscape import (
    LandscapeProfile,
    SearchSpec,
    StationaryPoint,
    classify_landscape,
    find_stationary_points,
    global_maximizer,
)
from .phase_scan import (
    Axis,
    HysteresisBranch,
    PhaseGrid,
    Sweep,
    TransitionPoint,
    coexistence_window,
    grid_transitions,
    locate_transition,
    scan_grid,
    trace_hysteresis,
)
from .oracle import (
    CavitySpec,
    ChainSpec,
    cavity_ed,
    dicke_critical_coupling,
    discrete_k_free_energy,
    spin_chain_ed,
)
