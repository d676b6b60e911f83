"""Brute-force references for the landscape formulas.

* ``discrete_k_free_energy`` - the finite-N product over the allowed
  momenta, before the k-sum becomes an integral.
* ``spin_chain_ed`` - full spectrum of the rotated spin chain at fixed
  cavity field.
* ``cavity_ed`` - full qubit + cavity model in a truncated Fock space.
* ``dicke_critical_coupling`` - closed-form J = 0 critical coupling.

These never call into the quadrature code; they are meant to be compared
against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sparse
import scipy.sparse.linalg
from scipy.special import logsumexp

from .core_model import ModelParams
from .errors import ResourceError, TruncationError

MAX_CHAIN_SPINS = 14
MAX_CAVITY_SPINS = 8
MIN_FOCK_CUTOFF = 10
# Above this dimension cavity_ed switches to a Lanczos low-energy window.
DENSE_CAVITY_DIM = 3000
TRUNCATION_TOL = 1e-6


def _log2cosh(y):
    y = np.abs(y)
    return y + np.log1p(np.exp(-2.0 * y))


def discrete_k_free_energy(params: ModelParams, x: float, n_spins: int) -> float:
    """(1/N) sum_m log[2 cosh(beta xi_{k_m} / 2)] with k_m = 2 pi m / N.

    Includes the log 2 that the landscape functions omit.
    """
    if n_spins < 2:
        raise ValueError("n_spins must be >= 2")
    J = params.j_coupling
    if J <= 0:
        raise ValueError("discrete_k_free_energy needs j_coupling > 0")
    g = math.hypot(params.lam * x / J, params.epsilon / (2 * J))
    k = 2.0 * np.pi * np.arange(n_spins) / n_spins
    xi = 2.0 * J * np.sqrt(1.0 + g * g + 2.0 * g * np.cos(k))
    return float(np.mean(_log2cosh(0.5 * params.beta * xi)))


# ---------------------------------------------------------------------------
# spin chain


@dataclass(frozen=True)
class ChainSpec:
    """Periodic chain of ``n_spins`` qubits in the cavity field ``x``.

    The field enters as ``lam * x`` on each sigma^X, i.e. x is the rescaled
    coherent amplitude Re(alpha)/sqrt(N).  Site N+1 is site 1, so for N = 2
    the single physical bond is counted twice.
    """

    n_spins: int
    x: float = 0.0
    boundary: str = "periodic"

    def __post_init__(self):
        if self.boundary != "periodic":
            raise ValueError("only periodic boundaries are supported")
        if not 2 <= self.n_spins:
            raise ValueError("n_spins must be >= 2")
        if self.n_spins > MAX_CHAIN_SPINS:
            raise ResourceError(f"n_spins={self.n_spins} exceeds the dense-ED cap {MAX_CHAIN_SPINS}")


def _chain_terms(n: int):
    """Sparse sum_j sigma^X_j, sum_j sigma^Z_j and sum_j sigma^Y_j sigma^Y_{j+1}.

    Basis state bit j = 0 is spin up (sigma^Z = +1).  sigma^Y|0> = i|1> and
    sigma^Y|1> = -i|0>, so sigma^Y sigma^Y flips both bits with the real
    amplitude -s_j s_{j+1}, s = +-1 the sigma^Z eigenvalues.
    """
    dim = 1 << n
    states = np.arange(dim)
    bits = (states[:, None] >> np.arange(n)) & 1
    spins = 1 - 2 * bits  # sigma^Z eigenvalues
    sz = sparse.diags(spins.sum(axis=1).astype(float), format="csr")

    rows, cols = [], []
    for j in range(n):
        rows.append(states)
        cols.append(states ^ (1 << j))
    sx = sparse.csr_matrix((np.ones(n * dim), (np.concatenate(rows), np.concatenate(cols))),
                           shape=(dim, dim))

    rows, cols, vals = [], [], []
    for j in range(n):
        jp = (j + 1) % n
        rows.append(states)
        cols.append(states ^ (1 << j) ^ (1 << jp))
        vals.append(-(spins[:, j] * spins[:, jp]).astype(float))
    syy = sparse.csr_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                            shape=(dim, dim))
    return sx, sz, syy


def chain_hamiltonian(params: ModelParams, chain: ChainSpec) -> np.ndarray:
    """Dense H' = sum_j [lam x sigma^X_j + (eps/2) sigma^Z_j - J sigma^Y_j sigma^Y_{j+1}]."""
    sx, sz, syy = _chain_terms(chain.n_spins)
    h = params.lam * chain.x * sx + 0.5 * params.epsilon * sz - params.j_coupling * syy
    return h.toarray()


def spin_chain_ed(params: ModelParams, chain: ChainSpec) -> float:
    """(1/N) log Tr exp(-beta H') from the full spectrum of the chain."""
    energies = scipy.linalg.eigvalsh(chain_hamiltonian(params, chain))
    return float(logsumexp(-params.beta * energies) / chain.n_spins)


# ---------------------------------------------------------------------------
# qubits + cavity


@dataclass(frozen=True)
class CavitySpec:
    """Finite qubit-cavity system; the Fock space is cut at ``fock_cutoff`` photons."""

    n_spins: int
    fock_cutoff: int = 20
    check_truncation: bool = True

    def __post_init__(self):
        if not 2 <= self.n_spins <= MAX_CAVITY_SPINS:
            raise ValueError(f"n_spins must be in [2, {MAX_CAVITY_SPINS}]")
        if self.fock_cutoff < MIN_FOCK_CUTOFF:
            raise ValueError(f"fock_cutoff must be >= {MIN_FOCK_CUTOFF}")


@dataclass(frozen=True)
class CavityObservables:
    photons_per_spin: float
    ground_energy_per_spin: float
    # <a + a^dagger> in the ground state; zero by parity when it is nondegenerate
    ground_field: float
    fock_cutoff: int


def cavity_hamiltonian(params: ModelParams, n_spins: int, fock_cutoff: int):
    """Sparse H = a^dag a + sum_j [lam/(2 sqrt N)(a + a^dag) sigma^X_j
    + (eps/2) sigma^Z_j - J sigma^Y_j sigma^Y_{j+1}], photon index outermost."""
    n_ph = fock_cutoff + 1
    a = sparse.diags(np.sqrt(np.arange(1, n_ph, dtype=float)), 1, format="csr")
    num = sparse.diags(np.arange(n_ph, dtype=float), format="csr")
    sx, sz, syy = _chain_terms(n_spins)
    eye_s = sparse.identity(1 << n_spins, format="csr")
    eye_c = sparse.identity(n_ph, format="csr")
    coupling = params.lam / (2.0 * math.sqrt(n_spins))
    h = (sparse.kron(num, eye_s)
         + coupling * sparse.kron(a + a.T, sx)
         + sparse.kron(eye_c, 0.5 * params.epsilon * sz - params.j_coupling * syy))
    return h.tocsr(), sparse.kron(num, eye_s).tocsr(), sparse.kron(a + a.T, eye_s).tocsr()


def _low_spectrum(h, beta):
    dim = h.shape[0]
    if dim <= DENSE_CAVITY_DIM:
        return scipy.linalg.eigh(h.toarray())
    n_eig = min(80, dim - 2)
    vals, vecs = scipy.sparse.linalg.eigsh(h, k=n_eig, which="SA")
    order = np.argsort(vals)
    vals, vecs = vals[order], vecs[:, order]
    if beta * (vals[-1] - vals[0]) < 35.0:
        raise ResourceError(
            f"dimension {dim} needs more than {n_eig} states for the thermal trace at beta={beta}"
        )
    return vals, vecs


def _cavity_observables(params, n_spins, fock_cutoff):
    h, num, field = cavity_hamiltonian(params, n_spins, fock_cutoff)
    vals, vecs = _low_spectrum(h, params.beta)
    weights = np.exp(-params.beta * (vals - vals[0]))
    weights /= weights.sum()
    n_diag = np.einsum("ij,ij->j", vecs, num @ vecs)
    ground = vecs[:, 0]
    return CavityObservables(
        photons_per_spin=float(weights @ n_diag) / n_spins,
        ground_energy_per_spin=float(vals[0]) / n_spins,
        ground_field=float(ground @ (field @ ground)),
        fock_cutoff=fock_cutoff,
    )


def cavity_ed(params: ModelParams, spec: CavitySpec) -> CavityObservables:
    """Thermal photon number per spin and ground energy per spin.

    With ``spec.check_truncation`` the calculation is repeated with a 25 %
    larger cutoff and :class:`TruncationError` is raised if either
    observable moves by more than ``TRUNCATION_TOL``.
    """
    obs = _cavity_observables(params, spec.n_spins, spec.fock_cutoff)
    if spec.check_truncation:
        bigger = _cavity_observables(params, spec.n_spins, math.ceil(1.25 * spec.fock_cutoff))
        change = max(abs(obs.photons_per_spin - bigger.photons_per_spin),
                     abs(obs.ground_energy_per_spin - bigger.ground_energy_per_spin))
        if change > TRUNCATION_TOL:
            raise TruncationError(
                f"observables change by {change:.3g} when fock_cutoff goes "
                f"{spec.fock_cutoff} -> {bigger.fock_cutoff}"
            )
    return obs


def dicke_critical_coupling(epsilon: float, beta: float) -> float:
    """lambda_c = sqrt(eps / tanh(beta eps / 2)) for the J = 0 model."""
    if epsilon <= 0 or beta <= 0:
        raise ValueError("epsilon and beta must be > 0")
    return math.sqrt(epsilon / math.tanh(0.5 * beta * epsilon))
