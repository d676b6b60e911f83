"""
Independent checks
==================

The k-integral behind Omega is compared with a discrete k sum, with exact
diagonalization of the spin chain, and the full qubit-cavity model is
diagonalized for a handful of spins.
"""

# %%
import math

from superradiant import (
    CavitySpec,
    ChainSpec,
    ModelParams,
    cavity_ed,
    discrete_k_free_energy,
    free_energy_integral,
    spin_chain_ed,
)

p = ModelParams(lam=1.3, epsilon=1.0, j_coupling=0.5, beta=1.0)
x = 0.4
target = free_energy_integral(p, x) + math.log(2.0)

# %% discrete k sums converge to the integral
for n in (16, 64, 256, 2 ** 16):
    print(f"k sum N={n:6d}: error {abs(discrete_k_free_energy(p, x, n) - target):.2e}")

# %% exact diagonalization of the periodic chain
for n in (6, 8, 10, 12):
    print(f"chain ED N={n:2d}: error {abs(spin_chain_ed(p, ChainSpec(n, x)) - target):.2e}")

# %% photons per spin in the finite cavity model grow with the coupling
for lam in (0.3, 0.8, 1.3):
    obs = cavity_ed(ModelParams(lam, 0.5, 0.3, 100.0), CavitySpec(4, 30))
    print(f"cavity N=4 lambda={lam}: photons per spin {obs.photons_per_spin:.4f}")
