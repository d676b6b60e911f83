"""
Regime map in the (eps, lambda) plane
=====================================

Each cell of the grid is classified by the number of local maxima of Omega
on the full line and by whether the global maximum sits away from x = 0.
"""

# %%
import numpy as np

from superradiant import Axis, ModelParams, scan_grid
from _plotting import plt, save

fixed = ModelParams(lam=1.3, epsilon=1.0, j_coupling=0.5, beta=100.0)
eps_axis = Axis.linspace("epsilon", 0.2, 2.0, 19)
lam_axis = Axis.linspace("lambda", 0.5, 1.5, 21)
grid = scan_grid(eps_axis, lam_axis, fixed)

# %% maxima counts: rows are eps, columns lambda
counts = np.array([[c.maxima_count for c in row] for row in grid.cells])
flags = np.array([[c.superradiant for c in row] for row in grid.cells])
for eps, row, frow in zip(eps_axis.values, counts, flags):
    print(f"eps={eps:4.2f}  " + "".join(str(c) if f else "." for c, f in zip(row, frow)))

# %%
if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 4))
    mesh = ax.pcolormesh(lam_axis.values, eps_axis.values, counts, shading="nearest")
    ax.contour(lam_axis.values, eps_axis.values, flags.astype(float), levels=[0.5], colors="w")
    fig.colorbar(mesh, label="number of maxima")
    ax.set_xlabel("lambda")
    ax.set_ylabel("eps")
    save(fig, "02_regime_map.png")
