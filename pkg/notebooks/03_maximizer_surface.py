"""
The maximizer surface x*(J, eps)
================================

At lambda = 1.3 and beta = 100 the order parameter x* either shrinks
smoothly into the origin (a continuous transition) or drops off a cliff (a
discontinuous one), depending on J.  The same grid is available from the
command line as ``superradiant maximizer-sweep``.
"""

# %%
import os

from superradiant import Axis, ModelParams, grid_transitions, scan_grid
from _plotting import plt, save

n = int(os.environ.get("SURFACE_POINTS", "30"))
fixed = ModelParams(lam=1.3, epsilon=1.0, j_coupling=0.5, beta=100.0)
grid = scan_grid(Axis.linspace("J", 0.1, 0.6, n), Axis.linspace("epsilon", 0.2, 2.0, n), fixed,
                 workers=int(os.environ.get("SUPERRADIANT_THREADS", "1")))
surface = grid.maximizer_surface()

# %% phase boundaries between neighbouring eps cells
edges = grid_transitions(grid)
for i, j, kind in edges:
    J = grid.axis1.values[i]
    e0, e1 = grid.axis2.values[j], grid.axis2.values[j + 1]
    print(f"J={J:.3f}  eps in [{e0:.3f}, {e1:.3f}]  {kind:8s} "
          f"x*: {surface[i, j]:.3f} -> {surface[i, j + 1]:.3f}")

# %%
if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 4))
    mesh = ax.pcolormesh(grid.axis2.values, grid.axis1.values, surface, shading="nearest")
    fig.colorbar(mesh, label="x*")
    ax.set_xlabel("eps")
    ax.set_ylabel("J")
    save(fig, "03_maximizer_surface.png")
