"""
The free-energy landscape Omega(x)
==================================

Omega(x) = -beta x^2 + I(x) decides the phase: the system sits at its global
maximum.  With lambda = 1.3, beta = 100 and J = 0.5 the landscape changes
shape as the qubit splitting eps grows.
"""

# %%
import numpy as np

from superradiant import ModelParams, classify_landscape, omega
from _plotting import plt, save

x = np.linspace(-1.0, 1.0, 801)
eps_values = (0.4, 0.8, 1.2, 1.6)

# %% Omega relative to its value at the origin, one curve per eps
curves = {}
for eps in eps_values:
    p = ModelParams(lam=1.3, epsilon=eps, j_coupling=0.5, beta=100.0)
    curves[eps] = omega(p, x) - omega(p, 0.0)
    prof = classify_landscape(p)
    print(f"eps={eps:.1f}: {prof.maxima_count} maxima, x*={prof.global_maximizer:.4f}, "
          f"superradiant={prof.superradiant}")

# %% Small eps gives three maxima (the origin plus a symmetric pair); large
# eps leaves the origin alone.
if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 4))
    for eps, w in curves.items():
        ax.plot(x, w, label=f"eps = {eps}")
    ax.set_xlabel("x")
    ax.set_ylabel("Omega(x) - Omega(0)")
    ax.legend()
    save(fig, "01_omega_landscape.png")
