"""
First-order transition and hysteresis
=====================================

At J = 0.56 the two maxima of Omega trade places, so x* jumps.  Following
each maximum from the ends of a sweep shows the metastable branches and the
coexistence window between their spinodals.
"""

# %%
import numpy as np

from superradiant import ModelParams, Sweep, coexistence_window, locate_transition, trace_hysteresis
from _plotting import plt, save

fixed = ModelParams(lam=1.3, epsilon=1.0, j_coupling=0.56, beta=100.0)

# %% locate the transitions at J = 0.56 and J = 0.50
t_first = locate_transition(Sweep("epsilon", 0.2, 1.3), fixed)
t_second = locate_transition(Sweep("epsilon", 0.2, 2.0), ModelParams(1.3, 1.0, 0.5, 100.0))
print(f"J=0.56: {t_first.order} order at eps={t_first.value:.10f}, jump {t_first.jump:.4f}")
print(f"J=0.50: {t_second.order} order at eps={t_second.value:.10f}, jump {t_second.jump:.2e}")

# %% sweep lambda through the first-order point; both branches end at spinodals
at_point = ModelParams(1.3, t_first.value, 0.56, 100.0)
fwd, bwd = trace_hysteresis(Sweep("lambda", 1.2, 1.4), at_point)
print("coexistence window in lambda:", coexistence_window(fwd, bwd))

# %%
if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 4))
    for branch, style in ((fwd, "-"), (bwd, "--")):
        v, xb = np.array([(s[0], s[1]) for s in branch.samples]).T
        ax.plot(v, xb, style, label=branch.direction)
    ax.axvline(1.3, color="k", lw=0.5)
    ax.set_xlabel("lambda")
    ax.set_ylabel("x on branch")
    ax.legend()
    save(fig, "04_hysteresis.png")
