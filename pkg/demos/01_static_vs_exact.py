# Sampled betweenness on a small geometric graph, next to the exact values.

# %%
import numpy as np

from dynbc import BCParams, brandes, init_bc
from dynbc.dynamics import geometric_graph

g = geometric_graph(300, 6, seed=3)
print(g)

# %%
exact = np.array(brandes(g))
for eps in (0.2, 0.1, 0.05):
    state = init_bc(g, BCParams(eps, 0.1, seed=0))
    approx = np.array(state.scores)
    err = np.abs(approx - exact)
    print(f"eps={eps:<5} r={state.r:<5} max err={err.max():.4f} mean err={err.mean():.5f}")

# %%
# the top nodes mostly agree even at a coarse epsilon
state = init_bc(g, BCParams(0.1, 0.1, seed=0))
top_exact = np.argsort(-exact)[:10]
top_approx = np.argsort(-np.array(state.scores))[:10]
print("top-10 overlap:", len(set(top_exact) & set(top_approx)))
