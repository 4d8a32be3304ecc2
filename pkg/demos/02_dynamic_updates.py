# Keep the approximation current while random edges come and go.

# %%
import random
import time

import numpy as np

from dynbc import BCParams, apply_batch, brandes, init_bc, normalize_batch, static_rk
from dynbc.dynamics import gen_random_dynamics, geometric_graph

g = geometric_graph(1500, 8, seed=1)
base, batches = gen_random_dynamics(g, 200, 4, random.Random(1), n_batches=15)

params = BCParams(0.1, 0.1, seed=7)
state = init_bc(base, params)
print("initial r:", state.r, " vertex-diameter bound:", round(state.vd, 2))

# %%
# each batch is normalized against the live graph, applied, then absorbed
for i, raw in enumerate(batches, 1):
    batch = normalize_batch(raw.events, base)
    apply_batch(base, batch)
    t0 = time.perf_counter()
    state.update(base, batch)
    t_dyn = time.perf_counter() - t0
    t0 = time.perf_counter()
    static_rk(base, params)
    t_stat = time.perf_counter() - t0
    if i % 5 == 0:
        err = np.abs(np.array(state.scores) - np.array(brandes(base))).max()
        print(f"batch {i:2d}: update {t_dyn*1e3:6.1f} ms, recompute {t_stat*1e3:7.1f} ms, max err {err:.4f}")

# %%
# r only ever grows, and only when some sample's bound exceeds the largest seen so far
print("r now:", state.r, " largest bound seen:", round(state.vd_max, 2))
