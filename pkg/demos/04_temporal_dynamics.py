# Replay the newest edges of a timestamped edge list.

# %%
import io
import random

from dynbc import BCParams, apply_batch, init_bc, normalize_batch, scores
from dynbc.dynamics import gen_real_dynamics
from dynbc.graph import read_edge_records

# a synthetic contact log: u v weight timestamp, with repeated contacts
rng = random.Random(4)
lines = []
for t in range(3000):
    u = rng.randrange(120)
    v = (u + rng.choice([1, 2, 3, rng.randrange(120)])) % 120
    lines.append(f"{u} {v} 1 {t}")
records = read_edge_records(io.StringIO("\n".join(lines)))

# %%
# repeated contacts collapse to weight 1/k, so frequent pairs are "closer"
base, batches = gen_real_dynamics(records, 400, 50, mode="collapse-multi")
print(base, "batches:", len(batches))
state = init_bc(base, BCParams(0.1, 0.1, seed=0))

for batch_raw in batches:
    batch = normalize_batch(batch_raw.events, base)
    apply_batch(base, batch)
    state.update(base, batch)

# %%
top = sorted(scores(state, base), key=lambda p: -p[1])[:5]
for node, s in top:
    print(f"node {node:4d}  {s:.4f}")
