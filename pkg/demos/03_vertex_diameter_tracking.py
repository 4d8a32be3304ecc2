# Per-component vertex-diameter bounds through splits and merges.

# %%
from dynbc import DynamicGraph, EdgeEvent, apply_batch, exact_vd, init_tracker, normalize_batch

# two paths of 6 nodes each
g = DynamicGraph(12)
for i in range(5):
    g.add_edge(i, i + 1)
    g.add_edge(6 + i, 7 + i)

tracker, vd = init_tracker(g)
print("components:", tracker.n_components, " bound:", vd, " exact:", exact_vd(g))


def run(events, note):
    batch = normalize_batch(events, g)
    apply_batch(g, batch)
    vd = tracker.update(g, batch)
    print(f"{note:<22} components={tracker.n_components} bound={vd:5.1f} exact={exact_vd(g)}")


# %%
run([EdgeEvent.insert(5, 6)], "join the two paths")
run([EdgeEvent.insert(0, 11)], "close into a cycle")
run([EdgeEvent.delete(2, 3), EdgeEvent.delete(8, 9)], "cut twice")
run([EdgeEvent.delete(0, 11)], "split off a piece")

# %%
# every node is reached by exactly one tracked source
print("vis:", tracker.vis)
