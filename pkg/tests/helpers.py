import math
import random

from dynbc.graph import DynamicGraph, EdgeEvent
from dynbc.oracle import distances

# criterion number -> (passed, detail); printed at the end of the session
ACCEPTANCE = {}


def record(num, ok, detail):
    ACCEPTANCE[num] = (bool(ok), detail)
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}")
    return ok


def random_graph(rng: random.Random, n, p, weighted=False, real_weights=False):
    g = DynamicGraph(n, weighted=weighted)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                g.add_edge(u, v, draw_weight(rng, weighted, real_weights))
    return g


def draw_weight(rng, weighted, real_weights):
    if not weighted:
        return 1.0
    if real_weights:
        return rng.uniform(0.1, 10.0)
    # small integers make ties (sigma > 1) common
    return float(rng.randint(1, 4))


def random_events(rng, g, k, weighted=None, real_weights=False):
    """k random events: deletes or weight changes on present edges, inserts on absent ones."""
    weighted = g.weighted if weighted is None else weighted
    events = []
    for _ in range(k):
        u, v = rng.sample(range(g.n), 2)
        if g.has_edge(u, v):
            if weighted and rng.random() < 0.5:
                events.append(EdgeEvent.set_weight(u, v, draw_weight(rng, True, real_weights)))
            else:
                events.append(EdgeEvent.delete(u, v))
        else:
            events.append(EdgeEvent.insert(u, v, draw_weight(rng, weighted, real_weights)))
    return events


def path_problems(graph, path, cache=None):
    """Reasons the stored sample is not a shortest source-target path (empty if it is one)."""
    s, t = path.source, path.target
    if cache is None:
        cache = {}
    dist = cache.get(s)
    if dist is None:
        dist = cache[s] = distances(graph, s)
    if s == t or dist[t] == math.inf:
        return [] if not path.interior else [f"path stored for unreachable pair {s}->{t}"]
    nodes = [s] + path.interior[::-1] + [t]
    if len(set(nodes)) != len(nodes):
        return [f"repeated node in {nodes}"]
    acc = 0.0
    for a, b in zip(nodes, nodes[1:]):
        w = graph.weight(a, b)
        if w is None:
            return [f"{a}-{b} not an edge"]
        acc = acc + w
    if acc != dist[t]:
        return [f"path weight {acc} != distance {dist[t]}"]
    return []


def reach_counts(graph, states, cache=None):
    n = graph.n
    counts = [0] * n
    if cache is None:
        cache = {}
    for st in states:
        dist = cache.get(st.source)
        if dist is None:
            dist = cache[st.source] = distances(graph, st.source)
        for v in range(n):
            if dist[v] != math.inf:
                counts[v] += 1
    return counts
