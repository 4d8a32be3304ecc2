"""Ground truth for tests and benchmarks: exact betweenness, exact vertex diameter, static RK.

``brandes``, ``exact_vd`` and ``sssp_counts`` are deliberately simple and
share no code with the dynamic path except the graph container.
``static_rk`` is the recompute-from-scratch baseline and reuses the
sampling primitives, so with the same seed it reproduces ``init_bc``.
"""

from __future__ import annotations

import heapq
import math
import random

INF = math.inf


def _search(graph, s):
    """Dijkstra from ``s`` with explicit predecessor lists; returns (order, dist, sigma, preds)."""
    n = graph.n
    dist = [INF] * n
    sigma = [0] * n
    preds: list[list[int]] = [[] for _ in range(n)]
    dist[s] = 0.0
    sigma[s] = 1
    order = []
    seen = [False] * n
    heap = [(0.0, s)]
    while heap:
        dv, v = heapq.heappop(heap)
        if seen[v]:
            continue
        seen[v] = True
        order.append(v)
        for z, w in graph.adj[v].items():
            c = dv + w
            if c < dist[z]:
                dist[z] = c
                heapq.heappush(heap, (c, z))
    # counts from the final distances, in settle order
    for v in order[1:]:
        for z, w in graph.adj[v].items():
            if dist[z] + w == dist[v]:
                preds[v].append(z)
                sigma[v] += sigma[z]
    return order, dist, sigma, preds


def sssp_counts(graph, s) -> tuple[list[float], list[int]]:
    """Distances and shortest-path counts from ``s``."""
    _, dist, sigma, _ = _search(graph, s)
    return dist, sigma


def distances(graph, s) -> list[float]:
    return sssp_counts(graph, s)[0]


def brandes(graph) -> list[float]:
    """Exact betweenness normalised by ``n(n-1)`` over ordered pairs."""
    n = graph.n
    cb = [0.0] * n
    if n < 2:
        return cb
    for s in range(n):
        order, _, sigma, preds = _search(graph, s)
        delta = [0.0] * n
        for w in reversed(order):
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                cb[w] += delta[w]
    norm = n * (n - 1)
    return [x / norm for x in cb]


def exact_vd(graph, sources=None) -> int:
    """Largest number of nodes on any shortest path (ties resolved toward more hops).

    With ``sources`` only paths starting there count, so passing the nodes
    of one component gives that component's vertex diameter.
    """
    if graph.n == 0:
        return 0
    best = 1
    for s in range(graph.n) if sources is None else sources:
        order, dist, _, preds = _search(graph, s)
        hops = [0] * graph.n
        for v in order[1:]:
            hops[v] = 1 + max(hops[z] for z in preds[v])
            if hops[v] + 1 > best:
                best = hops[v] + 1
    return best


def static_rk(graph, params, rng: random.Random | None = None) -> list[float]:
    """Score a graph from scratch: fresh bound, fresh sample count, fresh samples."""
    from .bcsampler import compute_sample_count, draw_sample
    from .vdtracker import init_tracker

    if rng is None:
        rng = random.Random(params.seed)
    _, vd = init_tracker(graph)
    r = compute_sample_count(vd, params)
    scores = [0.0] * graph.n
    for _ in range(r):
        path, _ = draw_sample(graph, rng)
        for v in path.interior:
            scores[v] += 1.0 / r
    return scores
