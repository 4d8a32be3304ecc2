"""Edge-update sequences for experiments, plus a synthetic graph generator.

Every generator returns ``(base_graph, batches)``: the graph to initialise
on and a list of raw (not yet normalized) batches to replay against it in
order.
"""

from __future__ import annotations

import logging
import math
import random

import numpy as np
from scipy.spatial import cKDTree

from .errors import DomainError
from .graph import DELETE, INSERT, DynamicGraph, EdgeEvent, EdgeRecord, UpdateBatch, graph_from_records

log = logging.getLogger("dynbc.dynamics")

# smallest factor a weight change may apply
WEIGHT_FACTOR_FLOOR = 1e-3


def _chunks(events, batch_size):
    if batch_size < 1:
        raise DomainError("batch size must be at least 1")
    return [UpdateBatch(events[i:i + batch_size]) for i in range(0, len(events), batch_size)]


def gen_real_dynamics(records: list[EdgeRecord], x: int, batch_size: int, mode="unweighted"):
    """Hold back the ``x`` newest edges and replay them in timestamp order.

    Records with equal timestamps keep their input order. In
    ``collapse-multi`` mode a replayed parallel edge becomes a weight change
    to ``1/k``.
    """
    if x < 0 or x > len(records):
        raise DomainError(f"cannot hold back {x} of {len(records)} edges")
    if any(r.timestamp is None for r in records):
        raise DomainError("real dynamics need a timestamp on every edge")
    ordered = sorted(records, key=lambda r: r.timestamp)
    keep, held = ordered[:len(ordered) - x], ordered[len(ordered) - x:]
    labels = sorted({r.u for r in records} | {r.v for r in records})
    base = graph_from_records(keep, mode, labels=labels)
    idx = base.index

    multiplicity = {}
    for r in keep:
        if r.u != r.v:
            key = tuple(sorted((idx[r.u], idx[r.v])))
            multiplicity[key] = multiplicity.get(key, 0) + 1
    events = []
    for r in held:
        if r.u == r.v:
            continue
        u, v = idx[r.u], idx[r.v]
        key = (u, v) if u < v else (v, u)
        k = multiplicity.get(key, 0) + 1
        multiplicity[key] = k
        if mode == "unweighted":
            if k == 1:
                events.append(EdgeEvent.insert(u, v))
        elif mode == "collapse-multi":
            events.append(EdgeEvent.insert(u, v, 1.0 / k) if k == 1 else EdgeEvent.set_weight(u, v, 1.0 / k))
        else:
            w = r.weight if r.weight is not None else 1.0
            events.append(EdgeEvent.insert(u, v, w) if k == 1 else EdgeEvent.set_weight(u, v, w))
    return base, _chunks(events, batch_size)


class _EdgePool:
    """Set of edges with O(1) uniform draw and removal."""

    def __init__(self, items=()):
        self.items = []
        self.pos = {}
        for it in items:
            self.add(it)

    def __len__(self):
        return len(self.items)

    def add(self, item):
        self.pos[item[:2]] = len(self.items)
        self.items.append(item)

    def pop_random(self, rng, exclude):
        for _ in range(8):
            item = self.items[rng.randrange(len(self.items))]
            if item[:2] not in exclude:
                self.remove(item[:2])
                return item
        candidates = [it for it in self.items if it[:2] not in exclude]
        if not candidates:
            return None
        item = candidates[rng.randrange(len(candidates))]
        self.remove(item[:2])
        return item

    def remove(self, key):
        i = self.pos.pop(key)
        last = self.items.pop()
        if i < len(self.items):
            self.items[i] = last
            self.pos[last[:2]] = i


def gen_random_dynamics(graph: DynamicGraph, x: int, batch_size: int, rng: random.Random,
                        n_batches: int | None = None):
    """Remove ``x`` random edges, then mix reinsertions and fresh deletions half and half.

    Each event is, with probability 1/2, the reinsertion of a previously
    removed edge and otherwise the deletion of a present edge. No pair is
    touched twice within one batch. ``n_batches`` defaults to
    ``ceil(x / batch_size)``.
    """
    if x < 0 or x > graph.m:
        raise DomainError(f"cannot remove {x} of {graph.m} edges")
    if batch_size < 1:
        raise DomainError("batch size must be at least 1")
    base = graph.copy()
    present = _EdgePool(base.edges())
    removed = _EdgePool()
    for _ in range(x):
        u, v, w = present.pop_random(rng, ())
        base.remove_edge(u, v)
        removed.add((u, v, w))
    if n_batches is None:
        n_batches = max(1, math.ceil(x / batch_size)) if x else 0

    batches = []
    for _ in range(n_batches):
        used = set()
        events = []
        for _ in range(batch_size):
            reinsert = rng.random() < 0.5
            pool = removed if reinsert else present
            item = pool.pop_random(rng, used) if len(pool) else None
            if item is None:
                reinsert = not reinsert
                pool = removed if reinsert else present
                item = pool.pop_random(rng, used) if len(pool) else None
            if item is None:
                log.warning("random dynamics ran out of edges; batch truncated at %d events", len(events))
                break
            u, v, w = item
            used.add((u, v))
            if reinsert:
                events.append(EdgeEvent(INSERT, u, v, w))
                present.add(item)
            else:
                events.append(EdgeEvent(DELETE, u, v))
                removed.add(item)
        batches.append(UpdateBatch(events))
    return base, batches


def gen_weight_dynamics(graph: DynamicGraph, x: int, batch_size: int, rng: random.Random):
    """Multiply the weights of ``x`` distinct random edges by factors uniform in (0, 2)."""
    if not graph.weighted:
        raise DomainError("weight changes need a weighted graph")
    if x < 0 or x > graph.m:
        raise DomainError(f"cannot pick {x} of {graph.m} edges")
    edges = list(graph.edges())
    events = []
    for u, v, w in rng.sample(edges, x):
        factor = max(rng.uniform(0.0, 2.0), WEIGHT_FACTOR_FLOOR)
        events.append(EdgeEvent.set_weight(u, v, w * factor))
    return graph.copy(), _chunks(events, batch_size)


def geometric_graph(n: int, avg_degree: float, seed=None, weighted=False) -> DynamicGraph:
    """Random geometric graph in the unit square with the given expected degree.

    A stand-in with spatial locality and a large diameter; it is not the
    hyperbolic model used for the published experiments. Weighted graphs get
    the Euclidean edge length scaled to (0, 1].
    """
    nprng = np.random.default_rng(seed)
    pts = nprng.random((n, 2))
    radius = math.sqrt(avg_degree / (math.pi * max(n - 1, 1)))
    pairs = cKDTree(pts).query_pairs(radius, output_type="ndarray")
    g = DynamicGraph(n, weighted=weighted)
    if weighted:
        lengths = np.linalg.norm(pts[pairs[:, 0]] - pts[pairs[:, 1]], axis=1) / radius
        lengths = np.maximum(lengths, 1e-6)
        for (u, v), w in zip(pairs.tolist(), lengths.tolist()):
            g.add_edge(u, v, w)
    else:
        for u, v in pairs.tolist():
            g.add_edge(u, v)
    return g
