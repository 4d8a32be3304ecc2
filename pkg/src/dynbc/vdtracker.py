"""Fully-dynamic upper bound on the vertex diameter, one SSSP per component."""

from __future__ import annotations

from .dynsssp import SSSPState, init_sssp, update_sssp, vd_estimate
from .graph import DynamicGraph, UpdateBatch


def spawn_sources(graph, candidates, vis, states: list[SSSPState]):
    """Start a fresh SSSP from every candidate that no maintained state reaches."""
    for v in candidates:
        if vis[v] == 0:
            states.append(init_sssp(graph, v, vis))


def retire(state: SSSPState, vis, unvisited):
    """Withdraw ``state``'s reach from ``vis``; nodes left uncovered go to ``unvisited``."""
    for v in state.reachable():
        vis[v] -= 1
        if vis[v] == 0:
            unvisited.append(v)


class VDTracker:
    """Per-component vertex-diameter bounds kept current under edge batches.

    ``vis[v]`` is the number of tracked states that reach ``v``; between
    updates it is exactly 1 everywhere because each component has exactly
    one source.
    """

    def __init__(self, graph: DynamicGraph):
        self.vis = [0] * graph.n
        self.sources: list[SSSPState] = []
        spawn_sources(graph, range(graph.n), self.vis, self.sources)

    @property
    def n_components(self) -> int:
        return len(self.sources)

    def estimates(self) -> list[tuple[int, float]]:
        return [(st.source, vd_estimate(st)) for st in self.sources]

    @property
    def vd(self) -> float:
        return max((vd_estimate(st) for st in self.sources), default=0.0)

    def update(self, graph: DynamicGraph, batch: UpdateBatch) -> float:
        batch.require_normalized()
        vis = self.vis
        unvisited: list[int] = []
        kept = []
        for st in self.sources:
            if vis[st.source] > 1:
                # an already-updated source now reaches this component
                retire(st, vis, unvisited)
            else:
                update_sssp(graph, st, batch, vis, unvisited)
                kept.append(st)
        self.sources = kept
        spawn_sources(graph, unvisited, vis, self.sources)
        return self.vd


def init_tracker(graph: DynamicGraph) -> tuple[VDTracker, float]:
    tracker = VDTracker(graph)
    return tracker, tracker.vd


def update_tracker(tracker: VDTracker, graph: DynamicGraph, batch: UpdateBatch) -> float:
    return tracker.update(graph, batch)
