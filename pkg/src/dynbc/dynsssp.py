"""Single-source shortest paths with path counts, kept up to date under edge batches.

An :class:`SSSPState` holds, for one source ``s``, the distance ``d[v]`` and
the number ``sigma[v]`` of shortest ``s``-``v`` paths for every node, plus
what the per-component vertex-diameter bound needs: the two largest finite
distances and a lower bound on the edge weights of the component.

``update_weighted`` repairs a state after a batch with a priority queue;
``update_unweighted`` does the same on unit-weight graphs with an array of
FIFO queues indexed by distance. Both feed a shared ``vis`` array (how many
maintained states reach each node) and collect nodes whose count drops to
zero. A state is only safe to mutate from one thread at a time; distinct
states over the same graph may be updated independently as long as the
caller serialises access to ``vis``.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass, field

from sortedcontainers import SortedList

from .errors import ConsistencyError, DomainError
from .graph import SET_WEIGHT, DynamicGraph, UpdateBatch

INF = math.inf
SNAPSHOT_VERSION = 1


class SSSPState:
    __slots__ = ("source", "d", "sigma", "omega_min", "color", "_levels", "_level_count")

    def __init__(self, n: int, source: int):
        self.source = source
        self.d: list[float] = [INF] * n
        self.sigma: list[int] = [0] * n
        self.omega_min = INF
        # white = 0, black = 1; only touched by update_unweighted
        self.color = bytearray(n)
        self._levels = SortedList()
        self._level_count: dict[float, int] = {}

    def __repr__(self):
        return f"SSSPState(source={self.source}, reachable={len(self._level_count) and sum(self._level_count.values())})"

    # distance multiset ------------------------------------------------------

    def _add_level(self, x):
        c = self._level_count.get(x, 0)
        if c == 0:
            self._levels.add(x)
        self._level_count[x] = c + 1

    def _drop_level(self, x):
        c = self._level_count[x] - 1
        if c == 0:
            del self._level_count[x]
            self._levels.remove(x)
        else:
            self._level_count[x] = c

    def _move(self, v, new):
        old = self.d[v]
        if old == new:
            return
        if old != INF:
            self._drop_level(old)
        if new != INF:
            self._add_level(new)
        self.d[v] = new

    def top_two(self) -> tuple[float, float]:
        """(d', d''): the two largest finite distances, counted with multiplicity."""
        levels = self._levels
        if not levels:
            return 0.0, 0.0
        top = levels[-1]
        if self._level_count[top] > 1:
            return top, top
        if len(levels) > 1:
            return top, levels[-2]
        return top, 0.0

    @property
    def d_first(self):
        return self.top_two()[0]

    @property
    def d_second(self):
        return self.top_two()[1]

    def reachable_count(self) -> int:
        return sum(self._level_count.values())

    def reachable(self):
        return [v for v, x in enumerate(self.d) if x != INF]

    # persistence -------------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "version": SNAPSHOT_VERSION,
            "source": self.source,
            "d": [None if x == INF else x for x in self.d],
            "sigma": self.sigma,
            "omega_min": None if self.omega_min == INF else self.omega_min,
        }

    @classmethod
    def from_dict(cls, data: dict) -> SSSPState:
        if data.get("version") != SNAPSHOT_VERSION:
            raise ConsistencyError(f"unsupported SSSP snapshot version {data.get('version')!r}")
        st = cls(len(data["d"]), data["source"])
        for v, x in enumerate(data["d"]):
            if x is not None:
                st._move(v, x)
        st.sigma = [int(x) for x in data["sigma"]]
        om = data["omega_min"]
        st.omega_min = INF if om is None else om
        return st

    def same_paths(self, other: SSSPState) -> bool:
        return (
            self.source == other.source
            and self.d == other.d
            and self.sigma == other.sigma
            and self.top_two() == other.top_two()
        )


@dataclass
class UpdateReport:
    affected_count: int = 0
    newly_reachable: list[int] = field(default_factory=list)
    newly_unreachable: list[int] = field(default_factory=list)
    max_level_touched: float = 0.0


# --- initialisation ----------------------------------------------------------


def init_sssp(graph: DynamicGraph, s: int, vis: list[int] | None = None) -> SSSPState:
    """Dijkstra (weighted) or BFS (unweighted) from ``s``, with path counts.

    If ``vis`` is given, every node reached gets its counter incremented.
    """
    graph._check_node(s)
    st = SSSPState(graph.n, s)
    if graph.weighted:
        order = _dijkstra(graph, st)
    else:
        order = _bfs(graph, st)
    for v in order:
        st._add_level(st.d[v])
    if vis is not None:
        for v in order:
            vis[v] += 1
    return st


def _dijkstra(graph, st):
    adj = graph.adj
    d, sigma = st.d, st.sigma
    s = st.source
    d[s] = 0.0
    sigma[s] = 1
    done = []
    om = INF
    heap = [(0.0, s)]
    while heap:
        dw, w = heapq.heappop(heap)
        if dw > d[w]:
            continue
        done.append(w)
        sw = sigma[w]
        for z, wz in adj[w].items():
            if wz < om:
                om = wz
            c = dw + wz
            dz = d[z]
            if c < dz:
                d[z] = c
                sigma[z] = sw
                heapq.heappush(heap, (c, z))
            elif c == dz:
                sigma[z] += sw
    st.omega_min = om
    return done


def _bfs(graph, st):
    adj = graph.adj
    d, sigma = st.d, st.sigma
    s = st.source
    d[s] = 0
    sigma[s] = 1
    order = [s]
    i = 0
    while i < len(order):
        w = order[i]
        i += 1
        c = d[w] + 1
        sw = sigma[w]
        for z in adj[w]:
            dz = d[z]
            if dz == INF:
                d[z] = c
                sigma[z] = sw
                order.append(z)
            elif dz == c:
                sigma[z] += sw
    if len(order) > 1:
        st.omega_min = 1
    return order


# --- queries -----------------------------------------------------------------


def predecessors(graph: DynamicGraph, state: SSSPState, v: int) -> list[int]:
    """Neighbours ``z`` of ``v`` with ``d(v) = d(z) + w(z, v)``, by scanning the adjacency."""
    d = state.d
    dv = d[v]
    if dv == INF:
        raise DomainError(f"node {v} is unreachable from {state.source}")
    return [z for z, w in graph.adj[v].items() if d[z] + w == dv]


def vd_estimate(state: SSSPState) -> float:
    """Upper bound ``1 + (d' + d'') / w_min`` on the vertex diameter of the source's component."""
    d1, d2 = state.top_two()
    if d1 == 0:
        return 1.0
    return 1.0 + (d1 + d2) / state.omega_min


# --- dynamic updates ---------------------------------------------------------


def update_sssp(graph, state, batch, vis=None, unvisited=None) -> UpdateReport:
    """Dispatch to the weighted or unweighted updater by ``graph.weighted``."""
    if graph.weighted:
        return update_weighted(graph, state, batch, vis, unvisited)
    return update_unweighted(graph, state, batch, vis, unvisited)


class _Tracker:
    """Remembers the pre-update (d, sigma) of every node the update touches."""

    __slots__ = ("d", "sigma", "old")

    def __init__(self, state):
        self.d = state.d
        self.sigma = state.sigma
        self.old = {}

    def touch(self, v):
        if v not in self.old:
            self.old[v] = (self.d[v], self.sigma[v])

    def report(self, vis, unvisited, top) -> UpdateReport:
        d, sigma = self.d, self.sigma
        rep = UpdateReport(max_level_touched=top)
        for v, (od, osig) in self.old.items():
            nd = d[v]
            if nd != od or sigma[v] != osig:
                rep.affected_count += 1
            if od == INF and nd != INF:
                rep.newly_reachable.append(v)
            elif od != INF and nd == INF:
                rep.newly_unreachable.append(v)
        if vis is not None:
            for v in rep.newly_reachable:
                vis[v] += 1
            for v in rep.newly_unreachable:
                vis[v] -= 1
                if vis[v] == 0 and unvisited is not None:
                    unvisited.append(v)
        return rep


def _seed_candidates(graph, state, batch, unit):
    """Initial queue entries from the batch: the endpoint farther from the source of every event."""
    d = state.d
    adj = graph.adj
    seeds = []
    om = state.omega_min
    for ev in batch:
        u, v = ev.u, ev.v
        if ev.weight is not None and ev.weight < om:
            om = ev.weight
        if d[u] > d[v]:
            u, v = v, u
        du, dv = d[u], d[v]
        if du == dv:
            continue
        w = adj[u].get(v)
        if unit and w is not None and w != 1:
            raise DomainError("unweighted updater needs unit weights")
        # a deleted edge offers no candidate; the farther endpoint is rechecked at its own distance
        cand = dv if w is None else min(du + w, dv)
        if cand != INF:
            seeds.append((cand, v))
    state.omega_min = om
    return seeds


def update_weighted(graph: DynamicGraph, state: SSSPState, batch: UpdateBatch,
                    vis: list[int] | None = None, unvisited: list[int] | None = None) -> UpdateReport:
    """Repair ``state`` after ``batch`` has been applied to ``graph``.

    Nodes are extracted in order of candidate distance ``p``. If the cheapest
    way to reach a node through its neighbours (``con``) equals ``p``, the
    node is settled at ``p`` and its path count is recomputed from its
    predecessors; otherwise its old distance is withdrawn and it is requeued
    at ``con``, and the nodes that depended on it are rechecked.
    """
    batch.require_normalized()
    adj = graph.adj
    d, sigma = state.d, state.sigma
    tr = _Tracker(state)
    best: dict[int, float] = {}
    heap: list[tuple[float, int]] = []

    def push(v, p):
        if p < best.get(v, INF):
            best[v] = p
            heapq.heappush(heap, (p, v))

    for p, v in _seed_candidates(graph, state, batch, unit=False):
        push(v, p)

    om = state.omega_min
    top = 0.0
    while heap:
        p, w = heapq.heappop(heap)
        if best.get(w) != p:
            continue
        del best[w]
        top = p
        nb = adj[w]
        con = INF
        for z, wz in nb.items():
            c = d[z] + wz
            if c < con:
                con = c
        dw = d[w]
        if con == p:
            tr.touch(w)
            total = 0
            for z, wz in nb.items():
                if d[z] + wz == p:
                    total += sigma[z]
            if dw == INF:
                for wz in nb.values():
                    if wz < om:
                        om = wz
            changed = dw != p or sigma[w] != total
            state._move(w, p)
            sigma[w] = total
            for z, wz in nb.items():
                c = p + wz
                dz = d[z]
                if c < dz or (changed and c == dz):
                    push(z, c)
        elif dw != INF and con > dw:
            tr.touch(w)
            for z, wz in nb.items():
                dz = d[z]
                if dz == dw + wz:
                    push(z, dz)
            state._move(w, INF)
            sigma[w] = 0
            if con != INF:
                push(w, con)
        elif con != INF:
            push(w, con)
    state.omega_min = om
    return tr.report(vis, unvisited, top)


def update_unweighted(graph: DynamicGraph, state: SSSPState, batch: UpdateBatch,
                      vis: list[int] | None = None, unvisited: list[int] | None = None) -> UpdateReport:
    """Unit-weight counterpart of :func:`update_weighted`.

    Candidate distances are integers, so the priority queue becomes a list
    of FIFO queues, one per level. A node is colored black once its final
    distance is known and skipped on later extractions; every touched node
    is white again on return.
    """
    batch.require_normalized()
    for ev in batch:
        if ev.kind == SET_WEIGHT:
            raise DomainError("weight changes need the weighted updater")
    adj = graph.adj
    d, sigma, color = state.d, state.sigma, state.color
    tr = _Tracker(state)
    queues: list[deque] = []
    queued: dict[int, int] = {}
    touched = []

    def enqueue(v, k):
        if k < queued.get(v, INF):
            queued[v] = k
            while len(queues) <= k:
                queues.append(deque())
            queues[k].append(v)

    seeds = _seed_candidates(graph, state, batch, unit=True)
    if not seeds:
        return tr.report(vis, unvisited, 0)
    for k, v in seeds:
        enqueue(v, int(k))

    k = min(int(p) for p, _ in seeds)
    while k < len(queues):
        q = queues[k]
        while q:
            w = q.popleft()
            if color[w] or queued.get(w) != k:
                continue
            del queued[w]
            nb = adj[w]
            con = INF
            for z in nb:
                c = d[z] + 1
                if c < con:
                    con = c
            dw = d[w]
            if con == k:
                tr.touch(w)
                total = 0
                for z in nb:
                    if d[z] + 1 == k:
                        total += sigma[z]
                changed = dw != k or sigma[w] != total
                state._move(w, k)
                sigma[w] = total
                color[w] = 1
                touched.append(w)
                for z in nb:
                    dz = d[z]
                    if dz > k + 1 or (changed and dz == k + 1):
                        enqueue(z, k + 1)
            elif dw != INF and con > dw:
                tr.touch(w)
                for z in nb:
                    if d[z] == dw + 1:
                        enqueue(z, dw + 1)
                state._move(w, INF)
                sigma[w] = 0
                if con != INF:
                    enqueue(w, con)
            elif con != INF:
                enqueue(w, con)
        k += 1
    for w in touched:
        color[w] = 0
    if state.omega_min == INF and state.reachable_count() > 1:
        state.omega_min = 1
    return tr.report(vis, unvisited, len(queues) - 1)
