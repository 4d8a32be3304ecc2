"""Undirected graphs with positive weights, edge batches and edge-list input."""

from __future__ import annotations

import logging
import math
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, TextIO

from .errors import ConsistencyError, DomainError, ParseError

log = logging.getLogger("dynbc.graph")

INSERT = "insert"
DELETE = "delete"
SET_WEIGHT = "set_weight"
EVENT_KINDS = (INSERT, DELETE, SET_WEIGHT)

LOAD_MODES = ("unweighted", "weighted", "collapse-multi")


@dataclass(frozen=True)
class EdgeEvent:
    kind: str
    u: int
    v: int
    weight: float | None = None

    def __post_init__(self):
        if self.kind not in EVENT_KINDS:
            raise DomainError(f"unknown event kind {self.kind!r}")
        if self.u == self.v:
            raise DomainError(f"self-loop event on node {self.u}")
        if self.kind == DELETE:
            if self.weight is not None:
                raise DomainError("delete events carry no weight")
        elif self.weight is None or not self.weight > 0 or math.isinf(self.weight):
            raise DomainError(f"{self.kind} needs a finite positive weight, got {self.weight!r}")

    @classmethod
    def insert(cls, u, v, weight=1.0):
        return cls(INSERT, u, v, float(weight))

    @classmethod
    def delete(cls, u, v):
        return cls(DELETE, u, v)

    @classmethod
    def set_weight(cls, u, v, weight):
        return cls(SET_WEIGHT, u, v, float(weight))

    @property
    def pair(self) -> tuple[int, int]:
        return (self.u, self.v) if self.u < self.v else (self.v, self.u)


@dataclass
class UpdateBatch:
    """An ordered list of edge events.

    ``normalized`` is set only by :func:`normalize_batch`; the dynamic
    updaters refuse batches that have not been through it. ``digest`` holds
    one dict per dropped or rewritten event.
    """

    events: list[EdgeEvent] = field(default_factory=list)
    normalized: bool = False
    digest: list[dict] = field(default_factory=list)

    def __iter__(self) -> Iterator[EdgeEvent]:
        return iter(self.events)

    def __len__(self):
        return len(self.events)

    def require_normalized(self):
        if not self.normalized:
            raise ConsistencyError("batch must go through normalize_batch before it is applied")


class DynamicGraph:
    """Undirected graph over a fixed node set ``0..n-1``.

    ``adj[v]`` maps each neighbour of ``v`` to the edge weight. Unweighted
    graphs store weight 1 on every edge. ``labels[i]`` is the external id of
    internal node ``i``.
    """

    def __init__(self, n: int, weighted: bool = False, labels: list[int] | None = None):
        if n < 0:
            raise DomainError("node count must be nonnegative")
        self.weighted = weighted
        self.adj: list[dict[int, float]] = [{} for _ in range(n)]
        self.m = 0
        self.labels = list(range(n)) if labels is None else list(labels)
        if len(self.labels) != n:
            raise DomainError("one label per node required")
        self.index = {lab: i for i, lab in enumerate(self.labels)}

    @classmethod
    def from_edges(cls, n, edges: Iterable, weighted=False, labels=None):
        g = cls(n, weighted=weighted, labels=labels)
        for e in edges:
            u, v = e[0], e[1]
            w = e[2] if len(e) > 2 else 1.0
            g.add_edge(u, v, w)
        return g

    @property
    def n(self) -> int:
        return len(self.adj)

    def __repr__(self):
        kind = "weighted" if self.weighted else "unweighted"
        return f"DynamicGraph(n={self.n}, m={self.m}, {kind})"

    def __eq__(self, other):
        if not isinstance(other, DynamicGraph):
            return NotImplemented
        return (
            self.weighted == other.weighted
            and self.labels == other.labels
            and self.adj == other.adj
        )

    def copy(self, weighted: bool | None = None) -> DynamicGraph:
        g = DynamicGraph(0, self.weighted if weighted is None else weighted)
        g.adj = [dict(a) for a in self.adj]
        g.m = self.m
        g.labels = list(self.labels)
        g.index = dict(self.index)
        return g

    def _check_node(self, v):
        if not 0 <= v < self.n:
            raise DomainError(f"node {v} not in graph (n={self.n})")

    def _check_weight(self, w):
        if not w > 0 or math.isinf(w):
            raise DomainError(f"edge weights must be finite and positive, got {w!r}")
        if not self.weighted and w != 1:
            raise DomainError(f"unweighted graph cannot hold weight {w!r}")

    def has_edge(self, u, v) -> bool:
        return v in self.adj[u]

    def weight(self, u, v) -> float | None:
        return self.adj[u].get(v)

    def neighbors(self, v):
        return self.adj[v].keys()

    def degree(self, v) -> int:
        return len(self.adj[v])

    def edges(self) -> Iterator[tuple[int, int, float]]:
        for u, nb in enumerate(self.adj):
            for v, w in nb.items():
                if u < v:
                    yield u, v, w

    def add_edge(self, u, v, w=1.0):
        self._check_node(u)
        self._check_node(v)
        if u == v:
            raise DomainError(f"self-loop on node {u}")
        self._check_weight(w)
        if v in self.adj[u]:
            raise ConsistencyError(f"edge {{{u},{v}}} already present")
        self.adj[u][v] = w
        self.adj[v][u] = w
        self.m += 1

    def remove_edge(self, u, v):
        if v not in self.adj[u]:
            raise ConsistencyError(f"edge {{{u},{v}}} not present")
        del self.adj[u][v]
        del self.adj[v][u]
        self.m -= 1

    def set_weight(self, u, v, w):
        if v not in self.adj[u]:
            raise ConsistencyError(f"edge {{{u},{v}}} not present")
        self._check_weight(w)
        self.adj[u][v] = w
        self.adj[v][u] = w

    def min_weight(self) -> float:
        return min((w for _, _, w in self.edges()), default=math.inf)

    def max_weight(self) -> float:
        return max((w for _, _, w in self.edges()), default=0.0)

    def audit(self):
        """Raise ConsistencyError unless the structural invariants hold."""
        entries = 0
        for u, nb in enumerate(self.adj):
            for v, w in nb.items():
                entries += 1
                if u == v:
                    raise ConsistencyError(f"self-loop at {u}")
                if not 0 <= v < self.n:
                    raise ConsistencyError(f"dangling neighbour {v} of {u}")
                if self.adj[v].get(u) != w:
                    raise ConsistencyError(f"asymmetric entry {{{u},{v}}}")
                if not w > 0:
                    raise ConsistencyError(f"nonpositive weight on {{{u},{v}}}")
                if not self.weighted and w != 1:
                    raise ConsistencyError(f"non-unit weight on unweighted edge {{{u},{v}}}")
        if entries != 2 * self.m:
            raise ConsistencyError(f"m={self.m} but {entries} adjacency entries")


# --- edge-list input ---------------------------------------------------------


@dataclass(frozen=True)
class EdgeRecord:
    u: int
    v: int
    weight: float | None
    timestamp: float | None
    lineno: int


def read_edge_records(stream: TextIO) -> list[EdgeRecord]:
    """Parse ``u v [weight] [timestamp]`` lines; ``%`` and ``#`` start comments."""
    records = []
    for lineno, line in enumerate(stream, 1):
        line = line.strip()
        if not line or line[0] in "%#":
            continue
        parts = line.split()
        if not 2 <= len(parts) <= 4:
            raise ParseError(f"expected 'u v [weight] [timestamp]', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
            w = float(parts[2]) if len(parts) > 2 else None
            t = float(parts[3]) if len(parts) > 3 else None
        except ValueError:
            raise ParseError(f"malformed edge {line!r}", lineno) from None
        if u < 0 or v < 0:
            raise ParseError(f"node ids must be nonnegative integers, got {line!r}", lineno)
        if w is not None and not (w > 0 and math.isfinite(w)):
            raise DomainError(f"line {lineno}: nonpositive weight {parts[2]}")
        records.append(EdgeRecord(u, v, w, t, lineno))
    return records


def graph_from_records(records: list[EdgeRecord], mode="unweighted", labels=None) -> DynamicGraph:
    """Build a graph from parsed records.

    ``labels`` fixes the node set (external ids); by default it is every id
    mentioned in ``records``, in ascending order.
    """
    if mode not in LOAD_MODES:
        raise DomainError(f"unknown load mode {mode!r}")
    if labels is None:
        labels = sorted({r.u for r in records} | {r.v for r in records})
    g = DynamicGraph(len(labels), weighted=mode != "unweighted", labels=labels)
    idx = g.index
    multiplicity = Counter()
    last_weight = {}
    for r in records:
        if r.u == r.v:
            log.debug("line %d: self-loop on %d skipped", r.lineno, r.u)
            continue
        u, v = idx[r.u], idx[r.v]
        key = (u, v) if u < v else (v, u)
        multiplicity[key] += 1
        if r.weight is not None:
            last_weight[key] = r.weight
    for (u, v), k in multiplicity.items():
        if mode == "unweighted":
            w = 1.0
        elif mode == "collapse-multi":
            w = 1.0 / k
        else:
            w = last_weight.get((u, v), 1.0)
        g.add_edge(u, v, w)
    return g


def load_edge_list(stream: TextIO, mode="unweighted") -> DynamicGraph:
    """Read an edge list.

    In ``unweighted`` mode repeated edges are ignored, in ``weighted`` mode the
    last weight given for a pair wins, and in ``collapse-multi`` mode ``k``
    parallel edges become one edge of weight ``1/k``.
    """
    return graph_from_records(read_edge_records(stream), mode)


# --- batches -----------------------------------------------------------------


def normalize_batch(events: Iterable[EdgeEvent], graph: DynamicGraph) -> UpdateBatch:
    """Collapse ``events`` to at most one event per node pair.

    The events of each pair are replayed in order against the pair's current
    state; the emitted event takes the pair straight to the final state.
    Steps that are meaningless when replayed (deleting an absent edge) are
    dropped and recorded in the digest. A ``set_weight`` on an edge that never
    existed is kept so that :func:`apply_batch` rejects it.
    """
    per_pair: dict[tuple[int, int], list[EdgeEvent]] = {}
    for ev in events:
        graph._check_node(ev.u)
        graph._check_node(ev.v)
        per_pair.setdefault(ev.pair, []).append(ev)

    out, digest = [], []
    for (u, v), evs in per_pair.items():
        start = graph.weight(u, v)
        cur = start
        touched = False
        poison = None
        for ev in evs:
            if ev.kind == DELETE:
                if cur is None:
                    digest.append({"action": "dropped", "reason": "delete of absent edge", "u": u, "v": v})
                    continue
                cur = None
            elif ev.kind == INSERT:
                if cur is not None:
                    digest.append({"action": "rewritten", "reason": "insert of present edge", "u": u, "v": v})
                cur = ev.weight
                touched = True
            else:
                if cur is None:
                    poison = ev
                    break
                cur = ev.weight
                touched = True
        if poison is not None:
            out.append(EdgeEvent(SET_WEIGHT, u, v, poison.weight))
            continue
        if len(evs) > 1:
            digest.append({"action": "superseded", "count": len(evs) - 1, "u": u, "v": v})
        if start is None and cur is None:
            if any(ev.kind != DELETE for ev in evs):
                digest.append({"action": "cancelled", "u": u, "v": v})
        elif start is None:
            out.append(EdgeEvent(INSERT, u, v, cur))
        elif cur is None:
            out.append(EdgeEvent(DELETE, u, v))
        elif touched:
            out.append(EdgeEvent(SET_WEIGHT, u, v, cur))
    for entry in digest:
        log.info("batch digest %s", entry)
    return UpdateBatch(out, normalized=True, digest=digest)


def apply_batch(graph: DynamicGraph, batch: UpdateBatch):
    """Mutate ``graph`` by a normalized batch; all-or-nothing."""
    batch.require_normalized()
    seen = set()
    for ev in batch:
        if ev.pair in seen:
            raise ConsistencyError(f"pair {ev.pair} appears twice in a normalized batch")
        seen.add(ev.pair)
        present = graph.has_edge(ev.u, ev.v)
        if ev.kind == INSERT and present:
            raise ConsistencyError(f"insert of present edge {ev.pair}")
        if ev.kind != INSERT and not present:
            raise ConsistencyError(f"{ev.kind} of absent edge {ev.pair}")
        if ev.weight is not None:
            graph._check_weight(ev.weight)
    for ev in batch:
        if ev.kind == INSERT:
            graph.add_edge(ev.u, ev.v, ev.weight)
        elif ev.kind == DELETE:
            graph.remove_edge(ev.u, ev.v)
        else:
            graph.set_weight(ev.u, ev.v, ev.weight)


def invert_batch(batch: UpdateBatch, before: DynamicGraph) -> UpdateBatch:
    """The normalized batch that undoes ``batch`` given the graph it was applied to."""
    inv = []
    for ev in batch:
        if ev.kind == INSERT:
            inv.append(EdgeEvent(DELETE, ev.u, ev.v))
        elif ev.kind == DELETE:
            inv.append(EdgeEvent(INSERT, ev.u, ev.v, before.weight(ev.u, ev.v)))
        else:
            inv.append(EdgeEvent(SET_WEIGHT, ev.u, ev.v, before.weight(ev.u, ev.v)))
    return UpdateBatch(inv, normalized=True)


def connected_components(graph: DynamicGraph) -> list[int]:
    """Label nodes by component; labels are dense and ordered by lowest node id."""
    label = [-1] * graph.n
    c = 0
    for s in range(graph.n):
        if label[s] >= 0:
            continue
        label[s] = c
        q = deque([s])
        while q:
            x = q.popleft()
            for y in graph.adj[x]:
                if label[y] < 0:
                    label[y] = c
                    q.append(y)
        c += 1
    return label
