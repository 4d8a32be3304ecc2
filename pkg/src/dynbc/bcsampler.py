"""Approximate betweenness by shortest-path sampling, maintained under edge batches.

Each of the ``r`` samples is a source-target pair drawn uniformly over
ordered pairs of distinct nodes, an SSSP state from the source, and one
shortest path drawn uniformly among the ``sigma(t)`` shortest paths to the
target. Every interior node of a sampled path scores ``1/r``. After a batch
the sample states are repaired in place, their paths redrawn, and a
separate set of auxiliary states keeps every component of the graph covered
so that the vertex-diameter bound (and with it ``r``) stays valid.

The generator in ``BCState.rng`` is consumed in a fixed order: pair draws
and path draws interleave sample by sample, then redraws happen in sample
order during updates, then growth samples. Runs are reproducible per seed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .dynsssp import SSSPState, init_sssp, predecessors, update_sssp, vd_estimate
from .errors import DomainError
from .graph import DynamicGraph, UpdateBatch
from .vdtracker import init_tracker, retire, spawn_sources


@dataclass(frozen=True)
class BCParams:
    epsilon: float = 0.05
    delta: float = 0.1
    c: float = 0.5
    seed: int | None = None

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise DomainError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not 0 < self.delta < 1:
            raise DomainError(f"delta must lie in (0, 1), got {self.delta}")
        if not self.c > 0:
            raise DomainError(f"c must be positive, got {self.c}")


@dataclass
class SampledPath:
    source: int
    target: int
    interior: list[int] = field(default_factory=list)


def compute_sample_count(vd: float, params: BCParams) -> int:
    """Number of samples for an (epsilon, delta) guarantee given a vertex-diameter bound.

    ``ceil(c / eps^2 * (floor(log2(max(vd - 2, 1))) + 1 + ln(1 / delta)))``,
    and 0 for an empty graph (``vd == 0``).
    """
    if vd < 0:
        raise DomainError("vertex-diameter bound must be nonnegative")
    if vd == 0:
        return 0
    log_term = math.floor(math.log2(max(vd - 2, 1)))
    return math.ceil(params.c / params.epsilon**2 * (log_term + 1 + math.log(1 / params.delta)))


def sample_path(graph: DynamicGraph, state: SSSPState, t: int, rng: random.Random) -> SampledPath:
    """Walk back from ``t`` choosing each predecessor ``z`` with probability ``sigma(z)/sigma(v)``.

    Predecessors are scanned in node-id order so the draw depends only on
    the graph and the generator, not on adjacency insertion order.
    """
    s = state.source
    path = SampledPath(s, t)
    if t == s or state.d[t] == math.inf:
        return path
    sigma = state.sigma
    v = t
    while True:
        preds = sorted(predecessors(graph, state, v))
        if len(preds) == 1:
            z = preds[0]
        else:
            x = rng.randrange(sum(sigma[p] for p in preds))
            for z in preds:
                x -= sigma[z]
                if x < 0:
                    break
        if z == s:
            break
        path.interior.append(z)
        v = z
    return path


def _untouched(state: SSSPState, batch: UpdateBatch) -> bool:
    # an edge between equidistant nodes is never on a shortest path, before or after
    d = state.d
    return all(d[ev.u] == d[ev.v] for ev in batch)


def sample_pair(n: int, rng: random.Random) -> tuple[int, int]:
    if n < 2:
        return 0, 0
    s = rng.randrange(n)
    t = rng.randrange(n - 1)
    if t >= s:
        t += 1
    return s, t


def draw_sample(graph, rng, vis=None) -> tuple[SampledPath, SSSPState]:
    s, t = sample_pair(graph.n, rng)
    st = init_sssp(graph, s, vis)
    return sample_path(graph, st, t, rng), st


class BCState:
    """Scores, samples ``R`` (path + SSSP state), auxiliary states ``R'`` and counters.

    ``counts[v]`` is the number of stored paths with ``v`` in their interior;
    ``scores[v]`` is maintained incrementally and tracks ``counts[v] / r``.
    ``vis[v]`` counts the states in ``R`` and ``R'`` that reach ``v``.
    """

    def __init__(self, n: int, params: BCParams, rng: random.Random | None = None):
        self.params = params
        self.rng = rng if rng is not None else random.Random(params.seed)
        self.scores = [0.0] * n
        self.counts = [0] * n
        self.vis = [0] * n
        self.samples: list[tuple[SampledPath, SSSPState]] = []
        self.aux: list[SSSPState] = []
        self.r = 0
        self.vd = 0.0
        self.vd_max = 0.0
        self.last_growth = 0

    @property
    def r_aux(self) -> int:
        return len(self.aux)

    def _credit(self, path: SampledPath, amount: float, sign: int):
        scores, counts = self.scores, self.counts
        for v in path.interior:
            counts[v] += sign
            if counts[v] == 0:
                scores[v] = 0.0
            else:
                scores[v] += sign * amount

    def _estimates(self):
        for _, st in self.samples:
            yield vd_estimate(st)
        for st in self.aux:
            yield vd_estimate(st)

    def _grow(self, graph, r_new):
        """Add ``r_new - r`` fresh samples and rescale the old scores by ``r / r_new``."""
        if r_new <= self.r:
            return
        scale = self.r / r_new
        self.scores = [x * scale for x in self.scores]
        for _ in range(r_new - self.r):
            path, st = draw_sample(graph, self.rng, self.vis)
            self.samples.append((path, st))
            self._credit(path, 1.0 / r_new, +1)
        self.last_growth = r_new - self.r
        self.r = r_new

    def _refresh_vd(self, graph):
        self.vd = max(self._estimates(), default=0.0)
        self.vd_max = max(self.vd_max, self.vd)
        self._grow(graph, compute_sample_count(self.vd_max, self.params))

    def update(self, graph: DynamicGraph, batch: UpdateBatch) -> list[float]:
        """Bring the approximation up to date with ``graph`` after ``batch`` was applied to it."""
        batch.require_normalized()
        vis = self.vis
        rng = self.rng
        unvisited: list[int] = []
        self.last_growth = 0
        inv_r = 1.0 / self.r if self.r else 0.0
        for i, (path, st) in enumerate(self.samples):
            rep = update_sssp(graph, st, batch, vis, unvisited)
            if rep.affected_count == 0 and _untouched(st, batch):
                # shortest-path DAG from this source is unchanged; the stored path stays a valid draw
                continue
            self._credit(path, inv_r, -1)
            new = sample_path(graph, st, path.target, rng)
            self._credit(new, inv_r, +1)
            self.samples[i] = (new, st)

        kept = []
        for st in self.aux:
            if vis[st.source] > 1:
                retire(st, vis, unvisited)
            else:
                update_sssp(graph, st, batch, vis, unvisited)
                kept.append(st)
        self.aux = kept
        spawn_sources(graph, unvisited, vis, self.aux)
        self._refresh_vd(graph)
        return self.scores


def init_bc(graph: DynamicGraph, params: BCParams, rng: random.Random | None = None) -> BCState:
    """Sample the initial paths, then cover the components no sample reaches.

    The sample count comes from a one-source-per-component bound. If the
    bounds computed from the sampled sources turn out larger, the state is
    grown straight away so ``r`` always matches the largest bound seen.
    """
    state = BCState(graph.n, params, rng)
    _, vd0 = init_tracker(graph)
    r = compute_sample_count(vd0, params)
    state.r = r
    for _ in range(r):
        path, st = draw_sample(graph, state.rng, state.vis)
        state.samples.append((path, st))
        state._credit(path, 1.0 / r, +1)
    spawn_sources(graph, range(graph.n), state.vis, state.aux)
    state.vd_max = vd0
    state._refresh_vd(graph)
    return state


def update_bc(state: BCState, graph: DynamicGraph, batch: UpdateBatch) -> list[float]:
    return state.update(graph, batch)


def scores(state: BCState, graph: DynamicGraph) -> list[tuple[int, float]]:
    """(external id, score) pairs ordered by external id."""
    return sorted(zip(graph.labels, state.scores))
