"""Timing of dynamic updates against recomputation from scratch."""

from __future__ import annotations

import logging
import random
import statistics
import time
from dataclasses import asdict, dataclass, field

from .bcsampler import BCParams, init_bc
from .dynamics import gen_random_dynamics, gen_weight_dynamics
from .graph import DynamicGraph, apply_batch, normalize_batch
from .oracle import static_rk

log = logging.getLogger("dynbc.bench")

PROTOCOLS = ("fixed-batch", "sequential")


@dataclass
class BenchRow:
    batch_size: int
    runs: int
    t_dynamic_mean: float
    t_static_mean: float
    speedup: float
    r: int


@dataclass
class BenchReport:
    protocol: str
    mode: str
    n: int
    m: int
    rows: list[BenchRow] = field(default_factory=list)

    def to_dict(self):
        return asdict(self)


def _noisy(times, label):
    if len(times) > 1:
        mean = statistics.fmean(times)
        if mean > 0 and statistics.stdev(times) / mean > 0.10:
            log.warning("%s timings vary by more than 10%% across runs", label)


def _batches(graph, mode, x, batch_size, runs, rng):
    if mode == "weight-change":
        base, batches = gen_weight_dynamics(graph, min(x, graph.m), batch_size, rng)
        return base, (batches * runs)[:runs]
    base, batches = gen_random_dynamics(graph, x, batch_size, rng, n_batches=runs)
    return base, batches


def bench(graph: DynamicGraph, params: BCParams, batch_sizes=(1,), runs=10, mode="random",
          x=None, protocol="fixed-batch") -> BenchReport:
    """Mean wall time of one ``update_bc`` and of one ``static_rk`` per batch size.

    ``fixed-batch``: the same batch is applied in every run to a fresh state
    initialised with a different seed. ``sequential``: one state absorbs
    ``runs`` successive batches, and a static recomputation is timed on the
    graph after each.
    """
    if protocol not in PROTOCOLS:
        raise ValueError(f"unknown protocol {protocol!r}")
    base_seed = params.seed if params.seed is not None else 0
    report = BenchReport(protocol, mode, graph.n, graph.m)
    for bs in batch_sizes:
        rng = random.Random(base_seed + bs)
        xx = x if x is not None else max(bs * runs, 1)
        base, raw = _batches(graph, mode, min(xx, graph.m), bs, runs, rng)
        t_dyn, t_stat = [], []
        r = 0
        if protocol == "fixed-batch":
            for i in range(runs):
                g = base.copy()
                p = BCParams(params.epsilon, params.delta, params.c, base_seed + i)
                st = init_bc(g, p)
                b = normalize_batch(raw[0].events, g)
                apply_batch(g, b)
                t0 = time.perf_counter()
                st.update(g, b)
                t_dyn.append(time.perf_counter() - t0)
                t0 = time.perf_counter()
                static_rk(g, p)
                t_stat.append(time.perf_counter() - t0)
                r = st.r
        else:
            g = base.copy()
            st = init_bc(g, params)
            for i in range(runs):
                b = normalize_batch(raw[i % len(raw)].events, g)
                apply_batch(g, b)
                t0 = time.perf_counter()
                st.update(g, b)
                t_dyn.append(time.perf_counter() - t0)
                t0 = time.perf_counter()
                static_rk(g, BCParams(params.epsilon, params.delta, params.c, base_seed + i))
                t_stat.append(time.perf_counter() - t0)
            r = st.r
        _noisy(t_dyn, f"dynamic (batch size {bs})")
        _noisy(t_stat, f"static (batch size {bs})")
        dyn, stat = statistics.fmean(t_dyn), statistics.fmean(t_stat)
        report.rows.append(BenchRow(bs, runs, dyn, stat, stat / dyn if dyn > 0 else float("inf"), r))
    return report
