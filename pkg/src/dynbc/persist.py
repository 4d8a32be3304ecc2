"""Versioned JSON snapshots of a graph together with its BCState."""

from __future__ import annotations

import json
import random

from .bcsampler import BCParams, BCState, SampledPath
from .dynsssp import SSSPState
from .errors import ConsistencyError
from .graph import DynamicGraph

FORMAT = "dynbc-state"
VERSION = 1


def graph_to_dict(graph: DynamicGraph) -> dict:
    return {
        "n": graph.n,
        "weighted": graph.weighted,
        "labels": graph.labels,
        "edges": [[u, v, w] for u, v, w in graph.edges()],
    }


def graph_from_dict(data: dict) -> DynamicGraph:
    return DynamicGraph.from_edges(data["n"], data["edges"], weighted=data["weighted"], labels=data["labels"])


def state_to_dict(state: BCState, graph: DynamicGraph) -> dict:
    p = state.params
    version, internal, gauss = state.rng.getstate()
    return {
        "format": FORMAT,
        "version": VERSION,
        "params": {"epsilon": p.epsilon, "delta": p.delta, "c": p.c, "seed": p.seed},
        "graph": graph_to_dict(graph),
        "r": state.r,
        "vd": state.vd,
        "vd_max": state.vd_max,
        "scores": state.scores,
        "counts": state.counts,
        "vis": state.vis,
        "samples": [
            {"target": path.target, "interior": path.interior, "sssp": st.to_dict()}
            for path, st in state.samples
        ],
        "aux": [st.to_dict() for st in state.aux],
        "rng": [version, list(internal), gauss],
    }


def state_from_dict(data: dict) -> tuple[BCState, DynamicGraph]:
    if data.get("format") != FORMAT or data.get("version") != VERSION:
        raise ConsistencyError(f"not a version-{VERSION} {FORMAT} snapshot")
    graph = graph_from_dict(data["graph"])
    params = BCParams(**data["params"])
    rng = random.Random()
    version, internal, gauss = data["rng"]
    rng.setstate((version, tuple(internal), gauss))
    state = BCState(graph.n, params, rng)
    state.r = data["r"]
    state.vd = data["vd"]
    state.vd_max = data["vd_max"]
    state.scores = list(data["scores"])
    state.counts = list(data["counts"])
    state.vis = list(data["vis"])
    for item in data["samples"]:
        st = SSSPState.from_dict(item["sssp"])
        state.samples.append((SampledPath(st.source, item["target"], list(item["interior"])), st))
    state.aux = [SSSPState.from_dict(x) for x in data["aux"]]
    return state, graph


def save(path, state: BCState, graph: DynamicGraph):
    with open(path, "w") as fh:
        json.dump(state_to_dict(state, graph), fh)


def load(path) -> tuple[BCState, DynamicGraph]:
    with open(path) as fh:
        return state_from_dict(json.load(fh))
