import io
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as hst

from dynbc.errors import ConsistencyError, DomainError, ParseError
from dynbc.graph import (DELETE, INSERT, SET_WEIGHT, DynamicGraph, EdgeEvent, UpdateBatch, apply_batch,
                         connected_components, invert_batch, load_edge_list, normalize_batch)

from helpers import random_events, random_graph


def path3(weighted=False):
    return DynamicGraph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)], weighted=weighted)


def triangle():
    return DynamicGraph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)], weighted=True)


# --- loading ---

def test_collapse_multi_weights_by_multiplicity():
    g = load_edge_list(io.StringIO("0 1\n0 1\n1 2\n"), "collapse-multi")
    assert g.weight(0, 1) == 0.5
    assert g.weight(1, 2) == 1.0
    assert g.m == 2


def test_empty_stream():
    g = load_edge_list(io.StringIO(""))
    assert (g.n, g.m) == (0, 0)


def test_single_weighted_edge():
    g = load_edge_list(io.StringIO("0 1 2.5\n"), "weighted")
    assert (g.n, g.m) == (2, 1)
    assert g.weight(0, 1) == 2.5


def test_comments_and_external_ids():
    g = load_edge_list(io.StringIO("% header\n# more\n10 30\n30 20 1 5\n"))
    assert g.labels == [10, 20, 30]
    assert g.has_edge(g.index[10], g.index[30])
    assert g.has_edge(g.index[20], g.index[30])


def test_unweighted_ignores_duplicates_weighted_keeps_last():
    text = "0 1 3\n1 0 5\n"
    assert load_edge_list(io.StringIO(text)).weight(0, 1) == 1.0
    assert load_edge_list(io.StringIO(text), "weighted").weight(0, 1) == 5.0


def test_self_loops_skipped():
    g = load_edge_list(io.StringIO("0 0\n0 1\n"))
    assert g.m == 1


@pytest.mark.parametrize("text,lineno", [("0 1\nfoo bar\n", 2), ("0\n", 1), ("0 1 2 3 4\n", 1), ("\n\n-1 2\n", 3)])
def test_malformed_line_reports_line_number(text, lineno):
    with pytest.raises(ParseError) as info:
        load_edge_list(io.StringIO(text))
    assert info.value.lineno == lineno
    assert f"line {lineno}" in str(info.value)


@pytest.mark.parametrize("w", ["0", "-2", "inf", "nan"])
def test_nonpositive_weight_rejected(w):
    with pytest.raises(DomainError):
        load_edge_list(io.StringIO(f"0 1 {w}\n"), "weighted")


def test_unknown_mode():
    with pytest.raises(DomainError):
        load_edge_list(io.StringIO("0 1\n"), "directed")


# --- container ---

def test_unweighted_graph_rejects_non_unit_weight():
    g = DynamicGraph(2)
    with pytest.raises(DomainError):
        g.add_edge(0, 1, 2.0)


def test_event_validation():
    with pytest.raises(DomainError):
        EdgeEvent.insert(1, 1)
    with pytest.raises(DomainError):
        EdgeEvent.insert(0, 1, -1.0)
    assert EdgeEvent.delete(3, 1).pair == (1, 3)


def test_min_max_weight_and_audit():
    g = DynamicGraph.from_edges(3, [(0, 1, 2.0), (1, 2, 0.5)], weighted=True)
    assert g.min_weight() == 0.5 and g.max_weight() == 2.0
    g.audit()
    assert g.m == sum(len(a) for a in g.adj) // 2


# --- normalization ---

def test_cancelling_pair_leaves_empty_batch():
    b = normalize_batch([EdgeEvent.insert(0, 1), EdgeEvent.delete(0, 1)], DynamicGraph(2))
    assert list(b) == []
    assert any(e["action"] == "cancelled" for e in b.digest)


def test_insert_of_present_edge_becomes_weight_change():
    g = DynamicGraph.from_edges(2, [(0, 1, 1.0)], weighted=True)
    b = normalize_batch([EdgeEvent.insert(0, 1, 2.0)], g)
    assert list(b) == [EdgeEvent(SET_WEIGHT, 0, 1, 2.0)]


def test_last_weight_wins():
    g = DynamicGraph.from_edges(2, [(0, 1, 1.0)], weighted=True)
    b = normalize_batch([EdgeEvent.set_weight(0, 1, 3.0), EdgeEvent.set_weight(1, 0, 4.0)], g)
    assert list(b) == [EdgeEvent(SET_WEIGHT, 0, 1, 4.0)]


def test_delete_then_reinsert_is_weight_change():
    g = DynamicGraph.from_edges(2, [(0, 1, 1.0)], weighted=True)
    b = normalize_batch([EdgeEvent.delete(0, 1), EdgeEvent.insert(0, 1, 7.0)], g)
    assert list(b) == [EdgeEvent(SET_WEIGHT, 0, 1, 7.0)]


def test_set_weight_on_absent_edge_fails_on_apply():
    g = DynamicGraph(2, weighted=True)
    b = normalize_batch([EdgeEvent.set_weight(0, 1, 3.0)], g)
    with pytest.raises(ConsistencyError):
        apply_batch(g, b)
    assert g.m == 0


def test_unnormalized_batch_rejected():
    with pytest.raises(ConsistencyError):
        apply_batch(DynamicGraph(2), UpdateBatch([EdgeEvent.insert(0, 1)]))


def test_apply_is_atomic():
    g = path3()
    before = g.copy()
    bad = UpdateBatch([EdgeEvent.delete(0, 1), EdgeEvent.delete(0, 2)], normalized=True)
    with pytest.raises(ConsistencyError):
        apply_batch(g, bad)
    assert g == before


# --- apply and components ---

def test_disconnection():
    g = path3()
    apply_batch(g, normalize_batch([EdgeEvent.delete(1, 2)], g))
    assert g.m == 1
    labels = connected_components(g)
    assert len(set(labels)) == 2
    assert labels[0] == labels[1] != labels[2]


def test_weight_change_on_triangle():
    g = triangle()
    apply_batch(g, normalize_batch([EdgeEvent.set_weight(0, 1, 0.5)], g))
    assert g.m == 3
    assert g.min_weight() == 0.5


def test_empty_batch_is_identity():
    g = triangle()
    before = g.copy()
    apply_batch(g, normalize_batch([], g))
    assert g == before


def test_components_basic():
    assert len(set(connected_components(path3()))) == 1
    assert connected_components(DynamicGraph(4)) == [0, 1, 2, 3]


@settings(max_examples=200, deadline=None)
@given(seed=hst.integers(0, 2**32 - 1), weighted=hst.booleans())
def test_apply_then_inverse_restores_graph(seed, weighted):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(2, 15), 0.3, weighted)
    before = g.copy()
    b = normalize_batch(random_events(rng, g, rng.randint(0, 12)), g)
    apply_batch(g, b)
    g.audit()
    assert g.m == sum(len(a) for a in g.adj) // 2
    apply_batch(g, invert_batch(b, before))
    assert g == before


@settings(max_examples=200, deadline=None)
@given(seed=hst.integers(0, 2**32 - 1))
def test_normalization_matches_sequential_replay(seed):
    # applying raw events one by one (last state wins) gives the same graph as the normalized batch
    rng = random.Random(seed)
    g = random_graph(rng, 6, 0.4, weighted=True)
    events = []
    for _ in range(rng.randint(0, 15)):
        u, v = rng.sample(range(6), 2)
        kind = rng.choice([INSERT, DELETE])
        events.append(EdgeEvent.delete(u, v) if kind == DELETE else EdgeEvent.insert(u, v, rng.choice([1.0, 2.0])))
    replay = g.copy()
    for ev in events:
        if ev.kind == DELETE:
            if replay.has_edge(ev.u, ev.v):
                replay.remove_edge(ev.u, ev.v)
        elif replay.has_edge(ev.u, ev.v):
            replay.set_weight(ev.u, ev.v, ev.weight)
        else:
            replay.add_edge(ev.u, ev.v, ev.weight)
    b = normalize_batch(events, g)
    assert len({ev.pair for ev in b}) == len(b)
    apply_batch(g, b)
    assert g == replay
