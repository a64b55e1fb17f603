from __future__ import annotations

import random

import pytest

from shiftflow import (
    DirectedGraph,
    InvalidInput,
    essentialize,
    from_adjacency,
    full_shift,
    language_count,
    path_count,
    scc_decompose,
    sft,
    sft_to_edge_shift,
    to_m_step,
)


def _random_graph(rng: random.Random, n: int, p: float) -> DirectedGraph:
    names = [f"v{i}" for i in range(n)]
    arcs = [(a, b) for a in names for b in names if rng.random() < p]
    return DirectedGraph.build(names, arcs)


def test_essentialize_removes_stranded_vertices():
    g = DirectedGraph.build(["a", "b", "c"], [("a", "a"), ("a", "b")])
    e = essentialize(g)
    assert [v for v in e.vertices] == ["a"]
    assert len(e.edges) == 1


def test_essentialize_idempotent_on_random_graphs():
    rng = random.Random(11)
    for _ in range(40):
        g = _random_graph(rng, rng.randint(1, 7), 0.3)
        once = essentialize(g)
        twice = essentialize(once)
        assert set(once.vertices) == set(twice.vertices)
        assert len(once.edges) == len(twice.edges)


def test_essentialize_order_independent():
    """Kill order cannot matter: compare against a one-at-a-time removal
    loop driven in randomized vertex order."""
    rng = random.Random(23)
    for _ in range(25):
        g = _random_graph(rng, rng.randint(2, 6), 0.35)
        expect = set(essentialize(g).vertices)

        alive = set(g.vertices)
        changed = True
        while changed:
            changed = False
            order = sorted(alive, key=lambda v: rng.random())
            for v in order:
                outs = any(e.dst in alive for e in g.out_edges(v))
                ins = any(e.src in alive for e in g.in_edges(v))
                if not (outs and ins):
                    alive.discard(v)
                    changed = True
        assert alive == expect


def test_scc_decompose_keeps_only_cyclic_parts():
    g = DirectedGraph.build(
        ["a", "b", "c", "d"],
        [("a", "b"), ("b", "a"), ("b", "c"), ("c", "d"), ("d", "d")],
    )
    comps = scc_decompose(g)
    vertex_sets = sorted(sorted(c.vertices) for c in comps)
    assert vertex_sets == [["a", "b"], ["d"]]


def test_from_adjacency_builds_parallel_edges():
    g = from_adjacency([[2, 1], [0, 1]])
    assert len(g.vertices) == 2
    assert len(g.edges) == 4


def test_from_adjacency_rejects_negative_entries():
    with pytest.raises(InvalidInput):
        from_adjacency([[1, -1], [0, 1]])


def test_adjacency_roundtrip():
    m = [[2, 1], [1, 0]]
    got = from_adjacency(m).adjacency_matrix()
    assert [list(row) for row in got] == m


def test_path_count_matches_language_count_with_index_shift():
    """Edge paths of length n correspond to words of length n + step."""
    for forbidden in (["11"], ["11", "000"], []):
        x = to_m_step(sft(["0", "1"], forbidden))
        g, _ = sft_to_edge_shift(x)
        for n in range(1, 7):
            assert path_count(g, n) == language_count(x, n + x.step)


def test_path_count_on_full_shift_is_power():
    g, _ = sft_to_edge_shift(full_shift(["a", "b", "c"]))
    assert path_count(g, 5) == 3**5


def test_strong_connectivity_flag():
    cyc = DirectedGraph.build(["a", "b"], [("a", "b"), ("b", "a")])
    assert cyc.is_strongly_connected()
    line = DirectedGraph.build(["a", "b"], [("a", "b")])
    assert not line.is_strongly_connected()
