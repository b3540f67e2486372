"""Core structure: tight subgraph, trimming, orientation, rigidity."""
from __future__ import annotations

import random

from graphcases import named_graph
from ntsp.graph import random_graph
from ntsp.oracle import enumerate_simple_st_paths, path_length
from ntsp.spdag import build_core, distance_tight_subgraph, trim_off_path_components
from ntsp.sssp import distance_labels


def shortest_path_membership(g, s, t):
    """Vertices and edges lying on at least one simple shortest s-t path."""
    labels = distance_labels(g, s, t)
    paths, truncated = enumerate_simple_st_paths(g, s, t)
    assert not truncated
    verts = set()
    edges = set()
    for p in paths:
        if path_length(g, p) != labels.shortest:
            continue
        verts.update(p)
        for a, b in zip(p, p[1:]):
            edges.add(g.edge_index(a, b))
    return verts, edges


def test_tight_flags_knob():
    # the zero spur keeps k distance-tight even though no simple shortest
    # path can reach it
    g, s, t = named_graph("knob")
    tight_v, tight_e = distance_tight_subgraph(g, distance_labels(g, s, t))
    assert tight_v == [True, True, True, True]
    assert tight_e == [True, True, True]


def test_tight_flags_tri():
    g, s, t = named_graph("tri")
    tight_v, tight_e = distance_tight_subgraph(g, distance_labels(g, s, t))
    assert tight_v == [True, False, True]
    assert tight_e == [False, True, False]


def test_tight_flags_quad0():
    g, s, t = named_graph("quad0")
    tight_v, tight_e = distance_tight_subgraph(g, distance_labels(g, s, t))
    assert all(tight_v) and all(tight_e)


def test_trim_removes_knob_spur():
    g, s, t = named_graph("knob")
    spdag = build_core(g, distance_labels(g, s, t))
    assert spdag.in_core == (True, True, True, False)
    assert spdag.core_edge == (True, True, False)


def test_trim_keeps_quad0_whole():
    g, s, t = named_graph("quad0")
    spdag = build_core(g, distance_labels(g, s, t))
    assert all(spdag.in_core) and all(spdag.core_edge)


def test_trim_is_idempotent():
    rng = random.Random(4)
    for _ in range(100):
        n = rng.randint(4, 9)
        m = rng.randint(n - 1, min(18, n * (n - 1) // 2))
        g = random_graph(n, m, 3, 0.5, seed=rng.randrange(1 << 20))
        labels = distance_labels(g, 0, n - 1)
        tight_v, tight_e = distance_tight_subgraph(g, labels)
        once = trim_off_path_components(g, labels, tight_v, tight_e)
        twice = trim_off_path_components(g, labels, list(once[0]), list(once[1]))
        assert once == twice


def test_orientation_pent():
    g, s, t = named_graph("pent")
    spdag = build_core(g, distance_labels(g, s, t))
    assert spdag.arcs == ((0, 1, 1), (0, 2, 2), (1, 2, 1), (1, 3, 2), (2, 3, 1))
    assert spdag.zero_edges == ()


def test_orientation_quad0():
    g, s, t = named_graph("quad0")
    spdag = build_core(g, distance_labels(g, s, t))
    assert spdag.arcs == ((0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1))
    assert spdag.zero_edges == ((1, 2),)
    assert (2, 0) in spdag.succ_all[1] and (1, 0) in spdag.succ_all[2]


def test_membership_matches_enumeration():
    rng = random.Random(5)
    for _ in range(300):
        n = rng.randint(4, 9)
        m = rng.randint(n - 1, min(18, n * (n - 1) // 2))
        zp = rng.choice([0.0, 0.3, 0.6])
        g = random_graph(n, m, 3, zp, seed=rng.randrange(1 << 20))
        s = rng.randrange(n)
        t = rng.randrange(n)
        if s == t:
            continue
        spdag = build_core(g, distance_labels(g, s, t))
        verts, edges = shortest_path_membership(g, s, t)
        assert {v for v in range(n) if spdag.in_core[v]} == verts
        assert {i for i in range(g.m) if spdag.core_edge[i]} == edges


def test_arc_invariants_and_rigidity():
    rng = random.Random(6)
    for _ in range(200):
        n = rng.randint(4, 9)
        m = rng.randint(n - 1, min(18, n * (n - 1) // 2))
        g = random_graph(n, m, 3, 0.4, seed=rng.randrange(1 << 20))
        spdag = build_core(g, distance_labels(g, 0, n - 1))
        for u, v, w in spdag.arcs:
            assert w > 0
            assert spdag.level[v] - spdag.level[u] == w
        for u, v in spdag.zero_edges:
            assert u < v and spdag.level[u] == spdag.level[v]
        # any directed walk costs exactly the level difference
        for _ in range(20):
            v = rng.choice(spdag.core_vertices())
            start = v
            total = 0
            for _ in range(rng.randint(1, 6)):
                nxt = spdag.succ_all[v]
                if not nxt:
                    break
                nb, w = rng.choice(nxt)
                total += w
                v = nb
            assert total == spdag.level[v] - spdag.level[start]
