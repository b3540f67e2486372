"""The exhaustive reference implementations used to pin everything else."""
from __future__ import annotations

from graphcases import named_graph
from ntsp.dominators import core_dominator_trees
from ntsp.graph import random_graph
from ntsp.oracle import (
    enumerate_simple_st_paths,
    oracle_backward_pairs,
    oracle_immediate_dominator,
    oracle_next_to_shortest,
    oracle_zero_clusters,
    path_length,
)
from ntsp.spdag import build_core
from ntsp.sssp import distance_labels


def plain_succ(spdag):
    return [[b for b, _ in row] for row in spdag.succ_all]


def test_enumerate_tri():
    g, s, t = named_graph("tri")
    paths, truncated = enumerate_simple_st_paths(g, s, t)
    assert not truncated
    assert sorted(paths) == [[0, 1, 2], [0, 2]]


def test_enumerate_truncates_at_cap():
    g = random_graph(7, 21, 3, 0.0, seed=5)
    paths, truncated = enumerate_simple_st_paths(g, 0, 6, cap=3)
    assert truncated
    assert len(paths) == 3


def test_path_length():
    g, s, t = named_graph("tri")
    assert path_length(g, [0, 1, 2]) == 2
    assert path_length(g, [0, 2]) == 1
    assert path_length(g, [0]) == 0


def test_next_to_shortest_reference():
    g, _, _ = named_graph("tri")
    assert oracle_next_to_shortest(g, 0, 2) == 2
    g, _, _ = named_graph("chain")
    assert oracle_next_to_shortest(g, 0, 2) is None


def test_immediate_dominator_by_removal():
    g, s, t = named_graph("pent")
    spdag = build_core(g, distance_labels(g, s, t))
    succ = plain_succ(spdag)
    assert [oracle_immediate_dominator(g.n, succ, s, v) for v in (1, 2, 3)] == [0, 0, 0]
    g, s, t = named_graph("chain")
    spdag = build_core(g, distance_labels(g, s, t))
    succ = plain_succ(spdag)
    assert [oracle_immediate_dominator(g.n, succ, s, v) for v in (1, 2)] == [0, 1]


def test_backward_pairs_pent():
    g, s, t = named_graph("pent")
    spdag = build_core(g, distance_labels(g, s, t))
    assert sorted(oracle_backward_pairs(g, spdag)) == [(2, 1)]


def test_zero_clusters_quad0():
    g, s, t = named_graph("quad0")
    spdag = build_core(g, distance_labels(g, s, t))
    ts, tt = core_dominator_trees(spdag)
    assert oracle_zero_clusters(spdag, ts.idom, tt.idom) == [{0}, {1, 2}, {3}]
