"""Top-level query: the minimum-length simple s-t path longer than shortest.

The answer is the better of two scans.  The zigzag scan covers paths that
stay inside the core and pay with one backward stretch; the detour scan
covers paths that leave the tree-or-core edge set.  Every other simple s-t
path is at least as long as one of those two minima.
"""
from __future__ import annotations

from dataclasses import dataclass

from .detour import anchor_array, detour_candidates, shortest_detour
from .dominators import core_dominator_trees
from .graph import Graph, GraphError
from .spdag import SpDag, build_core
from .sssp import DistLabels, distance_labels, shortest_path_tree
from .zerostruct import build_cluster_dag, zero_clusters
from .zigzag import CoreContext, zigzag_shortest


class QueryError(ValueError):
    """The query itself is unusable: equal endpoints."""


@dataclass(frozen=True)
class NtspResult:
    """Outcome of one query.  status is "found" or "none"; kind, length and
    path are set only when found."""

    status: str
    shortest: int
    kind: str | None = None
    length: int | None = None
    path: tuple[int, ...] | None = None


def validate_query(g: Graph, s: int, t: int) -> None:
    if not (0 <= s < g.n) or not (0 <= t < g.n):
        raise GraphError(f"endpoint out of range for n={g.n}: s={s} t={t}")
    if s == t:
        raise QueryError("query endpoints must differ")


def distance_stage(g: Graph, s: int, t: int) -> tuple[DistLabels, list[int]]:
    labels = distance_labels(g, s, t)
    parent = shortest_path_tree(g, labels.from_s, s)
    return labels, parent


def structure_stage(g: Graph, labels: DistLabels):
    """Core subgraph, its two dominator trees, and the zero clusters."""
    spdag = build_core(g, labels)
    ts, tt = core_dominator_trees(spdag)
    partition = zero_clusters(spdag, ts, tt)
    return spdag, ts, tt, partition


def crossing_stage(
    g: Graph, labels: DistLabels, spdag: SpDag, parent: list[int]
) -> tuple[list[int], tuple[int, int, int] | None]:
    """Anchors plus the cheapest usable crossing, scanned but not expanded."""
    anchor = anchor_array(g, spdag, parent)
    cands = detour_candidates(g, labels, spdag, parent, anchor)
    best = (cands[0][0], cands[0][1], cands[0][2]) if cands else None
    return anchor, best


def build_core_context(g: Graph, labels: DistLabels) -> CoreContext:
    spdag, ts, tt, partition = structure_stage(g, labels)
    dag = build_cluster_dag(spdag, partition, ts, tt)
    return CoreContext(
        graph=g, labels=labels, spdag=spdag, ts=ts, tt=tt,
        partition=partition, dag=dag,
    )


def next_to_shortest(g: Graph, s: int, t: int) -> NtspResult:
    validate_query(g, s, t)
    labels, parent = distance_stage(g, s, t)
    ctx = build_core_context(g, labels)
    zig = zigzag_shortest(ctx)
    anchor = anchor_array(g, ctx.spdag, parent)
    det = shortest_detour(g, labels, ctx.spdag, parent, anchor)
    pick: tuple[int, list[int], str] | None = None
    if det is not None:
        pick = (det[0], det[1], "detour")
    if zig is not None and (pick is None or zig[0] < pick[0]):
        pick = (zig[0], zig[1], "zigzag")
    if pick is None:
        return NtspResult(status="none", shortest=labels.shortest)
    return NtspResult(
        status="found",
        shortest=labels.shortest,
        kind=pick[2],
        length=pick[0],
        path=tuple(pick[1]),
    )
