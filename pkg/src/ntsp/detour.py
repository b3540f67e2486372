"""Scan for the best s-t path that leaves the tree-or-core edge set.

Every such path crosses some edge absent from both the shortest-path tree
and the core; crossing (x, y) costs at least from_s[x] + w + to_t[y].  The
scan takes the minimum of that score over the usable edges, and a short
cascade of constructions turns the winning edge into a concrete simple path
of exactly that length.

An edge is usable only when its endpoints hang from different anchors.  The
anchor of v is the root of the maximal tree stretch above v with no core
parent edge; edges inside one such stretch can only close walks that revisit
the shared root, never a cheapest simple path.
"""
from __future__ import annotations

from .graph import Graph
from .spdag import SpDag
from .sssp import DistLabels, tree_path
from .zigzag import RealizationExhausted, climb_path, disjoint_st_pair


def anchor_array(g: Graph, spdag: SpDag, parent: list[int]) -> list[int]:
    """Anchor of every vertex: itself when its tree parent edge is a core
    edge (or it is s), otherwise the anchor of its parent."""
    anch = [-1] * g.n
    anch[spdag.source] = spdag.source
    for v0 in range(g.n):
        if anch[v0] != -1:
            continue
        chain: list[int] = []
        v = v0
        while anch[v] == -1:
            p = parent[v]
            ei = g.edge_index(p, v)
            assert ei is not None
            if spdag.core_edge[ei]:
                anch[v] = v
            else:
                chain.append(v)
                v = p
        for u in chain:
            anch[u] = anch[v]
    return anch


def detour_candidates(
    g: Graph, labels: DistLabels, spdag: SpDag, parent: list[int], anchor: list[int]
) -> list[tuple[int, int, int, int]]:
    """Scored (f, x, y, w) crossings of usable edges, both directions."""
    tree_pairs = set()
    for v, p in enumerate(parent):
        if p >= 0:
            tree_pairs.add((p, v) if p < v else (v, p))
    out: list[tuple[int, int, int, int]] = []
    for ei, (u, v, w) in enumerate(g.edges):
        if spdag.core_edge[ei] or (u, v) in tree_pairs:
            continue
        if anchor[u] == anchor[v]:
            continue
        out.append((labels.from_s[u] + w + labels.to_t[v], u, v, w))
        out.append((labels.from_s[v] + w + labels.to_t[u], v, u, w))
    out.sort()
    return out


def _path_length(g: Graph, path: list[int]) -> int:
    total = 0
    for a, b in zip(path, path[1:]):
        ei = g.edge_index(a, b)
        if ei is None:
            return -1
        total += g.edges[ei][2]
    return total


def _accept(g: Graph, labels: DistLabels, path: list[int] | None, goal: int) -> bool:
    if path is None or len(set(path)) != len(path):
        return False
    if path[0] != labels.source or path[-1] != labels.target:
        return False
    return _path_length(g, path) == goal


def _tight_descent(
    g: Graph, labels: DistLabels, start: int, banned: set[int]
) -> list[int] | None:
    """Fewest-hop walk start to t along edges that spend to_t exactly."""
    if start == labels.target:
        return [start]
    prev = {start: start}
    queue = [start]
    qi = 0
    while qi < len(queue):
        a = queue[qi]
        qi += 1
        for nb, w, _ in g.adj[a]:
            if nb in prev or nb in banned:
                continue
            if labels.to_t[a] != w + labels.to_t[nb]:
                continue
            prev[nb] = a
            if nb == labels.target:
                path = [nb]
                while path[-1] != start:
                    path.append(prev[path[-1]])
                path.reverse()
                return path
            queue.append(nb)
    return None


def _join(*segments: list[int]) -> list[int] | None:
    out: list[int] = []
    seen: set[int] = set()
    for seg in segments:
        if not seg:
            return None
        start = 0
        if out:
            if out[-1] != seg[0]:
                return None
            start = 1
        for v in seg[start:]:
            if v in seen:
                return None
            out.append(v)
            seen.add(v)
    return out


def _realize_crossing(
    g: Graph,
    labels: DistLabels,
    spdag: SpDag,
    parent: list[int],
    anchor: list[int],
    x: int,
    y: int,
    goal: int,
) -> list[int] | None:
    """Simple s-t path of length goal through or around the crossing (x, y).

    Tried in order: the tree walk to x with a tight descent dodging it; the
    disjoint climb pair through both anchors joined by the two tree stems;
    the tree walk plus the far stem; splicing the unconstrained tight walk
    at its last crossing.  Each product is length-checked, so a miss just
    falls through.
    """
    s = labels.source
    p_x = tree_path(parent, s, x)
    p_set = set(p_x)

    # direct: dodge the tree walk entirely
    if y not in p_set:
        desc = _tight_descent(g, labels, y, p_set)
        if desc is not None:
            cand = p_x + desc
            if _accept(g, labels, cand, goal):
                return cand

    r_x, r_y = anchor[x], anchor[y]
    stem_x = tree_path(parent, r_x, x)
    stem_y = tree_path(parent, r_y, y)

    # through both anchors: s climbs to r_x, stems bridge the crossing,
    # r_y climbs out to t
    pair = disjoint_st_pair(spdag, r_x, r_y)
    if pair is not None:
        p1, p2, swapped = pair
        if not swapped:
            cand = _join(p1, stem_x, [x, y], stem_y[::-1], p2)
            if _accept(g, labels, cand, goal):
                return cand

    # tree walk to x, then leave through y's stem and anchor
    cand = _join(p_x, [x, y], stem_y[::-1], climb_path(spdag, r_y, labels.target) or [])
    if _accept(g, labels, cand, goal):
        return cand

    # same shapes with the crossing walked y to x; the length check keeps
    # them only when the reverse direction costs the same
    p_y = tree_path(parent, s, y)
    if x not in set(p_y):
        desc = _tight_descent(g, labels, x, set(p_y))
        if desc is not None:
            cand = p_y + desc
            if _accept(g, labels, cand, goal):
                return cand
    cand = _join(p_y, [y, x], stem_x[::-1], climb_path(spdag, r_x, labels.target) or [])
    if _accept(g, labels, cand, goal):
        return cand

    # splice the unconstrained tight walk at its last touch of the tree walk
    desc = _tight_descent(g, labels, y, set())
    if desc is not None:
        walk = p_x + desc
        touch = [i for i, v in enumerate(desc) if v in p_set]
        if touch:
            q = desc[touch[-1]]
            cand = p_x[: p_x.index(q) + 1] + desc[touch[-1] + 1:]
        else:
            cand = walk
        if _accept(g, labels, cand, goal):
            return cand
    return None


def shortest_detour(
    g: Graph, labels: DistLabels, spdag: SpDag, parent: list[int], anchor: list[int]
) -> tuple[int, list[int]] | None:
    """Best tree-leaving length and a witness path, or None when no edge
    qualifies."""
    cands = detour_candidates(g, labels, spdag, parent, anchor)
    if not cands:
        return None
    goal = cands[0][0]
    for f, x, y, _ in cands:
        if f != goal:
            break
        path = _realize_crossing(g, labels, spdag, parent, anchor, x, y, goal)
        if path is not None:
            return goal, path
    raise RealizationExhausted(f"no crossing at score {goal} expanded to a path")
