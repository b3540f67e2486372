"""Backward-pair search and realization of rise-fall-rise detours in the core.

A candidate is a pair of zero clusters (x side above, y side below) that some
shortest s-t path could visit out of level order: climb to the x cluster,
descend back to the y cluster along core edges, then climb to t.  Candidates
split by how the cluster dominator trees pin them to each other; the open
kind needs no flow test, the pinned kinds are confirmed by small unit-capacity
flows and then turned into concrete paths.
"""
from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field
from itertools import permutations

from .dominators import DomTree
from .graph import Graph
from .spdag import SpDag
from .sssp import DistLabels
from .zerostruct import (
    ClusterDag,
    ZeroPartition,
    backward_feasible,
    build_cluster_dag,
    zero_path_within,
)

BIG = 10**9

KIND_RANK = {"open": 0, "pinned_both": 1, "pinned_s": 2, "pinned_t": 3}


class RealizationExhausted(RuntimeError):
    """No accepted candidate could be expanded into a path; an internal bug."""


@dataclass(frozen=True)
class CoreContext:
    """Everything the backward-pair machinery needs about one query."""

    graph: Graph
    labels: DistLabels
    spdag: SpDag
    ts: DomTree
    tt: DomTree
    partition: ZeroPartition
    dag: ClusterDag


# ---------------------------------------------------------------------------
# unit-capacity max flow with vertex splitting


@dataclass
class FlowNetwork:
    """Directed flow network over split nodes; labels map back to vertices.

    Node i occupies split nodes 2i (in) and 2i+1 (out) joined by an internal
    arc of the node's capacity.  labels[i] is the caller's vertex id, or a
    negative marker for virtual endpoints.
    """

    labels: list[int]
    caps: list[int]
    source: int
    sink: int
    arc_to: list[int] = field(default_factory=list)
    arc_cap: list[int] = field(default_factory=list)
    arc_flow: list[int] = field(default_factory=list)
    adj: list[list[int]] = field(default_factory=list)

    def _add_arc(self, a: int, b: int, cap: int) -> None:
        self.adj[a].append(len(self.arc_to))
        self.arc_to.append(b)
        self.arc_cap.append(cap)
        self.arc_flow.append(0)
        self.adj[b].append(len(self.arc_to))
        self.arc_to.append(a)
        self.arc_cap.append(0)
        self.arc_flow.append(0)

    @classmethod
    def build(
        cls,
        labels: list[int],
        caps: list[int],
        edges: list[tuple[int, int, int]],
        source: int,
        sink: int,
    ) -> FlowNetwork:
        net = cls(labels=labels, caps=caps, source=source, sink=sink)
        net.adj = [[] for _ in range(2 * len(labels))]
        for i, c in enumerate(caps):
            net._add_arc(2 * i, 2 * i + 1, c)
        for a, b, cap in edges:
            net._add_arc(2 * a + 1, 2 * b, cap)
        return net


@dataclass
class FlowOutcome:
    ok: bool
    achieved: int
    rounds: int
    unit_paths: list[list[int]]  # real vertex ids, virtual endpoints stripped


_audit_sink: list | None = None


@contextmanager
def audit_flows():
    """Collect (network, k, outcome) for every decision made inside the block."""
    global _audit_sink
    prev = _audit_sink
    _audit_sink = []
    try:
        yield _audit_sink
    finally:
        _audit_sink = prev


def max_flow_at_least(net: FlowNetwork, k: int) -> FlowOutcome:
    """Decide whether k units fit, with at most k augmentation rounds.

    Augments along breadth-first shortest residual paths; every round moves
    at least one unit, so k rounds settle the question.  The decomposition of
    whatever flow was found comes back as unit paths.
    """
    assert k in (2, 3)
    src = 2 * net.source
    dst = 2 * net.sink + 1
    total = 0
    rounds = 0
    nn = 2 * len(net.labels)
    while total < k:
        rounds += 1
        assert rounds <= k, "augmentation rounds exceeded the contract"
        via = [-1] * nn
        via[src] = -2
        queue = [src]
        qi = 0
        while qi < len(queue) and via[dst] == -1:
            x = queue[qi]
            qi += 1
            for aid in net.adj[x]:
                y = net.arc_to[aid]
                if via[y] == -1 and net.arc_cap[aid] - net.arc_flow[aid] > 0:
                    via[y] = aid
                    queue.append(y)
        if via[dst] == -1:
            break
        bottleneck = BIG
        x = dst
        while x != src:
            aid = via[x]
            bottleneck = min(bottleneck, net.arc_cap[aid] - net.arc_flow[aid])
            x = net.arc_to[aid ^ 1]
        x = dst
        while x != src:
            aid = via[x]
            net.arc_flow[aid] += bottleneck
            net.arc_flow[aid ^ 1] -= bottleneck
            x = net.arc_to[aid ^ 1]
        total += bottleneck

    outcome = FlowOutcome(ok=total >= k, achieved=total, rounds=rounds, unit_paths=[])
    outcome.unit_paths = _decompose_units(net, total)
    if _audit_sink is not None:
        _audit_sink.append((net, k, outcome))
    return outcome


def _decompose_units(net: FlowNetwork, total: int) -> list[list[int]]:
    """Split the flow into unit source-sink paths, splicing out stray loops."""
    src = 2 * net.source
    dst = 2 * net.sink + 1
    out: list[list[int]] = []
    for _ in range(total):
        walk = [src]
        seen_at = {src: 0}
        x = in_walk = src
        while x != dst:
            for aid in net.adj[x]:
                if aid % 2 == 0 and net.arc_flow[aid] > 0:
                    net.arc_flow[aid] -= 1
                    net.arc_flow[aid ^ 1] += 1
                    y = net.arc_to[aid]
                    break
            else:
                raise AssertionError("flow conservation violated")
            if y in seen_at:
                cut = seen_at[y]
                for z in walk[cut + 1 :]:
                    del seen_at[z]
                del walk[cut + 1 :]
            else:
                walk.append(y)
                seen_at[y] = len(walk) - 1
            x = y
        del in_walk
        # collapse split pairs to vertices, strip virtual endpoints
        real: list[int] = []
        for node in walk:
            v = net.labels[node // 2]
            if v < 0:
                continue
            if not real or real[-1] != v:
                real.append(v)
        out.append(real)
    return out


def max_flow_value(net: FlowNetwork) -> int:
    """Full max flow, unbounded rounds.  Reference use only."""
    src = 2 * net.source
    dst = 2 * net.sink + 1
    nn = 2 * len(net.labels)
    total = 0
    while True:
        via = [-1] * nn
        via[src] = -2
        queue = [src]
        qi = 0
        while qi < len(queue) and via[dst] == -1:
            x = queue[qi]
            qi += 1
            for aid in net.adj[x]:
                y = net.arc_to[aid]
                if via[y] == -1 and net.arc_cap[aid] - net.arc_flow[aid] > 0:
                    via[y] = aid
                    queue.append(y)
        if via[dst] == -1:
            return total
        bottleneck = BIG
        x = dst
        while x != src:
            aid = via[x]
            bottleneck = min(bottleneck, net.arc_cap[aid] - net.arc_flow[aid])
            x = net.arc_to[aid ^ 1]
        x = dst
        while x != src:
            aid = via[x]
            net.arc_flow[aid] += bottleneck
            net.arc_flow[aid ^ 1] -= bottleneck
            x = net.arc_to[aid ^ 1]
        total += bottleneck


def vertex_flow_net(
    spdag: SpDag,
    sources: list[tuple[int, int]],
    sinks: list[tuple[int, int]],
    banned: set[int] = frozenset(),
    cap_override: dict[int, int] | None = None,
    descending: bool = False,
) -> FlowNetwork:
    """Unit-capacity network over core vertices following the monotone arcs.

    sources/sinks are (vertex, capacity) pairs hung off virtual endpoints.
    cap_override adjusts individual vertex capacities from the default 1.
    descending walks the arcs in reverse (toward s instead of toward t).
    """
    ids: dict[int, int] = {}
    labels: list[int] = []
    caps: list[int] = []

    def node(v: int, cap: int) -> int:
        if v not in ids:
            ids[v] = len(labels)
            labels.append(v)
            caps.append(cap)
        return ids[v]

    src = node(-1, BIG)
    dst = node(-2, BIG)
    override = cap_override or {}
    for v in range(spdag.n):
        if spdag.in_core[v] and v not in banned:
            node(v, override.get(v, 1))
    edges: list[tuple[int, int, int]] = []
    adj = spdag.pred_all if descending else spdag.succ_all
    for v in range(spdag.n):
        if not spdag.in_core[v] or v in banned:
            continue
        for nb, _ in adj[v]:
            if spdag.in_core[nb] and nb not in banned:
                edges.append((ids[v], ids[nb], BIG))
    for v, cap in sources:
        caps[ids[v]] = max(caps[ids[v]], cap)
        edges.append((src, ids[v], cap))
    for v, cap in sinks:
        caps[ids[v]] = max(caps[ids[v]], cap)
        edges.append((ids[v], dst, cap))
    return FlowNetwork.build(labels, caps, edges, src, dst)


def cluster_flow_net(
    dag: ClusterDag,
    sources: list[tuple[int, int]],
    sinks: list[tuple[int, int]],
    banned: set[int] = frozenset(),
    cap_override: dict[int, int] | None = None,
) -> FlowNetwork:
    ids: dict[int, int] = {}
    labels: list[int] = []
    caps: list[int] = []

    def node(v: int, cap: int) -> int:
        if v not in ids:
            ids[v] = len(labels)
            labels.append(v)
            caps.append(cap)
        return ids[v]

    src = node(-1, BIG)
    dst = node(-2, BIG)
    override = cap_override or {}
    for c in range(dag.count):
        if c not in banned:
            node(c, override.get(c, 1))
    edges: list[tuple[int, int, int]] = []
    for c in range(dag.count):
        if c in banned:
            continue
        for b, _, _, _ in dag.succ[c]:
            if b not in banned:
                edges.append((ids[c], ids[b], BIG))
    for v, cap in sources:
        caps[ids[v]] = max(caps[ids[v]], cap)
        edges.append((src, ids[v], cap))
    for v, cap in sinks:
        caps[ids[v]] = max(caps[ids[v]], cap)
        edges.append((ids[v], dst, cap))
    return FlowNetwork.build(labels, caps, edges, src, dst)


# ---------------------------------------------------------------------------
# deterministic path primitives


def climb_path(
    spdag: SpDag, start: int, goal: int, banned: set[int] = frozenset(), descending: bool = False
) -> list[int] | None:
    """Fewest-hop monotone path start to goal, smallest ids first, or None."""
    if start == goal:
        return [start]
    adj = spdag.pred_all if descending else spdag.succ_all
    prev = {start: start}
    queue = [start]
    qi = 0
    while qi < len(queue):
        x = queue[qi]
        qi += 1
        for nb, _ in adj[x]:
            if nb not in prev and nb not in banned and spdag.in_core[nb]:
                prev[nb] = x
                if nb == goal:
                    path = [goal]
                    while path[-1] != start:
                        path.append(prev[path[-1]])
                    path.reverse()
                    return path
                queue.append(nb)
    return None


def cluster_route(
    dag: ClusterDag, start: int, goal: int, banned: set[int] = frozenset()
) -> list[int] | None:
    if start == goal:
        return [start]
    prev = {start: start}
    queue = [start]
    qi = 0
    while qi < len(queue):
        x = queue[qi]
        qi += 1
        for b, _, _, _ in dag.succ[x]:
            if b not in prev and b not in banned:
                prev[b] = x
                if b == goal:
                    path = [goal]
                    while path[-1] != start:
                        path.append(prev[path[-1]])
                    path.reverse()
                    return path
                queue.append(b)
    return None


def _arc_witness(dag: ClusterDag, a: int, b: int) -> tuple[int, int]:
    for head, _, u, v in dag.succ[a]:
        if head == b:
            return u, v
    raise AssertionError(f"no cluster arc {a}->{b}")


def expand_comp_walk(
    partition: ZeroPartition,
    dag: ClusterDag,
    comps: list[int],
    dirs: list[bool],
    enter: int,
    exit_: int,
) -> list[int]:
    """Expand a cluster walk to vertices, stitching zero paths inside clusters.

    dirs[i] tells whether the arc between comps[i] and comps[i+1] points
    forward; a backward step traverses the witness edge against its arc.
    """
    assert len(dirs) == len(comps) - 1
    cur = enter
    out: list[int] = []
    for i, fwd in enumerate(dirs):
        if fwd:
            u, v = _arc_witness(dag, comps[i], comps[i + 1])
            hop_from, hop_to = u, v
        else:
            u, v = _arc_witness(dag, comps[i + 1], comps[i])
            hop_from, hop_to = v, u
        seg = zero_path_within(partition, cur, hop_from)
        out.extend(seg)
        cur = hop_to
    out.extend(zero_path_within(partition, cur, exit_))
    return out


def forward_join(*segments: list[int]) -> list[int]:
    """Concatenate monotone segments, splicing out any revisit loop.

    Every loop in a purely forward walk sits at one level, so cutting it
    never changes the length.  Junction vertices must match up.
    """
    walk: list[int] = []
    for seg in segments:
        assert seg, "empty segment"
        if walk:
            assert walk[-1] == seg[0], "segments do not join"
            walk.extend(seg[1:])
        else:
            walk.extend(seg)
    out: list[int] = []
    at: dict[int, int] = {}
    for v in walk:
        if v in at:
            cut = at[v]
            for z in out[cut + 1 :]:
                del at[z]
            del out[cut + 1 :]
        else:
            out.append(v)
            at[v] = len(out) - 1
    return out


def strict_join(*segments: list[int]) -> list[int] | None:
    """Concatenate, requiring global simplicity; None when vertices repeat."""
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


def core_step_weight(spdag: SpDag, a: int, b: int) -> int | None:
    """Weight of the core edge between a and b, either direction, else None."""
    for nb, w in spdag.succ_all[a]:
        if nb == b:
            return w
    for nb, w in spdag.pred_all[a]:
        if nb == b:
            return w
    return None


def verify_zigzag(spdag: SpDag, path: list[int], delta: int) -> bool:
    """Simple s-t path in the core, correct length, single descending stretch."""
    if len(path) < 2 or path[0] != spdag.source or path[-1] != spdag.target:
        return False
    if len(set(path)) != len(path):
        return False
    total = 0
    pattern: list[str] = []
    for a, b in zip(path, path[1:]):
        w = core_step_weight(spdag, a, b)
        if w is None:
            return False
        total += w
        if w == 0:
            continue
        pattern.append("f" if spdag.level[b] > spdag.level[a] else "b")
    dst = spdag.level[spdag.target]
    if total != dst + 2 * delta:
        return False
    drops = [i for i, c in enumerate(pattern) if c == "b"]
    if not drops:
        return False
    lo, hi = drops[0], drops[-1]
    return all(c == "b" for c in pattern[lo : hi + 1])


# ---------------------------------------------------------------------------
# candidates


@dataclass(frozen=True)
class BackwardCandidate:
    """A cluster pair that might close an optimal backward detour."""

    kind: str  # open / pinned_both / pinned_s / pinned_t
    comp_x: int
    comp_y: int
    delta: int


@dataclass
class CandidateNetwork:
    """Flow network over the span between a candidate's two clusters.

    Narrow interior corridors (components touching exactly one vertex on each
    side) are replaced by unit arcs; conduits maps such an arc back to the
    concrete corridor path.  h_succ retains the uncontracted span for repair
    searches, and h_edges its directed edge set.
    """

    net: FlowNetwork
    zy: frozenset[int]
    zx: frozenset[int]
    conduits: dict[tuple[int, int], list[int]]
    h_succ: dict[int, list[int]]
    h_edges: frozenset[tuple[int, int]]


def build_candidate_network(ctx: CoreContext, cand: BackwardCandidate) -> CandidateNetwork:
    spdag, partition, dag = ctx.spdag, ctx.partition, ctx.dag
    cy, cx = cand.comp_y, cand.comp_x
    zy = frozenset(partition.members[cy])
    zx = frozenset(partition.members[cx])
    verts: set[int] = set(zy) | set(zx)
    for c in range(dag.count):
        if dag.precedes(cy, c) and dag.precedes(c, cx):
            verts.update(partition.members[c])

    h_succ: dict[int, list[int]] = {v: [] for v in verts}
    for v in verts:
        for nb, _ in spdag.succ_pos[v]:
            if nb in verts:
                h_succ[v].append(nb)
    for u, v in spdag.zero_edges:
        if u in verts and v in verts:
            if (u in zy and v in zy) or (u in zx and v in zx):
                continue
            h_succ[u].append(v)
            h_succ[v].append(u)
    for v in verts:
        h_succ[v].sort()
    h_edges = frozenset((a, b) for a in h_succ for b in h_succ[a])

    # interior components; narrow ones become unit-capacity corridor arcs
    interior = sorted(verts - zy - zx)
    comp_of: dict[int, int] = {}
    comps: list[list[int]] = []
    for seed in interior:
        if seed in comp_of:
            continue
        cid = len(comps)
        comp_of[seed] = cid
        group = [seed]
        stack = [seed]
        while stack:
            x = stack.pop()
            for y in h_succ[x]:
                if y in zy or y in zx or y in comp_of:
                    continue
                comp_of[y] = cid
                group.append(y)
                stack.append(y)
        comps.append(sorted(group))

    conduits: dict[tuple[int, int], list[int]] = {}
    replaced: set[int] = set()
    for cid, group in enumerate(comps):
        gset = set(group)
        touch_y = sorted({b for v in group for b in h_succ[v] if b in zy}
                         | {a for a in zy for b in h_succ[a] if b in gset})
        touch_x = sorted({b for v in group for b in h_succ[v] if b in zx}
                         | {a for a in zx for b in h_succ[a] if b in gset})
        if len(touch_y) != 1 or len(touch_x) != 1:
            continue
        vy, ux = touch_y[0], touch_x[0]
        corridor = _directed_through(h_succ, gset, vy, ux)
        if corridor is None:
            continue  # no usable direction, capacity would be spurious
        conduits[(vy, ux)] = corridor
        replaced.add(cid)

    y_cap = 1 if cand.kind == "pinned_s" else 2
    x_cap = 1 if cand.kind == "pinned_t" else 2
    ids: dict[int, int] = {}
    labels: list[int] = []
    caps: list[int] = []

    def node(v: int, cap: int) -> int:
        if v not in ids:
            ids[v] = len(labels)
            labels.append(v)
            caps.append(cap)
        return ids[v]

    src = node(-1, BIG)
    dst = node(-2, BIG)
    for v in sorted(zy):
        node(v, y_cap)
    for v in sorted(zx):
        node(v, x_cap)
    for v in interior:
        if comp_of[v] not in replaced:
            node(v, 1)
    edges: list[tuple[int, int, int]] = []
    for v in sorted(ids):
        if v < 0:
            continue
        for b in h_succ[v]:
            if b in ids:
                edges.append((ids[v], ids[b], BIG))
    for (vy, ux), _ in sorted(conduits.items()):
        edges.append((ids[vy], ids[ux], 1))
    for v in sorted(zy):
        edges.append((src, ids[v], BIG))
    for v in sorted(zx):
        edges.append((ids[v], dst, BIG))
    net = FlowNetwork.build(labels, caps, edges, src, dst)
    return CandidateNetwork(net=net, zy=zy, zx=zx, conduits=conduits, h_succ=h_succ, h_edges=h_edges)


def _directed_through(
    h_succ: dict[int, list[int]], allowed: set[int], start: int, goal: int
) -> list[int] | None:
    prev = {start: start}
    queue = [start]
    qi = 0
    while qi < len(queue):
        x = queue[qi]
        qi += 1
        for y in h_succ[x]:
            if y == goal:
                prev[y] = x
                path = [goal]
                while path[-1] != start:
                    path.append(prev[path[-1]])
                path.reverse()
                return path
            if y in allowed and y not in prev:
                prev[y] = x
                queue.append(y)
    return None


def candidate_flow_quota(cand: BackwardCandidate) -> int:
    return 3 if cand.kind == "pinned_both" else 2


def best_open_pair(ctx: CoreContext) -> BackwardCandidate | None:
    dag = ctx.dag
    best: tuple[int, int, int] | None = None
    for cx in range(dag.count):
        gate_in = dag.idom_s.idom[cx]
        if gate_in == -1:
            continue
        for cy in range(dag.count):
            delta = dag.comp_level[cx] - dag.comp_level[cy]
            if delta <= 0:
                continue
            gate_out = dag.idom_t.idom[cy]
            if gate_out == -1:
                continue
            if dag.idom_s.dominates(cy, cx) or dag.idom_t.dominates(cx, cy):
                continue
            if not (
                dag.precedes(gate_in, cy)
                and dag.precedes(cy, cx)
                and dag.precedes(cx, gate_out)
            ):
                continue
            key = (delta, cx, cy)
            if best is None or key < best:
                best = key
    if best is None:
        return None
    return BackwardCandidate("open", comp_x=best[1], comp_y=best[2], delta=best[0])


def pinned_candidate_pairs(ctx: CoreContext) -> list[BackwardCandidate]:
    """Cluster pairs pinned through a dominator relation, cheapest first."""
    dag, partition = ctx.dag, ctx.partition
    out: list[BackwardCandidate] = []
    for cx in range(dag.count):
        cy = dag.idom_s.idom[cx]
        if cy == -1:
            continue
        delta = dag.comp_level[cx] - dag.comp_level[cy]
        if delta <= 0:
            continue
        if dag.idom_t.idom[cy] == cx:
            rep_x = partition.representative(cx)
            rep_y = partition.representative(cy)
            if backward_feasible(rep_x, rep_y, partition, dag, ctx.ts, ctx.tt):
                out.append(BackwardCandidate("pinned_both", cx, cy, delta))
        elif not dag.idom_t.dominates(cx, cy):
            out.append(BackwardCandidate("pinned_s", cx, cy, delta))
    for cy in range(dag.count):
        cx = dag.idom_t.idom[cy]
        if cx == -1:
            continue
        delta = dag.comp_level[cx] - dag.comp_level[cy]
        if delta <= 0:
            continue
        if dag.idom_s.idom[cx] == cy:
            continue  # mutual pins were collected above
        if not dag.idom_s.dominates(cy, cx):
            out.append(BackwardCandidate("pinned_t", cx, cy, delta))
    out.sort(key=lambda c: (c.delta, KIND_RANK[c.kind], c.comp_x, c.comp_y))
    return out


def best_backward_pair(
    ctx: CoreContext,
) -> tuple[int | None, list[tuple[BackwardCandidate, CandidateNetwork | None, FlowOutcome | None]]]:
    """Smallest confirmed drop plus every candidate achieving it, in try order.

    Pinned candidates are scanned cheapest first and flow-tested only while
    they could still beat the incumbent; the first confirmation settles the
    optimum, after which the ties are gathered for the realization fallback
    chain.  Open candidates need no confirmation.
    """
    open_best = best_open_pair(ctx)
    incumbent = open_best.delta if open_best else None
    pinned = pinned_candidate_pairs(ctx)
    confirmed: dict[tuple[int, int, str], tuple[CandidateNetwork, FlowOutcome]] = {}
    for cand in pinned:
        if incumbent is not None and cand.delta >= incumbent:
            break
        cn = build_candidate_network(ctx, cand)
        res = max_flow_at_least(cn.net, candidate_flow_quota(cand))
        if res.ok:
            incumbent = cand.delta
            confirmed[(cand.comp_x, cand.comp_y, cand.kind)] = (cn, res)
            break
    if incumbent is None:
        return None, []
    finalists: list[tuple[BackwardCandidate, CandidateNetwork | None, FlowOutcome | None]] = []
    if open_best is not None and open_best.delta == incumbent:
        finalists.append((open_best, None, None))
    for cand in pinned:
        if cand.delta != incumbent:
            continue
        key = (cand.comp_x, cand.comp_y, cand.kind)
        if key in confirmed:
            cn, res = confirmed[key]
        else:
            cn = build_candidate_network(ctx, cand)
            res = max_flow_at_least(cn.net, candidate_flow_quota(cand))
            if not res.ok:
                continue
        finalists.append((cand, cn, res))
    finalists.sort(key=lambda item: (KIND_RANK[item[0].kind], item[0].comp_x, item[0].comp_y))
    return incumbent, finalists


# ---------------------------------------------------------------------------
# realization


def _expand_conduit_units(cn: CandidateNetwork, units: list[list[int]]) -> list[list[int]]:
    """Replace corridor arcs in flow unit paths by their concrete corridors.

    Each corridor may back at most one unit; a pair that is also a plain edge
    stays an edge once the corridor is spent.
    """
    spent: set[tuple[int, int]] = set()
    out: list[list[int]] = []
    for unit in units:
        path = [unit[0]]
        for a, b in zip(unit, unit[1:]):
            if (a, b) in cn.conduits and (a, b) not in spent:
                spent.add((a, b))
                path.extend(cn.conduits[(a, b)][1:])
            else:
                assert (a, b) in cn.h_edges
                path.append(b)
        out.append(path)
    return out


def _trim_unit(cn: CandidateNetwork, unit: list[int]) -> list[int]:
    """Clip a unit path to its last y-cluster vertex and first x-cluster vertex."""
    i0 = max(i for i, v in enumerate(unit) if v in cn.zy)
    i1 = next(i for i in range(i0, len(unit)) if unit[i] in cn.zx)
    return unit[i0 : i1 + 1]


def _three_links_worker(
    ctx: CoreContext, wa: int, wb: int, wc: int, to_target: bool
) -> tuple[str, list[int], list[int]] | None:
    """Connect three same-cluster vertices to one side of the core.

    Ascending side (to_target False): builds a main path s->wa and an all-zero
    cross path wc->wb, vertex-disjoint apart from unavoidable overlaps that the
    caller re-checks.  Returns ("A", main, cross), or ("B", main, cross) when
    the construction lands on s->wb with cross wc->wa instead.  Descending side
    mirrors everything toward t; paths come back in the descending direction
    (main t->wa) for the caller to reorient.
    """
    spdag, partition = ctx.spdag, ctx.partition
    tree = ctx.tt if to_target else ctx.ts
    root = spdag.target if to_target else spdag.source
    p = tree.idom[wa]
    if p == -1:
        return None
    walk = climb_path(spdag, p, root, descending=not to_target)
    if walk is None:
        return None
    trunk = walk[::-1]  # root .. p
    net = vertex_flow_net(
        spdag, [(p, 2)], [(wa, 1), (wb, 1)], descending=to_target
    )
    res = max_flow_at_least(net, 2)
    if not res.ok:
        return None
    unit_a = next((u for u in res.unit_paths if u[-1] == wa), None)
    unit_b = next((u for u in res.unit_paths if u[-1] == wb), None)
    if unit_a is None or unit_b is None:
        return None
    main_a = forward_join(trunk, unit_a)
    main_b = forward_join(trunk, unit_b)
    if main_a is None or main_b is None:
        return None
    if wc == wb:
        return "A", main_a, [wb]
    seen_a = set(unit_a)
    seen_b = set(unit_b)
    if wc in seen_a:
        return "B", main_b, unit_a[unit_a.index(wc):]
    if wc in seen_b:
        return "A", main_a, unit_b[unit_b.index(wc):]
    z = zero_path_within(partition, wb, wc)
    if z is None:
        return None
    hits = [i for i, v in enumerate(z) if v in seen_a or v in seen_b]
    if not hits:
        return "A", main_a, z[::-1]
    q = z[hits[-1]]
    if q in seen_a:
        # wb's zero walk last meets the wa unit: swap roles
        cross = z[hits[-1]:][::-1] + unit_a[unit_a.index(q) + 1:]
        if any(spdag.level[v] != spdag.level[wc] for v in cross):
            return None
        return "B", main_b, cross
    cross = z[hits[-1]:][::-1] + unit_b[unit_b.index(q) + 1:]
    if any(spdag.level[v] != spdag.level[wc] for v in cross):
        return None
    return "A", main_a, cross


def _realize_open(ctx: CoreContext, cand: BackwardCandidate) -> list[int] | None:
    """Expand an open pair: reach the y cluster twice, then descend once.

    Walks a cluster route from the y side to the target, picks a revisit
    cluster v on it at the y level, and closes with a 2-unit cluster flow
    from {source, v} to the x cluster.  The concatenated cluster walk rises
    to x, falls back to v, and follows the route out.
    """
    spdag, partition, dag = ctx.spdag, ctx.partition, ctx.dag
    cx, cy = cand.comp_x, cand.comp_y
    route = cluster_route(dag, cy, dag.target_comp, banned={cx})
    if route is None:
        return None
    gate = dag.idom_s.idom[cx]
    picks = [
        i
        for i, c in enumerate(route)
        if dag.comp_level[c] == dag.comp_level[cy]
        and dag.precedes(gate, c)
        and dag.precedes(c, cx)
    ]
    for i in reversed(picks):
        v = route[i]
        tail = route[i:]
        net = cluster_flow_net(
            dag, [(dag.source_comp, 1), (v, 1)], [(cx, 2)], banned=set(tail[1:])
        )
        res = max_flow_at_least(net, 2)
        if not res.ok:
            continue
        s1 = next((u for u in res.unit_paths if u[0] == dag.source_comp), None)
        s2 = next((u for u in res.unit_paths if u[0] == v), None)
        if s1 is None or s2 is None:
            continue
        comps = s1 + s2[::-1][1:] + tail[1:]
        if len(set(comps)) != len(comps):
            continue
        dirs = (
            [True] * (len(s1) - 1)
            + [False] * (len(s2) - 1)
            + [True] * (len(tail) - 1)
        )
        path = expand_comp_walk(partition, dag, comps, dirs, spdag.source, spdag.target)
        if path is not None and verify_zigzag(spdag, path, cand.delta):
            return path
    return None


def _realize_pinned_both(
    ctx: CoreContext, cand: BackwardCandidate, cn: CandidateNetwork, res: FlowOutcome
) -> list[int] | None:
    units = _expand_conduit_units(cn, res.unit_paths)
    units = [_trim_unit(cn, u) for u in units]
    pool: list[list[int]] = []
    for u in units:
        if u not in pool:
            pool.append(u)
    # wide augmenting rounds can hand back the same walk twice and starve a
    # slot; direct cluster-to-cluster walks refill the pool with fresh ones
    interiors = {v for v in cn.h_succ if v not in cn.zy and v not in cn.zx}
    for y in sorted(cn.zy):
        for x in sorted(cn.zx):
            if len(pool) >= 8:
                break
            walk = _directed_through(cn.h_succ, interiors, y, x)
            if walk is not None and walk not in pool:
                pool.append(walk)
    for trio in _unit_trios(ctx, cn, pool):
        path = _assemble_pinned_both(ctx, cand, trio)
        if path is not None:
            return path
    return None


def _unit_trios(ctx, cn, units):
    for a, b, c in permutations(range(len(units)), 3):
        yield units[a], units[b], units[c]
    yield from _repaired_trios(ctx, cn, units, flip=False)
    yield from _repaired_trios(ctx, cn, units, flip=True)


def _assemble_pinned_both(
    ctx: CoreContext, cand: BackwardCandidate, trio
) -> list[int] | None:
    """Try one slot assignment of three cluster-to-cluster unit paths.

    Slots follow the zigzag order: P1 carries the first ascent, P2 the final
    one, P3 is traversed backward as the descent.  Both cluster crossings are
    stitched with the three-way link construction; its B shape on the y side
    is the same arrangement under another slot order, so it is skipped here.
    """
    spdag = ctx.spdag
    p1, p2, p3 = trio
    y1, x1 = p1[0], p1[-1]
    y2, x2 = p2[0], p2[-1]
    y3, x3 = p3[0], p3[-1]
    if y1 == y2 or x2 == x3 or y3 == y1:
        return None
    ylinks = _three_links_worker(ctx, y1, y2, y3, to_target=False)
    if ylinks is None or ylinks[0] != "A":
        return None
    _, q1, q2 = ylinks
    if x1 == x2:
        r = climb_path(spdag, x3, spdag.target, banned={x1})
        if r is None:
            return None
        path = strict_join(q1, p1, p2[::-1], q2[::-1], p3, r)
    else:
        xlinks = _three_links_worker(ctx, x2, x3, x1, to_target=True)
        if xlinks is None:
            return None
        shape, main_w, cross_w = xlinks
        if shape == "A":
            path = strict_join(q1, p1, cross_w, p3[::-1], q2, p2, main_w[::-1])
        else:
            path = strict_join(q1, p1, cross_w, p2[::-1], q2[::-1], p3, main_w[::-1])
    if path is not None and verify_zigzag(spdag, path, cand.delta):
        return path
    return None


def _h_pred(cn: CandidateNetwork) -> dict[int, list[int]]:
    pred: dict[int, list[int]] = {v: [] for v in cn.h_succ}
    for a in cn.h_succ:
        for b in cn.h_succ[a]:
            pred[b].append(a)
    for v in pred:
        pred[v].sort()
    return pred


def _repaired_trios(ctx, cn, units, flip):
    """Trios obtained by rerouting one of two endpoint-duplicate unit paths.

    When the flow hands back two units with the same endpoint pair, the span
    component carrying them has a spare terminal; a directed walk Q from that
    terminal down to the shared far endpoint crosses one of the pair first,
    and grafting Q onto its tail yields a path with a fresh near endpoint.
    If Q brushes the third path, the graft is only sound when its last such
    touch is the third path's own start, rerouting from there instead.
    flip mirrors the whole search to duplicates on the x side.
    """
    if flip:
        paths = [u[::-1] for u in units]
        start_side = cn.zx
        succ = _h_pred(cn)
    else:
        paths = [list(u) for u in units]
        start_side = cn.zy
        succ = cn.h_succ
    zall = cn.zy | cn.zx
    und: dict[int, set[int]] = {v: set() for v in cn.h_succ}
    for a in cn.h_succ:
        for b in cn.h_succ[a]:
            und[a].add(b)
            und[b].add(a)
    for i in range(len(paths)):
        for j in range(i + 1, len(paths)):
            if paths[i][0] != paths[j][0] or paths[i][-1] != paths[j][-1]:
                continue
            y_s, x_s = paths[i][0], paths[i][-1]
            seeds = [v for v in paths[i][1:-1] + paths[j][1:-1] if v not in zall]
            if not seeds:
                continue
            comp: set[int] = set()
            stack = list(seeds)
            while stack:
                v = stack.pop()
                if v in comp:
                    continue
                comp.add(v)
                for w in und[v]:
                    if w not in zall and w not in comp:
                        stack.append(w)
            terms = sorted(
                z for z in start_side if z != y_s and und[z] & comp
            )
            pa_set, pb_set = set(paths[i]), set(paths[j])
            for fresh in terms:
                q_walk = _directed_through(succ, comp, fresh, x_s)
                if q_walk is None:
                    continue
                k = next(
                    (idx for idx in range(1, len(q_walk)) if q_walk[idx] in pa_set or q_walk[idx] in pb_set),
                    None,
                )
                if k is None:
                    continue
                q = q_walk[k]
                hit_i = i if q in pa_set else j
                hit = paths[hit_i]
                other = paths[j if hit_i == i else i]
                graft = hit[hit.index(q) + 1:]
                for t_i in range(len(paths)):
                    if t_i in (i, j):
                        continue
                    third = paths[t_i]
                    tset = set(third)
                    pre = [idx for idx in range(k) if q_walk[idx] in tset]
                    if not pre:
                        repaired = q_walk[: k + 1] + graft
                    elif q_walk[pre[-1]] == third[0]:
                        repaired = q_walk[pre[-1]: k + 1] + graft
                    else:
                        continue
                    base = [other, repaired, third]
                    if flip:
                        base = [p[::-1] for p in base]
                    for a, b, c in permutations(range(3)):
                        yield base[a], base[b], base[c]


def _cluster_routes(dag: ClusterDag, start: int, goal: int, banned: set[int], limit: int = 3):
    routes: list[list[int]] = []
    extra: set[int] = set()
    while len(routes) < limit:
        route = cluster_route(dag, start, goal, banned=banned | extra)
        if route is None or any(route == r for r in routes):
            break
        routes.append(route)
        if len(route) < 2:
            break
        extra.add(route[1])
    return routes


def _realize_pinned_s(
    ctx: CoreContext, cand: BackwardCandidate, cn: CandidateNetwork, res: FlowOutcome
) -> list[int] | None:
    """Expand an s-pinned pair: descend once into the y cluster, leave once.

    The exit route from the y cluster to t avoids the x cluster (it exists by
    the non-domination side condition).  A revisit vertex v on its level-Ly
    prefix splits the route; a 2-unit vertex flow from {s, v} into the x
    cluster supplies the two ascents, and the route tail finishes the walk.
    """
    spdag, partition, dag = ctx.spdag, ctx.partition, ctx.dag
    cx, cy = cand.comp_x, cand.comp_y
    level_y = dag.comp_level[cy]
    units = _expand_conduit_units(cn, res.unit_paths)
    units = [_trim_unit(cn, u) for u in units]
    entries: list[int] = []
    for u in units:
        if u[0] not in entries:
            entries.append(u[0])
    rep = partition.representative(cy)
    if rep not in entries:
        entries.append(rep)
    exits: list[int] = []
    for u in units:
        if u[-1] not in exits:
            exits.append(u[-1])
    low = min(cn.zx)
    if low not in exits:
        exits.append(low)
    for route in _cluster_routes(dag, cy, dag.target_comp, banned={cx}):
        for entry in entries:
            expanded = expand_comp_walk(
                partition, dag, route, [True] * (len(route) - 1), entry, spdag.target
            )
            if expanded is None:
                continue
            prefix_end = 0
            while (
                prefix_end + 1 < len(expanded)
                and spdag.level[expanded[prefix_end + 1]] == level_y
            ):
                prefix_end += 1
            v_picks = [expanded[idx] for idx in range(prefix_end, -1, -1)][:8]
            for v in v_picks:
                tail = expanded[expanded.index(v):]
                tail_block = set(tail) - {v}
                for exit_v in exits:
                    if exit_v in tail:
                        continue
                    net = vertex_flow_net(
                        spdag, [(spdag.source, 1), (v, 1)], [(exit_v, 2)], banned=tail_block
                    )
                    r2 = max_flow_at_least(net, 2)
                    if not r2.ok:
                        continue
                    s1 = next((u for u in r2.unit_paths if u[0] == spdag.source), None)
                    s2 = next((u for u in r2.unit_paths if u[0] == v), None)
                    if s1 is None or s2 is None:
                        continue
                    path = strict_join(s1, s2[::-1], tail)
                    if path is not None and verify_zigzag(spdag, path, cand.delta):
                        return path
    return None


def flipped_context(ctx: CoreContext) -> CoreContext:
    """The same core seen from t: arcs reversed, the dominator roles swapped.

    Cluster structure is direction-free, so the partition carries over with
    severed arcs reversed; the cluster dag is rebuilt on the reversed arcs.
    """
    sp, lb = ctx.spdag, ctx.labels
    flabels = DistLabels(
        source=lb.target,
        target=lb.source,
        from_s=lb.to_t,
        to_t=lb.from_s,
        shortest=lb.shortest,
    )
    fsp = SpDag(
        n=sp.n,
        source=sp.target,
        target=sp.source,
        in_core=sp.in_core,
        core_edge=sp.core_edge,
        arcs=tuple(sorted((v, u, w) for u, v, w in sp.arcs)),
        zero_edges=sp.zero_edges,
        succ_pos=sp.pred_pos,
        pred_pos=sp.succ_pos,
        zero_adj=sp.zero_adj,
        succ_all=sp.pred_all,
        pred_all=sp.succ_all,
        level=tuple(lb.to_t),
    )
    fts = DomTree(
        root=ctx.tt.root, direction="from_s", host="core",
        idom=ctx.tt.idom, tin=ctx.tt.tin, tout=ctx.tt.tout,
    )
    ftt = DomTree(
        root=ctx.ts.root, direction="to_t", host="core",
        idom=ctx.ts.idom, tin=ctx.ts.tin, tout=ctx.ts.tout,
    )
    fpart = ZeroPartition(
        comp=ctx.partition.comp,
        members=ctx.partition.members,
        comp_level=tuple(flabels.from_s[m[0]] for m in ctx.partition.members),
        severed=tuple(sorted((v, u) for u, v in ctx.partition.severed)),
        surviving_adj=ctx.partition.surviving_adj,
    )
    fdag = build_cluster_dag(fsp, fpart, fts, ftt)
    return CoreContext(
        graph=ctx.graph, labels=flabels, spdag=fsp, ts=fts, tt=ftt,
        partition=fpart, dag=fdag,
    )


def _realize_pinned_t(ctx: CoreContext, cand: BackwardCandidate) -> list[int] | None:
    fctx = flipped_context(ctx)
    fcand = BackwardCandidate(
        "pinned_s", comp_x=cand.comp_y, comp_y=cand.comp_x, delta=cand.delta
    )
    fcn = build_candidate_network(fctx, fcand)
    fres = max_flow_at_least(fcn.net, 2)
    if not fres.ok:
        return None
    path = _realize_pinned_s(fctx, fcand, fcn, fres)
    if path is None:
        return None
    return path[::-1]


def _realize(ctx, cand, cn, res) -> list[int] | None:
    if cand.kind == "open":
        return _realize_open(ctx, cand)
    if cand.kind == "pinned_both":
        return _realize_pinned_both(ctx, cand, cn, res)
    if cand.kind == "pinned_s":
        return _realize_pinned_s(ctx, cand, cn, res)
    return _realize_pinned_t(ctx, cand)


def zigzag_shortest(ctx: CoreContext) -> tuple[int, list[int]] | None:
    """Best rise-fall-rise walk: its length and a witness path, or None."""
    delta, finalists = best_backward_pair(ctx)
    if delta is None:
        return None
    for cand, cn, res in finalists:
        path = _realize(ctx, cand, cn, res)
        if path is not None:
            return ctx.labels.shortest + 2 * delta, path
    raise RealizationExhausted(
        f"confirmed drop {delta} between clusters but no arrangement expanded"
    )


# ---------------------------------------------------------------------------
# disjoint climb pair (shared with the detour scan)


def _mixed_lane_net(spdag: SpDag, a: int, b: int, lane: int) -> FlowNetwork:
    core = sorted(spdag.core_vertices())
    ids: dict[int, int] = {}
    labels: list[int] = []
    caps: list[int] = []
    for v in core:
        ids[v] = len(labels)
        labels.append(v)
        caps.append(1)
    src = len(labels)
    labels.append(-1)
    caps.append(BIG)
    dst = len(labels)
    labels.append(-2)
    caps.append(BIG)
    edges: list[tuple[int, int, int]] = []
    for u, v, _ in spdag.arcs:
        if spdag.level[v] <= lane:
            edges.append((ids[u], ids[v], BIG))
        if spdag.level[u] >= lane:
            edges.append((ids[v], ids[u], BIG))
    for u, v in spdag.zero_edges:
        edges.append((ids[u], ids[v], BIG))
        edges.append((ids[v], ids[u], BIG))
    edges.append((src, ids[spdag.source], 1))
    edges.append((src, ids[spdag.target], 1))
    edges.append((ids[a], dst, 1))
    edges.append((ids[b], dst, 1))
    return FlowNetwork.build(labels, caps, edges, src, dst)


def disjoint_st_pair(
    spdag: SpDag, a: int, b: int
) -> tuple[list[int], list[int], bool] | None:
    """Vertex-disjoint monotone paths s->one of {a,b} and other->t.

    Greedy orientation first; when both orders jam the pair sits on one level,
    and a two-unit flow over the mixed lane network decides.  Returns the
    s-side path, the t-side path, and whether the s side ends at b.
    """
    s, t = spdag.source, spdag.target
    for first, second, swapped in ((a, b, False), (b, a, True)):
        ban1 = {second, t} - {first}
        down = climb_path(spdag, first, s, banned=ban1, descending=True)
        if down is None:
            continue
        p1 = down[::-1]
        p2 = climb_path(spdag, second, t, banned=set(p1))
        if p2 is not None:
            return p1, p2, swapped
    if spdag.level[a] != spdag.level[b]:
        return None
    net = _mixed_lane_net(spdag, a, b, spdag.level[a])
    res = max_flow_at_least(net, 2)
    if not res.ok:
        return None
    u_s = next((u for u in res.unit_paths if u[0] == s), None)
    u_t = next((u for u in res.unit_paths if u[0] == t), None)
    if u_s is None or u_t is None:
        return None
    return u_s, u_t[::-1], u_s[-1] == b
