"""Dual-graph algorithms for complexes embedded in one dimension higher.

The complement of an embedded top-dimensional complex splits into voids.
Each top simplex separates two voids, and becomes a dual edge between
them.  The source void is split in two (``s*`` and ``t*``) along the two
halves of its boundary, so that max flows become shortest paths and
minimum cuts become cheapest unit flows in the dual graph.

Void data is supplied by the caller and validated here.  In this module
the closing element is taken with boundary ``+gamma``; the flow LP module
uses ``-gamma``, and :func:`sigma_boundary` records the switch.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .chains import Cochain, apply_boundary, apply_coboundary, solve_linear
from .flows import CutResult, FlowNetwork, FlowResult

__all__ = [
    "VoidError",
    "VoidData",
    "DualGraph",
    "build_dual",
    "dijkstra",
    "bellman_ford",
    "min_cost_flow",
    "max_flow_shortest_path",
    "min_cut_via_min_cost_flow",
    "sigma_boundary",
    "S_STAR",
    "T_STAR",
]

S_STAR, T_STAR = "s*", "t*"


class VoidError(ValueError):
    pass


@dataclass(frozen=True)
class VoidData:
    """``sides[j]`` is ``(positive-side void, negative-side void)`` of simplex ``j``."""

    n_voids: int
    unbounded: int
    sides: tuple[tuple[int, int], ...]
    source: int
    gamma1: frozenset[int]
    gamma2: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "sides", tuple((int(a), int(b)) for a, b in self.sides))
        object.__setattr__(self, "gamma1", frozenset(int(j) for j in self.gamma1))
        object.__setattr__(self, "gamma2", frozenset(int(j) for j in self.gamma2))

    def void_boundary(self, v: int) -> list[Fraction]:
        """Signed boundary chain of void ``v``: +1 where ``v`` is on the positive side."""
        out = []
        for pos, neg in self.sides:
            if pos == neg:
                out.append(Fraction(0))
            elif pos == v:
                out.append(Fraction(1))
            elif neg == v:
                out.append(Fraction(-1))
            else:
                out.append(Fraction(0))
        return out

    def signed_part(self, support: frozenset[int]) -> list[Fraction]:
        full = self.void_boundary(self.source)
        return [full[j] if j in support else Fraction(0) for j in range(len(full))]


def sigma_boundary(net: FlowNetwork) -> list[Fraction]:
    """Boundary of the closing element in this module's convention."""
    return list(net.gamma)


@dataclass(frozen=True)
class DualGraph:
    """Dual vertices are ``s*``, ``t*`` and the remaining void indices.

    ``edges[j] = (tail, head, weight)`` for top simplex ``j``; the closing
    edge ``(t*, s*)`` with unbounded weight comes last.
    """

    vertices: tuple
    edges: tuple

    @property
    def sigma_edge(self) -> int:
        return len(self.edges) - 1


def validate_voids(net: FlowNetwork, voids: VoidData) -> None:
    n = net.n_top
    if len(voids.sides) != n:
        raise VoidError(f"void data lists {len(voids.sides)} simplices, network has {n}")
    if not 0 <= voids.unbounded < voids.n_voids or not 0 <= voids.source < voids.n_voids:
        raise VoidError("void index out of range")
    for pos, neg in voids.sides:
        if not (0 <= pos < voids.n_voids and 0 <= neg < voids.n_voids):
            raise VoidError("void index out of range")
    cx = net.complex
    for v in range(voids.n_voids):
        if v == voids.unbounded:
            continue
        chain = cx.chain(net.d, voids.void_boundary(v))
        if not apply_boundary(cx, chain).is_zero():
            raise VoidError(f"boundary of void {v} is not a cycle")
    g1, g2 = voids.gamma1, voids.gamma2
    if g1 & g2:
        raise VoidError("the two halves of the source boundary overlap")
    bd = {j for j, (pos, neg) in enumerate(voids.sides) if pos != neg and voids.source in (pos, neg)}
    if g1 | g2 != bd:
        raise VoidError("the two halves do not partition the source boundary")
    gamma = list(net.gamma)
    b1 = apply_boundary(cx, cx.chain(net.d, voids.signed_part(g1)))
    if list(b1) != [-g for g in gamma]:
        raise VoidError("first half does not have boundary -gamma")
    b2 = apply_boundary(cx, cx.chain(net.d, voids.signed_part(g2)))
    if list(b2) != gamma:
        raise VoidError("second half does not have boundary gamma")


def _dual_vertex(voids: VoidData, v: int, j: int):
    if v != voids.source:
        return v
    return S_STAR if j in voids.gamma1 else T_STAR


def build_dual(net: FlowNetwork, voids: VoidData, weights: Sequence | None = None) -> DualGraph:
    validate_voids(net, voids)
    w = [Fraction(x) for x in (weights if weights is not None else net.capacities)]
    edges = []
    for j, (pos, neg) in enumerate(voids.sides):
        edges.append((_dual_vertex(voids, neg, j), _dual_vertex(voids, pos, j), w[j]))
    edges.append((T_STAR, S_STAR, None))
    others = tuple(v for v in range(voids.n_voids) if v != voids.source)
    return DualGraph((S_STAR, T_STAR) + others, tuple(edges))


# ---------------------------------------------------------------------------
# shortest paths
# ---------------------------------------------------------------------------


def _arcs(dual: DualGraph) -> list[tuple[object, object, Fraction]]:
    """Forward arcs at their weight plus zero-weight reverse arcs; the closing edge is left out."""
    arcs = []
    for j, (u, v, w) in enumerate(dual.edges):
        if j == dual.sigma_edge:
            continue
        arcs.append((u, v, w))
        arcs.append((v, u, Fraction(0)))
    return arcs


def dijkstra(vertices, arcs, source) -> dict:
    adj: dict = {v: [] for v in vertices}
    for u, v, w in arcs:
        if w < 0:
            raise ValueError("negative arc weight")
        adj[u].append((v, w))
    dist = {source: Fraction(0)}
    done = set()
    heap = [(Fraction(0), 0, source)]
    order = {v: i for i, v in enumerate(vertices)}
    while heap:
        du, _, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        for v, w in adj[u]:
            nd = du + w
            if v not in dist or nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, order[v], v))
    return dist


def bellman_ford(vertices, arcs, source) -> dict:
    dist = {source: Fraction(0)}
    for _ in range(len(vertices)):
        changed = False
        for u, v, w in arcs:
            if u in dist and (v not in dist or dist[u] + w < dist[v]):
                dist[v] = dist[u] + w
                changed = True
        if not changed:
            return dist
    raise ValueError("negative cycle")


def max_flow_shortest_path(net: FlowNetwork, voids: VoidData) -> FlowResult:
    dual = build_dual(net, voids)
    dist = dijkstra(dual.vertices, _arcs(dual), S_STAR)
    if T_STAR not in dist:
        raise VoidError("t* is unreachable from s*: the flow would be unbounded")
    flow = []
    for u, v, _ in dual.edges[:-1]:
        if u not in dist or v not in dist:
            flow.append(Fraction(0))
        else:
            flow.append(dist[v] - dist[u])
    return FlowResult(net.complex.chain(net.d, flow), dist[T_STAR])


# ---------------------------------------------------------------------------
# min-cost flow
# ---------------------------------------------------------------------------


def min_cost_flow(vertices, arcs, source, sink, demand) -> tuple[list[Fraction], Fraction]:
    """Successive shortest paths with potentials.

    ``arcs`` are ``(tail, head, cost, capacity)`` with ``capacity=None`` for
    unbounded arcs and non-negative costs.  Returns the flow per arc and the
    total cost; raises ``ValueError`` if the demand cannot be routed.
    """
    demand = Fraction(demand)
    # residual graph: arc 2k forward, 2k+1 its reverse
    res = []
    adj: dict = {v: [] for v in vertices}
    for k, (u, v, c, cap) in enumerate(arcs):
        if c < 0:
            raise ValueError("negative arc cost")
        adj[u].append(len(res))
        res.append([u, v, Fraction(c), None if cap is None else Fraction(cap)])
        adj[v].append(len(res))
        res.append([v, u, -Fraction(c), Fraction(0)])
    flow = [Fraction(0)] * len(arcs)
    potential = {v: Fraction(0) for v in vertices}
    order = {v: i for i, v in enumerate(vertices)}
    sent = Fraction(0)
    cost = Fraction(0)
    while sent < demand:
        dist = {source: Fraction(0)}
        prev: dict = {}
        done = set()
        heap = [(Fraction(0), order[source], source)]
        while heap:
            du, _, u = heapq.heappop(heap)
            if u in done:
                continue
            done.add(u)
            for a in adj[u]:
                _, v, c, cap = res[a]
                if cap is not None and cap <= 0:
                    continue
                nd = du + c + potential[u] - potential[v]
                if v not in dist or nd < dist[v]:
                    dist[v] = nd
                    prev[v] = a
                    heapq.heappush(heap, (nd, order[v], v))
        if sink not in dist:
            raise ValueError("demand cannot be routed")
        for v in vertices:
            if v in dist:
                potential[v] += dist[v]
        push = demand - sent
        v = sink
        while v != source:
            a = prev[v]
            cap = res[a][3]
            if cap is not None:
                push = min(push, cap)
            v = res[a][0]
        v = sink
        while v != source:
            a = prev[v]
            if res[a][3] is not None:
                res[a][3] -= push
            if res[a ^ 1][3] is not None:
                res[a ^ 1][3] += push
            k, back = divmod(a, 2)
            flow[k] += -push if back else push
            cost += push * res[a][2]
            v = res[a][0]
        sent += push
    return flow, cost


def min_cut_via_min_cost_flow(
    net: FlowNetwork,
    voids: VoidData,
    weights: Sequence | None = None,
    unit_capacities: bool = False,
):
    """Cheapest unit ``s*``-``t*`` flow mapped back to a cut cochain.

    Returns a :class:`CutResult` for the topological cut, or
    ``(directed_cut, weight)`` when ``unit_capacities`` is set.
    """
    w = [Fraction(x) for x in (weights if weights is not None else net.capacities)]
    if any(x < 0 for x in w):
        raise VoidError("weights must be non-negative")
    dual = build_dual(net, voids, w)
    arcs = []
    for j, (u, v, wj) in enumerate(dual.edges[:-1]):
        arcs.append((u, v, wj, Fraction(1) if unit_capacities else None))
        arcs.append((v, u, Fraction(0), None))
    try:
        flow, _ = min_cost_flow(dual.vertices, arcs, S_STAR, T_STAR, 1)
    except ValueError:
        raise VoidError("internal inconsistency: no unit flow from s* to t* in the dual graph") from None
    g = [flow[2 * j] - flow[2 * j + 1] for j in range(net.n_top)]
    # solve δp = -g on the simplices together with p(gamma) = -1
    A = net.boundary.transpose()
    rows = [list(r) for r in A.to_dense()] + [list(net.gamma)]
    rhs = [-x for x in g] + [Fraction(-1)]
    p = solve_linear(rows, rhs) if rows and rows[0] else None
    if p is None:
        raise VoidError("internal inconsistency: the dual flow is not the coboundary of a cut")
    cochain = Cochain(net.d - 1, tuple(p))
    dp = apply_coboundary(net.complex, cochain)
    directed = frozenset(j for j, a in enumerate(dp) if a < 0)
    if unit_capacities:
        return directed, sum((w[j] for j in directed), Fraction(0))
    value = sum((-a * w[j] for j, a in enumerate(dp) if a < 0), Fraction(0))
    norm = sum((abs(a) * wj for a, wj in zip(dp, w)), Fraction(0))
    return CutResult(cochain, dp, directed, value, norm)
