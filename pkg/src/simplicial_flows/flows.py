"""Max-flow and min-cut linear programs on simplicial flow networks.

A network closes its input cycle ``gamma`` with an extra top-dimensional
basis element whose boundary is ``-gamma`` and whose capacity is
unbounded.  Maximising the flow through that element is the max-flow LP;
the min-cut LP is written out separately so that its optimum is a vertex.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .chains import (
    Chain,
    ChainComplexData,
    Cochain,
    SparseMatrix,
    apply_boundary,
    apply_coboundary,
    inner_product,
    is_null_homologous,
    kernel_basis,
)
from .lp import EQ, GE, Constraint, LinearProgram, feasible_point, solve

__all__ = [
    "NetworkError",
    "BruteForceGuardError",
    "FlowNetwork",
    "FlowResult",
    "CutResult",
    "make_network",
    "max_flow_lp",
    "min_cut_lp",
    "verify_flow",
    "verify_gamma_cut",
    "verify_directed_combinatorial_cut",
    "cut_norm",
    "is_combinatorial_cut",
    "brute_min_combinatorial_cut",
    "brute_graph_max_flow",
    "find_supporting_cochain",
    "tu_vertex_integrality_check",
    "BRUTE_MAX_SIMPLICES",
]

BRUTE_MAX_SIMPLICES = 25


class NetworkError(ValueError):
    pass


class BruteForceGuardError(ValueError):
    pass


@dataclass(frozen=True)
class FlowNetwork:
    complex: ChainComplexData
    capacities: tuple[Fraction, ...]
    gamma: Chain

    @property
    def d(self) -> int:
        return self.complex.dimension

    @property
    def n_top(self) -> int:
        return self.complex.dims[self.d]

    @property
    def n_faces(self) -> int:
        return self.complex.dims[self.d - 1]

    @property
    def sigma_index(self) -> int:
        """Index of the closing element in the augmented top basis."""
        return self.n_top

    @property
    def boundary(self) -> SparseMatrix:
        return self.complex.top_boundary

    @property
    def augmented_boundary(self) -> SparseMatrix:
        return self.boundary.hstack([-g for g in self.gamma])


@dataclass(frozen=True)
class FlowResult:
    flow: Chain
    value: Fraction


@dataclass(frozen=True)
class CutResult:
    cochain: Cochain
    coboundary: Cochain
    directed_cut: frozenset[int]
    value: Fraction
    norm: Fraction


def make_network(cx: ChainComplexData, capacities: Sequence, gamma) -> FlowNetwork:
    d = cx.dimension
    if d < 1:
        raise NetworkError("a flow network needs a complex of dimension at least 1")
    n_top, n_faces = cx.dims[d], cx.dims[d - 1]
    caps = []
    for c in capacities:
        if isinstance(c, float):
            raise NetworkError("capacities must be exact rationals")
        c = Fraction(c)
        if c < 0:
            raise NetworkError(f"negative capacity {c}")
        caps.append(c)
    if len(caps) != n_top:
        raise NetworkError(f"{len(caps)} capacities for {n_top} top simplices")
    if not isinstance(gamma, Chain):
        gamma = cx.chain(d - 1, gamma)
    if gamma.dimension != d - 1 or len(gamma) != n_faces:
        raise NetworkError(f"gamma must be a {d - 1}-chain of length {n_faces}")
    if gamma.is_zero():
        raise NetworkError("gamma is the zero chain")
    if d >= 2 and not apply_boundary(cx, gamma).is_zero():
        raise NetworkError("gamma is not a cycle")
    if not is_null_homologous(cx, gamma):
        raise NetworkError("gamma is not null-homologous")
    return FlowNetwork(cx, tuple(caps), gamma)


# ---------------------------------------------------------------------------
# the flow LP and the cut LP
# ---------------------------------------------------------------------------


def max_flow_lp(net: FlowNetwork) -> FlowResult:
    n = net.n_top
    A = net.augmented_boundary
    rows: list[list[Fraction]] = [[Fraction(0)] * (n + 1) for _ in range(A.rows)]
    for i, j, v in A.entries:
        rows[i][j] = v
    cons = tuple(Constraint(tuple(r), EQ, Fraction(0)) for r in rows if any(r))
    bounds = tuple((Fraction(0), c) for c in net.capacities) + ((Fraction(0), None),)
    objective = (Fraction(0),) * n + (Fraction(1),)
    sol = solve(LinearProgram("max", objective, cons, bounds))
    if sol.status != "optimal":
        raise NetworkError(f"max-flow LP is {sol.status}")
    return FlowResult(net.complex.chain(net.d, sol.x[:n]), sol.x[n])


def cut_norm(net: FlowNetwork, coboundary: Sequence[Fraction]) -> Fraction:
    """Capacity-weighted absolute size of a coboundary."""
    return sum((abs(a) * c for a, c in zip(coboundary, net.capacities)), Fraction(0))


def min_cut_lp(net: FlowNetwork) -> CutResult:
    m, n = net.n_faces, net.n_top
    cols = net.boundary.columns()
    cons = []
    # variables: y_{d-1} (m, free) then y_d (n, >= 0)
    for j in range(n):
        row = [Fraction(0)] * (m + n)
        for i, v in cols[j].items():
            row[i] = v
        row[m + j] = Fraction(1)
        cons.append(Constraint(tuple(row), GE, Fraction(0)))
    sigma_row = [-g for g in net.gamma] + [Fraction(0)] * n
    cons.append(Constraint(tuple(sigma_row), EQ, Fraction(1)))
    bounds = ((None, None),) * m + ((Fraction(0), None),) * n
    objective = (Fraction(0),) * m + tuple(net.capacities)
    sol = solve(LinearProgram("min", objective, tuple(cons), bounds))
    if sol.status != "optimal":
        raise NetworkError(f"min-cut LP is {sol.status}")
    p = net.complex.cochain(net.d - 1, sol.x[:m])
    dp = apply_coboundary(net.complex, p)
    directed = frozenset(j for j, a in enumerate(dp) if a < 0)
    value = sum((-a * net.capacities[j] for j, a in enumerate(dp) if a < 0), Fraction(0))
    if value != sol.objective:
        # y_d dominates the negative part; they agree wherever capacity is positive
        raise NetworkError("min-cut LP objective disagrees with its coboundary")
    return CutResult(p, dp, directed, value, cut_norm(net, dp))


def cut_lp_top_values(cut: CutResult) -> list[Fraction]:
    """The top-dimensional block of the cut LP: the negative part of the coboundary."""
    return [max(-a, Fraction(0)) for a in cut.coboundary]


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def verify_flow(net: FlowNetwork, f, k) -> bool:
    if not isinstance(f, Chain):
        f = net.complex.chain(net.d, f)
    if f.dimension != net.d or len(f) != net.n_top:
        return False
    k = Fraction(k)
    if any(not 0 <= x <= c for x, c in zip(f, net.capacities)):
        return False
    return list(apply_boundary(net.complex, f)) == [k * g for g in net.gamma]


def flow_violation(net: FlowNetwork, f, k) -> str | None:
    """Name of the first violated flow condition, or ``None``."""
    if not isinstance(f, Chain):
        f = net.complex.chain(net.d, f)
    k = Fraction(k)
    for j, (x, c) in enumerate(zip(f, net.capacities)):
        if x < 0:
            return f"non-negativity at top simplex {j}"
        if x > c:
            return f"capacity at top simplex {j}"
    bd = apply_boundary(net.complex, f)
    for i, (a, g) in enumerate(zip(bd, net.gamma)):
        if a != k * g:
            return f"conservation at face {i}"
    return None


def verify_gamma_cut(net: FlowNetwork, p) -> bool:
    if not isinstance(p, Cochain):
        p = net.complex.cochain(net.d - 1, p)
    if inner_product(p, net.gamma) != -1:
        return False
    support = apply_coboundary(net.complex, p).support()
    rest = [j for j in range(net.n_top) if j not in support]
    return not is_null_homologous(net.complex, net.gamma, rest)


def _nonnegative_bounding_chain(net: FlowNetwork, allowed: Sequence[int]) -> list[Fraction] | None:
    if not allowed:
        return None
    sub = net.boundary.select(None, allowed)
    rows: list[list[Fraction]] = [[Fraction(0)] * len(allowed) for _ in range(sub.rows)]
    for i, j, v in sub.entries:
        rows[i][j] = v
    cons = [Constraint(tuple(r), EQ, g) for r, g in zip(rows, net.gamma)]
    return feasible_point(cons, None, len(allowed))


def verify_directed_combinatorial_cut(net: FlowNetwork, C: Iterable[int]) -> bool:
    C = set(C)
    allowed = [j for j in range(net.n_top) if j not in C]
    return _nonnegative_bounding_chain(net, allowed) is None


def is_combinatorial_cut(net: FlowNetwork, C: Iterable[int]) -> bool:
    C = set(C)
    rest = [j for j in range(net.n_top) if j not in C]
    return not is_null_homologous(net.complex, net.gamma, rest)


def brute_min_combinatorial_cut(
    net: FlowNetwork,
    weight: Sequence | None = None,
    max_subset_size: int | None = None,
    directed: bool = False,
) -> tuple[frozenset[int], Fraction]:
    """Exhaustive minimum-weight combinatorial cut.

    Subsets are visited in order of (weight, sorted indices); the first one
    that disconnects ``gamma`` is returned.  With ``directed`` the test is
    the weaker one of :func:`verify_directed_combinatorial_cut`.
    """
    test = verify_directed_combinatorial_cut if directed else is_combinatorial_cut
    n = net.n_top
    if n > BRUTE_MAX_SIMPLICES:
        raise BruteForceGuardError(f"{n} top simplices exceed the brute-force limit of {BRUTE_MAX_SIMPLICES}")
    w = [Fraction(x) for x in (weight if weight is not None else net.capacities)]
    if len(w) != n or any(x < 0 for x in w):
        raise NetworkError("weights must be non-negative, one per top simplex")
    limit = n if max_subset_size is None else max_subset_size
    order = sorted(range(n), key=lambda j: (w[j], j))
    # best-first enumeration: children of a subset with largest position m
    # are (add m+1) and (replace m by m+1); both never decrease the key
    heap = []

    def push(positions: tuple[int, ...], total: Fraction):
        heapq.heappush(heap, (total, tuple(sorted(order[q] for q in positions)), positions))

    if test(net, ()):
        return frozenset(), Fraction(0)
    if n:
        push((0,), w[order[0]])
    while heap:
        total, key, positions = heapq.heappop(heap)
        m = positions[-1]
        if m + 1 < n:
            nxt = order[m + 1]
            if len(positions) < limit:
                push(positions + (m + 1,), total + w[nxt])
            push(positions[:-1] + (m + 1,), total - w[order[m]] + w[nxt])
        if len(positions) <= limit and test(net, key):
            return frozenset(key), total
    raise BruteForceGuardError(f"no combinatorial cut with at most {limit} simplices")


def graph_terminals(net: FlowNetwork) -> tuple[int, int] | None:
    """``(s, t)`` when the network is a graph with ``gamma = t - s``."""
    if net.d != 1:
        return None
    sup = sorted(net.gamma.support())
    if len(sup) != 2:
        return None
    a, b = sup
    if net.gamma[a] == -1 and net.gamma[b] == 1:
        return a, b
    if net.gamma[a] == 1 and net.gamma[b] == -1:
        return b, a
    return None


def brute_graph_max_flow(net: FlowNetwork) -> tuple[Fraction, frozenset[int]]:
    """Minimum capacity over every vertex bipartition separating s from t.

    Returns the value and the source side of a minimising bipartition.
    """
    st = graph_terminals(net)
    if st is None:
        raise NetworkError("brute-force max flow needs a graph with gamma = t - s")
    s, t = st
    nv = net.n_faces
    if nv > 22:
        raise BruteForceGuardError(f"{nv} vertices exceed the brute-force limit of 22")
    edges = []
    for j, col in enumerate(net.boundary.columns()):
        tail = next(i for i, v in col.items() if v < 0)
        head = next(i for i, v in col.items() if v > 0)
        edges.append((tail, head, net.capacities[j]))
    others = [v for v in range(nv) if v not in (s, t)]
    best = None
    for mask in range(1 << len(others)):
        side = {s} | {v for b, v in enumerate(others) if mask >> b & 1}
        cap = sum((c for u, v, c in edges if u in side and v not in side), Fraction(0))
        if best is None or cap < best[0]:
            best = (cap, frozenset(side))
    return best


def find_supporting_cochain(cx: ChainComplexData, C: Iterable[int]) -> Cochain | None:
    """A cochain whose coboundary is supported in ``C`` with maximal support."""
    C = set(C)
    if not C:
        return None
    d = cx.dimension
    off = [j for j in range(cx.dims[d]) if j not in C]
    A = cx.top_boundary.select(None, off).transpose()
    if not off:
        A = SparseMatrix(0, cx.dims[d - 1], ())
    basis = kernel_basis(A)
    p = [Fraction(0)] * cx.dims[d - 1]
    dp = [Fraction(0)] * cx.dims[d]
    for k in basis:
        dk = apply_coboundary(cx, cx.cochain(d - 1, k)).coefficients
        if not any(dk):
            continue
        # each coordinate rules out at most one multiplier
        lam = 1
        while any(dp[j] + lam * dk[j] == 0 and (dp[j] or dk[j]) for j in range(len(dp))):
            lam += 1
        p = [a + lam * b for a, b in zip(p, k)]
        dp = [a + lam * b for a, b in zip(dp, dk)]
    if not any(dp):
        return None
    return cx.cochain(d - 1, p)


def tu_vertex_integrality_check(net: FlowNetwork) -> bool:
    cut = min_cut_lp(net)
    entries = list(cut.cochain) + cut_lp_top_values(cut)
    return all(x in (-1, 0, 1) for x in entries)
