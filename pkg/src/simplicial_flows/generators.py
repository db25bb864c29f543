"""Deterministic instance families.

Worked examples
---------------
``md``
    A Möbius strip glued to a one-triangle disk.  The strip is a 3 x 3
    grid of squares (two triangles each) on rows ``r0..r3``; column 3 is
    column 0 read upside down.  Its two boundary corners ``r0c0`` and
    ``r3c0`` are the same vertex ``u``, so the strip boundary is a figure
    eight made of the loops ``u r0c1 r0c2`` and ``u r3c1 r3c2``.  The seam
    column is the loop ``u w v`` (``w = r1c0``, ``v = r2c0``); the strip's
    boundary runs twice around it, and the disk is the triangle ``u w v``
    oriented to cancel one of those copies.
``mdw``
    ``md`` plus two cones (apexes ``p1``, ``p2``) over the loops of the
    figure eight, with boundary exactly the figure eight.
``octahedron``
    Boundary of the octahedron with north pole 0, south pole 5 and equator
    1-2-3-4.  Both hemispheres are oriented with boundary the equator.  With
    ``split=True`` an equatorial disk with centre 6 is added.
``planar-cycle``
    The graph s->a->t, s->b->t drawn in the plane.
``hitting-set``
    A 2-dimensional chain complex: one triangle ``T_e`` per element with its
    own boundary loop, and one cell ``R_i`` per subset whose boundary is
    gamma minus the loops of the elements of that subset.  ``R_i`` plus the
    ``T_e`` with ``e`` in the subset is a disk bounded by gamma.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .chains import ChainComplexData, SimplicialComplex, SparseMatrix, apply_boundary
from .embedded import VoidData
from .flows import FlowNetwork, make_network

__all__ = [
    "GeneratorError",
    "Expected",
    "InstanceBundle",
    "gen_md",
    "gen_mdw",
    "gen_graph",
    "gen_octahedron",
    "gen_planar_cycle",
    "gen_hitting_set",
    "gen_random",
    "gen_random_graph",
    "gen_embedded_variant",
    "brute_min_hitting_set",
    "mobius_parts",
    "GENERATORS",
]


class GeneratorError(ValueError):
    pass


@dataclass(frozen=True)
class Expected:
    value: Fraction
    provenance: str


@dataclass(frozen=True)
class InstanceBundle:
    name: str
    network: FlowNetwork
    voids: VoidData | None = None
    expected: dict = field(default_factory=dict)
    description: str = ""
    simplicial: SimplicialComplex | None = None
    parts: dict = field(default_factory=dict)


def _bundle(name, cx: SimplicialComplex | ChainComplexData, capacities, gamma, **kw) -> InstanceBundle:
    simplicial = cx if isinstance(cx, SimplicialComplex) else None
    data = cx.to_chain_complex() if simplicial is not None else cx
    net = make_network(data, capacities, gamma)
    return InstanceBundle(name, net, simplicial=simplicial, **kw)


def _edge_chain(sc: SimplicialComplex, oriented_edges: Iterable[tuple[int, int]]) -> list[Fraction]:
    out = [Fraction(0)] * len(sc.simplices[1])
    for a, b in oriented_edges:
        i = sc.index((a, b))
        out[i] += 1 if a < b else -1
    return out


# ---------------------------------------------------------------------------
# Möbius strip, disk and wedge
# ---------------------------------------------------------------------------

_COLS = 3


def _grid_vertex(j: int, k: int) -> str:
    if k == _COLS:
        j, k = 3 - j, 0
    if k == 0 and j in (0, 3):
        return "u"
    if k == 0:
        return {1: "w", 2: "v"}[j]
    return f"r{j}c{k}"


def _mobius_triangles() -> list[tuple[str, str, str]]:
    tris = []
    for k in range(_COLS):
        for j in range(3):
            a, b = _grid_vertex(j, k), _grid_vertex(j + 1, k)
            c, d = _grid_vertex(j + 1, k + 1), _grid_vertex(j, k + 1)
            tris.append((a, d, c))
            tris.append((a, c, b))
    return tris


# loops of the strip boundary, as oriented vertex cycles
_LOOPS = (("u", "r0c1", "r0c2"), ("u", "r3c2", "r3c1"))
_SEAM = ("v", "w", "u")


def _md_complex(with_wedge: bool) -> tuple[SimplicialComplex, dict]:
    names = ["u", "w", "v"] + [f"r{j}c{k}" for k in range(1, _COLS) for j in range(4)]
    tris = _mobius_triangles()
    parts = {"mobius": list(range(len(tris)))}
    tris.append(("u", "w", "v"))
    parts["disk"] = [len(tris) - 1]
    if with_wedge:
        names += ["p1", "p2"]
        parts["wedge"] = []
        for apex, loop in zip(("p1", "p2"), _LOOPS):
            for a, b in zip(loop, loop[1:] + loop[:1]):
                parts["wedge"].append(len(tris))
                tris.append((apex, a, b))
    idx = {v: i for i, v in enumerate(names)}
    sc = SimplicialComplex.from_simplices([[idx[v] for v in t] for t in tris], len(names), names)
    return sc, parts


def _loop_chain(sc: SimplicialComplex, loops) -> list[Fraction]:
    idx = {v: i for i, v in enumerate(sc.vertex_labels)}
    edges = []
    for loop in loops:
        edges += [(idx[a], idx[b]) for a, b in zip(loop, loop[1:] + loop[:1])]
    return _edge_chain(sc, edges)


def mobius_parts(sc: SimplicialComplex) -> dict:
    """The figure eight and the seam loop of the strip as 1-chains."""
    return {"gamma": _loop_chain(sc, _LOOPS), "alpha": _loop_chain(sc, [_SEAM])}


def gen_md() -> InstanceBundle:
    sc, parts = _md_complex(False)
    gamma = mobius_parts(sc)["gamma"]
    caps = [1] * len(sc.simplices[2])
    return _bundle(
        "md",
        sc,
        caps,
        gamma,
        expected={"max_flow": Expected(Fraction(1, 2), "worked-example")},
        description="Möbius strip with a figure-eight boundary, glued to a disk along its core loop",
        parts=parts,
    )


def gen_mdw() -> InstanceBundle:
    sc, parts = _md_complex(True)
    gamma = mobius_parts(sc)["gamma"]
    caps = [1] * len(sc.simplices[2])
    return _bundle(
        "mdw",
        sc,
        caps,
        gamma,
        expected={
            "max_flow": Expected(Fraction(3, 2), "worked-example"),
            "min_cut": Expected(Fraction(3, 2), "derived: strong duality"),
            "combinatorial_cut": Expected(Fraction(2), "worked-example"),
        },
        description="md plus a wedge of two disks bounded by the figure eight",
        parts=parts,
    )


# ---------------------------------------------------------------------------
# graphs
# ---------------------------------------------------------------------------


def _graph_complex(n_vertices: int, edges: Sequence[tuple[int, int]]) -> SimplicialComplex:
    seen = set()
    for u, v in edges:
        if u == v:
            raise GeneratorError(f"self-loop at {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GeneratorError(f"edge {u}-{v} appears twice (in either direction)")
        seen.add(key)
    return SimplicialComplex.from_simplices([tuple(e) for e in edges], n_vertices)


def gen_graph(edges, capacities, s: int, t: int, n_vertices: int | None = None, name: str = "graph") -> InstanceBundle:
    edges = [tuple(e) for e in edges]
    if s == t:
        raise GeneratorError("source and sink coincide")
    if not edges:
        raise GeneratorError("graph has no edges")
    if n_vertices is None:
        n_vertices = max(max(max(e) for e in edges), s, t) + 1
    sc = _graph_complex(n_vertices, edges)
    gamma = [Fraction(0)] * n_vertices
    gamma[s], gamma[t] = Fraction(-1), Fraction(1)
    return _bundle(name, sc, list(capacities), gamma, description=f"directed graph, source {s}, sink {t}")


def gen_random_graph(seed: int, n_vertices: int | None = None, max_edges: int = 12, max_capacity: int = 7) -> InstanceBundle:
    """Random simple digraph with integral capacities; gamma = t - s with s, t connected."""
    rng = random.Random(seed)
    for _ in range(100):
        n = n_vertices if n_vertices is not None else rng.randint(3, 8)
        pairs = list(combinations(range(n), 2))
        rng.shuffle(pairs)
        m = rng.randint(1, min(max_edges, len(pairs)))
        edges = [(u, v) if rng.random() < 0.5 else (v, u) for u, v in pairs[:m]]
        caps = [rng.randint(0, max_capacity) for _ in edges]
        s, t = 0, n - 1
        try:
            return gen_graph(edges, caps, s, t, n, name=f"random-graph-{seed}")
        except ValueError:
            continue
    raise GeneratorError(f"no connected random graph found for seed {seed}")


# ---------------------------------------------------------------------------
# embedded instances
# ---------------------------------------------------------------------------


def gen_octahedron(capacities: Sequence | None = None, split: bool = False) -> InstanceBundle:
    north = [(0, i, i % 4 + 1) for i in range(1, 5)]
    south = [(5, i, i % 4 + 1) for i in range(1, 5)]
    tris = north + south
    if split:
        tris += [(6, i, i % 4 + 1) for i in range(1, 5)]
    sc = SimplicialComplex.from_simplices(tris, 7 if split else 6)
    gamma = _edge_chain(sc, [(i, i % 4 + 1) for i in range(1, 5)])
    n = len(tris)
    caps = [1] * n if capacities is None else list(capacities)
    outer, inner, lower = 0, 1, 2
    nh, sh = set(range(4)), set(range(4, 8))
    if not split:
        sides = [(inner, outer)] * 4 + [(outer, inner)] * 4
        voids = VoidData(2, outer, sides, inner, frozenset(sh), frozenset(nh))
    else:
        sides = [(inner, outer)] * 4 + [(outer, lower)] * 4 + [(lower, inner)] * 4
        voids = VoidData(3, outer, sides, inner, frozenset(range(8, 12)), frozenset(nh))
    sheets = 3 if split else 2
    expected = {}
    if capacities is None:
        expected = {
            "max_flow": Expected(Fraction(sheets), "derived: one unit per sheet"),
            "combinatorial_cut": Expected(Fraction(sheets), "derived: one triangle per sheet"),
        }
    return _bundle(
        "octahedron-split" if split else "octahedron",
        sc,
        caps,
        gamma,
        voids=voids,
        expected=expected,
        description="octahedron surface, gamma the equator" + (", with an equatorial disk" if split else ""),
    )


def gen_planar_cycle(capacities: Sequence | None = None) -> InstanceBundle:
    s, a, t, b = 0, 1, 2, 3
    edges = [(s, a), (a, t), (s, b), (b, t)]
    sc = SimplicialComplex.from_simplices(edges, 4, ("s", "a", "t", "b"))
    caps = [1] * 4 if capacities is None else list(capacities)
    gamma = [Fraction(0)] * 4
    gamma[s], gamma[t] = Fraction(-1), Fraction(1)
    outer, inner = 0, 1
    # the upper path s-a-t bounds the inner face from t*'s side
    order = [sc.index(e) for e in edges]
    sides = [None] * 4
    for k, j in enumerate(order):
        sides[j] = (inner, outer) if k < 2 else (outer, inner)
    voids = VoidData(2, outer, sides, inner, frozenset(order[2:]), frozenset(order[:2]))
    expected = {}
    if capacities is None:
        expected = {"max_flow": Expected(Fraction(2), "derived: two disjoint unit paths")}
    return _bundle("planar-cycle", sc, caps, gamma, voids=voids, expected=expected,
                   description="4-cycle s-a-t-b drawn in the plane")


def gen_embedded_variant(seed: int) -> InstanceBundle:
    """Octahedron (plain for even seeds, split for odd) with random capacities."""
    rng = random.Random(seed)
    split = seed % 2 == 1
    n = 12 if split else 8
    caps = [Fraction(rng.randint(0, 6), rng.choice((1, 1, 2, 3))) for _ in range(n)]
    b = gen_octahedron(caps, split=split)
    return InstanceBundle(f"embedded-{seed}", b.network, b.voids, {}, b.description, b.simplicial)


# ---------------------------------------------------------------------------
# hitting set
# ---------------------------------------------------------------------------


def gen_hitting_set(universe: Iterable, family: Sequence[Iterable]) -> InstanceBundle:
    elements = sorted(set(universe))
    sets = [sorted(set(S)) for S in family]
    if not sets:
        raise GeneratorError("empty family")
    for S in sets:
        if not S:
            raise GeneratorError("empty subset")
        if not set(S) <= set(elements):
            raise GeneratorError(f"subset {S} is not inside the universe")
    pos = {e: k for k, e in enumerate(elements)}
    n_el = len(elements)
    # vertices: x, y, z then three per element; edges: 3 for gamma then 3 per element
    n0 = 3 + 3 * n_el
    n1 = 3 + 3 * n_el
    e1 = []
    labels0 = ["x", "y", "z"] + [f"{c}{e}" for e in elements for c in "abc"]
    labels1 = ["x,y", "x,z", "y,z"]
    for base in range(0, n0, 3):
        a, b, c = base, base + 1, base + 2
        r = len(e1) // 2
        for k, (p, q) in enumerate(((a, b), (a, c), (b, c))):
            e1 += [(p, r + k, Fraction(-1)), (q, r + k, Fraction(1))]
    for e in elements:
        labels1 += [f"a{e},b{e}", f"a{e},c{e}", f"b{e},c{e}"]

    def loop(base_edge: int) -> dict[int, Fraction]:
        # boundary of the triangle on the three edges starting at base_edge
        return {base_edge: Fraction(1), base_edge + 1: Fraction(-1), base_edge + 2: Fraction(1)}

    gamma_map = loop(0)
    columns = []
    labels2 = []
    for e in elements:
        columns.append(loop(3 + 3 * pos[e]))
        labels2.append(f"T{e}")
    for i, S in enumerate(sets):
        col = dict(gamma_map)
        for e in S:
            for r, v in loop(3 + 3 * pos[e]).items():
                col[r] = col.get(r, Fraction(0)) - v
        columns.append({r: v for r, v in col.items() if v})
        labels2.append(f"R{i}")
    d1 = SparseMatrix(n0, n1, tuple(e1))
    d2 = SparseMatrix.from_columns(n1, columns)
    cx = ChainComplexData((n0, n1, len(columns)), (d1, d2), (tuple(labels0), tuple(labels1), tuple(labels2)))
    gamma = [gamma_map.get(r, Fraction(0)) for r in range(n1)]
    h = brute_min_hitting_set(elements, sets)
    return _bundle(
        "hitting-set",
        cx,
        [1] * len(columns),
        gamma,
        expected={"combinatorial_cut": Expected(Fraction(len(h)), "derived: brute-force minimum hitting set")},
        description="hitting-set complex for " + ";".join(",".join(str(e) for e in S) for S in sets),
        parts={"elements": list(range(n_el)), "subsets": list(range(n_el, len(columns)))},
    )


def brute_min_hitting_set(universe: Iterable, family: Sequence[Iterable]) -> tuple:
    elements = sorted(set(universe))
    sets = [set(S) for S in family]
    for k in range(len(elements) + 1):
        for H in combinations(elements, k):
            if all(S & set(H) for S in sets):
                return H
    raise GeneratorError("family has an empty member")


# ---------------------------------------------------------------------------
# random complexes
# ---------------------------------------------------------------------------


def gen_random(seed: int, n_vertices: int = 8, d: int = 2, density: float = 0.3) -> InstanceBundle:
    """Random complex of dimension ``d`` with gamma the boundary of a random non-negative chain."""
    if d not in (1, 2):
        raise GeneratorError("random complexes are generated for d = 1 or 2 only")
    if not n_vertices >= d + 1:
        raise GeneratorError("too few vertices")
    rng = random.Random(seed)
    for _ in range(50):
        cands = list(combinations(range(n_vertices), d + 1))
        chosen = [c for c in cands if rng.random() < density]
        if not chosen:
            chosen = [rng.choice(cands)]
        top = []
        for c in chosen:
            c = list(c)
            if rng.random() < 0.5:
                c[0], c[1] = c[1], c[0]
            top.append(tuple(c))
        sc = SimplicialComplex.from_simplices(top, n_vertices)
        cx = sc.to_chain_complex()
        n = len(top)
        weights = [Fraction(rng.randint(0, 2)) if rng.random() < 0.6 else Fraction(0) for _ in range(n)]
        gamma = apply_boundary(cx, cx.chain(d, weights))
        if gamma.is_zero():
            continue
        caps = [Fraction(rng.randint(0, 5), rng.choice((1, 1, 2))) for _ in range(n)]
        return _bundle(f"random-{seed}", sc, caps, list(gamma),
                       description=f"random {d}-complex on {n_vertices} vertices, seed {seed}")
    raise GeneratorError(f"no non-trivial gamma found for seed {seed}")


GENERATORS = {
    "md": gen_md,
    "mdw": gen_mdw,
    "octahedron": gen_octahedron,
    "planar-cycle": gen_planar_cycle,
    "hitting-set": gen_hitting_set,
    "graph": gen_graph,
    "random": gen_random,
    "random-graph": gen_random_graph,
    "embedded-variant": gen_embedded_variant,
}
