from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from complexes import big_disk, four_cycle_graph, octahedron_surface, torus, triangle
from simplicial_flows.chains import apply_boundary, apply_coboundary, solve_linear
from simplicial_flows.flows import (
    BruteForceGuardError,
    NetworkError,
    brute_graph_max_flow,
    brute_min_combinatorial_cut,
    find_supporting_cochain,
    flow_violation,
    is_combinatorial_cut,
    make_network,
    max_flow_lp,
    min_cut_lp,
    tu_vertex_integrality_check,
    verify_directed_combinatorial_cut,
    verify_flow,
    verify_gamma_cut,
)
from simplicial_flows.generators import gen_graph, gen_hitting_set, gen_random, gen_random_graph


def triangle_network(cap=1):
    cx = triangle().to_chain_complex()
    gamma = apply_boundary(cx, cx.chain(2, {0: 1}))
    return make_network(cx, [cap], gamma)


class TestMakeNetwork:
    def test_path_sigma_column(self):
        net = gen_graph([(0, 1)], [1], 0, 1).network
        sigma = net.augmented_boundary.column(net.sigma_index)
        assert sigma == {0: 1, 1: -1}

    def test_md_valid(self, md):
        assert md.network.capacities == (1,) * md.network.n_top

    def test_torus_loop_rejected(self):
        sc = torus()
        cx = sc.to_chain_complex()
        z = [Fraction(0)] * cx.dims[1]
        for a, b in ((0, 1), (1, 2), (2, 0)):
            z[sc.index((a, b))] += 1 if a < b else -1
        with pytest.raises(NetworkError, match="null-homologous"):
            make_network(cx, [1] * cx.dims[2], z)

    def test_not_a_cycle(self):
        cx = triangle().to_chain_complex()
        with pytest.raises(NetworkError, match="cycle"):
            make_network(cx, [1], {0: 1})

    def test_negative_capacity(self):
        cx = triangle().to_chain_complex()
        gamma = apply_boundary(cx, cx.chain(2, {0: 1}))
        with pytest.raises(NetworkError, match="negative"):
            make_network(cx, [-1], gamma)

    def test_zero_gamma(self):
        cx = triangle().to_chain_complex()
        with pytest.raises(NetworkError, match="zero"):
            make_network(cx, [1], cx.chain(1))

    def test_graph_gamma_in_other_component(self):
        with pytest.raises(NetworkError):
            gen_graph([(0, 1), (2, 3)], [1, 1], 0, 3)


class TestMaxFlowLP:
    def test_md_values(self, md):
        f = max_flow_lp(md.network)
        assert f.value == Fraction(1, 2)
        assert all(f.flow[j] == Fraction(1, 2) for j in md.parts["mobius"])
        assert f.flow[md.parts["disk"][0]] == 1

    def test_mdw(self, mdw):
        assert max_flow_lp(mdw.network).value == Fraction(3, 2)

    def test_zero_capacities(self, md):
        net = make_network(md.network.complex, [0] * md.network.n_top, md.network.gamma)
        assert max_flow_lp(net).value == 0

    def test_conservation_including_gamma(self, mdw):
        f = max_flow_lp(mdw.network)
        assert verify_flow(mdw.network, f.flow, f.value)


class TestMinCutLP:
    def test_md(self, md):
        assert min_cut_lp(md.network).value == Fraction(1, 2)

    def test_mdw_value_and_gap(self, mdw):
        cut = min_cut_lp(mdw.network)
        assert cut.value == Fraction(3, 2)
        assert brute_min_combinatorial_cut(mdw.network)[1] == 2

    def test_single_edge(self):
        net = gen_graph([(0, 1)], [1], 0, 1).network
        cut = min_cut_lp(net)
        assert cut.value == 1 and cut.directed_cut == {0}

    def test_unit_gamma_cut(self, mdw):
        cut = min_cut_lp(mdw.network)
        gamma = mdw.network.gamma
        assert sum(a * g for a, g in zip(cut.cochain, gamma)) == -1
        assert cut.directed_cut == {j for j, a in enumerate(cut.coboundary) if a < 0}

    def test_norm_is_reported_separately(self, mdw):
        cut = min_cut_lp(mdw.network)
        assert cut.norm == sum(abs(a) * c for a, c in zip(cut.coboundary, mdw.network.capacities))
        assert cut.norm >= cut.value


class TestVerify:
    def test_flow_replay(self, md):
        f = max_flow_lp(md.network)
        assert verify_flow(md.network, f.flow, f.value)

    def test_doubled_flow_breaks_capacity(self, md):
        f = max_flow_lp(md.network)
        assert not verify_flow(md.network, f.flow * 2, f.value * 2)
        assert "capacity" in flow_violation(md.network, f.flow * 2, f.value * 2)

    def test_zero_flow(self, md):
        assert verify_flow(md.network, md.network.complex.chain(2), 0)

    def test_bumped_flow_breaks_conservation(self, md):
        f = list(max_flow_lp(md.network).flow)
        f[0] = Fraction(1, 4)
        assert "conservation" in flow_violation(md.network, f, Fraction(1, 2))

    def test_gamma_cut_from_lp(self, md):
        assert verify_gamma_cut(md.network, min_cut_lp(md.network).cochain)

    def test_zero_cochain_is_not_a_cut(self, md):
        assert not verify_gamma_cut(md.network, md.network.complex.cochain(1))

    def test_four_cycle_indicator(self):
        # s = 0, t = 2 opposite on 0 -> 1 -> 2 -> 3 -> 0
        sc = four_cycle_graph()
        cx = sc.to_chain_complex()
        net = make_network(cx, [1] * 4, {0: -1, 2: 1})
        # by hand: p = indicator of {0, 1} has p(t - s) = -1 and coboundary on 1->2 and 3->0
        assert verify_gamma_cut(net, {0: 1, 1: 1})
        assert verify_gamma_cut(net, {0: 1})
        assert not verify_gamma_cut(net, {2: 1})  # takes the value +1 on gamma

    def test_directed_cut_from_lp(self, mdw):
        assert verify_directed_combinatorial_cut(mdw.network, min_cut_lp(mdw.network).directed_cut)

    def test_empty_set_on_md(self, md):
        # 2 * (flow of value 1/2) is a non-negative chain with boundary gamma
        assert not verify_directed_combinatorial_cut(md.network, set())

    def test_everything(self, md):
        assert verify_directed_combinatorial_cut(md.network, range(md.network.n_top))


class TestBrute:
    def test_mdw(self, mdw):
        C, w = brute_min_combinatorial_cut(mdw.network)
        assert w == 2
        # one triangle of the wedge plus one of the strip or disk; the pairs with
        # the disk are checked one by one in TestProperties
        assert len(C & set(mdw.parts["wedge"])) == 1

    def test_single_triangle(self):
        assert brute_min_combinatorial_cut(triangle_network()) == (frozenset({0}), 1)

    def test_hitting_set(self):
        b = gen_hitting_set([1, 2, 3], [[1, 2], [2, 3]])
        C, w = brute_min_combinatorial_cut(b.network)
        assert w == 1
        assert C == {1}  # element triangle of 2

    def test_guard(self):
        b = gen_random(1, 8, 2, 0.6)
        assert b.network.n_top > 25
        with pytest.raises(BruteForceGuardError):
            brute_min_combinatorial_cut(b.network)

    def test_max_subset_size(self, mdw):
        with pytest.raises(BruteForceGuardError):
            brute_min_combinatorial_cut(mdw.network, max_subset_size=1)

    def test_order_is_weight_then_index(self):
        # parallel edges s->t through two paths with different weights
        net = gen_graph([(0, 1), (1, 3), (0, 2), (2, 3)], [1, 1, 1, 1], 0, 3).network
        C, w = brute_min_combinatorial_cut(net, weight=[3, 1, 1, 2])
        assert w == 2 and C == {1, 2}

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000))
    def test_brute_is_minimal(self, seed):
        net = gen_random_graph(seed, max_edges=7).network
        C, w = brute_min_combinatorial_cut(net)
        assert is_combinatorial_cut(net, C)
        # oracle: every cheaper subset fails
        for k in range(len(C)):
            for D in combinations(range(net.n_top), k):
                if sum(net.capacities[j] for j in D) < w:
                    assert not is_combinatorial_cut(net, D)


class TestSupportingCochain:
    def test_minimal_mdw_cut(self, mdw):
        C, _ = brute_min_combinatorial_cut(mdw.network)
        p = find_supporting_cochain(mdw.network.complex, C)
        assert p is not None
        assert apply_coboundary(mdw.network.complex, p).support() == C

    def test_empty(self, md):
        assert find_supporting_cochain(md.network.complex, set()) is None

    def test_interior_triangle_of_disk(self):
        # a disk has no top cohomology, so a lone interior triangle is a coboundary support
        sc = big_disk()
        cx = sc.to_chain_complex()
        interior = sc.index((0, 1, 2))
        p = find_supporting_cochain(cx, {interior})
        assert apply_coboundary(cx, p).support() == {interior}
        # oracle: the unit cochain lies in the column space of the coboundary matrix
        target = [1 if j == interior else 0 for j in range(cx.dims[2])]
        assert solve_linear(cx.top_boundary.transpose(), target) is not None

    def test_single_triangle_of_sphere(self):
        # pairing with the fundamental class rules out a one-triangle coboundary
        cx = octahedron_surface().to_chain_complex()
        assert find_supporting_cochain(cx, {0}) is None
        assert solve_linear(cx.top_boundary.transpose(), [1] + [0] * 7) is None

    def test_rim_triangle(self):
        sc = big_disk()
        cx = sc.to_chain_complex()
        rim = sc.index((1, 5, 6))
        p = find_supporting_cochain(cx, {rim})
        assert apply_coboundary(cx, p).support() == {rim}


class TestTU:
    def test_graph(self):
        assert tu_vertex_integrality_check(gen_random_graph(3).network)

    def test_triangle(self):
        assert tu_vertex_integrality_check(triangle_network())

    def test_mdw_half_entries(self, mdw):
        assert not tu_vertex_integrality_check(mdw.network)


def networkx_max_flow(net, s, t):
    G = nx.DiGraph()
    G.add_nodes_from(range(net.n_faces))
    for j, col in enumerate(net.boundary.columns()):
        u = next(i for i, v in col.items() if v < 0)
        v = next(i for i, v in col.items() if v > 0)
        G.add_edge(u, v, capacity=int(net.capacities[j]))
    return nx.maximum_flow_value(G, s, t)


class TestProperties:
    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000), st.sampled_from([1, 2]))
    def test_strong_duality_and_cut_validity(self, seed, d):
        net = gen_random(seed, 6, d, 0.4).network
        f = max_flow_lp(net)
        cut = min_cut_lp(net)
        assert f.value == cut.value
        assert verify_flow(net, f.flow, f.value)
        assert verify_gamma_cut(net, cut.cochain)
        assert verify_directed_combinatorial_cut(net, cut.directed_cut)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000))
    def test_graphs_integral_and_classical(self, seed):
        net = gen_random_graph(seed).network
        f = max_flow_lp(net)
        assert all(x.denominator == 1 for x in f.flow)
        assert f.value == networkx_max_flow(net, 0, net.n_faces - 1)
        assert f.value == brute_graph_max_flow(net)[0]
        cut = min_cut_lp(net)
        assert cut.value <= brute_min_combinatorial_cut(net)[1]
        assert cut.value == brute_min_combinatorial_cut(net, directed=True)[1]

    def test_mdw_minimal_cuts_have_exact_support(self, mdw):
        net = mdw.network
        C, w = brute_min_combinatorial_cut(net)
        # every disk/wedge pair is a minimal cut with an exact-support cochain
        for dj in mdw.parts["disk"]:
            for wj in mdw.parts["wedge"]:
                assert is_combinatorial_cut(net, {dj, wj})
                p = find_supporting_cochain(net.complex, {dj, wj})
                assert apply_coboundary(net.complex, p).support() == {dj, wj}
