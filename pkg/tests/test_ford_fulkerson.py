from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from complexes import triangle
from simplicial_flows.chains import apply_boundary
from simplicial_flows.flows import FlowResult, NetworkError, brute_graph_max_flow, make_network, max_flow_lp, verify_flow
from simplicial_flows.ford_fulkerson import (
    AugmentingChain,
    FordFulkersonError,
    augment,
    boundary_of,
    find_augmenting_chain,
    half_saturated,
    is_acyclic,
    max_flow_ff,
    repair,
    residual,
    trace_records,
    zero_flow,
)
from simplicial_flows.generators import gen_graph, gen_octahedron, gen_random, gen_random_graph

HALF = Fraction(1, 2)


def flow_of(net, values, k):
    return FlowResult(net.complex.chain(net.d, [Fraction(v) for v in values]), Fraction(k))


def md_half_flow(md):
    net = md.network
    values = [HALF if j in md.parts["mobius"] else 1 for j in range(net.n_top)]
    return flow_of(net, values, HALF)


def triangle_net():
    cx = triangle().to_chain_complex()
    gamma = list(apply_boundary(cx, cx.chain(2, [1])))
    return make_network(cx, [1], gamma)


def unit_path():
    return gen_graph([(0, 1), (1, 2)], [1, 1], 0, 2).network


def hemispheres():
    # both caps are oriented so that their boundary is the equator
    net = gen_octahedron().network
    north = [1] * 4 + [0] * 4
    south = [0] * 4 + [1] * 4
    for cap in (north, south):
        assert list(apply_boundary(net.complex, net.complex.chain(2, cap))) == list(net.gamma)
    return net, north, south


class TestResidual:
    def test_zero_flow_on_md(self, md):
        rc = residual(md.network, zero_flow(md.network))
        assert set(rc.forward) == {1} and set(rc.backward) == {0}
        assert rc.sigma_forward is None and rc.sigma_backward == 0

    def test_half_flow_on_md(self, md):
        rc = residual(md.network, md_half_flow(md))
        for j in md.parts["mobius"]:
            assert (rc.forward[j], rc.backward[j]) == (HALF, HALF)
        (dj,) = md.parts["disk"]
        assert (rc.forward[dj], rc.backward[dj]) == (0, 1)
        assert rc.sigma_backward == HALF

    def test_saturated_triangle(self):
        net = triangle_net()
        rc = residual(net, flow_of(net, [1], 1))
        assert rc.forward == (0,) and rc.backward == (1,)

    def test_capacities_sum(self, mdw):
        f, _ = max_flow_ff(mdw.network)
        rc = residual(mdw.network, f)
        assert all(a + b == c for a, b, c in zip(rc.forward, rc.backward, mdw.network.capacities))

    def test_infeasible_flow_rejected(self, md):
        with pytest.raises(NetworkError):
            residual(md.network, flow_of(md.network, [1] * md.network.n_top, 1))


class TestAugmentingChain:
    def test_zero_flow_on_md(self, md):
        net = md.network
        chain = find_augmenting_chain(residual(net, zero_flow(net)))
        assert chain is not None
        direction = chain.net(net.n_top)
        assert list(apply_boundary(net.complex, net.complex.chain(2, direction))) == list(net.gamma)
        assert all(d == 1 for j, d in enumerate(direction) if j in md.parts["mobius"])
        assert direction[md.parts["disk"][0]] == 2
        assert chain.step == HALF

    def test_none_at_optimum(self, md):
        assert find_augmenting_chain(residual(md.network, md_half_flow(md))) is None

    def test_none_on_saturated_path(self):
        net = unit_path()
        assert find_augmenting_chain(residual(net, flow_of(net, [1, 1], 1))) is None

    def test_support_has_positive_residual(self, mdw):
        net = mdw.network
        f, _ = max_flow_ff(net)
        half = FlowResult(net.complex.chain(2, [x / 2 for x in f.flow]), f.value / 2)
        rc = residual(net, half)
        chain = find_augmenting_chain(rc)
        assert chain is not None
        assert all(a > 0 and rc.capacity(j, d) > 0 for (j, d), a in chain.coefficients.items())


class TestAugment:
    def test_md_one_step(self, md):
        net = md.network
        f0 = zero_flow(net)
        f1 = augment(net, f0, find_augmenting_chain(residual(net, f0)))
        assert f1.value == HALF
        assert verify_flow(net, f1.flow, f1.value)
        # oracle: the componentwise values
        assert f1.flow.coefficients == md_half_flow(md).flow.coefficients

    def test_unit_path(self):
        net = unit_path()
        f0 = zero_flow(net)
        f1 = augment(net, f0, find_augmenting_chain(residual(net, f0)))
        assert f1.value == 1 and list(f1.flow) == [1, 1]

    def test_saturates_something(self):
        checked = 0
        for seed in range(20):
            net = gen_random(seed, 7, 2, 0.35).network
            f0 = zero_flow(net)
            chain = find_augmenting_chain(residual(net, f0))
            if chain is None:
                continue
            f1 = augment(net, f0, chain)
            rc = residual(net, f1)
            touched = {j for j, _ in chain.coefficients}
            assert any(rc.forward[j] == 0 or rc.backward[j] == 0 for j in touched)
            checked += 1
        assert checked >= 5

    def test_zero_step_rejected(self, md):
        with pytest.raises(FordFulkersonError):
            augment(md.network, zero_flow(md.network), AugmentingChain({(0, 1): Fraction(1)}, Fraction(0)))


class TestHalfSaturated:
    def test_zero_flow(self, md):
        assert half_saturated(md.network, zero_flow(md.network)) == frozenset()

    def test_md_half_flow(self, md):
        assert half_saturated(md.network, md_half_flow(md)) == frozenset(md.parts["mobius"])

    def test_acyclic_empty_and_single(self, md):
        assert is_acyclic(md.network, [])
        assert all(is_acyclic(md.network, [j]) for j in range(md.network.n_top))

    def test_sphere_is_not_acyclic(self):
        net, _, _ = hemispheres()
        assert not is_acyclic(net, range(8))
        assert is_acyclic(net, range(7))

    def test_md_half_saturated_acyclic(self, md):
        # the strip alone has no 2-cycle
        assert is_acyclic(md.network, md.parts["mobius"])


class TestRepair:
    def test_acyclic_unchanged(self, md):
        f = md_half_flow(md)
        assert repair(md.network, f) == f

    def test_zero_flow(self, md):
        assert repair(md.network, zero_flow(md.network)) == zero_flow(md.network)

    def test_sphere_average(self):
        net, north, south = hemispheres()
        f = flow_of(net, [HALF * (a + b) for a, b in zip(north, south)], 1)
        assert verify_flow(net, f.flow, f.value)
        assert half_saturated(net, f) == frozenset(range(8))
        g = repair(net, f)
        assert g.value == 1
        assert boundary_of(net, g) == boundary_of(net, f)
        assert verify_flow(net, g.flow, g.value)
        assert is_acyclic(net, half_saturated(net, g))
        # pushing along the difference of the caps lands on one of them
        assert list(g.flow) in (north, south)

    def test_sphere_offset(self):
        net, north, south = hemispheres()
        eps = Fraction(1, 3)
        values = [a * (1 - eps) + b * eps for a, b in zip(north, south)]
        f = flow_of(net, values, 1)
        g = repair(net, f)
        assert g.value == f.value and boundary_of(net, g) == boundary_of(net, f)
        assert half_saturated(net, g) == frozenset()


class TestMaxFlowFF:
    def test_md(self, md):
        f, it = max_flow_ff(md.network)
        assert f.value == HALF and it >= 1

    def test_mdw(self, mdw):
        f, _ = max_flow_ff(mdw.network)
        assert f.value == Fraction(3, 2)
        assert verify_flow(mdw.network, f.flow, f.value)

    def test_trace(self, mdw):
        steps = []
        f, it = max_flow_ff(mdw.network, trace=steps)
        assert len(steps) == it
        records = trace_records(mdw.network, steps)
        values = [r["value"] for r in records]
        assert values == sorted(set(values)) and values[-1] == f.value
        for s in steps:
            assert is_acyclic(mdw.network, half_saturated(mdw.network, s.repaired))
            assert s.repaired.value == s.augmented.value

    def test_cap_fires_loudly(self, mdw):
        with pytest.raises(FordFulkersonError, match="iteration cap"):
            max_flow_ff(mdw.network, max_iterations=0)

    def test_zero_capacity(self):
        net = gen_graph([(0, 1)], [0], 0, 1).network
        f, it = max_flow_ff(net)
        assert f.value == 0 and it == 0

    @pytest.mark.parametrize("seed", range(12))
    def test_graphs_against_networkx(self, seed):
        b = gen_random_graph(seed, n_vertices=8)
        net = b.network
        f, _ = max_flow_ff(net)
        g = nx.DiGraph()
        g.add_nodes_from(range(8))
        for j, (u, v) in enumerate(b.simplicial.simplices[1]):
            if b.simplicial.orientation.get(j, 1) < 0:
                u, v = v, u
            g.add_edge(u, v, capacity=int(net.capacities[j]))
        ref = nx.maximum_flow_value(g, 0, 7)
        assert f.value == ref == brute_graph_max_flow(net)[0]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([1, 2]))
def test_ff_matches_lp(seed, d):
    net = gen_random(seed, 7, d, 0.35 if d == 2 else 0.5).network
    f, _ = max_flow_ff(net)
    assert verify_flow(net, f.flow, f.value)
    assert f.value == max_flow_lp(net).value
    assert is_acyclic(net, half_saturated(net, f))
