# The octahedron in R^3 splits space into an inner and an outer void.
# Flows become shortest paths between the two halves of the inner void,
# cuts become cheapest unit flows.
from fractions import Fraction

from simplicial_flows import generators
from simplicial_flows.embedded import build_dual, max_flow_shortest_path, min_cut_via_min_cost_flow
from simplicial_flows.flows import brute_min_combinatorial_cut, max_flow_lp, min_cut_lp

for b in (generators.gen_octahedron(), generators.gen_octahedron(split=True), generators.gen_planar_cycle()):
    net, voids = b.network, b.voids
    dual = build_dual(net, voids)
    print(b.name)
    print("  dual vertices:", dual.vertices)
    for j, (u, v, w) in enumerate(dual.edges[:-1]):
        print(f"    simplex {j}: {u} -> {v}  weight {w}")
    f = max_flow_shortest_path(net, voids)
    print("  shortest-path flow:", f.value, " lp:", max_flow_lp(net).value)
    cut = min_cut_via_min_cost_flow(net, voids)
    print("  min-cost cut:", cut.value, " lp:", min_cut_lp(net).value)
    C, w = min_cut_via_min_cost_flow(net, voids, unit_capacities=True)
    print("  combinatorial cut:", sorted(C), w, " brute:", brute_min_combinatorial_cut(net, directed=True)[1])

# random capacities, some of them zero
b = generators.gen_embedded_variant(3)
print(b.name, [str(c) for c in b.network.capacities])
print("  flow", max_flow_shortest_path(b.network, b.voids).value, "=", max_flow_lp(b.network).value)
assert isinstance(max_flow_lp(b.network).value, Fraction)
