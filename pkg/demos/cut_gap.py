# Add a wedge of two disks bounded by the figure eight.  The LP cut is 3/2
# but any set of triangles whose removal unbounds gamma weighs at least 2.
from simplicial_flows import generators
from simplicial_flows.flows import (
    brute_min_combinatorial_cut,
    is_combinatorial_cut,
    max_flow_lp,
    min_cut_lp,
    verify_gamma_cut,
)

b = generators.gen_mdw()
net = b.network
print("max flow:", max_flow_lp(net).value)

cut = min_cut_lp(net)
print("lp cut value:", cut.value, " valid:", verify_gamma_cut(net, cut.cochain))
print("coboundary entries used:", [str(x) for x in sorted(set(cut.coboundary))])
print("support of the negative part:", sorted(cut.directed_cut))

C, w = brute_min_combinatorial_cut(net)
print("cheapest combinatorial cut:", sorted(C), "weight", w)
for name, idx in b.parts.items():
    print("  ", name, sorted(set(idx) & C))

# one triangle from the strip+disk side and one from the wedge; dropping
# the disk triangle instead of the strip one works equally well
disk, wedge = b.parts["disk"][0], b.parts["wedge"][0]
print("disk + wedge also a cut:", is_combinatorial_cut(net, {disk, wedge}))
print("a single triangle is not:", any(is_combinatorial_cut(net, {j}) for j in range(net.n_top)))
