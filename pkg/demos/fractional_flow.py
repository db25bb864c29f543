# A Möbius strip glued to a disk: the maximum flow is 1/2 even though
# every capacity is 1.
from fractions import Fraction

from simplicial_flows import generators
from simplicial_flows.chains import relative_boundary_matrix, smith_normal_form
from simplicial_flows.flows import max_flow_lp, min_cut_lp
from simplicial_flows.ford_fulkerson import half_saturated, max_flow_ff, trace_records

b = generators.gen_md()
net = b.network
print(b.description)
print("triangles:", net.n_top, " strip:", len(b.parts["mobius"]), " disk:", len(b.parts["disk"]))

f = max_flow_lp(net)
print("max flow (lp):", f.value)
strip = {f.flow[j] for j in b.parts["mobius"]}
disk = {f.flow[j] for j in b.parts["disk"]}
print("flow on strip triangles:", *map(str, strip), " on the disk:", *map(str, disk))

# the strip wraps twice around the seam, the disk once; so f(disk) = 2 f(strip)
cut = min_cut_lp(net)
print("min cut (lp):", cut.value, " norm:", cut.norm)

steps = []
g, its = max_flow_ff(net, trace=steps)
print("ford-fulkerson:", g.value, "after", its, "iteration(s)")
for rec in trace_records(net, steps):
    print("  ", rec["iter"], rec["value"], "half-saturated:", len(rec["half_saturated"]))
print("half-saturated at the end:", len(half_saturated(net, g)))

# the reason: the strip relative to its rim has a factor 2 in its Smith form
rim = [i for i, x in enumerate(net.gamma) if x]
R = relative_boundary_matrix(net.complex, 2, b.parts["mobius"], rim)
print("invariant factors:", smith_normal_form(R))
assert f.value == g.value == Fraction(1, 2)
