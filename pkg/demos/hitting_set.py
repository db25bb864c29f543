# Minimum combinatorial cuts encode minimum hitting sets.
from simplicial_flows.flows import brute_min_combinatorial_cut, min_cut_lp
from simplicial_flows.generators import brute_min_hitting_set, gen_hitting_set

universe = [1, 2, 3, 4, 5]
family = [{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}]
b = gen_hitting_set(universe, family)
net = b.network
print(b.description)
print("cells:", net.n_top, " element cells:", b.parts["elements"], " set cells:", b.parts["subsets"])

h = brute_min_hitting_set(universe, family)
C, w = brute_min_combinatorial_cut(net)
labels = net.complex.labels[2]
print("hitting set:", h)
print("cut:", [labels[j] for j in sorted(C)], "weight", w)
# the relaxation can be strictly cheaper: here a 5-cycle gives 5/2
print("lp relaxation:", min_cut_lp(net).value)
