# The lattice of normal subgroups of p-power index, and truncated p-gradients.
# Run: python demos/03_lattices_and_estimates.py

from fractions import Fraction

from pgradient import enumerate_lattice, estimate, finite_p_gradient, load
from pgradient.oracles import normal_subgroup_count

F2 = load("f2")
L = enumerate_lattice(F2, 2, 3)
print("F2, p=2, level sizes:", L.sizes())
print("oracle counts:", [normal_subgroup_count(F2, 2, k) for k in range(4)])
print(L.dump().splitlines()[:5])

# for a free group every node gives (dp - 1)/index = rank - 1
print({Fraction(n.dp_value - 1, n.index) for n in L.nodes()})

for name in ("f2", "f3", "f2_a2", "f2xz2", "d4"):
    row = [estimate(load(name), 2, d) for d in range(4)]
    print(f"{name:6s}", " ".join(str(e.value) for e in row), " exact" if row[-1].exact else "")

# finite groups: the lattice runs out and the value is exact
for name, p in (("z4", 2), ("z6", 2), ("s4", 2), ("s4z2", 2), ("a4", 3)):
    print(name, p, finite_p_gradient(load(name), p))

# an infinite group whose 2-quotients never stop: truncated at the index cap
L = enumerate_lattice(load("bs12"), 2, 20, max_index=1024)
print("bs12:", L.sizes(), "truncated", L.truncated)
