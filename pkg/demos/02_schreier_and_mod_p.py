# Subgroup presentations and the mod-p abelianization of a subgroup.
# Run: python demos/02_schreier_and_mod_p.py

import numpy as np

from pgradient import load, todd_coxeter
from pgradient.schreier import dp, mod_p_data, schreier_data, subgroup_presentation

G = load("f2_a2")  # <a, b | a^2>
print(G)

# the index-2 subgroup not containing a
H = todd_coxeter(G, [G.word("b"), G.word("a b a^-1")])
sd = schreier_data(H)
print("index", H.n_cosets, "Schreier generators", sd.names())
print("words:", [G.format(w) for w in sd.words])
P = subgroup_presentation(sd)
print("presentation of H:", P)   # free of rank 2

# the other index-2 subgroup, containing a
K = todd_coxeter(G, [G.word("a"), G.word("b^2"), G.word("b a b^-1")])
print("presentation of K:", subgroup_presentation(schreier_data(K)))

# d_p via the relator matrix of H, and via the coset table directly
for p in (2, 3):
    m = mod_p_data(schreier_data(K), p)
    print(f"p={p}: d_p(K) = {dp(subgroup_presentation(schreier_data(K)), p)} = {m.dim}")

# G acts on K/[K,K]K^2 by conjugation; b swaps the two copies of Z/2
m = mod_p_data(schreier_data(K), 2)
for g, A in zip(G.generators, m.action):
    print(f"action of {g}:\n{A.entries}")
print("b^2 acts trivially:", np.array_equal((m.action[1] @ m.action[1]).entries, np.eye(m.dim, dtype=int)))
