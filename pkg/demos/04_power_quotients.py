# Killing a power x^m and watching d_p of a normal subgroup drop by at most [G:H]/m.
# Run: python demos/04_power_quotients.py

from fractions import Fraction

from pgradient import enumerate_lattice, load
from pgradient.quotient_ops import certify_free, check_quotient_bound, pi_H_presentation

G = load("f2")
x = G.word("a")
for node in enumerate_lattice(G, 2, 2).nodes():
    piH, rep = pi_H_presentation(G, node, x, 2)
    print(f"[G:H]={rep.index} m={rep.m} |T|={len(rep.transversal)} dp {rep.dp_before} -> {rep.dp_after}"
          f"  ok={rep.lemma_holds()}")

# lower bound for a quotient by a p-power: estimate >= certified - 1/p^k
for k in (0, 1, 2):
    for depth in (1, 2, 3):
        rep = check_quotient_bound(G, x, 2, k, depth, certify_free(G), witness_depth=max(depth, k))
        print(rep.line())

F3 = load("f3")
rep = check_quotient_bound(F3, F3.word("a"), 2, 2, 3, certify_free(F3))
print(rep.line(), " gap", rep.gap)
print("bound", Fraction(2) - Fraction(1, 4))
