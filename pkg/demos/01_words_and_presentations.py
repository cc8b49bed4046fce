# Words, presentations and coset tables.
# Run: python demos/01_words_and_presentations.py

from pgradient import load, parse_presentation, todd_coxeter
from pgradient.cosets import element_order, trace
from pgradient.words import commutator, invert, parse_word, power

G = parse_presentation("""
# the symmetric group on three letters
gens: a b
rel: a^2
rel: b^3
rel: (a b)^2
""")
print(G)

a, b = G.word("a"), G.word("b")
print("[a,b] =", G.format(commutator(a, b)))
print("(ab)^-1 =", G.format(invert(a * b)))
print("(b a b^-1)^5 =", G.format(power(G.word("b a b^-1"), 5)))

# enumerate cosets of the trivial subgroup: one coset per element
t = todd_coxeter(G)
print("order:", t.n_cosets)
print("coset reps:", [G.format(r) for r in t.reps])
print("order of ab:", element_order(t, a * b), " order of b:", element_order(t, b))

# cosets of <a> are the three points S3 permutes
H = todd_coxeter(G, [a])
print("[G:<a>] =", H.n_cosets, " b moves coset 0 to", trace(H, b, 0))
print(H.dump())

# bundled groups load by name
for name in ("q8", "a4", "s4z2"):
    print(name, todd_coxeter(load(name)).n_cosets)

# huge exponents are handled symbolically
print(parse_word("a^1000000000001", ("a",)).syllables)
