# Drive the p-gradient of a free group down toward a target alpha.
# Run: python demos/05_chasing_alpha.py

import json
from fractions import Fraction

from pgradient import chase, check_limit_lemma

for alpha in (Fraction(3, 4), Fraction(1, 2), Fraction(5, 8), Fraction(13, 8)):
    t = chase(alpha, 2, 2, selection_seed=0)
    print(f"alpha={alpha}: {t.presentations[-1]}  stop: {t.stop_reason}")
    for lower, est in zip(t.certified_lowers(), t.estimates()):
        print(f"   certified {str(lower):>5}  <=  estimate {est}")
    for r in check_limit_lemma(t):
        print("  ", r.status, r.name)

print(json.dumps(chase(Fraction(5, 8), 2, 2).to_json(), indent=1))
