"""Adding a power relator x^m and what it does to a normal subgroup H.

With m the order of xH in G/H, the image of H in G/<<x^m>> is presented by
the presentation of H plus one relator ``t x^m t^-1`` per <x>-orbit on the
cosets of H, i.e. [G:H]/m new relators.  Each new relator lowers d_p by at
most one, which is the inequality checked here.  ``check_quotient_bound`` turns that
into a check of the lower bound for the p-gradient of G/<<x^(p^k)>>.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cosets import element_order, orbit_transversal
from .gradient import estimate, finite_p_gradient
from .lattice import Lattice, LatticeNode, enumerate_lattice
from .schreier import dp, rewrite_from, schreier_data, subgroup_presentation_full
from .words import Presentation, Word, invert, multiply, power

CERTIFICATE_TAGS = ("free", "finite-saturated", "index-scaling-derived")


@dataclass(frozen=True)
class CertifiedValue:
    """An exact p-gradient together with how it was obtained."""
    value: Fraction
    tag: str
    note: str = ""

    def __post_init__(self):
        if self.tag not in CERTIFICATE_TAGS:
            raise ValueError(f"unknown certificate tag {self.tag!r}")
        object.__setattr__(self, "value", Fraction(self.value))


def certify_free(P: Presentation) -> CertifiedValue:
    if P.relators:
        raise ValueError("not a free presentation")
    return CertifiedValue(Fraction(P.ngens - 1), "free", f"F_{P.ngens}")


def certify_finite(P: Presentation, p: int, **kw) -> CertifiedValue:
    return CertifiedValue(finite_p_gradient(P, p, **kw), "finite-saturated")


def certify_via_free_subgroup(node: LatticeNode) -> CertifiedValue:
    """RG_p(G) = RG_p(H)/[G:H] for a p-power index normal H whose presentation is free."""
    sub = subgroup_presentation_full(schreier_data(node.table)).presentation
    if sub.relators:
        raise ValueError("the subgroup presentation still has relators")
    return CertifiedValue(Fraction(sub.ngens - 1, node.index), "index-scaling-derived",
                          f"free subgroup of rank {sub.ngens} and index {node.index}")


def quotient_by_power(P: Presentation, x: Word, e: int) -> Presentation:
    """G/<<x^e>>."""
    if not x:
        raise ValueError("x is the identity; the quotient would be degenerate")
    if e < 1:
        raise ValueError("exponent must be positive")
    return P.with_relators([power(x, e)])


@dataclass(frozen=True)
class QuotientReport:
    x: Word
    m: int
    index: int
    transversal: tuple[Word, ...]
    added_relator_count: int
    dp_before: int
    dp_after: int
    q_before: Fraction
    q_after: Fraction

    def lemma_holds(self) -> bool:
        return (self.added_relator_count * self.m == self.index
                and self.added_relator_count == len(self.transversal)
                and self.dp_after >= self.dp_before - self.index // self.m
                and self.q_after >= self.q_before - Fraction(1, self.m))


def pi_H_presentation(P: Presentation, H, x: Word, p: int) -> tuple[Presentation, QuotientReport]:
    """Presentation of the image of H in G/<<x^m>>, m the order of xH.

    ``H`` is a lattice node or the coset table of a normal subgroup of G.
    """
    table = H.table if isinstance(H, LatticeNode) else H
    if table.presentation != P:
        raise ValueError("subgroup table is over a different presentation")
    m, T = orbit_transversal(table, x)
    sd = schreier_data(table)
    sub = subgroup_presentation_full(sd)
    xm = power(x, m)
    added = []
    for t in T:
        w, end = rewrite_from(sd, multiply(multiply(t, xm), invert(t)), 0)
        assert end == 0
        added.append(sub.translate(w))
    H = sub.presentation
    piH = H.with_relators(added)
    index = table.n_cosets
    before, after = dp(H, p), dp(piH, p)
    report = QuotientReport(x, m, index, tuple(T), len(added), before, after,
                            Fraction(before, index), Fraction(after, index))
    return piH, report


# ---------------------------------------------------------------- lower bound for power quotients

@dataclass
class CheckReport:
    status: str  # PASS / FAIL / SKIP
    name: str
    instance: str
    details: str
    bound: Fraction | None = None
    estimate: Fraction | None = None

    @property
    def gap(self):
        if self.bound is None or self.estimate is None:
            return None
        return self.estimate - self.bound

    def line(self) -> str:
        return f"{self.status} {self.name} {self.instance} {self.details}"


def order_witness(L: Lattice, x: Word) -> tuple[LatticeNode | None, int]:
    """Deepest node maximizing the order of xH (ties: the smallest key)."""
    best, best_m = None, 0
    for node in L.nodes():
        m = element_order(node.table, x)
        if (m, node.level) > (best_m, best.level if best else -1):
            best, best_m = node, m
    return best, best_m


def check_quotient_bound(P: Presentation, x: Word, p: int, k: int, depth: int, certified: CertifiedValue,
                witness_depth: int | None = None, instance: str = "", threads: int = 1) -> CheckReport:
    """Check estimate(G/<<x^(p^k)>>) >= certified - 1/p^k at the given depth."""
    if not isinstance(certified, CertifiedValue):
        raise TypeError("certified value must be a CertifiedValue carrying a provenance tag")
    name = "quotient-bound" if k > 0 else "quotient-bound-k0"
    L = enumerate_lattice(P, p, depth if witness_depth is None else witness_depth, threads=threads)
    node, m = order_witness(L, x)
    if m < p ** k:
        return CheckReport("SKIP", name, instance,
                           f"witness hypothesis unverified (max order {m} < {p ** k}), check skipped")
    Q = quotient_by_power(P, x, p ** k)
    bound = certified.value - Fraction(1, p ** k)
    est = estimate(Q, p, depth, threads=threads)
    ok = est.value >= bound
    details = (f"witness_order={m} bound={bound.numerator}/{bound.denominator} "
               f"estimate={est.value.numerator}/{est.value.denominator} depth={depth} "
               f"certificate={certified.tag}")
    return CheckReport("PASS" if ok else "FAIL", name, instance, details, bound, est.value)
