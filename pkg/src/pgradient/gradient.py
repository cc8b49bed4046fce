"""p-gradient estimates and exact values.

All values are ``fractions.Fraction``.  An estimate at depth k is the minimum
of (d_p(H) - 1)/[G:H] over the normal subgroups of index at most p^k, so it
bounds the true p-gradient from above and is exact once the lattice runs out.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cosets import CosetTable, descend, key_hash, todd_coxeter, whole_group, word_permutation
from .errors import EnumerationError, IntegrityError, NonInvariantFunctionalError, NotSaturatedError
from .fp_linalg import Functional, check_prime, is_invariant
from .lattice import DEFAULT_MAX_INDEX, MAX_DEPTH, Lattice, enumerate_lattice
from .schreier import functional_edge_values, mod_p_data, schreier_data
from .words import Presentation

RANK_GRADIENT_ORDER_BOUND = 200
MAX_GENERATING_SET = 3


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    num, sep, den = text.partition("/")
    return Fraction(int(num), int(den) if sep else 1)


@dataclass(frozen=True)
class GradientEstimate:
    value: Fraction
    witness: bytes
    witness_level: int
    p: int
    depth: int
    exact: bool
    truncated: bool

    def to_json(self) -> dict:
        return {
            "value": format_rational(self.value),
            "depth": self.depth,
            "exact": self.exact,
            "truncated": self.truncated,
            "witness_index": f"{self.p}^{self.witness_level}",
            "witness_key_hash": key_hash(self.witness),
        }


def estimate_from_lattice(L: Lattice) -> GradientEstimate:
    best = None
    for node in L.nodes():
        q = Fraction(node.dp_value - 1, node.index)
        cand = (q, node.index, node.key)
        if best is None or cand < best[0]:
            best = (cand, node)
    (value, _, key), node = best
    return GradientEstimate(value, key, node.level, L.p, L.depth, L.saturated, L.truncated)


def estimate(P: Presentation, p: int, depth: int, node_budget: int | None = None,
             threads: int = 1, max_index: int = DEFAULT_MAX_INDEX) -> GradientEstimate:
    """Truncated p-gradient: min of (d_p(H)-1)/[G:H] over normal H of index <= p^depth."""
    return estimate_from_lattice(enumerate_lattice(P, p, depth, node_budget, threads, max_index))


def resolve_path(P: Presentation, p: int, path) -> tuple[CosetTable, int]:
    """Follow a sequence of functionals down from G; return the final table and its d_p."""
    check_prime(p)
    table = whole_group(P)
    for step, coeffs in enumerate(path):
        sd = schreier_data(table)
        mpd = mod_p_data(sd, p)
        lam = coeffs if isinstance(coeffs, Functional) else Functional(p, tuple(coeffs))
        if lam.dim != mpd.dim:
            raise NonInvariantFunctionalError(
                f"functional has {lam.dim} coefficients but V has dimension {mpd.dim}", step)
        if not is_invariant(lam, mpd.action):
            raise NonInvariantFunctionalError(f"kernel of {lam.coefficients} is not G-invariant", step)
        vals = functional_edge_values(sd, mpd, lam)
        table = descend(table, p, lambda c, g: int(vals[c, g]))
    dim = mod_p_data(schreier_data(table), p, with_action=False).dim
    return table, dim


def relative_estimate(P: Presentation, p: int, chain) -> Fraction:
    """inf of (d_p(H_i) - 1)/[G:H_i] over a user-supplied family of subgroups.

    Each chain entry is a path of functionals leading from G to H_i.
    """
    best = None
    for path in chain:
        table, dim = resolve_path(P, p, path)
        q = Fraction(dim - 1, table.n_cosets)
        best = q if best is None or q < best else best
    if best is None:
        raise ValueError("empty chain")
    return best


def finite_p_gradient(P: Presentation, p: int, node_budget: int | None = None,
                      max_depth: int = MAX_DEPTH, threads: int = 1,
                      max_index: int = DEFAULT_MAX_INDEX) -> Fraction:
    """Exact p-gradient -1/|largest p-quotient|, certified by saturating the lattice."""
    L = enumerate_lattice(P, p, max_depth, node_budget, threads, max_index)
    if not L.saturated:
        raise NotSaturatedError("p-quotient tower did not stabilize "
                                f"within depth {max_depth}, index {max_index} and the node budget")
    deepest = L.levels[-1]
    if len(deepest) != 1:
        raise NotSaturatedError(f"deepest level has {len(deepest)} nodes; expected the p-residual alone")
    value = Fraction(-1, deepest[0].index)
    est = estimate_from_lattice(L)
    if est.value != value:
        raise IntegrityError(f"saturated estimate {est.value} disagrees with {value}")
    return value


# ---------------------------------------------------------------- rank gradient of finite groups

class FiniteGroup:
    """A small finite group as a multiplication table from its regular representation."""

    def __init__(self, P: Presentation, order_bound: int = RANK_GRADIENT_ORDER_BOUND):
        try:
            t = todd_coxeter(P, max_cosets=max(order_bound, 1) * 8)
        except EnumerationError as exc:
            raise EnumerationError(f"group order could not be certified <= {order_bound}: {exc}") from exc
        if t.n_cosets > order_bound:
            raise ValueError(f"group has order {t.n_cosets} > {order_bound}")
        self.table = t
        self.order = t.n_cosets
        # element i is the coset of reps[i]; i * j = image of coset i under reps[j]
        self.mul = np.stack([word_permutation(t, w) for w in t.reps], axis=1)
        self._mul = self.mul.tolist()

    def generated(self, gens) -> int:
        """Bitmask of the subgroup generated by ``gens``."""
        mul = self._mul
        seen = 1
        stack = [0]
        while stack:
            x = stack.pop()
            for g in gens:
                y = mul[x][g]
                if not (seen >> y) & 1:
                    seen |= 1 << y
                    stack.append(y)
        return seen

    def subgroups(self) -> list[int]:
        """Every subgroup, as bitmasks, by closing up from the trivial subgroup one element at a time."""
        found = {1: ()}
        frontier = [1]
        while frontier:
            nxt = []
            for S in frontier:
                gens = found[S]
                for x in range(self.order):
                    if (S >> x) & 1:
                        continue
                    T = self.generated(gens + (x,))
                    if T not in found:
                        found[T] = gens + (x,)
                        nxt.append(T)
            frontier = nxt
        return sorted(found, key=lambda m: (bin(m).count("1"), m))

    def rank(self, H: int) -> int:
        """Minimal number of generators of H, trying 0, 1, 2, ... in order."""
        elems = [y for y in range(self.order) if (H >> y) & 1]
        if H == 1:
            return 0
        for d in range(1, MAX_GENERATING_SET + 1):
            for combo in itertools.combinations(elems[1:], d):
                if self.generated(combo) == H:
                    return d
        raise ValueError(f"subgroup of order {len(elems)} needs more than {MAX_GENERATING_SET} generators")


def finite_rank_gradient(P: Presentation, order_bound: int = RANK_GRADIENT_ORDER_BOUND) -> Fraction:
    """Rank gradient of a finite group: min over all subgroups H of (d(H) - 1)/[G:H]."""
    G = FiniteGroup(P, order_bound)
    best = None
    for H in G.subgroups():
        q = Fraction(G.rank(H) - 1, G.order // bin(H).count("1"))
        best = q if best is None or q < best else best
    return best
