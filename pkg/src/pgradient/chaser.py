"""Drive the p-gradient of a free group down toward a target alpha.

Start from the free group on ceil(alpha)+1 generators (p-gradient
rank - 1) and repeatedly add a relator x^(p^k).  Each such quotient costs at
most 1/p^k of p-gradient, so as long as the total cost stays within
rank - 1 - alpha the true p-gradient of every group on the way is at least
alpha.  The truncated estimates are upper bounds, so every step must satisfy

    certified_lower <= true value <= estimate.

Only finite steps are taken: the limit group, its p-residualization and the
minimal element of the family have no finite content to execute.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .cosets import element_order
from .errors import IntegrityError
from .fp_linalg import check_prime
from .gradient import estimate, format_rational
from .lattice import enumerate_lattice
from .quotient_ops import CheckReport, quotient_by_power
from .words import Presentation, Word, reduce

HEADER = ("finite replay: each step adds x^(p^k) with x of order > p^k in a finite p-quotient; "
          "limit groups, p-residualization and the minimal element are not computed")


@dataclass
class LedgerStep:
    x: Word
    x_text: str
    k: int
    spent: Fraction
    certified_lower: Fraction
    estimate: Fraction
    witness_order: int

    def to_json(self) -> dict:
        return {
            "x": self.x_text,
            "k": self.k,
            "spent": format_rational(self.spent),
            "certified_lower": format_rational(self.certified_lower),
            "estimate": format_rational(self.estimate),
            "witness_order": self.witness_order,
        }


@dataclass
class BudgetLedger:
    alpha: Fraction
    initial: Fraction
    spent: Fraction = Fraction(0)
    steps: list = field(default_factory=list)

    @property
    def budget(self) -> Fraction:
        return self.initial - self.alpha

    @property
    def remaining(self) -> Fraction:
        return self.budget - self.spent

    @property
    def certified_lower(self) -> Fraction:
        return self.initial - self.spent


@dataclass
class Trajectory:
    presentations: list
    ledger: BudgetLedger
    p: int
    depth: int
    seed_estimate: Fraction
    stop_reason: str = ""

    def estimates(self) -> list[Fraction]:
        return [self.seed_estimate] + [s.estimate for s in self.ledger.steps]

    def certified_lowers(self) -> list[Fraction]:
        return [self.ledger.initial] + [s.certified_lower for s in self.ledger.steps]

    def to_json(self) -> dict:
        lg = self.ledger
        return {
            "header": HEADER,
            "alpha": format_rational(lg.alpha),
            "p": self.p,
            "depth": self.depth,
            "rank": self.presentations[0].ngens,
            "initial": format_rational(lg.initial),
            "seed_estimate": format_rational(self.seed_estimate),
            "steps": [s.to_json() for s in lg.steps],
            "spent": format_rational(lg.spent),
            "certified_lower": format_rational(lg.certified_lower),
            "stop_reason": self.stop_reason,
            "final_presentation": str(self.presentations[-1]),
        }


def free_group(rank: int) -> Presentation:
    names = "abcdefghijklmnopqrstuvwxyz"
    gens = tuple(names[i] if rank <= len(names) else f"x{i}" for i in range(rank))
    return Presentation(gens)


def candidate_words(ngens: int, max_length: int, rng: random.Random):
    """Products of generators by increasing length, shuffled within each length."""
    seen = set()
    for length in range(1, max_length + 1):
        batch = []
        for combo in itertools.product(range(ngens), repeat=length):
            w = reduce((g, 1) for g in combo)
            if w and w not in seen:
                seen.add(w)
                batch.append(w)
        batch.sort()
        rng.shuffle(batch)
        yield from batch


def chase(alpha, p: int, depth: int, max_steps: int = 8, selection_seed: int = 0,
          max_k: int = 4, max_word_length: int = 2, node_budget: int | None = None,
          threads: int = 1) -> Trajectory:
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    check_prime(p)
    rank = math.ceil(alpha) + 1
    G = free_group(rank)
    ledger = BudgetLedger(alpha, Fraction(rank - 1))
    seed_est = estimate(G, p, depth, node_budget, threads).value
    traj = Trajectory([G], ledger, p, depth, seed_est)
    rng = random.Random(selection_seed)
    if ledger.certified_lower > seed_est:
        raise IntegrityError("certified lower bound exceeds the seed estimate")

    while True:
        if len(ledger.steps) >= max_steps:
            traj.stop_reason = "max_steps reached"
            break
        if ledger.remaining <= 0:
            traj.stop_reason = "budget exhausted"
            break
        k = 0
        while Fraction(1, p ** k) > ledger.remaining:
            k += 1
        choice = None
        for kk in range(k, max_k + 1):
            # order > p^kk can only show up in a quotient of order >= p^(kk+1)
            L = enumerate_lattice(G, p, max(depth, kk + 1), node_budget, threads)
            for x in candidate_words(G.ngens, max_word_length, rng):
                m = max(element_order(n.table, x) for n in L.nodes())
                if m > p ** kk:
                    choice = (x, kk, m)
                    break
            if choice:
                break
        if choice is None:
            traj.stop_reason = f"no witnessed word for any affordable k in [{k}, {max_k}]"
            break
        x, kk, m = choice
        G = quotient_by_power(G, x, p ** kk)
        ledger.spent += Fraction(1, p ** kk)
        if ledger.spent > ledger.budget:
            raise IntegrityError("budget overspent")
        est = estimate(G, p, depth, node_budget, threads).value
        lower = ledger.certified_lower
        if lower > est:
            raise IntegrityError(f"certified lower bound {lower} exceeds estimate {est}")
        ledger.steps.append(LedgerStep(x, traj.presentations[0].format(x), kk, ledger.spent, lower, est, m))
        traj.presentations.append(G)
    return traj


def check_limit_lemma(traj: Trajectory) -> list[CheckReport]:
    """Inequalities the chain G_0 ->> G_1 ->> ... ->> G_last must satisfy."""
    lowers = traj.certified_lowers()
    ests = traj.estimates()
    last = lowers[-1]
    inst = f"alpha={format_rational(traj.ledger.alpha)},p={traj.p},depth={traj.depth}"
    out = []

    def add(ok, name, details):
        out.append(CheckReport("PASS" if ok else "FAIL", name, inst, details))

    add(all(a >= b for a, b in zip(lowers, lowers[1:])), "ledger-monotone",
        "certified lower bounds non-increasing: " + " ".join(map(format_rational, lowers)))
    add(traj.ledger.spent <= traj.ledger.budget, "ledger-budget",
        f"spent={format_rational(traj.ledger.spent)} budget={format_rational(traj.ledger.budget)}")
    add(all(lo <= e for lo, e in zip(lowers, ests)), "sandwich",
        "certified<=estimate: " + " ".join(f"{format_rational(lo)}<={format_rational(e)}" for lo, e in zip(lowers, ests)))
    add(all(e >= last for e in ests), "chain-estimates",
        f"every estimate >= final certified lower {format_rational(last)}")
    return out
