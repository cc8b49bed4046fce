"""Verification suites behind ``pg verify``.

Each suite yields ``CheckReport`` lines ``PASS/SKIP/FAIL <check> <instance> <details>``.
Output depends only on the inputs, never on timing or worker count.
"""

from __future__ import annotations

from fractions import Fraction

from .chaser import chase, check_limit_lemma, free_group
from .corpus import FINITE_CORPUS, load
from .cosets import CosetTable, todd_coxeter
from .gradient import estimate, estimate_from_lattice, finite_p_gradient, finite_rank_gradient, format_rational
from .lattice import check_node, enumerate_lattice
from .oracles import normal_subgroup_count
from .quotient_ops import (CheckReport, certify_free, certify_via_free_subgroup,
                           check_quotient_bound, pi_H_presentation, quotient_by_power)
from .schreier import dp, mod_p_data, schreier_data, subgroup_presentation
from .words import Word, parse_word

fr = format_rational


def _report(ok, name, inst, details):
    return CheckReport("PASS" if ok else "FAIL", name, inst, details)


def suite_schreier(threads=1):
    """Free groups: every node obeys d_p(H) - 1 = (d_p(G) - 1)[G:H]; estimates stay at rank - 1."""
    for rank in (2, 3):
        G = free_group(rank)
        for p in (2, 3):
            L = enumerate_lattice(G, p, 3, threads=threads)
            inst = f"F{rank},p={p},depth=3"
            bad = [n for n in L.nodes() if n.dp_value - 1 != (rank - 1) * n.index]
            yield _report(not bad, "schreier-index", inst,
                          f"nodes={sum(L.sizes())} levels={L.sizes()} violations={len(bad)}")
            for d in range(4):
                est = estimate(G, p, d, threads=threads)
                yield _report(est.value == rank - 1, "schreier-estimate", f"F{rank},p={p},depth={d}",
                              f"estimate={fr(est.value)} expected={rank - 1}/1")
    # two routes to d_p(H): presentation of H vs mod-p data of its table
    for name in ("f2", "f2_a2", "f2xz2"):
        G = load(name)
        L = enumerate_lattice(G, 2, 2, threads=threads)
        bad = 0
        for n in L.nodes():
            sd = schreier_data(n.table)
            if dp(subgroup_presentation(sd), 2) != mod_p_data(sd, 2, with_action=False).dim:
                bad += 1
        yield _report(bad == 0, "schreier-two-routes", f"{name},p=2,depth=2",
                      f"nodes={sum(L.sizes())} disagreements={bad}")


def suite_lattice(threads=1):
    cases = [("f2", 2, 2), ("f2", 3, 2), ("f3", 2, 2), ("f2_a2", 2, 2), ("f2_a2", 3, 2), ("z4", 2, 2),
             ("s3", 2, 2), ("s3", 3, 2), ("d4", 2, 2), ("q8", 2, 2), ("f2", 2, 3)]
    for name, p, depth in cases:
        G = load(name)
        L = enumerate_lattice(G, p, depth, threads=threads)
        sizes = L.sizes() + [0] * (depth + 1 - len(L.sizes()))
        oracle = [normal_subgroup_count(G, p, k) for k in range(depth + 1)]
        yield _report(sizes == oracle, "lattice-oracle", f"{name},p={p},depth={depth}",
                      f"levels={sizes} oracle={oracle}")
        problems = 0
        for node in L.nodes():
            try:
                check_node(node, p)
            except Exception:
                problems += 1
            if node.level and not node.parent_keys:
                problems += 1
        yield _report(problems == 0, "lattice-nodes", f"{name},p={p},depth={depth}",
                      f"normal, complete, index p^level, parent present: failures={problems}")


def suite_finite_p(threads=1):
    for name, p, expected in (("z4", 2, Fraction(-1, 4)), ("z6", 2, Fraction(-1, 2)), ("z3", 2, Fraction(-1)),
                              ("z9", 3, Fraction(-1, 9)), ("s3", 2, Fraction(-1, 2)), ("a4", 2, Fraction(-1))):
        G = load(name)
        value = finite_p_gradient(G, p, threads=threads)
        L = enumerate_lattice(G, p, 2 if name != "z9" else 3, threads=threads)
        est = estimate_from_lattice(L)
        ok = value == expected and est.exact and est.value == expected
        yield _report(ok, "finite-p", f"{name},p={p}",
                      f"value={fr(value)} expected={fr(expected)} exact={str(est.exact).lower()}")


def suite_rank_gradient(threads=1):
    for name in FINITE_CORPUS:
        G = load(name)
        order = todd_coxeter(G).n_cosets
        value = finite_rank_gradient(G)
        yield _report(value == Fraction(-1, order), "rank-gradient", name, f"order={order} RG={fr(value)}")


def suite_index_scaling(threads=1):
    for name in FINITE_CORPUS:
        G = load(name)
        for p in (2, 3):
            whole = finite_p_gradient(G, p, threads=threads)
            L = enumerate_lattice(G, p, 64, threads=threads)
            bad = []
            for node in L.nodes():
                H = subgroup_presentation(schreier_data(node.table))
                sub = finite_p_gradient(H, p, threads=threads)
                if sub / node.index != whole:
                    bad.append((node.index, sub))
            yield _report(not bad, "index-scaling", f"{name},p={p}",
                          f"RG_p={fr(whole)} nodes={sum(L.sizes())} mismatches={len(bad)}")


ORBIT_WORDS = ("a", "b", "a b", "a b^-1", "a^2 b", "a b a^-1 b^-1", "b a b", "a^3")


def orbit_pairs(threads=1):
    """(G, node, x) triples from the F2 and <a,b|a^2> lattices at p = 2."""
    for name in ("f2", "f2_a2"):
        G = load(name)
        L = enumerate_lattice(G, 2, 2, threads=threads)
        for node in L.nodes():
            for text in ORBIT_WORDS:
                yield name, G, node, parse_word(text, G.generators), text


def suite_orbit_relators(threads=1):
    count = bad = inconsistent = 0
    for name, G, node, x, text in orbit_pairs(threads):
        piH, rep = pi_H_presentation(G, node, x, 2)
        count += 1
        if not (rep.added_relator_count * rep.m == rep.index and rep.dp_after >= rep.dp_before - rep.index // rep.m):
            bad += 1
        # the same table is a subgroup table of G/<<x^m>>; its mod-p data must match pi(H)
        Q = quotient_by_power(G, x, rep.m)
        dim = mod_p_data(schreier_data(CosetTable(Q, node.table.action)), 2, with_action=False).dim
        if dim != rep.dp_after:
            inconsistent += 1
    yield _report(count >= 50 and bad == 0, "orbit-relators", "f2+f2_a2,p=2,depth=2",
                  f"pairs={count} |T|*m=[G:H] and dp_after>=dp_before-[G:H]/m: failures={bad}")
    yield _report(inconsistent == 0, "orbit-relators-consistency", "f2+f2_a2,p=2,depth=2",
                  f"pairs={count} dp(pi(H)) vs quotient-lattice route: disagreements={inconsistent}")


def quotient_bound_cases():
    f2, f3, f2a2 = load("f2"), load("f3"), load("f2_a2")
    a2 = Word.gen(0)
    yield "F2/<<a^2>>", f2, a2, 1, certify_free(f2), (1, 2, 3)
    yield "F3/<<a^4>>", f3, a2, 2, certify_free(f3), (1, 2, 3)
    yield "F2/<<a>>", f2, a2, 0, certify_free(f2), (0, 1, 2)
    L = enumerate_lattice(f2a2, 2, 1)
    node = next(n for n in L.levels[1] if not subgroup_presentation(schreier_data(n.table)).relators)
    yield "<a,b|a^2>/<<b^2>>", f2a2, Word.gen(1), 1, certify_via_free_subgroup(node), (1, 2)


def suite_quotient_bound(threads=1):
    for inst, G, x, k, cert, depths in quotient_bound_cases():
        for depth in depths:
            rep = check_quotient_bound(G, x, 2, k, depth, cert, witness_depth=max(depth, k), instance=f"{inst},depth={depth}",
                              threads=threads)
            yield rep


def suite_chaser(threads=1):
    for alpha in (Fraction(3, 4), Fraction(1, 2)):
        traj = chase(alpha, 2, 2, threads=threads)
        yield from check_limit_lemma(traj)
        final = traj.estimates()[-1]
        yield _report(True, "chase", f"alpha={fr(alpha)},p=2,depth=2",
                      f"steps={len(traj.ledger.steps)} final_estimate={fr(final)} "
                      f"certified_lower={fr(traj.ledger.certified_lower)} stop={traj.stop_reason.replace(' ', '_')}")
    traj = chase(Fraction(1, 2), 2, 2, threads=threads)
    yield _report(traj.estimates()[-1] == traj.ledger.certified_lower == Fraction(1, 2), "chase-exact",
                  "alpha=1/2,p=2,depth=2", "final estimate equals certified lower bound 1/2")


SUITES = {
    "schreier": suite_schreier,
    "lattice": suite_lattice,
    "finite-p": suite_finite_p,
    "rank-gradient": suite_rank_gradient,
    "index-scaling": suite_index_scaling,
    "orbit-relators": suite_orbit_relators,
    "quotient-bound": suite_quotient_bound,
    "chaser": suite_chaser,
}


def run_suites(names, threads=1):
    if names == ["all"] or names == "all":
        names = list(SUITES)
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
        yield from SUITES[name](threads)
