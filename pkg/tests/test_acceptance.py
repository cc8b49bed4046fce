"""Exit criteria.  Each test prints one ``ACCEPTANCE <n> PASS|FAIL`` line with its runtime."""

import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from pgradient.chaser import chase, check_limit_lemma
from pgradient.corpus import FINITE_CORPUS, load
from pgradient.cosets import todd_coxeter
from pgradient.gradient import estimate, estimate_from_lattice, finite_p_gradient, finite_rank_gradient
from pgradient.lattice import enumerate_lattice
from pgradient.oracles import normal_subgroup_count
from pgradient.quotient_ops import certify_free, check_quotient_bound, pi_H_presentation
from pgradient.schreier import schreier_data, subgroup_presentation
from pgradient.verify import orbit_pairs
from pgradient.words import Word, parse_presentation

F = Fraction
pytestmark = pytest.mark.acceptance


@contextmanager
def criterion(capsys, number, title, budget):
    state = {"ok": False}
    start = time.perf_counter()
    try:
        yield state
    finally:
        elapsed = time.perf_counter() - start
        ok = state["ok"] and elapsed < budget
        with capsys.disabled():
            print(f"\nACCEPTANCE {number} {'PASS' if ok else 'FAIL'} {title} ({elapsed:.2f}s, limit {budget}s)")
    assert elapsed < budget, f"took {elapsed:.1f}s, limit {budget}s"


def test_1_free_groups(capsys):
    with criterion(capsys, 1, "free groups: d_p(H)-1 = (d_p(G)-1)[G:H], estimate = rank-1", 30) as st:
        for rank in (2, 3):
            G = load(f"f{rank}")
            for p in (2, 3):
                L = enumerate_lattice(G, p, 3)
                assert not L.truncated
                for node in L.nodes():
                    assert node.dp_value - 1 == (rank - 1) * node.index
                for depth in range(4):
                    sub = enumerate_lattice(G, p, depth) if depth < 3 else L
                    assert estimate_from_lattice(sub).value == rank - 1
        st["ok"] = True


def test_2_lattice_counts(capsys):
    with criterion(capsys, 2, "F2 p=2 levels [1,3,7] and epimorphism-kernel oracle", 10) as st:
        G = load("f2")
        sizes = enumerate_lattice(G, 2, 2).sizes()
        assert sizes == [1, 3, 7]
        assert [normal_subgroup_count(G, 2, k) for k in range(3)] == sizes
        st["ok"] = True


def test_3_finite_cyclic(capsys):
    with criterion(capsys, 3, "cyclic groups: -1/4, -1/2, -1, exact by saturation", 5) as st:
        for text, value in (("gens: a\nrel: a^4", F(-1, 4)), ("gens: a\nrel: a^6", F(-1, 2)),
                            ("gens: a\nrel: a^3", F(-1))):
            G = parse_presentation(text)
            assert finite_p_gradient(G, 2) == value
            est = estimate(G, 2, 8)
            assert est.exact and est.value == value
        st["ok"] = True


def test_4_rank_gradient(capsys):
    with criterion(capsys, 4, "finite rank gradient = -1/|G| on the finite corpus", 60) as st:
        names = [n for n in FINITE_CORPUS]
        assert {"s3", "d4", "q8", "a4", "v4", "z2z4", "s3z2"} <= set(names)
        assert any(n.startswith("z") and n[1:].isdigit() for n in names)
        checked = 0
        for name in names:
            G = load(name)
            order = todd_coxeter(G).n_cosets
            assert order <= 48
            assert finite_rank_gradient(G) == F(-1, order)
            checked += 1
        assert checked >= 8
        st["ok"] = True


def test_5_index_scaling(capsys):
    with criterion(capsys, 5, "finite p-gradient scales by the index on every lattice node", 60) as st:
        for name in FINITE_CORPUS:
            G = load(name)
            for p in (2, 3):
                whole = finite_p_gradient(G, p)
                for node in enumerate_lattice(G, p, 64).nodes():
                    H = subgroup_presentation(schreier_data(node.table))
                    assert finite_p_gradient(H, p) / node.index == whole
        st["ok"] = True


def test_6_orbit_relators(capsys):
    with criterion(capsys, 6, "power quotients of subgroups: |T|m = [G:H], dp drop <= [G:H]/m", 60) as st:
        count = 0
        for _, G, node, x, _ in orbit_pairs():
            _, rep = pi_H_presentation(G, node, x, 2)
            assert len(rep.transversal) * rep.m == rep.index
            assert rep.dp_after >= rep.dp_before - rep.index // rep.m
            count += 1
        assert count >= 50
        st["ok"] = True


def test_7_quotient_bound(capsys):
    with criterion(capsys, 7, "F2/<<a^2>> depth 3 = 1/2 >= 1/2; F3/<<a^4>> >= 7/4", 120) as st:
        f2, f3, a = load("f2"), load("f3"), Word.gen(0)
        rep = check_quotient_bound(f2, a, 2, 1, 3, certify_free(f2))
        assert rep.status == "PASS" and rep.estimate == F(1, 2) and rep.estimate >= 1 - F(1, 2)
        for depth in (1, 2, 3):
            rep = check_quotient_bound(f3, a, 2, 2, depth, certify_free(f3), witness_depth=max(depth, 2))
            assert rep.status == "PASS" and rep.estimate >= F(7, 4)
        st["ok"] = True


def test_8_chaser(capsys):
    with criterion(capsys, 8, "chaser alpha=3/4 and 1/2: ledger, sandwich, exact finish at 1/2", 120) as st:
        for alpha in (F(3, 4), F(1, 2)):
            t = chase(alpha, 2, 2)
            assert t.ledger.spent <= t.ledger.budget
            for lower, est in zip(t.certified_lowers(), t.estimates()):
                assert lower <= est
            assert all(r.status == "PASS" for r in check_limit_lemma(t))
            if alpha == F(1, 2):
                assert t.estimates()[-1] == t.ledger.certified_lower == F(1, 2)
        st["ok"] = True


def test_9_determinism(capsys):
    with criterion(capsys, 9, "verify --suite all: --threads 1 and --threads 8 byte-identical", 600) as st:
        outs = []
        for threads in ("1", "8"):
            res = subprocess.run([sys.executable, "-m", "pgradient.cli", "verify", "--suite", "all",
                                  "--threads", threads], capture_output=True)
            assert res.returncode == 0, res.stderr.decode()
            outs.append(res.stdout)
        assert outs[0] == outs[1] and outs[0]
        lines = outs[0].decode().splitlines()
        assert all(line.startswith("PASS ") for line in lines)
        st["ok"] = True
