import random
from fractions import Fraction

import pytest

from pgradient.chaser import BudgetLedger, Trajectory, candidate_words, chase, check_limit_lemma, free_group
from pgradient.cosets import element_order
from pgradient.gradient import estimate
from pgradient.lattice import enumerate_lattice
from pgradient.quotient_ops import quotient_by_power
from pgradient.words import Word, power

F = Fraction


def test_alpha_three_quarters():
    t = chase(F(3, 4), 2, 2)
    assert t.presentations[0].ngens == 2
    assert t.ledger.budget == F(1, 4)
    assert len(t.ledger.steps) == 1
    step = t.ledger.steps[0]
    assert step.k == 2 and step.spent == F(1, 4) and step.certified_lower == F(3, 4)
    assert t.ledger.remaining == 0


def test_alpha_one_takes_no_steps():
    t = chase(F(1), 2, 2)
    assert t.ledger.steps == [] and len(t.presentations) == 1
    assert t.estimates() == [1] and t.ledger.certified_lower == 1


def test_alpha_half_is_exact():
    t = chase(F(1, 2), 2, 2)
    (step,) = t.ledger.steps
    assert step.k == 1 and step.x == Word.gen(0) and step.spent == F(1, 2)
    assert t.presentations[-1].relators == (power(Word.gen(0), 2),)
    assert step.estimate == step.certified_lower == F(1, 2)


@pytest.mark.parametrize("alpha", [F(5, 8), F(3, 2), F(7, 4), F(1, 3)])
@pytest.mark.parametrize("seed", [0, 1])
def test_ledger_invariants(alpha, seed):
    t = chase(alpha, 2, 2, selection_seed=seed)
    lg = t.ledger
    assert lg.initial == len(t.presentations[0].generators) - 1
    assert lg.spent <= lg.budget
    assert lg.certified_lower >= alpha
    assert lg.spent == sum(F(1, 2 ** s.k) for s in lg.steps)
    for i, s in enumerate(lg.steps):
        assert t.presentations[i + 1] == quotient_by_power(t.presentations[i], s.x, 2 ** s.k)
        assert s.certified_lower <= s.estimate
        assert s.witness_order > 2 ** s.k
    assert all(r.status == "PASS" for r in check_limit_lemma(t))


def test_witness_is_genuine():
    t = chase(F(5, 8), 2, 2)
    for i, s in enumerate(t.ledger.steps):
        G = t.presentations[i]
        L = enumerate_lattice(G, 2, s.k + 1)
        assert max(element_order(n.table, s.x) for n in L.nodes()) == s.witness_order


def test_seed_is_deterministic():
    a = chase(F(5, 8), 2, 2, selection_seed=4).to_json()
    b = chase(F(5, 8), 2, 2, selection_seed=4).to_json()
    assert a == b


def test_max_steps():
    t = chase(F(1, 8), 2, 1, max_steps=1)
    assert len(t.ledger.steps) == 1 and t.stop_reason == "max_steps reached"


def test_no_witness_stops_cleanly():
    # budget 999/1000 cannot pay for k = 0, and max_k = 0 forbids anything cheaper
    t = chase(F(1, 1000), 2, 1, max_k=0, max_word_length=1)
    assert t.stop_reason.startswith("no witnessed word")
    assert t.ledger.spent <= t.ledger.budget


def test_bad_alpha():
    with pytest.raises(ValueError):
        chase(F(0), 2, 2)
    with pytest.raises(ValueError):
        chase(F(1, 2), 6, 2)


def test_candidate_words_order():
    ws = list(candidate_words(2, 2, random.Random(0)))
    assert sorted(len(x) for x in ws[:2]) == [1, 1]
    assert {len(x) for x in ws[2:]} == {2}
    assert len(ws) == 6  # a, b, a^2, ab, ba, b^2


def test_limit_lemma_constant_chain():
    G = free_group(2)
    t = Trajectory([G], BudgetLedger(F(1), F(1)), 2, 1, estimate(G, 2, 1).value)
    assert all(r.status == "PASS" for r in check_limit_lemma(t))


def test_limit_lemma_flags_a_bad_ledger():
    G = free_group(2)
    t = Trajectory([G], BudgetLedger(F(1, 2), F(1), spent=F(3, 4)), 2, 1, F(1))
    names = {r.name: r.status for r in check_limit_lemma(t)}
    assert names["ledger-budget"] == "FAIL"


def test_json_shape():
    rec = chase(F(3, 4), 2, 2).to_json()
    assert rec["alpha"] == "3/4" and rec["certified_lower"] == "3/4"
    assert rec["steps"][0]["x"] == "a" and rec["steps"][0]["spent"] == "1/4"
    assert "header" in rec and rec["final_presentation"] == "< a b | a^4 >"
