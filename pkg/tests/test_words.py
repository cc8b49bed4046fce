import pytest
from hypothesis import given, strategies as st

from pgradient.corpus import load, names
from pgradient.errors import PresentationSyntaxError
from pgradient.words import (Presentation, Word, commutator, format_word, invert, multiply, parse_presentation,
                             parse_word, power, print_presentation, reduce)

from conftest import words

AB = ("a", "b")


def w(text, gens=AB):
    return parse_word(text, gens)


def test_reduce_examples():
    assert reduce([(0, 1), (0, -1), (1, 1)]) == Word.gen(1)
    assert reduce([]) == Word()
    assert reduce([(0, 2), (0, -1), (0, -1), (1, 1), (1, 1)]) == Word.gen(1, 2)


def test_unreduced_word_rejected():
    with pytest.raises(ValueError):
        Word(((0, 1), (0, 1)))
    with pytest.raises(ValueError):
        Word(((0, 0),))


def test_group_operation_examples():
    a, b = Word.gen(0), Word.gen(1)
    assert multiply(a, invert(a)) == Word()
    assert invert(a * b) == w("b^-1 a^-1")
    assert power(a, 4) == w("a^4")
    assert commutator(a, b) == w("a^-1 b^-1 a b")


@given(words(), words(), words())
def test_multiply_associative(u, v, x):
    assert multiply(multiply(u, v), x) == multiply(u, multiply(v, x))


@given(words())
def test_inverse(u):
    assert multiply(u, invert(u)) == Word()
    assert invert(invert(u)) == u


@given(words(), st.integers(-6, 6), st.integers(-6, 6))
def test_power_is_a_homomorphism_from_z(u, m, n):
    assert multiply(power(u, m), power(u, n)) == power(u, m + n)


@given(words(3), words(3))
def test_length_subadditive(u, v):
    assert len(multiply(u, v)) <= len(u) + len(v)


@given(words(3))
def test_word_round_trip(u):
    names = ("a", "b", "c")
    assert parse_word(format_word(u, names), names) == u


def test_parse_examples():
    P = parse_presentation("gens: a b\nrel: a^4")
    assert P == Presentation(AB, (Word.gen(0, 4),))
    P = parse_presentation("gens: a b\nrel: [a,b]")
    assert P.relators == (w("a^-1 b^-1 a b"),)


def test_unknown_generator_reports_position():
    with pytest.raises(PresentationSyntaxError) as exc:
        parse_presentation("gens: a b\nrel: a c")
    assert "unknown generator" in str(exc.value)
    assert exc.value.line == 2 and exc.value.column == 8


@pytest.mark.parametrize("text", [
    "rel: a", "gens: a a", "gens: a\nrel: a^", "gens: a\nrel: (a", "gens: a b\nrel: [a b]", "gens: a\nfoo: a",
    "gens: a\nrel: a $",
])
def test_syntax_errors(text):
    with pytest.raises(PresentationSyntaxError):
        parse_presentation(text)


def test_nested_brackets_and_powers():
    assert w("[a, b]^2") == power(commutator(Word.gen(0), Word.gen(1)), 2)
    assert w("(a b)^-1") == w("b^-1 a^-1")
    assert w("[a^2, (a b)]") == commutator(w("a^2"), w("a b"))
    assert w("1") == Word()


def test_comments_and_blank_lines():
    P = parse_presentation("# S3\n\ngens: a b  # two\nrel: a^2\n  rel: b^3\nrel: (a b)^2\n")
    assert P.ngens == 2 and len(P.relators) == 3


ROUND_TRIP = [
    "gens: a", "gens: a b", "gens: a b c", "gens: a\nrel: a^4", "gens: a\nrel: 1", "gens: a b\nrel: [a,b]",
    "gens: a b\nrel: a^2\nrel: b^3\nrel: (a b)^2", "gens: x y z\nrel: z^2\nrel: [x,z]\nrel: [y,z]",
    "gens: a b\nrel: b^-1 a b a^-2", "gens: a b\nrel: a^4\nrel: a^2 b^-2\nrel: b^-1 a b a",
    "gens: a b\nrel: [[a,b],a]\nrel: [[a,b],b]", "gens: g0 g1\nrel: g0^100 g1^-7",
    "gens: a b c\nrel: (a b c)^5", "gens: a b\nrel: ([a,b] a)^-3", "gens: s t\nrel: s t s^-1 t^-2",
    "gens: a b\nrel: a^2\nrel: b^2\nrel: (a b)^4", "gens: u_1 u_2\nrel: u_1^3 u_2^3",
    "gens: a b c d\nrel: [a,b] [c,d]", "gens: a\nrel: a^6\nrel: a^4", "gens: a b\nrel: a b a^-1 b^-1 a",
]


@pytest.mark.parametrize("text", ROUND_TRIP + [f"@{n}" for n in names()])
def test_presentation_round_trip(text):
    P = load(text[1:]) if text.startswith("@") else parse_presentation(text)
    assert parse_presentation(print_presentation(P)) == P


def test_round_trip_corpus_is_large_enough():
    assert len(ROUND_TRIP) + len(names()) >= 20


def test_normalize_drops_trivial_and_duplicates():
    P = parse_presentation("gens: a b\nrel: a^2\nrel: 1\nrel: a^2\nrel: [a,b] [b,a]")
    Q, dropped = P.normalize()
    assert Q.relators == (w("a^2"),) and dropped == [1, 2, 3]


def test_relator_generator_range_checked():
    with pytest.raises(ValueError):
        Presentation(("a",), (Word.gen(1),))


def test_large_exponents_stay_symbolic():
    u = power(Word.gen(0), 10 ** 12)
    assert u.syllables == ((0, 10 ** 12),)
    assert power(w("a b"), 3) == w("a b a b a b")
    assert power(w("b a b^-1"), 5) == w("b a^5 b^-1")
