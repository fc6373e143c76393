import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gasp.core import (
    Atom,
    Conjunct,
    CountAggregate,
    Dnf,
    LiteralConjunction,
    Program,
    Rule,
    TOP,
    TooManyAtoms,
    TruthTable,
    UnsatisfiableBody,
    body_key,
    is_convex,
    is_convex_program,
    subsets_in_canonical_order,
    to_dnf,
)
from gasp.parser import parse_program

from conftest import fs
from oracles import all_subsets, convex_by_triples

A, B, C = Atom("a"), Atom("b"), Atom("c")

COUNT_NE_1 = CountAggregate(frozenset({A, B}), "!=", 1)


def lit(pos=(), neg=()):
    return LiteralConjunction(Conjunct(fs(*pos), fs(*neg)))


class TestAtom:
    def test_valid_names(self):
        assert Atom("a").name == "a"
        assert Atom("aB_9").name == "aB_9"
        assert Atom("__aux_t_1").is_reserved
        assert not Atom("a").is_reserved

    @pytest.mark.parametrize("name", ["", "A", "1a", "_x", "a-b", "__other"])
    def test_invalid_names(self, name):
        with pytest.raises(ValueError):
            Atom(name)

    def test_ordering_is_by_name(self):
        assert sorted([B, Atom("__aux_t_1"), A]) == [Atom("__aux_t_1"), A, B]


class TestConjunct:
    def test_clash_rejected(self):
        with pytest.raises(ValueError):
            Conjunct(fs("a"), fs("a", "b"))

    def test_literals_order(self):
        c = Conjunct(fs("b", "a"), fs("c"))
        assert c.literals() == ((A, True), (B, True), (C, False))


class TestEval:
    def test_count_on_full_pair(self):
        assert COUNT_NE_1.eval(fs("a", "b")) is True

    def test_count_on_singleton(self):
        assert COUNT_NE_1.eval(fs("a")) is False

    def test_count_on_empty(self):
        assert COUNT_NE_1.eval(frozenset()) is True

    def test_literal_conjunction(self):
        assert lit(pos=("a",), neg=("b",)).eval(fs("a", "c")) is True

    def test_dnf(self):
        body = Dnf((Conjunct(frozenset(), fs("a", "b")), Conjunct(fs("a", "b"), frozenset())))
        assert body.eval(frozenset()) is True
        assert body.eval(fs("a")) is False

    def test_truth_table(self):
        body = TruthTable(fs("a", "b"), frozenset({fs("a")}))
        assert body.eval(fs("a")) is True
        assert body.eval(fs("a", "b")) is False
        # unmentioned atoms are ignored
        assert body.eval(fs("a", "c")) is True

    def test_truth_table_domain_checked(self):
        with pytest.raises(ValueError):
            TruthTable(fs("a"), frozenset({fs("a", "b")}))


class TestDomain:
    def test_count(self):
        assert COUNT_NE_1.domain == fs("a", "b")

    def test_empty_literal_conjunction(self):
        assert TOP.domain == frozenset()

    def test_dnf_union(self):
        body = Dnf((Conjunct(frozenset(), fs("a", "b")), Conjunct(fs("a", "b"), frozenset())))
        assert body.domain == fs("a", "b")

    def test_truth_table_is_declared(self):
        body = TruthTable(fs("a", "b", "c"), frozenset({fs("a")}))
        assert body.domain == fs("a", "b", "c")


class TestSubsetOrder:
    def test_canonical_order(self):
        got = [fs_ for fs_ in subsets_in_canonical_order([A, B])]
        assert got == [frozenset(), fs("a"), fs("a", "b"), fs("b")]

    def test_counts(self):
        assert len(list(subsets_in_canonical_order([A, B, C]))) == 8


class TestToDnf:
    def test_count_ne_one(self):
        got = to_dnf(COUNT_NE_1)
        assert got == Dnf((
            Conjunct(frozenset(), fs("a", "b")),
            Conjunct(fs("a", "b"), frozenset()),
        ))

    def test_single_positive_literal(self):
        assert to_dnf(lit(pos=("a",))) == Dnf((Conjunct(fs("a"), frozenset()),))

    def test_unsatisfiable_table(self):
        with pytest.raises(UnsatisfiableBody):
            to_dnf(TruthTable(fs("a"), frozenset()))

    def test_unsatisfiable_count(self):
        with pytest.raises(UnsatisfiableBody):
            to_dnf(CountAggregate(fs("a", "b"), ">", 5))

    def test_domain_cap(self):
        wide = CountAggregate(fs(*[f"x{i}" for i in range(8)]), ">=", 1)
        with pytest.raises(TooManyAtoms):
            to_dnf(wide, max_domain=6)

    def test_minterm_count_matches_satisfying_count(self):
        rng = random.Random(7)
        for _ in range(100):
            body = _random_table(rng, 4)
            sat = [s for s in all_subsets(body.domain) if body.eval(s)]
            if not sat:
                with pytest.raises(UnsatisfiableBody):
                    to_dnf(body)
                continue
            assert len(to_dnf(body).disjuncts) == len(sat)

    def test_eval_equivalent_up_to_ten_atoms(self):
        # spot check at a width well past the sizes the suite uses daily
        names = [f"x{i}" for i in range(10)]
        body = CountAggregate(fs(*names), "=", 5)
        dnf = to_dnf(body, max_domain=10)
        rng = random.Random(3)
        for _ in range(50):
            interp = frozenset(Atom(n) for n in names if rng.random() < 0.5)
            assert dnf.eval(interp) == body.eval(interp)


class TestConvexity:
    def test_count_ne_is_not_convex(self):
        assert is_convex(COUNT_NE_1) is False
        assert convex_by_triples(COUNT_NE_1) is False

    def test_monotone_conjunction_is_convex(self):
        assert is_convex(lit(pos=("a", "b"))) is True

    def test_count_at_least_two_of_three(self):
        body = CountAggregate(fs("a", "b", "c"), ">=", 2)
        assert convex_by_triples(body) is True
        assert is_convex(body) is True

    def test_agrees_with_triple_oracle_on_random_tables(self):
        rng = random.Random(11)
        for _ in range(300):
            body = _random_table(rng, rng.randint(1, 5))
            assert is_convex(body) == convex_by_triples(body)

    def test_program_level(self, corpus):
        assert is_convex_program(corpus["p1"]) is False
        assert is_convex_program(corpus["p2"]) is False
        assert is_convex_program(parse_program("a :- b. b.")) is True


class TestProgram:
    def test_duplicates_collapse(self):
        p = parse_program("a :- b. a :- b. b.")
        assert len(p.rules) == 2

    def test_equality_ignores_order_and_spelling(self):
        left = parse_program("a :- b. b.")
        right = parse_program("b. a :- b.")
        assert left == right
        assert hash(left) == hash(right)

    def test_dnf_spelling_differs_from_count(self):
        # same truth function, different surface form: distinct programs,
        # both round-trip faithfully
        count = parse_program("a :- count{a, b} != 1.")
        dnf = parse_program("a :- dnf{~a & ~b | a & b}.")
        assert count != dnf

    def test_table_keys_like_its_minterms(self):
        table = TruthTable(fs("a", "b"), frozenset({frozenset(), fs("a", "b")}))
        assert body_key(table) == body_key(to_dnf(table))

    def test_empty_disjunct_collapses_to_top(self):
        assert body_key(Dnf((Conjunct(frozenset(), frozenset()),))) == body_key(TOP)

    def test_atoms_include_body_domains(self):
        p = Program([Rule(fs("a"), TruthTable(fs("b", "c"), frozenset({fs("b")})))])
        assert p.atoms() == fs("a", "b", "c")


@given(
    st.sets(st.sampled_from("abcde"), max_size=4),
    st.sets(st.sampled_from("abcde"), max_size=5),
    st.sets(st.sampled_from("fgh"), max_size=3),
)
@settings(max_examples=200, deadline=None)
def test_domain_locality(sat_names, interp_names, noise_names):
    """Truth only depends on the restriction to the body's domain."""
    domain = fs("a", "b", "c", "d", "e")
    body = TruthTable(domain, frozenset({fs(*sat_names)}))
    inside = fs(*interp_names)
    noisy = inside | fs(*noise_names)
    assert body.eval(noisy) == body.eval(noisy & body.domain) == body.eval(inside)


@given(st.integers(0, 2**16 - 1), st.integers(1, 4))
@settings(max_examples=200, deadline=None)
def test_to_dnf_equivalence_random_tables(table_bits, width):
    names = [Atom(n) for n in "abcd"[:width]]
    subsets = all_subsets(names)
    family = frozenset(s for i, s in enumerate(subsets) if table_bits >> i & 1)
    body = TruthTable(frozenset(names), family)
    if not family:
        with pytest.raises(UnsatisfiableBody):
            to_dnf(body)
        return
    dnf = to_dnf(body)
    for s in subsets:
        assert dnf.eval(s) == body.eval(s)


def _random_table(rng: random.Random, width: int) -> TruthTable:
    names = [Atom(f"x{i}") for i in range(width)]
    family = frozenset(
        s for s in all_subsets(names) if rng.random() < 0.5
    )
    return TruthTable(frozenset(names), family)
