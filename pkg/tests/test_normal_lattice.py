import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

import oracles
from charprod.group_core import center, is_normal, subgroup_generated
from charprod.normal_lattice import (
    chief_series,
    core,
    intersection_closure,
    is_solvable,
    is_supersolvable,
    minimal_normal_over,
    normal_subgroups,
    normal_subgroups_bruteforce,
    normal_subgroups_by_subgroup_scan,
)
from support import zoo


def sets(subs):
    return {frozenset(S.members.tolist()) for S in subs}


def test_counts():
    assert len(normal_subgroups(zoo("C7"))) == 2
    S3 = normal_subgroups(zoo("S3"))
    assert [S.order for S in S3] == [1, 3, 6]
    Q8 = normal_subgroups(zoo("Q8"))
    assert [S.order for S in Q8] == [1, 2, 4, 4, 4, 8]
    assert Q8[1] == center(zoo("Q8"))


def test_minimal_normal():
    for label, expect in [("S3", [3]), ("Q8", [2])]:
        G = zoo(label)
        lat = normal_subgroups(G)
        assert [L.order for L in minimal_normal_over(G, G.trivial(), lat)] == expect
        assert minimal_normal_over(G, G.whole(), lat) == []


def test_chief_series_examples():
    assert chief_series(zoo("C5")).factor_orders == (5,)
    S4 = chief_series(zoo("S4"))
    assert [T.order for T in S4.terms] == [24, 12, 4, 1]
    assert tuple(reversed(S4.factor_orders)) == (4, 3, 2)
    assert chief_series(zoo("A6")).factor_orders == (360,)


def test_solvability_examples():
    assert is_solvable(zoo("C2*C4")) and is_supersolvable(zoo("C2*C4"))
    assert is_solvable(zoo("S4")) and not is_supersolvable(zoo("S4"))
    assert is_solvable(zoo("extraspecial:3")) and is_supersolvable(zoo("extraspecial:3"))
    assert not is_solvable(zoo("A6")) and not is_supersolvable(zoo("A6"))


def test_core_examples():
    S3 = zoo("S3")
    t = next(g for g in range(6) if S3.element_orders[g] == 2)
    assert core(S3, subgroup_generated(S3, [t])).order == 1
    S4 = zoo("S4")
    c = next(g for g in range(24) if S4.element_orders[g] == 3)
    assert core(S4, subgroup_generated(S4, [c])).order == 1
    A4 = normal_subgroups(S4)[2]
    assert core(S4, A4) == A4


def test_intersection_closure():
    assert intersection_closure({0b1100, 0b0110}) == {0b1100, 0b0110, 0b0100}


@pytest.mark.parametrize("label", ["C6", "S3", "Q8", "D4", "A4", "D6", "C2*C2*C2", "extraspecial:3", "S4",
                                   "SL(2,3)", "Q16"])
def test_against_oracle(label):
    G = zoo(label)
    assert sets(normal_subgroups(G)) == oracles.normal_subgroups(G)


def test_kernel_method_matches_bruteforce_on_corpus(corpus_groups):
    for G in corpus_groups:
        if G.order > 128:
            continue
        assert sets(normal_subgroups(G)) == sets(normal_subgroups_bruteforce(G)), G.label


@pytest.mark.parametrize("label", ["D4", "A4", "C3*S3", "GL(2,3)", "Q16", "D10"])
def test_subgroup_scan_agrees(label):
    G = zoo(label)
    assert sets(normal_subgroups_by_subgroup_scan(G)) == sets(normal_subgroups(G))


def test_chief_factors_prime_powers(corpus_groups):
    for G in corpus_groups:
        if not is_solvable(G):
            continue
        for f in chief_series(G).factor_orders:
            assert len(sympy.factorint(f)) == 1, (G.label, f)


LABELS = ["S3", "D5", "A4", "S4", "SL(2,3)", "GL(2,3)", "extraspecial:3", "A5", "C3*S3"]


@given(st.sampled_from(LABELS), st.data())
def test_core_properties(label, data):
    G = zoo(label)
    gens = data.draw(st.lists(st.integers(0, G.order - 1), max_size=2))
    M = subgroup_generated(G, gens)
    C = core(G, M)
    assert is_normal(G, C) and C.issubset(M)
    assert (C == M) == is_normal(G, M)


@given(st.sampled_from(LABELS))
def test_chief_series_is_normal_and_refined(label):
    G = zoo(label)
    lat = normal_subgroups(G)
    terms = chief_series(G, lat).terms
    assert terms[0].is_whole() and terms[-1].order == 1
    for big, small in zip(terms, terms[1:]):
        assert small.is_proper_subset(big) and is_normal(G, small)
        assert big in minimal_normal_over(G, small, lat)
