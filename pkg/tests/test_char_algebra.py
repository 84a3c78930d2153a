import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from charprod.char_algebra import (
    conjugate_by,
    decompose,
    decompose_square,
    eta,
    induce,
    principal_of,
    real_constituents,
    restrict,
    restrict_to_normal,
    restricted_inner_product,
    restriction_norm,
)
from charprod.char_table import ClassFunction, character_table, inner_product, kernel, principal
from charprod.cyclotomic import CycValue
from charprod.errors import NotACharacterError, PreconditionError
from charprod.group_core import center, is_normal, subgroup_generated
from charprod.normal_lattice import normal_subgroups
from support import zoo

# degrees of the A6 irreducibles in the numbering used for the published decomposition
A6_REFERENCE_DEGREES = (1, 5, 5, 9, 10, 8, 8)


def test_irreducible_decomposes_to_itself():
    T = character_table(zoo("GL(2,3)"))
    for ch in T:
        assert decompose(ch).coeffs == tuple(int(i == ch.index) for i in range(len(T)))


def test_a6_degree_ten_square():
    T = character_table(zoo("A6"))
    chi = T.first_of_degree(10)
    dec = decompose_square(chi)
    by_degree = sorted(zip(T.degrees, dec.coeffs))
    # both characters of a repeated degree carry the same coefficient, so sorting is safe
    assert [dict(by_degree)[d] for d in A6_REFERENCE_DEGREES] == [1, 2, 2, 3, 2, 2, 2]
    assert dec.eta == 6 and sorted(dec.multiplicities) == [2, 2, 2, 2, 2, 3]
    assert set(dec.multiplicities) == {2, 3}
    assert dec.reconstruct().equals(chi * chi.conj())


def test_q8_square_is_regular_of_quotient():
    T = character_table(zoo("Q8"))
    dec = decompose_square(T.first_of_degree(2))
    assert dec.coeffs == (1, 1, 1, 1, 0)


@pytest.mark.parametrize("label", ["C7", "S4", "A6", "aE:7,3"])
def test_linear_characters_have_eta_zero(label):
    for ch in character_table(zoo(label)):
        if ch.degree == 1:
            assert eta(ch) == (0, ())


@pytest.mark.parametrize("p", [3, 5])
def test_extraspecial_square_is_induced_centre(p):
    E = zoo(f"extraspecial:{p}")
    Z = center(E)
    ind = induce(principal_of(Z), E)
    nonlinear = [ch for ch in character_table(E) if ch.degree > 1]
    assert len(nonlinear) == p - 1
    for th in nonlinear:
        n, mult = eta(th)
        assert n == p * p - 1 and set(mult) == {1}
        assert (th * th.conj()).equals(ind)


def test_restriction_examples():
    S3 = zoo("S3")
    T = character_table(S3)
    chi = T.first_of_degree(2)
    res, irr = restrict_to_normal(chi, S3.whole())
    assert irr and res.equals(chi)
    A3 = kernel(T[1])
    res, irr = restrict_to_normal(chi, A3)
    assert not irr
    TA = character_table(res.group)
    assert decompose(res, TA).coeffs == (0, 1, 1)

    E = zoo("extraspecial:3")
    th = character_table(E).first_of_degree(3)
    res, irr = restrict_to_normal(th, center(E))
    assert not irr
    coeffs = decompose(res).coeffs
    assert sorted(coeffs) == [0, 0, 3] and coeffs[0] == 0


def test_restriction_to_non_normal_subgroup():
    S3 = zoo("S3")
    t = next(g for g in range(6) if S3.element_orders[g] == 2)
    H = subgroup_generated(S3, [t])
    chi = character_table(S3).first_of_degree(2)
    assert decompose(restrict(chi, H)).coeffs == (1, 1)
    with pytest.raises(PreconditionError):
        restrict_to_normal(chi, H)


def test_errors():
    T = character_table(zoo("S4"))
    with pytest.raises(NotACharacterError):
        decompose(T[1] - T[0])
    with pytest.raises(PreconditionError):
        eta(T[1] + T[2])
    with pytest.raises(PreconditionError):
        decompose(character_table(zoo("S3"))[1], T)


def test_induce_principal_from_whole_group():
    G = zoo("D5")
    assert induce(principal(G), G).equals(principal(G))


def _induce_by_elements(theta, G):
    """theta^G(g) = 1/|H| sum over x in G with x g x^-1 in H of theta(x g x^-1)."""
    H = theta.group
    where = {int(h): i for i, h in enumerate(H.embedding)}
    vals = []
    for g in G.classes.rep:
        acc = np.zeros(theta.field.e, dtype=np.int64)
        for x in range(G.order):
            y = oracles.mul(G, oracles.mul(G, x, g), oracles.inverse(G, x))
            if y in where:
                acc += theta.values[H.classes.class_of[where[y]]]
        vals.append(acc)
    return np.array(vals), H.order


@pytest.mark.parametrize("label", ["S3", "Q8", "A4", "D5", "extraspecial:3", "S4"])
def test_induction_matches_element_formula(label):
    G = zoo(label)
    for g in range(0, G.order, max(1, G.order // 6)):
        H = subgroup_generated(G, [g]).as_group()
        for th in character_table(H):
            raw, h = _induce_by_elements(th, G)
            ind = induce(th, G)
            for c in range(G.classes.count):
                assert CycValue(raw[c]) == CycValue(ind.values[c] * h)


def test_conjugate_by_permutes_constituents():
    S4 = zoo("S4")
    V = [N for N in normal_subgroups(S4) if N.order == 4][0]
    TV = character_table(V.as_group())
    for g in range(S4.order):
        images = sorted(TV.find(conjugate_by(ch, g)) for ch in TV)
        assert images == list(range(len(TV)))


SMALL_CORPUS = ["S3", "Q8", "D4", "A4", "D5", "C3*S3", "SL(2,3)", "Q16", "extraspecial:3",
                "heis:3:1,0,0,2", "S4", "GL(2,3)", "C2*A4", "D9"]


@given(st.sampled_from(SMALL_CORPUS), st.data())
def test_frobenius_reciprocity(label, data):
    G = zoo(label)
    gens = data.draw(st.lists(st.integers(0, G.order - 1), max_size=2))
    H = subgroup_generated(G, gens)
    TH = character_table(H.as_group())
    th = TH[data.draw(st.integers(0, len(TH) - 1))]
    chi = character_table(G)[data.draw(st.integers(0, G.order - 1)) % len(character_table(G))]
    left = inner_product(induce(th, G), chi)
    right = inner_product(th, restrict(chi, H))
    assert left == right
    assert restricted_inner_product(chi, chi, H) == restriction_norm(chi, H) == inner_product(
        restrict(chi, H), restrict(chi, H))


@given(st.sampled_from(SMALL_CORPUS + ["A5", "A6"]), st.data())
def test_square_has_principal_coefficient_one(label, data):
    T = character_table(zoo(label))
    ch = T[data.draw(st.integers(0, len(T) - 1))]
    dec = decompose_square(ch)
    assert dec.principal_coeff == 1
    assert sum(c * d for c, d in zip(dec.coeffs, T.degrees)) == ch.degree ** 2
    # constituents of chi*conj(chi) come in conjugate pairs with equal multiplicity
    for i, c in dec.constituents:
        j = T.find(T[i].conj())
        assert dec.coeffs[j] == c


def test_eta_parity_law(corpus_groups):
    checked = 0
    for G in corpus_groups:
        for ch in character_table(G):
            dec = decompose_square(ch)
            if dec.eta % 2:
                assert G.order % 2 == 0, G.label
                assert real_constituents(dec)
                checked += 1
    assert checked > 0


def test_induction_from_abelian_subgroup_raises_eta():
    # a linear character of a maximal abelian subgroup induces to an irreducible of E
    E = zoo("extraspecial:3")
    Z = center(E)
    a = next(g for g in range(E.order) if g not in Z)
    A = subgroup_generated(E, [a, *Z.members.tolist()])
    assert A.order == 9 and is_normal(E, A)
    TA = character_table(A.as_group())
    hits = 0
    for th in TA:
        chi = induce(th, E)
        if inner_product(chi, chi) == 1:
            hits += 1
            assert eta(th)[0] == 0 and eta(chi)[0] == 8
    assert hits == 6


def test_class_function_shape_checked():
    G = zoo("C3")
    with pytest.raises(ValueError):
        ClassFunction(G, np.zeros((2, 3)))
