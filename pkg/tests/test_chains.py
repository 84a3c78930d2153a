import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from charprod import chains
from charprod.chains import (
    FAIL,
    PASS,
    UNMET,
    build_maximal_chain,
    chief_factors,
    conjugate_chain,
    enumerate_maximal_chains,
    faithful_pair,
    is_maximal_chain,
    maximal_chain,
    omega,
    p_max,
    p_max_bruteforce,
    verify_all,
    verify_controlling_function,
    verify_lemma_basico1,
    verify_lemma_basicon,
    verify_lemma_center,
    verify_lemma_maximal,
    verify_lemma_uinthemiddle,
    verify_plusone_steps,
    verify_theorem_B,
    verify_theorem_C,
)
from charprod.char_algebra import decompose_square, restrict, restriction_norm
from charprod.char_table import character_table, kernel
from charprod.errors import CapacityError
from charprod.group_core import center
from charprod.normal_lattice import is_solvable, normal_subgroups
from support import zoo


def faithful(label, degree):
    G = zoo(label)
    ch = [c for c in character_table(G) if c.degree == degree and kernel(c).order == 1][0]
    return G, ch


def omega_by_scan(G, chi):
    """Kernels found by scanning values, closed under intersection as element sets."""
    dec = decompose_square(chi)
    kers = [frozenset(g for g in range(G.order) if a.value_at(g) == a.degree) for a in dec.alphas()]
    out = {frozenset(range(G.order))}
    for K in kers:
        out |= {S & K for S in out}
    return out


# -- Omega ----------------------------------------------------------------------

def test_omega_of_linear_character_is_whole_group():
    G = zoo("C6")
    om = omega(G, character_table(G)[1])
    assert om.n == 0 and [S.order for S in om.members] == [6]
    assert om.bottom.is_whole()


def test_omega_q8():
    G, chi = faithful("Q8", 2)
    om = omega(G, chi)
    assert [S.order for S in om.members] == [2, 4, 4, 4, 8]
    assert om.members[0] == center(G)


@pytest.mark.parametrize("label,degree", [("extraspecial:3", 3), ("Q8", 2), ("S4", 3), ("SL(2,3)", 2),
                                          ("heis:3:1,0,0,2", 6), ("D7", 2)])
def test_omega_matches_scan(label, degree):
    G = zoo(label)
    chi = character_table(G).first_of_degree(degree)
    om = omega(G, chi)
    assert {frozenset(S.members.tolist()) for S in om.members} == omega_by_scan(G, chi)


def test_omega_extraspecial():
    G, th = faithful("extraspecial:3", 3)
    om = omega(G, th)
    assert om.n == 8
    assert [S.order for S in om.members] == [3, 9, 9, 9, 9, 27]
    assert om.bottom == center(G)


def test_omega_cap(monkeypatch):
    G, th = faithful("extraspecial:5", 5)
    assert omega(G, th).n == 24
    monkeypatch.setattr(chains, "MAX_OMEGA_GENERATORS", 20)
    with pytest.raises(CapacityError):
        omega(G, th)


# -- chains -----------------------------------------------------------------------

def test_chain_of_abelian_group_is_trivial():
    G = zoo("C12")
    for ch in character_table(G):
        assert build_maximal_chain(G, ch).k == 0


def test_chain_q8():
    G, chi = faithful("Q8", 2)
    c = maximal_chain(chi)
    assert c.k == 1 and c.subgroups[1].order == 4 and c.thetas[1].degree == 1
    assert c.r == (1,)
    # every order-4 kernel already splits chi, and the centre lies below them
    for M in omega(G, chi).members:
        if M.order == 4:
            assert restriction_norm(chi, M) == 2
    assert is_maximal_chain(c) == (True, "ok")


def test_chain_extraspecial():
    G, th = faithful("extraspecial:3", 3)
    c = maximal_chain(th)
    assert c.k == 1 and c.subgroups[1].order == 9 and c.thetas[1].degree == 1
    assert sum(c.r) <= 8


def test_chain_descriptions_and_chief_factors():
    G, chi = faithful("aE:7,3", 21)
    c = maximal_chain(chi)
    assert c.describe()[0] == "chain group=aE:7,3 k=2 eta=20 r=[2, 2]"
    Ls = chief_factors(c)
    for i, L in enumerate(Ls, start=1):
        assert c.subgroups[i].is_proper_subset(L) and L.issubset(c.subgroups[i - 1])
        assert L.is_normal()


def test_is_maximal_chain_rejects_broken_chains():
    G, th = faithful("extraspecial:3", 3)
    c = maximal_chain(th)
    Z = center(G)
    # stopping early violates condition (ii)
    short = chains.Chain(c.omega, c.subgroups[:1], c.thetas[:1])
    assert is_maximal_chain(short)[0] is False
    # skipping to Z violates maximality in condition (i)
    thZ = restrict(th, Z)
    lam = [ch for ch in character_table(thZ.group) if ch.degree == 1 and ch.index > 0][0]
    jump = chains.Chain(c.omega, (G.whole(), Z), (th, lam))
    ok, why = is_maximal_chain(jump)
    assert not ok and ("condition" in why or "constituent" in why)


EXHAUSTIVE = ["Q8", "D4", "S3", "A4", "S4", "SL(2,3)", "extraspecial:3", "Q16", "D6", "C3*S3",
              "heis:3:1,0,0,2", "GL(2,3)"]


@pytest.mark.parametrize("label", EXHAUSTIVE)
def test_every_maximal_chain_is_valid(label):
    G = zoo(label)
    for chi in character_table(G):
        if chi.degree == 1:
            continue
        Q, psi = faithful_pair(chi)
        found = enumerate_maximal_chains(Q, psi)
        assert found
        for c in found:
            assert is_maximal_chain(c) == (True, "ok")
            assert sum(c.r) <= omega(Q, psi).n
            assert verify_lemma_maximal(c).status == PASS
            assert verify_plusone_steps(c).status == PASS
            assert verify_lemma_uinthemiddle(c).status == PASS


def test_exhaustive_order_cap():
    G, chi = faithful("aE:7,3", 21)
    with pytest.raises(CapacityError):
        enumerate_maximal_chains(G, chi)


@given(st.sampled_from(["S4", "SL(2,3)", "GL(2,3)", "extraspecial:3", "heis:3:1,0,0,2", "Q16"]), st.data())
def test_conjugate_chains_stay_maximal(label, data):
    G = zoo(label)
    nonlinear = [c for c in character_table(G) if c.degree > 1]
    chi = data.draw(st.sampled_from(nonlinear))
    c = maximal_chain(chi)
    g = data.draw(st.integers(0, c.group.order - 1))
    assert is_maximal_chain(conjugate_chain(c, g)) == (True, "ok")


# -- lemma and theorem verifiers ----------------------------------------------------

def test_basico1_degenerate_and_non_chief():
    G = zoo("C6")
    L = G.whole()
    th = character_table(G)[1]
    assert verify_lemma_basico1(G, L, L, th).status == UNMET
    E, th = faithful("extraspecial:3", 3)
    rep = verify_lemma_basico1(E, E.whole(), center(E), th)
    assert rep.status == UNMET and "chief factor" in rep.detail


def test_basico1_extraspecial():
    E, th = faithful("extraspecial:3", 3)
    for K in normal_subgroups(E):
        if K.order == 9:
            rep = verify_lemma_basico1(E, E.whole(), K, th)
            assert rep.status == PASS and "vanishes_off_N=True" in rep.detail


def test_basico1_rejects_non_invariant_theta():
    S3 = zoo("S3")
    A3 = normal_subgroups(S3)[1]
    lam = [ch for ch in character_table(A3.as_group()) if ch.index == 1][0]
    rep = verify_lemma_basico1(S3, A3, S3.trivial(), lam)
    assert rep.status == UNMET and "invariant" in rep.detail


def test_basicon_examples():
    G, chi = faithful("Q8", 2)
    assert verify_lemma_basicon(G, chi).status == PASS
    S4 = zoo("S4")
    rep = verify_lemma_basicon(S4, character_table(S4).first_of_degree(2))
    assert rep.status == PASS and "normal_subgroups=4" in rep.detail


def test_theorem_c_examples():
    G, chi = faithful("Q8", 2)
    assert verify_theorem_C(G, chi).detail.startswith("a={1}")
    E, th = faithful("extraspecial:3", 3)
    rep = verify_theorem_C(E, th)
    assert rep.status == PASS and "maximal_kernel_a=[1, 1, 1, 1, 1, 1, 1, 1]" in rep.detail


def test_theorem_c_fails_on_a6():
    A6 = zoo("A6")
    rep = verify_theorem_C(A6, character_table(A6).first_of_degree(10))
    assert rep.status == UNMET
    assert "hypotheses violated" in rep.detail and "1 not in {2,3}" in rep.detail


def test_lemma_center_examples():
    G, chi = faithful("Q8", 2)
    assert verify_lemma_center(G, chi).status == PASS
    E, th = faithful("extraspecial:5", 5)
    rep = verify_lemma_center(E, th)
    assert rep.status == PASS and "kernel_intersection=5" in rep.detail


def test_theorem_b_examples():
    G, chi = faithful("heis:3:1,0,0,2", 6)
    rep = verify_theorem_B(G, chi)
    assert rep.status == PASS and "distinct_primes=2" in rep.detail


def test_lemma_maximal_on_known_chains():
    for label, d in [("Q8", 2), ("extraspecial:3", 3), ("aE:7,3", 21)]:
        G, chi = faithful(label, d)
        c = maximal_chain(chi)
        assert c.subgroups[-1].is_abelian()
        for check in (verify_lemma_maximal, verify_plusone_steps, verify_lemma_uinthemiddle):
            assert check(c).status == PASS, (label, check(c).line())


def test_verify_all_marks_non_solvable_steps_unmet():
    A6 = zoo("A6")
    reps = verify_all(A6, character_table(A6).first_of_degree(10))
    assert {r.check for r in reps if r.status == UNMET} >= {"chain-definition", "lemma-maximal"}
    assert not any(r.status == FAIL for r in reps)


def test_report_line_format():
    G, chi = faithful("Q8", 2)
    line = verify_theorem_C(G, chi).line()
    assert line.startswith(f"theorem-C group=Q8 chi={chi.index} status=pass detail=")


# -- p(n) ---------------------------------------------------------------------------

def test_p_max_small_values():
    assert p_max(2) == 2
    assert [p_max(n) for n in range(1, 9)] == [1, 2, 3, 4, 6, 9, 12, 18]


def test_p_max_against_compositions():
    for n in range(1, 13):
        best = max(_prod(c) for c in oracles.compositions(n))
        assert p_max(n) == best == p_max_bruteforce(n)


def _prod(parts):
    out = 1
    for x in parts:
        out *= x
    return out


def test_p_max_bounds():
    assert all(p_max(n) <= 2 ** (n - 1) for n in range(1, 21))
    assert all(p_max(n + 1) <= 2 * p_max(n) for n in range(1, 64))
    with pytest.raises(ValueError):
        p_max(0)
    with pytest.raises(ValueError):
        p_max(65)


def test_controlling_function_report():
    assert verify_controlling_function().status == PASS


@given(st.integers(2, 60))
def test_p_max_is_a_product_of_twos_and_threes(n):
    v = p_max(n)
    while v % 3 == 0:
        v //= 3
    assert v & (v - 1) == 0
    assert any(_prod(p) == p_max(n) for p in [[3] * (n // 3) + ([n % 3] if n % 3 else []),
                                               [3] * (n // 3 - 1) + [2, 2]] if sum(p) == n)
