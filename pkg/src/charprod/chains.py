"""Omega lattices, maximal reducing chains and checks of the chain lemmas.

For an irreducible chi with non-principal constituents alpha_1..alpha_n of
chi*conj(chi), Omega is the set of all intersections of the kernels
Ker(alpha_i), with G standing for the empty intersection. A maximal reducing
chain walks down Omega, each time to a maximal member on which the current
character stops being irreducible.

Every ``verify_*`` function returns a :class:`VerificationReport`. Missing
hypotheses give status ``hypotheses-not-met``, never ``fail``.
"""

from __future__ import annotations

import itertools
import weakref
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from sympy import factorint

from .char_algebra import (
    Decomposition,
    conjugate_by,
    decompose,
    decompose_square,
    induce,
    principal_of,
    restrict,
    restricted_inner_product,
    restriction_norm,
)
from .char_table import (
    Character,
    ClassFunction,
    character_table,
    deflate,
    inner_product,
    kernel,
)
from .errors import CapacityError, NotACharacterError, PreconditionError
from .group_core import (
    Group,
    Subgroup,
    center,
    derived_length,
    is_normal,
    join,
    normalizer,
    relative_derived_length,
    section_centralizer,
    subgroup_generated,
)
from .normal_lattice import chief_series, is_supersolvable, minimal_normal_over, normal_subgroups

__all__ = [
    "PASS",
    "FAIL",
    "UNMET",
    "OmegaLattice",
    "Chain",
    "VerificationReport",
    "omega",
    "build_maximal_chain",
    "maximal_chain",
    "enumerate_maximal_chains",
    "is_maximal_chain",
    "conjugate_chain",
    "chief_factors",
    "faithful_pair",
    "p_max",
    "p_max_bruteforce",
    "verify_lemma_basico1",
    "verify_lemma_basicon",
    "verify_lemma_center",
    "verify_lemma_maximal",
    "verify_lemma_uinthemiddle",
    "verify_plusone_steps",
    "verify_controlling_function",
    "verify_theorem_B",
    "verify_theorem_C",
    "verify_supersolvable_bound",
    "verify_all",
]

PASS, FAIL, UNMET = "pass", "fail", "hypotheses-not-met"

# the fold dedupes at every step, so Omega never exceeds the normal-subgroup count
MAX_OMEGA_GENERATORS = 64
MAX_EXHAUSTIVE_ORDER = 96
MAX_EXHAUSTIVE_CHAINS = 20_000


@dataclass(frozen=True)
class VerificationReport:
    check: str
    group: str
    chi: str
    status: str
    detail: str

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def line(self) -> str:
        return f"{self.check} group={self.group} chi={self.chi} status={self.status} detail={self.detail}"


# ---------------------------------------------------------------------------
# per-group caches (groups are immutable once built)

_lattices: "weakref.WeakKeyDictionary[Group, list[Subgroup]]" = weakref.WeakKeyDictionary()
_solvable: "weakref.WeakKeyDictionary[Group, bool]" = weakref.WeakKeyDictionary()
_supersolvable: "weakref.WeakKeyDictionary[Group, bool]" = weakref.WeakKeyDictionary()


def _lattice(G: Group) -> list[Subgroup]:
    if G not in _lattices:
        _lattices[G] = normal_subgroups(G)
    return _lattices[G]


def _is_solvable(G: Group) -> bool:
    if G not in _solvable:
        _solvable[G] = derived_length(G) is not None
    return _solvable[G]


def _is_supersolvable(G: Group) -> bool:
    if G not in _supersolvable:
        _supersolvable[G] = _is_solvable(G) and is_supersolvable(G, chief_series(G, _lattice(G)))
    return _supersolvable[G]


def _generators(G: Group, S: Subgroup) -> list[int]:
    """A small generating set of S, picked greedily in index order."""
    gens: list[int] = []
    cur = G.trivial()
    for x in S.members:
        if int(x) not in cur:
            gens.append(int(x))
            cur = subgroup_generated(G, gens)
            if cur.mask == S.mask:
                break
    return gens


def _is_irreducible(f: ClassFunction) -> bool:
    return inner_product(f, f) == 1


def faithful_pair(chi: Character) -> tuple[Group, Character]:
    """(G/Ker chi, chi viewed on it); the identity map when chi is already faithful."""
    if kernel(chi).order == 1:
        return chi.group, chi
    Q, _, psi = deflate(chi)
    return Q, psi


# ---------------------------------------------------------------------------
# Omega


@dataclass(frozen=True)
class OmegaLattice:
    group: Group
    chi: ClassFunction
    decomposition: Decomposition
    kernels: tuple[Subgroup, ...]  # Ker(alpha_i), in constituent order
    members: tuple[Subgroup, ...]  # sorted by Subgroup.sort_key

    @property
    def n(self) -> int:
        return len(self.kernels)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return self.decomposition.multiplicities

    @property
    def bottom(self) -> Subgroup:
        mask = self.group.whole().mask
        for K in self.kernels:
            mask &= K.mask
        return Subgroup(self.group, mask)

    def __contains__(self, S: Subgroup) -> bool:
        return any(S.mask == M.mask for M in self.members)


def omega(G: Group, chi: ClassFunction, decomposition: Decomposition | None = None) -> OmegaLattice:
    """All intersections of constituent kernels, folded in one kernel at a time."""
    if chi.group is not G:
        raise PreconditionError("character does not belong to the group")
    dec = decompose_square(chi) if decomposition is None else decomposition
    if dec.eta > MAX_OMEGA_GENERATORS:
        raise CapacityError(f"eta = {dec.eta} exceeds {MAX_OMEGA_GENERATORS}")
    kernels = tuple(kernel(a) for a in dec.alphas())
    masks = {G.whole().mask}
    for K in kernels:
        masks |= {m & K.mask for m in masks}
    members = tuple(sorted((Subgroup(G, m) for m in masks), key=Subgroup.sort_key))
    return OmegaLattice(G, chi, dec, kernels, members)


# ---------------------------------------------------------------------------
# chains


@dataclass(frozen=True)
class Chain:
    """(N_0, theta_0) > ... > (N_k, theta_k) with N_0 = G and theta_0 = chi.

    theta_i is a class function on ``subgroups[i].as_group()``.
    """

    omega: OmegaLattice
    subgroups: tuple[Subgroup, ...]
    thetas: tuple[ClassFunction, ...]

    @property
    def group(self) -> Group:
        return self.omega.group

    @property
    def chi(self) -> ClassFunction:
        return self.thetas[0]

    @property
    def k(self) -> int:
        return len(self.subgroups) - 1

    @property
    def r(self) -> tuple[int, ...]:
        """r_i = #{j : N_i <= Ker(alpha_j), N_{i-1} not <= Ker(alpha_j)} for i = 1..k."""
        out = []
        for prev, cur in zip(self.subgroups, self.subgroups[1:]):
            out.append(sum(1 for K in self.omega.kernels
                           if cur.issubset(K) and not prev.issubset(K)))
        return tuple(out)

    def describe(self) -> list[str]:
        lines = [f"chain group={self.group.label} k={self.k} eta={self.omega.n} r={list(self.r)}"]
        for i, (N, th) in enumerate(zip(self.subgroups, self.thetas)):
            lines.append(f"step={i} order={N.order} theta_deg={th.degree}")
        return lines


def _reducing_candidates(om: OmegaLattice, N: Subgroup, theta: ClassFunction) -> list[Subgroup]:
    """Maximal members M of Omega with M <= N and theta_M reducible."""
    cands = [M for M in om.members if M.issubset(N) and restriction_norm(theta, M) > 1]
    return [M for M in cands if not any(M.is_proper_subset(X) for X in cands)]


def _constituents_of(theta: ClassFunction, M: Subgroup) -> list[ClassFunction]:
    res = restrict(theta, M)
    dec = decompose(res, character_table(res.group))
    return [dec.base[i] for i, c in enumerate(dec.coeffs) if c > 0]


def build_maximal_chain(G: Group, chi: ClassFunction, om: OmegaLattice | None = None) -> Chain:
    """Deterministic maximal chain: largest candidate first, first constituent in table order."""
    om = omega(G, chi) if om is None else om
    subs = [G.whole()]
    thetas = [chi]
    while True:
        cands = _reducing_candidates(om, subs[-1], thetas[-1])
        if not cands:
            return Chain(om, tuple(subs), tuple(thetas))
        M = min(cands, key=lambda S: (-S.order, tuple(S.members)))
        subs.append(M)
        thetas.append(_constituents_of(thetas[-1], M)[0])


def maximal_chain(chi: Character) -> Chain:
    """Chain for the faithful version of chi."""
    Q, psi = faithful_pair(chi)
    return build_maximal_chain(Q, psi)


def enumerate_maximal_chains(G: Group, chi: ClassFunction, om: OmegaLattice | None = None,
                             limit: int = MAX_EXHAUSTIVE_CHAINS) -> list[Chain]:
    """Every maximal chain, over all choices of maximal member and constituent."""
    if G.order > MAX_EXHAUSTIVE_ORDER:
        raise CapacityError(f"exhaustive chains are limited to order {MAX_EXHAUSTIVE_ORDER}")
    om = omega(G, chi) if om is None else om
    out: list[Chain] = []

    def walk(subs: list[Subgroup], thetas: list[ClassFunction]) -> None:
        cands = _reducing_candidates(om, subs[-1], thetas[-1])
        if not cands:
            out.append(Chain(om, tuple(subs), tuple(thetas)))
            if len(out) > limit:
                raise CapacityError(f"more than {limit} maximal chains")
            return
        for M in sorted(cands, key=lambda S: (-S.order, tuple(S.members))):
            for th in _constituents_of(thetas[-1], M):
                walk(subs + [M], thetas + [th])

    walk([G.whole()], [chi])
    return out


def is_maximal_chain(chain: Chain) -> tuple[bool, str]:
    """Re-check the definition of a maximal reducing chain against all of Omega."""
    om = chain.omega
    G = chain.group
    if chain.subgroups[0].mask != G.whole().mask:
        return False, "N_0 is not G"
    if not chain.thetas[0].group is G or not _is_irreducible(chain.thetas[0]):
        return False, "theta_0 is not an irreducible character of G"
    for i in range(1, chain.k + 1):
        N, prev = chain.subgroups[i], chain.subgroups[i - 1]
        th, prev_th = chain.thetas[i], chain.thetas[i - 1]
        if N not in om:
            return False, f"N_{i} is not in Omega"
        if not N.is_proper_subset(prev):
            return False, f"N_{i} is not a proper subgroup of N_{i - 1}"
        if th.group is not N.as_group() or not _is_irreducible(th):
            return False, f"theta_{i} is not irreducible on N_{i}"
        if inner_product(restrict(prev_th, N), th) == 0:
            return False, f"theta_{i} is not a constituent of theta_{i - 1} on N_{i}"
        if restriction_norm(prev_th, N) == 1:
            return False, f"theta_{i - 1} restricts irreducibly to N_{i}"
        if not any(N.mask == M.mask for M in _reducing_candidates(om, prev, prev_th)):
            return False, f"N_{i} is not maximal among reducing members (condition i)"
    last, last_th = chain.subgroups[-1], chain.thetas[-1]
    for M in om.members:
        if M.is_proper_subset(last) and restriction_norm(last_th, M) > 1:
            return False, "theta_k reduces on a smaller member of Omega (condition ii)"
    return True, "ok"


def conjugate_chain(chain: Chain, g: int) -> Chain:
    """(N_i, theta_i^g) for every i; again a maximal chain."""
    thetas = tuple(conjugate_by(th, g) for th in chain.thetas)
    return Chain(chain.omega, chain.subgroups, thetas)


def chief_factors(chain: Chain) -> tuple[Subgroup, ...]:
    """L_i for i = 1..k: the first minimal normal subgroup over N_i inside N_{i-1}."""
    G = chain.group
    lattice = _lattice(G)
    out = []
    for prev, cur in zip(chain.subgroups, chain.subgroups[1:]):
        mins = [L for L in minimal_normal_over(G, cur, lattice) if L.issubset(prev)]
        out.append(min(mins, key=Subgroup.sort_key))
    return tuple(out)


# ---------------------------------------------------------------------------
# p(n)


@lru_cache(maxsize=None)
def p_max(n: int) -> int:
    """Largest product of positive integers summing to n."""
    if not 1 <= n <= 64:
        raise ValueError("p_max is defined here for 1 <= n <= 64")
    return max([n] + [j * p_max(n - j) for j in range(1, n)])


def p_max_bruteforce(n: int) -> int:
    """Maximum over all 2^(n-1) compositions of n."""
    best = 0
    for cuts in itertools.product((False, True), repeat=n - 1):
        prod, run = 1, 1
        for c in cuts:
            if c:
                prod *= run
                run = 1
            else:
                run += 1
        best = max(best, prod * run)
    return best


# ---------------------------------------------------------------------------
# verifiers


def _row_name(chi: ClassFunction) -> str:
    return str(chi.index) if isinstance(chi, Character) else (chi.name or "?")


def _report(check: str, G: Group, chi, status: str, detail: str) -> VerificationReport:
    name = chi if isinstance(chi, str) else _row_name(chi)
    return VerificationReport(check, G.label, name, status, detail)


def _fmt_set(values) -> str:
    return "{" + ",".join(str(v) for v in sorted(set(values))) + "}"


def _vanishes_off(theta: ClassFunction, N: Subgroup) -> bool:
    """theta(g) = 0 for every g in theta's group outside N."""
    H = theta.group
    reps = H.embedding[np.array(H.classes.rep)]
    inside = N.flags[reps]
    return bool(np.all(inside[theta.nonzero_classes()]))


def verify_lemma_basico1(G: Group, L: Subgroup, N: Subgroup,
                         theta: ClassFunction) -> VerificationReport:
    """theta_N reducible iff theta vanishes on L - N; then theta conj(theta) = (1_N)^L + Phi."""
    check = "lemma-basico1"
    H = L.as_group()
    if theta.group is not H:
        raise PreconditionError("theta must live on L.as_group()")
    problems = []
    if not (is_normal(G, L) and is_normal(G, N) and N.is_proper_subset(L)):
        problems.append("N < L are not both normal in G")
    elif relative_derived_length(L, N) != 1:
        problems.append("L/N is not abelian")
    elif any(M.is_proper_subset(L) and N.is_proper_subset(M) for M in _lattice(G)):
        problems.append("L/N is not a chief factor")
    if not _is_irreducible(theta):
        problems.append("theta is not irreducible")
    elif any(not conjugate_by(theta, g).equals(theta) for g in _generators(G, G.whole())):
        problems.append("theta is not G-invariant")
    if problems:
        return _report(check, G, theta, UNMET, "; ".join(problems))
    reducible = restriction_norm(theta, N) > 1
    vanishes = _vanishes_off(theta, N)
    detail = [f"reducible={reducible}", f"vanishes_off_N={vanishes}"]
    ok = reducible == vanishes
    if ok and reducible:
        phi = theta * theta.conj() - induce(principal_of(N), L)
        if phi.is_zero():
            detail.append("Phi=0")
        else:
            try:
                dec = decompose(phi)
                detail.append(f"Phi={list(dec.coeffs)}")
            except NotACharacterError:
                ok = False
                detail.append("Phi is not a character")
            else:
                on_n = restricted_inner_product(phi, principal_of(L), N)
                detail.append(f"[Phi_N,1_N]={on_n}")
                ok = on_n == 0
    return _report(check, G, theta, PASS if ok else FAIL, " ".join(detail))


def verify_lemma_basicon(G: Group, chi: Character) -> VerificationReport:
    """chi_N irreducible iff N lies in no Ker(alpha_i), for every normal N."""
    check = "lemma-basicon"
    if not _is_solvable(G):
        return _report(check, G, chi, UNMET, "group is not solvable")
    dec = decompose_square(chi)
    kernels = [kernel(a) for a in dec.alphas()]
    bad = []
    lattice = _lattice(G)
    for N in lattice:
        irreducible = restriction_norm(chi, N) == 1
        outside = all(not N.issubset(K) for K in kernels)
        if irreducible != outside:
            bad.append(N.order)
    status = FAIL if bad else PASS
    detail = f"normal_subgroups={len(lattice)} disagreements={len(bad)}"
    if bad:
        detail += f" at_orders={bad}"
    return _report(check, G, chi, status, detail)


def _theorem_c_data(chi: Character) -> tuple[tuple[int, ...], list[int]]:
    """(multiplicities a_i, indices i whose kernel is inclusion-maximal)."""
    dec = decompose_square(chi)
    kernels = [kernel(a) for a in dec.alphas()]
    maximal = [i for i, K in enumerate(kernels)
               if not any(K.is_proper_subset(J) for J in kernels)]
    return dec.multiplicities, maximal


def verify_theorem_C(G: Group, chi: Character) -> VerificationReport:
    """Inclusion-maximal kernels carry multiplicity 1, so 1 is among the a_i."""
    check = "theorem-C"
    Q, psi = faithful_pair(chi)
    a, maximal = _theorem_c_data(psi)
    holds = all(a[i] == 1 for i in maximal) and 1 in a
    detail = f"a={_fmt_set(a)} maximal_kernel_a={[a[i] for i in maximal]} 1_in_a={1 in a}"
    problems = []
    if not _is_solvable(Q):
        problems.append("group not solvable")
    if chi.degree == 1:
        problems.append("chi is linear")
    if problems:
        if holds:
            verdict = "conclusion holds"
        elif 1 not in a:
            verdict = f"conclusion fails: 1 not in {_fmt_set(a)}"
        else:
            verdict = "conclusion fails: a maximal kernel has multiplicity > 1"
        return _report(check, G, chi, UNMET,
                       f"hypotheses violated ({', '.join(problems)}); {verdict}; {detail}")
    return _report(check, G, chi, PASS if holds else FAIL, detail)


def verify_lemma_center(G: Group, chi: Character) -> VerificationReport:
    """Z(G) is the intersection of the constituent kernels, for faithful chi."""
    check = "lemma-center"
    Q, psi = faithful_pair(chi)
    bottom = omega(Q, psi).bottom
    Z = center(Q)
    ok = bottom.mask == Z.mask
    return _report(check, G, chi, PASS if ok else FAIL,
                   f"quotient_order={Q.order} center={Z.order} kernel_intersection={bottom.order}")


def verify_lemma_maximal(chain: Chain) -> VerificationReport:
    """Parts (a)-(d) for a chain of a faithful character of a solvable group."""
    check = "lemma-maximal"
    G, chi = chain.group, chain.chi
    if not _is_solvable(G):
        return _report(check, G, chi, UNMET, "group is not solvable")
    if kernel(chi).order != 1:
        return _report(check, G, chi, UNMET, "chi is not faithful")
    failures = []
    lattice = _lattice(G)
    for i in range(1, chain.k + 1):
        lo, hi = chain.subgroups[i], chain.subgroups[i - 1]
        for M in lattice:
            if lo.is_proper_subset(M) and M.issubset(hi) and \
                    restriction_norm(chain.thetas[i - 1], M) != 1:
                failures.append(f"(a) step {i} order {M.order}")
    if not chain.subgroups[-1].is_abelian():
        failures.append("(b) N_k not abelian")
    n = chain.omega.n
    if chain.k > n:
        failures.append("(c) k > eta")
    sup = _is_supersolvable(G)
    if sup and chi.degree > 1 and chain.k > n - 1:
        failures.append("(d) k > eta-1")
    detail = f"k={chain.k} eta={n} supersolvable={sup} N_k_order={chain.subgroups[-1].order}"
    if failures:
        return _report(check, G, chi, FAIL, detail + " failed=" + ";".join(failures))
    return _report(check, G, chi, PASS, detail)


def _invariant_closure(G: Group, elems, conjugators: list[int]) -> Subgroup:
    """Smallest subgroup containing ``elems`` and closed under the given conjugations."""
    S = subgroup_generated(G, elems)
    while True:
        m = S.members
        img = np.concatenate([G.conjugate_elements(m, g) for g in conjugators]) \
            if conjugators else m
        if S.flags[img].all():
            return S
        S = subgroup_generated(G, np.union1d(m, img))


def _maximal_invariant_below(G: Group, K: Subgroup, L: Subgroup, conjugators: list[int]) -> Subgroup:
    """A maximal conjugation-invariant M with K <= M < L (greedy, index order)."""
    M = K
    changed = True
    while changed:
        changed = False
        for x in L.members:
            if int(x) in M:
                continue
            cand = _invariant_closure(G, np.append(M.members, x), conjugators)
            if cand.is_proper_subset(L):
                M = cand
                changed = True
                break
    return M


def _orbit_count(rows: list[ClassFunction], table, acting: list[int]) -> int:
    """Orbits of conjugation by ``acting`` on a set of table rows."""
    index = {table.find(r): t for t, r in enumerate(rows)}
    parent = list(range(len(rows)))

    def root(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in acting:
        for t, r in enumerate(rows):
            img = table.find(conjugate_by(r, g))
            if img not in index:
                raise PreconditionError("conjugation does not preserve the row set")
            a, b = root(t), root(index[img])
            if a != b:
                parent[a] = b
    return len({root(t) for t in range(len(rows))})


def _vanishing_off_subgroup(G: Group, psi: ClassFunction) -> Subgroup:
    H = psi.group
    cls = H.classes
    support = np.concatenate([cls.members[c] for c in psi.nonzero_classes()])
    return subgroup_generated(G, H.embedding[support])


def _chain_prereqs(chain: Chain) -> str | None:
    G = chain.group
    if not _is_solvable(G):
        return "group is not solvable"
    if kernel(chain.chi).order != 1:
        return "chi is not faithful"
    return None


def verify_plusone_steps(chain: Chain) -> VerificationReport:
    """Orbit bound, the plusone2 inequality and the r_i countings for every step."""
    check = "lemma-plusone"
    G, chi = chain.group, chain.chi
    why = _chain_prereqs(chain)
    if why:
        return _report(check, G, chi, UNMET, why)
    n, r = chain.omega.n, chain.r
    failures, steps = [], []
    for i, L in enumerate(chief_factors(chain), start=1):
        lo, hi = chain.subgroups[i], chain.subgroups[i - 1]
        psi = restrict(chain.thetas[i - 1], L)
        if not _is_irreducible(psi):
            failures.append(f"step {i}: theta_{i - 1} reducible on L_{i}")
            continue
        K = join(lo, _vanishing_off_subgroup(G, psi))
        if not K.is_proper_subset(L):
            failures.append(f"step {i}: N_i V(psi) = L_i")
            continue
        M = _maximal_invariant_below(G, K, L, _generators(G, hi))
        TL = character_table(L.as_group())
        loc_M = np.isin(L.as_group().embedding, M.members)
        rows = [ch for ch in list(TL)[1:] if kernel(ch).flags[loc_M].all()]
        H = normalizer(G, M)
        orbits = _orbit_count(rows, TL, _generators(G, H))
        C = section_centralizer(hi, L, lo)
        lhs = relative_derived_length(hi, lo)
        rhs = relative_derived_length(hi, C) + 1
        steps.append(f"{i}:r={r[i - 1]},orbits={orbits},dl={lhs}<={rhs}")
        if orbits > r[i - 1]:
            failures.append(f"step {i}: {orbits} orbits > r_i = {r[i - 1]}")
        if lhs > rhs:
            failures.append(f"step {i}: plusone2 {lhs} > {rhs}")
    if sum(r) > n:
        failures.append(f"sum r = {sum(r)} > {n}")
    if chain.k >= 1 and int(np.prod(r)) > 2 ** (n - 1):
        failures.append(f"prod r = {int(np.prod(r))} > 2^{n - 1}")
    detail = f"k={chain.k} eta={n} r={list(r)} steps=[{' '.join(steps)}]"
    if failures:
        return _report(check, G, chi, FAIL, detail + " failed=" + "; ".join(failures))
    return _report(check, G, chi, PASS, detail)


def _between(G: Group, lo: Subgroup, hi: Subgroup) -> list[Subgroup]:
    """Subgroups U with lo <= U < hi, smallest first."""
    found = {lo.mask: lo}
    frontier = [lo]
    while frontier:
        nxt = []
        for U in frontier:
            for x in hi.members:
                if int(x) in U:
                    continue
                V = subgroup_generated(G, np.append(U.members, x))
                if V.mask != hi.mask and V.mask not in found:
                    found[V.mask] = V
                    nxt.append(V)
        frontier = nxt
    return sorted(found.values(), key=Subgroup.sort_key)


def verify_lemma_uinthemiddle(chain: Chain) -> VerificationReport:
    """Each step has (N_i, theta_i) <= (U, phi) < (L_i, psi) with phi not L_i-invariant."""
    check = "lemma-uinthemiddle"
    G, chi = chain.group, chain.chi
    why = _chain_prereqs(chain)
    if why:
        return _report(check, G, chi, UNMET, why)
    found, failures = [], []
    for i, L in enumerate(chief_factors(chain), start=1):
        lo = chain.subgroups[i]
        theta_i = chain.thetas[i]
        psi = restrict(chain.thetas[i - 1], L)
        movers = _generators(G, L)
        witness = None
        for U in _between(G, lo, L):
            for phi in _constituents_of(psi, U):
                if inner_product(restrict(phi, lo), theta_i) == 0:
                    continue
                if any(not conjugate_by(phi, g).equals(phi) for g in movers):
                    witness = (U.order, phi.degree)
                    break
            if witness:
                break
        if witness is None:
            failures.append(f"step {i}")
        else:
            found.append(f"{i}:|U|={witness[0]},deg={witness[1]}")
    detail = f"k={chain.k} witnesses=[{' '.join(found)}]"
    if failures:
        return _report(check, G, chi, FAIL, detail + " no_witness=" + ",".join(failures))
    return _report(check, G, chi, PASS, detail)


def verify_controlling_function(limit: int = 20, oracle_limit: int = 12) -> VerificationReport:
    """p(n+1) <= 2 p(n), p(n) <= 2^(n-1), and agreement with brute force."""
    bad = [n for n in range(1, limit + 1) if p_max(n) > 2 ** (n - 1)]
    bad += [n for n in range(1, limit) if p_max(n + 1) > 2 * p_max(n)]
    bad += [n for n in range(1, oracle_limit + 1) if p_max(n) != p_max_bruteforce(n)]
    detail = f"n<={limit} oracle<={oracle_limit} p={[p_max(n) for n in range(1, 9)]}"
    status = FAIL if bad else PASS
    return VerificationReport("lemma-controlingfunction", "-", "-", status,
                              detail + (f" failed_at={sorted(set(bad))}" if bad else ""))


def verify_theorem_B(G: Group, chi: Character) -> VerificationReport:
    """chi(1) has at most eta distinct primes; at most eta-1 with multiplicity if supersolvable."""
    check = "theorem-B"
    Q, psi = faithful_pair(chi)
    if not _is_solvable(Q):
        return _report(check, G, chi, UNMET, "group not solvable")
    n = decompose_square(psi).eta
    fac = factorint(chi.degree)
    distinct, total = len(fac), sum(fac.values())
    sup = _is_supersolvable(G)
    ok = distinct <= n
    detail = f"deg={chi.degree} eta={n} distinct_primes={distinct}"
    if sup and chi.degree > 1:
        ok = ok and total <= n - 1
        detail += f" primes_with_multiplicity={total} supersolvable=True"
    return _report(check, G, chi, PASS if ok else FAIL, detail)


def verify_supersolvable_bound(G: Group, chi: Character) -> VerificationReport:
    """dl(G/Ker chi) <= 2 eta(chi) - 1 for supersolvable G and nonlinear chi."""
    check = "theorem-supersolvable"
    if chi.degree == 1:
        return _report(check, G, chi, UNMET, "chi is linear")
    if not _is_supersolvable(G):
        return _report(check, G, chi, UNMET, "group not supersolvable")
    dl = relative_derived_length(G.whole(), kernel(chi))
    n = decompose_square(chi).eta
    ok = dl <= 2 * n - 1
    return _report(check, G, chi, PASS if ok else FAIL, f"dl={dl} eta={n} bound={2 * n - 1}")


def _basico1_instance(chi: Character) -> VerificationReport:
    """The instance used for Theorem C: N a maximal kernel, L/N a chief factor, theta = chi_L."""
    Q, psi = faithful_pair(chi)
    if psi.degree == 1:
        return _report("lemma-basico1", chi.group, chi, UNMET, "chi is linear")
    dec = decompose_square(psi)
    kernels = [kernel(a) for a in dec.alphas()]
    maximal = [K for K in kernels if not any(K.is_proper_subset(J) for J in kernels)]
    N = min(maximal, key=Subgroup.sort_key)
    L = min(minimal_normal_over(Q, N, _lattice(Q)), key=Subgroup.sort_key)
    rep = verify_lemma_basico1(Q, L, N, restrict(psi, L))
    return VerificationReport(rep.check, chi.group.label, _row_name(chi), rep.status,
                              f"|L|={L.order} |N|={N.order} " + rep.detail)


def _chain_reports(chain: Chain, label: str, row: str) -> list[VerificationReport]:
    out = []
    ok, why = is_maximal_chain(chain)
    out.append(VerificationReport("chain-definition", label, row, PASS if ok else FAIL,
                                  f"k={chain.k} {why}"))
    for fn in (verify_lemma_maximal, verify_plusone_steps, verify_lemma_uinthemiddle):
        rep = fn(chain)
        out.append(VerificationReport(rep.check, label, row, rep.status, rep.detail))
    return out


def verify_all(G: Group, chi: Character, exhaustive: bool = False) -> list[VerificationReport]:
    """Every check for one (G, chi); chain lemmas run on the faithful quotient."""
    row = _row_name(chi)
    out = [
        verify_theorem_C(G, chi),
        verify_theorem_B(G, chi),
        verify_supersolvable_bound(G, chi),
        verify_lemma_basicon(G, chi),
        verify_lemma_center(G, chi),
        _basico1_instance(chi),
    ]
    Q, psi = faithful_pair(chi)
    if not _is_solvable(Q):
        for check in ("chain-definition", "lemma-maximal", "lemma-plusone", "lemma-uinthemiddle"):
            out.append(VerificationReport(check, G.label, row, UNMET, "group not solvable"))
        return out
    om = omega(Q, psi)
    out += _chain_reports(build_maximal_chain(Q, psi, om), G.label, row)
    if exhaustive:
        chains = enumerate_maximal_chains(Q, psi, om)
        worst = {}
        for ch in chains:
            for rep in _chain_reports(ch, G.label, row):
                if rep.check not in worst or rep.status == FAIL:
                    worst[rep.check] = rep
        for check, rep in worst.items():
            out.append(VerificationReport(check + "-exhaustive", G.label, row, rep.status,
                                          f"chains={len(chains)} " + rep.detail))
    return out
