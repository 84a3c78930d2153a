"""Products, decompositions, eta, restriction and induction of characters."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .char_table import (
    Character,
    CharacterTable,
    ClassFunction,
    character_table,
    inner_product_matrix,
    principal,
)
from .cyclotomic import reduce_mod_phi
from .errors import NotACharacterError, PreconditionError
from .group_core import Group, Subgroup, is_normal

__all__ = [
    "Decomposition",
    "product",
    "decompose",
    "eta",
    "decompose_square",
    "principal_of",
    "restrict",
    "restrict_to_normal",
    "restriction_norm",
    "restricted_inner_product",
    "induce",
    "conjugate_by",
    "constituents",
    "format_decomposition",
    "real_constituents",
]


@dataclass(frozen=True)
class Decomposition:
    base: CharacterTable
    coeffs: tuple[int, ...]

    @property
    def principal_coeff(self) -> int:
        return self.coeffs[0]

    @property
    def constituents(self) -> tuple[tuple[int, int], ...]:
        """(row, multiplicity) for every non-principal constituent."""
        return tuple((i, c) for i, c in enumerate(self.coeffs) if i > 0 and c > 0)

    @property
    def eta(self) -> int:
        return len(self.constituents)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(c for _, c in self.constituents)

    def alphas(self) -> list[Character]:
        return [self.base[i] for i, _ in self.constituents]

    def reconstruct(self) -> ClassFunction:
        vals = np.tensordot(np.array(self.coeffs, dtype=np.int64), self.base.values, axes=1)
        return ClassFunction(self.base.group, vals)


def product(a: ClassFunction, b: ClassFunction) -> ClassFunction:
    return a * b


def decompose(theta: ClassFunction, T: CharacterTable | None = None) -> Decomposition:
    """Multiplicities [theta, chi_i] of every irreducible; theta must be a character."""
    T = character_table(theta.group) if T is None else T
    if T.group is not theta.group:
        raise PreconditionError("table and class function belong to different groups")
    coeffs = inner_product_matrix(T.group, T, theta)[:, 0]
    if np.any(coeffs < 0):
        raise NotACharacterError(f"negative multiplicity in {coeffs.tolist()}")
    dec = Decomposition(T, tuple(int(c) for c in coeffs))
    if not dec.reconstruct().equals(theta):
        raise NotACharacterError("class function is not in the span of the irreducibles")
    return dec


def eta(chi: ClassFunction) -> tuple[int, tuple[int, ...]]:
    """(number of distinct non-principal constituents of chi*conj(chi), their multiplicities)."""
    dec = decompose_square(chi)
    return dec.eta, dec.multiplicities


def decompose_square(chi: ClassFunction) -> Decomposition:
    """Decomposition of chi*conj(chi); memoised on table rows."""
    if isinstance(chi, Character):
        cached = chi.__dict__.get("_square")
        if cached is None:
            cached = chi.__dict__["_square"] = _decompose_square(chi)
        return cached
    return _decompose_square(chi)


def _decompose_square(chi: ClassFunction) -> Decomposition:
    T = character_table(chi.group)
    sq = chi * chi.conj()
    if chi.degree == 1 and sq.equals(T.principal):
        return Decomposition(T, (1,) + (0,) * (len(T) - 1))
    if int(inner_product_matrix(chi.group, chi, chi)[0, 0]) != 1:
        raise PreconditionError("eta is defined for irreducible characters only")
    dec = decompose(sq, T)
    if dec.principal_coeff != 1:
        raise NotACharacterError("[chi conj(chi), 1] differs from [chi, chi]")
    return dec


def real_constituents(dec: Decomposition) -> list[int]:
    """Rows among the non-principal constituents whose values are all real."""
    out = []
    for i, _ in dec.constituents:
        ch = dec.base[i]
        if ch.equals(ch.conj()):
            out.append(i)
    return out


# ---------------------------------------------------------------------------
# restriction


def _ambient(group: Group) -> Group:
    return group if group.origin is None else group.origin.parent


def _local_indices(group: Group, S: Subgroup) -> np.ndarray:
    """Index in ``group`` of each element of S, in S's local order."""
    amb = _ambient(group)
    if S.parent is not amb:
        raise PreconditionError("subgroup is not inside the character's group")
    if group is amb:
        return S.members
    where = -np.ones(amb.order, dtype=np.int64)
    where[group.embedding] = np.arange(group.order)
    loc = where[S.members]
    if np.any(loc < 0):
        raise PreconditionError("subgroup is not contained in the character's group")
    return loc


def restrict(theta: ClassFunction, S: Subgroup) -> ClassFunction:
    """theta on ``S.as_group()``; S is a subgroup of theta's ambient group."""
    H = S.as_group()
    loc = _local_indices(theta.group, S)
    reps = loc[np.array(H.classes.rep)]
    return ClassFunction(H, theta.values[theta.group.classes.class_of[reps]])


def restricted_inner_product(a: ClassFunction, b: ClassFunction, S: Subgroup) -> int:
    """[a_S, b_S], counted element-wise without building S's table."""
    a._check_same(b)
    G = a.group
    loc = _local_indices(G, S)
    profile = np.bincount(G.classes.class_of[loc], minlength=G.classes.count)
    return int(inner_product_matrix(G, a, b, weights=profile, divisor=S.order)[0, 0])


def restriction_norm(theta: ClassFunction, S: Subgroup) -> int:
    """[theta_S, theta_S]."""
    return restricted_inner_product(theta, theta, S)


def restrict_to_normal(chi: ClassFunction, N: Subgroup,
                       T_N: CharacterTable | None = None) -> tuple[ClassFunction, bool]:
    """(chi_N, chi_N irreducible). Raises when N is not normal in chi's group."""
    res = restrict(chi, N)
    if T_N is not None and T_N.group is not res.group:
        raise PreconditionError("T_N is not the table of N")
    flag = int(inner_product_matrix(res.group, res, res)[0, 0]) == 1
    amb = _ambient(chi.group)
    if chi.group is amb and not is_normal(amb, N):
        raise PreconditionError("restriction target is not normal")
    if chi.group is not amb:
        sub = chi.group.origin
        if not _normal_in(sub, N):
            raise PreconditionError("restriction target is not normal")
    return res, flag


def _normal_in(A: Subgroup, N: Subgroup) -> bool:
    G = A.parent
    flags = N.flags
    m = N.members
    return all(flags[G.conjugate_elements(m, int(a))].all() for a in A.members)


def constituents(theta: ClassFunction) -> Decomposition:
    return decompose(theta, character_table(theta.group))


def conjugate_by(theta: ClassFunction, g: int) -> ClassFunction:
    """theta^g(x) = theta(g x g^-1) for g in the ambient group normalising theta's group."""
    H = theta.group
    amb = _ambient(H)
    reps = H.embedding[np.array(H.classes.rep)]
    img = amb.table[amb.table[g, reps], amb.inv[g]]
    where = -np.ones(amb.order, dtype=np.int64)
    where[H.embedding] = np.arange(H.order)
    loc = where[img]
    if np.any(loc < 0):
        raise PreconditionError("element does not normalise the subgroup")
    return ClassFunction(H, theta.values[H.classes.class_of[loc]])


# ---------------------------------------------------------------------------
# induction


def induce(theta: ClassFunction, target: Group | Subgroup | None = None) -> ClassFunction:
    """Frobenius induction of theta from its group H to ``target`` (default: ambient).

    theta^G(g) = |G| / (|H| |g^G|) * sum over h in g^G and H of theta(h).
    """
    H = theta.group
    amb = _ambient(H)
    if target is None:
        target = amb
    Gt = target.as_group() if isinstance(target, Subgroup) else target
    if _ambient(Gt) is not amb:
        raise PreconditionError("target and subgroup live in different ambient groups")
    where_h = -np.ones(amb.order, dtype=np.int64)
    where_h[H.embedding] = np.arange(H.order)
    emb_t = Gt.embedding
    if np.any(np.isin(H.embedding, emb_t, invert=True)):
        raise PreconditionError("H is not contained in the target group")
    field = theta.field
    cls = Gt.classes
    canon = reduce_mod_phi(theta.values, field.phi)
    deg = canon.shape[1]
    out = np.zeros((cls.count, field.e), dtype=np.int64)
    for c in range(cls.count):
        loc = where_h[emb_t[cls.members[c]]]
        loc = loc[loc >= 0]
        if loc.size == 0:
            continue
        total = canon[H.classes.class_of[loc]].sum(axis=0) * Gt.order
        div = H.order * cls.size[c]
        if np.any(total % div):
            raise NotACharacterError("induced value is not an algebraic integer")
        out[c, :deg] = total // div
    return ClassFunction(Gt, out, name=f"{theta.name}^G")


# ---------------------------------------------------------------------------
# output


def format_decomposition(chi: Character, dec: Decomposition) -> str:
    terms = ["1*1"] + [f"{c}*{i}" for i, c in dec.constituents]
    return f"chi={chi.index} deg={chi.degree} eta={dec.eta} decomp= " + " + ".join(terms)


def principal_of(S: Subgroup) -> ClassFunction:
    return principal(S.as_group())
