"""Exact character tables by the Dixon-Schneider method.

Class sums act on the centre of the group algebra through the structure
constants ``c[j, r, s]``; over GF(p) with p = 1 (mod e) the central characters
are the common eigenvectors of these matrices. Degrees follow from the
orthogonality relations and each value is lifted to the multiset of
eigenvalues of a representing matrix, stored as a count vector over the e-th
roots of unity.
"""

from __future__ import annotations

from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .cyclotomic import CycField, CycValue, cyc_conj, cyc_mul, rational_part, reduce_mod_phi
from .errors import DixonError, NotACharacterError, PreconditionError
from .group_core import Group, Subgroup, mask_from_bools, quotient

__all__ = [
    "ClassFunction",
    "Character",
    "CharacterTable",
    "character_table",
    "inner_product",
    "inner_product_matrix",
    "kernel",
    "z_of",
    "conjugate_character",
    "lift_from_quotient",
    "principal",
    "format_table",
]


class ClassFunction:
    """A class function with values in Z[zeta_e], one row per conjugacy class."""

    def __init__(self, group: Group, values: np.ndarray, name: str = ""):
        values = np.array(values, dtype=np.int64)
        k, e = group.classes.count, group.field.e
        if values.shape != (k, e):
            raise ValueError(f"expected values of shape {(k, e)}, got {values.shape}")
        values.setflags(write=False)
        self.group = group
        self.values = values
        self.name = name

    @property
    def field(self) -> CycField:
        return self.group.field

    def _wrap(self, values: np.ndarray) -> "ClassFunction":
        return ClassFunction(self.group, values)

    def _check_same(self, other: "ClassFunction") -> None:
        if other.group is not self.group:
            raise PreconditionError("class functions live on different groups")

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._check_same(other)
        return self._wrap(self.values + other.values)

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        self._check_same(other)
        return self._wrap(self.values - other.values)

    def __neg__(self) -> "ClassFunction":
        return self._wrap(-self.values)

    def __mul__(self, other) -> "ClassFunction":
        if isinstance(other, (int, np.integer)):
            return self._wrap(self.values * int(other))
        self._check_same(other)
        return self._wrap(cyc_mul(self.values, other.values))

    def __rmul__(self, other) -> "ClassFunction":
        if isinstance(other, (int, np.integer)):
            return self._wrap(self.values * int(other))
        return NotImplemented

    def conj(self) -> "ClassFunction":
        return self._wrap(cyc_conj(self.values))

    def value(self, c: int) -> CycValue:
        return CycValue(self.values[c])

    def value_at(self, g: int) -> CycValue:
        return self.value(int(self.group.classes.class_of[g]))

    @property
    def degree(self) -> int:
        return int(rational_part(self.values[0], self.field.phi))

    def canonical(self) -> np.ndarray:
        return reduce_mod_phi(self.values, self.field.phi)

    def equals(self, other: "ClassFunction") -> bool:
        self._check_same(other)
        return not np.any(reduce_mod_phi(self.values - other.values, self.field.phi))

    def is_zero(self) -> bool:
        return not np.any(self.canonical())

    def nonzero_classes(self) -> np.ndarray:
        return np.nonzero(np.any(self.canonical() != 0, axis=1))[0]

    def mod_p(self) -> np.ndarray:
        return self.field.to_mod_p(self.values)

    def __repr__(self) -> str:
        return f"ClassFunction({self.name or '?'} on {self.group.label})"


class Character(ClassFunction):
    """An irreducible character: row ``index`` of ``table``."""

    def __init__(self, table: "CharacterTable", index: int, values: np.ndarray):
        super().__init__(table.group, values, name=f"chi{index}")
        self.table = table
        self.index = index

    def __repr__(self) -> str:
        return f"Character(row={self.index}, deg={self.degree}, group={self.group.label})"


class CharacterTable:
    def __init__(self, group: Group, values: np.ndarray, modular: np.ndarray):
        self.group = group
        self.classes = group.classes
        self.field = group.field
        self.prime = self.field.p
        self.omega_mod_p = self.field.omega
        values = np.asarray(values, dtype=np.int64)
        values.setflags(write=False)
        self.values = values
        self.modular = modular
        self.rows = [Character(self, i, values[i]) for i in range(values.shape[0])]
        self.degrees = tuple(int(v) for v in values[:, 0, :].sum(axis=1))
        self._by_residue = {tuple(int(x) for x in row): i for i, row in enumerate(modular)}

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[Character]:
        return iter(self.rows)

    def __getitem__(self, i: int) -> Character:
        return self.rows[i]

    @property
    def principal(self) -> Character:
        return self.rows[0]

    def find(self, f: ClassFunction) -> int | None:
        """Row index whose values equal ``f`` exactly, or None."""
        if f.group is not self.group:
            raise PreconditionError("class function is on a different group")
        i = self._by_residue.get(tuple(int(x) for x in f.mod_p()))
        if i is not None and self.rows[i].equals(f):
            return i
        return None

    def first_of_degree(self, d: int) -> Character:
        for ch in self.rows:
            if ch.degree == d:
                return ch
        raise PreconditionError(f"no irreducible of degree {d}")


# ---------------------------------------------------------------------------
# Dixon-Schneider


def _nullspace_mod_p(M: np.ndarray, p: int) -> np.ndarray:
    """Basis of {v : M v = 0} as columns."""
    R, piv = kernels.rref_mod_p(np.ascontiguousarray(M, dtype=np.int64), p)
    cols = M.shape[1]
    free = np.setdiff1d(np.arange(cols), piv)
    N = np.zeros((cols, len(free)), dtype=np.int64)
    for t, f in enumerate(free):
        N[f, t] = 1
        N[piv, t] = (-R[: len(piv), f]) % p
    return N


def _column_echelon(B: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    R, piv = kernels.rref_mod_p(np.ascontiguousarray(B.T, dtype=np.int64), p)
    return np.ascontiguousarray(R[: len(piv)].T), piv


def _roots_mod_p(coeffs: np.ndarray, p: int) -> np.ndarray:
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in coeffs[::-1]:
        acc = (acc * xs + int(c)) % p
    return np.nonzero(acc == 0)[0]


def _eigenspaces(R: np.ndarray, p: int) -> list[np.ndarray]:
    d = R.shape[0]
    roots = _roots_mod_p(kernels.charpoly_mod_p(np.ascontiguousarray(R), p), p)
    spaces = []
    for lam in roots:
        N = _nullspace_mod_p((R - lam * np.eye(d, dtype=np.int64)) % p, p)
        if N.shape[1]:
            spaces.append(N)
    if sum(N.shape[1] for N in spaces) != d:
        raise DixonError("class matrix is not diagonalisable over GF(p)")
    return spaces


def _central_characters(G: Group, field: CycField) -> np.ndarray:
    cls = G.classes
    k, p = cls.count, field.p
    if k == 1:
        return np.ones((1, 1), dtype=np.int64)
    C = kernels.class_constants(G.table, G.inv, cls.class_of, np.array(cls.rep, dtype=np.int64), k)
    C %= p
    spaces = [(np.eye(k, dtype=np.int64), np.arange(k))]
    for j in range(1, k):
        if all(B.shape[1] == 1 for B, _ in spaces):
            break
        A = C[j]
        nxt = []
        for B, piv in spaces:
            if B.shape[1] == 1:
                nxt.append((B, piv))
                continue
            R = (A @ B % p)[piv]
            for Y in _eigenspaces(R, p):
                nxt.append(_column_echelon(B @ Y % p, p))
        spaces = nxt
    if len(spaces) != k or any(B.shape[1] != 1 for B, _ in spaces):
        raise DixonError(f"eigenspaces did not split completely ({len(spaces)} of {k})")
    out = np.empty((k, k), dtype=np.int64)
    for i, (B, _) in enumerate(spaces):
        v = B[:, 0]
        if v[0] == 0:
            raise DixonError("common eigenvector vanishes on the identity class")
        out[i] = v * pow(int(v[0]), -1, p) % p
    return out


def _lift(G: Group, field: CycField, chi_p: np.ndarray, degrees: np.ndarray) -> np.ndarray:
    cls = G.classes
    p, E = field.p, field.e
    r, k = chi_p.shape
    out = np.zeros((r, k, E), dtype=np.int64)
    T = G.table
    for s, g in enumerate(cls.rep):
        o = int(G.element_orders[g])
        powers = np.empty(o, dtype=np.int64)
        x = 0
        for l in range(o):
            powers[l] = x
            x = T[x, g]
        V = chi_p[:, cls.class_of[powers]]
        w = field.root(o)
        winv = pow(w, -1, p)
        jl = np.outer(np.arange(o), np.arange(o)) % o
        F = np.array([pow(winv, int(t), p) for t in range(o)], dtype=np.int64)[jl]
        counts = (V @ F % p) * pow(o, -1, p) % p
        if np.any(counts > degrees[:, None]) or np.any(counts.sum(axis=1) != degrees):
            raise DixonError(f"eigenvalue counts at class {s} are inconsistent")
        out[:, s, :: E // o] = counts
    if np.any(field.to_mod_p(out) != chi_p):
        raise DixonError("lifted values do not reduce to the modular values")
    return out


def character_table(G: Group) -> CharacterTable:
    """Irreducible characters of ``G`` in the group's field (cached).

    Rows are ordered by degree, then by descending lexicographic order of the
    flattened count vectors, which puts the principal character first.
    """
    field = G.field
    cached = G._tables.get(field)
    if cached is not None:
        return cached
    cls = G.classes
    k, p, n = cls.count, field.p, G.order
    omega = _central_characters(G, field)
    sizes = np.array(cls.size, dtype=np.int64)
    inv_sizes = np.array([pow(int(s), -1, p) for s in sizes], dtype=np.int64)
    inv_cls = np.array(cls.inverse_class)
    # sum_s w(C_s) w(C_s*) / |C_s| = |G| / d^2
    norms = (omega * omega[:, inv_cls] % p * inv_sizes % p).sum(axis=1) % p
    d2 = n * np.array([pow(int(t), -1, p) for t in norms], dtype=np.int64) % p
    degrees = np.array([int(np.sqrt(v) + 0.5) for v in d2], dtype=np.int64)
    if np.any(degrees * degrees != d2) or int((degrees**2).sum()) != n:
        raise DixonError("degrees do not satisfy sum d^2 = |G|")
    chi_p = omega * degrees[:, None] % p * inv_sizes % p
    values = _lift(G, field, chi_p, degrees)
    order = sorted(range(k), key=lambda i: (int(degrees[i]), tuple(-values[i].ravel())))
    table = CharacterTable(G, values[order], chi_p[order])
    if table.degrees[0] != 1 or not np.array_equal(table.values[0][:, 0], np.ones(k)):
        raise DixonError("principal character is not the first row")
    G._tables[field] = table
    return table


def principal(G: Group) -> ClassFunction:
    vals = np.zeros((G.classes.count, G.field.e), dtype=np.int64)
    vals[:, 0] = 1
    return ClassFunction(G, vals, name="1")


# ---------------------------------------------------------------------------
# inner products, kernels, conjugation


def _as_stack(fs) -> np.ndarray:
    if isinstance(fs, ClassFunction):
        return fs.values[None]
    if isinstance(fs, CharacterTable):
        return fs.values
    if isinstance(fs, np.ndarray):
        return fs
    return np.stack([f.values for f in fs])


def inner_product_matrix(G: Group, A, B, weights: np.ndarray | None = None,
                         divisor: int | None = None) -> np.ndarray:
    """[a, b] for every pair of rows of A and B, computed in Z[zeta_e].

    ``weights`` defaults to the class sizes and ``divisor`` to |G|; restricted
    inner products pass the class-count profile of a subgroup instead.
    """
    field = G.field
    w = np.array(G.classes.size if weights is None else weights, dtype=np.int64)
    div = G.order if divisor is None else divisor
    raw = kernels.gram_poly(_as_stack(A), _as_stack(B), w, field.e)
    try:
        total = rational_part(raw, field.phi)
    except ValueError:
        raise NotACharacterError("inner product is not rational") from None
    if np.any(total % div):
        raise NotACharacterError("inner product is not an integer")
    return total // div


def inner_product(a: ClassFunction, b: ClassFunction) -> int:
    """[a, b] = (1/|G|) sum_g a(g) conj(b(g)), exactly."""
    a._check_same(b)
    return int(inner_product_matrix(a.group, a, b)[0, 0])


def _classes_where(f: ClassFunction, good: np.ndarray) -> Subgroup:
    G = f.group
    flags = good[G.classes.class_of]
    return Subgroup(G, mask_from_bools(flags))


def kernel(chi: ClassFunction) -> Subgroup:
    """{g : chi(g) = chi(1)}."""
    vals = chi.values.copy()
    vals[:, 0] -= chi.degree
    return _classes_where(chi, ~np.any(reduce_mod_phi(vals, chi.field.phi) != 0, axis=1))


def z_of(chi: ClassFunction) -> Subgroup:
    """{g : |chi(g)| = chi(1)}, tested as chi(g) conj(chi(g)) = chi(1)^2."""
    sq = cyc_mul(chi.values, cyc_conj(chi.values))
    sq[:, 0] -= chi.degree ** 2
    return _classes_where(chi, ~np.any(reduce_mod_phi(sq, chi.field.phi) != 0, axis=1))


def conjugate_character(chi: ClassFunction) -> ClassFunction:
    """conj(chi); for a table row the matching row of the same table."""
    out = chi.conj()
    if isinstance(chi, Character):
        i = chi.table.find(out)
        if i is None:
            raise DixonError("complex conjugate of an irreducible is missing from the table")
        return chi.table[i]
    return out


def pull_back(f: ClassFunction, G: Group, projection: np.ndarray) -> ClassFunction:
    """f o projection, for f a class function on a quotient of G."""
    Q = f.group
    qcls = Q.classes.class_of[projection[np.array(G.classes.rep)]]
    return ClassFunction(G, f.values[qcls])


def lift_from_quotient(T_quotient: CharacterTable, projection: np.ndarray,
                       G: Group) -> list[Character]:
    """Irreducibles of G/N pulled back to G, as rows of G's table."""
    T = character_table(G)
    out = []
    for psi in T_quotient:
        i = T.find(pull_back(psi, G, projection))
        if i is None:
            raise DixonError("pulled-back character not found in the table of G")
        out.append(T[i])
    return out


def deflate(chi: Character) -> tuple[Group, np.ndarray, Character]:
    """(G/Ker chi, projection, chi as a faithful character of the quotient)."""
    G = chi.group
    K = kernel(chi)
    Q, proj = quotient(G, K)
    TQ = character_table(Q)
    for psi in TQ:
        if pull_back(psi, G, proj).equals(chi):
            return Q, proj, psi
    raise DixonError("character does not factor through its kernel")


# ---------------------------------------------------------------------------
# output


def format_table(T: CharacterTable) -> str:
    G = T.group
    k = T.classes.count
    lines = [f"irr {len(T)} classes {k} order {G.order} exponent {G.exponent}"]
    for ch in T:
        lines.append(" ".join(str(ch.value(c)) for c in range(k)))
    return "\n".join(lines) + "\n"


def degree_sequence(chars: Sequence[ClassFunction]) -> tuple[int, ...]:
    return tuple(ch.degree for ch in chars)
