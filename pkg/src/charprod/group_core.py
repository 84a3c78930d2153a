"""Finite groups as full Cayley tables.

Elements are the integers ``0..n-1`` with 0 the identity. Subgroups are
bitmasks over the parent's index space; :meth:`Subgroup.as_group` turns one
back into a standalone :class:`Group` when a character table of it is needed.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .cyclotomic import CycField
from .errors import CapacityError, GroupFormatError, PreconditionError

__all__ = [
    "DEFAULT_MAX_ORDER",
    "Group",
    "Subgroup",
    "Classes",
    "load_group",
    "group_from_permutations",
    "group_from_table",
    "to_cayley_text",
    "conjugacy_classes",
    "subgroup_generated",
    "center",
    "centralizer",
    "normalizer",
    "derived_subgroup",
    "derived_series",
    "derived_length",
    "relative_derived_length",
    "quotient",
    "normal_closure",
    "join",
    "section_centralizer",
]

DEFAULT_MAX_ORDER = 5040

# associativity is checked on every triple up to this order, sampled above it
EXHAUSTIVE_ASSOC_ORDER = 512


def mask_from_members(members: Iterable[int] | np.ndarray, n: int) -> int:
    flags = np.zeros(n, dtype=bool)
    flags[np.asarray(list(members) if not isinstance(members, np.ndarray) else members,
                     dtype=np.int64)] = True
    return mask_from_bools(flags)


def mask_from_bools(flags: np.ndarray) -> int:
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


def bools_from_mask(mask: int, n: int) -> np.ndarray:
    raw = np.frombuffer(mask.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


class Group:
    """A finite group given by its multiplication table.

    ``origin`` and ``embedding`` are set when the group is a re-materialised
    subgroup: ``embedding[i]`` is the parent index of local element ``i``.
    Derived groups (subgroups, quotients) inherit the parent's :class:`CycField`
    so their character values are directly comparable.
    """

    def __init__(
        self,
        table: np.ndarray,
        label: str = "",
        perms: np.ndarray | None = None,
        *,
        origin: "Subgroup | None" = None,
        field: CycField | None = None,
        max_order: int = DEFAULT_MAX_ORDER,
        validate: bool = True,
    ):
        table = np.ascontiguousarray(table, dtype=np.int32)
        n = table.shape[0]
        if table.ndim != 2 or table.shape != (n, n) or n == 0:
            raise GroupFormatError("Cayley table must be a non-empty square array")
        if n > max_order:
            raise CapacityError(f"group order {n} exceeds cap {max_order}")
        table.setflags(write=False)
        self.table = table
        self.order = n
        self.label = label
        self.perms = perms
        self.origin = origin
        self._field = field
        if validate:
            self._validate()
        inv = np.argmin(table, axis=1).astype(np.int64)  # the unique h with g*h = 0
        inv.setflags(write=False)
        self.inv = inv
        orders = kernels.element_orders(table)
        orders.setflags(write=False)
        self.element_orders = orders
        self.exponent = math.lcm(*(int(o) for o in np.unique(orders)))
        self._materialized: dict[int, Group] = {}
        self._quotients: dict[int, tuple[Group, np.ndarray]] = {}
        self._tables: dict[CycField, object] = {}

    def _validate(self) -> None:
        T = self.table
        n = self.order
        ar = np.arange(n)
        if T.min() < 0 or T.max() >= n:
            raise GroupFormatError("table entries out of range (not closed)")
        if not (np.array_equal(T[0], ar) and np.array_equal(T[:, 0], ar)):
            raise GroupFormatError("row/column 0 must be the identity")
        srt = np.sort(T, axis=1)
        if not np.all(srt == ar) or not np.all(np.sort(T, axis=0) == ar[:, None]):
            raise GroupFormatError("table is not a Latin square (missing inverses)")
        if n <= EXHAUSTIVE_ASSOC_ORDER:
            bad = kernels.associativity_violation(T)
        else:
            rng = np.random.default_rng(0)
            a, b, c = rng.integers(0, n, size=(3, 200_000))
            hit = np.nonzero(T[T[a, b], c] != T[a, T[b, c]])[0]
            bad = np.array([a[hit[0]], b[hit[0]], c[hit[0]]]) if hit.size else np.array([-1, -1, -1])
        if bad[0] >= 0:
            a, b, c = (int(v) for v in bad)
            raise GroupFormatError(f"table is not associative at ({a}, {b}, {c})")

    # -- basic structure --------------------------------------------------

    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    @property
    def embedding(self) -> np.ndarray:
        if self.origin is None:
            return np.arange(self.order)
        return self.origin.members

    @cached_property
    def field(self) -> CycField:
        if self._field is not None:
            if not self._field.contains(self.exponent, self.order):
                raise PreconditionError("inherited field does not fit this group")
            return self._field
        return CycField.for_group(self.exponent, self.order)

    @cached_property
    def classes(self) -> "Classes":
        return conjugacy_classes(self)

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def whole(self) -> "Subgroup":
        return Subgroup(self, (1 << self.order) - 1)

    def trivial(self) -> "Subgroup":
        return Subgroup(self, 1)

    def subgroup(self, members: Iterable[int]) -> "Subgroup":
        """Wrap an element set that is already known to be a subgroup."""
        return Subgroup(self, mask_from_members(members, self.order))

    def conjugate_elements(self, elems: np.ndarray, g: int) -> np.ndarray:
        """g^-1 * x * g for each x in ``elems``."""
        return self.table[self.table[self.inv[g], elems], g]

    def __repr__(self) -> str:
        return f"Group({self.label or '?'}, order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    parent: Group
    mask: int

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    @cached_property
    def flags(self) -> np.ndarray:
        out = bools_from_mask(self.mask, self.parent.order)
        out.setflags(write=False)
        return out

    @cached_property
    def members(self) -> np.ndarray:
        out = np.nonzero(self.flags)[0]
        out.setflags(write=False)
        return out

    def __contains__(self, g: int) -> bool:
        return bool((self.mask >> int(g)) & 1)

    def issubset(self, other: "Subgroup") -> bool:
        return self.mask & other.mask == self.mask

    def is_proper_subset(self, other: "Subgroup") -> bool:
        return self.mask != other.mask and self.issubset(other)

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, self.mask & other.mask)

    def sort_key(self) -> tuple:
        return (self.order, tuple(int(m) for m in self.members))

    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def is_normal(self) -> bool:
        return is_normal(self.parent, self)

    def is_abelian(self) -> bool:
        m = self.members
        sub = self.parent.table[np.ix_(m, m)]
        return bool(np.array_equal(sub, sub.T))

    def as_group(self) -> Group:
        """Standalone group on ``0..order-1`` (local i = ``members[i]``)."""
        parent = self.parent
        if self.is_whole():
            return parent
        cached = parent._materialized.get(self.mask)
        if cached is None:
            m = self.members
            local = -np.ones(parent.order, dtype=np.int64)
            local[m] = np.arange(len(m))
            table = local[parent.table[np.ix_(m, m)]]
            cached = Group(table, label=f"{parent.label}>{len(m)}", origin=self,
                           field=parent.field, validate=False)
            parent._materialized[self.mask] = cached
        return cached

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent.label or '?'})"


@dataclass(frozen=True)
class Classes:
    count: int
    rep: tuple[int, ...]
    size: tuple[int, ...]
    class_of: np.ndarray
    inverse_class: tuple[int, ...]
    members: tuple[np.ndarray, ...]


# ---------------------------------------------------------------------------
# construction and I/O


def group_from_table(table, label: str = "", max_order: int = DEFAULT_MAX_ORDER) -> Group:
    table = np.asarray(table)
    if table.ndim == 2 and table.shape[0] > max_order:
        raise CapacityError(f"group order {table.shape[0]} exceeds cap {max_order}")
    return Group(table, label=label, max_order=max_order)


def group_from_permutations(
    gens: Sequence[Sequence[int]],
    degree: int,
    label: str = "",
    max_order: int = DEFAULT_MAX_ORDER,
) -> Group:
    """Enumerate the group generated by 0-based permutations of ``degree`` points.

    Products compose left to right: ``(g*h)(x) = h(g(x))``. Elements are
    numbered in lexicographic order of their images, so the identity is 0.
    """
    ident = tuple(range(degree))
    gens_t = [tuple(int(v) for v in g) for g in gens]
    for g in gens_t:
        if sorted(g) != list(ident):
            raise GroupFormatError(f"not a permutation of {degree} points: {g}")
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for el in frontier:
            for g in gens_t:
                y = tuple(g[i] for i in el)  # apply el, then g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > max_order:
                        raise CapacityError(f"group order exceeds cap {max_order}")
        frontier = nxt
    P = np.array(sorted(seen), dtype=">u2").reshape(len(seen), degree)
    n = P.shape[0]
    keytype = np.dtype((np.void, P.dtype.itemsize * degree))
    keys = np.ascontiguousarray(P).view(keytype).ravel()
    Pi = P.astype(np.int64)
    table = np.empty((n, n), dtype=np.int32)
    for g in range(n):
        comp = np.ascontiguousarray(P[:, Pi[g]]).view(keytype).ravel()  # row h: h o g
        table[g] = np.searchsorted(keys, comp)
    perms = Pi
    perms.setflags(write=False)
    return Group(table, label=label, perms=perms, max_order=max_order)


_CYCLE = re.compile(r"\(([^()]*)\)")
_CYCLE_LINE = re.compile(r"(\(\s*(?:\d+(?:[\s,]+\d+)*)?\s*\)\s*)+")


def _parse_cycles(line: str, degree: int) -> list[int]:
    if not _CYCLE_LINE.fullmatch(line.strip()):
        raise GroupFormatError(f"malformed cycle notation: {line!r}")
    perm = list(range(degree))
    used: set[int] = set()
    for body in _CYCLE.findall(line):
        pts = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
        if len(set(pts)) != len(pts) or used.intersection(pts):
            raise GroupFormatError(f"cycles are not disjoint: {line!r}")
        if any(not 1 <= q <= degree for q in pts):
            raise GroupFormatError(f"point out of range 1..{degree}: {line!r}")
        used.update(pts)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            perm[a - 1] = b - 1
    return perm


def load_group(text: str, label: str = "", max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """Parse a ``.perm`` or ``.cayley`` description.

    ``.perm``: first line ``perm <degree>``, then one generator per line in
    1-based disjoint-cycle notation. ``.cayley``: first line ``cayley <n>``,
    then n rows of n 0-based indices.
    """
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise GroupFormatError("empty group description")
    head = lines[0].split()
    if len(head) != 2 or head[0] not in ("perm", "cayley") or not head[1].isdigit():
        raise GroupFormatError(f"bad header line: {lines[0]!r}")
    kind, size = head[0], int(head[1])
    if kind == "perm":
        if size < 1:
            raise GroupFormatError("degree must be positive")
        gens = [_parse_cycles(ln, size) for ln in lines[1:]]
        return group_from_permutations(gens, size, label=label or f"perm{size}", max_order=max_order)
    if size > max_order:
        raise CapacityError(f"group order {size} exceeds cap {max_order}")
    rows = lines[1:]
    if len(rows) != size:
        raise GroupFormatError(f"expected {size} table rows, got {len(rows)}")
    try:
        table = np.array([[int(t) for t in r.split()] for r in rows], dtype=np.int64)
    except ValueError as exc:
        raise GroupFormatError(f"non-integer table entry: {exc}") from None
    if table.shape != (size, size):
        raise GroupFormatError("Cayley rows must each have n entries")
    return Group(table, label=label or f"cayley{size}", max_order=max_order)


def to_cayley_text(G: Group) -> str:
    rows = "\n".join(" ".join(str(int(v)) for v in row) for row in G.table)
    return f"cayley {G.order}\n{rows}\n"


# ---------------------------------------------------------------------------
# classes and subgroups


def conjugacy_classes(G: Group) -> Classes:
    labels = kernels.conjugacy_labels(G.table, G.inv)
    firsts, class_sizes = np.unique(labels, return_counts=True)
    # identity first, then (size, smallest member)
    order = sorted(range(len(firsts)), key=lambda i: (firsts[i] != 0, class_sizes[i], firsts[i]))
    rep = tuple(int(firsts[i]) for i in order)
    size = tuple(int(class_sizes[i]) for i in order)
    index_of_first = {r: j for j, r in enumerate(rep)}
    class_of = np.array([index_of_first[int(lab)] for lab in labels], dtype=np.int64)
    class_of.setflags(write=False)
    inverse_class = tuple(int(class_of[G.inv[r]]) for r in rep)
    members = tuple(np.nonzero(class_of == j)[0] for j in range(len(rep)))
    return Classes(len(rep), rep, size, class_of, inverse_class, members)


def subgroup_generated(G: Group, gens: Iterable[int]) -> Subgroup:
    seed = np.zeros(G.order, dtype=np.bool_)
    idx = np.fromiter((int(g) for g in gens), dtype=np.int64)
    seed[idx] = True
    return Subgroup(G, mask_from_bools(kernels.closure(G.table, seed)))


def join(A: Subgroup, B: Subgroup) -> Subgroup:
    G = A.parent
    seed = A.flags | B.flags
    return Subgroup(G, mask_from_bools(kernels.closure(G.table, seed)))


def is_normal(G: Group, S: Subgroup) -> bool:
    flags = S.flags
    m = S.members
    for g in range(G.order):
        if not flags[G.conjugate_elements(m, g)].all():
            return False
    return True


def conjugate_subgroup(S: Subgroup, g: int) -> Subgroup:
    G = S.parent
    return Subgroup(G, mask_from_members(G.conjugate_elements(S.members, g), G.order))


def normal_closure(G: Group, elems: Iterable[int]) -> Subgroup:
    elems = np.fromiter((int(x) for x in elems), dtype=np.int64)
    seed = np.zeros(G.order, dtype=bool)
    seed[elems] = True
    ar = np.arange(G.order)
    while True:
        S = kernels.closure(G.table, seed)
        m = np.nonzero(S)[0]
        conj = G.table[G.table[G.inv[ar][:, None], m[None, :]], ar[:, None]]
        new = np.zeros(G.order, dtype=bool)
        new[conj.ravel()] = True
        if not (new & ~S).any():
            return Subgroup(G, mask_from_bools(S))
        seed = S | new


def center(G: Group) -> Subgroup:
    T = G.table
    return Subgroup(G, mask_from_bools(np.all(T == T.T, axis=1)))


def centralizer(G: Group, x: int) -> Subgroup:
    T = G.table
    return Subgroup(G, mask_from_bools(T[:, x] == T[x, :]))


def normalizer(G: Group, S: Subgroup) -> Subgroup:
    flags = S.flags
    m = S.members
    keep = [g for g in range(G.order) if flags[G.conjugate_elements(m, g)].all()]
    return G.subgroup(keep)


def section_centralizer(A: Subgroup, L: Subgroup, N: Subgroup) -> Subgroup:
    """{x in A : [x, l] in N for every l in L}, for N normal in G and N <= L."""
    G = A.parent
    T, inv = G.table, G.inv
    a = A.members
    l = L.members
    # [x, l] = x^-1 l^-1 x l
    comm = T[T[T[inv[a][:, None], inv[l][None, :]], a[:, None]], l[None, :]]
    keep = N.flags[comm].all(axis=1)
    return G.subgroup(a[keep])


def commutators(G: Group, X: Subgroup, Y: Subgroup | None = None) -> np.ndarray:
    Y = X if Y is None else Y
    T, inv = G.table, G.inv
    x = X.members[:, None]
    y = Y.members[None, :]
    return np.unique(T[T[inv[x], inv[y]], T[x, y]])


def derived_subgroup(G: Group, S: Subgroup | None = None) -> Subgroup:
    S = G.whole() if S is None else S
    return subgroup_generated(G, commutators(G, S))


def derived_series(G: Group, S: Subgroup | None = None) -> list[Subgroup]:
    """S = S^(0) >= S^(1) >= ... down to the first repeated term."""
    cur = G.whole() if S is None else S
    series = [cur]
    while True:
        nxt = derived_subgroup(G, cur)
        if nxt.mask == cur.mask:
            return series
        series.append(nxt)
        cur = nxt


def derived_length(G: Group) -> int | None:
    """Derived length, or None when the group is not solvable."""
    series = derived_series(G)
    if series[-1].order != 1:
        return None
    return len(series) - 1


def relative_derived_length(A: Subgroup, B: Subgroup) -> int | None:
    """dl(A/B) for B normal in A: least j with A^(j) <= B (None if never)."""
    G = A.parent
    cur = A
    j = 0
    while not cur.issubset(B):
        nxt = derived_subgroup(G, cur)
        if nxt.mask == cur.mask:
            return None
        cur = nxt
        j += 1
    return j


def quotient(G: Group, N: Subgroup) -> tuple[Group, np.ndarray]:
    """G/N with cosets numbered by their smallest element (identity coset 0)."""
    if N.parent is not G:
        raise PreconditionError("subgroup belongs to a different group")
    cached = G._quotients.get(N.mask)
    if cached is not None:
        return cached
    if not is_normal(G, N):
        raise PreconditionError("quotient requires a normal subgroup")
    n = G.order
    cosets = G.table[:, N.members]  # row g: the coset gN
    first = cosets.min(axis=1)
    reps, proj = np.unique(first, return_inverse=True)
    proj = proj.astype(np.int64)
    table = proj[G.table[np.ix_(reps, reps)]]
    Q = Group(table, label=f"{G.label}/{N.order}", field=G.field, validate=False)
    proj.setflags(write=False)
    G._quotients[N.mask] = (Q, proj)
    assert n // N.order == Q.order
    return Q, proj
