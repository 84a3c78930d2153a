"""Constructors for small test groups and a deterministic corpus.

Every group here is built as an explicit Cayley table (or from permutations)
and goes through the usual validation. Labels double as a tiny grammar, see
:func:`from_label`.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from functools import reduce

import numpy as np
from sympy import factorint, isprime, primitive_root

from .errors import CapacityError, ConstructionError, GroupFormatError
from .group_core import DEFAULT_MAX_ORDER, Group, group_from_permutations

__all__ = [
    "cyclic",
    "abelian",
    "elementary_abelian",
    "dihedral",
    "quaternion",
    "symmetric",
    "alternating",
    "special_linear_2_3",
    "general_linear_2_3",
    "direct_product",
    "semidirect",
    "extraspecial_p3_exp_p",
    "heisenberg_automorphism",
    "heisenberg_extension",
    "frobenius_aE",
    "from_label",
    "CorpusSpec",
    "FAMILIES",
    "NAMED",
    "corpus",
]


def _check_cap(order: int, max_order: int) -> None:
    if order > max_order:
        raise CapacityError(f"group order {order} exceeds cap {max_order}")


def cyclic(n: int, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    _check_cap(n, max_order)
    i = np.arange(n)
    return Group((i[:, None] + i[None, :]) % n, label=f"C{n}", max_order=max_order)


def direct_product(A: Group, B: Group, label: str | None = None,
                   max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """A x B with element a + |A| b."""
    nA, nB = A.order, B.order
    _check_cap(nA * nB, max_order)
    i = np.arange(nA * nB)
    a, b = i % nA, i // nA
    T = A.table[a[:, None], a[None, :]].astype(np.int64) + nA * B.table[b[:, None], b[None, :]]
    return Group(T, label=label or f"{A.label}*{B.label}", max_order=max_order)


def abelian(*invariants: int, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """Direct product of cyclic groups of the given orders, labelled C2*C4 and so on."""
    if not invariants:
        return cyclic(1)
    _check_cap(math.prod(invariants), max_order)
    return reduce(lambda X, Y: direct_product(X, Y, max_order=max_order),
                  (cyclic(d) for d in invariants))


def elementary_abelian(p: int, k: int, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    if not isprime(p) or k < 1:
        raise ValueError("elementary abelian group needs a prime p and k >= 1")
    G = abelian(*([p] * k), max_order=max_order)
    G.label = f"C{p}^{k}" if k > 1 else f"C{p}"
    return G


def dihedral(n: int, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """Symmetries of the n-gon, order 2n; element r^i s^j is i + n j."""
    if n < 1:
        raise ValueError("dihedral group needs n >= 1")
    _check_cap(2 * n, max_order)
    x = np.arange(2 * n)
    i, j = x % n, x // n
    sign = np.where(j == 1, -1, 1)
    T = (i[:, None] + sign[:, None] * i[None, :]) % n + n * ((j[:, None] + j[None, :]) % 2)
    return Group(T, label=f"D{n}", max_order=max_order)


def quaternion(order: int = 8, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """Generalised quaternion group <a, b | a^2m, b^2 = a^m, a^b = a^-1> of order 4m."""
    if order < 8 or order & (order - 1):
        raise ValueError("generalised quaternion order must be a power of 2, at least 8")
    _check_cap(order, max_order)
    m = order // 4
    x = np.arange(order)
    i, j = x % (2 * m), x // (2 * m)
    sign = np.where(j == 1, -1, 1)
    both = j[:, None] * j[None, :]
    expo = (i[:, None] + sign[:, None] * i[None, :] + m * both) % (2 * m)
    T = expo + 2 * m * ((j[:, None] + j[None, :]) % 2)
    return Group(T, label=f"Q{order}", max_order=max_order)


def _cycle(points: list[int], degree: int) -> list[int]:
    perm = list(range(degree))
    for a, b in zip(points, points[1:] + points[:1]):
        perm[a] = b
    return perm


def symmetric(n: int, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    if not 1 <= n <= 6:
        raise ValueError("symmetric groups are supported for 1 <= n <= 6")
    _check_cap(math.factorial(n), max_order)
    gens = [_cycle(list(range(n)), n), _cycle([0, 1], n)] if n > 1 else [[0]]
    return group_from_permutations(gens, n, label=f"S{n}", max_order=max_order)


def alternating(n: int, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    if not 1 <= n <= 6:
        raise ValueError("alternating groups are supported for 1 <= n <= 6")
    _check_cap(max(1, math.factorial(n) // 2), max_order)
    gens = [_cycle([0, 1, i], n) for i in range(2, n)] or [list(range(n))]
    return group_from_permutations(gens, n, label=f"A{n}", max_order=max_order)


def _matrix_group(gens: list[tuple[int, int, int, int]], label: str) -> Group:
    """Matrices over GF(3) acting on the eight nonzero vectors."""
    vecs = [v for v in itertools.product(range(3), repeat=2) if v != (0, 0)]
    where = {v: i for i, v in enumerate(vecs)}
    perms = []
    for a, b, c, d in gens:
        perms.append([where[((a * x + b * y) % 3, (c * x + d * y) % 3)] for x, y in vecs])
    return group_from_permutations(perms, len(vecs), label=label)


def special_linear_2_3() -> Group:
    return _matrix_group([(1, 1, 0, 1), (1, 0, 1, 1)], "SL(2,3)")


def general_linear_2_3() -> Group:
    return _matrix_group([(1, 1, 0, 1), (1, 0, 1, 1), (2, 0, 0, 1)], "GL(2,3)")


def semidirect(E: Group, phi: np.ndarray, label: str,
               max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """E extended by the cyclic group generated by the automorphism ``phi``.

    Element (x, i) = x a^i is numbered x + |E| i, with a^i y a^-i = phi^i(y).
    """
    phi = np.asarray(phi, dtype=np.int64)
    n = E.order
    if not np.array_equal(phi[E.table], E.table[phi[:, None], phi[None, :]]):
        raise ConstructionError("map is not a homomorphism")
    if len(np.unique(phi)) != n:
        raise ConstructionError("map is not bijective")
    powers = [np.arange(n)]
    while True:
        nxt = phi[powers[-1]]
        if np.array_equal(nxt, powers[0]):
            break
        powers.append(nxt)
    m = len(powers)
    _check_cap(n * m, max_order)
    P = np.stack(powers)
    z = np.arange(n * m)
    x, i = z % n, z // n
    T = E.table[x[:, None], P[i[:, None], x[None, :]]].astype(np.int64) \
        + n * ((i[:, None] + i[None, :]) % m)
    return Group(T, label=label, max_order=max_order)


# ---------------------------------------------------------------------------
# Heisenberg groups and their extensions


def _check_small_odd_prime(p: int) -> None:
    if not (isprime(p) and p % 2 == 1 and p <= 7):
        raise ValueError("p must be an odd prime <= 7")


def extraspecial_p3_exp_p(p: int) -> Group:
    """Triples over GF(p) with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').

    Triple (a, b, c) is element a + p b + p^2 c.
    """
    _check_small_odd_prime(p)
    x = np.arange(p ** 3)
    a, b, c = x % p, (x // p) % p, x // (p * p)
    A = (a[:, None] + a[None, :]) % p
    B = (b[:, None] + b[None, :]) % p
    C = (c[:, None] + c[None, :] + a[:, None] * b[None, :]) % p
    G = Group(A + p * B + p * p * C, label=f"extraspecial:{p}")
    if G.exponent != p:
        raise ConstructionError(f"exponent is {G.exponent}, expected {p}")
    return G


def heisenberg_automorphism(p: int, matrix: tuple[int, int, int, int]) -> np.ndarray:
    """Automorphism of the Heisenberg group lifting ``matrix`` = (al, be, ga, de).

    (a, b, c) goes to (al a + be b, ga a + de b, det c + f(a, b)) with
    f = (al ga a^2 + be de b^2) / 2 + be ga a b, which is exactly the
    correction making the map multiplicative.
    """
    al, be, ga, de = (v % p for v in matrix)
    det = (al * de - be * ga) % p
    if det == 0:
        raise ConstructionError(f"matrix {matrix} is singular mod {p}")
    half = pow(2, -1, p)
    x = np.arange(p ** 3)
    a, b, c = x % p, (x // p) % p, x // (p * p)
    f = half * (al * ga * a * a + be * de * b * b) + be * ga * a * b
    na = (al * a + be * b) % p
    nb = (ga * a + de * b) % p
    nc = (det * c + f) % p
    return na + p * nb + p * p * nc


def heisenberg_extension(p: int, matrix: tuple[int, int, int, int],
                         max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """Heisenberg group of order p^3 extended by the automorphism lifting ``matrix``."""
    E = extraspecial_p3_exp_p(p)
    phi = heisenberg_automorphism(p, matrix)
    label = f"heis:{p}:" + ",".join(str(v % p) for v in matrix)
    return semidirect(E, phi, label, max_order=max_order)


def _matrix_order(p: int, m: tuple[int, int, int, int]) -> int:
    al, be, ga, de = m
    cur, k = (al, be, ga, de), 1
    while cur != (1, 0, 0, 1):
        a, b, c, d = cur
        cur = ((a * al + b * ga) % p, (a * be + b * de) % p,
               (c * al + d * ga) % p, (c * be + d * de) % p)
        k += 1
    return k


def frobenius_aE(p: int, q: int) -> Group:
    """<a>E with a of prime order q acting fixed-point-freely on the Heisenberg group E.

    The search runs over every matrix of order q in GL(2, p), diagonal ones
    first. A lifted automorphism fixes no nontrivial element of E exactly
    when the matrix has no eigenvalue 1 and its determinant (the action on
    the centre) is not 1. For q = 2 the only such involution would be -I,
    whose determinant is 1, so no group exists and ConstructionError is
    raised.
    """
    _check_small_odd_prime(p)
    if not isprime(q) or (p - 1) % q:
        raise ValueError(f"q = {q} must be a prime dividing p - 1 = {p - 1}")
    lam = pow(int(primitive_root(p)), (p - 1) // q, p)
    diagonal = [(pow(lam, s, p), 0, 0, pow(lam, t, p))
                for s in range(1, q) for t in range(1, q)]
    others = [m for m in itertools.product(range(p), repeat=4) if m not in diagonal]
    for m in diagonal + others:
        al, be, ga, de = m
        det = (al * de - be * ga) % p
        if det in (0, 1) or _matrix_order(p, m) != q:
            continue
        if (al - 1) * (de - 1) % p == be * ga % p:  # eigenvalue 1
            continue
        phi = heisenberg_automorphism(p, m)
        if np.count_nonzero(phi == np.arange(p ** 3)) != 1:
            raise ConstructionError(f"lift of {m} has nontrivial fixed points")
        E = extraspecial_p3_exp_p(p)
        return semidirect(E, phi, f"aE:{p},{q}")
    raise ConstructionError(
        f"no automorphism of order {q} of the Heisenberg group of order {p ** 3} "
        f"is fixed-point-free (an involution without eigenvalue 1 is -I, which "
        f"centralises the centre)")


# ---------------------------------------------------------------------------
# labels


_SIMPLE = [
    (re.compile(r"C(\d+)\^(\d+)"), lambda m, cap: elementary_abelian(int(m[1]), int(m[2]), cap)),
    (re.compile(r"C(\d+)"), lambda m, cap: cyclic(int(m[1]), cap)),
    (re.compile(r"D(\d+)"), lambda m, cap: dihedral(int(m[1]), cap)),
    (re.compile(r"Q(\d+)"), lambda m, cap: quaternion(int(m[1]), cap)),
    (re.compile(r"S(\d+)"), lambda m, cap: symmetric(int(m[1]), cap)),
    (re.compile(r"A(\d+)"), lambda m, cap: alternating(int(m[1]), cap)),
    (re.compile(r"SL\(2,3\)"), lambda m, cap: special_linear_2_3()),
    (re.compile(r"GL\(2,3\)"), lambda m, cap: general_linear_2_3()),
    (re.compile(r"extraspecial:(\d+)"), lambda m, cap: extraspecial_p3_exp_p(int(m[1]))),
    (re.compile(r"aE:(\d+),(\d+)"), lambda m, cap: frobenius_aE(int(m[1]), int(m[2]))),
    (re.compile(r"heis:(\d+):(\d+),(\d+),(\d+),(\d+)"),
     lambda m, cap: heisenberg_extension(int(m[1]), tuple(int(v) for v in m.groups()[1:]), cap)),
]


def from_label(label: str, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """Build a group from its label; ``*`` separates direct factors."""
    parts = label.split("*")
    groups = []
    for part in parts:
        for pat, make in _SIMPLE:
            m = pat.fullmatch(part)
            if m:
                try:
                    groups.append(make(m, max_order))
                except ValueError as exc:
                    if isinstance(exc, (CapacityError, ConstructionError)):
                        raise
                    raise GroupFormatError(f"bad parameters in label {part!r}: {exc}") from None
                break
        else:
            raise GroupFormatError(f"unknown group label {part!r}")
    G = reduce(lambda X, Y: direct_product(X, Y, max_order=max_order), groups)
    _check_cap(G.order, max_order)
    G.label = label
    return G


# ---------------------------------------------------------------------------
# corpus


FAMILIES = frozenset({
    "cyclic", "abelian", "dihedral", "quaternion", "symmetric", "alternating",
    "extraspecial", "product", "linear", "heisenberg",
})

# named groups are added whatever max_order says
NAMED = {
    "A6": ["A6"],
    "S4": ["S4"],
    "extraspecial": ["extraspecial:3", "extraspecial:5"],
    "aE": ["aE:7,3"],
}

_PRODUCTS = [
    "S3*C2", "S3*C3", "Q8*C2", "D4*C2", "Q8*C3", "A4*C2", "S3*C4", "D4*C3",
    "A4*C3", "S3*S3", "S4*C2", "Q8*C4", "Q8*Q8", "D4*D4", "S3*C2^2",
    "extraspecial:3*C2", "SL(2,3)*C2", "A4*C2^2", "S3*S3*C2",
]

_HEISENBERG = ["heis:3:2,0,0,2", "heis:3:1,0,0,2", "heis:3:0,2,1,0"]


@dataclass(frozen=True)
class CorpusSpec:
    max_order: int = 128
    families: frozenset = FAMILIES
    named: frozenset = field(default_factory=lambda: frozenset(NAMED))

    def __post_init__(self):
        if not 1 <= self.max_order <= DEFAULT_MAX_ORDER:
            raise CapacityError(f"max_order must lie in 1..{DEFAULT_MAX_ORDER}")
        unknown = (set(self.families) - FAMILIES) | (set(self.named) - set(NAMED))
        if unknown:
            raise ValueError(f"unknown corpus families or names: {sorted(unknown)}")


def _abelian_invariants(n: int) -> list[tuple[int, ...]]:
    """Invariant factor lists d_1 | d_2 | ... of every abelian group of order n."""
    per_prime = []
    for p, e in sorted(factorint(n).items()):
        per_prime.append([[p ** a for a in part] for part in _partitions(e)])
    out = []
    for combo in itertools.product(*per_prime):
        width = max(len(c) for c in combo)
        factors = [1] * width
        for c in combo:
            for t, v in enumerate(sorted(c, reverse=True)):
                factors[width - 1 - t] *= v
        out.append(tuple(factors))
    return sorted(out)


def _partitions(n: int, cap: int | None = None) -> list[list[int]]:
    cap = n if cap is None else cap
    if n == 0:
        return [[]]
    return [[k] + rest for k in range(min(n, cap), 0, -1) for rest in _partitions(n - k, k)]


def _labels(spec: CorpusSpec) -> list[str]:
    cap = spec.max_order
    fam = spec.families
    out: list[str] = []
    if "cyclic" in fam:
        out += [f"C{n}" for n in range(1, cap + 1)]
    if "abelian" in fam:
        for n in range(4, cap + 1):
            for inv in _abelian_invariants(n):
                if len(inv) > 1:
                    out.append("*".join(f"C{d}" for d in inv))
    if "dihedral" in fam:
        out += [f"D{n}" for n in range(3, cap // 2 + 1)]
    if "quaternion" in fam:
        out += [f"Q{2 ** k}" for k in range(3, 13) if 2 ** k <= cap]
    if "symmetric" in fam:
        out += [f"S{n}" for n in range(3, 7) if math.factorial(n) <= cap]
    if "alternating" in fam:
        out += [f"A{n}" for n in range(3, 7) if math.factorial(n) // 2 <= cap]
    if "extraspecial" in fam:
        out += [f"extraspecial:{p}" for p in (3, 5, 7) if p ** 3 <= cap]
    if "linear" in fam:
        out += [lab for lab, n in (("SL(2,3)", 24), ("GL(2,3)", 48)) if n <= cap]
    if "heisenberg" in fam:
        out += [lab for lab in _HEISENBERG if _heis_order(lab) <= cap]
    if "product" in fam:
        out += [lab for lab in _PRODUCTS if _product_order(lab) <= cap]
    for name in sorted(spec.named):
        out += NAMED[name]
    seen: set[str] = set()
    return [lab for lab in out if not (lab in seen or seen.add(lab))]


_ORDERS = {"SL(2,3)": 24, "GL(2,3)": 48, "Q8": 8, "D4": 8, "A4": 12, "S3": 6, "S4": 24,
           "extraspecial:3": 27}


def _heis_order(label: str) -> int:
    p, mat = label.split(":")[1:]
    return int(p) ** 3 * _matrix_order(int(p), tuple(int(v) for v in mat.split(",")))


def _factor_order(lab: str) -> int:
    if lab in _ORDERS:
        return _ORDERS[lab]
    m = re.fullmatch(r"C(\d+)(?:\^(\d+))?", lab)
    return int(m[1]) ** int(m[2] or 1)


def _product_order(label: str) -> int:
    return math.prod(_factor_order(part) for part in label.split("*"))


def corpus(spec: CorpusSpec | None = None) -> list[Group]:
    """Deterministic list of groups described by ``spec``, deduplicated by label."""
    spec = CorpusSpec() if spec is None else spec
    return [from_label(lab) for lab in _labels(spec)]
