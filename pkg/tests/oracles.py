"""Slow, independent reference computations used to cross-check the engines.

Nothing here touches the Dixon-Schneider code, the numba kernels or the
cached structures on Group: everything is recomputed from the Cayley table
with plain Python sets and exact integer polynomials.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import sympy

from charprod.group_core import Group


def elements(G: Group) -> range:
    return range(G.order)


def mul(G: Group, a: int, b: int) -> int:
    return int(G.table[a][b])


def inverse(G: Group, a: int) -> int:
    return next(b for b in elements(G) if mul(G, a, b) == 0)


def conj(G: Group, x: int, g: int) -> int:
    """g^-1 x g."""
    return mul(G, mul(G, inverse(G, g), x), g)


def classes(G: Group) -> list[frozenset[int]]:
    seen, out = set(), []
    for x in elements(G):
        if x in seen:
            continue
        cl = frozenset(conj(G, x, g) for g in elements(G))
        seen |= cl
        out.append(cl)
    return out


def closure(G: Group, gens) -> frozenset[int]:
    S = {0} | set(gens)
    while True:
        new = {mul(G, a, b) for a in S for b in S} - S
        if not new:
            return frozenset(S)
        S |= new


def is_normal(G: Group, S: frozenset[int]) -> bool:
    return all(conj(G, x, g) in S for x in S for g in elements(G))


def all_subgroups(G: Group) -> set[frozenset[int]]:
    """Every subgroup, as joins of cyclic subgroups. Fine up to order ~32."""
    cyc = {closure(G, [g]) for g in elements(G)}
    subs = set(cyc)
    frontier = set(cyc)
    while frontier:
        nxt = set()
        for A in frontier:
            for C in cyc:
                if not C <= A:
                    J = closure(G, A | C)
                    if J not in subs:
                        nxt.add(J)
        subs |= nxt
        frontier = nxt
    return subs


def normal_subgroups(G: Group) -> set[frozenset[int]]:
    return {S for S in all_subgroups(G) if is_normal(G, S)}


def center(G: Group) -> frozenset[int]:
    return frozenset(z for z in elements(G) if all(mul(G, z, g) == mul(G, g, z) for g in elements(G)))


def commutator_subgroup(G: Group, S: frozenset[int]) -> frozenset[int]:
    comms = {mul(G, mul(G, inverse(G, a), inverse(G, b)), mul(G, a, b)) for a in S for b in S}
    return closure(G, comms)


def derived_length(G: Group) -> int | None:
    cur, n = frozenset(elements(G)), 0
    while len(cur) > 1:
        nxt = commutator_subgroup(G, cur)
        if nxt == cur:
            return None
        cur, n = nxt, n + 1
    return n


def element_order(G: Group, g: int) -> int:
    x, k = g, 1
    while x != 0:
        x, k = mul(G, x, g), k + 1
    return k


# -- exact class-function arithmetic by elements ------------------------------

_z = sympy.Symbol("z")


def _poly(counts) -> sympy.Poly:
    return sympy.Poly(sum(int(c) * _z ** j for j, c in enumerate(counts)), _z)


def _conj_poly(counts, e: int) -> sympy.Poly:
    return sympy.Poly(sum(int(c) * _z ** ((-j) % e) for j, c in enumerate(counts)), _z)


def inner_product_by_elements(f, g) -> Fraction:
    """(1/|G|) sum over elements of f(x) conj(g(x)), reduced modulo Phi_e with sympy."""
    G = f.group
    e = f.field.e
    phi = sympy.Poly(sympy.cyclotomic_poly(e, _z), _z)
    total = sympy.Poly(0, _z)
    cls = G.classes.class_of
    for x in elements(G):
        c = int(cls[x])
        total += _poly(f.values[c]) * _conj_poly(g.values[c], e)
    red = total.rem(phi)
    coeffs = red.all_coeffs()
    if red.degree() > 0:
        raise ValueError("inner product is not rational")
    return Fraction(int(coeffs[-1]) if coeffs else 0, G.order)


def values_equal(a_counts, b_counts, e: int) -> bool:
    phi = sympy.Poly(sympy.cyclotomic_poly(e, _z), _z)
    return (_poly(a_counts) - _poly(b_counts)).rem(phi).is_zero


def compositions(n: int):
    for cuts in itertools.product((0, 1), repeat=n - 1):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        yield parts + [run]
