"""Exact arithmetic in Z[zeta_e].

Values are integer vectors of length ``e`` read as ``sum_j v[j] * zeta**j``,
i.e. representatives modulo ``x**e - 1``. Two vectors denote the same number
when their difference vanishes modulo the e-th cyclotomic polynomial; this is
the only notion of equality used anywhere in the package.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np
from sympy import cyclotomic_poly, isprime, primitive_root
from sympy.abc import x as _x

__all__ = [
    "CycField",
    "CycValue",
    "cyclotomic_coeffs",
    "cyc_mul",
    "cyc_conj",
    "reduce_mod_phi",
    "rational_part",
    "working_prime",
]


@lru_cache(maxsize=None)
def cyclotomic_coeffs(e: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_e, lowest degree first."""
    poly = cyclotomic_poly(e, _x, polys=True)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


def working_prime(e: int, order: int) -> int:
    """Smallest prime p with p = 1 (mod e) and p > 2*order."""
    p = (2 * order) // e * e + 1
    while p <= 2 * order or not isprime(p):
        p += e
    return p


@dataclass(frozen=True)
class CycField:
    """A modulus ``e`` together with the reduction map zeta -> omega mod p.

    Every table that must be compared with another (subgroups, quotients of
    one ambient group) is computed in the same field so that lifted values
    agree.
    """

    e: int
    p: int
    omega: int

    @classmethod
    def for_group(cls, exponent: int, order: int) -> "CycField":
        p = working_prime(exponent, order)
        omega = pow(int(primitive_root(p)), (p - 1) // exponent, p)
        return cls(exponent, p, omega)

    def root(self, o: int) -> int:
        """A primitive o-th root of unity mod p, compatible with ``omega``."""
        if self.e % o:
            raise ValueError(f"{o} does not divide the field exponent {self.e}")
        return pow(self.omega, self.e // o, self.p)

    @cached_property
    def phi(self) -> np.ndarray:
        return np.array(cyclotomic_coeffs(self.e), dtype=np.int64)

    @cached_property
    def powers(self) -> np.ndarray:
        """omega**j mod p for j in range(e)."""
        out = np.ones(self.e, dtype=np.int64)
        for j in range(1, self.e):
            out[j] = out[j - 1] * self.omega % self.p
        return out

    def to_mod_p(self, values: np.ndarray) -> np.ndarray:
        """Image of value vectors (last axis length e) under zeta -> omega."""
        return (values % self.p) @ self.powers % self.p

    def contains(self, exponent: int, order: int) -> bool:
        return self.e % exponent == 0 and self.p > 2 * order


def cyc_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product modulo x**e - 1 along the last axis (broadcasting)."""
    e = a.shape[-1]
    shape = np.broadcast_shapes(a.shape, b.shape)
    out = np.zeros(shape, dtype=np.int64)
    for j in np.nonzero(np.any(a.reshape(-1, e) != 0, axis=0))[0]:
        out += a[..., j:j + 1] * np.roll(b, j, axis=-1)
    return out


def cyc_conj(a: np.ndarray) -> np.ndarray:
    """Complex conjugation: coefficient j moves to -j mod e."""
    return np.roll(a[..., ::-1], 1, axis=-1)


@lru_cache(maxsize=None)
def _reduction_matrix(phi_bytes: bytes, e: int) -> np.ndarray:
    """Row j holds the canonical coefficients of x**j modulo Phi."""
    poly = np.frombuffer(phi_bytes, dtype=np.int64)
    deg = len(poly) - 1
    R = np.eye(e, dtype=np.int64)
    for top in range(e - 1, deg - 1, -1):
        c = R[:, top].copy()
        R[:, top - deg:top + 1] -= c[:, None] * poly
    R = np.ascontiguousarray(R[:, :deg])
    R.setflags(write=False)
    return R


def reduce_mod_phi(a: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Canonical coefficients (length deg Phi) of vectors modulo Phi_e.

    Reduction is linear, so it is a single product with a cached matrix.
    """
    a = np.asarray(a, dtype=np.int64)
    R = _reduction_matrix(np.asarray(phi, dtype=np.int64).tobytes(), a.shape[-1])
    return a @ R


def rational_part(a: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Integer value of vectors that reduce to rational constants.

    Raises ValueError when some entry is not rational.
    """
    red = reduce_mod_phi(a, phi)
    if red.shape[-1] > 1 and np.any(red[..., 1:]):
        raise ValueError("value is not a rational integer")
    return red[..., 0]


class CycValue:
    """A single element of Z[zeta_e], stored as a count vector."""

    __slots__ = ("e", "counts")

    def __init__(self, counts):
        self.counts = tuple(int(c) for c in counts)
        self.e = len(self.counts)

    def _canon(self) -> tuple[int, ...]:
        phi = np.array(cyclotomic_coeffs(self.e), dtype=np.int64)
        return tuple(int(c) for c in reduce_mod_phi(np.array(self.counts), phi))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CycValue([other] + [0] * (self.e - 1))
        if not isinstance(other, CycValue):
            return NotImplemented
        if other.e != self.e:
            return False
        return self._canon() == other._canon()

    def __hash__(self) -> int:
        return hash((self.e, self._canon()))

    def conjugate(self) -> "CycValue":
        return CycValue(cyc_conj(np.array(self.counts)))

    def is_rational(self) -> bool:
        c = self._canon()
        return not any(c[1:])

    def is_real(self) -> bool:
        return self == self.conjugate()

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.e)
        return sum(m * z ** j for j, m in enumerate(self.counts))

    def __str__(self) -> str:
        if self.is_rational():
            return str(self._canon()[0])
        terms = []
        for j, m in enumerate(self.counts):
            if m == 0:
                continue
            base = "1" if j == 0 else f"z^{j}"
            if j == 0:
                body = str(abs(m))
            else:
                body = base if abs(m) == 1 else f"{abs(m)}*{base}"
            sign = "-" if m < 0 else "+"
            terms.append((sign, body))
        text = "".join(s + b for s, b in terms)
        return text[1:] if text.startswith("+") else text

    def __repr__(self) -> str:
        return f"CycValue({str(self)!r}, e={self.e})"
