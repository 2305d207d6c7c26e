"""Hilbert symbols over Q_v, local invariants in (1/2)Z/Z and the product formula."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import REAL, Place, Rational, class_integer, factorint, legendre, split_valuation


@dataclass(frozen=True)
class HalfInv:
    """Local invariant of a quaternion class: 0 or 1/2 in Q/Z."""

    value: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if self.value not in (0, Fraction(1, 2)):
            raise ValueError(f"not a 2-torsion invariant: {self.value}")

    @classmethod
    def from_bit(cls, bit: int) -> "HalfInv":
        return cls(Fraction(bit % 2, 2))

    @property
    def bit(self) -> int:
        return int(self.value * 2)

    def __add__(self, other: "HalfInv") -> "HalfInv":
        return HalfInv.from_bit(self.bit + other.bit)

    def __str__(self) -> str:
        return "0" if self.bit == 0 else "1/2"


ZERO = HalfInv()
HALF = HalfInv(Fraction(1, 2))


def _eps(u: int) -> int:
    return ((u - 1) // 2) % 2


def _omega(u: int) -> int:
    return ((u * u - 1) // 8) % 2


def hilbert_symbol(a: Rational, b: Rational, v: Place) -> int:
    """(a, b)_v in {+1, -1}."""
    A, B = class_integer(a), class_integer(b)
    if v.is_real:
        return -1 if A < 0 and B < 0 else 1
    p = v.p
    alpha, u = split_valuation(A, p)
    beta, w = split_valuation(B, p)
    if p == 2:
        e = _eps(u) * _eps(w) + alpha * _omega(w) + beta * _omega(u)
        return -1 if e % 2 else 1
    s = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        s *= legendre(u, p)
    if alpha % 2:
        s *= legendre(w, p)
    return s


def inv(a: Rational, b: Rational, v: Place) -> HalfInv:
    return ZERO if hilbert_symbol(a, b, v) == 1 else HALF


def conic_has_local_point(a: Rational, b: Rational, v: Place) -> bool:
    """Whether y^2 - a z^2 = b has a solution over Q_v."""
    return hilbert_symbol(a, b, v) == 1


def relevant_places(*xs: Rational) -> list[Place]:
    """{real, 2} and every prime dividing a numerator or denominator of the xs."""
    primes = {2}
    for x in xs:
        primes.update(factorint(class_integer(x)))
    return [REAL] + [Place(p) for p in sorted(primes)]


class ProductFormulaError(AssertionError):
    def __init__(self, table):
        self.table = table
        super().__init__(f"local invariants do not sum to 0: {table}")


def check_product_formula(a: Rational, b: Rational) -> list[tuple[Place, HalfInv]]:
    """Per-place invariants of (a, b); raises if they do not sum to 0 in Q/Z.

    Places outside ``relevant_places`` carry invariant 0 because both entries
    are units there.
    """
    table = [(v, inv(a, b, v)) for v in relevant_places(a, b)]
    total = sum(h.bit for _, h in table)
    if total % 2:
        raise ProductFormulaError(table)
    return table
