"""Exact modular arithmetic: primality, Legendre symbols, square roots mod p,
CRT, valuations and square classes of Q_v^x."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Optional, Union

Rational = Union[int, Fraction]

# Deterministic for n < 3.3e24 (Sorenson & Webster), which covers 64-bit input.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    for w in _MR_WITNESSES:
        if m % w == 0:
            return m == w
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for w in _MR_WITNESSES:
        x = pow(w, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def next_prime(m: int) -> int:
    """Smallest prime strictly greater than m."""
    c = max(m + 1, 2)
    while not is_prime(c):
        c += 1
    return c


def primes_up_to(bound: int) -> list[int]:
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(bound**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def iter_primes(start: int = 2) -> Iterator[int]:
    c = start if is_prime(start) else next_prime(start)
    while True:
        yield c
        c = next_prime(c)


def factorint(m: int) -> dict[int, int]:
    """Trial-division factorisation of |m|; only used on small integers."""
    m = abs(m)
    if m == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def _check_odd_prime(p: int) -> None:
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for an odd prime p."""
    _check_odd_prime(p)
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod(a: int, p: int) -> Optional[int]:
    """Smaller square root of a modulo the odd prime p (Tonelli-Shanks), or None."""
    _check_odd_prime(p)
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return min(r, p - r)


def crt(pairs: Iterable[tuple[int, int]]) -> int:
    """Least nonnegative x with x = r_i mod m_i; moduli must be pairwise coprime."""
    x, modulus = 0, 1
    for r, m in pairs:
        if m < 1:
            raise ValueError(f"modulus must be positive, got {m}")
        if gcd(modulus, m) != 1:
            raise ValueError(f"moduli not coprime: {modulus} and {m}")
        # x + modulus*k = r mod m
        k = (r - x) * pow(modulus, -1, m) % m if m > 1 else 0
        x += modulus * k
        modulus *= m
    return x % modulus


def valuation(x: int, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of 0")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def split_valuation(x: int, p: int) -> tuple[int, int]:
    """(v_p(x), x / p^v_p(x)) for a nonzero integer x."""
    v = valuation(x, p)
    return v, x // p**v


def as_fraction(x: Rational) -> Fraction:
    f = Fraction(x)
    if f == 0:
        raise ValueError("expected a nonzero rational")
    return f


def class_integer(x: Rational) -> int:
    """Nonzero integer in the same square class as x in every Q_v (num*den)."""
    f = as_fraction(x)
    return f.numerator * f.denominator


@dataclass(frozen=True, order=True)
class Place:
    """A place of Q: the real place (p=None) or a rational prime."""

    p: Optional[int] = None

    def __post_init__(self) -> None:
        if self.p is not None and not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def is_real(self) -> bool:
        return self.p is None

    @property
    def kind(self) -> str:
        return "real" if self.p is None else "prime"

    @classmethod
    def parse(cls, text: str) -> "Place":
        text = str(text).strip().lower()
        if text in ("real", "inf", "infinity", "oo"):
            return cls(None)
        return cls(int(text))

    def sort_key(self) -> tuple[int, int]:
        return (0, 0) if self.p is None else (1, self.p)

    def __str__(self) -> str:
        return "real" if self.p is None else str(self.p)


REAL = Place(None)


@dataclass(frozen=True)
class SquareClassQv:
    """Canonical representative of a class in Q_v^x / Q_v^x2.

    ``unit_class`` is the sign (+1/-1) at the real place, the Legendre symbol of
    the unit part at odd p, and the unit part mod 8 (one of 1, 3, 5, 7) at p = 2.
    ``val_parity`` is 0 at the real place.
    """

    place: Place
    val_parity: int
    unit_class: int

    @property
    def is_trivial(self) -> bool:
        return self.val_parity == 0 and self.unit_class == 1

    def representative(self) -> int:
        """A small integer lying in this class."""
        if self.place.is_real:
            return self.unit_class
        p = self.place.p
        if p == 2:
            unit = self.unit_class
        else:
            unit = 1 if self.unit_class == 1 else smallest_nonresidue(p)
        return unit * p**self.val_parity


def smallest_nonresidue(p: int) -> int:
    z = 2
    while legendre(z, p) != -1:
        z += 1
    return z


def square_class(x: Rational, v: Place) -> SquareClassQv:
    m = class_integer(x)
    if v.is_real:
        return SquareClassQv(v, 0, 1 if m > 0 else -1)
    e, u = split_valuation(m, v.p)
    if v.p == 2:
        return SquareClassQv(v, e % 2, u % 8)
    return SquareClassQv(v, e % 2, legendre(u, v.p))


def is_local_square(x: Rational, v: Place) -> bool:
    return square_class(x, v).is_trivial


def class_representatives(v: Place) -> list[int]:
    """One integer from each class of Q_v^x / Q_v^x2, in a fixed order."""
    if v.is_real:
        return [1, -1]
    p = v.p
    if p == 2:
        return [1, 3, 5, 7, 2, 6, 10, 14]
    nr = smallest_nonresidue(p)
    return [1, nr, p, p * nr]
