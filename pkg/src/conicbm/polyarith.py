"""Dense univariate polynomials over Z and F_p.

Coefficients are stored in ascending degree order. Degrees in this package
reach a few thousand (the composed factors have degree p + 1), so the hot
paths (evaluation at many points, gcd mod a small prime, multiplication) have
vectorised or big-integer fast paths; everything else is schoolbook.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count
from math import gcd
from typing import Callable, Iterable, Mapping, Sequence, Union

import numpy as np

from .arith import is_prime, primes_up_to

# m*m + m must fit in int64 for the vectorised Horner loop.
_NP_MODULUS_LIMIT = 3_037_000_000


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


# ---------------------------------------------------------------------------
# Integer polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntPoly:
    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _strip(int(c) for c in coeffs))

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPoly":
        out = cls((1,))
        for r in roots:
            out = out * cls((-r, 1))
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        return _format_poly(self.coeffs, "u")

    def __call__(self, x: Union[int, Fraction]) -> Union[int, Fraction]:
        acc: Union[int, Fraction] = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_mod(self, x: int, m: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % m
        return acc

    def eval_homogeneous(self, num: int, den: int, total_degree: int) -> int:
        """den^total_degree * f(num/den), exactly, for total_degree >= degree."""
        if total_degree < self.degree:
            raise ValueError("total degree below polynomial degree")
        acc = 0
        dpow = 1
        # Horner in num with den powers accumulated from the top
        for c in reversed(self.coeffs):
            acc = acc * num + c * dpow
            dpow *= den
        return acc * den ** (total_degree - self.degree) if self.coeffs else 0

    def derivative(self) -> "IntPoly":
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive_part(self) -> "IntPoly":
        g = self.content()
        if g == 0:
            return self
        if self.lead < 0:
            g = -g
        return IntPoly(c // g for c in self.coeffs)

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self), len(other))
        return IntPoly(self[i] + other[i] for i in range(n))

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def scale(self, k: int) -> "IntPoly":
        return IntPoly(k * c for c in self.coeffs)

    def __mul__(self, other: Union["IntPoly", int]) -> "IntPoly":
        if isinstance(other, int):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return IntPoly()
        if min(len(self), len(other)) > 32:
            return IntPoly(_kronecker_mul(self.coeffs, other.coeffs))
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPoly":
        out = IntPoly((1,))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def compose(self, inner: "IntPoly") -> "IntPoly":
        """self(inner(u))."""
        out = IntPoly()
        for c in reversed(self.coeffs):
            out = out * inner + IntPoly((c,))
        return out

    def shift(self, c: int) -> "IntPoly":
        """f(u + c)."""
        return self.compose(IntPoly((c, 1)))

    def homogeneous_reverse(self, total_degree: int) -> "IntPoly":
        """s^total_degree * f(1/s) as a polynomial in s."""
        if total_degree < self.degree:
            raise ValueError("total degree below polynomial degree")
        pad = total_degree - self.degree
        return IntPoly((0,) * pad + tuple(reversed(self.coeffs)))

    def mod(self, p: int) -> "FpPoly":
        return FpPoly(p, self.coeffs)


def rational_divmod(a: IntPoly, b: IntPoly) -> tuple[list[Fraction], list[Fraction]]:
    """Division with remainder over Q; returns coefficient lists."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in a.coeffs]
    q = [Fraction(0)] * max(len(r) - len(b) + 1, 0)
    lb = Fraction(b.lead)
    db = b.degree
    for k in range(len(r) - 1, db - 1, -1):
        if r[k] == 0:
            continue
        t = r[k] / lb
        q[k - db] = t
        for j, c in enumerate(b.coeffs):
            r[k - db + j] -= t * c
    rem = r[:db] if db > 0 else []
    while rem and rem[-1] == 0:
        rem.pop()
    return q, rem


def poly_valuation(g: IntPoly, t: IntPoly) -> int:
    """Largest k with t^k dividing g in Q[u] (t nonconstant, g nonzero)."""
    if g.is_zero():
        raise ValueError("valuation of the zero polynomial")
    if t.degree < 1:
        raise ValueError("valuation needs a nonconstant polynomial")
    k = 0
    cur = [Fraction(c) for c in g.coeffs]
    while True:
        den = 1
        for c in cur:
            den = den * c.denominator // gcd(den, c.denominator)
        q, r = rational_divmod(IntPoly(int(c * den) for c in cur), t)
        if r:
            return k
        cur = q
        k += 1


def _kronecker_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Signed Kronecker-substitution product of two integer coefficient lists."""
    bound = max(abs(c) for c in a) * max(abs(c) for c in b) * min(len(a), len(b))
    bits = bound.bit_length() + 2
    bits = (bits + 7) // 8 * 8
    nbytes = bits // 8
    A = _pack(a, bits)
    B = _pack(b, bits)
    C = A * B
    ncoef = len(a) + len(b) - 1
    half = 1 << (bits - 1)
    # offset every digit by half so all digits are nonnegative
    offset = int.from_bytes((half.to_bytes(nbytes, "little")) * ncoef, "little")
    raw = (C + offset).to_bytes(nbytes * ncoef + 1, "little")
    return [
        int.from_bytes(raw[i * nbytes : (i + 1) * nbytes], "little") - half
        for i in range(ncoef)
    ]


def _pack(coeffs: Sequence[int], bits: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc << bits) + c
    return acc


def _format_poly(coeffs: Sequence[int], var: str) -> str:
    if not coeffs:
        return "0"
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and c == 1:
            terms.append(f"+ {mono}")
        elif mono and c == -1:
            terms.append(f"- {mono}")
        else:
            sign = "-" if c < 0 else "+"
            terms.append(f"{sign} {abs(c)}{'*' + mono if mono else ''}")
    s = " ".join(terms)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


# ---------------------------------------------------------------------------
# Batch evaluation
# ---------------------------------------------------------------------------


def eval_mod_many(coeffs: Sequence[int], points: Sequence[int], m: int) -> list[int]:
    """[f(c) mod m for c in points]; vectorised when m is small enough."""
    if m < _NP_MODULUS_LIMIT:
        pts = np.asarray([c % m for c in points], dtype=np.int64)
        acc = np.zeros(len(pts), dtype=np.int64)
        for c in reversed(coeffs):
            acc = (acc * pts + (c % m)) % m
        return acc.tolist()
    red = [c % m for c in coeffs]
    pts = [c % m for c in points]
    acc = [0] * len(pts)
    for c in reversed(red):
        acc = [(a * x + c) % m for a, x in zip(acc, pts)]
    return acc


# ---------------------------------------------------------------------------
# Polynomials over F_p
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FpPoly:
    p: int
    coeffs: tuple[int, ...] = field(default=())

    def __init__(self, p: int, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", _strip(int(c) % p for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __repr__(self) -> str:
        return f"FpPoly({self.p}, {list(self.coeffs)})"

    def __str__(self) -> str:
        return _format_poly(self.coeffs, "x")

    def _new(self, coeffs: Iterable[int]) -> "FpPoly":
        return FpPoly(self.p, coeffs)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def __add__(self, other: "FpPoly") -> "FpPoly":
        n = max(len(self), len(other))
        return self._new(self[i] + other[i] for i in range(n))

    def __sub__(self, other: "FpPoly") -> "FpPoly":
        n = max(len(self), len(other))
        return self._new(self[i] - other[i] for i in range(n))

    def __mul__(self, other: Union["FpPoly", int]) -> "FpPoly":
        if isinstance(other, int):
            return self._new(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return self._new(())
        p = self.p
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = (out[i + j] + a * b) % p
        return self._new(out)

    def monic(self) -> "FpPoly":
        if self.is_zero():
            return self
        inv = pow(self.lead, -1, self.p)
        return self._new(c * inv for c in self.coeffs)

    def derivative(self) -> "FpPoly":
        return self._new(i * c for i, c in enumerate(self.coeffs) if i)

    def __divmod__(self, other: "FpPoly") -> tuple["FpPoly", "FpPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        r = list(self.coeffs)
        db = other.degree
        inv = pow(other.lead, -1, p)
        q = [0] * max(len(r) - db, 0)
        b = other.coeffs
        for k in range(len(r) - 1, db - 1, -1):
            t = r[k] * inv % p
            if t:
                q[k - db] = t
                base = k - db
                for j in range(db + 1):
                    r[base + j] = (r[base + j] - t * b[j]) % p
        return self._new(q), self._new(r[:db])

    def __floordiv__(self, other: "FpPoly") -> "FpPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "FpPoly") -> "FpPoly":
        return divmod(self, other)[1]

    def powmod(self, e: int, modulus: "FpPoly") -> "FpPoly":
        out = self._new((1,))
        base = self % modulus
        while e:
            if e & 1:
                out = (out * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return out


def fp_gcd(a: FpPoly, b: FpPoly) -> FpPoly:
    """Monic gcd (zero if both are zero)."""
    if max(a.degree, b.degree) > 200 and a.p < _NP_MODULUS_LIMIT:
        return FpPoly(a.p, _np_gcd(a.coeffs, b.coeffs, a.p))
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def _np_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Euclid over F_p on numpy int64 arrays (descending storage)."""
    A = np.array(list(reversed(a)) or [0], dtype=np.int64)
    B = np.array(list(reversed(b)) or [0], dtype=np.int64)
    A = np.trim_zeros(A, "f")
    B = np.trim_zeros(B, "f")
    while B.size:
        if A.size >= B.size:
            inv = pow(int(B[0]), -1, p)
            Bn = B * inv % p
            A = A.copy()
            nb = Bn.size
            for k in range(A.size - nb + 1):
                t = int(A[k])
                if t:
                    A[k : k + nb] = (A[k : k + nb] - t * Bn) % p
            A = np.trim_zeros(A[A.size - nb + 1 :], "f") if nb > 1 else np.zeros(0, np.int64)
        A, B = B, A
    if not A.size:
        return []
    inv = pow(int(A[0]), -1, p)
    return [int(c) for c in reversed((A * inv % p).tolist())]


def _pth_root(f: FpPoly) -> FpPoly:
    p = f.p
    # coefficients of x^(kp) only; c^(1/p) = c in F_p
    return FpPoly(p, f.coeffs[::p])


def _squarefree_decomposition(f: FpPoly) -> list[tuple[FpPoly, int]]:
    out: list[tuple[FpPoly, int]] = []
    df = f.derivative()
    if df.is_zero():
        if f.degree <= 0:
            return out
        return [(h, m * f.p) for h, m in _squarefree_decomposition(_pth_root(f))]
    c = fp_gcd(f, df)
    w = f // c
    i = 1
    while w.degree > 0:
        y = fp_gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z.monic(), i))
        i += 1
        w = y
        c = c // y
    if c.degree > 0:
        out.extend((h, m * f.p) for h, m in _squarefree_decomposition(_pth_root(c.monic())))
    return out


def _distinct_degree(f: FpPoly) -> list[tuple[FpPoly, int]]:
    """Split a monic squarefree f into products of irreducibles of equal degree."""
    p = f.p
    x = FpPoly(p, (0, 1))
    out = []
    h = x
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = h.powmod(p, f)
        g = fp_gcd(f, h - x)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f.monic(), f.degree))
    return out


def _split_candidates(p: int, deg: int):
    # deterministic enumeration of nonconstant polynomials of degree < deg
    for k in count(p):
        digits = []
        m = k
        while m:
            digits.append(m % p)
            m //= p
        if len(digits) > deg:
            return
        yield FpPoly(p, digits)


def _equal_degree(f: FpPoly, d: int) -> list[FpPoly]:
    if f.degree == d:
        return [f.monic()]
    p = f.p
    e = (p**d - 1) // 2
    one = FpPoly(p, (1,))
    for a in _split_candidates(p, f.degree):
        b = a.powmod(e, f) - one
        g = fp_gcd(f, b)
        if 0 < g.degree < f.degree:
            return _equal_degree(g, d) + _equal_degree(f // g, d)
    raise RuntimeError("equal-degree splitting exhausted candidates")


def _factor_key(item: tuple[FpPoly, int]) -> tuple:
    poly, _ = item
    return (poly.degree, poly.coeffs)


def factor_mod_p(f: FpPoly) -> list[tuple[FpPoly, int]]:
    """Monic irreducible factors with multiplicity, sorted by (degree, coefficients).

    The leading coefficient ``f.lead`` is not included in the list.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if f.p == 2 or not is_prime(f.p):
        raise ValueError("factor_mod_p needs an odd prime modulus")
    merged: dict[tuple[int, ...], int] = {}
    for sqf, mult in _squarefree_decomposition(f.monic()):
        for block, d in _distinct_degree(sqf):
            for irr in _equal_degree(block, d):
                merged[irr.coeffs] = merged.get(irr.coeffs, 0) + mult
    items = [(FpPoly(f.p, k), m) for k, m in merged.items()]
    return sorted(items, key=_factor_key)


def roots_mod_p(f: FpPoly) -> list[int]:
    """Distinct roots of f in F_p, ascending."""
    if f.is_zero():
        raise ValueError("every residue is a root of the zero polynomial")
    p = f.p
    if p < 50_000:
        vals = eval_mod_many(f.coeffs, range(p), p)
        return [c for c, v in enumerate(vals) if v == 0]
    x = FpPoly(p, (0, 1))
    g = fp_gcd(f, x.powmod(p, f) - x)
    if g.degree <= 0:
        return []
    return sorted((-h[0]) % p for h in _equal_degree(g, 1))


# ---------------------------------------------------------------------------
# Operations on integer polynomials
# ---------------------------------------------------------------------------


def _check_values(values, p: int) -> list[int]:
    if callable(values) and not isinstance(values, Mapping):
        vals = [values(c) for c in range(p)]
    elif isinstance(values, Mapping):
        vals = [values[c] for c in range(p)]
    else:
        vals = list(values)
        if len(vals) != p:
            raise ValueError(f"need a value for every element of F_{p}")
    return [v % p for v in vals]


def interpolate_monic(
    values: Union[Sequence[int], Mapping[int, int], Callable[[int], int]], n: int, p: int
) -> FpPoly:
    """Monic degree-n f over F_p with f(c) = values(c) for every c in F_p.

    f = x^n + h, where h (degree < p) is the Lagrange interpolant of
    values(c) - c^n. Over the full field the Lagrange basis polynomial at c is
    1 - (x - c)^(p-1), which gives h_k = -sum_c y_c c^(p-1-k) for k >= 1 and
    h_0 = y_0.
    """
    if not is_prime(p) or p == 2:
        raise ValueError("interpolate_monic needs an odd prime field")
    if n < p:
        raise ValueError(f"degree {n} is below the field size {p}")
    vals = _check_values(values, p)
    ys = [(v - pow(c, n, p)) % p for c, v in enumerate(vals)]
    sums = _power_sums(ys, p)  # sums[j] = sum_c y_c c^j, with 0^0 = 1
    h = [0] * p
    h[0] = ys[0]
    for k in range(1, p):
        h[k] = -sums[p - 1 - k] % p
    coeffs = h + [0] * (n - p) + [1]
    f = FpPoly(p, coeffs)
    got = eval_mod_many(f.coeffs, range(p), p)
    if got != vals or f.degree != n or f.lead != 1:
        raise AssertionError("interpolation does not reproduce the input values")
    return f


def _power_sums(ys: Sequence[int], p: int) -> list[int]:
    if p < _NP_MODULUS_LIMIT // p:
        y = np.asarray(ys, dtype=np.int64)
        cs = np.arange(p, dtype=np.int64)
        vec = y.copy()
        out = []
        for _ in range(p - 1):
            out.append(int(vec.sum() % p))
            vec = vec * cs % p
        return out
    vec = list(ys)
    out = []
    for _ in range(p - 1):
        out.append(sum(vec) % p)
        vec = [v * c % p for c, v in enumerate(vec)]
    return out


def _int_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd over Q via the primitive remainder sequence."""
    a, b = a.primitive_part(), b.primitive_part()
    while not b.is_zero():
        if a.degree < b.degree:
            a, b = b, a
        # pseudo-remainder
        r = a
        lb = b.lead
        while not r.is_zero() and r.degree >= b.degree:
            shift = r.degree - b.degree
            r = r.scale(lb) - IntPoly((0,) * shift + tuple(c * r.lead for c in b.coeffs))
        a, b = b, r.primitive_part()
    return a.primitive_part()


def is_separable(f: IntPoly, trial_primes: int = 40) -> bool:
    """True iff gcd(f, f') is constant over Q.

    A prime l not dividing lead(f) with f mod l squarefree certifies
    separability; the exact primitive-remainder gcd is the fallback.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.degree <= 0:
        return True
    df = f.derivative()
    tried = 0
    for ell in primes_up_to(2000):
        if f.lead % ell == 0:
            continue
        fm = f.mod(ell)
        dm = df.mod(ell)
        if dm.is_zero():
            continue
        if fp_gcd(fm, dm).degree == 0:
            return True
        tried += 1
        if tried >= trial_primes:
            break
    return _int_gcd(f, df).degree == 0


def eisenstein_at(f: IntPoly, ell: int) -> bool:
    if f.degree < 1:
        raise ValueError("Eisenstein criterion needs a nonconstant polynomial")
    if f.lead % ell == 0:
        return False
    if any(c % ell for c in f.coeffs[:-1]):
        return False
    return f.coeffs[0] % (ell * ell) != 0


def _bareiss_det(mat: list[list[int]]) -> int:
    n = len(mat)
    if n == 0:
        return 1
    m = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Res(f, g) = lead(f)^deg(g) * prod g(alpha) over roots alpha of f
    (Sylvester determinant)."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of the zero polynomial")
    m, n = f.degree, g.degree
    if m == 0:
        return f.lead**n
    if n == 0:
        return g.lead**m
    size = m + n
    fd = list(reversed(f.coeffs))
    gd = list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + fd + [0] * (size - i - m - 1))
    for i in range(m):
        rows.append([0] * i + gd + [0] * (size - i - n - 1))
    return _bareiss_det(rows)


@dataclass(frozen=True)
class HenselRoots:
    modulus: int
    roots: tuple[int, ...]
    non_liftable: tuple[int, ...]


def hensel_roots(f: IntPoly, p: int, precision: int) -> HenselRoots:
    """Lift every simple root of f mod p to a root mod p^precision.

    Roots where f' also vanishes mod p are returned in ``non_liftable``.
    """
    if precision < 1:
        raise ValueError("precision must be positive")
    if f.mod(p).is_zero():
        raise ValueError(f"f vanishes identically mod {p}")
    df = f.derivative()
    modulus = p**precision
    lifted, stuck = [], []
    if p == 2:
        residues = [c for c in (0, 1) if f.eval_mod(c, 2) == 0]
    else:
        residues = roots_mod_p(f.mod(p))
    for r in residues:
        if df.eval_mod(r, p) == 0:
            stuck.append(r)
            continue
        k = 1
        while k < precision:
            k = min(2 * k, precision)
            m = p**k
            r = (r - f.eval_mod(r, m) * pow(df.eval_mod(r, m), -1, m)) % m
        lifted.append(r % modulus)
    return HenselRoots(modulus, tuple(sorted(lifted)), tuple(stuck))


# ---------------------------------------------------------------------------
# Real roots (Sturm sequences)
# ---------------------------------------------------------------------------


def _frac_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    r = a[:]
    db = len(b) - 1
    while len(r) - 1 >= db and any(r):
        t = r[-1] / b[-1]
        shift = len(r) - 1 - db
        for j, c in enumerate(b):
            r[shift + j] -= t * c
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return r


def sturm_sequence(f: IntPoly) -> list[list[Fraction]]:
    seq = [[Fraction(c) for c in f.coeffs], [Fraction(c) for c in f.derivative().coeffs]]
    while seq[-1] and len(seq[-1]) > 1:
        r = _frac_rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return seq


def _eval_frac(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _sign_changes(seq: list[list[Fraction]], x: Fraction) -> int:
    signs = [s for s in (_eval_frac(p, x) for p in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_real_roots(seq: list[list[Fraction]], lo: Fraction, hi: Fraction) -> int:
    """Distinct roots in (lo, hi] for a squarefree polynomial."""
    return _sign_changes(seq, lo) - _sign_changes(seq, hi)


def isolate_real_roots(f: IntPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi), ascending, each holding exactly one real root
    of the squarefree f; no endpoint is a root."""
    if f.degree < 1:
        return []
    seq = sturm_sequence(f)
    bound = Fraction(1) + max(Fraction(abs(c), abs(f.lead)) for c in f.coeffs[:-1])
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        k = count_real_roots(seq, lo, hi)
        if k == 0:
            continue
        if k == 1 and f(hi) != 0:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if f(mid) == 0:
            eps = (hi - lo) / 4
            while count_real_roots(seq, mid - eps, mid + eps) != 1 or f(mid + eps) == 0 or f(mid - eps) == 0:
                eps /= 2
            out.append((mid - eps, mid + eps))
            stack.append((lo, mid - eps))
            stack.append((mid + eps, hi))
        else:
            stack.append((lo, mid))
            stack.append((mid, hi))
    return sorted(out)
