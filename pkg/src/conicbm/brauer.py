"""Conic bundles y^2 - a z^2 = f(u) over P^1_Q and the 2-torsion classes (a, f_i)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from typing import Optional, Sequence, Union

from .arith import Place, Rational, as_fraction, class_integer, is_local_square, iter_primes, legendre
from .hilbert import HalfInv, inv
from .polyarith import FpPoly, IntPoly, eval_mod_many, factor_mod_p, poly_valuation


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "oo"


INFINITY = _Infinity()
Point = Union[int, Fraction, _Infinity]


class DegenerateFiberError(ValueError):
    """Raised when a computation is asked for at a root of f."""


def even_degree(d: int) -> int:
    return d + (d % 2)


@dataclass(frozen=True)
class ConicBundle:
    """X_{a,f}: y^2 - a z^2 = f(u), with f = f_0 * ... * f_n given factor by factor."""

    a: Fraction
    factors: tuple[IntPoly, ...]

    def __init__(self, a: Rational, factors: Sequence[IntPoly]):
        object.__setattr__(self, "a", as_fraction(a))
        fs = tuple(factors)
        if not fs:
            raise ValueError("a conic bundle needs at least one factor")
        if any(fi.degree < 1 for fi in fs):
            raise ValueError("factors must be nonconstant")
        if len({fi.coeffs for fi in fs}) != len(fs):
            raise ValueError("factors must be pairwise distinct")
        object.__setattr__(self, "factors", fs)

    @property
    def n(self) -> int:
        return len(self.factors) - 1

    @cached_property
    def f(self) -> IntPoly:
        return reduce(lambda x, y: x * y, self.factors)

    @property
    def degree(self) -> int:
        return sum(fi.degree for fi in self.factors)

    @property
    def infinity_degenerate(self) -> bool:
        return self.degree % 2 == 1

    def factor_class_value(self, i: int, c: Point) -> int:
        """A nonzero integer in the square class of f_i(c) (in every Q_v)."""
        fi = self.factors[i]
        if c is INFINITY:
            if fi.degree % 2:
                raise DegenerateFiberError("odd-degree factor has no value at infinity")
            return fi.lead
        c = Fraction(c)
        val = fi.eval_homogeneous(c.numerator, c.denominator, even_degree(fi.degree))
        if val == 0:
            raise DegenerateFiberError(f"u = {c} is a root of f_{i}")
        return val

    def fiber_class_value(self, c: Point) -> int:
        """A nonzero integer in the square class of f(c) (lead(f) at infinity)."""
        if c is INFINITY:
            if self.infinity_degenerate:
                raise DegenerateFiberError("the fiber at infinity is degenerate")
            return _prod(fi.lead for fi in self.factors)
        c = Fraction(c)
        out = 1
        for i, fi in enumerate(self.factors):
            val = fi.eval_homogeneous(c.numerator, c.denominator, fi.degree)
            if val == 0:
                raise DegenerateFiberError(f"u = {c} is a root of f_{i}")
            out *= val
        # den^deg(f) has the parity of deg f; fix odd total degree with one den
        return out * (c.denominator if self.degree % 2 else 1)


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


@dataclass(frozen=True)
class DegeneracyLocus:
    points: tuple[tuple[IntPoly, int], ...]
    contains_infinity: bool


def degeneracy_locus(X: ConicBundle) -> DegeneracyLocus:
    return DegeneracyLocus(tuple((fi, fi.degree) for fi in X.factors), X.infinity_degenerate)


# ---------------------------------------------------------------------------
# Nonsquare certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NonsquareWitness:
    """a is not a square in Q[u]/(f): f mod ell has a simple irreducible factor
    phi of degree d with a^((ell^d - 1)/2) = -1 in F_ell[u]/(phi).

    Soundness: phi lifts by Hensel to a factor of f over Z_ell, giving an
    embedding of Q[u]/(f) into the unramified extension of Q_ell of degree d,
    whose residue field F_{ell^d} would have to contain a square root of a.
    """

    ell: int
    factor: FpPoly
    degree: int

    def check(self, a: Rational, f: IntPoly) -> bool:
        ell = self.ell
        A = class_integer(a)
        if ell == 2 or A % ell == 0 or f.lead % ell == 0:
            return False
        fm = f.mod(ell)
        q, r = divmod(fm, self.factor)
        if not r.is_zero() or (q % self.factor).is_zero():
            return False
        return pow(A % ell, (ell**self.degree - 1) // 2, ell) == ell - 1

    def to_json(self) -> dict:
        return {"ell": self.ell, "degree": self.degree, "factor": list(self.factor.coeffs)}


class NoWitnessFound(Exception):
    """Search exhausted below the bound; says nothing about squareness."""


def certify_nonsquare(
    a: Rational, f: IntPoly, bound: int = 2000, full_factor_degree: int = 60
) -> NonsquareWitness:
    """Search odd primes ell < bound for a NonsquareWitness.

    Only linear factors (simple roots) are looked for when deg f exceeds
    ``full_factor_degree``; smaller f are factored completely.
    """
    A = class_integer(a)
    df = f.derivative()
    for ell in iter_primes(3):
        if ell >= bound:
            break
        if A % ell == 0 or f.lead % ell == 0:
            continue
        chi = legendre(A, ell)
        if chi == 1:
            continue  # a is a square in every F_{ell^d}
        if f.degree <= full_factor_degree:
            for phi, mult in factor_mod_p(f.mod(ell)):
                if mult == 1 and phi.degree % 2 == 1:
                    return NonsquareWitness(ell, phi, phi.degree)
            continue
        vals = eval_mod_many(f.coeffs, range(ell), ell)
        for r, val in enumerate(vals):
            if val == 0 and df.eval_mod(r, ell) != 0:
                return NonsquareWitness(ell, FpPoly(ell, (-r, 1)), 1)
    raise NoWitnessFound(f"no nonsquare witness for a = {a} below {bound}")


# ---------------------------------------------------------------------------
# Brauer basis, residues, evaluation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BrauerClass:
    """alpha_i = (a, f_i), i in 1..n; 2 * alpha_i = 0."""

    index: int


@dataclass(frozen=True)
class BrauerBasis:
    classes: tuple[BrauerClass, ...]
    witnesses: tuple[NonsquareWitness, ...]
    relation: str

    @property
    def order(self) -> int:
        return 2 ** len(self.classes)


class BrauerBasisError(ValueError):
    pass


def _is_rational_square(x: Fraction) -> bool:
    from math import isqrt

    if x <= 0:
        return False
    n, d = x.numerator, x.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


def brauer_basis(
    X: ConicBundle, witnesses: Optional[Sequence[NonsquareWitness]] = None, bound: int = 2000
) -> BrauerBasis:
    """alpha_1..alpha_n as an F_2-basis of Br X / Br Q.

    Needs every factor of even degree with a certified nonsquare in its
    residue field; alpha_0 is the sum of the others.
    """
    if _is_rational_square(X.a):
        raise BrauerBasisError("a is a square: Br X = Br Q has no nonconstant classes")
    odd = [i for i, fi in enumerate(X.factors) if fi.degree % 2]
    if odd:
        raise BrauerBasisError(f"factors of odd degree: {odd}")
    if witnesses is None:
        try:
            witnesses = [certify_nonsquare(X.a, fi, bound) for fi in X.factors]
        except NoWitnessFound as exc:
            raise BrauerBasisError(str(exc)) from exc
    if len(witnesses) != len(X.factors):
        raise BrauerBasisError("one nonsquare witness per factor is required")
    for i, (w, fi) in enumerate(zip(witnesses, X.factors)):
        if not w.check(X.a, fi):
            raise BrauerBasisError(f"witness for f_{i} does not verify")
    return BrauerBasis(
        tuple(BrauerClass(i) for i in range(1, X.n + 1)),
        tuple(witnesses),
        "(a, f_0) + (a, f_1) + ... + (a, f_n) = 0",
    )


@dataclass(frozen=True)
class Residue:
    """Class of a^v_t(g) in k(t)^x / k(t)^x2."""

    valuation: int
    witness: Optional[NonsquareWitness]
    trivial: Optional[bool]  # None: parity odd and nonsquareness not certified


def residue_at(
    a: Rational, g_num: IntPoly, g_den: IntPoly, t: IntPoly, bound: int = 2000
) -> Residue:
    v = poly_valuation(g_num, t) - poly_valuation(g_den, t)
    if v % 2 == 0:
        return Residue(v, None, True)
    if _is_rational_square(as_fraction(a)):
        return Residue(v, None, True)
    try:
        w = certify_nonsquare(a, t, bound)
    except NoWitnessFound:
        return Residue(v, None, None)
    return Residue(v, w, False)


def evaluate_class(X: ConicBundle, i: int, c: Point, v: Place) -> HalfInv:
    """inv_v of alpha_i at a point of the fiber over c (c not a root of f)."""
    if not 0 <= i <= X.n:
        raise IndexError(f"class index {i} out of range")
    if c is not INFINITY:
        X.fiber_class_value(c)  # rejects degenerate fibers
    return inv(X.a, X.factor_class_value(i, c), v)


def a_is_local_square(X: ConicBundle, v: Place) -> bool:
    return is_local_square(X.a, v)
