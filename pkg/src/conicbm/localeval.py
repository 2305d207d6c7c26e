"""Local evaluation images S_v of the classes alpha_1..alpha_n and the verdict.

A CharVector is an int whose bit i-1 is inv_v(alpha_i) at the chosen point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .arith import Place, class_representatives, is_local_square, legendre
from .brauer import INFINITY, ConicBundle, DegenerateFiberError, Point, even_degree
from .hilbert import hilbert_symbol
from .polyarith import IntPoly, eval_mod_many, isolate_real_roots
from .sumset import F2Subset, minkowski_sum, obstruction_verdict

ENUMERATION = "enumeration"
DISKS = "disk-subdivision"
CLOSED_FORM = "closed-form-case-analysis"

DEFAULT_MAX_DEPTH = 64


@dataclass(frozen=True, order=True)
class ResidueDisk:
    """center + ell^e Z_ell in the chart u (affine) or s = 1/u (infinity_chart)."""

    place: Place
    infinity_chart: bool
    radius_exponent: int
    center: int

    def __str__(self) -> str:
        var = "1/u" if self.infinity_chart else "u"
        return f"{var} in {self.center} + {self.place.p}^{self.radius_exponent} Z_{self.place.p}"


@dataclass(frozen=True)
class LocalImage:
    place: Place
    vectors: frozenset[int]
    method: str
    depth_used: int = 0

    def sorted_vectors(self) -> list[int]:
        return sorted(self.vectors)


class DiskEngineInconclusive(Exception):
    def __init__(self, place: Place, disks: Sequence[ResidueDisk], partial: frozenset[int]):
        self.place = place
        self.disks = tuple(disks)
        self.partial = partial
        shown = ", ".join(str(d) for d in self.disks[:5])
        more = f" (+{len(self.disks) - 5} more)" if len(self.disks) > 5 else ""
        super().__init__(f"undecided at max_depth at place {place}: {shown}{more}")


class LemmaViolation(AssertionError):
    pass


def fiber_solvable(X: ConicBundle, c: Point, v: Place) -> bool:
    """Whether the fiber over c has a Q_v-point (c not a root of f)."""
    return hilbert_symbol(X.a, X.fiber_class_value(c), v) == 1


def _char_vector(a, classes: Sequence[int], v: Place) -> Optional[int]:
    """CharVector for factor classes, or None when the fiber has no Q_v-point."""
    total = 1
    for r in classes:
        total *= r
    if hilbert_symbol(a, total, v) != 1:
        return None
    out = 0
    for i, r in enumerate(classes[1:]):
        if hilbert_symbol(a, r, v) == -1:
            out |= 1 << i
    return out


# ---------------------------------------------------------------------------
# Enumeration at an odd prime dividing a exactly once
# ---------------------------------------------------------------------------


def class_vectors_mod_p(X: ConicBundle, p: int) -> list[int]:
    """For c = 0..p-1 the (n+1)-bit vector of Legendre classes of f_i(c) (bit i set
    for a nonresidue); raises LemmaViolation if some f_i(c) = 0 mod p."""
    out = [0] * p
    for i, fi in enumerate(X.factors):
        vals = eval_mod_many(fi.coeffs, range(p), p)
        for c, val in enumerate(vals):
            if val == 0:
                raise LemmaViolation(f"f_{i}({c}) = 0 mod {p}")
            if pow(val, (p - 1) // 2, p) != 1:
                out[c] |= 1 << i
    return out


def _parity(v: int) -> int:
    return bin(v).count("1") % 2


def local_image_enumerate_p(X: ConicBundle, p: Optional[int] = None) -> LocalImage:
    """S_p for p = a an odd prime, via residues mod p.

    Requires every f_i to be a unit on Z_p, so classes are read off mod p and
    the fiber is solvable iff the product of classes is trivial.  Points with
    v_p(c) < 0 and c = oo are shown to contribute nothing.
    """
    if p is None:
        if X.a.denominator != 1:
            raise ValueError("a must be a prime integer")
        p = X.a.numerator
    if X.a != p or p % 2 == 0:
        raise ValueError("enumeration needs a = p, an odd prime")
    vecs = class_vectors_mod_p(X, p)
    image = frozenset(v >> 1 for v in vecs if _parity(v) == 0)
    _check_no_points_off_Zp(X, p)
    return LocalImage(Place(p), image, ENUMERATION, 1)


def _check_no_points_off_Zp(X: ConicBundle, p: int) -> None:
    # for v(c) < 0, c^-deg f_i(c) = lead(f_i) mod p, so f(c) lies in lead(f) Q_p^x2
    if any(fi.degree % 2 for fi in X.factors):
        raise LemmaViolation("odd-degree factor: no control at infinity")
    lead = 1
    for fi in X.factors:
        if fi.lead % p == 0:
            raise LemmaViolation("p divides a leading coefficient")
        lead *= fi.lead
    if legendre(lead, p) != -1:
        raise LemmaViolation("lead(f) is a square mod p: points with v_p(u) < 0 exist")
    if fiber_solvable(X, INFINITY, Place(p)):
        raise LemmaViolation("the fiber at infinity has a Q_p-point")
    for c in (Fraction(1, p), Fraction(2, p**3)):
        try:
            if fiber_solvable(X, c, Place(p)):
                raise LemmaViolation(f"fiber over {c} has a Q_p-point")
        except DegenerateFiberError:
            continue


# ---------------------------------------------------------------------------
# Adaptive disk subdivision
# ---------------------------------------------------------------------------


def _val_mod(x: int, ell: int, cap: int) -> int:
    """v_ell(x) for x known mod ell^cap, capped at cap (x == 0 means >= cap)."""
    if x == 0:
        return cap
    v = 0
    while x % ell == 0 and v < cap:
        x //= ell
        v += 1
    return v


@dataclass
class _Chart:
    infinity: bool
    polys: list[IntPoly]
    derivs: list[IntPoly] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.derivs = [P.derivative() for P in self.polys]


def _charts(X: ConicBundle) -> list[_Chart]:
    rev = [fi.homogeneous_reverse(even_degree(fi.degree)) for fi in X.factors]
    return [_Chart(False, list(X.factors)), _Chart(True, rev)]


def local_image_disks(X: ConicBundle, v: Place, max_depth: int = DEFAULT_MAX_DEPTH) -> LocalImage:
    """S_v by subdividing P^1(Z_v) into residue disks until every factor has a
    constant square class or a single simple root can be excised."""
    if v.is_real:
        raise ValueError("the disk engine needs a finite place")
    ell = v.p
    slack = 3 if ell == 2 else 1  # unit part must be pinned mod 8 at 2, mod ell otherwise
    reps = class_representatives(v)
    image: set[int] = set()
    undecided: list[ResidueDisk] = []
    depth_used = 0
    for chart in _charts(X):
        level = [0] if chart.infinity else list(range(ell))
        e = 1
        while level:
            if e > max_depth:
                undecided.extend(ResidueDisk(v, chart.infinity, e, c) for c in level)
                break
            depth_used = max(depth_used, e)
            M = ell ** (2 * e)
            vals = [eval_mod_many(P.coeffs, level, M) for P in chart.polys]
            nxt: list[int] = []
            for k, c0 in enumerate(level):
                classes: list[Optional[int]] = []
                open_idx: list[int] = []
                for i in range(len(chart.polys)):
                    val = vals[i][k]
                    w = _val_mod(val, ell, 2 * e)
                    if w + slack <= e:
                        unit = (val // ell**w) % (8 if ell == 2 else ell)
                        classes.append(ell ** (w % 2) * unit)
                    else:
                        classes.append(None)
                        open_idx.append(i)
                if not open_idx:
                    vec = _char_vector(X.a, classes, v)  # type: ignore[arg-type]
                    if vec is not None:
                        image.add(vec)
                    continue
                if len(open_idx) == 1 and _excisable(chart, open_idx[0], c0, vals, k, ell, e, slack):
                    i = open_idx[0]
                    for r in reps:
                        classes[i] = r
                        vec = _char_vector(X.a, classes, v)  # type: ignore[arg-type]
                        if vec is not None:
                            image.add(vec)
                    continue
                nxt.extend(c0 + j * ell**e for j in range(ell))
            level = nxt
            e += 1
    if undecided:
        raise DiskEngineInconclusive(v, sorted(undecided), frozenset(image))
    return LocalImage(v, frozenset(image), DISKS, depth_used)


def _excisable(chart: _Chart, i: int, c0: int, vals, k: int, ell: int, e: int, slack: int) -> bool:
    """f_i has a simple root r in the disk with f_i = (u - r) * (unit of constant class).

    With delta = v(f_i'(c0)): if v(f_i(c0)) >= e + delta and delta + slack <= e,
    Hensel gives a root within ell^e of c0, and f_i(c)/(c - r) = f_i'(c0) mod ell^e
    pins the class of the cofactor.
    """
    M = ell ** (2 * e)
    d = chart.derivs[i].eval_mod(c0, M)
    delta = _val_mod(d, ell, 2 * e)
    if delta + slack > e:
        return False
    return vals[i][k] % ell ** (e + delta) == 0


# ---------------------------------------------------------------------------
# Real place
# ---------------------------------------------------------------------------


def _real_sample_points(f: IntPoly) -> list[Fraction]:
    """One point in each connected component of R minus the real roots of f."""
    intervals = isolate_real_roots(f)
    if not intervals:
        return [Fraction(0)]
    pts = [Fraction(intervals[0][0])]
    pts += [Fraction(hi) for _, hi in intervals]
    return pts


def local_image_real(X: ConicBundle) -> LocalImage:
    """S_real by sign analysis; oo lies in the closure of the outer intervals."""
    real = Place(None)
    if X.a > 0:
        # every fiber is solvable and every symbol is trivial; one smooth fiber suffices
        c = 0
        while any(fi(c) == 0 for fi in X.factors):
            c += 1
        return LocalImage(real, frozenset([0]), CLOSED_FORM, 0)
    image = set()
    for c in _real_sample_points(X.f):
        signs = [1 if fi(c) > 0 else -1 for fi in X.factors]
        vec = _char_vector(X.a, signs, real)
        if vec is not None:
            image.add(vec)
    return LocalImage(real, frozenset(image), CLOSED_FORM, 0)


def short_circuit_square(X: ConicBundle, v: Place) -> Optional[LocalImage]:
    """{0} when a is a square in Q_v: every fiber is solvable and every class dies."""
    if is_local_square(X.a, v):
        return LocalImage(v, frozenset([0]), CLOSED_FORM, 0)
    return None


def local_image(X: ConicBundle, v: Place, max_depth: int = DEFAULT_MAX_DEPTH) -> LocalImage:
    if v.is_real:
        return local_image_real(X)
    sc = short_circuit_square(X, v)
    if sc is not None:
        return sc
    return local_image_disks(X, v, max_depth)


# ---------------------------------------------------------------------------
# Verdict
# ---------------------------------------------------------------------------


class InconsistentImages(ValueError):
    pass


@dataclass(frozen=True)
class VerdictReport:
    n: int
    S: F2Subset
    obstructed: bool
    disjoint_subspaces: tuple[tuple[int, ...], ...]
    full_group_required: bool
    min_generators: Optional[int]
    nontrivial_places: tuple[Place, ...]


def brauer_manin_verdict(images: Sequence[LocalImage], n: int) -> VerdictReport:
    if not images:
        raise InconsistentImages("no local images given")
    empty = [str(im.place) for im in images if not im.vectors]
    if empty:
        raise InconsistentImages(f"X(Q_v) is empty at {', '.join(empty)}: no adelic points")
    sets = [F2Subset(n, im.vectors) for im in images]
    S = minkowski_sum(sets, n)
    rep = obstruction_verdict(S)
    big = tuple(sorted((im.place for im in images if len(im.vectors) >= 2), key=Place.sort_key))
    if rep.min_generators == n and n >= 1:
        assert len(big) <= n - 1, "more than n-1 places with #S_v >= 2 and full group required"
    return VerdictReport(
        n, S, rep.obstructed, rep.disjoint_subspaces, rep.full_group_required, rep.min_generators, big
    )
