from fractions import Fraction

import pytest

from conicbm.arith import Place
from conicbm.brauer import (
    INFINITY,
    BrauerBasisError,
    ConicBundle,
    DegenerateFiberError,
    NoWitnessFound,
    brauer_basis,
    certify_nonsquare,
    degeneracy_locus,
    evaluate_class,
    residue_at,
)
from conicbm.hilbert import HALF, ZERO
from conicbm.polyarith import IntPoly

U2M2 = IntPoly([-2, 0, 1])
U2M3 = IntPoly([-3, 0, 1])


def test_conic_bundle_validation():
    with pytest.raises(ValueError):
        ConicBundle(3, [])
    with pytest.raises(ValueError):
        ConicBundle(3, [U2M2, U2M2])
    with pytest.raises(ValueError):
        ConicBundle(0, [U2M2])


def test_degeneracy_locus():
    loc = degeneracy_locus(ConicBundle(3, [U2M2]))
    assert [d for _, d in loc.points] == [2] and not loc.contains_infinity
    loc = degeneracy_locus(ConicBundle(3, [IntPoly([0, 1]), IntPoly([-1, 1])]))
    assert [d for _, d in loc.points] == [1, 1] and not loc.contains_infinity
    assert degeneracy_locus(ConicBundle(3, [IntPoly([0, 1])])).contains_infinity


def test_degeneracy_locus_main(main_bundle):
    loc = degeneracy_locus(main_bundle)
    assert [d for _, d in loc.points] == [1874] * 5
    assert not loc.contains_infinity


def test_certify_nonsquare_u2_minus_3():
    # u^2 - 3 is irreducible mod 5 (even degree: no witness there); the first
    # witness is a simple root mod 11
    w = certify_nonsquare(2, U2M3)
    assert w.ell == 11 and w.degree == 1
    assert w.check(2, U2M3)


def test_certify_nonsquare_square_fails():
    with pytest.raises(NoWitnessFound):
        certify_nonsquare(4, U2M3, bound=500)


def test_certify_nonsquare_main(main_bundle):
    w = certify_nonsquare(1873, main_bundle.factors[1])
    assert w.check(1873, main_bundle.factors[1])


def test_brauer_basis():
    B = brauer_basis(ConicBundle(3, [U2M2, IntPoly([1, 0, 1])]))
    assert len(B.classes) == 1 and B.order == 2
    with pytest.raises(BrauerBasisError):
        brauer_basis(ConicBundle(4, [U2M2, IntPoly([1, 0, 1])]))
    with pytest.raises(BrauerBasisError):
        brauer_basis(ConicBundle(3, [IntPoly([0, 1]), IntPoly([1, 0, 1])]))


def test_brauer_basis_main(main_bundle):
    B = brauer_basis(main_bundle)
    assert len(B.classes) == 4 and B.order == 16


def test_residues():
    t = U2M2
    r = residue_at(3, t, IntPoly([1]), t)
    assert r.valuation == 1 and r.trivial is False and r.witness is not None
    assert residue_at(3, t * t, IntPoly([1]), t).trivial is True
    assert residue_at(3, IntPoly([1, 0, 1]), IntPoly([1]), t) .valuation == 0


def test_evaluate_class_main(main_bundle, main_params):
    X = main_bundle
    assert evaluate_class(X, 2, INFINITY, Place(3)) == ZERO
    for c in range(5):
        assert all(evaluate_class(X, i, c, Place(5)) == ZERO for i in range(1, 5))
    p = main_params.p
    for c in range(40):
        for i in range(1, 5):
            nonres = pow(main_params.tilde[i].eval_mod(main_params.psi[c], p), (p - 1) // 2, p) == p - 1
            assert evaluate_class(X, i, c, Place(p)) == (HALF if nonres else ZERO)


def test_fiber_values_reject_roots():
    X = ConicBundle(3, [IntPoly([-1, 0, 1])])
    with pytest.raises(DegenerateFiberError):
        X.fiber_class_value(1)
    assert X.fiber_class_value(Fraction(1, 2)) == -3  # (1/4 - 1) * 4
    assert X.fiber_class_value(INFINITY) == 1
