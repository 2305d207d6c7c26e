import pytest

from conicbm.arith import Place, primes_up_to
from conicbm.certificate import build_certificate, dumps
from conicbm.construct import (
    ConstructionError,
    assemble,
    build_g,
    build_params,
    choose_psi,
    congruence_report,
    exceptional_places,
    find_p,
    find_q,
    params_from_g,
    pairwise_resultants,
    q_target,
    realization_counts,
    realized_vectors,
    resultant_primes,
    smallest_p_report,
    target_set_E,
    tilde_factors,
    verify_lemma_f,
)
from conicbm.polyarith import IntPoly, eisenstein_at, eval_mod_many
from oracles import legendre_brute

# counts for eps = 0..31 (bit i = class of tilde f_i) over F_1873, from a
# direct Euler-criterion loop
FROZEN_COUNTS_1873 = [
    57, 48, 55, 63, 68, 60, 51, 63, 63, 65, 52, 62, 52, 52, 67, 55,
    65, 53, 60, 64, 48, 66, 61, 51, 51, 63, 62, 50, 61, 61, 59, 60,
]
REFERENCE_PSI_IMAGE = [3, 6, 7, 11, 15, 20, 22, 26, 29, 31, 33, 35, 41, 61, 195]


def test_find_q():
    assert find_q(4) == 5 and find_q(2) == 3 and find_q(6) == 7
    with pytest.raises(ValueError):
        find_q(1)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_target_set(n):
    E = target_set_E(n)
    assert len(E) == 2**n - 1 == len(set(E))
    assert all(v and bin(v).count("1") % 2 == 0 for v in E)
    keys = [tuple((v >> j) & 1 for j in range(n + 1)) for v in E]
    assert keys == sorted(keys)


def test_congruence_filter_oracle():
    passing = []
    for p in primes_up_to(2500):
        ok = p % 8 == 1 and legendre_brute(p, 5) == -1 and all(legendre_brute(p, ell) == 1 for ell in (3, 7, 11))
        assert congruence_report(4, 5, p)["pass"] == ok
        if ok:
            passing.append(p)
    assert passing == [1873, 2017, 2137, 2377, 2473]


def test_realization_counts_frozen():
    counts = realization_counts(tilde_factors(4, 5), 1873)
    assert [counts[v] for v in range(32)] == FROZEN_COUNTS_1873
    assert sum(counts.values()) == 1873 - 5


def test_realization_tiny_prime():
    counts = realization_counts(tilde_factors(4, 5), 13)
    assert sum(counts.values()) <= 13
    assert min(counts.values()) == 0


def test_find_p():
    rep = find_p(4, 5, 10000)
    assert rep.p == 1873 and all(rep.counts[v] > 0 for v in target_set_E(4))
    with pytest.raises(ConstructionError):
        find_p(4, 5, 1000)
    small = find_p(2, 3, 1000)
    assert congruence_report(2, 3, small.p)["pass"]


def test_smallest_p_report():
    rep = smallest_p_report(4, 5, 1873)
    assert rep["smallest_p"] == 1873 and rep["smallest_p_all_classes"] == 1873
    assert rep["agrees_with_reference"] is True
    assert smallest_p_report(2, 3, 100)["agrees_with_reference"] is None


def test_choose_psi_main(main_params):
    assert sorted(set(main_params.psi)) == REFERENCE_PSI_IMAGE
    vecs = realized_vectors(main_params.psi, main_params.tilde, 1873)
    assert set(vecs) == set(target_set_E(4))


def test_reference_psi_image_realizes_E():
    vecs = realized_vectors(REFERENCE_PSI_IMAGE, tilde_factors(4, 5), 1873)
    assert None not in vecs and len(set(vecs)) == 15 and set(vecs) == set(target_set_E(4))


def test_choose_psi_toy(toy_params):
    vecs = realized_vectors(toy_params.psi, toy_params.tilde, toy_params.p)
    assert len(set(vecs)) == 3


def test_choose_psi_unrealizable():
    with pytest.raises(ConstructionError):
        choose_psi(4, 17, tilde_factors(4, 5))


def test_build_g(main_params):
    P = main_params
    g = P.g
    assert g.degree == P.p + 1 and g.lead == 1
    assert eisenstein_at(g, 2)
    assert g.mod(P.p) == P.h
    assert g.mod(P.q) == q_target(P.p, P.q).mod(P.q)
    assert set(eval_mod_many(g.coeffs, range(P.q), P.q)) == {4}
    assert g[0] % 4 == 2 and g[0] < 4 * P.p * P.q
    assert all(c % 2 == 0 and 0 <= c < 2 * P.p * P.q for c in g.coeffs[1:-1])


def test_build_g_rejects_bad_h(main_params):
    with pytest.raises(ConstructionError):
        build_g(main_params.p, main_params.q, main_params.h * main_params.h)


def test_assemble(main_bundle):
    assert [fi.degree for fi in main_bundle.factors] == [1874] * 5
    assert [fi.lead for fi in main_bundle.factors] == [5, 1, 1, 1, 1]
    assert all(eisenstein_at(fi, 2) for fi in main_bundle.factors)


def test_resultants():
    res = {(i, j): r for i, j, r in pairwise_resultants(tilde_factors(4, 5))}
    assert res[(0, 1)] == 44  # Res(5u + 16, u + 12) = 5*12 - 16
    assert resultant_primes(tilde_factors(4, 5)) == [2, 3, 11]


def test_exceptional_places(main_params):
    assert exceptional_places(main_params) == [Place(p) for p in (2, 3, 5, 7, 11, 1873)]


def test_lemma_main(main_params, main_bundle):
    checks = verify_lemma_f(main_bundle, main_params)
    assert all(part["pass"] for part in checks.values()), {k: v["pass"] for k, v in checks.items()}
    assert checks["part5"]["bound"] == 12


def test_lemma_detects_corrupt_g(toy_params):
    g = list(toy_params.g.coeffs)
    g[3] += 2 * 5  # changes g mod p but keeps parity and the q-congruence fails
    bad = params_from_g(toy_params.n, toy_params.q, toy_params.p, IntPoly(g))
    checks = verify_lemma_f(assemble(bad), bad)
    assert not checks["g_congruences"]["pass"]
    assert not checks["part3"]["pass"] or not checks["part2"]["pass"]


def test_determinism(toy_params):
    again = build_params(2)
    assert again == toy_params
    assert dumps(build_certificate(again)) == dumps(build_certificate(toy_params))


@pytest.mark.parametrize("n", [2, 3])
def test_small_instances_verify(n):
    cert = build_certificate(build_params(n))
    assert cert["status"] == "verified"
    assert cert["verdict"]["min_generators"] == n
    Sp = [im for im in cert["place_images"] if im["place"] == str(cert["p"])][0]
    assert len(Sp["vectors"]) == 2**n - 1
