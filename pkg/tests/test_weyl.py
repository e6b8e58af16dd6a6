from fractions import Fraction

import numpy as np
import pytest

from sphere7.rational import CRat
from sphere7.weyl import (LaurentElement, PolyNM, Polymeromorphic,
                          WeylElement, embedded_generators, number_op,
                          passage, reality_report, sqrt_coefficient,
                          sqrt_partial_sum, total_number_op,
                          verify_embedding, weyl_comm, weyl_dagger, weyl_mul)

I = CRat(0, 1)
G = WeylElement.gen
A_DAG, A_MM, A_PM, A_AN, A_PP, A_MP = range(6)


def test_defining_relations():
    # a a^dagger = a^dagger a + 1
    assert weyl_mul(G(A_AN), G(A_DAG)) == (
        WeylElement({(1, 0, 0, 1, 0, 0): 1}) + WeylElement.unit())
    assert weyl_comm(G(A_PP), G(A_MM)) == WeylElement.unit(-1)
    assert weyl_comm(G(A_MP), G(A_PM)) == WeylElement.unit(1)
    x = G(A_DAG) * G(A_AN)
    assert weyl_mul(x, WeylElement.unit()) == x


def _random_element(rng, deg=2, nterms=3):
    w = WeylElement.zero()
    for _ in range(nterms):
        key = tuple(int(rng.integers(0, deg + 1)) for _ in range(6))
        w = w + WeylElement({key: CRat(int(rng.integers(-3, 4)),
                                       int(rng.integers(-3, 4)))})
    return w


def test_associativity_random():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        x, y, z = (_random_element(rng) for _ in range(3))
        assert weyl_mul(weyl_mul(x, y), z) == weyl_mul(x, weyl_mul(y, z))


def test_dagger_rules():
    assert weyl_dagger(G(A_PM)) == G(A_MP)
    assert weyl_dagger(G(A_PP)) == G(A_MM).scale(-1)
    nd = G(A_DAG) * G(A_AN)
    assert weyl_dagger(nd) == nd
    # antiautomorphism: (xy)^dagger = y^dagger x^dagger
    rng = np.random.default_rng(1)
    for _ in range(200):
        x, y = _random_element(rng), _random_element(rng)
        assert weyl_dagger(x * y) == weyl_dagger(y) * weyl_dagger(x)


def test_dagger_involution_random():
    rng = np.random.default_rng(2)
    for _ in range(1000):
        x = _random_element(rng)
        assert weyl_dagger(weyl_dagger(x)) == x


def test_number_operators_commute():
    assert weyl_comm(number_op(), total_number_op()).is_zero()


@pytest.mark.parametrize("slot", range(6))
def test_passage_rules_all_slots(slot):
    # verified by direct multiplication for polynomial f up to degree 4
    rng = np.random.default_rng(3 + slot)
    for _ in range(10):
        terms = {}
        for _ in range(4):
            key = (int(rng.integers(0, 3)), int(rng.integers(0, 3)))
            if sum(key) <= 4:
                terms[key] = CRat(int(rng.integers(-3, 4)))
        f = Polymeromorphic({0: PolyNM(terms)})
        fp = passage(f, slot)
        lhs = f.expand() * LaurentElement.from_weyl(G(slot))
        rhs = LaurentElement.from_weyl(G(slot)) * fp.expand()
        assert (lhs - rhs).is_zero()


def test_passage_examples():
    # n a = a (n - 2)
    f = Polymeromorphic({0: PolyNM.var_n()})
    assert passage(f, A_AN).grades[0].terms == {(1, 0): CRat(1),
                                                (0, 0): CRat(-2)}
    # constant f passes through unchanged
    c = Polymeromorphic({0: PolyNM.const(CRat(7))})
    assert passage(c, A_PM).grades[0].terms == {(0, 0): CRat(7)}
    # N a^+_-. = a^+_-. (N + 1)
    f = Polymeromorphic({0: PolyNM.var_N()})
    fp = passage(f, A_PM)
    assert fp.grades[0].terms == {(0, 1): CRat(1), (0, 0): CRat(1)}
    lhs = f.expand() * LaurentElement.from_weyl(G(A_PM))
    rhs = LaurentElement.from_weyl(G(A_PM)) * fp.expand()
    assert (lhs - rhs).is_zero()


def test_sqrt_coefficients():
    assert sqrt_coefficient(0) == 1
    assert sqrt_coefficient(1) == Fraction(-1, 2)
    assert sqrt_coefficient(2) == Fraction(-1, 8)


def test_sqrt_partial_sum_s0():
    s0 = sqrt_partial_sum(0)
    assert set(s0.grades) == {-1}
    assert s0.grades[-1].terms == {(0, 0): CRat(1)}
    with pytest.raises(ValueError):
        sqrt_partial_sum(-1)


def test_square_relation_residual_grade():
    # S_ell^2 - (1/h - N - n/2) has minimal grade >= 2 ell
    for ell in (0, 1, 2, 3):
        s = sqrt_partial_sum(ell).expand()
        target = LaurentElement({
            -2: WeylElement.unit(),
            0: (total_number_op()
                + number_op().scale(CRat(Fraction(1, 2)))).scale(-1)})
        res = s * s - target
        if ell == 0:
            assert res.min_grade() == 0
        else:
            assert res.min_grade() >= 2 * ell


def test_k_plus_minus_independent_of_ell():
    g0 = embedded_generators(0)["K+-"]
    g5 = embedded_generators(5)["K+-"]
    assert g0 == g5
    # i(1/h - N - n): grade -2 coefficient is i, grade 0 is -i(N + n)
    assert g0.coefficient(-2) == WeylElement.unit(I)
    assert g0.coefficient(0) == (total_number_op() + number_op()).scale(-I)


def test_leading_grades():
    gens = embedded_generators(2)
    assert gens["K++"].coefficient(-1) == G(A_AN).scale(-2 * I)
    for name, slot in (("P++", A_PP), ("P+-", A_PM),
                       ("P-+", A_MP), ("P--", A_MM)):
        assert gens[name].coefficient(-1) == G(slot)


def test_embedding_reality_exact():
    for ell in (0, 2, 5, 8):
        rep = reality_report(ell)
        assert all(rep.values()), rep


def test_k_pm_brackets_close_exactly_every_ell():
    for ell in (0, 1, 3):
        gens = embedded_generators(ell)
        comm = gens["K+-"].comm(gens["K++"])
        target = gens["K++"].scale(2 * I)
        assert (comm - target).is_zero()


def test_verify_embedding_structure():
    rep = verify_embedding(1)
    assert len(rep) == 45
    # compact bilinears close exactly: all J rows and everything with K+-
    for key, entry in rep.items():
        x, y = entry["pair"]
        if x.startswith("J") or y.startswith("J") or "K+-" in (x, y):
            assert entry["exact"], key
    finite = {k: v["residual_min_grade"] for k, v in rep.items()
              if v["residual_min_grade"] is not None}
    assert len(finite) == 9
    assert set(finite.values()) == {2}


def test_embedding_residual_growth():
    grades = {}
    for ell in (0, 1, 2, 3):
        rep = verify_embedding(ell)
        grades[ell] = {k: v["residual_min_grade"] for k, v in rep.items()
                       if v["residual_min_grade"] is not None}
    for ell in (1, 2, 3):
        for k, g in grades[ell].items():
            assert g >= grades[ell - 1][k]
    for k in grades[2]:
        assert grades[2][k] >= grades[0][k] + 2
        assert grades[3][k] >= grades[1][k] + 2
