import math

import numpy as np
import pytest

from sphere7.fock import (basis, basis_index, build_rho, build_rho_partial,
                          casimir_deviation, commutant_dimension, dim,
                          dump_representation, embed_exact_in_ambient,
                          expected_k_spectrum, exponentiate, filtration_check,
                          full_convergence_ell, k_spectrum,
                          load_representation, matrix_of_laurent,
                          matrix_of_weyl, partial_sum_distance,
                          sqrt_series_value, verify_brackets, verify_reality,
                          verify_traceless)
from sphere7.rational import CRat
from sphere7.weyl import WeylElement, embedded_generators


def test_dim():
    assert [dim(m) for m in range(1, 9)] == [1, 4, 10, 20, 35, 56, 84, 120]
    with pytest.raises(ValueError):
        dim(0)


def test_basis_graded_prefix():
    for m in (1, 2, 3, 5):
        b = basis(m)
        assert len(b) == dim(m)
        assert b == basis(m + 1)[:dim(m)]
        totals = [sum(s) for s in b]
        assert totals == sorted(totals)
    assert basis(2)[0] == (0, 0, 0)


def test_m1_trivial():
    rep = build_rho(1)
    for mat in rep.values():
        assert mat.shape == (1, 1)
        assert np.all(mat == 0)


def test_m2_examples():
    rep = build_rho(2)
    idx = basis_index(2)
    v = np.zeros(4, dtype=complex)
    v[idx[(0, 0, 0)]] = 1.0
    out = rep["P+-"] @ v
    expect = np.zeros(4, dtype=complex)
    expect[idx[(0, 0, 1)]] = 1.0  # sqrt(1) * sqrt(2 - 1)
    assert np.allclose(out, expect)
    spec = np.sort_complex(np.diag(rep["K+-"]))
    assert np.allclose(spec, np.sort_complex(np.array([1j, -1j, 0, 0])))


def test_bracket_and_reality_residuals():
    for m in range(1, 7):
        rep = build_rho(m)
        res, _ = verify_brackets(rep)
        assert res < 1e-10
        assert verify_reality(rep) < 1e-10
        assert verify_traceless(rep) < 1e-10


def test_specific_pp_bracket_m2():
    rep = build_rho(2)
    lhs = rep["P++"] @ rep["P--"] - rep["P--"] @ rep["P++"]
    rhs = 1j * (-rep["J+-"] + rep["K+-"])
    assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_k_spectrum_integer():
    for m in (1, 2, 3, 5, 8):
        assert np.allclose(k_spectrum(build_rho(m)), expected_k_spectrum(m),
                           atol=1e-12)


def test_commutant_dimension():
    for m in (1, 2, 3, 4):
        assert commutant_dimension(build_rho(m)) == 1


def test_casimir_scalar():
    assert casimir_deviation(build_rho(1)) == 0
    assert casimir_deviation(build_rho(3)) < 1e-10


def test_partial_action_boundary_sequence():
    # boundary state x = 1: partial sums decrease toward sqrt(0) = 0
    vals = [sqrt_series_value(ell, 1.0) for ell in range(3)]
    assert vals == [1.0, 0.5, 0.375]
    # m = 2, |1,0,0>: the K-- column leaves the level-2 block with this weight
    part = build_rho_partial(2, 0)
    idx3 = basis_index(3)
    col = basis_index(2)[(1, 0, 0)]
    out_row = idx3[(2, 0, 0)]
    amp = part["K--"][out_row, col]
    assert abs(amp - 2j * math.sqrt(2) * math.sqrt(2) * 1.0) < 1e-12


def test_partial_distance_monotone_and_matches_matrices():
    for m in (2, 3, 4):
        amb = embed_exact_in_ambient(m)
        prev = np.inf
        for ell in (0, 1, 2, 4, 8, 16, 32, 64):
            d_scan = partial_sum_distance(m, ell)
            assert d_scan <= prev + 1e-15
            prev = d_scan
            if ell <= 8:
                part = build_rho_partial(m, ell)
                d_mat = max(float(np.max(np.abs(part[g] - amb[g])))
                            for g in amb)
                assert abs(d_mat - d_scan) < 1e-12


def test_partial_distance_interior_geometric():
    d1 = partial_sum_distance(2, 10, block="interior")
    d2 = partial_sum_distance(2, 20, block="interior")
    assert d2 < d1 * 1e-2


def test_full_convergence_ell_small_threshold():
    # the boundary tail makes the sup-distance cross 0.5 only after
    # hundreds of terms
    ell = full_convergence_ell(2, threshold=0.5, ell_max=10_000)
    assert ell is not None
    assert partial_sum_distance(2, ell) < 0.5
    assert ell > 10


def test_full_convergence_ell_recorded_value():
    # the boundary-inclusive distance at m=2 first dips below 1e-3 past
    # five million terms; this pins the measured crossing
    assert full_convergence_ell(2, threshold=1e-3) == 5_092_958


def test_matrix_of_weyl_is_algebra_map():
    # the Fock action is a representation: matrices of products compose
    rng = np.random.default_rng(0)
    for _ in range(30):
        k1 = tuple(int(rng.integers(0, 2)) for _ in range(6))
        k2 = tuple(int(rng.integers(0, 2)) for _ in range(6))
        x = WeylElement({k1: CRat(int(rng.integers(-2, 3)), 1)})
        y = WeylElement({k2: CRat(1, int(rng.integers(-2, 3)))})
        my = matrix_of_weyl(y, 3, 6)       # raises total by at most 3
        mx_big = matrix_of_weyl(x, 6, 9)
        mxy = matrix_of_weyl(x * y, 3, 9)
        assert np.max(np.abs(mx_big @ my - mxy)) < 1e-10


def test_commuting_diagram():
    for m in (1, 2, 3):
        for ell in (0, 2, 4):
            gens = embedded_generators(ell)
            part = build_rho_partial(m, ell)
            for name, lau in gens.items():
                mat = matrix_of_laurent(lau, m, m, m + 1)
                assert np.max(np.abs(mat - part[name])) < 1e-12


def test_filtration_check():
    rep = filtration_check(8)
    assert rep["dims"] == [1, 4, 10, 20, 35, 56, 84, 120]
    assert rep["prefix_ok"]
    assert not rep["is_subrepresentation"]
    assert rep["off_block_norm"][3] > 0.1


def test_exponentiate():
    rep = build_rho(2)
    assert np.allclose(exponentiate(np.zeros((3, 3), dtype=complex)),
                       np.eye(3))
    u = exponentiate(rep["K+-"], 2 * math.pi)
    assert np.max(np.abs(u - np.eye(4))) < 1e-10
    rng = np.random.default_rng(1)
    for _ in range(5):
        t = float(rng.uniform(-10, 10))
        u = exponentiate(rep["P++"] - rep["P++"].conj().T, t)
        assert np.max(np.abs(u.conj().T @ u - np.eye(4))) < 1e-10
    with pytest.raises(ValueError):
        exponentiate(np.array([[1.0]]))


def test_dump_load_roundtrip(tmp_path):
    for mode in ("binary", "json"):
        path = dump_representation(2, tmp_path / mode, mode=mode)
        header, rep = load_representation(path)
        assert header["m"] == 2
        assert header["basis_order"][0] == [0, 0, 0]
        orig = build_rho(2)
        for g in orig:
            assert np.allclose(rep[g], orig[g])
