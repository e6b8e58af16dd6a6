import math

import numpy as np
import pytest

from sphere7.coframe import (Chart, SpherePoint, TangentVector, ToricPoint,
                             contact_alpha, random_point, random_tangent,
                             random_unit_tangent)
from sphere7.connection import (PathSpec, alpha_coefficient_probe,
                                born_probability, connection_matrix,
                                connection_sample, curvature_residual,
                                gauge_matrix, parallel_transport,
                                reeb_transport)
from sphere7.fock import dim
from sphere7.quaternions import Quaternion


def test_trivial_level_connection():
    rng = np.random.default_rng(0)
    p = random_point(rng, 0.2)
    u = random_tangent(rng, p)
    a = connection_matrix(u, 1)
    assert a.shape == (1, 1) and np.all(a == 0)


def test_zero_tangent():
    rng = np.random.default_rng(1)
    p = random_point(rng, 0.2)
    z = TangentVector(p, Quaternion(), Quaternion())
    assert np.all(connection_matrix(z, 3) == 0)


def test_exact_antihermitean():
    rng = np.random.default_rng(2)
    for m in (2, 3, 4):
        for _ in range(10):
            p = random_point(rng, 0.15)
            u = random_tangent(rng, p)
            _, info = connection_sample(u, m)
            assert info["antihermiticity"] < 1e-10


def test_exact_flatness():
    rng = np.random.default_rng(3)
    for m in (2, 3):
        for _ in range(15):
            p = random_point(rng, 0.35)
            u = random_unit_tangent(rng, p, 0.5)
            v = random_unit_tangent(rng, p, 0.5)
            assert curvature_residual(p, u, v, m, "exact", h=1e-4) < 1e-5


def test_flatness_degenerate_pair():
    rng = np.random.default_rng(4)
    p = random_point(rng, 0.3)
    u = random_unit_tangent(rng, p, 0.5)
    assert curvature_residual(p, u, u, 2, "exact", h=1e-4) < 1e-10


def test_truncated_flatness_improves_with_ell():
    rng = np.random.default_rng(5)
    p = random_point(rng, 0.35)
    u = random_unit_tangent(rng, p, 0.5)
    v = random_unit_tangent(rng, p, 0.5)
    vals = [curvature_residual(p, u, v, 6, "truncated", ell, h=1e-4)
            for ell in (0, 2, 4)]
    assert vals[0] > vals[1] > vals[2]


def test_exact_flatness_n_patch():
    rng = np.random.default_rng(21)
    for _ in range(10):
        p = random_point(rng, 0.35)
        u = random_unit_tangent(rng, p, 0.5)
        v = random_unit_tangent(rng, p, 0.5)
        assert curvature_residual(p, u, v, 2, "exact", h=1e-4,
                                  patch="n") < 1e-5


def test_transport_with_reprojection():
    p0 = SpherePoint([1, 0, 0, 0], [0, 0, 0, 0])
    path = PathSpec.great_circle_loop(p0, np.array([0, 1., 0, 0, 0, 0, 0, 0]))
    res = parallel_transport(path, 2, steps=500, reproject=True)
    assert res.unitarity_residual < 1e-13
    assert res.holonomy_distance() < 1e-6


def test_toric_line_transport():
    # a non-Reeb toric path: only two of the four angles advance
    t0 = ToricPoint([0.5, 0.5, 0.5, 0.5], [0.1, 0.6, 1.1, 1.6])
    path = PathSpec.toric_line(t0, (2 * math.pi, 0.0, 2 * math.pi, 0.0))
    res = parallel_transport(path, 2, steps=6000)
    # closed loop on a simply connected space with a flat connection
    assert res.holonomy_distance() < 1e-5
    assert res.unitarity_residual < 1e-8


def test_gauge_relation_at_rep_level():
    rng = np.random.default_rng(6)
    m = 2
    for _ in range(5):
        p = random_point(rng, 0.35)
        u = random_unit_tangent(rng, p)
        g = gauge_matrix(m, p)
        assert np.max(np.abs(g.conj().T @ g - np.eye(dim(m)))) < 1e-12
        a_s = connection_matrix(u, m, patch="s")
        a_n = connection_matrix(u, m, patch="n")
        chart = Chart(p, [u])
        h = 1e-6
        dg = (gauge_matrix(m, chart.point((h,)))
              - gauge_matrix(m, chart.point((-h,)))) / (2 * h)
        resid = a_n - (g.conj().T @ a_s @ g + g.conj().T @ dg)
        assert np.max(np.abs(resid)) < 1e-8


def test_alpha_coefficient_probe():
    rng = np.random.default_rng(7)
    for _ in range(10):
        p = random_point(rng, 0.2)
        u = random_tangent(rng, p)
        val = alpha_coefficient_probe(u)
        assert abs(val - contact_alpha(u)) < 1e-10


def test_constant_path_identity():
    p = SpherePoint([1, 0, 0, 0], [0, 0, 0, 0])
    res = parallel_transport(PathSpec.constant(p), 2, steps=10)
    assert res.holonomy_distance() == 0


def test_great_circle_loop_holonomy():
    p0 = SpherePoint([1, 0, 0, 0], [0, 0, 0, 0])
    path = PathSpec.great_circle_loop(p0, np.array([0, 1., 0, 0, 0, 0, 0, 0]))
    res = parallel_transport(path, 2, steps=10_000)
    assert res.holonomy_distance() < 1e-6
    assert res.unitarity_residual < 1e-8


def test_cross_patch_loop_switches_and_closes():
    p0 = SpherePoint([1, 0, 0, 0], [0, 0, 0, 0])
    path = PathSpec.great_circle_loop(p0, np.array([0, 0, 0, 0, 1., 0, 0, 0]))
    res = parallel_transport(path, 2, steps=10_000)
    assert len(res.switches) >= 2
    assert res.holonomy_distance() < 1e-6
    assert res.unitarity_residual < 1e-8


def test_norm_preservation():
    rng = np.random.default_rng(8)
    p0 = SpherePoint([1, 0, 0, 0], [0, 0, 0, 0])
    path = PathSpec.great_circle_loop(p0, np.array([0, 1., 1., 0, 0, 0, 0, 0]))
    res = parallel_transport(path, 3, steps=4000)
    psi = rng.standard_normal(10) + 1j * rng.standard_normal(10)
    assert abs(np.linalg.norm(res.matrix @ psi) / np.linalg.norm(psi) - 1) \
        < 1e-8


def test_transport_composition_and_reversal():
    # composition holds when all legs are integrated in a common frame
    rng = np.random.default_rng(9)
    a = random_point(rng, 0.4)
    b = random_point(rng, 0.4)
    c = random_point(rng, 0.4)
    m = 2
    u_ab = parallel_transport(PathSpec.great_circle(a, b), m, 4000,
                              start_frame="s").matrix
    u_bc = parallel_transport(PathSpec.great_circle(b, c), m, 4000,
                              start_frame="s").matrix
    u_ac2 = parallel_transport(PathSpec.piecewise([a, b, c]), m, 8000,
                               start_frame="s").matrix
    assert np.max(np.abs(u_bc @ u_ab - u_ac2)) < 1e-5
    u_ba = parallel_transport(PathSpec.great_circle(b, a), m, 4000,
                              start_frame="s").matrix
    assert np.max(np.abs(u_ba @ u_ab - np.eye(dim(m)))) < 1e-6


def test_two_path_endpoint_independence():
    rng = np.random.default_rng(10)
    a = random_point(rng, 0.4)
    b = random_point(rng, 0.4)
    mid1 = random_point(rng, 0.4)
    mid2 = random_point(rng, 0.4)
    m = 3
    u1 = parallel_transport(PathSpec.piecewise([a, mid1, b]), m, 10_000).matrix
    u2 = parallel_transport(PathSpec.piecewise([a, mid2, b]), m, 10_000).matrix
    assert np.max(np.abs(u1 - u2)) < 1e-5


def test_rk4_order():
    p0 = SpherePoint([1, 0, 0, 0], [0, 0, 0, 0])
    path = PathSpec.great_circle_loop(p0, np.array([0, 1., 0, 1., 0, 0, 0, 0]))
    ref = parallel_transport(path, 2, steps=8000).matrix
    e1 = np.max(np.abs(parallel_transport(path, 2, steps=50).matrix - ref))
    e2 = np.max(np.abs(parallel_transport(path, 2, steps=100).matrix - ref))
    assert 10 < e1 / e2 < 25  # fourth order


def test_reeb_transport():
    assert reeb_transport(ToricPoint([1, 0, 0, 0], [0, 0, 0, 0]), 1,
                          steps=100).holonomy_distance() == 0
    t = ToricPoint([0.5, 0.5, 0.5, 0.5], [0.3, 1.0, 2.0, 5.0])
    res = reeb_transport(t, 2, steps=10_000)
    assert res.holonomy_distance() < 1e-5
    assert res.unitarity_residual < 1e-8


def test_reeb_rk4_convergence():
    t = ToricPoint([0.5, 0.5, 0.5, 0.5], [0.0, 0.5, 1.5, 2.5])
    ref = reeb_transport(t, 2, steps=6400).matrix
    e1 = np.max(np.abs(reeb_transport(t, 2, steps=100).matrix - ref))
    e2 = np.max(np.abs(reeb_transport(t, 2, steps=200).matrix - ref))
    assert 10 < e1 / e2 < 25


def test_born_probability():
    rng = np.random.default_rng(11)
    m = 2
    d = dim(m)
    a = random_point(rng, 0.4)
    b = random_point(rng, 0.4)
    path = PathSpec.great_circle(a, b)
    psi_i = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    res = parallel_transport(path, m, 4000)
    u_psi = res.matrix @ psi_i
    p_same, _ = born_probability(psi_i, u_psi, path, m, steps=4000)
    assert abs(p_same - 1.0) < 1e-10
    # orthogonal final state
    perp = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    perp -= (np.vdot(u_psi, perp) / np.vdot(u_psi, u_psi)) * u_psi
    p_perp, _ = born_probability(psi_i, perp, path, m, steps=4000)
    assert p_perp < 1e-10
    # completeness over an orthonormal final basis
    total = 0.0
    for k in range(d):
        e = np.zeros(d, dtype=complex)
        e[k] = 1.0
        pk, _ = born_probability(psi_i, e, path, m, steps=1000)
        total += pk
    assert abs(total - 1.0) < 1e-8


def test_born_rejects_zero_states():
    p = SpherePoint([1, 0, 0, 0], [0, 0, 0, 0])
    path = PathSpec.constant(p)
    with pytest.raises(ValueError):
        born_probability(np.zeros(4), np.ones(4), path, 2, steps=10)


def test_transport_step_validation():
    p = SpherePoint([1, 0, 0, 0], [0, 0, 0, 0])
    with pytest.raises(ValueError):
        parallel_transport(PathSpec.constant(p), 2, steps=1)
