"""Metric jet tests: derivative tables, origin values, the Einstein closure.

Two independent oracles drive this file.  The derivative tables of the
invariant X and the log term L are checked against centered finite
differences of the scalar functions themselves (a real-partial of order
(a, b) equals 2^{a+b} times the common Wirtinger value).  The assembled
metric is checked against the Monge-Ampère equation det g = e^{3g},
which none of the jet code enforces directly.
"""

import math

import numpy as np
import pytest

from tubeke import (
    DomainError,
    Point,
    TubeParams,
    einstein_residual,
    metric_jet,
    x_derivatives,
)

P2 = TubeParams(p=2)


def sample_points(params, rng, n, x_cap=0.95):
    p = params.p
    pts = []
    for _ in range(n):
        x = rng.uniform(-x_cap, x_cap)
        r = rng.uniform(0.3, 2.5)
        y1, y2 = rng.uniform(-2.0, 2.0, 2)
        pts.append(Point(complex((1.0 - r) / (4 * p), y1),
                         complex(x * r ** (1.0 / (2 * p)), y2)))
    return pts


def scalar_X(params, re1, re2):
    p = params.p
    return re2 / (1.0 - 4 * p * re1) ** (1.0 / (2 * p))


def scalar_L(params, re1):
    p = params.p
    return params.K_float / p * math.log(1.0 / (1.0 - 4 * p * re1))


def test_x_derivative_tables_match_finite_differences():
    h = 1e-5
    for p in (1, 2, 3):
        params = TubeParams(p=p)
        z = Point(complex(-0.05, 1.3), complex(0.4, -0.7))
        tab = x_derivatives(params, z)
        u, t = z.z1.real, z.z2.real

        def X(du=0.0, dt=0.0):
            return scalar_X(params, u + du, t + dt)

        fd = {
            (1, 0): (X(h) - X(-h)) / (2 * h),
            (0, 1): (X(0, h) - X(0, -h)) / (2 * h),
            (2, 0): (X(h) - 2 * X() + X(-h)) / h**2,
            (0, 2): (X(0, h) - 2 * X() + X(0, -h)) / h**2,
            (1, 1): (X(h, h) - X(h, -h) - X(-h, h) + X(-h, -h)) / (4 * h**2),
        }
        for (a, b), val in fd.items():
            # first-order differences are accurate to ~1e-10, second-order
            # ones to ~1e-7 at h = 1e-5
            tol = 1e-8 if a + b == 1 else 1e-6
            assert abs(tab.dX[(a, b)] - val / 2 ** (a + b)) < tol * (1 + abs(val))

        def L(du=0.0):
            return scalar_L(params, u + du)

        fd1 = (L(h) - L(-h)) / (2 * h)
        fd2 = (L(h) - 2 * L() + L(-h)) / h**2
        assert abs(tab.dL[(1, 0)] - fd1 / 2) < 1e-7
        assert abs(tab.dL[(2, 0)] - fd2 / 4) < 1e-6
        assert tab.dL[(0, 1)] == 0.0 and tab.dL[(1, 1)] == 0.0


def test_x_derivative_tables_closed_values():
    # p=2, r = 1/2, Re z2 = 1/4: s = 1/4, X = 2^{1/4}/4, c = 1,1,5,45,585
    params = TubeParams(p=2)
    z = Point(complex(1.0 / 16.0, -3.0), complex(0.25, 2.0))
    tab = x_derivatives(params, z)
    r, s = 0.5, 0.25
    X = 0.25 / r**s
    assert tab.r == r
    assert abs(tab.x_value - X) < 1e-16
    c = {0: 1.0, 1: 1.0, 2: 5.0, 3: 45.0, 4: 585.0}
    for a in range(5):
        assert abs(tab.dX[(a, 0)] - c[a] * X / r**a) < 1e-13 * c[a] / r**a
        if a <= 3:
            assert abs(tab.dX[(a, 1)] - c[a] / (2 * r ** (s + a))) < 1e-13 * c[a]
    assert tab.dX[(0, 2)] == 0.0 and tab.dX[(1, 2)] == 0.0 and tab.dX[(2, 2)] == 0.0
    K = 5.0 / 3.0
    assert abs(tab.dL[(0, 0)] - (K / 2) * math.log(2.0)) < 1e-15
    for a in (1, 2, 3, 4):
        expected = 2 * K * math.factorial(a - 1) * 4 ** (a - 1) / r**a
        assert abs(tab.dL[(a, 0)] - expected) < 1e-13 * expected


def test_index_word_accessors():
    tab = x_derivatives(P2, Point(0j, 0.3 + 0j))
    assert tab.X(1, 2, 2) == tab.dX[(1, 2)] == 0.0
    assert tab.X(2, 1, 1) == tab.dX[(2, 1)]
    assert tab.L(1, 1) == tab.dL[(2, 0)]
    assert tab.L(2) == 0.0


def test_x_derivatives_validation():
    with pytest.raises(ValueError):
        x_derivatives(P2, Point(0j, 0j), 5)
    with pytest.raises(DomainError):
        x_derivatives(P2, Point(0.5 + 0j, 0j))


def test_origin_metric_is_diagonal(sols):
    for p, sol in sols.items():
        jet = metric_jet(sol, Point(0j, 0j))
        K = sol.params.K_float
        f1 = sol.eval_f_derivs(0.0, 1)[1]
        assert abs(jet.metric[0, 0] - 4 * p * K) < 1e-10
        assert abs(jet.metric[1, 1] - f1 / 4.0) < 1e-12
        assert jet.metric[0, 1] == jet.metric[1, 0]
        assert abs(jet.metric[0, 1]) < 1e-14
        assert abs(jet.det - p * K * f1) < 1e-9


def test_metric_is_symmetric_and_positive(sol_p2):
    rng = np.random.default_rng(10)
    for z in sample_points(P2, rng, 50):
        jet = metric_jet(sol_p2, z)
        assert jet.metric[0, 1] == jet.metric[1, 0]
        assert jet.metric[0, 0] > 0.0
        assert jet.det > 0.0
        assert np.max(np.abs(jet.metric @ jet.inverse - np.eye(2))) < 1e-11


def test_jet_translation_invariance(sol_p2):
    z = Point(complex(0.01, 0.7), complex(0.4, -1.2))
    z_shift = Point(z.z1 + 4.5j, z.z2 - 2.25j)
    j1, j2 = metric_jet(sol_p2, z), metric_jet(sol_p2, z_shift)
    assert np.array_equal(j1.metric, j2.metric)
    assert j1.det == j2.det
    assert j1.d3 == j2.d3
    assert j1.d4 == j2.d4


def test_derivative_dicts_are_fully_symmetric(sol_p2):
    jet = metric_jet(sol_p2, Point(complex(-0.1, 0.2), complex(0.5, 0.1)))
    assert set(jet.d3) == {(i, j, k) for i in (1, 2) for j in (1, 2) for k in (1, 2)}
    assert set(jet.d4) == {(i, j, k, l) for i in (1, 2) for j in (1, 2)
                           for k in (1, 2) for l in (1, 2)}
    # with real tables the value depends only on how many indices equal 1
    for key, val in jet.d3.items():
        canon = tuple(sorted(key))
        assert val == jet.d3[canon]
    for key, val in jet.d4.items():
        canon = tuple(sorted(key))
        assert val == jet.d4[canon]


def test_einstein_residual_random(sols):
    rng = np.random.default_rng(11)
    for p, sol in sols.items():
        params = sol.params
        worst = max(einstein_residual(sol, z)
                    for z in sample_points(params, rng, 50))
        assert worst < 1e-10


def test_einstein_residual_origin(sols):
    for sol in sols.values():
        assert einstein_residual(sol, Point(0j, 0j)) < 1e-12


def test_det_equals_axis_determinant_over_depth_power(sols):
    rng = np.random.default_rng(12)
    for p, sol in sols.items():
        for z in sample_points(sol.params, rng, 25):
            jet = metric_jet(sol, z)
            r = 1.0 - 4 * p * z.z1.real
            expected = sol.eval_Z(jet.x_value, 0)[0] / r ** (3.0 * sol.params.K_float / p)
            assert abs(jet.det - expected) < 1e-11 * expected


def test_metric_transformation_law(sol_p2):
    # pulling g back through the normalizing automorphism reproduces g
    from tubeke import apply, jacobian, normalizing_automorphism
    rng = np.random.default_rng(13)
    for z in sample_points(P2, rng, 20):
        psi = normalizing_automorphism(P2, z)
        jac = jacobian(psi)
        g_here = metric_jet(sol_p2, z).metric
        g_axis = metric_jet(sol_p2, apply(psi, z)).metric
        pulled = (jac.T @ g_axis @ np.conjugate(jac)).real
        assert np.max(np.abs(pulled - g_here)) < 1e-9 * np.max(np.abs(g_here))


def test_metric_jet_outside_domain(sol_p1):
    with pytest.raises(DomainError):
        metric_jet(sol_p1, Point(0.25 + 0j, 0j))
    with pytest.raises(DomainError):
        einstein_residual(sol_p1, Point(0.3 + 0j, 0j))


def test_d3_d4_match_finite_differences_of_the_metric(sol_p2):
    # move the point along real coordinate directions; for the real,
    # fully symmetric tables: d(Re z_k) g_ij = 2 d3[(i,j,k)] and
    # d(Re z_k) d(Re z_l) g_ij = 4 d4[(i,j,k,l)]
    z = Point(complex(0.02, -0.4), complex(0.45, 0.8))
    jet = metric_jet(sol_p2, z)
    h = 1e-4

    def g_at(d1, d2):
        return metric_jet(sol_p2, Point(z.z1 + d1, z.z2 + d2)).metric

    for k, (d1, d2) in ((1, (h, 0.0)), (2, (0.0, h))):
        gp = g_at(d1, d2)
        gm = g_at(-d1, -d2)
        fd3 = (gp - gm) / (4.0 * h)
        for i in (1, 2):
            for j in (1, 2):
                val = jet.d3[(i, j, k)]
                assert abs(fd3[i - 1, j - 1] - val) < 1e-5 * (1.0 + abs(val))
    for (k, l), (da, db) in (((1, 1), ((h, 0.0), (h, 0.0))),
                             ((1, 2), ((h, 0.0), (0.0, h))),
                             ((2, 2), ((0.0, h), (0.0, h)))):
        gpp = g_at(da[0] + db[0], da[1] + db[1])
        gpm = g_at(da[0] - db[0], da[1] - db[1])
        gmp = g_at(-da[0] + db[0], -da[1] + db[1])
        gmm = g_at(-da[0] - db[0], -da[1] - db[1])
        fd4 = (gpp - gpm - gmp + gmm) / (16.0 * h * h)
        for i in (1, 2):
            for j in (1, 2):
                val = jet.d4[(i, j, k, l)]
                assert abs(fd4[i - 1, j - 1] - val) < 1e-4 * (1.0 + abs(val))
