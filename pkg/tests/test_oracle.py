import numpy as np
import pytest

from msdcost import (
    DomainError,
    SingularMatrixError,
    TrajectoryPolynomial,
    build_A,
    build_A_inv,
    cost,
    det_A,
    elimination_det,
    gauss_legendre,
    pivoted_solve,
    quadrature_cost,
    solve_trajectory,
)


# ---------------------------------------------------------- pivoted solve


def test_pivoted_solve_examples():
    sol = pivoted_solve(np.array([[1.0, 1.0], [2.0, 3.0]]), np.array([1.0, 0.0]))
    np.testing.assert_allclose(sol, [3.0, -2.0], atol=1e-14)

    rhs = np.array([0.3, -1.2, 7.0])
    np.testing.assert_allclose(pivoted_solve(np.eye(3), rhs), rhs, rtol=0)

    sol = pivoted_solve(build_A(3, 1.0), np.array([1.0, 0.0, 0.0]))
    np.testing.assert_allclose(sol, [10.0, -15.0, 6.0], atol=1e-12)


def test_pivoted_solve_block_rhs():
    a = build_A(4, 0.7)
    rhs = np.arange(8.0).reshape(4, 2)
    sol = pivoted_solve(a, rhs)
    assert sol.shape == (4, 2)
    np.testing.assert_allclose(a @ sol, rhs, atol=1e-10)


def test_pivoted_solve_singular():
    with pytest.raises(SingularMatrixError):
        pivoted_solve(np.zeros((2, 2)), np.array([1.0, 0.0]))
    with pytest.raises(SingularMatrixError):
        pivoted_solve(np.array([[1.0, 2.0], [2.0, 4.0]]), np.array([1.0, 0.0]))


def test_pivoted_solve_shape_errors():
    with pytest.raises(DomainError):
        pivoted_solve(np.zeros((2, 3)), np.zeros(2))
    with pytest.raises(DomainError):
        pivoted_solve(np.eye(3), np.zeros(2))


def test_pivoted_solve_residual(random_problem_set):
    for p in random_problem_set[:30]:
        a = build_A(p.n, p.h)
        rhs = p.end.values - p.start.values
        sol = pivoted_solve(a, rhs)
        cond = np.abs(a).sum(axis=1).max() * np.abs(build_A_inv(p.n, p.h)).sum(axis=1).max()
        resid = np.abs(a @ sol - rhs).max()
        assert resid <= 1e-9 * (1.0 + np.abs(rhs).max()) * cond


# ------------------------------------------------------------ quadrature


def test_quadrature_cost_examples():
    accel = TrajectoryPolynomial(n=2, h=1.0, d=1, coeffs=[[0.0], [0.0], [3.0], [-2.0]])
    assert quadrature_cost(accel) == pytest.approx(12.0, rel=1e-13)

    jerk = TrajectoryPolynomial(
        n=3, h=1.0, d=1, coeffs=[[0.0], [0.0], [0.0], [10.0], [-15.0], [6.0]]
    )
    assert quadrature_cost(jerk) == pytest.approx(720.0, rel=1e-13)

    flat = TrajectoryPolynomial(n=2, h=3.0, d=2, coeffs=np.zeros((4, 2)))
    assert quadrature_cost(flat) == 0.0


def test_quadrature_cost_nonnegative():
    rng = np.random.default_rng(17)
    for n in (1, 3, 6):
        poly = TrajectoryPolynomial(n=n, h=2.2, d=2, coeffs=rng.normal(size=(2 * n, 2)))
        assert quadrature_cost(poly) >= 0.0


def test_gauss_legendre_table():
    for m in range(1, 17):
        nodes, weights = gauss_legendre(m)
        assert nodes.shape == weights.shape == (m,)
        assert weights.sum() == pytest.approx(2.0, abs=1e-14)
        # rule is exact for degree 2m-1
        for k in range(2 * m):
            got = float(weights @ nodes**k)
            want = 0.0 if k % 2 else 2.0 / (k + 1)
            assert got == pytest.approx(want, abs=5e-14)
    with pytest.raises(DomainError):
        gauss_legendre(0)
    with pytest.raises(DomainError):
        gauss_legendre(17)


# ----------------------------------------------------------- determinant


def test_elimination_det_examples():
    assert elimination_det(build_A(2, 1.0)) == pytest.approx(1.0, rel=1e-12)
    assert elimination_det(build_A(3, 1.0)) == pytest.approx(2.0, rel=1e-12)
    assert elimination_det(build_A(4, 1.0)) == pytest.approx(12.0, rel=1e-12)


def test_elimination_det_triangular():
    tri = np.triu(np.arange(1.0, 17.0).reshape(4, 4))
    assert elimination_det(tri) == pytest.approx(np.prod(np.diag(tri)), rel=1e-12)


def test_elimination_det_singular_returns_zero():
    assert elimination_det(np.zeros((3, 3))) == 0.0
    assert elimination_det(np.array([[1.0, 2.0], [2.0, 4.0]])) == 0.0


def test_elimination_det_sign_tracking():
    flipped = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert elimination_det(flipped) == pytest.approx(-1.0, rel=1e-14)


# ---------------------------------------------------------- cross checks


def test_quadrature_matches_cost(random_problem_set):
    for p in random_problem_set:
        ref = cost(p).total
        quad = quadrature_cost(solve_trajectory(p))
        assert abs(quad - ref) <= 1e-8 * (1.0 + ref)


def test_closed_inverse_matches_column_solves():
    for n in range(1, 11):
        for h in (0.5, 1.0, 2.0):
            a = build_A(n, h)
            closed = build_A_inv(n, h)
            solved = pivoted_solve(a, np.eye(n))
            cond = np.abs(a).sum(axis=1).max() * np.abs(closed).sum(axis=1).max()
            assert np.abs(closed - solved).max() <= 1e-8 * cond


def test_elimination_det_matches_closed_form():
    for n in range(1, 9):
        for h in (0.5, 1.0, 2.0):
            closed = det_A(n, h)
            assert abs(elimination_det(build_A(n, h)) - closed) <= 1e-8 * closed
