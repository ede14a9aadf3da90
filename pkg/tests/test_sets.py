import numpy as np
import pytest
from scipy.optimize import minimize

from sparsepg import (
    catalog,
    full_space,
    l1_ball,
    l2_ball,
    make_rng,
    nonneg_l1_ball,
    nonneg_l2_ball,
    nonneg_orthant,
    nonneg_simplex,
    parse_set,
)

ALL_SETS = catalog()


def qp_project(set_, x):
    """Independent projection oracle: solve min 0.5||z-x||^2 by SLSQP from a cold start.

    The sign-free l1 ball is handled with split variables z = u - v, u,v >= 0,
    sum(u+v) <= r, which keeps every constraint smooth.
    """
    n = x.size
    r = set_.radius
    if set_.variant == "l1ball":
        res = minimize(
            lambda uv: 0.5 * np.sum((uv[:n] - uv[n:] - x) ** 2),
            x0=np.zeros(2 * n),
            jac=lambda uv: np.concatenate([uv[:n] - uv[n:] - x, -(uv[:n] - uv[n:] - x)]),
            bounds=[(0.0, None)] * (2 * n),
            constraints=[{"type": "ineq", "fun": lambda uv: r - np.sum(uv)}],
            method="SLSQP",
            options={"maxiter": 500, "ftol": 1e-14},
        )
        return res.x[:n] - res.x[n:]
    constraints = []
    bounds = None
    if set_.kind == "nonnegative":
        bounds = [(0.0, None)] * n
    if set_.variant == "simplex":
        constraints.append({"type": "eq", "fun": lambda z: np.sum(z) - r})
        start = np.full(n, r / n)
    elif set_.variant == "nonneg-l1ball":
        constraints.append({"type": "ineq", "fun": lambda z: r - np.sum(z)})
        start = np.zeros(n)
    elif set_.variant in ("l2ball", "nonneg-l2ball"):
        constraints.append({"type": "ineq", "fun": lambda z: r**2 - np.sum(z**2)})
        start = np.zeros(n)
    else:
        start = np.zeros(n)
    res = minimize(
        lambda z: 0.5 * np.sum((z - x) ** 2),
        x0=start,
        jac=lambda z: z - x,
        bounds=bounds,
        constraints=constraints,
        method="SLSQP",
        options={"maxiter": 500, "ftol": 1e-14},
    )
    return res.x


def test_kind_flags():
    assert full_space().kind == "sign-free"
    assert l1_ball(2.0).kind == "sign-free"
    assert l2_ball().kind == "sign-free"
    assert nonneg_orthant().kind == "nonnegative"
    assert nonneg_simplex().kind == "nonnegative"
    assert nonneg_l1_ball().kind == "nonnegative"
    assert nonneg_l2_ball().kind == "nonnegative"


def test_ranking_values_branches():
    x = np.array([1.0, -2.0])
    assert np.array_equal(nonneg_orthant().ranking_values(x), x)
    assert np.array_equal(full_space().ranking_values(x), np.array([1.0, 2.0]))
    assert np.array_equal(l1_ball(1.0).ranking_values(np.zeros(2)), np.zeros(2))


def test_project_examples():
    assert np.array_equal(nonneg_orthant().project([-1.0, 2.0]), [0.0, 2.0])
    # KKT of the simplex projection: z = x - lam, sum(z) = 1 -> lam = (1.5-1)/3
    np.testing.assert_allclose(
        nonneg_simplex(1.0).project([0.5, 0.5, 0.5]), np.full(3, 1.0 / 3.0), atol=1e-15
    )
    np.testing.assert_allclose(l2_ball(1.0).project([3.0, 4.0]), [0.6, 0.8], atol=1e-15)


def test_project_sub_examples():
    assert np.array_equal(nonneg_simplex(1.0).project_sub([0.3]), [1.0])
    assert np.array_equal(full_space().project_sub([5.0, -7.0]), [5.0, -7.0])
    # KKT of projection onto {z >= 0, z1+z2 <= 1}: symmetric, binding sum
    np.testing.assert_allclose(
        nonneg_l1_ball(1.0).project_sub([0.9, 0.9]), [0.5, 0.5], atol=1e-15
    )


def test_project_sub_rejects_empty():
    with pytest.raises(ValueError):
        nonneg_simplex(1.0).project_sub(np.array([]))


@pytest.mark.parametrize("set_", ALL_SETS, ids=str)
def test_projection_matches_qp_oracle(set_):
    rng = make_rng(101)
    for _ in range(25):
        n = int(rng.integers(2, 7))
        x = rng.standard_normal(n) * rng.uniform(0.3, 3.0)
        ours = set_.project(x)
        ref = qp_project(set_, x)
        d_ours = 0.5 * np.sum((ours - x) ** 2)
        d_ref = 0.5 * np.sum((ref - x) ** 2)
        # SLSQP meets constraints only to ~1e-8, so compare at oracle precision
        assert abs(d_ours - d_ref) <= 1e-6
        assert set_.contains(ours, 1e-9)


@pytest.mark.parametrize("set_", ALL_SETS, ids=str)
def test_order_preservation(set_):
    # ranking values of the projection never invert the input ordering
    rng = make_rng(7)
    for _ in range(50):
        x = rng.standard_normal(6) * 2.0
        y = set_.project(x)
        px = set_.ranking_values(x)
        py = set_.ranking_values(y)
        prod = np.subtract.outer(py, py) * np.subtract.outer(px, px)
        assert prod.min() >= -1e-12


@pytest.mark.parametrize(
    "set_,nonneg_twin",
    [
        (full_space(), nonneg_orthant()),
        (l1_ball(1.0), nonneg_l1_ball(1.0)),
        (l2_ball(1.5), nonneg_l2_ball(1.5)),
    ],
    ids=lambda v: str(v),
)
def test_sign_relation(set_, nonneg_twin):
    # for sign-free sets: sign(x) * proj over the nonnegative slice of |x|
    # attains the projection distance
    rng = make_rng(21)
    for _ in range(50):
        x = rng.standard_normal(5) * 1.5
        sign = np.where(x >= 0, 1.0, -1.0)
        composed = sign * nonneg_twin.project(np.abs(x))
        direct = set_.project(x)
        d_composed = np.sum((composed - x) ** 2)
        d_direct = np.sum((direct - x) ** 2)
        assert abs(d_composed - d_direct) <= 1e-12
        assert set_.contains(composed, 1e-10)


@pytest.mark.parametrize("set_", ALL_SETS, ids=str)
def test_idempotence(set_):
    rng = make_rng(33)
    for _ in range(50):
        x = rng.standard_normal(6) * 3.0
        y = set_.project(x)
        again = set_.project(y)
        assert np.linalg.norm(again - y) <= 1e-12


@pytest.mark.parametrize("set_", ALL_SETS, ids=str)
def test_feasible_points_are_exact_fixed_points(set_):
    rng = make_rng(34)
    for _ in range(25):
        y = set_.project(rng.standard_normal(6) * 2.0)
        assert np.array_equal(set_.project(y), y)


@pytest.mark.parametrize("set_", ALL_SETS, ids=str)
def test_nonexpansive(set_):
    rng = make_rng(55)
    for _ in range(50):
        x = rng.standard_normal(6) * 2.0
        y = rng.standard_normal(6) * 2.0
        lhs = np.linalg.norm(set_.project(x) - set_.project(y))
        assert lhs <= np.linalg.norm(x - y) + 1e-12


@pytest.mark.parametrize("set_", ALL_SETS, ids=str)
def test_membership_is_permutation_invariant(set_):
    rng = make_rng(77)
    for _ in range(25):
        x = set_.project(rng.standard_normal(7) * 2.0)
        perm = rng.permutation(7)
        assert set_.contains(x[perm], 1e-10)


def test_parse_round_trip():
    for set_ in ALL_SETS + [l1_ball(2.5), nonneg_simplex(3.0)]:
        assert parse_set(str(set_)) == set_
    assert parse_set("l1ball:2.5").radius == 2.5
    with pytest.raises(ValueError):
        parse_set("cube")
    with pytest.raises(ValueError):
        parse_set("full:2")
    with pytest.raises(ValueError):
        parse_set("l1ball:-1")


def test_constraint_gaps():
    shape, nonneg = nonneg_simplex(1.0).constraint_gaps([0.6, 0.6, -0.1])
    assert shape == pytest.approx(0.1)
    assert nonneg == pytest.approx(0.1)
    shape, nonneg = l2_ball(1.0).constraint_gaps([3.0, 4.0])
    assert shape == pytest.approx(4.0)
    assert nonneg == 0.0
    assert full_space().constraint_gaps([9.0, -9.0]) == (0.0, 0.0)
