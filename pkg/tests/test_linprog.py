"""Dense two-phase simplex kernel."""
import numpy as np
import pytest

from robpareto.linprog import LpProblem, lp_solve


def test_single_active_bound():
    # minimize v1 subject to v1 >= 3
    res = lp_solve(LpProblem(c=[1.0], a_ub=[[-1.0]], b_ub=[-3.0]))
    assert res.status == "optimal"
    assert abs(res.value - 3.0) < 1e-9
    np.testing.assert_allclose(res.x, [3.0], atol=1e-9)


def test_contradictory_bounds_infeasible():
    # v1 <= -1 clashes with the default v1 >= 0
    res = lp_solve(LpProblem(c=[0.0], a_ub=[[1.0]], b_ub=[-1.0]))
    assert res.status == "infeasible"


def test_unbounded_ray():
    res = lp_solve(LpProblem(c=[-1.0]))
    assert res.status == "unbounded"


def test_equality_rows():
    res = lp_solve(LpProblem(c=[1.0, 1.0], a_eq=[[1.0, 1.0]], b_eq=[2.0]))
    assert res.status == "optimal"
    assert abs(res.value - 2.0) < 1e-9


def test_free_variable_goes_negative():
    res = lp_solve(LpProblem(c=[1.0], a_ub=[[-1.0]], b_ub=[5.0], free=[True]))
    assert res.status == "optimal"
    assert abs(res.value - (-5.0)) < 1e-9


def test_two_dim_vertex():
    # minimize -(2 v1 + 3 v2) over v >= 0, v1 + v2 <= 1: best vertex (0, 1)
    res = lp_solve(LpProblem(c=[-2.0, -3.0], a_ub=[[1.0, 1.0]], b_ub=[1.0]))
    assert res.status == "optimal"
    assert abs(res.value - (-3.0)) < 1e-9
    np.testing.assert_allclose(res.x, [0.0, 1.0], atol=1e-9)


def test_validation_errors():
    with pytest.raises(ValueError, match="columns"):
        LpProblem(c=[1.0, 2.0], a_ub=[[1.0]], b_ub=[1.0])
    with pytest.raises(ValueError, match="rhs"):
        LpProblem(c=[1.0], a_ub=[[1.0]], b_ub=[1.0, 2.0])
    with pytest.raises(ValueError, match="together"):
        LpProblem(c=[1.0], a_ub=[[1.0]])
    with pytest.raises(ValueError, match="non-finite"):
        LpProblem(c=[np.inf])
    with pytest.raises(ValueError, match="free mask"):
        LpProblem(c=[1.0], free=[True, False])
    with pytest.raises(ValueError):
        LpProblem(c=[])


def _random_bounded_lp(rng):
    nvar = int(rng.integers(1, 9))
    rows = int(rng.integers(1, 9))
    a = rng.uniform(-1.0, 2.0, size=(rows, nvar))
    x0 = rng.uniform(0.0, 1.0, size=nvar)
    b = a @ x0 + rng.uniform(0.0, 0.5, size=rows)
    c = rng.uniform(0.1, 1.0, size=nvar)  # positive costs keep min over v >= 0 bounded
    return LpProblem(c=c, a_ub=a, b_ub=b), x0


def test_no_feasible_point_beats_reported_minimum(rng):
    for _ in range(60):
        prob, x0 = _random_bounded_lp(rng)
        res = lp_solve(prob)
        assert res.status == "optimal"
        nvar = prob.c.shape[0]
        assert prob.c @ x0 >= res.value - 1e-8
        # rejection-sampled feasible points must not undercut the optimum
        draws = rng.uniform(0.0, 2.0, size=(200, nvar))
        feas = draws[np.all(prob.a_ub @ draws.T <= prob.b_ub[:, None] + 1e-12, axis=0)]
        if feas.size:
            assert (feas @ prob.c).min() >= res.value - 1e-8


def test_reported_solution_is_feasible_and_consistent(rng):
    for _ in range(40):
        prob, _ = _random_bounded_lp(rng)
        res = lp_solve(prob)
        assert res.status == "optimal"
        assert np.all(prob.a_ub @ res.x <= prob.b_ub + 1e-8)
        assert np.all(res.x >= -1e-9)
        assert abs(prob.c @ res.x - res.value) < 1e-9


def test_row_permutation_same_value(rng):
    for _ in range(30):
        prob, _ = _random_bounded_lp(rng)
        base = lp_solve(prob)
        perm = rng.permutation(prob.a_ub.shape[0])
        shuffled = LpProblem(c=prob.c, a_ub=prob.a_ub[perm], b_ub=prob.b_ub[perm])
        again = lp_solve(shuffled)
        assert again.status == "optimal"
        assert abs(again.value - base.value) < 1e-9


def test_degenerate_square_still_solves():
    # multiple redundant rows through one vertex
    a = [[1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [2.0, 2.0]]
    b = [1.0, 1.0, 2.0, 4.0]
    res = lp_solve(LpProblem(c=[-1.0, -1.0], a_ub=a, b_ub=b))
    assert res.status == "optimal"
    assert abs(res.value - (-2.0)) < 1e-9
