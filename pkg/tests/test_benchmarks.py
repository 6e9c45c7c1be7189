import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import minimize

from slcg.benchmarks import (
    BENCHMARK_IDS,
    FIXED_IDS,
    SCALABLE_IDS,
    DimensionError,
    UnknownProblemError,
    get_benchmark,
    iter_suite,
    native_dim,
)
from slcg.problems import Problem, death_penalty, unconstrained


def suite(d=2):
    return list(iter_suite(d))


def test_suite_has_26_functions():
    assert len(BENCHMARK_IDS) == 26
    assert set(SCALABLE_IDS) | set(FIXED_IDS) == set(BENCHMARK_IDS)
    assert [native_dim(f) for f in ("F17", "F18", "F22", "F23", "F24")] == [2, 4, 3, 6, 4]
    assert native_dim("F1") is None


@pytest.mark.parametrize("problem", suite(), ids=lambda p: p.id)
def test_value_at_known_minimiser(problem):
    if problem.optimum_location is None:
        pytest.skip("no closed-form minimiser")
    v = problem(problem.optimum_location)
    assert v == pytest.approx(problem.known_optimum, rel=1e-9, abs=1e-9)


@pytest.mark.parametrize("problem", suite(), ids=lambda p: p.id)
def test_no_lower_point_nearby(problem):
    # a local polish from the stated minimiser must not improve it meaningfully
    if problem.optimum_location is None or problem.id == "F7":
        pytest.skip("no smooth minimiser")
    lo, hi = np.array(problem.bounds).T
    res = minimize(problem, np.array(problem.optimum_location), method="L-BFGS-B", bounds=list(zip(lo, hi)))
    assert res.fun >= problem.known_optimum - 1e-6 * max(1.0, abs(problem.known_optimum))


@pytest.mark.parametrize("problem", suite(3), ids=lambda p: p.id)
def test_batched_shapes(problem):
    lo, hi = np.array(problem.bounds).T
    rng = np.random.default_rng(0)
    X = lo + (hi - lo) * rng.random((4, 5, problem.dim))
    out = problem.evaluate(X)
    assert out.shape == (4, 5)
    flat = problem.evaluate(X.reshape(20, problem.dim))
    np.testing.assert_array_equal(out.reshape(20), flat)
    assert problem(X[1, 2]) == out[1, 2]


def test_fixed_dimension_guard():
    with pytest.raises(DimensionError):
        get_benchmark("F18", 2)
    with pytest.raises(DimensionError):
        get_benchmark("F1")
    with pytest.raises(DimensionError):
        get_benchmark("F1", 1)
    with pytest.raises(UnknownProblemError):
        get_benchmark("F27", 2)


def test_lowercase_ids_accepted():
    assert get_benchmark("f8", 2).id == "F8"


def test_schwefel_optimum_scales_with_d():
    for d in (2, 5, 30):
        p = get_benchmark("F8", d)
        assert p.known_optimum == pytest.approx(-418.98288727 * d, rel=1e-9)


@given(st.lists(st.floats(-1.28, 1.28), min_size=2, max_size=6))
@settings(max_examples=50)
def test_noisy_quartic_is_deterministic(x):
    p = get_benchmark("F7", len(x))
    assert p(x) == p(x)
    assert p(x) >= 0.0


def test_gap_rule():
    p = get_benchmark("F1", 2)
    assert p.gap(0.004) == 0.004
    q = get_benchmark("F8", 2)
    assert q.gap(q.known_optimum * 0.99) == pytest.approx(0.01)


def test_death_penalty_wrapper():
    p = Problem(
        id="toy",
        dim=2,
        bounds=((-1, 1), (-1, 1)),
        objective=lambda X: np.sum(X**2, axis=-1),
        constraints=lambda X: np.stack([X[..., 0] - 0.5, -X[..., 1]], axis=-1),
    )
    f = death_penalty(p)
    np.testing.assert_allclose(f(np.array([[0.2, 0.1], [0.7, 0.1], [0.2, -0.1]])), [0.05, np.inf, np.inf])
    assert p.is_feasible([0.5, 0.0]) and not p.is_feasible([0.51, 0.0])
    u = unconstrained(p)
    assert u.constraints is None and u([0.7, 0.1]) == np.inf
    with pytest.raises(ValueError):
        death_penalty(get_benchmark("F1", 2))


def test_nan_constraint_counts_as_violation():
    p = Problem(
        id="toy",
        dim=1,
        bounds=((-1, 1),),
        objective=lambda X: X[..., 0],
        constraints=lambda X: np.where(X > 0, -1.0, np.nan),
    )
    assert death_penalty(p)(np.array([[-0.5]]))[0] == np.inf
    assert not p.is_feasible([-0.5])
