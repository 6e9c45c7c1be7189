import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from slcg.diagnostics import (
    RANDU_MODULUS,
    PartialCloudWarning,
    expected_nn_distance,
    make_cloud,
    randu_cloud,
    randu_states,
    slcg_cloud,
    split_widths,
    uniform_cloud,
    uniformity_report,
)
from slcg.generator import enumerate_cycle, enumerate_generators


def test_split_widths():
    assert split_widths(31, 3) == (10, 10, 11)
    assert split_widths(9, 3) == (3, 3, 3)
    assert split_widths(7, 1) == (7,)


def test_randu_first_output():
    assert randu_states(1) == [65539]
    assert randu_cloud(1, 1).points[0, 0] == 65539 / 2**31


def test_randu_lattice_identity():
    xs = randu_states(3000)
    assert all((xs[k + 2] - 6 * xs[k + 1] + 9 * xs[k]) % RANDU_MODULUS == 0 for k in range(len(xs) - 2))


def test_randu_seed_guard():
    with pytest.raises(ValueError):
        randu_states(5, seed=2)


def test_full_small_cloud_is_the_whole_grid():
    cloud = slcg_cloud(9, 3, Delta=2, count=None)
    assert cloud.points.shape == (512, 3)
    assert len({tuple(p) for p in cloud.points}) == 512
    # 3-bit segments map to k / 7
    np.testing.assert_array_equal(np.unique(cloud.points), np.arange(8) / 7)


def test_one_dimensional_cloud_is_normalised_states():
    cloud = slcg_cloud(7, 1, Delta=2, count=None)
    states = [s for a in enumerate_generators(7) for s in enumerate_cycle(a, 7).states]
    np.testing.assert_array_equal(cloud.points[:, 0], np.array(states) / 127)


def test_partial_cloud_warns():
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        cloud = slcg_cloud(9, 3, Delta=2, count=10_000)
    assert cloud.points.shape[0] == 512
    assert any(issubclass(x.category, PartialCloudWarning) for x in w)


def test_cloud_points_in_unit_cube_and_count():
    cloud = slcg_cloud(21, 3, Delta=2002, count=500)
    assert cloud.points.shape == (500, 3)
    assert cloud.points.min() >= 0 and cloud.points.max() <= 1


def test_cloud_delta_guard():
    with pytest.raises(ValueError):
        slcg_cloud(9, 3, Delta=3)


def test_nn_expectation_closed_forms():
    assert expected_nn_distance(100, 1) == pytest.approx(1 / 200)
    assert expected_nn_distance(400, 2) == pytest.approx(0.5 / math.sqrt(400))


def test_uniform_reference_cloud():
    r = uniformity_report(uniform_cloud(6200, 3))
    assert r.chi2_p > 0.01
    assert 0.97 <= r.nn_ratio <= 1.06
    assert r.max_abs_corr < 0.05 and not r.degenerate


def test_randu_nn_ratio_is_low():
    r = uniformity_report(randu_cloud(6200, 3))
    assert 0.60 <= r.nn_ratio <= 0.80


def test_degenerate_cloud_flagged():
    r = uniformity_report(np.full((50, 3), 0.3))
    assert r.degenerate and r.nn_ratio == 0.0
    assert r.to_dict()["nn_cv"] is None


def test_report_guards():
    with pytest.raises(ValueError):
        uniformity_report(np.empty((0, 3)))
    with pytest.raises(ValueError):
        uniformity_report(np.random.default_rng(0).random((10, 2)), bins_per_axis=1)


def test_make_cloud_sources():
    assert make_cloud("randu", 31, 3, 10).source == "randu"
    assert make_cloud("uniform", 31, 2, 10).points.shape == (10, 2)
    with pytest.raises(ValueError):
        make_cloud("sobol", 31, 3, 10)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=20, deadline=None)
def test_uniform_cloud_reproducible(seed):
    a = uniform_cloud(50, 3, seed).points
    b = uniform_cloud(50, 3, seed).points
    np.testing.assert_array_equal(a, b)
