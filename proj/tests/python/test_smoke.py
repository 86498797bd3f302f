"""Smoke tests for the compiled module (run against the build tree)."""

import math
import os

import pytest

import _core as hc

PATTERN_DIR = os.environ.get("HYPERCOUNT_PATTERN_DIR", "data/patterns")


def triangle():
    return hc.Pattern(3, [[1, 2], [1, 3], [2, 3]])


def test_pattern_basics():
    t = triangle()
    assert t.vertex_count == 3
    assert t.edge_count == 3
    assert hc.automorphism_count(t) == 6
    assert hc.count_copies(t, 5) == 10
    assert len(hc.enumerate_copies(t, 4)) == 4

    trimmed, k = hc.remove_isolated_vertices(hc.Pattern(5, [[1, 2]]))
    assert k == 3
    assert trimmed.vertex_count == 2


def test_pattern_file_round_trip():
    path = os.path.join(PATTERN_DIR, "triangle.txt")
    loaded = hc.Pattern.from_file(path)
    assert hc.are_isomorphic(loaded, triangle())
    assert hc.Pattern.parse(loaded.to_text()).edges == loaded.edges


def test_exact_moments_match_known_values():
    m = hc.exact_moments(triangle(), 4, {2: "0.5"}, mode="rational")
    assert math.isclose(m["mean"], 0.5, rel_tol=1e-12)
    assert math.isclose(m["variance"], 0.625, rel_tol=1e-12)
    assert m["mean_exact"] == "0.5"
    assert m["variance_exact"] == "0.625"

    pmf = hc.pmf_oracle(triangle(), 3, {2: "0.5"})
    assert math.isclose(pmf[0], 0.875, rel_tol=1e-12)
    assert math.isclose(pmf[1], 0.125, rel_tol=1e-12)


def test_guard_is_a_typed_error():
    with pytest.raises(hc.GuardExceededError):
        hc.exact_moments(triangle(), 50, {2: "0.5"})


def test_simulation_is_deterministic_and_unbiased():
    values = hc.simulate(triangle(), 6, {2: "0.5"}, reps=20000, seed=9)
    again = hc.simulate(triangle(), 6, {2: "0.5"}, reps=20000, seed=9, workers=4)
    assert values == again
    mean = sum(values) / len(values)
    assert abs(mean - 2.5) < 4 * math.sqrt(5.0 / 20000)

    z = hc.standardize(values, 2.5, math.sqrt(5.0))
    assert abs(sum(z) / len(z)) < 0.05


def test_separability_and_distances():
    t1 = [[1, 2], [1, 3], [2, 3]]
    t2 = [[4, 5], [4, 6], [5, 6]]
    t3 = [[1, 2], [1, 4], [2, 4]]
    assert hc.is_edgewise_separable([t1, t2])
    assert not hc.is_edgewise_separable([t1, t3])

    assert math.isclose(hc.dk_empirical([0.0]), 0.5, rel_tol=1e-12)
    assert hc.dkw_radius(100000, 0.01) < 0.006


def test_bounds_and_surrogate():
    b = hc.bounds(triangle(), 100, {2: "0.5"})
    assert math.isclose(b["bounded_p"], 1 / math.sqrt(5000), rel_tol=1e-9)
    assert b["wasserstein"] > 0
    s = hc.kurtosis_surrogate(triangle(), 100, 0.1)
    assert math.isclose(s["value"], 1 / 900, rel_tol=1e-9)


def test_hoeffding_identities():
    out = hc.hoeffding_check(triangle(), 5, {2: "0.5"}, reps=50, seed=3)
    assert abs(out["projection_sum"] - 1.0) < 1e-9
    assert out["reconstruction_worst_dev"] < 1e-8
