import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jlbound import mcverify as mc
from jlbound.bounds import BoundQuery, Method, exact_tail_sum
from jlbound.errors import DomainError
from jlbound.projection import ProjectionSpec, project


def test_verify_spec_validation():
    q = BoundQuery(50, 0.3, 1)
    with pytest.raises(DomainError):
        mc.VerifySpec(q, replicates=0)
    with pytest.raises(DomainError):
        mc.VerifySpec(q, point_source="file")
    with pytest.raises(DomainError):
        mc.VerifySpec(q, pairing="l1")
    assert mc.VerifySpec(q, method="theorem3").resolved_pairing == "l2l1"
    assert mc.VerifySpec(q, method=Method.DG).resolved_pairing == "l2l2"


# -- chi-square tail simulation ---------------------------------------------

def test_tail_k2_right_closed_form():
    draws = 10**5
    est = mc.estimate_tail_probability(2, 0.5, "right", draws=draws, seed=1)
    p = math.exp(-1.5)
    assert abs(est - p) <= 4 * mc.binomial_se(p, draws)


def test_tail_left_within_both():
    left = mc.estimate_tail_probability(50, 0.2, "left", draws=10**5, seed=2)
    both = mc.estimate_tail_probability(50, 0.2, "both", draws=10**5, seed=2)
    assert left <= both


def test_tail_k100_agrees_with_analytic():
    draws = 10**6
    p = math.exp(exact_tail_sum(100, 0.1))
    est = mc.estimate_tail_probability(100, 0.1, "both", draws=draws, seed=3)
    assert abs(est - p) <= 4 * mc.binomial_se(p, draws)


@pytest.mark.parametrize("k", [10, 50, 200, 1000])
@pytest.mark.parametrize("eps", [0.1, 0.3])
def test_tail_grid_agrees_with_analytic(k, eps):
    draws = 10**5
    p = math.exp(exact_tail_sum(k, eps))
    est = mc.estimate_tail_probability(k, eps, "both", draws=draws, seed=k)
    assert abs(est - p) <= 4 * mc.binomial_se(p, draws)


def test_tail_validation():
    with pytest.raises(DomainError):
        mc.estimate_tail_probability(10, 0.1, draws=100)
    with pytest.raises(DomainError):
        mc.estimate_tail_probability(10, 0.1, side="middle")


def test_tail_deterministic():
    a = mc.estimate_tail_probability(30, 0.2, draws=20_000, seed=5)
    b = mc.estimate_tail_probability(30, 0.2, draws=20_000, seed=5)
    assert a == b


# -- pair criterion ---------------------------------------------------------

def test_identical_points_always_succeed():
    X = np.ones((2, 6))
    for pairing in ("l2l2", "l2l1"):
        Y = project(X, ProjectionSpec(k=3, p=6, seed=0, pairing=pairing))
        assert mc.pair_successes(X, Y, 0.01, pairing).all()


def test_pair_criterion_band_edges():
    X = np.array([[0.0, 0.0], [1.0, 0.0]])
    # squared distance 1; band [0.9, 1.1]
    inside = np.array([[0.0], [math.sqrt(1.05)]])
    outside = np.array([[0.0], [math.sqrt(1.2)]])
    assert mc.pair_successes(X, inside, 0.1, "l2l2").all()
    assert not mc.pair_successes(X, outside, 0.1, "l2l2").any()
    c = math.sqrt(2 / math.pi)
    assert mc.pair_successes(X, np.array([[0.0], [c]]), 0.1, "l2l1").all()
    assert not mc.pair_successes(X, np.array([[0.0], [1.2 * c]]), 0.1, "l2l1").any()


@settings(max_examples=20, deadline=None)
@given(c=st.floats(0.01, 100.0), seed=st.integers(0, 2**32))
def test_success_indicators_scale_invariant(c, seed):
    X = np.random.default_rng(seed).standard_normal((8, 20))
    for pairing in ("l2l2", "l2l1"):
        spec = ProjectionSpec(k=15, p=20, seed=seed, pairing=pairing)
        a = mc.pair_successes(X, project(X, spec), 0.2, pairing)
        b = mc.pair_successes(c * X, project(c * X, spec), 0.2, pairing)
        np.testing.assert_array_equal(a, b)


# -- reports ----------------------------------------------------------------

def test_report_reproducible_and_jobs_independent():
    spec = mc.VerifySpec(BoundQuery(20, 0.3, 1), method=Method.THEOREM3, replicates=20, seed=11, p=30)
    a = mc.run_pair_trials(spec)
    b = mc.run_pair_trials(spec)
    c = mc.run_pair_trials(spec, jobs=2)
    assert json.dumps(a.to_dict()) == json.dumps(b.to_dict()) == json.dumps(c.to_dict())


def test_report_fields():
    spec = mc.VerifySpec(BoundQuery(50, 0.1, 1), method=Method.THEOREM3, replicates=2, seed=7, p=20)
    rep = mc.run_pair_trials(spec)
    d = rep.to_dict()
    assert d["schema_version"] == 1
    assert d["k_used"] == 1398
    assert d["guaranteed_per_pair"] == pytest.approx(0.999984, abs=1e-15)
    assert d["guaranteed_all_pairs"] == pytest.approx(0.98)
    assert 0 <= d["per_pair_success_rate"] <= 1 and d["std_error_per_pair"] >= 0
    assert d["pair_trials"] == 2 * 50 * 49 // 2


def test_hypercube_and_file_sources(tmp_path):
    q = BoundQuery(10, 0.3, 0)
    cube = mc.make_points(mc.VerifySpec(q, point_source="hypercube", p=5, seed=1))
    assert cube.shape == (10, 5) and cube.min() >= 0 and cube.max() < 1
    path = tmp_path / "pts.csv"
    np.savetxt(path, cube, delimiter=",")
    rep = mc.run_pair_trials(mc.VerifySpec(q, point_source="file", points_path=str(path), replicates=3, k=40))
    assert rep.n_points == 10 and rep.k_used == 40
    with pytest.raises(OSError):
        mc.run_pair_trials(mc.VerifySpec(q, point_source="file", points_path=str(tmp_path / "missing.csv")))


def test_per_pair_guarantee_exact_method():
    q = BoundQuery(50, 0.3, 1)
    # 82 replicates x 1225 pairs > 10^5 pair-trials
    rep = mc.run_pair_trials(mc.VerifySpec(q, method=Method.EXACT, replicates=82, seed=1))
    assert rep.pair_trials >= 10**5
    assert rep.per_pair_success_rate >= 1 - 2 / 50**3 - 3 * rep.std_error_per_pair


@pytest.mark.slow
def test_all_pairs_guarantee_theorem1():
    q = BoundQuery(50, 0.3, 1)
    rep = mc.run_pair_trials(mc.VerifySpec(q, method=Method.THEOREM1, replicates=1000, seed=2))
    assert rep.all_pairs_success_rate >= 1 - 1 / 50 - 3 * rep.std_error_all_pairs
    assert rep.satisfied


@pytest.mark.parametrize("q_param", [1, 3])
def test_achlioptas_l2l1_guarantee(q_param):
    q = BoundQuery(30, 0.3, 1)
    rep = mc.run_pair_trials(
        mc.VerifySpec(q, method=Method.THEOREM3, distribution="achlioptas", q=q_param, replicates=40, seed=4, p=60)
    )
    assert rep.per_pair_ok


def test_undersized_k_is_detected():
    q = BoundQuery(30, 0.1, 1)
    rep = mc.run_pair_trials(mc.VerifySpec(q, method=Method.EXACT, k=20, replicates=5, seed=1, p=40))
    assert not rep.per_pair_ok and not rep.satisfied
