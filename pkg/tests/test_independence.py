import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cogindep.clustering import Partition
from cogindep.core import Frame, vacuous
from cogindep.datagen import random_masses
from cogindep.errors import PartitionMismatchError
from cogindep.independence import (
    IND_ALL,
    IND_I,
    IND_NOT_I,
    INDEPENDENCE_FRAME,
    AnalysisConfig,
    PairLink,
    aggregate_dependence,
    aggregate_independence,
    analyze,
    cluster_conflict,
    correspondence_matrices,
    dependence_mass,
    greedy_match,
    independence_degree,
    independence_mass,
    pair_dependence_by_combination,
    pair_dependence_mass,
    pair_independence_mass,
)
from cogindep.product import DEP_I, DEP_N, DEP_P

unit = st.floats(0.0, 1.0)


def test_beta_coefficients_of_worked_example():
    # Objects o1..o15 (0-based here); S1 cluster 0 = {o1,o5,o9,o12,o15},
    # S2 cluster 4 = {o1,o2,o9}.  Remaining objects are spread elsewhere.
    s1 = {0: [0, 4, 8, 11, 14], 1: [1, 2, 3], 2: [5, 6, 7], 3: [9, 10, 12], 4: [13]}
    s2 = {4: [0, 1, 8], 0: [4, 11, 14], 1: [2, 3, 5], 2: [6, 7, 9], 3: [10, 12, 13]}
    p1 = Partition.from_clusters([s1[k] for k in range(5)])
    p2 = Partition.from_clusters([s2[k] for k in range(5)])
    m1, m2 = correspondence_matrices(p1, p2)
    assert m1.values[0, 4] == pytest.approx(2 / 5)
    assert m2.values[4, 0] == pytest.approx(2 / 3)
    assert m1.values[4, 4] == 0.0


def test_identical_partitions_give_identity_matching():
    p = Partition((0, 1, 2, 0, 1, 2, 2), 3)
    m1, m2 = correspondence_matrices(p, p)
    assert np.array_equal(m1.values, np.eye(3))
    match = greedy_match(m1)
    assert match.pairs == ((0, 0), (1, 1), (2, 2))
    assert match.betas == (1.0, 1.0, 1.0)


def test_partition_mismatch():
    with pytest.raises(PartitionMismatchError):
        correspondence_matrices(Partition((0, 1), 2), Partition((0, 1, 1), 2))


def test_greedy_examples():
    assert greedy_match(np.array([[0.9, 0.1], [0.2, 0.8]])).pairs == ((0, 0), (1, 1))
    # 0.9 at (1, 0) is taken first, which forces (0, 1).
    match = greedy_match(np.array([[0.6, 0.7], [0.9, 0.1]]))
    assert match.pairs == ((0, 1), (1, 0))
    assert match.betas == (0.7, 0.9)


def test_greedy_tie_break():
    assert greedy_match(np.full((3, 3), 0.5)).pairs == ((0, 0), (1, 1), (2, 2))


@st.composite
def dominant_matrices(draw):
    c = draw(st.integers(1, 4))
    perm = draw(st.permutations(range(c)))
    low = draw(st.lists(st.floats(0.0, 0.49), min_size=c * c, max_size=c * c))
    high = draw(st.lists(st.floats(0.51, 1.0), min_size=c, max_size=c, unique=True))
    values = np.array(low).reshape(c, c)
    for i, j in enumerate(perm):
        values[i, j] = high[i]
    return values, perm


@settings(max_examples=300)
@given(dominant_matrices())
def test_greedy_equals_exhaustive_on_dominant_matrices(case):
    values, perm = case
    c = len(perm)
    best = max(itertools.permutations(range(c)), key=lambda p: sum(values[i, p[i]] for i in range(c)))
    assert greedy_match(values).pairs == tuple(enumerate(best))
    assert tuple(enumerate(perm)) == tuple(enumerate(best))


@given(st.integers(1, 5).flatmap(lambda c: st.lists(unit, min_size=c * c, max_size=c * c)))
def test_greedy_is_a_bijection(flat):
    c = int(round(len(flat) ** 0.5))
    match = greedy_match(np.array(flat).reshape(c, c))
    assert sorted(r for r, _ in match.pairs) == list(range(c))
    assert sorted(k for _, k in match.pairs) == list(range(c))


def test_pair_independence_examples():
    m = pair_independence_mass(PairLink((0, 0), beta=0.4))
    assert (m[IND_I], m[IND_NOT_I]) == pytest.approx((0.6, 0.4))
    assert pair_independence_mass(PairLink((0, 0), beta=0.3, alpha=0.0))[IND_ALL] == 1.0
    assert pair_independence_mass(PairLink((0, 0), beta=1.0))[IND_NOT_I] == 1.0


def test_aggregate_independence_examples():
    pairs = [pair_independence_mass(PairLink((k, k), beta=b)) for k, b in enumerate((0.2, 0.4))]
    agg = aggregate_independence(pairs)
    assert (agg[IND_I], agg[IND_NOT_I]) == pytest.approx((0.7, 0.3))
    assert aggregate_independence(pairs[::-1]) == agg
    assert aggregate_independence([pairs[0]] * 3) == pairs[0]


def test_independence_degree_examples():
    assert independence_degree(independence_mass(0.7, 0.3, 0.0)) == pytest.approx((0.7, 0.3))
    assert independence_degree(vacuous(INDEPENDENCE_FRAME)) == (0.5, 0.5)


def test_cluster_conflict_examples():
    cross = np.array([0.3, 0.5, 0.9, 0.0])
    assert cluster_conflict(frozenset({0, 1, 2}), frozenset({0, 1}), cross) == pytest.approx(0.4)
    assert cluster_conflict(frozenset({0}), frozenset({1}), cross) == 1.0
    assert cluster_conflict(frozenset({3}), frozenset({3}), cross) == 0.0


def test_pair_dependence_examples():
    m = pair_dependence_mass(PairLink((0, 0), beta=0.8, conf=0.25))
    assert (m[DEP_I], m[DEP_P], m[DEP_N]) == pytest.approx((0.2, 0.6, 0.2))
    assert pair_dependence_mass(PairLink((0, 0), beta=1.0, conf=0.0))[DEP_P] == 1.0
    assert pair_dependence_mass(PairLink((0, 0), beta=1.0, conf=1.0))[DEP_N] == 1.0


def test_aggregate_dependence_examples():
    p = dependence_mass(P=1.0)
    n = dependence_mass(N=1.0)
    agg = aggregate_dependence([p, n])
    assert (agg[DEP_P], agg[DEP_N]) == (0.5, 0.5)
    assert aggregate_dependence([p, p]) == p


@settings(max_examples=500)
@given(unit, unit, unit)
def test_closed_form_equals_combination(alpha, beta, conf):
    link = PairLink((0, 0), beta=beta, alpha=alpha, conf=conf)
    closed = pair_dependence_mass(link)
    assert closed.max_abs_diff(pair_dependence_by_combination(link)) <= 1e-12
    assert abs(closed.total() - 1.0) <= 1e-9


def test_link_validation():
    with pytest.raises(ValueError):
        PairLink((0, 0), beta=1.2)
    with pytest.raises(ValueError):
        pair_dependence_mass(PairLink((0, 0), beta=0.5))
    with pytest.raises(ValueError):
        AnalysisConfig(alpha_policy="half")


def dataset(n=50, size=5, seed=11):
    return random_masses(Frame.of_size(size), n, np.random.default_rng(seed))


def test_self_dependence():
    d = dataset()
    report = analyze(d, d, AnalysisConfig(seed=3))
    for direction in report.directions:
        assert direction.i_d == pytest.approx(0.0, abs=1e-12)
        assert direction.dependence[DEP_P] == pytest.approx(1.0, abs=1e-12)
        assert direction.dependence_argmax() == "P"


def test_report_invariants_and_policies():
    a, b = dataset(seed=1), dataset(seed=2)
    for policy in ("one", "cluster-size"):
        report = analyze(a, b, AnalysisConfig(alpha_policy=policy))
        for d in report.directions:
            assert d.i_d + d.not_i_d == pytest.approx(1.0, abs=1e-9)
            assert d.betp_i + d.betp_p + d.betp_n == pytest.approx(1.0, abs=1e-9)
            assert len(d.links) == 5
        if policy == "cluster-size":
            sizes = report.partitions[0].sizes()
            assert [lk.alpha for lk in report.forward.links] == pytest.approx([s / 50 for s in sizes])
        assert report.to_dict()["directions"][0]["source"] == "S1"


def test_analysis_is_deterministic():
    a, b = dataset(seed=5), dataset(seed=6)
    assert analyze(a, b).to_dict() == analyze(a, b).to_dict()
