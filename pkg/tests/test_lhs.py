import numpy as np
import pytest

from qmclab import lhs_sample, make_stream, maxmin_lhs, min_pairwise_distance
from qmclab.integrate import SamplerSpec, rmse_experiment


def assert_stratified(points):
    count = points.shape[0]
    for k in range(points.shape[1]):
        strata = np.floor(points[:, k] * count).astype(int)
        assert sorted(strata.tolist()) == list(range(count))


class TestLhsSample:
    def test_1d_four_strata(self):
        pts = lhs_sample(make_stream(0), 1, 4).points
        assert_stratified(pts)

    def test_2d_projections(self):
        # both 1-dimensional projections hit each quarter interval once
        pts = lhs_sample(make_stream(1), 2, 4).points
        assert_stratified(pts)

    def test_single_point(self):
        pts = lhs_sample(make_stream(2), 3, 1).points
        assert pts.shape == (1, 3)
        assert np.all((pts >= 0) & (pts < 1))

    @pytest.mark.parametrize("n,count", [(1, 16), (5, 256), (100, 2 ** 16)])
    def test_stratification_scales(self, n, count):
        assert_stratified(lhs_sample(make_stream(n * count), n, count).points)

    def test_deterministic(self):
        a = lhs_sample(make_stream(5), 3, 32).points
        b = lhs_sample(make_stream(5), 3, 32).points
        assert np.array_equal(a, b)

    def test_not_extensible(self):
        # pigeonhole: the N old points must occupy N distinct strata out of
        # N+1 in every dimension for any appended point to restore the
        # invariant; a collision in any dimension rules it out
        count = 64
        pts = lhs_sample(make_stream(123), 4, count).points
        collision = False
        for k in range(4):
            strata = np.floor(pts[:, k] * (count + 1)).astype(int)
            if np.unique(strata).size < count:
                collision = True
        assert collision


class TestMinPairwiseDistance:
    def test_single_pair(self):
        assert min_pairwise_distance([[0, 0], [1, 1]]) == pytest.approx(np.sqrt(2))

    def test_collinear(self):
        assert min_pairwise_distance([[0, 0], [0.5, 0], [1, 0]]) == pytest.approx(0.5)

    def test_duplicate_point(self):
        assert min_pairwise_distance([[0.3, 0.3], [0.3, 0.3]]) == 0.0

    def test_single_point_rejected(self):
        with pytest.raises(ValueError):
            min_pairwise_distance([[0.5, 0.5]])

    def test_blocked_path_matches_direct(self):
        pts = make_stream(8).uniform(3000, 3)
        direct = min(np.linalg.norm(pts[i] - pts[j])
                     for i in range(0, 300) for j in range(i + 1, 300))
        assert min_pairwise_distance(pts[:300]) == pytest.approx(direct)


class TestMaxminLhs:
    def test_single_candidate_equals_standard(self):
        a = maxmin_lhs(make_stream(4), 2, 16, candidates=1).points
        b = lhs_sample(make_stream(4), 2, 16).points
        assert np.array_equal(a, b)

    def test_selection_improves_on_first_candidate(self):
        first = lhs_sample(make_stream(6), 2, 16).points
        best = maxmin_lhs(make_stream(6), 2, 16, candidates=4).points
        assert (min_pairwise_distance(best)
                >= min_pairwise_distance(first) - 1e-15)

    def test_result_is_stratified(self):
        assert_stratified(maxmin_lhs(make_stream(7), 3, 32).points)

    def test_zero_candidates_rejected(self):
        with pytest.raises(ValueError):
            maxmin_lhs(make_stream(1), 2, 8, candidates=0)


class _AdditiveFunction:
    def __init__(self, n):
        self.fid = "additive"
        self.n = n
        self.exact_integral = n / 2

    def __call__(self, x):
        return np.sum(x, axis=1)


def test_additive_variance_collapse():
    # an additive integrand has no interaction residual, so LHS beats plain
    # MC by far more than the 10x required here
    f = _AdditiveFunction(5)
    mc = rmse_experiment(f, SamplerSpec("mc", 5, seed=0), [10], replicates=50)
    lhs = rmse_experiment(f, SamplerSpec("lhs", 5, seed=0), [10], replicates=50)
    assert lhs.rows[0][1] <= mc.rows[0][1] / 10
