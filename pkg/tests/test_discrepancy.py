import math

import numpy as np
import pytest

from qmclab import (l2_discrepancy, l2_discrepancy_oracle, load_direction_table,
                    local_discrepancy, make_stream, mc_point_set,
                    sobol_point_set, star_discrepancy_bruteforce)


class TestLocalDiscrepancy:
    def test_full_box(self):
        assert local_discrepancy([[0.5, 0.5]], [1, 1]) == pytest.approx(0.0)

    def test_single_point_inside(self):
        h = local_discrepancy([[0.5, 0.5]], [0.6, 0.6])
        assert h == pytest.approx(1 - 0.36)

    def test_half_box_balanced(self):
        assert local_discrepancy([[0.25], [0.75]], [0.5]) == pytest.approx(0.0)

    def test_boundary_is_excluded(self):
        # box [0, t) is half-open: a point at t does not count
        assert local_discrepancy([[0.5]], [0.5]) == pytest.approx(-0.5)

    def test_bad_corner(self):
        with pytest.raises(ValueError):
            local_discrepancy([[0.5]], [1.5])


class TestStarBruteforce:
    def test_single_mid_point(self):
        assert star_discrepancy_bruteforce([[0.5]]) == pytest.approx(0.5)

    def test_two_balanced_points(self):
        assert star_discrepancy_bruteforce([[0.25], [0.75]]) == pytest.approx(0.25)

    @pytest.mark.parametrize("count", [1, 2, 5, 32, 501])
    def test_1d_optimal_equidistant(self, count):
        # the centered equidistant set attains the 1D optimum 1/(2N)
        pts = ((2 * np.arange(1, count + 1) - 1) / (2 * count))[:, None]
        assert star_discrepancy_bruteforce(pts) == pytest.approx(1 / (2 * count))

    def test_size_cap(self):
        with pytest.raises(ValueError, match="l2_discrepancy"):
            star_discrepancy_bruteforce(np.zeros((65, 2)) + 0.5)
        with pytest.raises(ValueError, match="l2_discrepancy"):
            star_discrepancy_bruteforce(make_stream(0).uniform(4, 4))

    def test_dominates_l2(self):
        # sup norm >= L2 norm of h over the unit-volume box domain
        for seed in range(5):
            pts = mc_point_set(make_stream(seed), 2, 16)
            assert (star_discrepancy_bruteforce(pts)
                    >= l2_discrepancy(pts) - 1e-12)

    def test_permutation_invariance(self):
        pts = mc_point_set(make_stream(3), 2, 12)
        shuffled = pts[::-1]
        assert star_discrepancy_bruteforce(pts) == pytest.approx(
            star_discrepancy_bruteforce(shuffled))


class TestL2ClosedForm:
    def test_single_mid_point_analytic(self):
        # integral of (1{t > 0.5} - t)^2 over [0, 1] is 1/12
        assert l2_discrepancy([[0.5]]) == pytest.approx(math.sqrt(1 / 12), abs=1e-12)

    def test_single_origin_point_analytic(self):
        # h(t) = 1 - t for t > 0: integral is 1/3
        assert l2_discrepancy([[0.0]]) == pytest.approx(math.sqrt(1 / 3), abs=1e-12)

    def test_permutation_invariance(self):
        pts = mc_point_set(make_stream(4), 3, 50)
        assert l2_discrepancy(pts) == pytest.approx(l2_discrepancy(pts[::-1]),
                                                    rel=1e-12)

    def test_matches_oracle_on_random_sets(self):
        stream = make_stream(20)
        for trial in range(20):
            n = 1 + trial % 2
            count = 1 + (trial * 7) % 16
            pts = stream.uniform(count, n)
            closed = l2_discrepancy(pts)
            quad = l2_discrepancy_oracle(pts, grid=2000)
            assert abs(closed - quad) <= 2e-3

    def test_oracle_1d_fine_grid(self):
        quad = l2_discrepancy_oracle([[0.5]], grid=10 ** 5)
        assert quad == pytest.approx(math.sqrt(1 / 12), abs=1e-4)

    def test_oracle_3d(self):
        pts = make_stream(9).uniform(6, 3)
        closed = l2_discrepancy(pts)
        quad = l2_discrepancy_oracle(pts, grid=200)
        assert abs(closed - quad) <= 5e-3

    def test_oracle_dimension_cap(self):
        with pytest.raises(ValueError):
            l2_discrepancy_oracle(np.full((4, 4), 0.5), grid=10)


class TestLdsBoundDiagnostic:
    def test_scaled_l2_bounded_for_sobol_grows_for_mc(self):
        # N * D stays bounded for the 1D low-discrepancy sequence but grows
        # like sqrt(N) for random points as N doubles from 2^4 to 2^14
        table = load_direction_table()
        sobol_nd = []
        mc_nd = []
        for j in range(4, 15):
            count = 2 ** j
            sobol_nd.append(count * l2_discrepancy(
                sobol_point_set(table, 1, count, start=1)))
            mc_nd.append(count * l2_discrepancy(
                mc_point_set(make_stream(17), 1, count)))
        assert max(sobol_nd) / min(sobol_nd) < 8
        growth = mc_nd[-1] / mc_nd[0]
        expected = math.sqrt(2 ** 14 / 2 ** 4)
        assert expected / 4 <= growth <= expected * 4
