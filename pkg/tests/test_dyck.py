"""
Tests for Dyck strips and partitions
"""
import pytest
from unittest.mock import patch

from dyck import (
    EQUAL_SIZE_EXAMPLE,
    DyckPartition,
    DyckStrip,
    StripOrdering,
    add_strip,
    admissible_orders,
    check_equal_size_example,
    check_order_suite,
    check_overlying_suite,
    check_region_height,
    check_two_row_lemma,
    enumerate_partitions,
    equal_size_succ_pairs,
    find_partition,
    height_sort,
    is_addable,
    is_admissible,
    is_dyck_strip,
    is_two_row_shape,
    is_type1,
    is_type2,
    overlying_pairs,
    overlying_rewrite,
    pair_is_type1,
    partition_succ,
    q1,
    q2,
    region_height,
    remove_strip,
    removable_strips,
    singles_partition,
    strips_by_height,
    strips_distant,
    type1_partitions,
    type2_partitions,
)
from errors import ConfigurationError, OrderError, StripPlacementError
from laurent import LaurentPolynomial
from paths import Box, bruhat_leq, enumerate_paths, path_from_string, region_boxes

FULL_STRIP = DyckStrip.from_boxes([(1, 2), (2, 1), (3, 2)])


class TestDyckStrip:
    def test_valid_strips(self):
        """Test single boxes and three-box strips"""
        assert is_dyck_strip([(2, 1)])
        assert is_dyck_strip([(1, 2), (2, 1), (3, 2)])
        assert FULL_STRIP.height == 2
        assert FULL_STRIP.length == 3

    def test_invalid_strips(self):
        """Test that strips must dip below their endpoints"""
        assert not is_dyck_strip([(1, 2), (2, 3), (3, 2)])
        assert not is_dyck_strip([(1, 2), (2, 1)])
        assert not is_dyck_strip([])
        with pytest.raises(StripPlacementError):
            DyckStrip.from_boxes([(1, 2), (2, 3), (3, 2)])

    def test_removable_strips_of_udud(self, gr24):
        """Test the three removable strips of UDUD"""
        strips = removable_strips(gr24["UDUD"])
        assert strips == [DyckStrip((Box(1, 2),)), FULL_STRIP, DyckStrip((Box(3, 2),))]

    def test_add_and_remove(self, gr24):
        """Test adding the full strip to the identity"""
        assert is_addable(gr24["DDUU"], FULL_STRIP)
        assert add_strip(gr24["DDUU"], FULL_STRIP) == gr24["UDUD"]
        assert remove_strip(gr24["UDUD"], FULL_STRIP) == gr24["DDUU"]

    def test_add_not_addable(self, gr24):
        """Test StripPlacementError when the strip does not sit on the path"""
        with pytest.raises(StripPlacementError):
            add_strip(gr24["UDUD"], FULL_STRIP)


class TestPartitions:
    def test_partitions_of_identity_to_udud(self, gr24):
        """Test the two partitions of A(DDUU, UDUD)"""
        partitions = enumerate_partitions(gr24["DDUU"], gr24["UDUD"])
        assert sorted(p.size for p in partitions) == [1, 3]

    def test_overlapping_strips_rejected(self, gr24):
        """Test StripPlacementError when strips overlap"""
        region = region_boxes(gr24["DDUU"], gr24["UDUD"])
        with pytest.raises(StripPlacementError):
            DyckPartition(region, frozenset({FULL_STRIP, DyckStrip((Box(2, 1),))}))

    def test_type_one_and_two(self, gr24):
        """Test the types of the singles and of the full strip"""
        singles = singles_partition(gr24["DDUU"], gr24["UDUD"])
        full = find_partition(gr24["DDUU"], gr24["UDUD"], [FULL_STRIP.to_json()])
        assert is_type1(singles) and not is_type2(singles)
        assert is_type1(full) and is_type2(full)

    def test_q_polynomials_gr24(self, gr24):
        """Test q1 and q2 on small regions of (4, 2)"""
        assert q1(gr24["DDUU"], gr24["UDUD"]) == LaurentPolynomial({3: 1, 1: 1})
        assert q2(gr24["DDUU"], gr24["UDUD"]) == LaurentPolynomial({1: 1})
        assert q1(gr24["DUDU"], gr24["UDUD"]) == LaurentPolynomial({2: 1})
        assert q2(gr24["DUDU"], gr24["UDUD"]) == LaurentPolynomial({2: 1})

    def test_smooth_top(self, gr24):
        """Test h(id, top) = v^4 for the smooth Gr(2, 4)"""
        assert q1(gr24["DDUU"], gr24["UUDD"]) == LaurentPolynomial({4: 1})

    def test_incomparable_is_zero(self, gr24):
        """Test q1 = q2 = 0 off the order"""
        assert q1(gr24["UDDU"], gr24["DUUD"]).is_zero()
        assert type2_partitions(gr24["UDDU"], gr24["DUUD"]) == []

    def test_at_most_one_type_two(self):
        """Test uniqueness of type 2 partitions on (6, 3)"""
        paths = enumerate_paths(6, 3)
        for mu in paths:
            for lam in paths:
                assert len(type2_partitions(lam, mu)) <= 1

    def test_type1_partitions(self, gr24):
        """Test both partitions of A(DDUU, UDUD) are type 1"""
        assert len(type1_partitions(gr24["DDUU"], gr24["UDUD"])) == 2

    def test_strips_by_height(self, gr24):
        """Test grouping the singles by height"""
        levels = strips_by_height(singles_partition(gr24["DDUU"], gr24["UDUD"]))
        assert sorted(levels) == [1, 2]
        assert len(levels[2]) == 2
        assert levels[1] == frozenset({DyckStrip((Box(2, 1),))})

    def test_region_height(self, gr24):
        """Test hgt of a region and its independence from the partition"""
        assert region_height(gr24["DDUU"], gr24["UDUD"]) == 2
        assert region_height(gr24["UDUD"], gr24["UDUD"]) == 0
        assert check_region_height(gr24["DDUU"], gr24["UUDD"])

    def test_region_height_from_paths_matches_boxes(self):
        """Test the path formula gives the highest box on every region of (5, 2)"""
        paths = enumerate_paths(5, 2)
        for mu in paths:
            for lam in paths:
                if bruhat_leq(lam, mu):
                    boxes = region_boxes(lam, mu).boxes
                    assert region_height(lam, mu) == max((b.y for b in boxes), default=0)

    def test_region_height_needs_order(self, gr24):
        """Test OrderError when lam is not below mu"""
        with pytest.raises(OrderError):
            region_height(gr24["UDUD"], gr24["DDUU"])

    @patch("dyck.region_height")
    def test_region_height_mismatch(self, mock_height, gr24):
        """Test the check fails when strip heights disagree with hgt"""
        mock_height.return_value = 1
        assert not check_region_height(gr24["DDUU"], gr24["UDUD"])


class TestOrderings:
    def test_admissible_orders_of_singles(self, gr24):
        """Test that the middle box must come first"""
        singles = singles_partition(gr24["DDUU"], gr24["UDUD"])
        orders = admissible_orders(singles, gr24["DDUU"])
        assert len(orders) == 2
        assert all(o.order[0].boxes == (Box(2, 1),) for o in orders)

    def test_height_sort_is_admissible(self, gr24):
        """Test the height-ascending normal form"""
        singles = singles_partition(gr24["DDUU"], gr24["UDUD"])
        scrambled = StripOrdering(singles, tuple(sorted(singles.strips, key=lambda s: -s.height)))
        assert not is_admissible(scrambled, gr24["DDUU"])
        assert is_admissible(height_sort(scrambled), gr24["DDUU"])

    def test_ordering_must_cover(self, gr24):
        """Test ConfigurationError for an incomplete ordering"""
        singles = singles_partition(gr24["DDUU"], gr24["UDUD"])
        with pytest.raises(ConfigurationError):
            StripOrdering(singles, ())

    def test_wrong_base_path(self, gr24):
        """Test ConfigurationError when the partition lives elsewhere"""
        singles = singles_partition(gr24["DDUU"], gr24["UDUD"])
        with pytest.raises(ConfigurationError):
            admissible_orders(singles, gr24["DUDU"])

    def test_order_suite(self):
        """Test the partial order and admissibility suite on (5, 2)"""
        assert check_order_suite(5, 2).passed

    @pytest.mark.slow
    def test_order_suite_six(self):
        """Test the order suite on (6, 3)"""
        assert check_order_suite(6, 3).passed


class TestSuccessor:
    LAM = "DDDUUUU"
    MU = "UUDUDUD"
    # strips of P and Q for the smallest equal-size comparable pair
    P = [[(2, 2), (3, 1), (4, 2)], [(1, 3)], [(5, 3)], [(2, 4), (3, 3), (4, 4)], [(6, 4)]]
    Q = [[(3, 1)], [(2, 2)], [(1, 3)], [(4, 2)], [(2, 4), (3, 3), (4, 4), (5, 3), (6, 4)]]

    def test_smallest_equal_size_pair(self):
        """Test the two type 1 partitions of A(DDDUUUU, UUDUDUD) with P > Q"""
        lam, mu = path_from_string(self.LAM), path_from_string(self.MU)
        p = find_partition(lam, mu, self.P)
        q = find_partition(lam, mu, self.Q)
        assert p is not None and q is not None
        assert is_type1(p) and is_type1(q)
        assert p.size == q.size == 5
        assert partition_succ(p, q)
        assert not partition_succ(q, p)
        assert (p, q) in equal_size_succ_pairs(lam, mu)

    def test_equal_size_example_report(self):
        """Test the selftest report for the (7, 3) region"""
        assert EQUAL_SIZE_EXAMPLE == (self.LAM, self.MU)
        report = check_equal_size_example()
        assert report.passed, report.mismatches
        assert report.parameters == {"lambda": self.LAM, "mu": self.MU}

    def test_not_two_row(self):
        """Test that the shape of UUDUDUD has three rows and columns"""
        assert not is_two_row_shape(path_from_string(self.MU))

    def test_irreflexive(self, gr24):
        """Test that no partition is above itself"""
        for p in enumerate_partitions(gr24["DDUU"], gr24["UUDD"]):
            assert not partition_succ(p, p)

    def test_two_row_lemma(self):
        """Test no equal-size comparable pairs under two-row shapes"""
        assert check_two_row_lemma(6, 2).passed
        assert check_two_row_lemma(6, 3).passed


class TestStripPairs:
    def test_distant_singles(self):
        """Test that boxes two columns apart are distant"""
        c = DyckStrip((Box(1, 2),))
        d = DyckStrip((Box(3, 2),))
        assert strips_distant(c, d)
        assert pair_is_type1(c, d)

    def test_overlapping_pair_rejected(self):
        """Test ConfigurationError when strips share a box"""
        with pytest.raises(ConfigurationError):
            strips_distant(FULL_STRIP, DyckStrip((Box(2, 1),)))

    def test_rewrite_needs_a_box_below(self):
        """Test ConfigurationError when C does not touch D from below"""
        with pytest.raises(ConfigurationError):
            overlying_rewrite(DyckStrip((Box(1, 2),)), DyckStrip((Box(3, 2),)))

    def test_rewrite_of_stacked_singles(self):
        """Test the rewrite of a single box under a single box"""
        lower = DyckStrip((Box(2, 2),))
        upper = DyckStrip((Box(2, 4),))
        with pytest.raises(ConfigurationError):
            overlying_rewrite(lower, upper)

    def test_rewrite_of_long_strip_under_single(self):
        """Test C' is the box below D and D' the other five boxes"""
        lower = DyckStrip.from_boxes([(1, 3), (2, 2), (3, 1), (4, 2), (5, 3)])
        upper = DyckStrip.from_boxes([(3, 3)])
        new_lower, new_upper = overlying_rewrite(lower, upper)
        assert new_lower == DyckStrip.from_boxes([(3, 1)])
        assert new_upper == DyckStrip.from_boxes([(1, 3), (2, 2), (3, 3), (4, 2), (5, 3)])
        assert pair_is_type1(new_lower, new_upper)
        assert not pair_is_type1(lower, upper)
        assert new_upper.length > upper.length
        assert new_lower.height < new_upper.height
        assert new_upper.height >= upper.height

    def test_overlying_pair_of_a_type2_partition(self):
        """Test A(DDDUUU, UDUDUD) splits into the long strip under a single box"""
        lower = DyckStrip.from_boxes([(1, 3), (2, 2), (3, 1), (4, 2), (5, 3)])
        upper = DyckStrip.from_boxes([(3, 3)])
        partitions = type2_partitions(path_from_string("DDDUUU"), path_from_string("UDUDUD"))
        assert len(partitions) == 1
        assert partitions[0].strips == frozenset({lower, upper})
        assert overlying_pairs(partitions[0]) == [(lower, upper)]

    def test_overlying_suite_finds_the_rewrite(self):
        """Test the (6, 3) sweep performs at least one rewrite"""
        report = check_overlying_suite(6, 3)
        assert report.passed, report.mismatches
        assert int(report.notes[0].split()[1]) > 0

    @pytest.mark.parametrize("n,i", [(4, 2), (5, 2), (5, 3)])
    def test_overlying_suite_small(self, n, i):
        """Test every rewrite on the small spaces"""
        report = check_overlying_suite(n, i)
        assert report.passed, report.mismatches

    @pytest.mark.slow
    @pytest.mark.parametrize("i", [1, 2, 4, 5])
    def test_overlying_suite_six(self, i):
        """Test every rewrite of every type 2 partition for n = 6"""
        report = check_overlying_suite(6, i)
        assert report.passed, report.mismatches
