from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conley_kernel import affine as af
from conley_kernel.affine import AffineRule, Piece, PiecewiseAffineMap
from conley_kernel.boxes import BoxSet, Interval
from conley_kernel.suites import clamp_map, doubling_map, random_interval_set, shift2d_map

import random


def box1(lo, lc, hi, hc):
    return BoxSet.interval(lo, lc, hi, hc)


class TestConstruction:
    def test_overlapping_pieces_rejected(self):
        with pytest.raises(ValueError):
            PiecewiseAffineMap.of(1, [
                Piece(box1(0, True, 2, True), (AffineRule.of(1, 0),)),
                Piece(box1(1, True, 3, True), (AffineRule.of(1, 0),)),
            ])

    def test_discontinuous_pieces_rejected(self):
        with pytest.raises(ValueError):
            PiecewiseAffineMap.of(1, [
                Piece(box1("-inf", False, 0, True), (AffineRule.of(1, 0),)),
                Piece(box1(0, False, "inf", False), (AffineRule.of(1, 1),)),
            ])

    def test_clamp_is_continuous(self):
        f = clamp_map()
        assert f.eval_point([Fraction(1, 2)]) == (Fraction(0),)
        assert f.eval_point([3]) == (Fraction(2),)

    def test_jump_off_shared_boundary_allowed(self):
        # domains whose closures only meet outside the union stay legal
        f = PiecewiseAffineMap.of(1, [
            Piece(box1(0, False, 1, False), (AffineRule.of(1, 0),)),
            Piece(box1(1, False, 2, False), (AffineRule.of(1, 1),)),
        ])
        assert f.domain.set_eq(
            box1(0, False, 1, False).union(box1(1, False, 2, False)))


class TestSetMaps:
    def test_doubling_preimage(self):
        assert doubling_map().preimage(box1(-1, True, 1, True)).set_eq(
            box1("-1/2", True, "1/2", True))

    def test_shift_preimage(self):
        want = BoxSet.of(2, [(Interval.closed(0, 1),
                              Interval.make("-inf", False, -1, False))])
        got = shift2d_map().preimage(
            BoxSet.of(2, [(Interval.closed(0, 1),
                           Interval.make("-inf", False, 0, False))]))
        assert got.set_eq(want)

    def test_power_image_point(self):
        got = af.power(doubling_map(), 3).image(box1(1, True, 1, True))
        assert got.set_eq(box1(8, True, 8, True))

    def test_power_zero_is_identity_on_everything(self):
        assert af.power(clamp_map(), 0).domain.set_eq(BoxSet.full(1))

    def test_constant_rule_preimage(self):
        const = PiecewiseAffineMap.affine_1d(0, 5)
        assert const.preimage(box1(4, True, 6, True)).set_eq(BoxSet.full(1))
        assert const.preimage(box1(0, True, 1, True)).is_empty

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 3), st.integers(0, 3))
    def test_power_additivity(self, m, n):
        f = clamp_map()
        assert af.power(f, m + n).maps_equal(
            af.compose(af.power(f, m), af.power(f, n)))


class TestComposition:
    def test_preimage_of_composite(self):
        rng = random.Random(3)
        maps = [doubling_map(), clamp_map(),
                PiecewiseAffineMap.affine_1d(-1, 1)]
        for _ in range(30):
            f, g = rng.choice(maps), rng.choice(maps)
            a = random_interval_set(rng)
            assert af.compose(g, f).preimage(a).set_eq(
                f.preimage(g.preimage(a)))

    def test_composite_domain_shrinks(self):
        f = clamp_map().restrict(box1(0, True, 3, True))
        g = clamp_map().restrict(box1(1, True, 2, True))
        comp = af.compose(g, f)
        assert comp.domain.subset_of(f.domain)

    def test_associativity(self):
        f = clamp_map()
        g = doubling_map().restrict(box1(-2, True, 2, True))
        h = PiecewiseAffineMap.affine_1d(-1, 1)
        assert af.compose(af.compose(h, g), f).maps_equal(
            af.compose(h, af.compose(g, f)))


class TestProperness:
    def test_homeomorphic_restriction_is_proper(self):
        f = doubling_map()
        assert af.is_proper_on(f, box1("-1/4", False, "1/4", False),
                               box1("-1/2", False, "1/2", False))

    def test_clamped_piece_is_not_proper(self):
        f = clamp_map()
        assert not af.is_proper_on(f, box1(0, True, 1, False),
                                   box1(0, True, "1/2", True))

    def test_compact_domain_always_proper(self):
        rng = random.Random(11)
        for f in (doubling_map(), clamp_map(),
                  PiecewiseAffineMap.affine_1d(Fraction(1, 3), 2)):
            for _ in range(20):
                d = random_interval_set(rng).closure()
                d = d.intersect(box1(-4, True, 4, True)).intersect(f.domain)
                if d.is_empty:
                    continue
                assert af.is_proper_on(f, d, f.image(d))

    def test_escape_to_infinity_with_constant_axis(self):
        # constant map on an unbounded domain: value stays in Y
        const = PiecewiseAffineMap.affine_1d(0, 0)
        d = box1(0, True, "inf", False)
        assert not af.is_proper_on(const, d, box1(0, True, 0, True))

    def test_precondition_violations(self):
        f = doubling_map().restrict(box1(0, True, 1, True))
        with pytest.raises(ValueError):
            af.is_proper_on(f, box1(0, True, 2, True), BoxSet.full(1))
        with pytest.raises(ValueError):
            af.is_proper_on(f, box1(0, True, 1, True), box1(0, True, 1, True))


class TestEquality:
    def test_maps_equal_is_semantic(self):
        one_piece = PiecewiseAffineMap.affine_1d(1, 0, box1(0, True, 2, True))
        two_pieces = PiecewiseAffineMap.of(1, [
            Piece(box1(0, True, 1, True), (AffineRule.of(1, 0),)),
            Piece(box1(1, False, 2, True), (AffineRule.of(1, 0),)),
        ])
        assert one_piece.maps_equal(two_pieces)

    def test_different_values_not_equal(self):
        f = PiecewiseAffineMap.affine_1d(1, 0, box1(0, True, 1, True))
        g = PiecewiseAffineMap.affine_1d(2, 0, box1(0, True, 1, True))
        assert not f.maps_equal(g)

    def test_different_domains_not_equal(self):
        f = PiecewiseAffineMap.affine_1d(1, 0, box1(0, True, 1, True))
        g = PiecewiseAffineMap.affine_1d(1, 0, box1(0, True, 1, False))
        assert not f.maps_equal(g)
