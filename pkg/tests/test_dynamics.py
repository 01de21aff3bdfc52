import random

import pytest

from conley_kernel import dynamics as dyn
from conley_kernel import finite as fin
from conley_kernel.boxes import BoxSet
from conley_kernel.dynamics import AdmissibleTriple
from conley_kernel.suites import (
    brute_invariant_part, clamp_map, doubling_map, random_finite_system,
    random_subset, shift2d_map, step_region,
)
from conley_kernel.szymczak import BasedEndo


SPACE = fin.FiniteSpace.of(["1", "2", "3"])
CHAIN = fin.FinitePartialMap.of(SPACE, {"1": "2", "2": "3", "3": "3"})


def subset(*pts):
    return fin.FiniteSubset.of(SPACE, pts)


def box1(lo, lc, hi, hc):
    return BoxSet.interval(lo, lc, hi, hc)


UNIT = box1(-1, True, 1, True)
ORIGIN = box1(0, True, 0, True)


class TestInduced:
    def test_finite_table_filter(self):
        f = fin.FinitePartialMap.of(SPACE, {"1": "2", "2": "2", "3": "1"})
        ind = dyn.induced(f, subset("1", "2"))
        assert ind.realized == fin.FinitePartialMap.of(SPACE, {"1": "2", "2": "2"})
        assert ind.domain == subset("1", "2")

    def test_doubling_on_unit(self):
        ind = dyn.induced(doubling_map(), UNIT)
        assert ind.domain.set_eq(box1("-1/2", True, "1/2", True))

    def test_doubling_on_origin(self):
        ind = dyn.induced(doubling_map(), ORIGIN)
        assert ind.domain.set_eq(ORIGIN)


class TestDomPower:
    def test_halving(self):
        assert dyn.dom_power(doubling_map(), UNIT, 3).set_eq(
            box1("-1/8", True, "1/8", True))

    def test_zero(self):
        assert dyn.dom_power(CHAIN, subset("2"), 0) == subset("2")

    def test_forward_invariant(self):
        assert dyn.dom_power(CHAIN, subset("2", "3"), 5) == subset("2", "3")


class TestAdmissibility:
    def test_diagonal_always(self):
        for t in (AdmissibleTriple(0, 0, 0), AdmissibleTriple(1, 2, 5)):
            assert dyn.is_admissible(CHAIN, subset("1"), subset("1"), t)

    def test_doubling_example(self):
        assert dyn.is_admissible(doubling_map(), UNIT,
                                 box1(-1, False, 1, False),
                                 AdmissibleTriple(0, 1, 1))

    def test_finite_example(self):
        assert dyn.is_admissible(CHAIN, subset("2", "3"), subset("3"),
                                 AdmissibleTriple(1, 1, 1))

    def test_triple_validation(self):
        with pytest.raises(ValueError):
            AdmissibleTriple(2, 1, 3)

    def test_sum_law_random(self):
        rng = random.Random(17)
        hits = 0
        while hits < 40:
            f = random_finite_system(rng, 5)
            e = random_subset(rng, f.space)
            e2 = random_subset(rng, f.space)
            e3 = random_subset(rng, f.space)
            s1 = dyn.find_admissible(f, e, e2)
            s2 = dyn.find_admissible(f, e2, e3)
            if s1.found and s2.found:
                assert dyn.triple_sum_law_check(f, e, e2, e3,
                                                s1.triple, s2.triple)
                hits += 1

    def test_sum_law_identity_legs(self):
        assert dyn.triple_sum_law_check(
            CHAIN, subset("1"), subset("1"), subset("1"),
            AdmissibleTriple(0, 0, 0), AdmissibleTriple(0, 0, 0))

    def test_sum_law_doubling_chain(self):
        open_unit = box1(-1, False, 1, False)
        assert dyn.triple_sum_law_check(
            doubling_map(), UNIT, open_unit, open_unit,
            AdmissibleTriple(0, 1, 1), AdmissibleTriple(0, 0, 0))


class TestFindAdmissible:
    def test_chain_lex_least(self):
        res = dyn.find_admissible(CHAIN, subset("1", "2", "3"), subset("3"))
        assert res.found and res.complete
        assert res.triple == AdmissibleTriple(2, 2, 2)

    def test_equal_sets_give_zero(self):
        res = dyn.find_admissible(CHAIN, subset("1", "3"), subset("1", "3"))
        assert res.triple == AdmissibleTriple(0, 0, 0)

    def test_point_versus_unit_undecided(self):
        res = dyn.find_admissible(doubling_map(), ORIGIN, UNIT, bound=12)
        assert not res.found and not res.complete

    def test_complete_negative_on_finite(self):
        # nothing flows back into an unreachable point
        f = fin.FinitePartialMap.of(SPACE, {"1": "1", "2": "2", "3": "3"})
        res = dyn.find_admissible(f, subset("1"), subset("2"))
        assert not res.found and res.complete


class TestSearchCompleteness:
    """The finite-carrier bounds make negative answers theorems; cross-check
    them against plain big-bound brute force."""

    def test_find_admissible_agrees_with_brute_force(self):
        rng = random.Random(43)
        for _ in range(120):
            f = random_finite_system(rng, 4)
            e = random_subset(rng, f.space)
            e2 = random_subset(rng, f.space)
            complete = dyn.find_admissible(f, e, e2)
            brute = None
            for a in range(10):
                for b in range(a, 10):
                    for c in range(b, 10):
                        t = AdmissibleTriple(a, b, c)
                        if dyn.is_admissible(f, e, e2, t):
                            brute = t
                            break
                    if brute:
                        break
                if brute:
                    break
            assert complete.found == (brute is not None)
            if brute is not None:
                assert complete.triple == brute  # lexicographically least

    def test_interval_lex_minimality(self):
        # the staged search must return the same triple as a plain lex scan
        from conley_kernel.suites import interval_law_instances
        for f, subsets in interval_law_instances():
            for e in subsets:
                for e2 in subsets:
                    staged = dyn.find_admissible(f, e, e2, bound=5)
                    brute = None
                    for a in range(6):
                        for b in range(a, 6):
                            for c in range(b, 6):
                                t = AdmissibleTriple(a, b, c)
                                if dyn.is_admissible(f, e, e2, t):
                                    brute = t
                                    break
                            if brute:
                                break
                        if brute:
                            break
                    assert staged.found == (brute is not None)
                    if brute is not None:
                        assert staged.triple == brute

    def test_sim_agrees_with_brute_force(self):
        rng = random.Random(53)
        for _ in range(120):
            f = random_finite_system(rng, 4)
            e = random_subset(rng, f.space)
            e2 = random_subset(rng, f.space)
            res = dyn.sim_f(f, e, e2)
            ca = dyn.carrier_for(f)
            brute = any(
                ca.is_subset(dyn.dom_power(f, e, b), dyn.preimage_n(f, e2, a))
                for a in range(10) for b in range(a, 10)) and any(
                ca.is_subset(dyn.dom_power(f, e2, b), dyn.preimage_n(f, e, a))
                for a in range(10) for b in range(a, 10))
            assert res.is_equivalent == brute


class TestCrossMap:
    def test_diagonal_power(self):
        ca = dyn.carrier_for(CHAIN)
        e = subset("2", "3")
        cm = dyn.cross_map(CHAIN, e, e, AdmissibleTriple(0, 1, 2))
        assert ca.maps_equal(cm.realized, dyn.induced_power(CHAIN, e, 2))

    def test_finite_collapse(self):
        cm = dyn.cross_map(CHAIN, subset("1", "2", "3"), subset("3"),
                           AdmissibleTriple(2, 2, 2))
        assert cm.realized == fin.FinitePartialMap.of(
            SPACE, {"1": "3", "2": "3", "3": "3"})

    def test_doubling_domain(self):
        cm = dyn.cross_map(doubling_map(), UNIT, box1(-1, False, 1, False),
                           AdmissibleTriple(0, 1, 1))
        assert cm.domain.set_eq(box1("-1/2", False, "1/2", False))

    def test_inadmissible_rejected(self):
        with pytest.raises(ValueError):
            dyn.cross_map(CHAIN, subset("1"), subset("2"),
                          AdmissibleTriple(0, 0, 0))


class TestSim:
    def test_reflexive(self):
        res = dyn.sim_f(CHAIN, subset("1", "2"), subset("1", "2"))
        assert res.is_equivalent and res.forward == (0, 0)

    def test_chain_example(self):
        res = dyn.sim_f(CHAIN, subset("1", "2", "3"), subset("3"))
        assert res.is_equivalent
        assert res.forward == (2, 2) and res.backward == (0, 0)

    def test_step_regions(self):
        res = dyn.sim_f(shift2d_map(), step_region(3, -3), step_region(0, 0),
                        bound=6)
        assert res.is_equivalent
        assert res.forward[1] - res.forward[0] == 3
        assert res.backward[1] - res.backward[0] == 3

    def test_symmetry_and_transitivity_random(self):
        rng = random.Random(23)
        for _ in range(60):
            f = random_finite_system(rng, 5)
            e = random_subset(rng, f.space)
            e2 = random_subset(rng, f.space)
            e3 = random_subset(rng, f.space)
            r12 = dyn.sim_f(f, e, e2)
            r21 = dyn.sim_f(f, e2, e)
            assert r12.is_equivalent == r21.is_equivalent
            r23 = dyn.sim_f(f, e2, e3)
            if r12.is_equivalent and r23.is_equivalent:
                assert dyn.sim_f(f, e, e3).is_equivalent

    def test_interval_unknown(self):
        res = dyn.sim_f(doubling_map(), ORIGIN, UNIT, bound=8)
        assert res.status == "unknown"


class TestCompactifiability:
    def test_origin(self):
        assert dyn.is_compactifiable(doubling_map(), ORIGIN)

    def test_unit_fails_open_domain(self):
        checks = dict(dyn.weak_compactifiability_checks(doubling_map(), UNIT))
        assert checks["induced map proper"]
        assert not checks["induced domain open in E"]

    def test_finite_always(self):
        rng = random.Random(29)
        for _ in range(30):
            f = random_finite_system(rng, 6)
            assert dyn.is_compactifiable(f, random_subset(rng, f.space))


class TestInvariantPart:
    def test_small_example(self):
        f = fin.FinitePartialMap.of(SPACE, {"1": "2", "2": "2", "3": "1"})
        assert dyn.invariant_part(f, subset("1", "2")) == subset("2")

    def test_identity_keeps_everything(self):
        assert dyn.invariant_part(fin.identity_map(SPACE),
                                  subset("1", "3")) == subset("1", "3")

    def test_matches_brute_force(self):
        rng = random.Random(31)
        for _ in range(150):
            f = random_finite_system(rng, 5)
            e = random_subset(rng, f.space)
            assert dyn.invariant_part(f, e).members == \
                brute_invariant_part(f, e).members

    def test_result_is_invariant(self):
        rng = random.Random(37)
        for _ in range(80):
            f = random_finite_system(rng, 6)
            i = dyn.invariant_part(f, random_subset(rng, f.space))
            assert fin.image(f, i).members == i.members

    def test_doubling_closed_form(self):
        got = dyn.invariant_part_exact(doubling_map(), UNIT)
        assert not isinstance(got, dyn.Undecided)
        assert got.set_eq(ORIGIN)

    def test_contraction_closed_form(self):
        from conley_kernel.suites import contraction_map
        got = dyn.invariant_part_exact(contraction_map(), UNIT)
        assert got.set_eq(ORIGIN)

    def test_identity_interval(self):
        from conley_kernel.affine import PiecewiseAffineMap
        ident = PiecewiseAffineMap.identity(1)
        assert dyn.invariant_part_exact(ident, UNIT).set_eq(UNIT)

    def test_translation_kills_bounded(self):
        from conley_kernel.affine import PiecewiseAffineMap
        trans = PiecewiseAffineMap.affine_1d(1, 1)
        assert dyn.invariant_part_exact(trans, UNIT).is_empty

    def test_clamp_fixed_point(self):
        got = dyn.invariant_part_exact(clamp_map(), box1(0, True, 2, True))
        assert got.set_eq(ORIGIN)

    def test_outer_contains_exact(self):
        f = doubling_map()
        outer = dyn.invariant_part_outer(f, UNIT, 4)
        assert ORIGIN.subset_of(outer)

    def test_shift_region_undecided(self):
        got = dyn.invariant_part_exact(shift2d_map(), step_region(1, 1), cap=8)
        assert isinstance(got, dyn.Undecided)
        assert got.outer is not None


class TestOnePoint:
    def test_table_formula(self):
        f = fin.FinitePartialMap.of(SPACE, {"1": "2"})
        endo = dyn.one_point(f, subset("1", "2"))
        assert endo.table == {"1": "2", "2": "*", "*": "*"}

    def test_attractor(self):
        sp = fin.FiniteSpace.of(["s", "a"])
        f = fin.FinitePartialMap.of(sp, {"s": "s", "a": "s"})
        endo = dyn.one_point(f, fin.FiniteSubset.of(sp, ["s", "a"]))
        assert endo.table == {"s": "s", "a": "s", "*": "*"}
        assert isinstance(endo, BasedEndo)

    def test_rejects_noncompactifiable(self):
        with pytest.raises(ValueError):
            dyn.one_point(doubling_map(), UNIT)

    def test_symbolic_on_interval(self):
        sym = dyn.one_point(doubling_map(), ORIGIN)
        assert isinstance(sym, dyn.SymbolicBasedEndo)
        assert sym.induced.domain.set_eq(ORIGIN)
