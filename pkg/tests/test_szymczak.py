import itertools

import pytest

from conley_kernel import szymczak as sz


IDENT2 = sz.BasedEndo.of(["*", "p"], {"*": "*", "p": "p"})
CYCLE2 = sz.BasedEndo.of(["*", "p", "q"], {"*": "*", "p": "q", "q": "p"})
COLLAPSE = sz.BasedEndo.of(["*", "a", "b"], {"*": "*", "a": "b", "b": "b"})
ONEPT = sz.BasedEndo.of(["*", "c"], {"*": "*", "c": "c"})


class TestSzEqual:
    def test_shift_invisible_on_idempotent(self):
        idm = sz.EquivariantMap.identity(IDENT2)
        assert sz.sz_equal(sz.SzMorphism(idm, 0), sz.SzMorphism(idm, 1))

    def test_shift_visible_on_cycle(self):
        idm = sz.EquivariantMap.identity(CYCLE2)
        assert not sz.sz_equal(sz.SzMorphism(idm, 0), sz.SzMorphism(idm, 1))

    def test_reflexive(self):
        m = sz.Q(sz.EquivariantMap.endo_as_self_map(CYCLE2))
        assert sz.sz_equal(m, m)

    def test_parallel_required(self):
        with pytest.raises(ValueError):
            sz.sz_equal(sz.identity_morphism(IDENT2), sz.identity_morphism(CYCLE2))

    def test_equivalence_relation_on_enumerated_morphisms(self):
        endos = [IDENT2, COLLAPSE]
        for f, g in itertools.product(endos, repeat=2):
            ms = [sz.SzMorphism(phi, k)
                  for phi in sz.enumerate_equivariant_maps(f, g)
                  for k in range(3)]
            for a in ms:
                assert sz.sz_equal(a, a)
            for a, b in itertools.product(ms, repeat=2):
                assert sz.sz_equal(a, b) == sz.sz_equal(b, a)
            for a, b, c in itertools.product(ms, repeat=3):
                if sz.sz_equal(a, b) and sz.sz_equal(b, c):
                    assert sz.sz_equal(a, c)


class TestCompose:
    def test_identity_neutral(self):
        m = sz.Q(sz.EquivariantMap.endo_as_self_map(COLLAPSE))
        assert sz.sz_equal(sz.sz_compose(sz.identity_morphism(COLLAPSE), m), m)
        assert sz.sz_equal(sz.sz_compose(m, sz.identity_morphism(COLLAPSE)), m)

    def test_shifted_identity_cancels_endo(self):
        fh = sz.Q(sz.EquivariantMap.endo_as_self_map(COLLAPSE))
        shifted = sz.SzMorphism(sz.EquivariantMap.identity(COLLAPSE), 1)
        assert sz.sz_equal(sz.sz_compose(shifted, fh),
                           sz.identity_morphism(COLLAPSE))

    def test_constant_morphisms_compose(self):
        c1 = sz.EquivariantMap.of(CYCLE2, ONEPT, {"*": "*", "p": "*", "q": "*"})
        c2 = sz.EquivariantMap.of(ONEPT, IDENT2, {"*": "*", "c": "*"})
        comp = sz.sz_compose(sz.Q(c1), sz.Q(c2))
        assert all(comp.phi.table[x] == "*" for x in CYCLE2.points)

    def test_representative_independence(self):
        m = sz.Q(sz.EquivariantMap.endo_as_self_map(COLLAPSE))
        m_alt = sz.SzMorphism(m.phi, 2)  # same phi, higher shift
        other = sz.identity_morphism(COLLAPSE)
        left = sz.sz_compose(m, other)
        if sz.sz_equal(m, m_alt):
            assert sz.sz_equal(left, sz.sz_compose(m_alt, other))

    def test_q_respects_composition(self):
        phi = sz.EquivariantMap.of(COLLAPSE, ONEPT, {"*": "*", "a": "c", "b": "c"})
        psi = sz.EquivariantMap.of(ONEPT, IDENT2, {"*": "*", "c": "p"})
        assert sz.sz_equal(sz.Q(phi.then(psi)), sz.sz_compose(sz.Q(phi), sz.Q(psi)))

    def test_associativity_up_to_class_equality(self):
        for m1 in [sz.SzMorphism(phi, k)
                   for phi in sz.enumerate_equivariant_maps(COLLAPSE, ONEPT)
                   for k in range(2)]:
            for m2 in [sz.SzMorphism(phi, k)
                       for phi in sz.enumerate_equivariant_maps(ONEPT, IDENT2)
                       for k in range(2)]:
                for m3 in [sz.SzMorphism(phi, k)
                           for phi in sz.enumerate_equivariant_maps(IDENT2, CYCLE2)
                           for k in range(2)]:
                    lhs = sz.sz_compose(sz.sz_compose(m1, m2), m3)
                    rhs = sz.sz_compose(m1, sz.sz_compose(m2, m3))
                    assert sz.sz_equal(lhs, rhs)


class TestShiftEquivalence:
    def test_collapse_onto_fixed_point(self):
        phi = sz.EquivariantMap.of(COLLAPSE, ONEPT, {"*": "*", "a": "c", "b": "c"})
        wit = sz.is_shift_equivalence(phi)
        assert wit is not None and wit.exponent == 1
        assert wit.psi.table["c"] == "b"

    def test_cycle_does_not_collapse(self):
        phi = sz.EquivariantMap.of(CYCLE2, ONEPT, {"*": "*", "p": "c", "q": "c"})
        assert sz.is_shift_equivalence(phi) is None

    def test_identity_is_shift_equivalence(self):
        wit = sz.is_shift_equivalence(sz.EquivariantMap.identity(CYCLE2))
        assert wit is not None and wit.exponent == 0

    def test_endo_self_map_invertible_for_every_endo(self):
        for k in range(3):
            for e in sz.enumerate_based_endos(k):
                fh = sz.EquivariantMap.endo_as_self_map(e)
                assert sz.sz_is_iso(sz.Q(fh)) is not None

    def test_iso_agrees_with_shift_equivalence(self):
        endos = [IDENT2, CYCLE2, COLLAPSE, ONEPT]
        for f, g in itertools.product(endos, repeat=2):
            for phi in sz.enumerate_equivariant_maps(f, g):
                assert (sz.is_shift_equivalence(phi) is None) == \
                    (sz.sz_is_iso(sz.Q(phi)) is None)


class TestCanonicalInvariant:
    def test_attractor(self):
        e = sz.BasedEndo.of(["*", "s", "a"], {"*": "*", "s": "s", "a": "s"})
        assert sz.canonical_invariant(e) == (2, (1, 1))

    def test_cycle_with_basepoint(self):
        assert sz.canonical_invariant(CYCLE2) == (3, (1, 2))

    def test_everything_to_basepoint(self):
        e = sz.BasedEndo.of(["*", "x"], {"*": "*", "x": "*"})
        assert sz.canonical_invariant(e) == (1, (1,))

    def test_separates_shift_classes_on_small_endos(self):
        endos = [e for k in range(3) for e in sz.enumerate_based_endos(k)]
        for f in endos:
            for g in endos:
                if sz.canonical_invariant(f) == sz.canonical_invariant(g):
                    continue
                for phi in sz.enumerate_equivariant_maps(f, g):
                    assert sz.is_shift_equivalence(phi) is None
