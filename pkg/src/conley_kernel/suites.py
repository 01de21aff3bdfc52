"""Reproducible verification suites behind `conley-kernel verify`.

Each suite is deterministic given its seed and returns a result object with
one line per group of checks; any counterexample fails the suite.  The same
functions back the pytest acceptance tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import affine as af
from . import conley as co
from . import dynamics as dyn
from . import finite as fin
from . import semiflow as sf
from . import szymczak as sz
from .affine import AffineRule, Piece, PiecewiseAffineMap
from .boxes import BoxSet, Cut, Interval, NEG_INF, POS_INF


@dataclass
class SuiteResult:
    name: str
    passed: bool = True
    lines: list = field(default_factory=list)

    def note(self, line: str):
        self.lines.append(line)

    def fail(self, line: str):
        self.passed = False
        self.lines.append("COUNTEREXAMPLE: " + line)

    def check(self, ok: bool, line: str):
        if ok:
            self.note(line)
        else:
            self.fail(line)
        return ok


# ---------------------------------------------------------------------------
# generators

def random_finite_system(rng: random.Random, max_points: int = 8):
    n = rng.randint(1, max_points)
    space = fin.FiniteSpace.of(str(i) for i in range(1, n + 1))
    table = {}
    for p in space.points:
        if rng.randint(1, 10) <= 8:
            table[p] = rng.choice(space.points)
    return fin.FinitePartialMap.of(space, table)


def random_subset(rng: random.Random, space: fin.FiniteSpace) -> fin.FiniteSubset:
    return fin.FiniteSubset.of(
        space, (p for p in space.points if rng.randint(1, 10) <= 6))


def random_interval_set(rng: random.Random, max_parts: int = 3) -> BoxSet:
    ivs = []
    for _ in range(rng.randint(0, max_parts)):
        a = Fraction(rng.randint(-8, 8), rng.choice((1, 2, 4)))
        b = a + Fraction(rng.randint(0, 6), rng.choice((1, 2)))
        if a == b:
            ivs.append(Interval.point(a))
        else:
            ivs.append(Interval.make(a, rng.randint(0, 1) == 0, b, rng.randint(0, 1) == 0))
    return BoxSet.from_intervals(ivs)


def doubling_map() -> PiecewiseAffineMap:
    return PiecewiseAffineMap.affine_1d(2, 0)


def contraction_map() -> PiecewiseAffineMap:
    return PiecewiseAffineMap.affine_1d(Fraction(1, 2), 0)


def clamp_map() -> PiecewiseAffineMap:
    """x -> max(x - 1, 0) as a two-piece map on the line."""
    return PiecewiseAffineMap.of(1, [
        Piece(BoxSet.interval("-inf", False, 1, False), (AffineRule.of(0, 0),)),
        Piece(BoxSet.interval(1, True, "inf", False), (AffineRule.of(1, -1),)),
    ])


def shift2d_map() -> PiecewiseAffineMap:
    return PiecewiseAffineMap.single((AffineRule.of(1, 0), AffineRule.of(1, 1)))


def step_region(left_height, right_height) -> BoxSet:
    """{(x, y) : y < h(x)} for the step function h (split at x = 0)."""
    return BoxSet.of(2, [
        (Interval(NEG_INF, Cut.finite(0), False, False),
         Interval(NEG_INF, Cut.finite(Fraction(left_height)), False, False)),
        (Interval(Cut.finite(0), POS_INF, True, False),
         Interval(NEG_INF, Cut.finite(Fraction(right_height)), False, False)),
    ])


def interval_law_instances():
    """Curated (map, subsets) families: doubling, shift, clamped."""
    dbl = doubling_map()
    yield dbl, [BoxSet.interval(-1, True, 1, True),
                BoxSet.interval(-1, False, 1, False),
                BoxSet.interval("-1/2", False, "1/2", False),
                BoxSet.interval(0, True, 0, True)]
    sh = shift2d_map()
    yield sh, [step_region(3, -3), step_region(0, 0), step_region(1, 1)]
    cl = clamp_map()
    yield cl, [BoxSet.interval(0, True, 2, True),
               BoxSet.interval(0, True, 1, True),
               BoxSet.interval(0, True, "1/2", True)]


def clamp_flow() -> sf.ExactSemiflow:
    return sf.ExactSemiflow.of([sf.AxisRule.floor(1, 0)])


def translation_flow() -> sf.ExactSemiflow:
    return sf.ExactSemiflow.of([sf.AxisRule.translation(1)])


def flow_law_instances():
    fl = clamp_flow()
    yield fl, [BoxSet.interval(0, True, 1, True),
               BoxSet.interval(0, True, "1/2", True),
               BoxSet.interval(0, True, "1/4", True)]
    tr = translation_flow()
    yield tr, [BoxSet.interval(0, True, 1, True),
               BoxSet.interval(2, True, 3, True),
               BoxSet.interval("-1/2", True, "7/2", True)]


# ---------------------------------------------------------------------------
# brute-force oracles

def brute_invariant_part(f: fin.FinitePartialMap,
                         e: fin.FiniteSubset) -> fin.FiniteSubset:
    """Union of all invariant subsets of E, by subset enumeration."""
    members = e.ordered()
    best: set = set()
    for mask in range(1 << len(members)):
        cand = {members[i] for i in range(len(members)) if mask >> i & 1}
        if not cand <= set(f.table):
            continue
        if {f.table[x] for x in cand} == cand:
            best |= cand
    return fin.FiniteSubset.of(f.space, best)


def brute_preperiod_period(f: fin.FinitePartialMap) -> tuple[int, int]:
    seq = [fin.identity_map(f.space)]
    while True:
        nxt = fin.compose(f, seq[-1])
        for i, old in enumerate(seq):
            if old == nxt:
                return i, len(seq) - i
        seq.append(nxt)


def all_partial_maps(n: int):
    space = fin.FiniteSpace.of(str(i) for i in range(1, n + 1))
    choices = list(space.points) + [None]
    import itertools
    for combo in itertools.product(choices, repeat=n):
        table = {p: c for p, c in zip(space.points, combo) if c is not None}
        yield fin.FinitePartialMap.of(space, table)


def all_subsets(space: fin.FiniteSpace):
    import itertools
    for mask in range(1 << len(space.points)):
        yield fin.FiniteSubset.of(
            space, (p for i, p in enumerate(space.points) if mask >> i & 1))


# ---------------------------------------------------------------------------
# suites

def suite_finite_algebra(trials=200, seed=7, bound=None) -> SuiteResult:
    res = SuiteResult("finite-algebra")
    rng = random.Random(seed)
    for _ in range(trials):
        f = random_finite_system(rng, 6)
        g = random_finite_system(rng, 1)
        g = fin.FinitePartialMap.of(f.space, {
            p: rng.choice(f.space.points) for p in f.space.points
            if rng.randint(1, 10) <= 8})
        h = fin.FinitePartialMap.of(f.space, {
            p: rng.choice(f.space.points) for p in f.space.points
            if rng.randint(1, 10) <= 8})
        if fin.compose(fin.compose(h, g), f) != fin.compose(h, fin.compose(g, f)):
            res.fail(f"associativity: {f}, {g}, {h}")
        m, n = rng.randint(0, 6), rng.randint(0, 6)
        if fin.power(f, m + n) != fin.compose(fin.power(f, m), fin.power(f, n)):
            res.fail(f"power law: {f}, m={m}, n={n}")
        e = random_subset(rng, f.space)
        if fin.preimage(f, e, m + n) != fin.preimage(f, fin.preimage(f, e, n), m):
            res.fail(f"preimage law: {f}, m={m}, n={n}")
    res.note(f"associativity, power and preimage laws on {trials} random systems")
    for _ in range(60):
        f = random_finite_system(rng, 6)
        if fin.power_preperiod_period(f) != brute_preperiod_period(f):
            res.fail(f"preperiod/period mismatch for {f}")
    res.note("preperiod/period finder agrees with brute force (60 systems)")
    return res


def _grid_points(step=Fraction(1, 64), lo=-2, hi=2):
    n = int((hi - lo) / step)
    return [Fraction(lo) + step * k for k in range(n + 1)]


def suite_box_algebra(trials=120, seed=11, bound=None) -> SuiteResult:
    res = SuiteResult("box-algebra")
    rng = random.Random(seed)
    for _ in range(trials):
        a = random_interval_set(rng)
        b = random_interval_set(rng)
        c = random_interval_set(rng)
        lhs = a.intersect(b.union(c))
        rhs = a.intersect(b).union(a.intersect(c))
        if not lhs.set_eq(rhs):
            res.fail(f"distributivity: {a}, {b}, {c}")
        if not a.difference(b).set_eq(a.intersect(b.complement())):
            res.fail(f"difference law: {a}, {b}")
        if not a.union(b).difference(b).set_eq(a.difference(b)):
            res.fail(f"union/difference: {a}, {b}")
        if not a.closure().closure().set_eq(a.closure()):
            res.fail(f"closure idempotent: {a}")
        if not a.interior().interior().set_eq(a.interior()):
            res.fail(f"interior idempotent: {a}")
        if not a.interior().subset_of(a) or not a.subset_of(a.closure()):
            res.fail(f"interior <= A <= closure: {a}")
        if a.is_bounded and a.is_closed() != a.is_compact():
            res.fail(f"compact <=> closed and bounded: {a}")
        if a.interior().set_eq(a) and not a.is_locally_compact():
            res.fail(f"open set not locally compact: {a}")
        if a.is_compact() and not a.is_locally_compact():
            res.fail(f"compact set not locally compact: {a}")
        if a.is_locally_compact() and b.is_locally_compact() and \
           not a.intersect(b).is_locally_compact():
            res.fail(f"locally compact intersection: {a}, {b}")
    res.note(f"boolean and topology laws on {trials} random 1-D sets")
    grid = _grid_points()
    for _ in range(30):
        a = random_interval_set(rng)
        b = random_interval_set(rng)
        inter, union, diff = a.intersect(b), a.union(b), a.difference(b)
        for x in grid:
            ina, inb = a.contains_point([x]), b.contains_point([x])
            if inter.contains_point([x]) != (ina and inb) or \
               union.contains_point([x]) != (ina or inb) or \
               diff.contains_point([x]) != (ina and not inb):
                res.fail(f"raster oracle at {x}: {a}, {b}")
                break
    res.note("rasterized membership oracle at resolution 1/64 (30 pairs)")
    return res


def suite_pam_laws(trials=80, seed=13, bound=None) -> SuiteResult:
    res = SuiteResult("pam-laws")
    rng = random.Random(seed)
    maps = [doubling_map(), contraction_map(), clamp_map(),
            PiecewiseAffineMap.affine_1d(-1, 0),
            PiecewiseAffineMap.affine_1d(1, 1)]
    for _ in range(trials):
        f = rng.choice(maps)
        g = rng.choice(maps)
        a = random_interval_set(rng)
        lhs = af.compose(g, f).preimage(a)
        rhs = f.preimage(g.preimage(a))
        if not lhs.set_eq(rhs):
            res.fail(f"preimage of composite: {a}")
        d = random_interval_set(rng).intersect(
            BoxSet.interval(-4, True, 4, True)).closure()
        d = d.intersect(f.domain)
        if not d.is_empty and not af.is_proper_on(f, d, f.image(d)):
            res.fail(f"compact domain not proper: {d}")
    res.note(f"composite-preimage and compact-properness laws ({trials} trials)")
    return res


def _laws_for_pair(res, f, e, e2, t):
    ca = dyn.carrier_for(f)
    cm = dyn.cross_map(f, e, e2, t)
    # identity/power form on the diagonal
    if ca.sets_equal(e, e2):
        if not ca.maps_equal(cm.realized, dyn.induced_power(f, e, t.c)):
            res.fail(f"diagonal cross map is not the induced power: {t}")
    # equivariance
    lhs = ca.compose(cm.realized, dyn.induced(f, e).realized)
    rhs = ca.compose(dyn.induced(f, e2).realized, cm.realized)
    if not ca.maps_equal(lhs, rhs):
        res.fail(f"equivariance fails for {t}")


def _composition_laws(res, f, e, e2, e3, t, t2):
    ca = dyn.carrier_for(f)
    if not dyn.triple_sum_law_check(f, e, e2, e3, t, t2):
        res.fail(f"sum triple not admissible: {t}, {t2}")
        return
    m1 = dyn.cross_map(f, e, e2, t)
    m2 = dyn.cross_map(f, e2, e3, t2)
    msum = dyn.cross_map(f, e, e3, t + t2)
    if not ca.maps_equal(ca.compose(m2.realized, m1.realized), msum.realized):
        res.fail(f"composition identity fails: {t}, {t2}")


def _interchange_law(res, f, e, e2, t, t2):
    # callers pass c-inflated copies of admissible triples, which stay
    # admissible (the second inclusion is monotone in its depth)
    ca = dyn.carrier_for(f)
    if not dyn.is_admissible(f, e, e2, t2):
        res.fail(f"inflated triple not admissible: {t2}")
        return
    m1 = dyn.cross_map(f, e, e2, t)
    m2 = dyn.cross_map(f, e, e2, t2)
    lhs = ca.compose(m1.realized, dyn.induced_power(f, e, t2.c))
    rhs = ca.compose(m2.realized, dyn.induced_power(f, e, t.c))
    if not ca.maps_equal(lhs, rhs):
        res.fail(f"interchange fails: {t}, {t2}")


def suite_thm_composition(trials=500, seed=7, bound=None) -> SuiteResult:
    res = SuiteResult("thm-4-composition")
    rng = random.Random(seed)
    diag = pairs = chains = 0
    for _ in range(trials):
        f = random_finite_system(rng, 8)
        e = random_subset(rng, f.space)
        a = rng.randint(0, 2)
        b = a + rng.randint(0, 2)
        c = b + rng.randint(0, 2)
        t_diag = dyn.AdmissibleTriple(a, b, c)
        _laws_for_pair(res, f, e, e, t_diag)
        diag += 1
        e2 = random_subset(rng, f.space)
        s1 = dyn.find_admissible(f, e, e2)
        if not s1.found:
            continue
        _laws_for_pair(res, f, e, e2, s1.triple)
        pairs += 1
        _interchange_law(res, f, e, e2, s1.triple,
                         s1.triple + dyn.AdmissibleTriple(0, 0, 1))
        _interchange_law(res, f, e, e2, s1.triple,
                         s1.triple + dyn.AdmissibleTriple(0, 0, 2))
        e3 = random_subset(rng, f.space)
        s2 = dyn.find_admissible(f, e2, e3)
        if s2.found:
            _composition_laws(res, f, e, e2, e3, s1.triple, s2.triple)
            chains += 1
    res.note(f"finite systems: {diag} diagonal, {pairs} cross, {chains} chained "
             f"instances of the four identities")
    for f, subsets in interval_law_instances():
        for e in subsets:
            _laws_for_pair(res, f, e, e, dyn.AdmissibleTriple(0, 1, 2))
            for e2 in subsets:
                s1 = dyn.find_admissible(f, e, e2, bound=6)
                if not s1.found:
                    continue
                _laws_for_pair(res, f, e, e2, s1.triple)
                _interchange_law(res, f, e, e2, s1.triple,
                                 s1.triple + dyn.AdmissibleTriple(0, 0, 1))
                for e3 in subsets:
                    s2 = dyn.find_admissible(f, e2, e3, bound=6)
                    if s2.found:
                        _composition_laws(res, f, e, e2, e3,
                                          s1.triple, s2.triple)
    res.note("curated interval families (doubling, shift, clamped)")
    return res


def suite_thm_properness(trials=300, seed=19, bound=None) -> SuiteResult:
    res = SuiteResult("thm-4-properness")
    rng = random.Random(seed)
    count = 0
    for _ in range(trials):
        f = random_finite_system(rng, 8)
        e = random_subset(rng, f.space)
        e2 = random_subset(rng, f.space)
        if not (dyn.is_weakly_compactifiable(f, e)
                and dyn.is_weakly_compactifiable(f, e2)):
            continue
        s = dyn.find_admissible(f, e, e2)
        if not s.found:
            continue
        cm = dyn.cross_map(f, e, e2, s.triple)
        ca = dyn.carrier_for(f)
        if not ca.is_proper_on(ca.power(f, s.triple.c), cm.domain, e2):
            res.fail(f"cross map not proper: {f}, {s.triple}")
        if not ca.is_open_in(cm.domain, e):
            res.fail(f"cross map not openly defined: {f}, {s.triple}")
        count += 1
    res.note(f"finite carrier: {count} weakly compactifiable pairs checked")
    count = 0
    for f, subsets in interval_law_instances():
        for e in subsets:
            if not dyn.is_weakly_compactifiable(f, e):
                continue
            for e2 in subsets:
                if not dyn.is_weakly_compactifiable(f, e2):
                    continue
                s = dyn.find_admissible(f, e, e2, bound=6)
                if not s.found:
                    continue
                cm = dyn.cross_map(f, e, e2, s.triple)
                if not af.is_proper_on(af.power(f, s.triple.c), cm.domain, e2):
                    res.fail(f"interval cross map not proper: {e}, {e2}")
                if not cm.domain.is_open_in(e):
                    res.fail(f"interval cross map not openly defined: {e}, {e2}")
                count += 1
    res.note(f"interval carrier: {count} weakly compactifiable pairs checked")
    return res


def suite_szymczak_oracle(trials=None, seed=None, bound=None,
                          max_points: int = 3) -> SuiteResult:
    """Exhaustive localization oracle over based endos with <= max_points+1
    points (basepoint included): shift equivalence iff Q-image invertible."""
    res = SuiteResult("szymczak-oracle")
    endos = [e for k in range(max_points + 1)
             for e in sz.enumerate_based_endos(k)]
    checked = 0
    mismatches = 0
    invariant_violations = 0
    for f in endos:
        fh = sz.EquivariantMap.endo_as_self_map(f)
        if sz.sz_is_iso(sz.Q(fh)) is None:
            res.fail(f"Q(f-hat) not invertible for {f}")
    res.note(f"Q(f-hat) invertible for all {len(endos)} endos")
    for f in endos:
        for g in endos:
            for phi in sz.enumerate_equivariant_maps(f, g):
                wit = sz.is_shift_equivalence(phi)
                inv = sz.sz_is_iso(sz.Q(phi))
                if (wit is None) != (inv is None):
                    mismatches += 1
                    res.fail(f"oracle mismatch for {phi} between {f} and {g}")
                if wit is not None and \
                        sz.canonical_invariant(f) != sz.canonical_invariant(g):
                    invariant_violations += 1
                    res.fail(f"canonical invariant differs on shift-equivalent "
                             f"{f} and {g}")
                checked += 1
    res.note(f"shift-equivalence vs Q-iso agreement on {checked} equivariant maps")
    res.note(f"canonical-invariant consistency: {invariant_violations} violations")
    return res


def suite_invariant_part_oracle(trials=60, seed=23, bound=None) -> SuiteResult:
    res = SuiteResult("invariant-part-oracle")
    checked = 0
    for n in range(1, 5):
        for f in all_partial_maps(n):
            for e in all_subsets(f.space):
                got = dyn.invariant_part(f, e)
                want = brute_invariant_part(f, e)
                if got.members != want.members:
                    res.fail(f"invariant part mismatch: {f}, E={e}")
                ca = dyn.carrier_for(f)
                if not ca.sets_equal(ca.image(f, got), got):
                    res.fail(f"invariant part not invariant: {f}, E={e}")
                checked += 1
    res.note(f"exhaustive agreement on {checked} instances with |X| <= 4")
    rng = random.Random(seed)
    for _ in range(trials):
        n = rng.choice((5, 6))
        space = fin.FiniteSpace.of(str(i) for i in range(1, n + 1))
        table = {p: rng.choice(space.points) for p in space.points
                 if rng.randint(1, 20) <= 17}
        f = fin.FinitePartialMap.of(space, table)
        e = random_subset(rng, space)
        if dyn.invariant_part(f, e).members != brute_invariant_part(f, e).members:
            res.fail(f"random mismatch at |X|={n}: {f}, E={e}")
    res.note(f"random agreement at |X| in (5, 6): {trials} instances")
    return res


def suite_simple_system(trials=None, seed=None, bound=None) -> SuiteResult:
    res = SuiteResult("simple-system")
    space = fin.FiniteSpace.of(["s", "a"])
    f = fin.FinitePartialMap.of(space, {"s": "s", "a": "s"})
    s_set = fin.FiniteSubset.of(space, ["s"])
    nbhds = [fin.FiniteSubset.of(space, ["s"]), fin.FiniteSubset.of(space, ["s", "a"])]
    rep = co.verify_simple_system(f, s_set, nbhds)
    res.check(isinstance(rep, co.ConleyIndexReport) and rep.ok,
              "finite attractor model: all laws and invertibility verified")
    if isinstance(rep, co.ConleyIndexReport):
        invs = {n.canonical_invariant for n in rep.neighbourhoods}
        res.check(invs == {(2, (1, 1))},
                  f"attractor canonical invariants agree: {sorted(invs)}")
    dbl = doubling_map()
    s0 = BoxSet.interval(0, True, 0, True)
    rep2 = co.verify_simple_system(
        dbl, s0, [BoxSet.interval("-1/2", False, "1/2", False),
                  BoxSet.interval("-1/4", False, "1/4", False)], bound=8)
    res.check(isinstance(rep2, co.ConleyIndexReport) and rep2.ok,
              "interval repeller model: all laws and invertibility verified")
    return res


def suite_cont_laws(trials=None, seed=None, bound=None) -> SuiteResult:
    res = SuiteResult("cont-laws")
    for flow, subsets in flow_law_instances():
        for t, u in ((Fraction(1), Fraction(2)), (Fraction(1, 2), Fraction(1, 3))):
            lhs = af.compose(sf.time_map(flow, t), sf.time_map(flow, u))
            if not lhs.maps_equal(sf.time_map(flow, t + u)):
                res.fail(f"semigroup: t={t}, u={u}")
        for e in subsets:
            for tt in (Fraction(1, 2), Fraction(2)):
                d1 = sf.dom_interval(flow, e, tt)
                d2 = sf.dom_interval(flow, e, 2 * tt)
                if not d2.subset_of(d1):
                    res.fail(f"swept domain not decreasing: {e}, t={tt}")
                sampled = e
                for k in range(1, 65):
                    sampled = sampled.intersect(
                        sf.time_map(flow, tt * k / 64).preimage(e))
                if not d1.subset_of(sampled):
                    res.fail(f"swept domain not inside sampled bound: {e}")
            for e2 in subsets:
                s1 = sf.find_admissible_cont(flow, e, e2, bound=6)
                if not s1.found:
                    continue
                cm1 = sf.cross_map_cont(flow, e, e2, s1.triple)
                lhs = af.compose(cm1.realized, sf.induced_power(flow, e, s1.triple.c))
                rhs = af.compose(sf.induced_power(flow, e2, s1.triple.c),
                                 cm1.realized)
                if not lhs.maps_equal(rhs):
                    res.fail(f"continuous equivariance: {e} -> {e2}")
                for e3 in subsets:
                    s2 = sf.find_admissible_cont(flow, e2, e3, bound=6)
                    if not s2.found:
                        continue
                    t_sum = s1.triple + s2.triple
                    if not sf.is_admissible_cont(flow, e, e3, t_sum):
                        res.fail(f"continuous sum triple: {s1.triple}, {s2.triple}")
                        continue
                    cm2 = sf.cross_map_cont(flow, e2, e3, s2.triple)
                    msum = sf.cross_map_cont(flow, e, e3, t_sum)
                    if not af.compose(cm2.realized, cm1.realized).maps_equal(
                            msum.realized):
                        res.fail(f"continuous composition: {s1.triple}, {s2.triple}")
    res.note("semigroup, swept-domain, equivariance and composition identities "
             "on the clamped and translation fixtures")
    return res


def suite_cont_discriminator(trials=None, seed=None, bound=None) -> SuiteResult:
    res = SuiteResult("cont-discriminator")
    flow = clamp_flow()
    e_good = BoxSet.interval(0, True, 1, True)
    e_bad = BoxSet.interval(0, True, 1, False)
    s0 = BoxSet.interval(0, True, 0, True)
    cert = sf.is_index_nbhd_cont(flow, e_good, s0)
    res.check(isinstance(cert, co.IndexNbhdCertificate),
              "[0,1] certified as a continuous index neighbourhood of {0}")
    res.check(sf.is_finite_time_proper(flow, e_bad) is False,
              "[0,1) fails finite-time properness")
    res.check(sf.is_openly_defined_cont(flow, e_bad) is True,
              "[0,1) is openly defined (failure is properness alone)")
    rej = sf.is_index_nbhd_cont(flow, e_bad, s0)
    res.check(isinstance(rej, co.Failure) and "finite-time proper" in rej.reason,
              f"[0,1) rejected specifically for finite-time properness")
    inv = sf.invariant_part_F(flow, e_good)
    res.check(not isinstance(inv, dyn.Undecided) and
              inv.set_eq(s0), f"invariant part of [0,1] is {{0}}: {inv!r}")
    sampled = dyn.invariant_part_exact(sf.time_map(flow, Fraction(1, 2)), e_good)
    res.check(not isinstance(sampled, dyn.Undecided) and sampled.set_eq(inv),
              "sampled-time oracle agrees with the closed form")
    return res


def suite_worked_models(trials=None, seed=None, bound=None) -> SuiteResult:
    res = SuiteResult("worked-models")
    dbl = doubling_map()
    e0 = BoxSet.interval(0, True, 0, True)
    e1 = BoxSet.interval(-1, True, 1, True)
    s0 = e0
    res.check(dyn.is_compactifiable(dbl, e0), "doubling: {0} compactifiable")
    res.check(not dyn.is_weakly_compactifiable(dbl, e1),
              "doubling: [-1,1] rejected (induced domain not open)")
    built = co.construct_index_nbhd(dbl, s0, e1, bound=8)
    ok = isinstance(built, co.ConstructedNbhd) and \
        built.subset.set_eq(BoxSet.interval("-1/2", False, "1/2", False)) and \
        built.triple == dyn.AdmissibleTriple(0, 1, 1)
    res.check(ok, f"doubling: constructed index nbhd "
                  f"{getattr(built, 'subset', built)!r} with triple "
                  f"{getattr(built, 'triple', None)}")
    if ok:
        sim = dyn.sim_f(dbl, built.subset, built.compact_seed, bound=8)
        res.check(sim.is_equivalent,
                  f"doubling: constructed set equivalent to seed "
                  f"(witnesses {sim.forward}, {sim.backward})")
    shift = shift2d_map()
    e_phi = step_region(3, -3)
    e_psi = step_region(0, 0)
    sim = dyn.sim_f(shift, e_phi, e_psi, bound=6)
    res.check(sim.is_equivalent and sim.forward[1] - sim.forward[0] == 3
              and sim.backward[1] - sim.backward[0] == 3,
              f"shift: step regions equivalent with witnesses {sim.forward}, "
              f"{sim.backward} (bounded difference 3)")
    res.check(dyn.is_compactifiable(shift, e_phi),
              "shift: step region compactifiable")
    res.check(not e_phi.closure().is_compact(),
              "shift: no step region is relatively compact")
    return res


SUITES = {
    "finite-algebra": suite_finite_algebra,
    "box-algebra": suite_box_algebra,
    "pam-laws": suite_pam_laws,
    "thm-4-composition": suite_thm_composition,
    "thm-4-properness": suite_thm_properness,
    "szymczak-oracle": suite_szymczak_oracle,
    "invariant-part-oracle": suite_invariant_part_oracle,
    "simple-system": suite_simple_system,
    "cont-laws": suite_cont_laws,
    "cont-discriminator": suite_cont_discriminator,
    "worked-models": suite_worked_models,
}


def run_suite(name: str, trials=None, seed=None, bound=None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(name)
    kwargs = {}
    if trials is not None:
        kwargs["trials"] = trials
    if seed is not None:
        kwargs["seed"] = seed
    if bound is not None:
        kwargs["bound"] = bound
    return SUITES[name](**kwargs)
