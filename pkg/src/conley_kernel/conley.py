"""Isolating and index neighbourhoods, and the Conley functor.

Certificates are replayable: each records the named checks with their inputs
in printable form, so a third party can re-run every condition without
trusting the tool.  On the interval carrier, index objects stay symbolic
as pairs (E, f_E); morphism-level laws are verified as exact partial-map
identities, never by materializing one-point compactifications.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import szymczak as sz
from .carriers import carrier_for
from .dynamics import (
    AdmissibleTriple, CrossMap, Undecided, cross_map, compactifiability_checks,
    dom_power, find_admissible, induced_power, invariant_part_exact, one_point,
    preimage_n,
)


@dataclass(frozen=True)
class Check:
    name: str
    detail: str
    ok: bool

    def __repr__(self):
        mark = "ok" if self.ok else "FAIL"
        return f"[{mark}] {self.name}: {self.detail}"


@dataclass(frozen=True)
class Failure:
    reason: str
    checks: tuple[Check, ...] = ()

    def __bool__(self):
        return False


@dataclass(frozen=True)
class IsolatingCertificate:
    subset: object
    invariant_set: object
    checks: tuple[Check, ...]

    def __bool__(self):
        return True


@dataclass(frozen=True)
class IndexNbhdCertificate:
    isolating: IsolatingCertificate
    compactifiability: tuple[Check, ...]

    @property
    def subset(self):
        return self.isolating.subset

    @property
    def invariant_set(self):
        return self.isolating.invariant_set

    @property
    def checks(self) -> tuple[Check, ...]:
        return self.isolating.checks + self.compactifiability

    def __bool__(self):
        return True


def _check_invariant_set(f, s):
    ca = carrier_for(f)
    ca.check_set(f, s)
    if not ca.is_subset(s, ca.map_domain(f)):
        raise ValueError("S is not invariant: S is not contained in Dom f")
    if not ca.sets_equal(ca.image(f, s), s):
        raise ValueError("S is not invariant: f(S) != S")


def is_isolating(f, e, s, cap: int | None = None):
    """IsolatingCertificate, a named Failure, or Undecided (interval only)."""
    ca = carrier_for(f)
    _check_invariant_set(f, s)
    ca.check_set(f, e)

    checks = []
    nbhd = ca.is_subset(s, ca.interior(e))
    checks.append(Check("neighbourhood", f"S contained in interior of E={e!r}", nbhd))
    if not nbhd:
        return Failure("E is not a neighbourhood of S", tuple(checks))

    clo = ca.closure(e)
    relcpt = ca.is_compact(clo)
    checks.append(Check("relatively compact", f"closure(E)={clo!r} compact", relcpt))
    if not relcpt:
        return Failure("E is not relatively compact", tuple(checks))

    in_dom = ca.is_subset(clo, ca.map_domain(f))
    checks.append(Check("closure in domain", "closure(E) contained in Dom f", in_dom))
    if not in_dom:
        return Failure("closure(E) is not contained in Dom f", tuple(checks))

    inv = invariant_part_exact(f, clo) if cap is None else \
        invariant_part_exact(f, clo, cap)
    if isinstance(inv, Undecided):
        return inv
    isolate = ca.sets_equal(inv, s)
    checks.append(Check("invariant part", f"I(closure(E))={inv!r} equals S={s!r}",
                        isolate))
    if not isolate:
        return Failure("invariant part of closure(E) differs from S", tuple(checks))

    checks.append(Check("S compact", f"S={s!r} compact", ca.is_compact(s)))
    return IsolatingCertificate(e, s, tuple(checks))


def is_index_nbhd(f, e, s, cap: int | None = None):
    iso = is_isolating(f, e, s, cap)
    if not isinstance(iso, IsolatingCertificate):
        return iso
    cchecks = tuple(Check(name, f"E={e!r}", ok)
                    for name, ok in compactifiability_checks(f, e))
    if not all(c.ok for c in cchecks):
        bad = ", ".join(c.name for c in cchecks if not c.ok)
        return Failure(f"E is not compactifiable: {bad}", iso.checks + cchecks)
    return IndexNbhdCertificate(iso, cchecks)


# ---------------------------------------------------------------------------
# construction of index neighbourhoods (following the existence proof)

@dataclass(frozen=True)
class ConstructedNbhd:
    subset: object
    certificate: IndexNbhdCertificate
    triple: AdmissibleTriple
    compact_seed: object
    checks: tuple[Check, ...]


def _compact_isolating_seed(f, s, n):
    """A compact neighbourhood of S inside N (N assumed isolating for S)."""
    ca = carrier_for(f)
    if ca.name == "finite":
        return n
    if n.is_closed():
        return n
    from .boxes import rat
    delta = rat(1)
    for _ in range(24):
        cand = s.inflate(delta, closed=True)
        if ca.is_subset(cand, n):
            return cand
        delta = delta / 2
    return None


def construct_index_nbhd(f, s, n, bound: int | None = None):
    """Build a certified index neighbourhood inside N.

    Follows the existence proof: pick a compact isolating K <= N, set
    U = interior(K), take any admissible triple for (K, U), and cut out
    E'' as the connecting-map domain.  Also verifies E'' ~ K by its
    explicit absorption witnesses.
    """
    ca = carrier_for(f)
    iso = is_isolating(f, n, s)
    if not isinstance(iso, IsolatingCertificate):
        return iso

    k = _compact_isolating_seed(f, s, n)
    if k is None:
        return Undecided("no compact box neighbourhood of S inside N found")
    u = ca.interior(k)

    search = find_admissible(f, k, u, bound)
    if not search.found:
        if search.complete:
            return Failure("no admissible triple for (K, interior K); "
                           "N cannot be isolating")
        return Undecided("admissible-triple search exhausted", bound=search.bound)
    t = search.triple

    e2 = ca.intersect(dom_power(f, k, t.b),
                      preimage_n(f, dom_power(f, u, t.c - t.a), t.a))
    cert = is_index_nbhd(f, e2, s)
    if not isinstance(cert, IndexNbhdCertificate):
        return cert

    checks = [Check("E'' inside seed", f"E''={e2!r} contained in K={k!r}",
                    ca.is_subset(e2, k))]
    depth = t.b + t.c - t.a
    checks.append(Check("seed absorbed into E''",
                        f"D_{depth}(K) contained in E''",
                        ca.is_subset(dom_power(f, k, depth), e2)))
    if not all(c.ok for c in checks):
        return Failure("constructed set fails its absorption witnesses",
                       tuple(checks))
    return ConstructedNbhd(e2, cert, t, k, tuple(checks))


# ---------------------------------------------------------------------------
# connecting morphisms

@dataclass(frozen=True)
class SymbolicSzMorphism:
    """Interval-carrier morphism datum: a connecting map plus its shift."""

    cross: CrossMap
    shift: object

    @property
    def source(self):
        return self.cross.source

    @property
    def target(self):
        return self.cross.target


def connecting_morphism(f, e, e2, bound: int | None = None):
    """The canonical morphism from f_E to f_E' in the Szymczak category.

    Finite carrier: an explicit based-endo morphism class.  Interval
    carrier: the symbolic pair (connecting map, shift)."""
    ca = carrier_for(f)
    for which, sub in (("E", e), ("E'", e2)):
        checks = compactifiability_checks(f, sub)[:2]
        if not all(ok for _, ok in checks):
            raise ValueError(f"{which} is not weakly compactifiable")
    search = find_admissible(f, e, e2, bound)
    if not search.found:
        if search.complete:
            raise ValueError("E and E' are not related: no admissible triple")
        return Undecided("admissible-triple search exhausted", bound=search.bound)
    cm = cross_map(f, e, e2, search.triple)
    if ca.name == "interval":
        return SymbolicSzMorphism(cm, search.triple.c)
    return _finite_sz_morphism(f, cm)


def _finite_sz_morphism(f, cm: CrossMap) -> sz.SzMorphism:
    src = one_point(f, cm.source)
    tgt = one_point(f, cm.target)
    table = {}
    for x in cm.source.ordered():
        y = cm.realized.table.get(x)
        table[x] = y if y is not None else tgt.base
    table[src.base] = tgt.base
    phi = sz.EquivariantMap.of(src, tgt, table)
    return sz.SzMorphism(phi, cm.triple.c)


# ---------------------------------------------------------------------------
# simple-system verification and index reports

@dataclass(frozen=True)
class MorphismReport:
    source: str
    target: str
    triple: AdmissibleTriple
    shift: object
    invertible: bool
    witness: str
    checks: tuple[Check, ...]


@dataclass(frozen=True)
class NbhdReport:
    label: str
    object_repr: str
    canonical_invariant: Optional[tuple]


@dataclass(frozen=True)
class ConleyIndexReport:
    carrier: str
    invariant_set: str
    neighbourhoods: tuple[NbhdReport, ...]
    morphisms: tuple[MorphismReport, ...]
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks) and \
            all(m.invertible and all(c.ok for c in m.checks) for m in self.morphisms)


def _report_nbhd(f, e, cert) -> NbhdReport:
    ca = carrier_for(f)
    endo = one_point(f, e)
    if ca.name == "finite":
        return NbhdReport(repr(e), repr(endo), sz.canonical_invariant(endo))
    ind = endo.induced
    obj = f"(E={e!r}, f_E with domain {ind.domain!r})"
    return NbhdReport(repr(e), obj, None)


def verify_simple_system(f, s, subsets: Sequence, bound: int | None = None):
    """Check functor laws and invertibility over index neighbourhoods of S.

    Every subset must certify as an index neighbourhood of the same S.  The
    report carries, for each ordered pair, the connecting morphism with an
    invertibility witness and the composite-equals-power-class evidence.
    A failed law is reported (checks with ok=False), not raised.
    """
    ca = carrier_for(f)
    certs = []
    for e in subsets:
        cert = is_index_nbhd(f, e, s)
        if not isinstance(cert, IndexNbhdCertificate):
            return cert
        certs.append(cert)

    nbhds = tuple(_report_nbhd(f, e, c) for e, c in zip(subsets, certs))
    global_checks: list[Check] = []
    morphisms: list[MorphismReport] = []

    triples: dict[tuple[int, int], AdmissibleTriple] = {}
    for i, e in enumerate(subsets):
        for j, e2 in enumerate(subsets):
            search = find_admissible(f, e, e2, bound)
            if not search.found:
                return Undecided("connecting-triple search exhausted",
                                 bound=search.bound)
            triples[(i, j)] = search.triple

    if ca.name == "finite":
        endos = [one_point(f, e) for e in subsets]
        ms = {(i, j): _finite_sz_morphism(f, cross_map(f, subsets[i], subsets[j],
                                                       triples[(i, j)]))
              for i in range(len(subsets)) for j in range(len(subsets))}
        for i in range(len(subsets)):
            ok = sz.sz_equal(ms[(i, i)], sz.identity_morphism(endos[i]))
            global_checks.append(Check("identity law",
                                       f"phi_EE = id for E#{i}", ok))
        for i in range(len(subsets)):
            for j in range(len(subsets)):
                for k in range(len(subsets)):
                    ok = sz.sz_equal(sz.sz_compose(ms[(i, j)], ms[(j, k)]),
                                     ms[(i, k)])
                    global_checks.append(Check(
                        "composition law", f"phi({j}->{k}) o phi({i}->{j}) "
                        f"= phi({i}->{k})", ok))
        for i in range(len(subsets)):
            for j in range(len(subsets)):
                if i == j:
                    continue
                m, back = ms[(i, j)], ms[(j, i)]
                inv = sz.sz_is_iso(m)
                comp = sz.sz_compose(m, back)
                total = m.shift + back.shift
                checks = (
                    Check("composite is power class",
                          f"phi({j}->{i}) o phi({i}->{j}) ~ (f_E^{total}, {total})",
                          sz.sz_equal(comp, sz.endo_shift_morphism(endos[i], total))),
                    Check("composite is identity class",
                          "the power class is the identity in Sz",
                          sz.sz_equal(comp, sz.identity_morphism(endos[i]))),
                )
                morphisms.append(MorphismReport(
                    nbhds[i].label, nbhds[j].label, triples[(i, j)], m.shift,
                    inv is not None, repr(inv), checks))
    else:
        crosses = {(i, j): cross_map(f, subsets[i], subsets[j], triples[(i, j)])
                   for i in range(len(subsets)) for j in range(len(subsets))}
        for i, e in enumerate(subsets):
            ok = ca.maps_equal(crosses[(i, i)].realized,
                               induced_power(f, e, triples[(i, i)].c))
            global_checks.append(Check("identity/power law",
                                       f"phi_EE realizes f_E^c for E#{i}", ok))
        for i in range(len(subsets)):
            for j in range(len(subsets)):
                for k in range(len(subsets)):
                    ok = _symbolic_composition_ok(
                        f, subsets, crosses, triples, i, j, k)
                    global_checks.append(Check(
                        "composition law", f"phi({j}->{k}) o phi({i}->{j}) "
                        f"= phi({i}->{k})", ok))
        for i in range(len(subsets)):
            for j in range(len(subsets)):
                if i == j:
                    continue
                checks, invertible, witness = _symbolic_invertibility(
                    f, subsets, crosses, triples, i, j)
                morphisms.append(MorphismReport(
                    nbhds[i].label, nbhds[j].label, triples[(i, j)],
                    triples[(i, j)].c, invertible, witness, checks))

    return ConleyIndexReport(ca.name, repr(s), nbhds, tuple(morphisms),
                             tuple(global_checks))


def _symbolic_composition_ok(f, subsets, crosses, triples, i, j, k) -> bool:
    """phi(j->k) o phi(i->j) = phi(i->k) as Szymczak classes, exactly.

    First the composite is identified with the sum-triple connecting map
    (the composition identity), then the class equality against the found
    (i->k) triple is certified by the interchange identity with witness
    n = 0; both are exact partial-map comparisons."""
    ca = carrier_for(f)
    comp = ca.compose(crosses[(j, k)].realized, crosses[(i, j)].realized)
    t_sum = triples[(i, j)] + triples[(j, k)]
    summed = cross_map(f, subsets[i], subsets[k], t_sum)
    if not ca.maps_equal(comp, summed.realized):
        return False
    t_ik = triples[(i, k)]
    lhs = ca.compose(summed.realized, induced_power(f, subsets[i], t_ik.c))
    direct = crosses[(i, k)].realized
    rhs = ca.compose(direct, induced_power(f, subsets[i], t_sum.c))
    return ca.maps_equal(lhs, rhs)


def _symbolic_invertibility(f, subsets, crosses, triples, i, j):
    """Invertibility of phi(i->j) via the power-class composite identity."""
    ca = carrier_for(f)
    comp = ca.compose(crosses[(j, i)].realized, crosses[(i, j)].realized)
    t_sum = triples[(i, j)] + triples[(j, i)]
    summed = cross_map(f, subsets[i], subsets[i], t_sum)
    ok1 = ca.maps_equal(comp, summed.realized)
    power_map = induced_power(f, subsets[i], t_sum.c)
    ok2 = ca.maps_equal(summed.realized, power_map)
    checks = (
        Check("composite is power class",
              f"phi({j}->{i}) o phi({i}->{j}) realizes f_E^{t_sum.c}",
              ok1 and ok2),
        Check("composite is identity class",
              f"(f_E^{t_sum.c}, {t_sum.c}) ~ (id, 0) with witness n=0", ok1 and ok2),
    )
    witness = f"inverse class (phi({j}->{i}), {triples[(j, i)].c})"
    return checks, ok1 and ok2, witness


def conley_index(f, s, e, bound: int | None = None):
    """The Conley index datum of S read off one index neighbourhood E."""
    cert = is_index_nbhd(f, e, s)
    if not isinstance(cert, IndexNbhdCertificate):
        return cert
    report = verify_simple_system(f, s, [e], bound)
    return report
