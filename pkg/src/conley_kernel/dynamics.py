"""Carrier-generic discrete-time dynamics.

Induced partial maps, iterated-domain sets, admissible triples and their
connecting maps, the absorption relation between subsets, compactifiability
predicates, invariant parts, and one-point compactification.  Everything is
written against the carrier interface of :mod:`conley_kernel.carriers`, so
the finite and interval carriers share one code path.

On the finite carrier every negative search answer is complete: the bounds
come from eventual periodicity of the power sequence and stabilization of
the iterated-domain sets.  On the interval carrier exhausted searches are
reported as undecided, never as negatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .boxes import BoxSet
from .carriers import carrier_for
from .finite import FinitePartialMap, power_preperiod_period
from .szymczak import BASEPOINT, BasedEndo

DEFAULT_INTERVAL_BOUND = 64


@dataclass(frozen=True)
class AdmissibleTriple:
    """A triple (a, b, c) with 0 <= a <= b <= c (naturals or rationals)."""

    a: object
    b: object
    c: object

    def __post_init__(self):
        if not (0 <= self.a <= self.b <= self.c):
            raise ValueError("need 0 <= a <= b <= c")

    def __add__(self, other: "AdmissibleTriple") -> "AdmissibleTriple":
        return AdmissibleTriple(self.a + other.a, self.b + other.b,
                                self.c + other.c)

    def as_tuple(self):
        return (self.a, self.b, self.c)

    def __repr__(self):
        return f"({self.a}, {self.b}, {self.c})"


@dataclass(frozen=True)
class InducedMap:
    """The induced partial self-map f_E with Dom f_E = E n f^-1(E)."""

    ambient: object
    subset: object
    realized: object

    @property
    def domain(self):
        return carrier_for(self.ambient).map_domain(self.realized)


@dataclass(frozen=True)
class CrossMap:
    """The connecting map from E to E' attached to an admissible triple.

    The realized partial map acts by f^c on the prescribed domain."""

    ambient: object
    source: object
    target: object
    triple: AdmissibleTriple
    realized: object

    @property
    def shift(self):
        return self.triple.c

    @property
    def domain(self):
        return carrier_for(self.ambient).map_domain(self.realized)


@dataclass(frozen=True)
class SymbolicBasedEndo:
    """One-point endo of an interval-carrier subset, kept symbolic as (E, f_E)."""

    subset: BoxSet
    induced: InducedMap


@dataclass(frozen=True)
class Undecided:
    """A search or semi-decision that ran out of budget; not a negative."""

    reason: str
    bound: object = None
    outer: object = None

    def __bool__(self):
        return False


@dataclass(frozen=True)
class TripleSearch:
    triple: Optional[AdmissibleTriple]
    complete: bool
    bound: object

    @property
    def found(self) -> bool:
        return self.triple is not None


@dataclass(frozen=True)
class SimResult:
    status: str                       # equivalent | not_equivalent | unknown
    forward: Optional[tuple] = None   # (a, b): D_b(E) <= f^-a(E')
    backward: Optional[tuple] = None
    bound: object = None

    @property
    def is_equivalent(self) -> bool:
        return self.status == "equivalent"


# ---------------------------------------------------------------------------
# basic constructions

def induced(f, e) -> InducedMap:
    ca = carrier_for(f)
    ca.check_set(f, e)
    dom = ca.intersect(e, ca.preimage(f, e))
    return InducedMap(f, e, ca.restrict(f, dom))


def induced_power(f, e, n: int):
    """Realized f_E^n with domain the n-fold iterated-domain set."""
    ca = carrier_for(f)
    return ca.restrict(ca.power(f, n), dom_power(f, e, n))


def dom_power(f, e, n: int):
    """Dom f_E^n: the intersection of f^-i(E) for i = 0..n."""
    if n < 0:
        raise ValueError("negative power")
    ca = carrier_for(f)
    ca.check_set(f, e)
    d = e
    for _ in range(n):
        d = ca.intersect(e, ca.preimage(f, d))
    return d


def preimage_n(f, e, n: int):
    ca = carrier_for(f)
    out = e
    for _ in range(n):
        out = ca.preimage(f, out)
    return out


# ---------------------------------------------------------------------------
# admissibility

class _SearchContext:
    """Caches the iterated-domain sets and iterated preimages of a pair."""

    def __init__(self, f, e, e2):
        self.ca = carrier_for(f)
        self.f = f
        self.e = e
        self.e2 = e2
        self._dom_e = [e]
        self._dom_e2 = [e2]
        self._pre_e = [e]
        self._pre_e2 = [e2]
        self._cond1: dict = {}
        self._cond2: dict = {}

    def _extend(self, seq, step):
        seq.append(step(seq[-1]))

    def dom_e(self, n):
        while len(self._dom_e) <= n:
            self._extend(self._dom_e,
                         lambda d: self.ca.intersect(self.e, self.ca.preimage(self.f, d)))
        return self._dom_e[n]

    def dom_e2(self, n):
        while len(self._dom_e2) <= n:
            self._extend(self._dom_e2,
                         lambda d: self.ca.intersect(self.e2, self.ca.preimage(self.f, d)))
        return self._dom_e2[n]

    def pre_e(self, n):
        while len(self._pre_e) <= n:
            self._extend(self._pre_e, lambda s: self.ca.preimage(self.f, s))
        return self._pre_e[n]

    def pre_e2(self, n):
        while len(self._pre_e2) <= n:
            self._extend(self._pre_e2, lambda s: self.ca.preimage(self.f, s))
        return self._pre_e2[n]

    def cond1(self, a, b) -> bool:
        # D_b(E) <= f^-a(E')
        key = (a, b)
        if key not in self._cond1:
            self._cond1[key] = self.ca.is_subset(self.dom_e(b), self.pre_e2(a))
        return self._cond1[key]

    def cond2(self, delta, gamma) -> bool:
        # D_gamma(E') <= f^-delta(E)
        key = (delta, gamma)
        if key not in self._cond2:
            self._cond2[key] = self.ca.is_subset(self.dom_e2(gamma), self.pre_e(delta))
        return self._cond2[key]

    def stab_e(self, cap) -> int:
        for b in range(cap):
            if self.ca.sets_equal(self.dom_e(b + 1), self.dom_e(b)):
                return b
        return cap

    def stab_e2(self, cap) -> int:
        for b in range(cap):
            if self.ca.sets_equal(self.dom_e2(b + 1), self.dom_e2(b)):
                return b
        return cap


def is_admissible(f, e, e2, t: AdmissibleTriple) -> bool:
    """Exact check of both absorption inclusions for the triple."""
    ctx = _SearchContext(f, e, e2)
    if not isinstance(t.a, int):
        raise ValueError("discrete admissibility needs natural numbers")
    return ctx.cond1(t.a, t.b) and ctx.cond2(t.b - t.a, t.c - t.a)


def triple_sum_law_check(f, e, e2, e3, t: AdmissibleTriple,
                         t2: AdmissibleTriple) -> bool:
    """Check the componentwise sum of admissible triples is again admissible."""
    if not is_admissible(f, e, e2, t):
        raise ValueError("t is not (E, E')-admissible")
    if not is_admissible(f, e2, e3, t2):
        raise ValueError("t' is not (E', E'')-admissible")
    return is_admissible(f, e, e3, t + t2)


def _finite_pair_bounds(f: FinitePartialMap, ctx: _SearchContext):
    p, q = power_preperiod_period(f)
    n = len(f.space.points)
    return p + q, ctx.stab_e(n + 1), ctx.stab_e2(n + 1)


def _pair_search(ctx: _SearchContext, direction: int, a_max: int, b_cap) :
    """Lex-least (a, b), a <= b, with the absorption inclusion; None if none."""
    cond = ctx.cond1 if direction == 1 else ctx.cond2
    for a in range(a_max + 1):
        for b in range(a, b_cap(a) + 1):
            if cond(a, b):
                return (a, b)
    return None


def sim_f(f, e, e2, bound: int | None = None) -> SimResult:
    """Decide E ~_f E' by searching absorption witnesses both ways.

    Finite carrier: complete decision (bounds from eventual periodicity and
    domain stabilization).  Interval carrier: Unknown when the bounded search
    is exhausted.
    """
    ctx = _SearchContext(f, e, e2)
    if ctx.ca.name == "finite":
        pq, s_e, s_e2 = _finite_pair_bounds(f, ctx)
        a_max = max(pq - 1, 0)
        fwd = _pair_search(ctx, 1, a_max, lambda a: max(a, s_e))
        bwd = _pair_search(ctx, 2, a_max, lambda a: max(a, s_e2))
        if fwd and bwd:
            return SimResult("equivalent", fwd, bwd, bound=a_max)
        return SimResult("not_equivalent", fwd, bwd, bound=a_max)
    b = DEFAULT_INTERVAL_BOUND if bound is None else bound
    fwd = _pair_search(ctx, 1, b, lambda a: b)
    bwd = _pair_search(ctx, 2, b, lambda a: b)
    if fwd and bwd:
        return SimResult("equivalent", fwd, bwd, bound=b)
    return SimResult("unknown", fwd, bwd, bound=b)


def find_admissible(f, e, e2, bound: int | None = None) -> TripleSearch:
    """Lexicographically-least admissible triple within the bound.

    Finite carrier with bound=None: a complete decision (NotFound means the
    triple set is empty).  Interval carrier: NotFound means undecided within
    the bound.
    """
    ctx = _SearchContext(f, e, e2)
    complete = False
    if ctx.ca.name == "finite" and bound is None:
        pq, s_e, s_e2 = _finite_pair_bounds(f, ctx)
        bound = 2 * pq + s_e + s_e2 + 2
        complete = True
    elif bound is None:
        bound = DEFAULT_INTERVAL_BOUND

    gamma_min: dict = {}

    def first_gamma(delta: int):
        if delta not in gamma_min:
            found = None
            for g in range(bound + 1):
                if ctx.cond2(delta, g):
                    found = g
                    break
            gamma_min[delta] = found
        return gamma_min[delta]

    for a in range(bound + 1):
        for b in range(a, bound + 1):
            if not ctx.cond1(a, b):
                continue
            g = first_gamma(b - a)
            if g is None:
                continue
            c = a + max(b - a, g)
            if c <= bound:
                return TripleSearch(AdmissibleTriple(a, b, c), complete, bound)
    return TripleSearch(None, complete, bound)


def cross_map(f, e, e2, t: AdmissibleTriple) -> CrossMap:
    """Realize the connecting map f^{(a,b,c)} from E to E' on its exact domain."""
    ca = carrier_for(f)
    if not is_admissible(f, e, e2, t):
        raise ValueError(f"triple {t} is not admissible for (E, E')")
    dom = ca.intersect(dom_power(f, e, t.b),
                       preimage_n(f, dom_power(f, e2, t.c - t.a), t.a))
    realized = ca.restrict(ca.power(f, t.c), dom)
    return CrossMap(f, e, e2, t, realized)


# ---------------------------------------------------------------------------
# compactifiability

def weak_compactifiability_checks(f, e) -> list[tuple[str, bool]]:
    ca = carrier_for(f)
    ca.check_set(f, e)
    ind = induced(f, e)
    dom = ind.domain
    proper = ca.is_proper_on(f, dom, e)
    open_dom = ca.is_open_in(dom, e)
    return [("induced map proper", proper),
            ("induced domain open in E", open_dom)]


def is_weakly_compactifiable(f, e) -> bool:
    return all(ok for _, ok in weak_compactifiability_checks(f, e))


def compactifiability_checks(f, e) -> list[tuple[str, bool]]:
    ca = carrier_for(f)
    checks = weak_compactifiability_checks(f, e)
    checks.append(("E locally compact", ca.is_locally_compact(e)))
    return checks


def is_compactifiable(f, e) -> bool:
    return all(ok for _, ok in compactifiability_checks(f, e))


def one_point(f, e):
    """One-point compactification of f_E.

    Finite carrier: an explicit based endo sending undefined points to the
    basepoint.  Interval carrier: the symbolic pair (E, f_E)."""
    ca = carrier_for(f)
    if not is_compactifiable(f, e):
        raise ValueError("E is not compactifiable; the based map would be discontinuous")
    ind = induced(f, e)
    if ca.name == "finite":
        base = BASEPOINT
        while base in e.members:
            base += BASEPOINT
        pts = e.ordered() + (base,)
        table = {x: ind.realized.table.get(x, base) for x in e.ordered()}
        table[base] = base
        return BasedEndo.of(pts, table, base=base)
    return SymbolicBasedEndo(e, ind)


# ---------------------------------------------------------------------------
# invariant parts

def invariant_part(f, e):
    """Exact invariant part on the finite carrier, by double stabilization."""
    ca = carrier_for(f)
    if ca.name != "finite":
        raise TypeError("invariant_part is the finite-carrier operation; "
                        "use invariant_part_exact on the interval carrier")
    ca.check_set(f, e)
    d = e
    while True:
        d2 = ca.intersect(e, ca.preimage(f, d))
        if ca.sets_equal(d2, d):
            break
        d = d2
    s = d
    while True:
        s2 = ca.image(f, s)
        if ca.sets_equal(s2, s):
            return s
        s = s2


def invariant_part_outer(f, e, n: int):
    """The outer approximant f^n(D_n); decreasing in n and contains I_f(E)."""
    ca = carrier_for(f)
    return ca.image(ca.power(f, n), dom_power(f, e, n))


def invariant_part_exact(f, e, cap: int = DEFAULT_INTERVAL_BOUND):
    """Interval carrier: exact invariant part, or Undecided with an outer bound.

    Exact when (i) the iterated-domain sets stabilize and the forward images
    then stabilize too, or (ii) the remaining outer bound is bounded and lies
    in a single affine piece with no axis of slope -1, where the fixed-set
    closed form applies.
    """
    ca = carrier_for(f)
    ca.check_set(f, e)
    if ca.name == "finite":
        return invariant_part(f, e)

    d = e
    stabilized = False
    for _ in range(cap):
        d2 = ca.intersect(e, ca.preimage(f, d))
        if ca.sets_equal(d2, d):
            stabilized = True
            break
        d = d2
    current = d

    if stabilized:
        s = d
        for _ in range(cap):
            s2 = ca.image(f, s)
            if ca.sets_equal(s2, s):
                return s
            s = s2
        current = s

    piece = None
    for p in f.pieces:
        if current.subset_of(p.domain):
            piece = p
            break
    if piece is not None and current.is_bounded:
        return _fixed_set_closed_form(f, e, piece, current)
    return Undecided("invariant part did not stabilize", bound=cap, outer=current)


def _fixed_set_closed_form(f, e, piece, outer):
    """I_f(E) for a bounded outer region inside one affine piece.

    Invariance forces each axis with |slope| != 1 onto the rule's fixed
    point, axes that translate (slope 1, intercept != 0) kill everything,
    and slope 1 with intercept 0 leaves the axis free.  Slope -1 admits
    2-cycles and is left undecided.
    """
    from .boxes import BoxSet, Interval

    axes = []
    for r in piece.rules:
        if r.slope == 1 and r.intercept != 0:
            return BoxSet.empty(f.dimension)
        if r.slope == -1:
            return Undecided("reflection axis admits non-fixed invariant sets",
                             outer=outer)
        if r.slope == 1:
            axes.append(Interval.line())
        else:
            axes.append(Interval.point(r.intercept / (1 - r.slope)))
    fix = BoxSet.of(f.dimension, [tuple(axes)])
    return fix.intersect(piece.domain).intersect(e)
