"""Exactly-representable semiflows and the continuous-time theory.

Supported per-axis rules: translation x - v*t, floor-clamped max(x - v*t, L),
ceiling-clamped min(x + v*t, U), and identity.  Base flows are total on their
carrier, so all partiality arises through induced restriction; every orbit
coordinate is monotone in time, which is what makes the sweep computations
exact.

Continuous searches run over a rational candidate set derived from the
boundary and clamp parameters (plus midpoints); exhausted searches surface
as :class:`UndecidedError` or Undecided results, never as fabricated
negatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import affine as af
from .affine import AffineRule, Piece, PiecewiseAffineMap
from .boxes import BoxSet, Cut, Interval, NEG_INF, POS_INF, rat, RatLike
from .conley import (
    Check, ConleyIndexReport, Failure, IndexNbhdCertificate,
    IsolatingCertificate, MorphismReport, NbhdReport, SymbolicSzMorphism,
)
from .dynamics import AdmissibleTriple, CrossMap, SimResult, TripleSearch, Undecided

DEFAULT_TIME_BOUND = 8


class UndecidedError(Exception):
    """An exact answer was not reached within the configured bounds."""

    def __init__(self, message: str, bound=None):
        super().__init__(message)
        self.bound = bound


@dataclass(frozen=True)
class AxisRule:
    kind: str                 # translation | floor | ceil | identity
    velocity: Fraction = Fraction(0)
    clamp: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind not in ("translation", "floor", "ceil", "identity"):
            raise ValueError(f"unknown axis rule {self.kind}")
        if self.kind in ("floor", "ceil") and self.velocity <= 0:
            raise ValueError("clamped rules need positive velocity")
        if self.kind in ("floor", "ceil") and self.clamp is None:
            raise ValueError("clamped rules need a clamp value")

    @staticmethod
    def translation(v: RatLike) -> "AxisRule":
        return AxisRule("translation", rat(v))

    @staticmethod
    def floor(v: RatLike, level: RatLike) -> "AxisRule":
        return AxisRule("floor", rat(v), rat(level))

    @staticmethod
    def ceil(v: RatLike, level: RatLike) -> "AxisRule":
        return AxisRule("ceil", rat(v), rat(level))

    @staticmethod
    def identity() -> "AxisRule":
        return AxisRule("identity")

    @property
    def natural_range(self) -> Interval:
        if self.kind == "floor":
            return Interval(Cut.finite(self.clamp), POS_INF, True, False)
        if self.kind == "ceil":
            return Interval(NEG_INF, Cut.finite(self.clamp), False, True)
        return Interval.line()

    @property
    def direction(self) -> int:
        """Sign of the orbit's motion: -1 decreasing, +1 increasing, 0 still."""
        if self.kind == "identity" or self.velocity == 0:
            return 0
        if self.kind == "ceil":
            return 1
        return -1 if self.velocity > 0 else 1

    def value(self, t: Fraction, x: Fraction) -> Fraction:
        if self.kind == "identity":
            return x
        if self.kind == "translation":
            return x - self.velocity * t
        if self.kind == "floor":
            return max(x - self.velocity * t, self.clamp)
        return min(x + self.velocity * t, self.clamp)

    def time_pieces(self, t: Fraction) -> list[tuple[Interval, AffineRule]]:
        """The time-t map of this axis as interval pieces covering the line."""
        if self.kind == "identity" or t == 0:
            return [(Interval.line(), AffineRule.of(1, 0))]
        if self.kind == "translation":
            return [(Interval.line(), AffineRule(Fraction(1), -self.velocity * t))]
        if self.kind == "floor":
            split = self.clamp + self.velocity * t
            return [
                (Interval(NEG_INF, Cut.finite(split), False, False),
                 AffineRule(Fraction(0), self.clamp)),
                (Interval(Cut.finite(split), POS_INF, True, False),
                 AffineRule(Fraction(1), -self.velocity * t)),
            ]
        split = self.clamp - self.velocity * t
        return [
            (Interval(NEG_INF, Cut.finite(split), False, True),
             AffineRule(Fraction(1), self.velocity * t)),
            (Interval(Cut.finite(split), POS_INF, False, False),
             AffineRule(Fraction(0), self.clamp)),
        ]

    def forward_invariant(self, iv: Interval) -> bool:
        """Do all orbits started in iv stay in iv forever?"""
        d = self.direction
        if d == 0:
            return True
        if self.kind == "floor":
            return iv.contains(self.clamp)
        if self.kind == "ceil":
            return iv.contains(self.clamp)
        return iv.lo == NEG_INF if d < 0 else iv.hi == POS_INF

    def boundary_values(self) -> list[Fraction]:
        return [] if self.clamp is None else [self.clamp]


@dataclass(frozen=True)
class ExactSemiflow:
    dimension: int
    axes: tuple[AxisRule, ...]
    carrier: BoxSet

    def __post_init__(self):
        if len(self.axes) != self.dimension:
            raise ValueError("one axis rule per dimension")
        natural = BoxSet.of(self.dimension,
                            [tuple(r.natural_range for r in self.axes)])
        if not self.carrier.subset_of(natural):
            raise ValueError("carrier leaves the natural domain of the rules "
                             "(time-0 map would not be the identity)")
        for b in self.carrier.boxes:
            for r, iv in zip(self.axes, b):
                if not r.forward_invariant(iv):
                    raise ValueError("carrier is not forward invariant; "
                                     "the rules do not define a semiflow on it")
        _check_semiflow_laws(self)

    @staticmethod
    def of(axes: Sequence[AxisRule], carrier: BoxSet | None = None) -> "ExactSemiflow":
        axes = tuple(axes)
        if carrier is None:
            carrier = BoxSet.of(len(axes), [tuple(r.natural_range for r in axes)])
        return ExactSemiflow(len(axes), axes, carrier)

    def check_set(self, e: BoxSet):
        if e.dimension != self.dimension:
            raise ValueError("dimension mismatch")
        if not e.subset_of(self.carrier):
            raise ValueError("set leaves the semiflow carrier")

    def fixed_set(self) -> BoxSet:
        """The set of rest points of the flow, as a box set."""
        axes = []
        for r in self.axes:
            if r.kind == "identity" or r.velocity == 0:
                axes.append(Interval.line())
            elif r.kind in ("floor", "ceil"):
                axes.append(Interval.point(r.clamp))
            else:
                return BoxSet.empty(self.dimension)
        return BoxSet.of(self.dimension, [tuple(axes)]).intersect(self.carrier)


def _check_semiflow_laws(flow: ExactSemiflow):
    """Exact check of f^0 = id and sampled exact checks of f^t f^u = f^{t+u}."""
    ident = PiecewiseAffineMap.identity(flow.dimension).restrict(flow.carrier)
    if not time_map(flow, Fraction(0)).maps_equal(ident):
        raise AssertionError("time-0 map is not the identity on the carrier")
    for t, u in ((Fraction(1), Fraction(1)),
                 (Fraction(1, 2), Fraction(1, 3)),
                 (Fraction(2), Fraction(3, 4))):
        lhs = af.compose(time_map(flow, t), time_map(flow, u))
        if not lhs.maps_equal(time_map(flow, t + u).restrict(lhs.domain)) or \
           not lhs.domain.set_eq(flow.carrier):
            raise AssertionError("semigroup law failed for the constructed flow")


def time_map(flow: ExactSemiflow, t) -> PiecewiseAffineMap:
    """The exact time-t piecewise-affine map, total on the carrier."""
    t = rat(t)
    if t < 0:
        raise ValueError("negative time")
    pieces = [(tuple(), tuple())]
    for r in flow.axes:
        axis_parts = r.time_pieces(t)
        pieces = [(ivs + (iv,), rules + (rule,))
                  for ivs, rules in pieces for iv, rule in axis_parts]
    out = []
    for ivs, rules in pieces:
        dom = BoxSet.of(flow.dimension, [ivs]).intersect(flow.carrier)
        if not dom.is_empty:
            out.append(Piece(dom, rules))
    return PiecewiseAffineMap._raw(flow.dimension, out)


# ---------------------------------------------------------------------------
# swept domains

def dom_interval(flow: ExactSemiflow, e: BoxSet, t, cap: int = 64) -> BoxSet:
    """The set of x whose whole orbit segment over [0, t] stays in E.

    Exact.  Single boxes use endpoint membership (per-axis monotonicity plus
    convexity); general 1-D sets use hit sets of the complement components;
    multi-box sets in higher dimension are certified by refining a sampled
    outer bound against a per-cell single-box inner bound until they agree.
    """
    t = rat(t)
    if t < 0:
        raise ValueError("negative time")
    flow.check_set(e)
    if t == 0:
        return e
    if len(e.boxes) <= 1:
        return e.intersect(time_map(flow, t).preimage(e))
    if flow.dimension == 1:
        return _dom_interval_1d(flow, e, t)
    return _dom_interval_sandwich(flow, e, t, cap)


def _ray_up(c: Cut, closed: bool) -> BoxSet:
    if c == NEG_INF:
        return BoxSet.full(1)
    return BoxSet.of(1, [(Interval(c, POS_INF, closed, False),)])


def _ray_down(c: Cut, closed: bool) -> BoxSet:
    if c == POS_INF:
        return BoxSet.full(1)
    return BoxSet.of(1, [(Interval(NEG_INF, c, False, closed),)])


def _dom_interval_1d(flow: ExactSemiflow, e: BoxSet, t: Fraction) -> BoxSet:
    rule = flow.axes[0]
    fmap = time_map(flow, t)
    hits = BoxSet.empty(1)
    for (iv,) in e.complement().boxes:
        d = rule.direction
        if d == 0:
            hit = BoxSet.of(1, [(iv,)])
        elif d < 0:
            # orbit range is [f^t(x), x]
            hit = _ray_up(iv.lo, iv.lo_closed).intersect(
                fmap.preimage(_ray_down(iv.hi, iv.hi_closed)))
        else:
            hit = _ray_down(iv.hi, iv.hi_closed).intersect(
                fmap.preimage(_ray_up(iv.lo, iv.lo_closed)))
        hits = hits.union(hit)
    return hits.complement().intersect(flow.carrier)


def _dom_interval_sandwich(flow: ExactSemiflow, e: BoxSet, t: Fraction,
                           cap: int) -> BoxSet:
    m = 1
    while m <= cap:
        times = [t * k / m for k in range(m + 1)]
        pres = [time_map(flow, s).preimage(e) if s != 0 else e for s in times]
        outer = e
        for p in pres[1:]:
            outer = outer.intersect(p)
        boxes_pre = [[time_map(flow, s).preimage(BoxSet.of(e.dimension, [b]))
                      if s != 0 else BoxSet.of(e.dimension, [b])
                      for b in e.boxes] for s in times]
        inner = None
        for k in range(m):
            cell = BoxSet.empty(e.dimension)
            for bi in range(len(e.boxes)):
                cell = cell.union(boxes_pre[k][bi].intersect(boxes_pre[k + 1][bi]))
            inner = cell if inner is None else inner.intersect(cell)
        if outer.subset_of(inner):
            return outer
        m *= 2
    raise UndecidedError("swept-domain refinement did not certify", bound=cap)


def induced_power(flow: ExactSemiflow, e: BoxSet, t) -> PiecewiseAffineMap:
    """The realized partial map f_E^t with its exact swept domain."""
    return time_map(flow, t).restrict(dom_interval(flow, e, t))


# ---------------------------------------------------------------------------
# finite-time properness and open definedness

def _domain_full(flow: ExactSemiflow, e: BoxSet) -> bool:
    """Sufficient (boxwise) check that Dom F_E is all of R>=0 x E."""
    return all(all(r.forward_invariant(iv) for r, iv in zip(flow.axes, b))
               for b in e.boxes)


def _axis_escape_tau(rule: AxisRule, g: Interval, e: Interval) -> Interval | None:
    """The tau >= 0 where the time-tau image of g meets e, as one interval.

    Uses the fact that the time-tau preimage of an interval under these rules
    is a single interval whose endpoints are affine in tau with a formula
    independent of tau."""
    e = _isect(e, rule.natural_range)
    if e is None:
        return None
    # The time-tau preimage of e is one interval whose endpoints are affine
    # in tau with a tau-independent formula; overlap with g reduces to two
    # one-variable affine key inequalities.
    if rule.kind == "identity" or rule.velocity == 0:
        return _tau_all() if _isect(g, e) is not None else None
    if rule.kind == "translation":
        return _solve_overlap(g, e.lo, e.lo_closed, rule.velocity,
                              e.hi, e.hi_closed, rule.velocity)
    if rule.kind == "floor":
        if e.contains(rule.clamp):
            return _solve_overlap(g, Cut.finite(rule.clamp), True, Fraction(0),
                                  e.hi, e.hi_closed, rule.velocity)
        return _solve_overlap(g, e.lo, e.lo_closed, rule.velocity,
                              e.hi, e.hi_closed, rule.velocity)
    if e.contains(rule.clamp):
        return _solve_overlap(g, e.lo, e.lo_closed, -rule.velocity,
                              Cut.finite(rule.clamp), True, Fraction(0))
    return _solve_overlap(g, e.lo, e.lo_closed, -rule.velocity,
                          e.hi, e.hi_closed, -rule.velocity)


def _isect(a: Interval, b: Interval) -> Interval | None:
    from .boxes import isect_iv
    return isect_iv(a, b)


def _solve_overlap(g: Interval, plo: Cut, plo_closed: bool, slope_lo: Fraction,
                   phi: Cut, phi_closed: bool, slope_hi: Fraction) -> Interval | None:
    """tau-interval where g meets [plo + slope_lo*tau, phi + slope_hi*tau]."""
    c1 = _solve_key_le((g.lo, 0 if g.lo_closed else 1),
                       (phi, 0 if phi_closed else -1), slope_hi)
    c2 = _solve_key_le_rev((plo, 0 if plo_closed else 1), slope_lo,
                           (g.hi, 0 if g.hi_closed else -1))
    out = _tau_all()
    for c in (c1, c2):
        if c is None:
            return None
        out = _isect(out, c)
        if out is None:
            return None
    return out


def _tau_all() -> Interval:
    return Interval(Cut.finite(0), POS_INF, True, False)


def _solve_key_le(const_key, aff_key, slope: Fraction) -> Interval | None:
    """{tau >= 0 : const + eps_c <= aff + slope*tau + eps_a} as an interval."""
    c, eps_c = const_key
    a, eps_a = aff_key
    if a.sign > 0:
        return _tau_all()
    if a.sign < 0:
        return None
    if c.sign < 0:
        return _tau_all()
    if c.sign > 0:
        return None
    if slope == 0:
        return _tau_all() if (c.value, eps_c) <= (a.value, eps_a) else None
    star = (c.value - a.value) / slope
    at_star_ok = eps_c <= eps_a
    if slope > 0:
        lo = max(star, Fraction(0))
        closed = at_star_ok if lo == star else True
        return Interval(Cut.finite(lo), POS_INF, closed, False)
    hi = star
    if hi < 0:
        return None
    if hi == 0 and not at_star_ok:
        return None
    return Interval(Cut.finite(0), Cut.finite(hi), True, at_star_ok)


def _solve_key_le_rev(aff_key, slope: Fraction, const_key) -> Interval | None:
    """{tau >= 0 : aff + slope*tau + eps_a <= const + eps_c}."""
    a, eps_a = aff_key
    c, eps_c = const_key
    if a.sign < 0:
        return _tau_all()
    if a.sign > 0:
        return None
    if c.sign > 0:
        return _tau_all()
    if c.sign < 0:
        return None
    if slope == 0:
        return _tau_all() if (a.value, eps_a) <= (c.value, eps_c) else None
    star = (c.value - a.value) / slope
    at_star_ok = eps_a <= eps_c
    if slope < 0:
        lo = max(star, Fraction(0))
        closed = at_star_ok if lo == star else True
        return Interval(Cut.finite(lo), POS_INF, closed, False)
    if star < 0:
        return None
    if star == 0 and not at_star_ok:
        return None
    return Interval(Cut.finite(0), Cut.finite(star), True, at_star_ok)


def _escape_exists(flow: ExactSemiflow, e: BoxSet, window=Fraction(1)) -> bool:
    """Does some boundary point of E flow back into E within (0, window]?"""
    g_set = e.closure().difference(e)
    horizon = Interval(Cut.finite(0), Cut.finite(window), False, True)
    for g in g_set.boxes:
        for eb in e.boxes:
            taus = horizon
            ok = True
            for rule, gi, ei in zip(flow.axes, g, eb):
                axis_taus = _axis_escape_tau(rule, gi, ei)
                if axis_taus is None:
                    ok = False
                    break
                taus = _isect(taus, axis_taus)
                if taus is None:
                    ok = False
                    break
            if ok:
                return True
    return False


_PROBE_TIMES = (Fraction(1, 2), Fraction(1), Fraction(2))


def is_finite_time_proper(flow: ExactSemiflow, e: BoxSet) -> bool:
    """Exactly decide finite-time properness of the induced semiflow F_E.

    Compact or closed sets are finite-time proper for these total flows.
    When the induced domain is full, failures are exactly the boundary
    points that flow back into E within a positive time window (any window
    is equivalent, by the short-time reduction).  Otherwise single-time
    failures are definitive; if none is found the question is undecided.
    """
    flow.check_set(e)
    if e.is_compact() or e.is_closed():
        return True
    if _domain_full(flow, e):
        return not _escape_exists(flow, e)
    for t in _PROBE_TIMES:
        dom = dom_interval(flow, e, t)
        if not af.is_proper_on(time_map(flow, t), dom, e):
            return False
    raise UndecidedError("finite-time properness undecided for this set")


def is_openly_defined_cont(flow: ExactSemiflow, e: BoxSet) -> bool:
    """Exactly decide whether Dom F_E is open in R>=0 x E where possible."""
    flow.check_set(e)
    if _domain_full(flow, e):
        return True
    if e.is_open():
        return True
    for t in _PROBE_TIMES:
        dom = dom_interval(flow, e, t)
        if not dom.is_open_in(e):
            return False
    raise UndecidedError("open-definedness undecided for this set")


def weak_compactifiability_checks_cont(flow, e) -> list[tuple[str, bool]]:
    return [("induced semiflow finite-time proper", is_finite_time_proper(flow, e)),
            ("induced semiflow openly defined", is_openly_defined_cont(flow, e))]


def is_weakly_compactifiable_cont(flow, e) -> bool:
    return all(ok for _, ok in weak_compactifiability_checks_cont(flow, e))


def compactifiability_checks_cont(flow, e) -> list[tuple[str, bool]]:
    checks = weak_compactifiability_checks_cont(flow, e)
    checks.append(("E locally compact", e.is_locally_compact()))
    return checks


def is_compactifiable_cont(flow, e) -> bool:
    return all(ok for _, ok in compactifiability_checks_cont(flow, e))


# ---------------------------------------------------------------------------
# admissibility over rational time

def _candidate_times(flow: ExactSemiflow, sets: list[BoxSet], bound) -> list[Fraction]:
    values: set[Fraction] = set()
    for s in sets:
        for b in s.boxes:
            for iv in b:
                for c in (iv.lo, iv.hi):
                    if c.is_finite:
                        values.add(c.value)
    for r in flow.axes:
        values.update(r.boundary_values())
    times: set[Fraction] = {Fraction(0)}
    speeds = {abs(r.velocity) for r in flow.axes if r.velocity != 0}
    for v in speeds:
        for b1 in values:
            for b2 in values:
                d = abs(b1 - b2) / v
                if 0 < d <= bound:
                    times.add(d)
    times.update(Fraction(k) for k in range(1, min(int(bound), 4) + 1))
    ordered = sorted(times)
    with_mids = set(ordered)
    for x, y in zip(ordered, ordered[1:]):
        with_mids.add((x + y) / 2)
    top = max(ordered) if ordered else Fraction(0)
    if top + 1 <= bound:
        with_mids.add(top + 1)
    return sorted(v for v in with_mids if v <= bound)


class _ContContext:
    def __init__(self, flow, e, e2, bound):
        self.flow = flow
        self.e = e
        self.e2 = e2
        self.bound = rat(bound)
        self.times = _candidate_times(flow, [e, e2], self.bound)
        self._dom: dict = {}
        self._pre: dict = {}
        self._c1: dict = {}
        self._c2: dict = {}

    def dom(self, which, t):
        key = (which, t)
        if key not in self._dom:
            base = self.e if which == 1 else self.e2
            self._dom[key] = dom_interval(self.flow, base, t)
        return self._dom[key]

    def pre(self, which, t):
        key = (which, t)
        if key not in self._pre:
            base = self.e if which == 1 else self.e2
            self._pre[key] = base if t == 0 else \
                time_map(self.flow, t).preimage(base)
        return self._pre[key]

    def cond1(self, a, b) -> bool:
        key = (a, b)
        if key not in self._c1:
            self._c1[key] = self.dom(1, b).subset_of(self.pre(2, a))
        return self._c1[key]

    def cond2(self, delta, gamma) -> bool:
        key = (delta, gamma)
        if key not in self._c2:
            self._c2[key] = self.dom(2, gamma).subset_of(self.pre(1, delta))
        return self._c2[key]


def is_admissible_cont(flow, e, e2, t: AdmissibleTriple) -> bool:
    a, b, c = rat(t.a), rat(t.b), rat(t.c)
    d1 = dom_interval(flow, e, b)
    p1 = e2 if a == 0 else time_map(flow, a).preimage(e2)
    if not d1.subset_of(p1):
        return False
    d2 = dom_interval(flow, e2, c - a)
    p2 = e if b == a else time_map(flow, b - a).preimage(e)
    return d2.subset_of(p2)


def find_admissible_cont(flow, e, e2, bound=DEFAULT_TIME_BOUND) -> TripleSearch:
    """Search the rational candidate set for an admissible triple.

    NotFound means undecided within the candidate set, never a negative."""
    ctx = _ContContext(flow, e, e2, bound)
    for a in ctx.times:
        for b in ctx.times:
            if b < a or not ctx.cond1(a, b):
                continue
            for gamma in ctx.times:
                if gamma < b - a or a + gamma > ctx.bound:
                    continue
                if ctx.cond2(b - a, gamma):
                    return TripleSearch(AdmissibleTriple(a, b, a + gamma),
                                        False, bound)
    return TripleSearch(None, False, bound)


def sim_F(flow, e, e2, bound=DEFAULT_TIME_BOUND) -> SimResult:
    ctx = _ContContext(flow, e, e2, bound)
    fwd = bwd = None
    for a in ctx.times:
        for b in ctx.times:
            if b >= a and ctx.cond1(a, b):
                fwd = (a, b)
                break
        if fwd:
            break
    for a in ctx.times:
        for b in ctx.times:
            if b >= a and ctx.cond2(a, b):
                bwd = (a, b)
                break
        if bwd:
            break
    if fwd and bwd:
        return SimResult("equivalent", fwd, bwd, bound=bound)
    return SimResult("unknown", fwd, bwd, bound=bound)


def cross_map_cont(flow, e, e2, t: AdmissibleTriple) -> CrossMap:
    if not is_admissible_cont(flow, e, e2, t):
        raise ValueError(f"triple {t} is not admissible for (E, E')")
    a, b, c = rat(t.a), rat(t.b), rat(t.c)
    inner = dom_interval(flow, e2, c - a)
    pulled = inner if a == 0 else time_map(flow, a).preimage(inner)
    dom = dom_interval(flow, e, b).intersect(pulled)
    realized = time_map(flow, c).restrict(dom)
    return CrossMap(realized, e, e2, t, realized)


# ---------------------------------------------------------------------------
# invariant parts and index neighbourhoods

def invariant_part_outer_F(flow, e, t) -> BoxSet:
    return time_map(flow, t).image(dom_interval(flow, e, t))


def invariant_part_F(flow, e: BoxSet):
    """Exact invariant part via the rest-point closed form, else Undecided.

    For these monotone product flows every invariant set that is bounded
    along each moving axis must sit on the rest set; boundedness of E along
    the moving axes therefore gives I_F(E) = Fix(F) n E exactly."""
    flow.check_set(e)
    for k, r in enumerate(flow.axes):
        if r.kind == "identity" or r.velocity == 0:
            continue
        if r.kind == "translation":
            if not e.axis_bounded(k):
                return Undecided("translation axis unbounded in E",
                                 outer=invariant_part_outer_F(flow, e, 1))
        elif r.kind == "floor":
            if not all(b[k].hi.is_finite for b in e.boxes):
                return Undecided("floor axis unbounded above in E",
                                 outer=invariant_part_outer_F(flow, e, 1))
        elif r.kind == "ceil":
            if not all(b[k].lo.is_finite for b in e.boxes):
                return Undecided("ceil axis unbounded below in E",
                                 outer=invariant_part_outer_F(flow, e, 1))
    return flow.fixed_set().intersect(e)


def _check_invariant_cont(flow, s: BoxSet):
    flow.check_set(s)
    if s.is_empty:
        return
    bounded_needed = any(r.kind != "identity" and r.velocity != 0
                         for r in flow.axes)
    if bounded_needed and not s.is_bounded:
        raise UndecidedError("invariance of an unbounded set is undecided")
    if not s.subset_of(flow.fixed_set()):
        raise ValueError("S is not invariant under the semiflow")


def is_isolating_cont(flow, e, s):
    _check_invariant_cont(flow, s)
    flow.check_set(e)
    checks = []
    nbhd = s.subset_of(e.interior_in(flow.carrier))
    checks.append(Check("neighbourhood",
                        f"S inside the carrier-relative interior of E={e!r}", nbhd))
    if not nbhd:
        return Failure("E is not a neighbourhood of S", tuple(checks))
    clo = e.closure()
    relcpt = clo.is_compact()
    checks.append(Check("relatively compact", f"closure(E)={clo!r} compact", relcpt))
    if not relcpt:
        return Failure("E is not relatively compact", tuple(checks))
    in_dom = clo.subset_of(flow.carrier)
    checks.append(Check("short-time window",
                        "[0,1] x closure(E) inside Dom F (total flow)", in_dom))
    if not in_dom:
        return Failure("closure(E) leaves the carrier", tuple(checks))
    inv = invariant_part_F(flow, clo)
    if isinstance(inv, Undecided):
        return inv
    agree = inv.set_eq(s)
    checks.append(Check("invariant part", f"I(closure(E))={inv!r} equals S={s!r}",
                        agree))
    if not agree:
        return Failure("invariant part of closure(E) differs from S", tuple(checks))
    checks.append(Check("S compact", f"S={s!r} compact", s.is_compact()))
    return IsolatingCertificate(e, s, tuple(checks))


def is_index_nbhd_cont(flow, e, s):
    iso = is_isolating_cont(flow, e, s)
    if not isinstance(iso, IsolatingCertificate):
        return iso
    try:
        raw = compactifiability_checks_cont(flow, e)
    except UndecidedError as exc:
        return Undecided(str(exc))
    cchecks = tuple(Check(name, f"E={e!r}", ok) for name, ok in raw)
    if not all(c.ok for c in cchecks):
        bad = ", ".join(c.name for c in cchecks if not c.ok)
        return Failure(f"E is not compactifiable: {bad}", iso.checks + cchecks)
    return IndexNbhdCertificate(iso, cchecks)


@dataclass(frozen=True)
class ConstructedNbhdCont:
    subset: BoxSet
    certificate: IndexNbhdCertificate
    triple: AdmissibleTriple
    compact_seed: BoxSet
    checks: tuple[Check, ...]


def construct_index_nbhd_cont(flow, s, n, bound=DEFAULT_TIME_BOUND):
    iso = is_isolating_cont(flow, n, s)
    if not isinstance(iso, IsolatingCertificate):
        return iso
    if n.is_closed():
        k = n
    else:
        k = None
        delta = Fraction(1)
        for _ in range(24):
            cand = s.inflate(delta, closed=True)
            if cand.subset_of(n):
                k = cand
                break
            delta /= 2
        if k is None:
            return Undecided("no compact box neighbourhood of S inside N found")
    u = k.interior_in(flow.carrier)
    search = find_admissible_cont(flow, k, u, bound)
    if not search.found:
        return Undecided("admissible-triple search exhausted", bound=bound)
    t = search.triple
    a, b, c = rat(t.a), rat(t.b), rat(t.c)
    inner = dom_interval(flow, u, c - a)
    pulled = inner if a == 0 else time_map(flow, a).preimage(inner)
    e2 = dom_interval(flow, k, b).intersect(pulled)
    cert = is_index_nbhd_cont(flow, e2, s)
    if not isinstance(cert, IndexNbhdCertificate):
        return cert
    checks = (
        Check("E'' inside seed", f"E''={e2!r} contained in K={k!r}",
              e2.subset_of(k)),
        Check("seed absorbed into E''",
              f"orbit segment of length {b + c - a} of K lands in E''",
              dom_interval(flow, k, b + c - a).subset_of(e2)),
    )
    if not all(ch.ok for ch in checks):
        return Failure("constructed set fails its absorption witnesses", checks)
    return ConstructedNbhdCont(e2, cert, t, k, checks)


def connecting_morphism_cont(flow, e, e2, bound=DEFAULT_TIME_BOUND):
    for which, sub in (("E", e), ("E'", e2)):
        if not is_weakly_compactifiable_cont(flow, sub):
            raise ValueError(f"{which} is not weakly F-compactifiable")
    search = find_admissible_cont(flow, e, e2, bound)
    if not search.found:
        return Undecided("admissible-triple search exhausted", bound=bound)
    cm = cross_map_cont(flow, e, e2, search.triple)
    return SymbolicSzMorphism(cm, search.triple.c)


def verify_simple_system_cont(flow, s, subsets: Sequence[BoxSet],
                              bound=DEFAULT_TIME_BOUND):
    """Continuous analogue of the simple-system verification, symbolically."""
    certs = []
    for e in subsets:
        cert = is_index_nbhd_cont(flow, e, s)
        if not isinstance(cert, IndexNbhdCertificate):
            return cert
        certs.append(cert)
    nbhds = tuple(NbhdReport(repr(e),
                             f"(E={e!r}, F_E induced semiflow)", None)
                  for e in subsets)
    triples = {}
    for i, e in enumerate(subsets):
        for j, e2 in enumerate(subsets):
            search = find_admissible_cont(flow, e, e2, bound)
            if not search.found:
                return Undecided("connecting-triple search exhausted", bound=bound)
            triples[(i, j)] = search.triple
    crosses = {(i, j): cross_map_cont(flow, subsets[i], subsets[j], triples[(i, j)])
               for i in range(len(subsets)) for j in range(len(subsets))}
    global_checks = []
    for i, e in enumerate(subsets):
        ok = crosses[(i, i)].realized.maps_equal(
            induced_power(flow, e, triples[(i, i)].c))
        global_checks.append(Check("identity/power law",
                                   f"phi_EE realizes f_E^c for E#{i}", ok))
    for i in range(len(subsets)):
        for j in range(len(subsets)):
            for k in range(len(subsets)):
                ok = _composition_ok_cont(flow, subsets, crosses, triples, i, j, k)
                global_checks.append(Check(
                    "composition law",
                    f"phi({j}->{k}) o phi({i}->{j}) = phi({i}->{k})", ok))
    morphisms = []
    for i in range(len(subsets)):
        for j in range(len(subsets)):
            if i == j:
                continue
            comp = af.compose(crosses[(j, i)].realized, crosses[(i, j)].realized)
            t_sum = triples[(i, j)] + triples[(j, i)]
            summed = cross_map_cont(flow, subsets[i], subsets[i], t_sum)
            ok1 = comp.maps_equal(summed.realized)
            ok2 = summed.realized.maps_equal(
                induced_power(flow, subsets[i], rat(t_sum.c)))
            checks = (
                Check("composite is power class",
                      f"round trip realizes f_E^{t_sum.c}", ok1 and ok2),
                Check("composite is identity class",
                      f"(f_E^{t_sum.c}, {t_sum.c}) ~ (id, 0) with witness s=0",
                      ok1 and ok2),
            )
            morphisms.append(MorphismReport(
                nbhds[i].label, nbhds[j].label, triples[(i, j)],
                triples[(i, j)].c, ok1 and ok2,
                f"inverse class (phi({j}->{i}), {triples[(j, i)].c})", checks))
    return ConleyIndexReport("semiflow", repr(s), nbhds, tuple(morphisms),
                             tuple(global_checks))


def _composition_ok_cont(flow, subsets, crosses, triples, i, j, k) -> bool:
    comp = af.compose(crosses[(j, k)].realized, crosses[(i, j)].realized)
    t_sum = triples[(i, j)] + triples[(j, k)]
    summed = cross_map_cont(flow, subsets[i], subsets[k], t_sum)
    if not comp.maps_equal(summed.realized):
        return False
    t_ik = triples[(i, k)]
    lhs = af.compose(summed.realized, induced_power(flow, subsets[i], rat(t_ik.c)))
    rhs = af.compose(crosses[(i, k)].realized,
                     induced_power(flow, subsets[i], rat(t_sum.c)))
    return lhs.maps_equal(rhs)


def conley_index_cont(flow, s, e, bound=DEFAULT_TIME_BOUND):
    cert = is_index_nbhd_cont(flow, e, s)
    if not isinstance(cert, IndexNbhdCertificate):
        return cert
    return verify_simple_system_cont(flow, s, [e], bound)
