"""Exact rational interval and box-set arithmetic.

Sets in R^n are finite unions of axis-aligned boxes whose per-axis factors
are intervals with exact rational (or infinite) endpoints and open/closed
flags.  All operations are exact; no floating point is used anywhere.

1-D sets are kept canonical (sorted, disjoint, non-adjacent-mergeable), so
structural equality coincides with set equality there.  In higher dimension
no canonical form exists; use :meth:`BoxSet.set_eq` (symmetric-difference
emptiness) for semantic comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rat = Fraction
RatLike = Union[int, str, Fraction]


def rat(x: RatLike) -> Fraction:
    """Coerce an int, Fraction, or 'p/q' string to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class Cut:
    """An extended rational: a finite Fraction or one of the infinities."""

    __slots__ = ("sign", "value")

    def __init__(self, sign: int, value: Fraction):
        self.sign = sign          # -1: -inf, 0: finite, +1: +inf
        self.value = value        # Fraction(0) when infinite

    @staticmethod
    def finite(x: RatLike) -> "Cut":
        return Cut(0, rat(x))

    @property
    def is_finite(self) -> bool:
        return self.sign == 0

    def key(self):
        return (self.sign, self.value)

    def __eq__(self, other):
        return isinstance(other, Cut) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        return self.key() < other.key()

    def __le__(self, other):
        return self.key() <= other.key()

    def shifted(self, d: Fraction) -> "Cut":
        if self.sign:
            return self
        return Cut(0, self.value + d)

    def scaled(self, m: Fraction) -> "Cut":
        """Multiply by a nonzero rational; infinities flip with sign(m)."""
        if m == 0:
            raise ValueError("scaled by zero is handled at the rule level")
        if self.sign:
            return Cut(self.sign if m > 0 else -self.sign, Fraction(0))
        return Cut(0, self.value * m)

    def __repr__(self):
        if self.sign < 0:
            return "-inf"
        if self.sign > 0:
            return "inf"
        return str(self.value)


NEG_INF = Cut(-1, Fraction(0))
POS_INF = Cut(1, Fraction(0))


def cut(x) -> Cut:
    if isinstance(x, Cut):
        return x
    if isinstance(x, str) and x.strip() in ("inf", "+inf"):
        return POS_INF
    if isinstance(x, str) and x.strip() == "-inf":
        return NEG_INF
    return Cut.finite(x)


@dataclass(frozen=True)
class Interval:
    """A nonempty interval of R with exact endpoints and open/closed flags."""

    lo: Cut
    hi: Cut
    lo_closed: bool
    hi_closed: bool

    def __post_init__(self):
        if self.lo.sign != 0 and self.lo_closed:
            raise ValueError("infinite endpoints must be open")
        if self.hi.sign != 0 and self.hi_closed:
            raise ValueError("infinite endpoints must be open")
        if _skey(self) > _ekey(self):
            raise ValueError(f"empty or inverted interval: {self}")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def make(lo, lo_closed: bool, hi, hi_closed: bool) -> "Interval":
        return Interval(cut(lo), cut(hi), bool(lo_closed), bool(hi_closed))

    @staticmethod
    def closed(a, b) -> "Interval":
        return Interval.make(a, True, b, True)

    @staticmethod
    def open(a, b) -> "Interval":
        return Interval.make(a, False, b, False)

    @staticmethod
    def point(a) -> "Interval":
        return Interval.make(a, True, a, True)

    @staticmethod
    def line() -> "Interval":
        return Interval(NEG_INF, POS_INF, False, False)

    # -- queries -----------------------------------------------------------

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def is_bounded(self) -> bool:
        return self.lo.is_finite and self.hi.is_finite

    def contains(self, x: RatLike) -> bool:
        q = Cut.finite(x)
        if self.lo < q < self.hi:
            return True
        if q == self.lo and self.lo_closed:
            return True
        if q == self.hi and self.hi_closed:
            return True
        return False

    def closure(self) -> "Interval":
        return Interval(self.lo, self.hi,
                        self.lo.is_finite or self.lo_closed,
                        self.hi.is_finite or self.hi_closed)

    def __repr__(self):
        l = "[" if self.lo_closed else "("
        r = "]" if self.hi_closed else ")"
        return f"{l}{self.lo}, {self.hi}{r}"


# Boundary keys: (sign, value, eps).  A closed start sits at eps 0, an open
# start just after (+1); symmetrically for ends.  Tuple comparison then gives
# exact endpoint ordering with flags.

def _skey(iv: Interval):
    return (iv.lo.sign, iv.lo.value, 0 if iv.lo_closed else 1)


def _ekey(iv: Interval):
    return (iv.hi.sign, iv.hi.value, 0 if iv.hi_closed else -1)


def _from_skey(k) -> tuple[Cut, bool]:
    return Cut(k[0], k[1]), k[2] == 0


def _from_ekey(k) -> tuple[Cut, bool]:
    return Cut(k[0], k[1]), k[2] == 0


def isect_iv(a: Interval, b: Interval) -> Interval | None:
    sk = max(_skey(a), _skey(b))
    ek = min(_ekey(a), _ekey(b))
    if sk > ek:
        return None
    lo, lc = _from_skey(sk)
    hi, hc = _from_ekey(ek)
    return Interval(lo, hi, lc, hc)


def _connects(a: Interval, b: Interval) -> bool:
    """True if a and b overlap or are adjacent-mergeable (b sorted after a)."""
    ek = _ekey(a)
    return _skey(b) <= (ek[0], ek[1], ek[2] + 1)


def union_canonical(ivs: Iterable[Interval]) -> tuple[Interval, ...]:
    items = sorted(ivs, key=_skey)
    out: list[Interval] = []
    for iv in items:
        if out and _connects(out[-1], iv):
            prev = out.pop()
            ek = max(_ekey(prev), _ekey(iv))
            hi, hc = _from_ekey(ek)
            out.append(Interval(prev.lo, hi, prev.lo_closed, hc))
        else:
            out.append(iv)
    return tuple(out)


def complement_1d(ivs: Sequence[Interval]) -> tuple[Interval, ...]:
    """Complement in R of a canonical interval list."""
    out: list[Interval] = []
    prev_hi, prev_hc = NEG_INF, False
    first = True
    for iv in ivs:
        try:
            lo_closed = False if first else not prev_hc
            out.append(Interval(prev_hi, iv.lo, lo_closed, not iv.lo_closed))
        except ValueError:
            pass
        prev_hi, prev_hc = iv.hi, iv.hi_closed
        first = False
    try:
        out.append(Interval(prev_hi, POS_INF, False if first else not prev_hc, False))
    except ValueError:
        pass
    return tuple(out)


def diff_iv(a: Interval, b: Interval) -> tuple[Interval, ...]:
    """a minus b as at most two intervals."""
    ib = isect_iv(a, b)
    if ib is None:
        return (a,)
    parts = []
    try:
        parts.append(Interval(a.lo, ib.lo, a.lo_closed, not ib.lo_closed))
    except ValueError:
        pass
    try:
        parts.append(Interval(ib.hi, a.hi, not ib.hi_closed, a.hi_closed))
    except ValueError:
        pass
    return tuple(parts)


Box = tuple[Interval, ...]


def box_isect(a: Box, b: Box) -> Box | None:
    out = []
    for ia, ib in zip(a, b):
        iv = isect_iv(ia, ib)
        if iv is None:
            return None
        out.append(iv)
    return tuple(out)


def box_subset(a: Box, b: Box) -> bool:
    return all(_skey(ib) <= _skey(ia) and _ekey(ia) <= _ekey(ib)
               for ia, ib in zip(a, b))


def box_minus_box(a: Box, b: Box) -> list[Box]:
    ib = box_isect(a, b)
    if ib is None:
        return [a]
    out: list[Box] = []
    cur = list(a)
    for k in range(len(a)):
        for part in diff_iv(cur[k], ib[k]):
            out.append(tuple(cur[:k]) + (part,) + tuple(a[k + 1:]))
        cur[k] = ib[k]
    return out


def box_closure(b: Box) -> Box:
    return tuple(iv.closure() for iv in b)


def box_is_bounded(b: Box) -> bool:
    return all(iv.is_bounded for iv in b)


@dataclass(frozen=True)
class BoxSet:
    """A finite union of boxes in R^n.

    Structural equality (`==`) compares representations; use :meth:`set_eq`
    for set-theoretic equality in dimension >= 2.
    """

    dimension: int
    boxes: tuple[Box, ...]

    def __post_init__(self):
        for b in self.boxes:
            if len(b) != self.dimension:
                raise ValueError("box dimension mismatch")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def of(dimension: int, boxes: Iterable[Sequence[Interval]]) -> "BoxSet":
        bs = tuple(tuple(b) for b in boxes)
        if dimension == 1:
            ivs = union_canonical(b[0] for b in bs)
            return BoxSet(1, tuple((iv,) for iv in ivs))
        return BoxSet(dimension, _reduce(bs))

    @staticmethod
    def empty(dimension: int) -> "BoxSet":
        return BoxSet(dimension, ())

    @staticmethod
    def full(dimension: int) -> "BoxSet":
        return BoxSet(dimension, (tuple(Interval.line() for _ in range(dimension)),))

    @staticmethod
    def from_intervals(ivs: Iterable[Interval]) -> "BoxSet":
        return BoxSet.of(1, [(iv,) for iv in ivs])

    @staticmethod
    def interval(lo, lo_closed, hi, hi_closed) -> "BoxSet":
        return BoxSet.from_intervals([Interval.make(lo, lo_closed, hi, hi_closed)])

    @staticmethod
    def points(coords: Iterable[Sequence[RatLike]], dimension: int) -> "BoxSet":
        boxes = [tuple(Interval.point(c) for c in pt) for pt in coords]
        return BoxSet.of(dimension, boxes)

    # -- set algebra -------------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self.boxes

    def union(self, other: "BoxSet") -> "BoxSet":
        self._check(other)
        return BoxSet.of(self.dimension, self.boxes + other.boxes)

    def intersect(self, other: "BoxSet") -> "BoxSet":
        self._check(other)
        out = []
        for a in self.boxes:
            for b in other.boxes:
                ib = box_isect(a, b)
                if ib is not None:
                    out.append(ib)
        return BoxSet.of(self.dimension, out)

    def difference(self, other: "BoxSet") -> "BoxSet":
        self._check(other)
        pieces = list(self.boxes)
        for b in other.boxes:
            pieces = [p for a in pieces for p in box_minus_box(a, b)]
        return BoxSet.of(self.dimension, pieces)

    def complement(self) -> "BoxSet":
        return BoxSet.full(self.dimension).difference(self)

    def subset_of(self, other: "BoxSet") -> bool:
        return self.difference(other).is_empty

    def set_eq(self, other: "BoxSet") -> bool:
        return self.subset_of(other) and other.subset_of(self)

    def contains_point(self, pt: Sequence[RatLike]) -> bool:
        qs = [rat(x) for x in pt]
        return any(all(iv.contains(q) for iv, q in zip(b, qs)) for b in self.boxes)

    # -- topology ----------------------------------------------------------

    def closure(self) -> "BoxSet":
        return BoxSet.of(self.dimension, [box_closure(b) for b in self.boxes])

    def interior(self) -> "BoxSet":
        return self.complement().closure().complement()

    def interior_in(self, ambient: "BoxSet") -> "BoxSet":
        """Relative interior of self inside the subspace ambient."""
        if not self.subset_of(ambient):
            raise ValueError("interior_in requires a subset of the ambient set")
        return ambient.difference(ambient.difference(self).closure())

    def boundary(self) -> "BoxSet":
        return self.closure().difference(self.interior())

    @property
    def is_bounded(self) -> bool:
        return all(box_is_bounded(b) for b in self.boxes)

    def is_closed(self) -> bool:
        return self.closure().subset_of(self)

    def is_open(self) -> bool:
        return self.set_eq(self.interior())

    def is_compact(self) -> bool:
        return self.is_bounded and self.is_closed()

    def is_open_in(self, ambient: "BoxSet") -> bool:
        """Relative openness of self inside ambient (requires self <= ambient)."""
        if not self.subset_of(ambient):
            raise ValueError("is_open_in requires a subset of the ambient set")
        rest = ambient.difference(self)
        return self.intersect(rest.closure()).is_empty

    def is_closed_in(self, ambient: "BoxSet") -> bool:
        if not self.subset_of(ambient):
            raise ValueError("is_closed_in requires a subset of the ambient set")
        return self.closure().intersect(ambient).set_eq(self)

    def is_locally_compact(self) -> bool:
        """True iff locally closed, i.e. closure(A) minus A is closed in R^n."""
        return self.closure().difference(self).is_closed()

    # -- geometry helpers ---------------------------------------------------

    def hull_box(self) -> Box | None:
        """Smallest closed box containing the set, or None if empty."""
        if self.is_empty:
            return None
        out = []
        for k in range(self.dimension):
            lo = min((b[k].lo for b in self.boxes), key=Cut.key)
            hi = max((b[k].hi for b in self.boxes), key=Cut.key)
            out.append(Interval(lo, hi,
                                lo.is_finite, hi.is_finite))
        return tuple(out)

    def axis_bounded(self, k: int) -> bool:
        return all(b[k].is_bounded for b in self.boxes)

    def inflate(self, delta: RatLike, closed: bool = True) -> "BoxSet":
        """Closed (or open) box neighbourhood of the hull, widened by delta."""
        hull = self.hull_box()
        if hull is None:
            return BoxSet.empty(self.dimension)
        d = rat(delta)
        out = []
        for iv in hull:
            if not iv.is_bounded:
                raise ValueError("inflate requires a bounded set")
            out.append(Interval.make(iv.lo.value - d, closed, iv.hi.value + d, closed))
        return BoxSet.of(self.dimension, [tuple(out)])

    def _check(self, other: "BoxSet"):
        if self.dimension != other.dimension:
            raise ValueError("dimension mismatch")

    def __repr__(self):
        if self.is_empty:
            return "{}"
        return " u ".join("x".join(repr(iv) for iv in b) for b in self.boxes)


def _reduce(boxes: tuple[Box, ...]) -> tuple[Box, ...]:
    """Cheap n-D compaction: absorb contained boxes, merge axis-adjacent twins."""
    items = [b for b in boxes]
    changed = True
    while changed:
        changed = False
        pruned: list[Box] = []
        for i, b in enumerate(items):
            contained = False
            for j, o in enumerate(items):
                if i == j or not box_subset(b, o):
                    continue
                # drop duplicates once, keep the earlier copy
                if box_subset(o, b) and j > i:
                    continue
                contained = True
                break
            if not contained:
                pruned.append(b)
        if len(pruned) < len(items):
            items = pruned
            changed = True
            continue
        # pairwise merge along one axis
        merged = None
        for i in range(len(items)):
            for j in range(i + 1, len(items)):
                m = _try_merge(items[i], items[j])
                if m is not None:
                    merged = (i, j, m)
                    break
            if merged:
                break
        if merged:
            i, j, m = merged
            items = [b for k, b in enumerate(items) if k not in (i, j)] + [m]
            changed = True
    return tuple(items)


def _try_merge(a: Box, b: Box) -> Box | None:
    diff_axis = None
    for k in range(len(a)):
        if a[k] != b[k]:
            if diff_axis is not None:
                return None
            diff_axis = k
    if diff_axis is None:
        return a
    u = union_canonical([a[diff_axis], b[diff_axis]])
    if len(u) != 1:
        return None
    return a[:diff_axis] + (u[0],) + a[diff_axis + 1:]
