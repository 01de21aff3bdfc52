"""Uniform carrier interface over the finite and interval carriers.

The discrete-time theory in :mod:`conley_kernel.dynamics` is written against
this interface only, so one code path serves both carriers.  On the finite
carrier the topology trivializes (discrete): closure and interior are the
identity, every subset is compact, every partial map is proper and openly
defined.
"""

from __future__ import annotations

from . import affine, finite
from .affine import PiecewiseAffineMap
from .boxes import BoxSet
from .finite import FinitePartialMap, FiniteSubset


class FiniteCarrier:
    name = "finite"

    # sets
    def ambient(self, f: FinitePartialMap) -> FiniteSubset:
        return FiniteSubset.of(f.space, f.space.points)

    def check_set(self, f, e):
        if e.space != f.space:
            raise ValueError("carrier mismatch: subset lives on another space")

    def empty(self, f) -> FiniteSubset:
        return FiniteSubset.of(f.space, ())

    def union(self, a, b):
        return FiniteSubset(a.space, a.members | b.members)

    def intersect(self, a, b):
        return FiniteSubset(a.space, a.members & b.members)

    def difference(self, a, b):
        return FiniteSubset(a.space, a.members - b.members)

    def is_empty(self, a) -> bool:
        return not a.members

    def is_subset(self, a, b) -> bool:
        return a.members <= b.members

    def sets_equal(self, a, b) -> bool:
        return a.members == b.members

    # topology (discrete, hence trivial)
    def closure(self, a):
        return a

    def interior(self, a):
        return a

    def is_compact(self, a) -> bool:
        return True

    def is_open_in(self, a, b) -> bool:
        if not a.members <= b.members:
            raise ValueError("is_open_in requires a subset")
        return True

    def is_closed_in(self, a, b) -> bool:
        if not a.members <= b.members:
            raise ValueError("is_closed_in requires a subset")
        return True

    def is_locally_compact(self, a) -> bool:
        return True

    # maps
    def map_domain(self, f) -> FiniteSubset:
        return f.domain

    def preimage(self, f, a) -> FiniteSubset:
        return finite.preimage_step(f, a)

    def image(self, f, a) -> FiniteSubset:
        return finite.image(f, a)

    def compose(self, g, f):
        return finite.compose(g, f)

    def power(self, f, n):
        return finite.power(f, n)

    def restrict(self, f, s):
        return finite.restrict(f, s)

    def maps_equal(self, m1, m2) -> bool:
        return m1 == m2

    def is_proper_on(self, f, d, y) -> bool:
        if not d.members <= f.domain.members:
            raise ValueError("d must be contained in Dom f")
        if not finite.image(f, d).members <= y.members:
            raise ValueError("f(d) must be contained in y")
        return True


class IntervalCarrier:
    name = "interval"

    def ambient(self, f: PiecewiseAffineMap) -> BoxSet:
        return BoxSet.full(f.dimension)

    def check_set(self, f, e):
        if e.dimension != f.dimension:
            raise ValueError("carrier mismatch: dimension differs")

    def empty(self, f) -> BoxSet:
        return BoxSet.empty(f.dimension)

    def union(self, a, b):
        return a.union(b)

    def intersect(self, a, b):
        return a.intersect(b)

    def difference(self, a, b):
        return a.difference(b)

    def is_empty(self, a) -> bool:
        return a.is_empty

    def is_subset(self, a, b) -> bool:
        return a.subset_of(b)

    def sets_equal(self, a, b) -> bool:
        return a.set_eq(b)

    def closure(self, a):
        return a.closure()

    def interior(self, a):
        return a.interior()

    def is_compact(self, a) -> bool:
        return a.is_compact()

    def is_open_in(self, a, b) -> bool:
        return a.is_open_in(b)

    def is_closed_in(self, a, b) -> bool:
        return a.is_closed_in(b)

    def is_locally_compact(self, a) -> bool:
        return a.is_locally_compact()

    def map_domain(self, f) -> BoxSet:
        return f.domain

    def preimage(self, f, a) -> BoxSet:
        return f.preimage(a)

    def image(self, f, a) -> BoxSet:
        return f.image(a)

    def compose(self, g, f):
        return affine.compose(g, f)

    def power(self, f, n):
        return affine.power(f, n)

    def restrict(self, f, s):
        return f.restrict(s)

    def maps_equal(self, m1, m2) -> bool:
        return m1.maps_equal(m2)

    def is_proper_on(self, f, d, y) -> bool:
        return affine.is_proper_on(f, d, y)


FINITE = FiniteCarrier()
INTERVAL = IntervalCarrier()


def carrier_for(f):
    if isinstance(f, FinitePartialMap):
        return FINITE
    if isinstance(f, PiecewiseAffineMap):
        return INTERVAL
    raise TypeError(f"no carrier for {type(f).__name__}")
