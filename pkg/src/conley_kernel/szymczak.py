"""The endomorphism category and Szymczak category over finite based endos.

Objects are total self-maps of finite based sets fixing the basepoint.
Morphism equality, composition, the localizing functor Q, and shift
equivalence are all decided exactly; the search bounds come from the
eventual periodicity of the power sequence of a finite endomorphism,
so negative answers are complete, not timeouts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct
from typing import Iterable, Iterator, Mapping

BASEPOINT = "*"


@dataclass(frozen=True)
class BasedEndo:
    """A total self-map on a finite based set, fixing the basepoint."""

    points: tuple[str, ...]
    base: str
    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self):
        pts = set(self.points)
        if len(pts) != len(self.points):
            raise ValueError("duplicate points")
        if self.base not in pts:
            raise ValueError("basepoint missing")
        if {x for x, _ in self.pairs} != pts:
            raise ValueError("map must be total")
        if any(y not in pts for _, y in self.pairs):
            raise ValueError("value outside the space")
        if dict(self.pairs)[self.base] != self.base:
            raise ValueError("basepoint must be fixed")

    @staticmethod
    def of(points: Iterable[str], table: Mapping[str, str],
           base: str = BASEPOINT) -> "BasedEndo":
        pts = tuple(str(p) for p in points)
        pairs = tuple((p, str(table[p])) for p in pts)
        return BasedEndo(pts, base, pairs)

    @cached_property
    def table(self) -> dict:
        return dict(self.pairs)

    def apply(self, x: str) -> str:
        return self.table[x]

    def power_table(self, n: int) -> dict:
        out = {p: p for p in self.points}
        for _ in range(n):
            out = {p: self.table[v] for p, v in out.items()}
        return out

    @cached_property
    def power_bounds(self) -> tuple[int, int]:
        """(preperiod, period) of the power sequence id, f, f^2, ..."""
        seen: dict[tuple, int] = {}
        cur = {p: p for p in self.points}
        n = 0
        while True:
            key = tuple(cur[p] for p in self.points)
            if key in seen:
                return seen[key], n - seen[key]
            seen[key] = n
            cur = {p: self.table[v] for p, v in cur.items()}
            n += 1

    @cached_property
    def eventual_image(self) -> tuple[str, ...]:
        cur = self.power_table(len(self.points))
        img = {cur[p] for p in self.points}
        return tuple(p for p in self.points if p in img)

    def __repr__(self):
        return "Endo{" + ", ".join(f"{x}->{y}" for x, y in self.pairs) + "}"


def identity_endo_map(e: BasedEndo) -> dict:
    return {p: p for p in e.points}


@dataclass(frozen=True)
class EquivariantMap:
    """A based map phi with phi f = g phi, as a morphism f -> g."""

    source: BasedEndo
    target: BasedEndo
    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self):
        t = dict(self.pairs)
        if set(t) != set(self.source.points):
            raise ValueError("map must be total on the source")
        if any(v not in set(self.target.points) for v in t.values()):
            raise ValueError("value outside the target")
        if t[self.source.base] != self.target.base:
            raise ValueError("basepoint must map to basepoint")
        for x in self.source.points:
            if t[self.source.apply(x)] != self.target.apply(t[x]):
                raise ValueError("map is not equivariant")

    @staticmethod
    def of(source: BasedEndo, target: BasedEndo,
           table: Mapping[str, str]) -> "EquivariantMap":
        pairs = tuple((p, str(table[p])) for p in source.points)
        return EquivariantMap(source, target, pairs)

    @staticmethod
    def identity(e: BasedEndo) -> "EquivariantMap":
        return EquivariantMap.of(e, e, identity_endo_map(e))

    @staticmethod
    def endo_as_self_map(e: BasedEndo) -> "EquivariantMap":
        return EquivariantMap.of(e, e, e.table)

    @cached_property
    def table(self) -> dict:
        return dict(self.pairs)

    def then(self, other: "EquivariantMap") -> "EquivariantMap":
        if self.target != other.source:
            raise ValueError("maps are not composable")
        return EquivariantMap.of(
            self.source, other.target,
            {x: other.table[self.table[x]] for x in self.source.points})

    def __repr__(self):
        body = ", ".join(f"{x}->{y}" for x, y in self.pairs if x != self.source.base)
        return "Equiv{" + body + "}"


def is_equivariant_table(source: BasedEndo, target: BasedEndo,
                         table: Mapping[str, str]) -> bool:
    if table[source.base] != target.base:
        return False
    return all(table[source.apply(x)] == target.apply(table[x])
               for x in source.points)


def enumerate_equivariant_maps(source: BasedEndo,
                               target: BasedEndo) -> Iterator[EquivariantMap]:
    """All equivariant maps source -> target, lexicographic in the tables."""
    free = [p for p in source.points if p != source.base]
    for choice in iproduct(target.points, repeat=len(free)):
        table = dict(zip(free, choice))
        table[source.base] = target.base
        if is_equivariant_table(source, target, table):
            yield EquivariantMap.of(source, target, table)


@dataclass(frozen=True)
class SzMorphism:
    """A morphism of the Szymczak category: the class of (phi, k).

    The stored pair is one representative; equality of morphisms is decided
    by :func:`sz_equal`, never by comparing representatives.
    """

    phi: EquivariantMap
    shift: int

    def __post_init__(self):
        if self.shift < 0:
            raise ValueError("shift must be a natural number")

    @property
    def source(self) -> BasedEndo:
        return self.phi.source

    @property
    def target(self) -> BasedEndo:
        return self.phi.target

    def __repr__(self):
        return f"[{self.phi!r}, {self.shift}]"


def Q(phi: EquivariantMap) -> SzMorphism:
    return SzMorphism(phi, 0)


def identity_morphism(e: BasedEndo) -> SzMorphism:
    return Q(EquivariantMap.identity(e))


def endo_shift_morphism(e: BasedEndo, n: int = 1) -> SzMorphism:
    """The class of (f^n, 0), i.e. Q(f-hat)^n."""
    table = e.power_table(n)
    return Q(EquivariantMap.of(e, e, table))


def sz_equal(m: SzMorphism, m2: SzMorphism) -> bool:
    """Decide (phi, k) ~ (phi', k'): some n with phi f^{k'+n} = phi' f^{k+n}.

    Witnesses propagate upward and reduce modulo the period of the source
    power sequence, so n <= preperiod + period is a complete bound.
    """
    if m.source != m2.source or m.target != m2.target:
        raise ValueError("morphisms must be parallel")
    f = m.source
    p, q = f.power_bounds
    for n in range(p + q + 1):
        left = f.power_table(m2.shift + n)
        right = f.power_table(m.shift + n)
        if all(m.phi.table[left[x]] == m2.phi.table[right[x]] for x in f.points):
            return True
    return False


def sz_compose(m: SzMorphism, m2: SzMorphism) -> SzMorphism:
    """m2 after m: class of (psi phi, k + l)."""
    if m.target != m2.source:
        raise ValueError("morphisms are not composable")
    return SzMorphism(m.phi.then(m2.phi), m.shift + m2.shift)


def _shift_bound(f: BasedEndo, g: BasedEndo) -> int:
    pf, qf = f.power_bounds
    pg, qg = g.power_bounds
    return max(pf, pg) + math.lcm(qf, qg)


@dataclass(frozen=True)
class ShiftEquivalenceWitness:
    psi: EquivariantMap
    exponent: int


def is_shift_equivalence(phi: EquivariantMap,
                         bound: int | None = None) -> ShiftEquivalenceWitness | None:
    """Search for psi and a with psi phi = f^a and phi psi = g^a.

    With the default bound the negative answer is complete: any witness
    exponent reduces below max(preperiods) + lcm(periods).
    """
    f, g = phi.source, phi.target
    if bound is None:
        bound = _shift_bound(f, g)
    fpowers = [f.power_table(a) for a in range(bound + 1)]
    gpowers = [g.power_table(a) for a in range(bound + 1)]
    for a in range(bound + 1):
        for psi in enumerate_equivariant_maps(g, f):
            if all(psi.table[phi.table[x]] == fpowers[a][x] for x in f.points) and \
               all(phi.table[psi.table[y]] == gpowers[a][y] for y in g.points):
                return ShiftEquivalenceWitness(psi, a)
    return None


def sz_is_iso(m: SzMorphism, bound: int | None = None) -> SzMorphism | None:
    """Search directly for an inverse class of m; None if there is none.

    This is an independent decision path from :func:`is_shift_equivalence`
    (it enumerates candidate inverse representatives and tests both
    composites with :func:`sz_equal`); the two are cross-checked as the
    localization oracle.
    """
    f, g = m.source, m.target
    if bound is None:
        bound = _shift_bound(f, g)
    id_f = identity_morphism(f)
    id_g = identity_morphism(g)
    for ell in range(bound + 1):
        for psi in enumerate_equivariant_maps(g, f):
            cand = SzMorphism(psi, ell)
            if sz_equal(sz_compose(m, cand), id_f) and \
               sz_equal(sz_compose(cand, m), id_g):
                return cand
    return None


def canonical_invariant(e: BasedEndo) -> tuple[int, tuple[int, ...]]:
    """(eventual image size, sorted cycle lengths of the induced bijection).

    A fast comparator for shift-equivalence classes; its completeness is a
    conjecture validated against the brute-force search in the test suites.
    """
    img = e.eventual_image
    img_set = set(img)
    for x in img:
        if e.apply(x) not in img_set:
            raise AssertionError("eventual image is not invariant")
    seen = set()
    cycles = []
    for x in img:
        if x in seen:
            continue
        length = 0
        y = x
        while y not in seen:
            seen.add(y)
            y = e.apply(y)
            length += 1
        cycles.append(length)
    return len(img), tuple(sorted(cycles))


def enumerate_based_endos(n_free: int) -> Iterator[BasedEndo]:
    """All based endos with n_free non-basepoint points (named a1..ak)."""
    pts = [BASEPOINT] + [f"a{i+1}" for i in range(n_free)]
    free = pts[1:]
    for choice in iproduct(pts, repeat=n_free):
        table = dict(zip(free, choice))
        table[BASEPOINT] = BASEPOINT
        yield BasedEndo.of(pts, table)
