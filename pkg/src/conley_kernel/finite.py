"""Finite discrete dynamical systems.

Point identifiers are opaque text tokens; the space orders them by input
order so every derived object serializes deterministically.  Finite weak
Hausdorff spaces are discrete, so the topology on this carrier is trivial:
closure and interior are the identity and every subset is compact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping


@dataclass(frozen=True)
class FiniteSpace:
    points: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise ValueError("point identifiers must be unique")

    @staticmethod
    def of(points: Iterable[str]) -> "FiniteSpace":
        return FiniteSpace(tuple(str(p) for p in points))

    @property
    def index(self) -> dict:
        return {p: i for i, p in enumerate(self.points)}


@dataclass(frozen=True)
class FiniteSubset:
    space: FiniteSpace
    members: frozenset

    def __post_init__(self):
        if not self.members <= set(self.space.points):
            raise ValueError("subset contains unknown points")

    @staticmethod
    def of(space: FiniteSpace, members: Iterable[str]) -> "FiniteSubset":
        return FiniteSubset(space, frozenset(str(m) for m in members))

    def ordered(self) -> tuple[str, ...]:
        return tuple(p for p in self.space.points if p in self.members)

    def __repr__(self):
        return "{" + ", ".join(self.ordered()) + "}"


@dataclass(frozen=True)
class FinitePartialMap:
    space: FiniteSpace
    pairs: tuple[tuple[str, str], ...]   # (x, f(x)) sorted in space order

    def __post_init__(self):
        pts = set(self.space.points)
        for x, fx in self.pairs:
            if x not in pts or fx not in pts:
                raise ValueError(f"table entry {x}->{fx} leaves the space")
        if len({x for x, _ in self.pairs}) != len(self.pairs):
            raise ValueError("duplicate domain point")

    @staticmethod
    def of(space: FiniteSpace, table: Mapping[str, str]) -> "FinitePartialMap":
        order = space.index
        pairs = tuple(sorted(((str(x), str(y)) for x, y in table.items()),
                             key=lambda p: order[p[0]]))
        return FinitePartialMap(space, pairs)

    @cached_property
    def table(self) -> dict:
        return dict(self.pairs)

    @property
    def domain(self) -> FiniteSubset:
        return FiniteSubset.of(self.space, (x for x, _ in self.pairs))

    def apply(self, x: str) -> str | None:
        return self.table.get(x)

    def __repr__(self):
        body = ", ".join(f"{x}->{y}" for x, y in self.pairs)
        return "{" + body + "}"


def identity_map(space: FiniteSpace) -> FinitePartialMap:
    return FinitePartialMap.of(space, {p: p for p in space.points})


def compose(g: FinitePartialMap, f: FinitePartialMap) -> FinitePartialMap:
    """g after f; Dom(gf) = f^{-1}(Dom g)."""
    if f.space != g.space:
        raise ValueError("space mismatch")
    table = {x: g.table[fx] for x, fx in f.pairs if fx in g.table}
    return FinitePartialMap.of(f.space, table)


def power(f: FinitePartialMap, n: int) -> FinitePartialMap:
    if n < 0:
        raise ValueError("negative power")
    out = identity_map(f.space)
    for _ in range(n):
        out = compose(f, out)
    return out


def image(f: FinitePartialMap, e: FiniteSubset) -> FiniteSubset:
    _check(f, e)
    return FiniteSubset.of(f.space, (fx for x, fx in f.pairs if x in e.members))


def preimage_step(f: FinitePartialMap, e: FiniteSubset) -> FiniteSubset:
    _check(f, e)
    return FiniteSubset.of(f.space, (x for x, fx in f.pairs if fx in e.members))


def preimage(f: FinitePartialMap, e: FiniteSubset, n: int) -> FiniteSubset:
    """f^{-n}(e) = (f^n)^{-1}(e)."""
    if n < 0:
        raise ValueError("negative power")
    _check(f, e)
    out = e
    for _ in range(n):
        out = preimage_step(f, out)
    return out


def restrict(f: FinitePartialMap, s: FiniteSubset) -> FinitePartialMap:
    _check(f, s)
    return FinitePartialMap.of(
        f.space, {x: fx for x, fx in f.pairs if x in s.members})


def power_preperiod_period(f: FinitePartialMap) -> tuple[int, int]:
    """Least (p, q) with f^p = f^(p+q), q >= 1, for the power sequence."""
    seen: dict[FinitePartialMap, int] = {}
    cur = identity_map(f.space)
    n = 0
    while cur not in seen:
        seen[cur] = n
        cur = compose(f, cur)
        n += 1
    p = seen[cur]
    return p, n - p


def _check(f: FinitePartialMap, e: FiniteSubset):
    if f.space != e.space:
        raise ValueError("space mismatch")
