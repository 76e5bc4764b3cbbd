"""
Finite topologies generated by a relation or an explicit base, plus the
order-directed interior and closure operators of an ordered space.

A `TopologyBase` is closed under pairwise intersection and contains U, so
the open sets are exactly the unions of base members. For speed the
operators work from the minimal open neighbourhood of each element; the
full open family is only materialised behind an enumeration cap, for the
brute-force oracle.

Authors:
    - Benjamin Dourthe (benjamin@adonamed.com)
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Set, Tuple

from . import settings
from .errors import CapExceeded, UniverseMismatch
from .order import (
    Direction,
    ElementSet,
    PartialOrder,
    RawRelation,
    Universe,
    is_monotone,
    max_monotone_subset,
    order_closure,
)

logger = logging.getLogger(__name__)

INTERIOR = 'interior'
CLOSURE = 'closure'


def _canonical_key(s: ElementSet) -> Tuple[int, Tuple[int, ...]]:
    return (len(s), tuple(s))


@dataclass(frozen=True)
class TopologyBase:
    """Canonical (sorted, deduplicated) intersection-closed family containing U."""
    universe: Universe
    members: Tuple[ElementSet, ...]


def _close_under_intersection(seeds: Iterable[int], n: int) -> Set[int]:
    """Return the closure of `seeds` plus U under pairwise intersection."""
    members: Set[int] = {(1 << n) - 1}
    # Folding one seed into an intersection-closed family keeps it closed.
    for s in seeds:
        if s not in members:
            members |= {s & m for m in members}
    return members


def _make_base(u: Universe, seeds: Iterable[int]) -> TopologyBase:
    closed = _close_under_intersection(seeds, u.size)
    members = sorted((ElementSet(b, u.size) for b in closed), key=_canonical_key)
    logger.debug("base closed under intersection: %d members over %d elements", len(members), u.size)
    return TopologyBase(universe=u, members=tuple(members))


def base_from_relation(rel: RawRelation, u: Universe) -> TopologyBase:
    """Build the base from the after-sets xR of every element, plus U, closed under intersection."""
    if rel.universe != u:
        raise UniverseMismatch(rel.universe.size, u.size)
    return _make_base(u, (s.bits for s in rel.after_sets()))


def base_from_family(sets: Sequence[ElementSet], u: Universe) -> TopologyBase:
    """Build the base from an explicit family of granules (e.g. a given U/R)."""
    for s in sets:
        if s.width != u.size:
            raise UniverseMismatch(u.size, s.width)
    return _make_base(u, (s.bits for s in sets))


@dataclass(frozen=True)
class FiniteTopology:
    """The topology generated by a base; `neighborhoods[x]` is the least open set containing x."""
    base: TopologyBase
    universe: Universe
    neighborhoods: Tuple[ElementSet, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.base.universe != self.universe:
            raise UniverseMismatch(self.base.universe.size, self.universe.size)
        n = self.universe.size
        nb = [(1 << n) - 1] * n
        for m in self.base.members:
            for x in m:
                nb[x] &= m.bits
        object.__setattr__(self, 'neighborhoods', tuple(ElementSet(b, n) for b in nb))

    @classmethod
    def from_base(cls, base: TopologyBase) -> 'FiniteTopology':
        return cls(base=base, universe=base.universe)


@dataclass(frozen=True)
class Gotas:
    """An ordered topological approximation space (U, topology, order) with provenance."""
    universe: Universe
    topology: FiniteTopology
    order: PartialOrder
    provenance: Dict[str, Any] = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self) -> None:
        if self.topology.universe != self.universe:
            raise UniverseMismatch(self.topology.universe.size, self.universe.size)
        if self.order.universe != self.universe:
            raise UniverseMismatch(self.order.universe.size, self.universe.size)


def _check_width(t: FiniteTopology, a: ElementSet) -> None:
    if a.width != t.universe.size:
        raise UniverseMismatch(t.universe.size, a.width)


def interior(t: FiniteTopology, a: ElementSet) -> ElementSet:
    """Greatest open subset of a (equal to the union of base members inside a)."""
    _check_width(t, a)
    outside = ~a.bits
    bits = 0
    for x in a:
        if t.neighborhoods[x].bits & outside == 0:
            bits |= 1 << x
    return ElementSet(bits, a.width)


def closure(t: FiniteTopology, a: ElementSet) -> ElementSet:
    """Smallest closed superset of a: U - interior(U - a)."""
    return interior(t, a.complement()).complement()


def is_open(t: FiniteTopology, a: ElementSet) -> bool:
    return interior(t, a) == a


def is_closed(t: FiniteTopology, a: ElementSet) -> bool:
    return closure(t, a) == a


def directed_interior(g: Gotas, a: ElementSet, direction: Direction) -> ElementSet:
    """
    Greatest open subset of a that is increasing (resp. decreasing).

    Iterates X <- max_monotone_subset(interior(X)) from X = a; the sequence
    shrinks until stable, so at most |U| rounds run.
    """
    x = a
    while True:
        nxt = max_monotone_subset(g.order, interior(g.topology, x), direction)
        if nxt == x:
            return x
        x = nxt


def directed_closure(g: Gotas, a: ElementSet, direction: Direction) -> ElementSet:
    """Smallest closed superset of a that is increasing (resp. decreasing); dual fixpoint of directed_interior."""
    x = a
    while True:
        nxt = order_closure(g.order, closure(g.topology, x), direction)
        if nxt == x:
            return x
        x = nxt


def irreducible_base(t: FiniteTopology) -> List[ElementSet]:
    """Distinct minimal neighbourhoods; their unions are exactly the nonempty open sets."""
    return sorted(set(t.neighborhoods), key=_canonical_key)


def enumerate_open_family(t: FiniteTopology, cap: Optional[int] = None) -> List[ElementSet]:
    """
    Return every open set of the topology (including the empty set), canonically sorted.

    Parameters:
        - t (FiniteTopology): Topology to enumerate
        - cap (Optional[int]): Upper bound on 2^k for the k irreducible base members;
          defaults to the `enumeration_cap` setting

    Raises:
        - CapExceeded: When 2^k exceeds the cap
    """
    if cap is None:
        cap = settings.get_int('enumeration_cap')
    members = irreducible_base(t)
    if 2 ** len(members) > cap:
        raise CapExceeded(len(members), cap)
    opens: Set[int] = {0}
    for m in members:
        opens |= {o | m.bits for o in opens}
    n = t.universe.size
    return sorted((ElementSet(b, n) for b in opens), key=_canonical_key)


def enumerate_closed_family(t: FiniteTopology, cap: Optional[int] = None) -> List[ElementSet]:
    """Complements of the open family, canonically sorted."""
    return sorted((o.complement() for o in enumerate_open_family(t, cap)), key=_canonical_key)


def oracle_directed(
    g: Gotas,
    a: ElementSet,
    direction: Direction,
    which: str,
    cap: Optional[int] = None,
    family: Optional[Sequence[ElementSet]] = None,
) -> ElementSet:
    """
    Brute-force directed interior/closure straight from the definition.

    `interior` unions every monotone open set inside a; `closure` intersects
    every monotone closed set containing a. Pass a precomputed open `family`
    to reuse one enumeration across many calls.
    """
    if which not in (INTERIOR, CLOSURE):
        raise ValueError(f"which must be {INTERIOR!r} or {CLOSURE!r}, got {which!r}")
    _check_width(g.topology, a)
    opens = family if family is not None else enumerate_open_family(g.topology, cap)
    if which == INTERIOR:
        bits = 0
        for o in opens:
            if o.issubset(a) and is_monotone(g.order, o, direction):
                bits |= o.bits
        return ElementSet(bits, a.width)
    bits = (1 << a.width) - 1
    for o in opens:
        c = o.complement()
        if a.issubset(c) and is_monotone(g.order, c, direction):
            bits &= c.bits
    return ElementSet(bits, a.width)
