"""
Finite universes, element sets and partial orders.

Elements are indexed by their position in the universe label list and every
subset is an `ElementSet` bit-vector of the universe width. A `PartialOrder`
keeps the up-set and down-set of every element so that increasing and
decreasing closures are a single pass of bitwise unions.

Authors:
    - Benjamin Dourthe (benjamin@adonamed.com)
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Iterator, List, Tuple

import networkx as nx

from .errors import (
    AntisymmetryViolation,
    MissingReflexive,
    TransitivityViolation,
    UniverseError,
    UniverseMismatch,
    UnknownLabel,
)

logger = logging.getLogger(__name__)

MAX_UNIVERSE_SIZE = 1024


class Direction(Enum):
    """Monotonicity direction: increasing (up-closed) or decreasing (down-closed)."""
    INC = 'inc'
    DEC = 'dec'

    @property
    def opposite(self) -> 'Direction':
        return Direction.DEC if self is Direction.INC else Direction.INC


@dataclass(frozen=True)
class ElementSet:
    """A subset of a universe of `width` elements, stored as an integer bit-vector."""
    bits: int
    width: int

    @classmethod
    def empty(cls, width: int) -> 'ElementSet':
        return cls(0, width)

    @classmethod
    def full(cls, width: int) -> 'ElementSet':
        return cls((1 << width) - 1, width)

    @classmethod
    def of(cls, indices: Iterable[int], width: int) -> 'ElementSet':
        bits = 0
        for i in indices:
            if not 0 <= i < width:
                raise UniverseError(f"element index {i} outside universe of size {width}")
            bits |= 1 << i
        return cls(bits, width)

    def _same_width(self, other: 'ElementSet') -> None:
        if self.width != other.width:
            raise UniverseMismatch(self.width, other.width)

    def __and__(self, other: 'ElementSet') -> 'ElementSet':
        self._same_width(other)
        return ElementSet(self.bits & other.bits, self.width)

    def __or__(self, other: 'ElementSet') -> 'ElementSet':
        self._same_width(other)
        return ElementSet(self.bits | other.bits, self.width)

    def __sub__(self, other: 'ElementSet') -> 'ElementSet':
        self._same_width(other)
        return ElementSet(self.bits & ~other.bits, self.width)

    def complement(self) -> 'ElementSet':
        return ElementSet(((1 << self.width) - 1) & ~self.bits, self.width)

    def issubset(self, other: 'ElementSet') -> bool:
        self._same_width(other)
        return self.bits & ~other.bits == 0

    def issuperset(self, other: 'ElementSet') -> bool:
        return other.issubset(self)

    def __le__(self, other: 'ElementSet') -> bool:
        return self.issubset(other)

    def __ge__(self, other: 'ElementSet') -> bool:
        return other.issubset(self)

    def __lt__(self, other: 'ElementSet') -> bool:
        return self.issubset(other) and self.bits != other.bits

    def __gt__(self, other: 'ElementSet') -> bool:
        return other < self

    def __len__(self) -> int:
        return bin(self.bits).count('1')

    def __contains__(self, i: object) -> bool:
        return isinstance(i, int) and 0 <= i < self.width and (self.bits >> i) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        """Iterate over member indices in ascending (label) order."""
        b = self.bits
        while b:
            low = b & -b
            yield low.bit_length() - 1
            b ^= low

    def is_empty(self) -> bool:
        return self.bits == 0

    def is_full(self) -> bool:
        return self.bits == (1 << self.width) - 1

    def labels(self, universe: 'Universe') -> List[str]:
        """Return member labels in universe order."""
        if universe.size != self.width:
            raise UniverseMismatch(universe.size, self.width)
        return [universe.labels[i] for i in self]


@dataclass(frozen=True)
class Universe:
    """Ordered, labelled finite ground set; label position is the element index."""
    labels: Tuple[str, ...]
    _index: Dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        object.__setattr__(self, 'labels', labels)
        if not labels:
            raise UniverseError("universe must contain at least one element")
        index: Dict[str, int] = {}
        for i, name in enumerate(labels):
            if not isinstance(name, str):
                raise UniverseError(f"label at position {i} is not a string: {name!r}")
            if name in index:
                raise UniverseError(f"duplicate label {name!r}")
            index[name] = i
        object.__setattr__(self, '_index', index)

    @classmethod
    def of(cls, labels: Iterable[str], max_size: int = MAX_UNIVERSE_SIZE) -> 'Universe':
        """Build a universe, enforcing the bit-vector size budget."""
        labels = tuple(labels)
        if len(labels) > max_size:
            raise UniverseError(f"universe of {len(labels)} elements exceeds the budget of {max_size}")
        return cls(labels)

    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(label) from None

    def label(self, i: int) -> str:
        return self.labels[i]

    def empty(self) -> ElementSet:
        return ElementSet.empty(self.size)

    def full(self) -> ElementSet:
        return ElementSet.full(self.size)

    def singleton(self, i: int) -> ElementSet:
        return ElementSet.of((i,), self.size)

    def set_of(self, labels: Iterable[str]) -> ElementSet:
        """Resolve labels to an ElementSet (duplicates are harmless)."""
        return ElementSet.of((self.index(name) for name in labels), self.size)

    def subsets(self) -> Iterator[ElementSet]:
        """Iterate all 2^n subsets in ascending bit order."""
        for bits in range(1 << self.size):
            yield ElementSet(bits, self.size)


@dataclass(frozen=True)
class RawRelation:
    """A set of ordered index pairs over one universe; duplicates collapse."""
    universe: Universe
    pairs: FrozenSet[Tuple[int, int]]

    def __post_init__(self) -> None:
        pairs = frozenset((int(i), int(j)) for i, j in self.pairs)
        n = self.universe.size
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise UniverseError(f"pair ({i}, {j}) outside universe of size {n}")
        object.__setattr__(self, 'pairs', pairs)

    @classmethod
    def from_labels(cls, universe: Universe, label_pairs: Iterable[Tuple[str, str]]) -> 'RawRelation':
        return cls(universe, frozenset((universe.index(x), universe.index(y)) for x, y in label_pairs))

    def after_sets(self) -> Tuple[ElementSet, ...]:
        """Return xR = { y : (x, y) in R } for every x, in index order."""
        n = self.universe.size
        rows = [0] * n
        for i, j in self.pairs:
            rows[i] |= 1 << j
        return tuple(ElementSet(b, n) for b in rows)

    def label_pairs(self) -> List[Tuple[str, str]]:
        u = self.universe
        return [(u.label(i), u.label(j)) for i, j in sorted(self.pairs)]


@dataclass(frozen=True)
class PartialOrder:
    """A validated partial order with the up-set and down-set of every element."""
    universe: Universe
    pairs: FrozenSet[Tuple[int, int]]
    upsets: Tuple[ElementSet, ...]
    downsets: Tuple[ElementSet, ...]

    def leq(self, i: int, j: int) -> bool:
        return j in self.upsets[i]

    def is_equality(self) -> bool:
        return all(i == j for i, j in self.pairs)

    def reversed(self) -> 'PartialOrder':
        """Return the dual order: every pair flipped, up-sets and down-sets swapped."""
        return PartialOrder(
            universe=self.universe,
            pairs=frozenset((j, i) for i, j in self.pairs),
            upsets=self.downsets,
            downsets=self.upsets,
        )

    def label_pairs(self) -> List[Tuple[str, str]]:
        u = self.universe
        return [(u.label(i), u.label(j)) for i, j in sorted(self.pairs)]


def validate_partial_order(rel: RawRelation, u: Universe) -> PartialOrder:
    """
    Check the partial order axioms and precompute up-sets and down-sets.

    Parameters:
        - rel (RawRelation): Candidate order pairs
        - u (Universe): Universe the pairs index into

    Returns:
        - PartialOrder: The validated order

    Raises:
        - MissingReflexive / AntisymmetryViolation / TransitivityViolation,
          each naming the first offending elements in index order
    """
    if rel.universe != u:
        raise UniverseMismatch(rel.universe.size, u.size)
    n = u.size
    up = [0] * n
    down = [0] * n
    for i, j in rel.pairs:
        up[i] |= 1 << j
        down[j] |= 1 << i
    for x in range(n):
        if not (up[x] >> x) & 1:
            raise MissingReflexive(u.label(x))
    for i, j in sorted(rel.pairs):
        if i != j and (up[j] >> i) & 1:
            raise AntisymmetryViolation(u.label(i), u.label(j))
    for x in range(n):
        for y in ElementSet(up[x], n):
            missing = up[y] & ~up[x]
            if missing:
                z = (missing & -missing).bit_length() - 1
                raise TransitivityViolation(u.label(x), u.label(y), u.label(z))
    return PartialOrder(
        universe=u,
        pairs=rel.pairs,
        upsets=tuple(ElementSet(b, n) for b in up),
        downsets=tuple(ElementSet(b, n) for b in down),
    )


def equality_order(u: Universe) -> PartialOrder:
    """Return the identity order (every set is both increasing and decreasing)."""
    return validate_partial_order(RawRelation(u, frozenset((i, i) for i in range(u.size))), u)


def reflexive_transitive_closure(rel: RawRelation) -> RawRelation:
    """Close a relation under reflexivity and transitivity."""
    g = nx.DiGraph()
    g.add_nodes_from(range(rel.universe.size))
    g.add_edges_from(rel.pairs)
    closed = nx.transitive_closure(g, reflexive=True)
    pairs = set(closed.edges)
    pairs.update((i, i) for i in range(rel.universe.size))
    return RawRelation(rel.universe, frozenset(pairs))


def cover_pairs(po: PartialOrder) -> List[Tuple[str, str]]:
    """Return the covering pairs (Hasse diagram edges) as label pairs in index order."""
    g = nx.DiGraph()
    g.add_nodes_from(range(po.universe.size))
    g.add_edges_from((i, j) for i, j in po.pairs if i != j)
    reduced = nx.transitive_reduction(g)
    u = po.universe
    return [(u.label(i), u.label(j)) for i, j in sorted(reduced.edges)]


def _check_width(po: PartialOrder, a: ElementSet) -> None:
    if a.width != po.universe.size:
        raise UniverseMismatch(po.universe.size, a.width)


def order_closure(po: PartialOrder, a: ElementSet, direction: Direction) -> ElementSet:
    """Smallest increasing (union of up-sets) or decreasing (union of down-sets) superset of a."""
    _check_width(po, a)
    rows = po.upsets if direction is Direction.INC else po.downsets
    bits = 0
    for i in a:
        bits |= rows[i].bits
    return ElementSet(bits, a.width)


def is_monotone(po: PartialOrder, a: ElementSet, direction: Direction) -> bool:
    """True iff a is increasing (resp. decreasing) under po."""
    return order_closure(po, a, direction) == a


def max_monotone_subset(po: PartialOrder, a: ElementSet, direction: Direction) -> ElementSet:
    """Greatest subset of a that is monotone in `direction`: U - closure(U - a, opposite)."""
    return order_closure(po, a.complement(), direction.opposite).complement()
