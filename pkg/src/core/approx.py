"""
Lower and upper approximations (R, semi, pre and alpha) in both directions,
with their boundary, positive and negative regions and accuracy.

Every kind is a composition of the directed interior `int_d` and directed
closure `cl_d` of an ordered space:

    kind   lower                      upper
    R      int_d(A)                   cl_d(A)
    S      A & cl_d(int_d(A))         A | int_d(cl_d(A))
    P      A & int_d(cl_d(A))         A | cl_d(int_d(A))
    ALPHA  A & int_d(cl_d(int_d(A)))  A | cl_d(int_d(cl_d(A)))

`Operators` memoises int_d / cl_d per set so that report building and
property sweeps reuse shared sub-terms.

Authors:
    - Benjamin Dourthe (benjamin@adonamed.com)
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .errors import EmptySetAccuracy, UniverseMismatch
from .order import Direction, ElementSet, Universe
from .topology import Gotas, closure, directed_closure, directed_interior, interior

logger = logging.getLogger(__name__)


class ApproxKind(Enum):
    R = 'r'
    S = 's'
    P = 'p'
    ALPHA = 'alpha'


class NegConvention(Enum):
    """CROSS: U minus the opposite-direction upper; SAME: U minus the same-direction upper."""
    CROSS = 'cross'
    SAME = 'same'


KINDS = (ApproxKind.R, ApproxKind.S, ApproxKind.P, ApproxKind.ALPHA)
DIRECTIONS = (Direction.INC, Direction.DEC)


@dataclass(frozen=True)
class DirectedTerms:
    """The composite terms every kind is built from, for one direction."""
    direction: Direction
    interior: ElementSet
    closure: ElementSet
    closure_of_interior: ElementSet
    interior_of_closure: ElementSet
    interior_closure_interior: ElementSet
    closure_interior_closure: ElementSet


@dataclass(frozen=True)
class ApproxEntry:
    kind: ApproxKind
    direction: Direction
    lower: ElementSet
    upper: ElementSet
    boundary: ElementSet
    positive: ElementSet
    negative_cross: ElementSet
    negative_same: ElementSet
    exact: bool
    accuracy: Optional[Fraction]  # None when the subject is empty

    def negative(self, conv: NegConvention) -> ElementSet:
        return self.negative_cross if conv is NegConvention.CROSS else self.negative_same


@dataclass(frozen=True)
class ApproxReport:
    """All kinds x directions for one subject set, plus the plain (undirected) operators."""
    universe: Universe
    subject: ElementSet
    entries: Tuple[ApproxEntry, ...]
    terms: Tuple[DirectedTerms, ...]
    plain_interior: ElementSet
    plain_closure: ElementSet
    plain_negative: ElementSet

    def entry(self, kind: ApproxKind, direction: Direction) -> ApproxEntry:
        for e in self.entries:
            if e.kind is kind and e.direction is direction:
                return e
        raise KeyError((kind, direction))

    def terms_for(self, direction: Direction) -> DirectedTerms:
        for t in self.terms:
            if t.direction is direction:
                return t
        raise KeyError(direction)


class Operators:
    """Memoising evaluator of every approximation operator over one space."""

    def __init__(self, g: Gotas):
        self.g = g
        self._int: Dict[Tuple[int, Direction], ElementSet] = {}
        self._cl: Dict[Tuple[int, Direction], ElementSet] = {}

    def _check(self, a: ElementSet) -> None:
        if a.width != self.g.universe.size:
            raise UniverseMismatch(self.g.universe.size, a.width)

    def interior(self, a: ElementSet, d: Direction) -> ElementSet:
        key = (a.bits, d)
        hit = self._int.get(key)
        if hit is None:
            hit = directed_interior(self.g, a, d)
            self._int[key] = hit
        return hit

    def closure(self, a: ElementSet, d: Direction) -> ElementSet:
        key = (a.bits, d)
        hit = self._cl.get(key)
        if hit is None:
            hit = directed_closure(self.g, a, d)
            self._cl[key] = hit
        return hit

    def lower(self, a: ElementSet, kind: ApproxKind, d: Direction) -> ElementSet:
        self._check(a)
        if kind is ApproxKind.R:
            return self.interior(a, d)
        if kind is ApproxKind.S:
            return a & self.closure(self.interior(a, d), d)
        if kind is ApproxKind.P:
            return a & self.interior(self.closure(a, d), d)
        return a & self.interior(self.closure(self.interior(a, d), d), d)

    def upper(self, a: ElementSet, kind: ApproxKind, d: Direction) -> ElementSet:
        self._check(a)
        if kind is ApproxKind.R:
            return self.closure(a, d)
        if kind is ApproxKind.S:
            return a | self.interior(self.closure(a, d), d)
        if kind is ApproxKind.P:
            return a | self.closure(self.interior(a, d), d)
        return a | self.closure(self.interior(self.closure(a, d), d), d)

    def boundary(self, a: ElementSet, kind: ApproxKind, d: Direction) -> ElementSet:
        return self.upper(a, kind, d) - self.lower(a, kind, d)

    def positive(self, a: ElementSet, kind: ApproxKind, d: Direction) -> ElementSet:
        return self.lower(a, kind, d)

    def negative(self, a: ElementSet, kind: ApproxKind, d: Direction,
                 conv: NegConvention = NegConvention.CROSS) -> ElementSet:
        side = d.opposite if conv is NegConvention.CROSS else d
        return self.upper(a, kind, side).complement()

    def is_exact(self, a: ElementSet, kind: ApproxKind, d: Direction) -> bool:
        return self.lower(a, kind, d) == self.upper(a, kind, d)

    def accuracy(self, a: ElementSet, kind: ApproxKind, d: Direction) -> Fraction:
        self._check(a)
        if a.is_empty():
            raise EmptySetAccuracy()
        return Fraction(len(self.lower(a, kind, d)), len(self.upper(a, kind, d)))

    def terms(self, a: ElementSet, d: Direction) -> DirectedTerms:
        self._check(a)
        i = self.interior(a, d)
        c = self.closure(a, d)
        ci = self.closure(i, d)
        ic = self.interior(c, d)
        return DirectedTerms(
            direction=d,
            interior=i,
            closure=c,
            closure_of_interior=ci,
            interior_of_closure=ic,
            interior_closure_interior=self.interior(ci, d),
            closure_interior_closure=self.closure(ic, d),
        )

    def plain_negative(self, a: ElementSet) -> ElementSet:
        self._check(a)
        return closure(self.g.topology, a).complement()


def lower(g: Gotas, a: ElementSet, kind: ApproxKind, direction: Direction) -> ElementSet:
    """Lower approximation of a; always a subset of a."""
    return Operators(g).lower(a, kind, direction)


def upper(g: Gotas, a: ElementSet, kind: ApproxKind, direction: Direction) -> ElementSet:
    """Upper approximation of a; always a superset of a."""
    return Operators(g).upper(a, kind, direction)


def boundary(g: Gotas, a: ElementSet, kind: ApproxKind, direction: Direction) -> ElementSet:
    return Operators(g).boundary(a, kind, direction)


def positive(g: Gotas, a: ElementSet, kind: ApproxKind, direction: Direction) -> ElementSet:
    return Operators(g).positive(a, kind, direction)


def negative(g: Gotas, a: ElementSet, kind: ApproxKind, direction: Direction,
             conv: NegConvention = NegConvention.CROSS) -> ElementSet:
    """U minus the upper approximation of the opposite (CROSS) or same (SAME) direction."""
    return Operators(g).negative(a, kind, direction, conv)


def accuracy(g: Gotas, a: ElementSet, kind: ApproxKind, direction: Direction) -> Fraction:
    """
    Exact accuracy |lower| / |upper| of a non-empty set.

    Raises:
        - EmptySetAccuracy: When a is empty
    """
    return Operators(g).accuracy(a, kind, direction)


def is_exact(g: Gotas, a: ElementSet, kind: ApproxKind, direction: Direction) -> bool:
    return Operators(g).is_exact(a, kind, direction)


def classify(g: Gotas, a: ElementSet, kind: ApproxKind, direction: Direction) -> str:
    """Return 'exact' or 'rough'."""
    return 'exact' if is_exact(g, a, kind, direction) else 'rough'


def plain_negative(g: Gotas, a: ElementSet) -> ElementSet:
    """Undirected negative region U - closure(a)."""
    return Operators(g).plain_negative(a)


def report(g: Gotas, a: ElementSet, ops: Optional[Operators] = None) -> ApproxReport:
    """
    Evaluate every kind in both directions, with regions and accuracies, in one pass.

    Parameters:
        - g (Gotas): Ordered space
        - a (ElementSet): Subject set (may be empty; accuracies are then None)
        - ops (Optional[Operators]): Evaluator to reuse across calls

    Returns:
        - ApproxReport: Entries in kind-major order (R, S, P, ALPHA) x (INC, DEC)
    """
    ops = ops or Operators(g)
    terms = tuple(ops.terms(a, d) for d in DIRECTIONS)
    uppers = {(k, d): ops.upper(a, k, d) for k in KINDS for d in DIRECTIONS}
    entries = []
    for k in KINDS:
        for d in DIRECTIONS:
            lo = ops.lower(a, k, d)
            up = uppers[(k, d)]
            entries.append(ApproxEntry(
                kind=k,
                direction=d,
                lower=lo,
                upper=up,
                boundary=up - lo,
                positive=lo,
                negative_cross=uppers[(k, d.opposite)].complement(),
                negative_same=up.complement(),
                exact=lo == up,
                accuracy=None if a.is_empty() else Fraction(len(lo), len(up)),
            ))
    plain_cl = closure(g.topology, a)
    return ApproxReport(
        universe=g.universe,
        subject=a,
        entries=tuple(entries),
        terms=terms,
        plain_interior=interior(g.topology, a),
        plain_closure=plain_cl,
        plain_negative=plain_cl.complement(),
    )
