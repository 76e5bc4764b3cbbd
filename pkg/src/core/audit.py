"""
Proposition audits over ordered spaces.

The catalog pairs every law about the approximation operators with a check
function. `audit_proposition` sweeps all subsets (or pairs of subsets) of
one space, falling back to seeded sampling beyond the configured caps.
Around it sit the random space generator, the counterexample hunter, the
exhaustive shape sweep, the fixpoint-vs-oracle differential and the
classical reduction check.

Ids suffixed `-as-stated` encode the literal form of a law and are
expected to be refutable; the unsuffixed and `-as-proved` ids
encode the forms that follow from the operator definitions and must hold
on every space.

Authors:
    - Benjamin Dourthe (benjamin@adonamed.com)
"""
import logging
import multiprocessing
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from string import ascii_lowercase
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import settings
from .approx import DIRECTIONS, ApproxKind, NegConvention, Operators
from .errors import ConfigError, NotAPartition, OrderError, UniverseTooLarge, UnknownProposition
from .order import (
    Direction,
    ElementSet,
    PartialOrder,
    RawRelation,
    Universe,
    equality_order,
    reflexive_transitive_closure,
    validate_partial_order,
)
from .topology import (
    CLOSURE,
    INTERIOR,
    FiniteTopology,
    Gotas,
    base_from_family,
    base_from_relation,
    closure,
    directed_closure,
    directed_interior,
    enumerate_open_family,
    interior,
    irreducible_base,
    oracle_directed,
)

logger = logging.getLogger(__name__)

_MASK64 = (1 << 64) - 1

SUBSET = 'subset'
SUPERSET = 'superset'
LE = 'le'
EQUAL = 'equal'

# Violation triple: (lhs, rhs, relation that should have held)
Violation = Tuple[Union[ElementSet, Fraction], Union[ElementSet, Fraction], str]
Check = Callable[[Operators, ElementSet, Optional[ElementSet], Direction], Optional[Violation]]


class Verdict(Enum):
    HOLDS = 'holds'
    COUNTEREXAMPLE = 'counterexample'
    NOT_APPLICABLE = 'not-applicable'


@dataclass(frozen=True)
class Proposition:
    id: str
    arity: int
    expected_to_hold: bool
    summary: str
    check: Check
    nonempty_only: bool = False


@dataclass(frozen=True)
class Witness:
    """A concrete violation: `lhs relation rhs` fails for (a, b) in `direction`."""
    gotas: Gotas
    a: ElementSet
    b: Optional[ElementSet]
    lhs: Union[ElementSet, Fraction]
    rhs: Union[ElementSet, Fraction]
    relation: str
    direction: Optional[Direction] = None


@dataclass(frozen=True)
class AuditReport:
    proposition: str
    verdict: Verdict
    instances_checked: int
    subsets_checked: int
    witness: Optional[Witness] = None
    expected_to_hold: bool = True
    exhaustive: bool = True


@dataclass(frozen=True)
class GenConfig:
    universe_size: int
    relation_density: float
    order_density: float
    seed: int

    def __post_init__(self) -> None:
        if int(self.universe_size) < 1:
            raise ConfigError('universe_size', f"must be >= 1, got {self.universe_size}")
        for name in ('relation_density', 'order_density'):
            p = float(getattr(self, name))
            if not 0.0 <= p <= 1.0:
                raise ConfigError(name, f"must be in [0, 1], got {p}")


@dataclass(frozen=True)
class HuntResult:
    """Outcome of a counterexample search; `shape_size` is set when the exhaustive shape sweep ran."""
    proposition: str
    witness: Optional[Witness]
    instances_checked: int
    subsets_checked: int
    shape_size: Optional[int] = None
    notes: List[str] = field(default_factory=list)


# ---------- catalog ----------

def _subset(lhs: ElementSet, rhs: ElementSet) -> Optional[Violation]:
    return None if lhs <= rhs else (lhs, rhs, SUBSET)


def _superset(lhs: ElementSet, rhs: ElementSet) -> Optional[Violation]:
    return None if lhs >= rhs else (lhs, rhs, SUPERSET)


def _chain(*links: Tuple[ElementSet, ElementSet]) -> Optional[Violation]:
    for lhs, rhs in links:
        bad = _subset(lhs, rhs)
        if bad:
            return bad
    return None


def _upper_monotone(kind: ApproxKind) -> Check:
    def check(ops: Operators, a: ElementSet, b: Optional[ElementSet], d: Direction) -> Optional[Violation]:
        if not a <= b:
            return None
        return _subset(ops.upper(a, kind, d), ops.upper(b, kind, d))
    return check


def _lower_monotone(kind: ApproxKind) -> Check:
    def check(ops: Operators, a: ElementSet, b: Optional[ElementSet], d: Direction) -> Optional[Violation]:
        if not a <= b:
            return None
        return _subset(ops.lower(a, kind, d), ops.lower(b, kind, d))
    return check


def _upper_meet(kind: ApproxKind) -> Check:
    def check(ops, a, b, d):
        return _subset(ops.upper(a & b, kind, d), ops.upper(a, kind, d) & ops.upper(b, kind, d))
    return check


def _upper_join_stated(kind: ApproxKind) -> Check:
    def check(ops, a, b, d):
        return _subset(ops.upper(a | b, kind, d), ops.upper(a, kind, d) | ops.upper(b, kind, d))
    return check


def _upper_join_proved(kind: ApproxKind) -> Check:
    def check(ops, a, b, d):
        return _superset(ops.upper(a | b, kind, d), ops.upper(a, kind, d) | ops.upper(b, kind, d))
    return check


def _lower_meet(kind: ApproxKind) -> Check:
    def check(ops, a, b, d):
        return _subset(ops.lower(a & b, kind, d), ops.lower(a, kind, d) & ops.lower(b, kind, d))
    return check


def _lower_join(kind: ApproxKind) -> Check:
    def check(ops, a, b, d):
        return _superset(ops.lower(a | b, kind, d), ops.lower(a, kind, d) | ops.lower(b, kind, d))
    return check


def _exact_transfer(kind: ApproxKind) -> Check:
    """R-exact implies `kind`-exact."""
    def check(ops, a, b, d):
        if ops.is_exact(a, ApproxKind.R, d) and not ops.is_exact(a, kind, d):
            return (ops.lower(a, kind, d), ops.upper(a, kind, d), EQUAL)
        return None
    return check


def _negative_sandwich(kind: ApproxKind) -> Check:
    """N_R(A) lies inside both the plain negative region and the `kind` negative region."""
    def check(ops, a, b, d):
        n_r = ops.negative(a, ApproxKind.R, d, NegConvention.CROSS)
        return _chain((n_r, ops.plain_negative(a)), (n_r, ops.negative(a, kind, d, NegConvention.CROSS)))
    return check


def _negative_plain_stated(kind: ApproxKind) -> Check:
    def check(ops, a, b, d):
        return _superset(ops.plain_negative(a), ops.negative(a, kind, d, NegConvention.CROSS))
    return check


def _negative_join(kind: ApproxKind, stated: bool) -> Check:
    def check(ops, a, b, d):
        neg_a = ops.negative(a, kind, d)
        neg_b = ops.negative(b, kind, d)
        rhs = (neg_a | neg_b) if stated else (neg_a & neg_b)
        return _subset(ops.negative(a | b, kind, d), rhs)
    return check


def _negative_meet(kind: ApproxKind, stated: bool) -> Check:
    def check(ops, a, b, d):
        neg_a = ops.negative(a, kind, d)
        neg_b = ops.negative(b, kind, d)
        rhs = (neg_a & neg_b) if stated else (neg_a | neg_b)
        return _superset(ops.negative(a & b, kind, d), rhs)
    return check


def _lower_chain_r_alpha_s(ops, a, b, d):
    return _chain(
        (ops.lower(a, ApproxKind.R, d), ops.lower(a, ApproxKind.ALPHA, d)),
        (ops.lower(a, ApproxKind.ALPHA, d), ops.lower(a, ApproxKind.S, d)),
    )


def _lower_alpha_in_p(ops, a, b, d):
    return _subset(ops.lower(a, ApproxKind.ALPHA, d), ops.lower(a, ApproxKind.P, d))


def _upper_chain_s_alpha_r(ops, a, b, d):
    return _chain(
        (ops.upper(a, ApproxKind.S, d), ops.upper(a, ApproxKind.ALPHA, d)),
        (ops.upper(a, ApproxKind.ALPHA, d), ops.upper(a, ApproxKind.R, d)),
    )


def _accuracy_r_is_least(ops, a, b, d):
    eta_r = ops.accuracy(a, ApproxKind.R, d)
    for kind in (ApproxKind.ALPHA, ApproxKind.P):
        eta = ops.accuracy(a, kind, d)
        if eta_r > eta:
            return (eta_r, eta, LE)
    return None


def _boundary_chain_s_alpha_r(ops, a, b, d):
    return _chain(
        (ops.boundary(a, ApproxKind.S, d), ops.boundary(a, ApproxKind.ALPHA, d)),
        (ops.boundary(a, ApproxKind.ALPHA, d), ops.boundary(a, ApproxKind.R, d)),
    )


_A = ApproxKind.ALPHA
_P = ApproxKind.P

CATALOG: Dict[str, Proposition] = {p.id: p for p in (
    Proposition('P3.2.1', 2, True, "alpha upper is monotone", _upper_monotone(_A)),
    Proposition('P3.2.2', 2, True, "alpha upper(A & B) <= upper(A) & upper(B)", _upper_meet(_A)),
    Proposition('P3.2.3-as-stated', 2, False, "alpha upper(A | B) <= upper(A) | upper(B)", _upper_join_stated(_A)),
    Proposition('P3.2.3-as-proved', 2, True, "alpha upper(A | B) >= upper(A) | upper(B)", _upper_join_proved(_A)),
    Proposition('P3.3.1', 2, True, "alpha lower is monotone", _lower_monotone(_A)),
    Proposition('P3.3.2', 2, True, "alpha lower(A & B) <= lower(A) & lower(B)", _lower_meet(_A)),
    Proposition('P3.3.3', 2, True, "alpha lower(A | B) >= lower(A) | lower(B)", _lower_join(_A)),
    Proposition('P3.4', 1, True, "R-exact implies alpha-exact", _exact_transfer(_A)),
    Proposition('P3.6.1', 1, True, "N_R(A) <= U - cl(A) and N_R(A) <= alpha Neg(A)", _negative_sandwich(_A)),
    Proposition('P3.6.1-as-stated', 1, False, "U - cl(A) >= alpha Neg(A)", _negative_plain_stated(_A)),
    Proposition('P3.6.2-as-stated', 2, True, "alpha Neg(A | B) <= Neg(A) | Neg(B)", _negative_join(_A, stated=True)),
    Proposition('P3.6.2-as-proved', 2, True, "alpha Neg(A | B) <= Neg(A) & Neg(B)", _negative_join(_A, stated=False)),
    Proposition('P3.6.3-as-stated', 2, True, "alpha Neg(A & B) >= Neg(A) & Neg(B)", _negative_meet(_A, stated=True)),
    Proposition('P3.6.3-as-proved', 2, True, "alpha Neg(A & B) >= Neg(A) | Neg(B)", _negative_meet(_A, stated=False)),
    Proposition('P3.8.1', 2, True, "pre upper is monotone", _upper_monotone(_P)),
    Proposition('P3.8.2', 2, True, "pre upper(A & B) <= upper(A) & upper(B)", _upper_meet(_P)),
    Proposition('P3.8.3-as-stated', 2, False, "pre upper(A | B) <= upper(A) | upper(B)", _upper_join_stated(_P)),
    Proposition('P3.8.3-as-proved', 2, True, "pre upper(A | B) >= upper(A) | upper(B)", _upper_join_proved(_P)),
    Proposition('P3.9.1', 2, True, "pre lower is monotone", _lower_monotone(_P)),
    Proposition('P3.9.2', 2, True, "pre lower(A & B) <= lower(A) & lower(B)", _lower_meet(_P)),
    Proposition('P3.9.3', 2, True, "pre lower(A | B) >= lower(A) | lower(B)", _lower_join(_P)),
    Proposition('P3.10', 1, True, "R-exact implies pre-exact", _exact_transfer(_P)),
    Proposition('P3.11.1', 1, True, "N_R(A) <= U - cl(A) and N_R(A) <= pre Neg(A)", _negative_sandwich(_P)),
    Proposition('P3.11.1-as-stated', 1, False, "U - cl(A) >= pre Neg(A)", _negative_plain_stated(_P)),
    Proposition('P3.11.2', 2, True, "pre Neg(A | B) <= Neg(A) & Neg(B)", _negative_join(_P, stated=False)),
    Proposition('P3.11.3', 2, True, "pre Neg(A & B) >= Neg(A) | Neg(B)", _negative_meet(_P, stated=False)),
    Proposition('P3.12', 1, True, "R lower <= alpha lower <= semi lower", _lower_chain_r_alpha_s),
    Proposition('P3.13', 1, True, "alpha lower <= pre lower", _lower_alpha_in_p),
    Proposition('P3.14', 1, True, "semi upper <= alpha upper <= R upper", _upper_chain_s_alpha_r),
    Proposition('P3.17', 1, True, "R accuracy <= alpha and pre accuracy", _accuracy_r_is_least, nonempty_only=True),
    Proposition('P3.19', 1, True, "semi boundary <= alpha boundary <= R boundary", _boundary_chain_s_alpha_r),
)}


def catalog_ids() -> List[str]:
    return list(CATALOG)


def get_proposition(pid: str) -> Proposition:
    try:
        return CATALOG[pid]
    except KeyError:
        raise UnknownProposition(pid) from None


def resolve_props(spec: Union[str, Sequence[str]]) -> List[str]:
    """Expand 'all' or a comma list into validated catalog ids, keeping catalog order for 'all'."""
    if isinstance(spec, str):
        if spec.strip().lower() == 'all':
            return catalog_ids()
        spec = [s for s in (part.strip() for part in spec.split(',')) if s]
    ids = list(spec)
    for pid in ids:
        get_proposition(pid)
    return ids


# ---------- sweeps ----------

@lru_cache(maxsize=32)
def _subset_order(n: int) -> Tuple[int, ...]:
    """All subsets of an n-set, smallest first, ties by bit value."""
    return tuple(sorted(range(1 << n), key=lambda b: (bin(b).count('1'), b)))


def _sampled_subsets(n: int, count: int, seed: int) -> List[int]:
    rng = np.random.Generator(np.random.PCG64(seed & _MASK64))
    draws = rng.integers(0, 2, size=(count, n), dtype=np.uint8)
    return [int.from_bytes(np.packbits(row, bitorder='little').tobytes(), 'little') for row in draws]


def _tuples(n: int, arity: int, exhaustive: bool, sample_count: int,
            seed: int) -> Iterator[Tuple[int, Optional[int]]]:
    if exhaustive:
        order = _subset_order(n)
        if arity == 1:
            for a in order:
                yield a, None
        else:
            for a in order:
                for b in order:
                    yield a, b
        return
    draws = _sampled_subsets(n, sample_count * arity, seed)
    if arity == 1:
        for a in draws:
            yield a, None
    else:
        for i in range(sample_count):
            yield draws[2 * i], draws[2 * i + 1]


def audit_proposition(
    g: Gotas,
    p: str,
    direction: Optional[Direction] = None,
    exhaustive: Optional[bool] = None,
    sample_count: Optional[int] = None,
    limits: Optional[Tuple[int, int]] = None,
    ops: Optional[Operators] = None,
) -> AuditReport:
    """
    Check one catalog proposition over every subset (or pair) of a space.

    Parameters:
        - g (Gotas): Space to sweep
        - p (str): Catalog id
        - direction (Optional[Direction]): Restrict to one direction; both by default
        - exhaustive (Optional[bool]): Force exhaustive (True) or sampled (False) mode;
          by default exhaustive iff |U| is within the unary/binary limit
        - sample_count (Optional[int]): Tuples drawn in sampled mode (`audit_sample_count`)
        - limits (Optional[Tuple[int, int]]): (unary, binary) exhaustive limits
          overriding `unary_exhaustive_max` / `binary_exhaustive_max`
        - ops (Optional[Operators]): Evaluator to share across propositions on the same space

    Returns:
        - AuditReport: HOLDS, or COUNTEREXAMPLE with the first violating tuple in
          smallest-subset-first order

    Raises:
        - UnknownProposition: When p is not a catalog id
        - UniverseTooLarge: When exhaustive mode is forced beyond the limit
    """
    prop = get_proposition(p)
    n = g.universe.size
    if limits is None:
        limits = (settings.get_int('unary_exhaustive_max'), settings.get_int('binary_exhaustive_max'))
    limit = limits[0] if prop.arity == 1 else limits[1]
    if exhaustive is None:
        exhaustive = n <= limit
    elif exhaustive and n > limit:
        raise UniverseTooLarge(n, limit)
    if sample_count is None:
        sample_count = settings.get_int('audit_sample_count')
    seed = settings.get_int('audit_sample_seed')
    ops = ops or Operators(g)
    dirs = (direction,) if direction is not None else DIRECTIONS

    checked = 0
    for a_bits, b_bits in _tuples(n, prop.arity, exhaustive, sample_count, seed):
        if prop.nonempty_only and a_bits == 0:
            continue
        a = ElementSet(a_bits, n)
        b = ElementSet(b_bits, n) if b_bits is not None else None
        checked += 1
        for d in dirs:
            bad = prop.check(ops, a, b, d)
            if bad is not None:
                lhs, rhs, rel = bad
                logger.debug("%s violated at subset #%d (%s)", p, checked, d.value)
                return AuditReport(
                    proposition=p,
                    verdict=Verdict.COUNTEREXAMPLE,
                    instances_checked=1,
                    subsets_checked=checked,
                    witness=Witness(g, a, b, lhs, rhs, rel, d),
                    expected_to_hold=prop.expected_to_hold,
                    exhaustive=exhaustive,
                )
    return AuditReport(
        proposition=p,
        verdict=Verdict.HOLDS,
        instances_checked=1,
        subsets_checked=checked,
        expected_to_hold=prop.expected_to_hold,
        exhaustive=exhaustive,
    )


def recheck_witness(p: str, w: Witness) -> bool:
    """Re-evaluate a witness from scratch on a fresh evaluator; True iff it still violates p."""
    prop = get_proposition(p)
    dirs = (w.direction,) if w.direction is not None else DIRECTIONS
    ops = Operators(w.gotas)
    return any(prop.check(ops, w.a, w.b, d) is not None for d in dirs)


# ---------- generator ----------

def default_labels(n: int) -> List[str]:
    """Single letters for small universes, x0..x{n-1} otherwise."""
    if n <= len(ascii_lowercase):
        return list(ascii_lowercase[:n])
    return [f"x{i}" for i in range(n)]


def random_gotas(cfg: GenConfig) -> Gotas:
    """
    Draw a space from a seeded PCG64 stream.

    Relation pairs are included independently with `relation_density`; order
    edges i -> j (i < j) independently with `order_density`, then closed
    reflexively and transitively. Both matrices are always drawn so the
    stream layout does not depend on the densities.
    """
    n = int(cfg.universe_size)
    rng = np.random.Generator(np.random.PCG64(int(cfg.seed) & _MASK64))
    rel_mask = rng.random((n, n)) < cfg.relation_density
    order_mask = np.triu(rng.random((n, n)) < cfg.order_density, k=1)

    u = Universe.of(default_labels(n))
    rel = RawRelation(u, frozenset((int(i), int(j)) for i, j in zip(*np.nonzero(rel_mask))))
    edges = RawRelation(u, frozenset((int(i), int(j)) for i, j in zip(*np.nonzero(order_mask))))
    order = validate_partial_order(reflexive_transitive_closure(edges), u)
    topology = FiniteTopology.from_base(base_from_relation(rel, u))
    provenance = {
        'relation': rel.label_pairs(),
        'generator': {
            'universe_size': n,
            'relation_density': float(cfg.relation_density),
            'order_density': float(cfg.order_density),
            'seed': int(cfg.seed),
        },
    }
    return Gotas(u, topology, order, provenance)


def instance_seed(seed: int, index: int) -> int:
    """Derive the 64-bit seed of instance `index` from a sweep seed."""
    ss = np.random.SeedSequence([int(seed) & _MASK64, int(index)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def instance_configs(cfg: GenConfig, count: int) -> List[GenConfig]:
    """Configs for a sweep: sizes cycle 1..cfg.universe_size, seeds derived per index."""
    n = int(cfg.universe_size)
    return [
        GenConfig(1 + i % n, cfg.relation_density, cfg.order_density, instance_seed(cfg.seed, i))
        for i in range(count)
    ]


# ---------- exhaustive shapes ----------

def _up_rows(n: int, pairs: Sequence[Tuple[int, int]]) -> List[int]:
    rows = [1 << i for i in range(n)]
    for i, j in pairs:
        rows[i] |= 1 << j
    return rows


def _is_transitive(rows: List[int]) -> bool:
    for row in rows:
        for y in ElementSet(row, len(rows)):
            if rows[y] & ~row:
                return False
    return True


@lru_cache(maxsize=8)
def _preorder_rows(n: int) -> Tuple[Tuple[int, ...], ...]:
    """Up-set rows of every preorder on n points."""
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    found = []
    for mask in range(1 << len(off)):
        rows = _up_rows(n, [off[k] for k in range(len(off)) if (mask >> k) & 1])
        if _is_transitive(rows):
            found.append(tuple(rows))
    return tuple(found)


def enumerate_shapes(n: int) -> Iterator[Gotas]:
    """
    Yield every (topology, partial order) pair on n labelled points.

    Finite topologies correspond to preorders through their minimal
    neighbourhoods, so each preorder contributes one topology; the
    antisymmetric preorders double as the partial orders.
    """
    u = Universe.of(default_labels(n))
    topologies: List[FiniteTopology] = []
    orders: List[PartialOrder] = []
    for rows in _preorder_rows(n):
        rel = RawRelation(u, frozenset((i, j) for i in range(n) for j in ElementSet(rows[i], n)))
        topologies.append(FiniteTopology.from_base(base_from_relation(rel, u)))
        try:
            orders.append(validate_partial_order(rel, u))
        except OrderError:
            continue
    logger.debug("%d topologies x %d orders on %d points", len(topologies), len(orders), n)
    for t in topologies:
        for po in orders:
            yield Gotas(u, t, po, {'shape': n})


def sweep_shapes(p: str, max_size: Optional[int] = None) -> HuntResult:
    """Audit p on every shape with 1..max_size points (`shape_sweep_max` by default)."""
    if max_size is None:
        max_size = settings.get_int('shape_sweep_max')
    instances = 0
    subsets = 0
    for n in range(1, max_size + 1):
        for g in enumerate_shapes(n):
            r = audit_proposition(g, p, exhaustive=True, limits=(n, n))
            instances += 1
            subsets += r.subsets_checked
            if r.witness is not None:
                return HuntResult(p, r.witness, instances, subsets, n)
    return HuntResult(p, None, instances, subsets, max_size,
                      [f"no counterexample over all shapes with |U| <= {max_size}"])


def find_counterexample(
    p: str,
    cfg: GenConfig,
    budget: int,
    shapes_upto: Optional[int] = None,
    **audit_kwargs: Any,
) -> HuntResult:
    """
    Search random spaces (and optionally every small shape) for a violation of p.

    Parameters:
        - p (str): Catalog id, usually an `-as-stated` variant
        - cfg (GenConfig): Sweep config; instance sizes cycle 1..universe_size
        - budget (int): Random instances to try (>= 1)
        - shapes_upto (Optional[int]): Also sweep every shape up to this size when
          the random search finds nothing

    Returns:
        - HuntResult: The first witness, re-verified, or the exhausted counts
    """
    if budget < 1:
        raise ConfigError('budget', f"must be >= 1, got {budget}")
    instances = 0
    subsets = 0
    for c in instance_configs(cfg, budget):
        r = audit_proposition(random_gotas(c), p, **audit_kwargs)
        instances += 1
        subsets += r.subsets_checked
        if r.witness is not None:
            if not recheck_witness(p, r.witness):
                raise AssertionError(f"witness for {p} does not re-verify")
            logger.info("%s: witness after %d instances", p, instances)
            return HuntResult(p, r.witness, instances, subsets)
    if shapes_upto:
        shaped = sweep_shapes(p, shapes_upto)
        return HuntResult(
            p, shaped.witness, instances + shaped.instances_checked,
            subsets + shaped.subsets_checked, shaped.shape_size, shaped.notes,
        )
    return HuntResult(p, None, instances, subsets, None,
                      [f"no counterexample in {budget} random instances"])


# ---------- differential and reduction ----------

def _sweep_bits(n: int) -> Tuple[List[int], bool]:
    limit = settings.get_int('unary_exhaustive_max')
    if n <= limit:
        return list(_subset_order(n)), True
    count = settings.get_int('audit_sample_count')
    return _sampled_subsets(n, count, settings.get_int('audit_sample_seed')), False


def differential_directed(g: Gotas, cap: Optional[int] = None) -> AuditReport:
    """
    Compare the fixpoint directed interior/closure with the enumeration oracle.

    Raises:
        - CapExceeded: When the open family is larger than the cap
    """
    family = enumerate_open_family(g.topology, cap)
    n = g.universe.size
    bits, exhaustive = _sweep_bits(n)
    checked = 0
    for b in bits:
        a = ElementSet(b, n)
        checked += 1
        for d in DIRECTIONS:
            for which, fast in ((INTERIOR, directed_interior), (CLOSURE, directed_closure)):
                got = fast(g, a, d)
                want = oracle_directed(g, a, d, which, family=family)
                if got != want:
                    logger.debug("oracle disagreement: %s %s on %s", which, d.value, a.labels(g.universe))
                    return AuditReport('oracle-diff', Verdict.COUNTEREXAMPLE, 1, checked,
                                       Witness(g, a, None, got, want, EQUAL, d), exhaustive=exhaustive)
    return AuditReport('oracle-diff', Verdict.HOLDS, 1, checked, exhaustive=exhaustive)


def partition_blocks(t: FiniteTopology) -> Optional[List[ElementSet]]:
    """Return the blocks when the minimal neighbourhoods partition U, else None."""
    blocks = irreducible_base(t)
    for i, x in enumerate(blocks):
        for y in blocks[i + 1:]:
            if not (x & y).is_empty():
                return None
    return blocks


def pawlak_approx(partition: Sequence[ElementSet], a: ElementSet) -> Tuple[ElementSet, ElementSet]:
    """
    Classical lower/upper approximation over a partition.

    Raises:
        - NotAPartition: When blocks are empty, overlap or miss an element
    """
    width = a.width
    seen = 0
    for blk in partition:
        if blk.width != width:
            raise NotAPartition(f"block of width {blk.width} over universe of width {width}")
        if blk.is_empty():
            raise NotAPartition("empty block")
        if seen & blk.bits:
            raise NotAPartition("blocks overlap")
        seen |= blk.bits
    if seen != (1 << width) - 1:
        raise NotAPartition("blocks do not cover the universe")
    lo = 0
    up = 0
    for blk in partition:
        if blk.bits & ~a.bits == 0:
            lo |= blk.bits
        if blk.bits & a.bits:
            up |= blk.bits
    return ElementSet(lo, width), ElementSet(up, width)


def reduction_check(g: Gotas) -> AuditReport:
    """
    Check the classical reductions: with the equality order both directed
    operators equal the plain ones, and over a partition base the R kind
    equals the classical approximation.
    """
    if not g.order.is_equality():
        return AuditReport('reduction', Verdict.NOT_APPLICABLE, 0, 0)
    n = g.universe.size
    ops = Operators(g)
    blocks = partition_blocks(g.topology)
    bits, exhaustive = _sweep_bits(n)
    checked = 0
    for b in bits:
        a = ElementSet(b, n)
        checked += 1
        plain = {INTERIOR: interior(g.topology, a), CLOSURE: closure(g.topology, a)}
        for d in DIRECTIONS:
            for lhs, rhs in ((ops.interior(a, d), plain[INTERIOR]), (ops.closure(a, d), plain[CLOSURE])):
                if lhs != rhs:
                    return AuditReport('reduction', Verdict.COUNTEREXAMPLE, 1, checked,
                                       Witness(g, a, None, lhs, rhs, EQUAL, d), exhaustive=exhaustive)
        if blocks is not None:
            lo, up = pawlak_approx(blocks, a)
            for d in DIRECTIONS:
                for lhs, rhs in ((ops.lower(a, ApproxKind.R, d), lo), (ops.upper(a, ApproxKind.R, d), up)):
                    if lhs != rhs:
                        return AuditReport('reduction', Verdict.COUNTEREXAMPLE, 1, checked,
                                           Witness(g, a, None, lhs, rhs, EQUAL, d), exhaustive=exhaustive)
    return AuditReport('reduction', Verdict.HOLDS, 1, checked, exhaustive=exhaustive)


def partition_gotas(blocks: Sequence[Sequence[str]], labels: Sequence[str]) -> Gotas:
    """Space over `labels` whose base is the given partition, with the equality order."""
    u = Universe.of(labels)
    base = base_from_family([u.set_of(blk) for blk in blocks], u)
    return Gotas(u, FiniteTopology.from_base(base), equality_order(u))


# ---------- parallel sweep ----------

Instance = Union[GenConfig, Gotas]


def _audit_instance(job: Tuple[Instance, Tuple[str, ...], Dict[str, Any]]) -> List[AuditReport]:
    inst, prop_ids, kwargs = job
    g = random_gotas(inst) if isinstance(inst, GenConfig) else inst
    ops = Operators(g)
    return [audit_proposition(g, p, ops=ops, **kwargs) for p in prop_ids]


def merge_reports(per_instance: Sequence[Sequence[AuditReport]], prop_ids: Sequence[str]) -> List[AuditReport]:
    """Fold per-instance reports into one report per proposition; the first witness by instance index wins."""
    merged = []
    for k, p in enumerate(prop_ids):
        rows = [reports[k] for reports in per_instance]
        witness = next((r.witness for r in rows if r.witness is not None), None)
        merged.append(AuditReport(
            proposition=p,
            verdict=Verdict.COUNTEREXAMPLE if witness is not None else Verdict.HOLDS,
            instances_checked=len(rows),
            subsets_checked=sum(r.subsets_checked for r in rows),
            witness=witness,
            expected_to_hold=get_proposition(p).expected_to_hold,
            exhaustive=all(r.exhaustive for r in rows),
        ))
    return merged


def run_sweep(
    prop_ids: Sequence[str],
    instances: Sequence[Instance],
    workers: Optional[int] = None,
    **audit_kwargs: Any,
) -> List[AuditReport]:
    """
    Audit every proposition on every instance and merge by instance index.

    Parameters:
        - prop_ids (Sequence[str]): Catalog ids
        - instances (Sequence[Instance]): Spaces, or configs drawn with random_gotas
        - workers (Optional[int]): Process count (`audit_workers` by default); 1 runs inline
        - audit_kwargs: Forwarded to audit_proposition

    Returns:
        - List[AuditReport]: One merged report per id, in the given order
    """
    ids = tuple(resolve_props(list(prop_ids)))
    if workers is None:
        workers = settings.get_int('audit_workers')
    jobs = [(inst, ids, dict(audit_kwargs)) for inst in instances]
    if workers > 1 and len(jobs) > 1:
        with multiprocessing.Pool(processes=workers) as pool:
            per_instance = pool.map(_audit_instance, jobs)
    else:
        per_instance = [_audit_instance(job) for job in jobs]
    merged = merge_reports(per_instance, ids)
    for r in merged:
        logger.info("%s: %s over %d instances, %d subsets",
                    r.proposition, r.verdict.value, r.instances_checked, r.subsets_checked)
    return merged
