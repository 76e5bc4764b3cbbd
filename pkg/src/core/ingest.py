"""
Reading and writing ordered spaces, and building them from information tables.

Space documents are JSON keyed by label:

    {"universe": [...], "relation": [[x, y], ...], "base": [[...], ...],
     "order": [[x, y], ...], "metadata": {...}}

At least one of "relation" and "base" must be present. Information tables
are comma-separated, UTF-8, with attribute names in the first row and the
object label in the first column; attribute kinds come from the caller.

Authors:
    - Benjamin Dourthe (benjamin@adonamed.com)
"""
import json
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from . import settings
from .errors import SchemaError, UnknownAttribute, UnknownLabel, UniverseError
from .order import (
    ElementSet,
    PartialOrder,
    RawRelation,
    Universe,
    equality_order,
    validate_partial_order,
)
from .topology import FiniteTopology, Gotas, base_from_family, base_from_relation

logger = logging.getLogger(__name__)

NOMINAL = 'nominal'
ORDINAL = 'ordinal'


@dataclass(frozen=True)
class InformationTable:
    """Objects x attributes value matrix with a declared kind per attribute."""
    frame: pd.DataFrame
    kinds: Dict[str, str]

    def __post_init__(self) -> None:
        for attr, kind in self.kinds.items():
            if attr not in self.frame.columns:
                raise UnknownAttribute(attr)
            if kind not in (NOMINAL, ORDINAL):
                raise SchemaError(f"kinds.{attr}", f"kind must be {NOMINAL!r} or {ORDINAL!r}, got {kind!r}")
        if self.frame.index.has_duplicates:
            dup = self.frame.index[self.frame.index.duplicated()][0]
            raise UniverseError(f"duplicate object label {dup!r}")

    @classmethod
    def from_rows(cls, objects: Sequence[str], attributes: Sequence[str],
                  rows: Sequence[Sequence[Any]], kinds: Optional[Dict[str, str]] = None) -> 'InformationTable':
        if len(rows) != len(objects):
            raise SchemaError("rows", f"{len(rows)} rows for {len(objects)} objects")
        for i, row in enumerate(rows):
            if len(row) != len(attributes):
                raise SchemaError(f"rows[{i}]", f"{len(row)} values for {len(attributes)} attributes")
        frame = pd.DataFrame(list(rows), index=[str(o) for o in objects], columns=[str(a) for a in attributes])
        return cls(frame=frame, kinds=dict(kinds or {}))

    @property
    def objects(self) -> List[str]:
        return [str(o) for o in self.frame.index]

    @property
    def attributes(self) -> List[str]:
        return [str(c) for c in self.frame.columns]

    def universe(self) -> Universe:
        return Universe.of(self.objects, settings.get_int('universe_max_size'))

    def kind(self, attr: str) -> str:
        if attr not in self.frame.columns:
            raise UnknownAttribute(attr)
        return self.kinds.get(attr, NOMINAL)


def read_information_table(path: str, nominal: Sequence[str] = (), ordinal: Sequence[str] = ()) -> InformationTable:
    """
    Load a CSV information table.

    Parameters:
        - path (str): CSV file; header row of attribute names, first column object labels
        - nominal (Sequence[str]): Attributes compared by equality
        - ordinal (Sequence[str]): Attributes compared by order

    Returns:
        - InformationTable: Values kept as strings; ordinal comparison decides numeric vs text

    Raises:
        - SchemaError: When the file cannot be parsed
        - UnknownAttribute: When a declared attribute is not a column
    """
    try:
        frame = pd.read_csv(path, sep=',', encoding='utf-8', dtype=str, index_col=0, keep_default_na=False)
    except (OSError, ValueError, pd.errors.ParserError) as e:
        raise SchemaError(path, str(e)) from e
    frame.index = frame.index.map(str)
    kinds = {a: NOMINAL for a in nominal}
    kinds.update({a: ORDINAL for a in ordinal})
    logger.info("read %d objects x %d attributes from %s", len(frame.index), len(frame.columns), path)
    return InformationTable(frame=frame, kinds=kinds)


def _check_attrs(t: InformationTable, attrs: Sequence[str]) -> List[str]:
    attrs = list(attrs)
    if not attrs:
        raise SchemaError("attrs", "at least one attribute is required")
    for a in attrs:
        if a not in t.frame.columns:
            raise UnknownAttribute(a)
    return attrs


def indiscernibility(t: InformationTable, attrs: Sequence[str]) -> RawRelation:
    """Equivalence relation: x R y iff x and y agree on every attribute in attrs."""
    attrs = _check_attrs(t, attrs)
    u = t.universe()
    frame = t.frame.reset_index(drop=True)
    pairs = set()
    for rows in frame.groupby(attrs, sort=False, dropna=False).indices.values():
        for i in rows:
            for j in rows:
                pairs.add((int(i), int(j)))
    return RawRelation(u, frozenset(pairs))


def _ordinal_column(t: InformationTable, attr: str) -> np.ndarray:
    """Numeric values when every cell parses as a number, else the raw strings."""
    col = t.frame[attr]
    numeric = pd.to_numeric(col, errors='coerce')
    if numeric.notna().all():
        return numeric.to_numpy(dtype=float)
    return col.astype(str).to_numpy(dtype=object)


def dominance_order(t: InformationTable, attrs: Sequence[str]) -> PartialOrder:
    """
    Componentwise dominance: x <= y iff value(x, q) <= value(y, q) for every q in attrs.

    Raises:
        - SchemaError: When an attribute is not declared ordinal
        - AntisymmetryViolation: When two distinct objects tie on every attribute
    """
    attrs = _check_attrs(t, attrs)
    for a in attrs:
        if t.kind(a) != ORDINAL:
            raise SchemaError(f"attrs.{a}", "dominance needs ordinal attributes")
    u = t.universe()
    n = u.size
    leq = np.ones((n, n), dtype=bool)
    for a in attrs:
        values = _ordinal_column(t, a)
        leq &= values[:, None] <= values[None, :]
    pairs = frozenset((int(i), int(j)) for i, j in zip(*np.nonzero(leq)))
    return validate_partial_order(RawRelation(u, pairs), u)


def gotas_from_table(t: InformationTable, relation_attrs: Sequence[str], order_attrs: Sequence[str]) -> Gotas:
    """
    Space whose topology comes from indiscernibility on relation_attrs and whose
    order is dominance on order_attrs, or equality when order_attrs is empty.
    """
    rel = indiscernibility(t, relation_attrs)
    u = rel.universe
    order = dominance_order(t, order_attrs) if order_attrs else equality_order(u)
    topology = FiniteTopology.from_base(base_from_relation(rel, u))
    provenance = {
        'relation': rel.label_pairs(),
        'metadata': {
            'source': 'information-table',
            'relation': 'indiscernibility',
            'relation_attributes': list(relation_attrs),
            'order': 'dominance' if order_attrs else 'equality',
            'order_attributes': list(order_attrs),
        },
    }
    return Gotas(u, topology, order, provenance)


# ---------- documents ----------

def _expect_list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise SchemaError(path, f"expected an array, got {type(value).__name__}")
    return value


def _pair(value: Any, path: str) -> Tuple[str, str]:
    if not (isinstance(value, list) and len(value) == 2 and all(isinstance(x, str) for x in value)):
        raise SchemaError(path, "expected a [label, label] pair")
    return value[0], value[1]


def _resolve(u: Universe, name: Any, path: str) -> int:
    if not isinstance(name, str):
        raise SchemaError(path, "labels must be strings")
    try:
        return u.index(name)
    except UnknownLabel:
        raise UnknownLabel(name, path) from None


def _pairs(u: Universe, doc: Dict[str, Any], key: str) -> List[Tuple[int, int]]:
    out = []
    for k, item in enumerate(_expect_list(doc[key], key)):
        x, y = _pair(item, f"{key}[{k}]")
        out.append((_resolve(u, x, f"{key}[{k}]"), _resolve(u, y, f"{key}[{k}]")))
    return out


def parse_gotas(text: str) -> Gotas:
    """
    Parse a space document.

    Raises:
        - SchemaError: Malformed JSON or fields (path names the field)
        - UnknownLabel: A label outside the universe
        - OrderError subclasses: The order is not a partial order
    """
    try:
        doc = json.loads(text)
    except ValueError as e:
        raise SchemaError('$', f"invalid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise SchemaError('$', "expected an object")
    for key in ('universe', 'order'):
        if key not in doc:
            raise SchemaError(key, "missing required field")
    if 'relation' not in doc and 'base' not in doc:
        raise SchemaError('$', "one of 'relation' or 'base' is required")

    labels = _expect_list(doc['universe'], 'universe')
    for k, name in enumerate(labels):
        if not isinstance(name, str):
            raise SchemaError(f"universe[{k}]", "labels must be strings")
    u = Universe.of(labels, settings.get_int('universe_max_size'))

    order = validate_partial_order(RawRelation(u, frozenset(_pairs(u, doc, 'order'))), u)
    provenance: Dict[str, Any] = {}
    rel = None
    if 'relation' in doc:
        rel = RawRelation(u, frozenset(_pairs(u, doc, 'relation')))
        provenance['relation'] = rel.label_pairs()
    if 'base' in doc:
        family = []
        for k, members in enumerate(_expect_list(doc['base'], 'base')):
            path = f"base[{k}]"
            idx = [_resolve(u, name, path) for name in _expect_list(members, path)]
            family.append(ElementSet.of(idx, u.size))
        base = base_from_family(family, u)
        if rel is not None:
            derived = FiniteTopology.from_base(base_from_relation(rel, u))
            if derived.neighborhoods != FiniteTopology.from_base(base).neighborhoods:
                raise SchemaError('base', "generates a different topology than 'relation'")
    else:
        base = base_from_relation(rel, u)
    if 'metadata' in doc:
        if not isinstance(doc['metadata'], dict):
            raise SchemaError('metadata', "expected an object")
        provenance['metadata'] = doc['metadata']
    return Gotas(u, FiniteTopology.from_base(base), order, provenance)


def gotas_to_document(g: Gotas) -> Dict[str, Any]:
    """Canonical document: base members in canonical order, label arrays in universe order."""
    u = g.universe
    doc: Dict[str, Any] = {
        'universe': list(u.labels),
        'base': [m.labels(u) for m in g.topology.base.members],
        'order': [list(p) for p in g.order.label_pairs()],
    }
    if 'relation' in g.provenance:
        doc['relation'] = sorted([list(p) for p in g.provenance['relation']],
                                 key=lambda p: (u.index(p[0]), u.index(p[1])))
    meta = dict(g.provenance.get('metadata') or {})
    if 'generator' in g.provenance:
        meta['generator'] = g.provenance['generator']
    if meta:
        doc['metadata'] = meta
    return doc


def serialize_gotas(g: Gotas) -> str:
    """Byte-stable JSON text of `gotas_to_document`, with a trailing newline."""
    return json.dumps(gotas_to_document(g), ensure_ascii=False, indent=2, sort_keys=True) + '\n'


def load_gotas(path: str) -> Gotas:
    try:
        with open(path, 'r', encoding='utf-8') as f:
            text = f.read()
    except OSError as e:
        raise SchemaError(path, str(e)) from e
    return parse_gotas(text)
