"""
Console tables and canonical JSON for command results.

Sets print as `{a, b}` in tables and as label arrays in JSON; exact
rationals print as `p/q` or `{"num": p, "den": q}`, and the accuracy of
an empty subject prints as `undefined`.

Authors:
    - Benjamin Dourthe (benjamin@adonamed.com)
"""
import json
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Union

from core.approx import ApproxKind, ApproxReport, NegConvention
from core.audit import EQUAL, LE, SUBSET, SUPERSET, AuditReport, HuntResult, Verdict, Witness
from core.ingest import gotas_to_document
from core.order import Direction, ElementSet, Universe

UNDEFINED = 'undefined'

_REL_SYMBOLS = {SUBSET: '<=', SUPERSET: '>=', LE: '<=', EQUAL: '=='}


def dumps(data: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True) + '\n'


def set_text(s: ElementSet, u: Universe) -> str:
    return '{' + ', '.join(s.labels(u)) + '}'


def set_json(s: ElementSet, u: Universe) -> List[str]:
    """Label array in universe order."""
    return s.labels(u)


def rational_text(q: Optional[Fraction]) -> str:
    return UNDEFINED if q is None else f"{q.numerator}/{q.denominator}"


def rational_json(q: Optional[Fraction]) -> Union[str, Dict[str, int]]:
    return UNDEFINED if q is None else {'num': q.numerator, 'den': q.denominator}


def _value_text(v: Union[ElementSet, Fraction], u: Universe) -> str:
    return set_text(v, u) if isinstance(v, ElementSet) else rational_text(v)


def _value_json(v: Union[ElementSet, Fraction], u: Universe) -> Any:
    return set_json(v, u) if isinstance(v, ElementSet) else rational_json(v)


def _table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(c)) for w, c in zip(widths, row)]
    lines = ['  '.join(c.ljust(w) for c, w in zip(header, widths)).rstrip()]
    lines.append('  '.join('-' * w for w in widths))
    for row in rows:
        lines.append('  '.join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return '\n'.join(lines) + '\n'


# ---------- approx ----------

def _selected(report: ApproxReport, kinds: Sequence[ApproxKind], dirs: Sequence[Direction]):
    return [e for e in report.entries if e.kind in kinds and e.direction in dirs]


def approx_json(report: ApproxReport, kinds: Sequence[ApproxKind], dirs: Sequence[Direction],
                conv: NegConvention) -> Dict[str, Any]:
    u = report.universe
    entries = []
    for e in _selected(report, kinds, dirs):
        entries.append({
            'kind': e.kind.value,
            'direction': e.direction.value,
            'lower': set_json(e.lower, u),
            'upper': set_json(e.upper, u),
            'boundary': set_json(e.boundary, u),
            'positive': set_json(e.positive, u),
            'negative': set_json(e.negative(conv), u),
            'exact': e.exact,
            'accuracy': rational_json(e.accuracy),
        })
    terms = {}
    for d in dirs:
        t = report.terms_for(d)
        terms[d.value] = {
            'interior': set_json(t.interior, u),
            'closure': set_json(t.closure, u),
            'closure_of_interior': set_json(t.closure_of_interior, u),
            'interior_of_closure': set_json(t.interior_of_closure, u),
            'interior_closure_interior': set_json(t.interior_closure_interior, u),
            'closure_interior_closure': set_json(t.closure_interior_closure, u),
        }
    return {
        'subject': set_json(report.subject, u),
        'negative_convention': conv.value,
        'entries': entries,
        'terms': terms,
        'plain': {
            'interior': set_json(report.plain_interior, u),
            'closure': set_json(report.plain_closure, u),
            'negative': set_json(report.plain_negative, u),
        },
    }


def approx_table(report: ApproxReport, kinds: Sequence[ApproxKind], dirs: Sequence[Direction],
                 conv: NegConvention) -> str:
    u = report.universe
    header = ['kind', 'dir', 'lower', 'upper', 'boundary', 'positive', f'negative({conv.value})', 'accuracy']
    rows = []
    for e in _selected(report, kinds, dirs):
        rows.append([
            e.kind.value, e.direction.value,
            set_text(e.lower, u), set_text(e.upper, u), set_text(e.boundary, u),
            set_text(e.positive, u), set_text(e.negative(conv), u), rational_text(e.accuracy),
        ])
    out = f"A = {set_text(report.subject, u)}\n\n" + _table(header, rows)
    out += (f"\nplain: interior {set_text(report.plain_interior, u)}, "
            f"closure {set_text(report.plain_closure, u)}, "
            f"negative {set_text(report.plain_negative, u)}\n")
    return out


# ---------- audit ----------

def verdict_text(r: AuditReport) -> str:
    if r.verdict is Verdict.COUNTEREXAMPLE and not r.expected_to_hold:
        return 'refuted (expected)'
    return r.verdict.value


def witness_json(w: Witness) -> Dict[str, Any]:
    u = w.gotas.universe
    out = {
        'gotas': gotas_to_document(w.gotas),
        'a': set_json(w.a, u),
        'lhs': _value_json(w.lhs, u),
        'rhs': _value_json(w.rhs, u),
        'relation': w.relation,
    }
    if w.b is not None:
        out['b'] = set_json(w.b, u)
    if w.direction is not None:
        out['direction'] = w.direction.value
    return out


def witness_text(w: Witness) -> str:
    u = w.gotas.universe
    ab = f"A = {set_text(w.a, u)}" + (f", B = {set_text(w.b, u)}" if w.b is not None else '')
    d = f" [{w.direction.value}]" if w.direction is not None else ''
    return (f"    U = {set_text(u.full(), u)}, {ab}{d}\n"
            f"    expected {_value_text(w.lhs, u)} {_REL_SYMBOLS[w.relation]} {_value_text(w.rhs, u)}\n")


def audit_json(reports: Sequence[AuditReport]) -> List[Dict[str, Any]]:
    out = []
    for r in reports:
        row: Dict[str, Any] = {
            'prop': r.proposition,
            'verdict': r.verdict.value,
            'instances': r.instances_checked,
            'subsets': r.subsets_checked,
        }
        if r.witness is not None:
            row['witness'] = witness_json(r.witness)
        out.append(row)
    return out


def audit_table(reports: Sequence[AuditReport]) -> str:
    rows = [[r.proposition, verdict_text(r), str(r.instances_checked), str(r.subsets_checked),
             '' if r.exhaustive else 'sampled'] for r in reports]
    out = _table(['prop', 'verdict', 'instances', 'subsets', 'mode'], rows)
    for r in reports:
        if r.witness is not None:
            out += f"\n{r.proposition} witness:\n" + witness_text(r.witness)
    return out


def hunt_json(results: Sequence[HuntResult]) -> List[Dict[str, Any]]:
    out = []
    for h in results:
        row: Dict[str, Any] = {
            'prop': h.proposition,
            'verdict': 'counterexample' if h.witness is not None else 'holds',
            'instances': h.instances_checked,
            'subsets': h.subsets_checked,
        }
        if h.shape_size is not None:
            row['shape_size'] = h.shape_size
        if h.notes:
            row['notes'] = list(h.notes)
        if h.witness is not None:
            row['witness'] = witness_json(h.witness)
        out.append(row)
    return out


def hunt_table(results: Sequence[HuntResult]) -> str:
    rows = []
    for h in results:
        verdict = 'counterexample' if h.witness is not None else 'none found'
        rows.append([h.proposition, verdict, str(h.instances_checked), str(h.subsets_checked), '; '.join(h.notes)])
    out = _table(['prop', 'result', 'instances', 'subsets', 'notes'], rows)
    for h in results:
        if h.witness is not None:
            out += f"\n{h.proposition} witness:\n" + witness_text(h.witness)
    return out
