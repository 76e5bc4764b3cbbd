"""
Command-line front end: approximation reports, proposition audits,
counterexample hunts, random instances, table ingestion and the
fixpoint-vs-oracle differential.

Exit status is 0 on success, 1 when a counterexample or disagreement is
found (with --expect-hold, only expected-to-hold propositions count) and
2 on any input or usage error.

Authors:
    - Benjamin Dourthe (benjamin@adonamed.com)
"""
import argparse
import logging
import sys
from typing import List, Optional, Sequence, Tuple

from core import settings
from core.approx import DIRECTIONS, KINDS, ApproxKind, NegConvention, report
from core.audit import (
    AuditReport,
    GenConfig,
    Verdict,
    differential_directed,
    find_counterexample,
    get_proposition,
    instance_configs,
    merge_reports,
    random_gotas,
    recheck_witness,
    resolve_props,
    run_sweep,
)
from core.errors import ConfigError, GotasError
from core.ingest import gotas_from_table, load_gotas, read_information_table, serialize_gotas
from core.order import Direction
from core.topology import Gotas

from . import render

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FOUND = 1
EXIT_ERROR = 2


def _random_spec(text: str) -> Tuple[GenConfig, int]:
    """Parse 'n,density,seed,count'; the density drives both relation and order."""
    parts = [p.strip() for p in text.split(',')]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("expected n,density,seed,count")
    try:
        n, density, seed, count = int(parts[0]), float(parts[1]), int(parts[2]), int(parts[3])
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad number in {text!r}") from None
    if count < 1:
        raise argparse.ArgumentTypeError("count must be >= 1")
    try:
        return GenConfig(n, density, density, seed), count
    except GotasError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _labels(text: str) -> List[str]:
    return [s for s in (p.strip() for p in text.split(',')) if s]


def _configure_logging(verbose: int, quiet: bool) -> None:
    if quiet:
        level = logging.ERROR
    elif verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, settings.get_str('log_level').upper(), logging.WARNING)
    logging.basicConfig(level=level, format='[%(levelname)s] %(message)s', stream=sys.stderr, force=True)


def _instances(args: argparse.Namespace) -> Sequence:
    if args.input:
        return [load_gotas(args.input)]
    cfg, count = args.random
    return instance_configs(cfg, count)


# ---------- commands ----------

def _approx_command(args: argparse.Namespace) -> int:
    g = load_gotas(args.input)
    a = g.universe.set_of(_labels(args.set))
    kinds = KINDS if args.kind == 'all' else (ApproxKind(args.kind),)
    dirs = DIRECTIONS if args.dir == 'all' else (Direction(args.dir),)
    try:
        conv = NegConvention(args.neg or settings.get_str('negative_convention'))
    except ValueError:
        raise ConfigError('negative_convention', "must be 'cross' or 'same'") from None
    rep = report(g, a)
    if args.format == 'json':
        sys.stdout.write(render.dumps(render.approx_json(rep, kinds, dirs, conv)))
    else:
        sys.stdout.write(render.approx_table(rep, kinds, dirs, conv))
    return EXIT_OK


def _audit_exit(reports: Sequence[AuditReport], expect_hold: bool) -> int:
    for r in reports:
        if r.verdict is not Verdict.COUNTEREXAMPLE:
            continue
        if not expect_hold or r.expected_to_hold:
            return EXIT_FOUND
    return EXIT_OK


def _audit_command(args: argparse.Namespace) -> int:
    props = resolve_props(args.props)
    if args.hunt:
        return _hunt(args, props)
    reports = run_sweep(props, _instances(args), workers=args.workers)
    for r in reports:
        if r.witness is not None and not recheck_witness(r.proposition, r.witness):
            raise GotasError(f"witness for {r.proposition} does not re-verify")
    if args.format == 'json':
        sys.stdout.write(render.dumps(render.audit_json(reports)))
    else:
        sys.stdout.write(render.audit_table(reports))
    return _audit_exit(reports, args.expect_hold)


def _hunt(args: argparse.Namespace, props: Sequence[str]) -> int:
    if not args.random:
        raise GotasError("--hunt needs --random n,density,seed,count")
    cfg, count = args.random
    shapes = settings.get_int('shape_sweep_max')
    results = [find_counterexample(p, cfg, count, shapes_upto=shapes) for p in props]
    if args.format == 'json':
        sys.stdout.write(render.dumps(render.hunt_json(results)))
    else:
        sys.stdout.write(render.hunt_table(results))
    for h in results:
        if h.witness is not None and (not args.expect_hold or get_proposition(h.proposition).expected_to_hold):
            return EXIT_FOUND
    return EXIT_OK


def _gen_command(args: argparse.Namespace) -> int:
    g = random_gotas(GenConfig(args.size, args.rel_density, args.order_density, args.seed))
    sys.stdout.write(serialize_gotas(g))
    return EXIT_OK


def _ingest_command(args: argparse.Namespace) -> int:
    nominal = _labels(args.nominal or '')
    ordinal = _labels(args.ordinal or '')
    table = read_information_table(args.csv, nominal=nominal, ordinal=ordinal)
    relation_attrs = nominal or table.attributes
    if args.order == 'dominance' and not ordinal:
        raise GotasError("--order dominance needs at least one --ordinal attribute")
    g = gotas_from_table(table, relation_attrs, ordinal if args.order == 'dominance' else ())
    sys.stdout.write(serialize_gotas(g))
    return EXIT_OK


def _oracle_diff_command(args: argparse.Namespace) -> int:
    per_instance: List[List[AuditReport]] = []
    for inst in _instances(args):
        g: Gotas = random_gotas(inst) if isinstance(inst, GenConfig) else inst
        per_instance.append([differential_directed(g, args.cap)])
    merged = merge_reports(per_instance, ['oracle-diff'])[0]
    if args.format == 'json':
        sys.stdout.write(render.dumps(render.audit_json([merged])))
    else:
        sys.stdout.write(render.audit_table([merged]))
        sys.stdout.write(f"\n{merged.subsets_checked} subsets x 2 directions x 2 operators\n")
    return EXIT_FOUND if merged.verdict is Verdict.COUNTEREXAMPLE else EXIT_OK


# ---------- parser ----------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='gotas', description='Ordered topological rough set approximations')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='More logging (-vv for debug)')
    parser.add_argument('-q', '--quiet', action='store_true', help='Only log errors')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('approx', help='Lower/upper approximations and regions of a set')
    p.add_argument('--input', required=True, help='Space document (JSON)')
    p.add_argument('--set', required=True, help='Comma-separated labels; empty for the empty set')
    p.add_argument('--kind', choices=[k.value for k in KINDS] + ['all'], default='all')
    p.add_argument('--dir', choices=[d.value for d in DIRECTIONS] + ['all'], default='all')
    p.add_argument('--neg', choices=[c.value for c in NegConvention], default=None,
                   help='Negative region convention (default: negative_convention setting)')
    p.add_argument('--format', choices=['table', 'json'], default='table')
    p.set_defaults(func=_approx_command)

    p = sub.add_parser('audit', help='Check catalog propositions')
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument('--input', help='Space document (JSON)')
    src.add_argument('--random', type=_random_spec, metavar='N,DENSITY,SEED,COUNT')
    p.add_argument('--props', default='all', help="Comma-separated ids or 'all'")
    p.add_argument('--expect-hold', action='store_true',
                   help='Exit 1 only when an expected-to-hold proposition fails')
    p.add_argument('--hunt', action='store_true',
                   help='Search random instances, then every small shape, for a counterexample')
    p.add_argument('--workers', type=int, default=None, help='Parallel processes (default: audit_workers setting)')
    p.add_argument('--format', choices=['table', 'json'], default='table')
    p.set_defaults(func=_audit_command)

    p = sub.add_parser('gen', help='Print a random space document')
    p.add_argument('--size', type=int, required=True)
    p.add_argument('--rel-density', type=float, default=0.3)
    p.add_argument('--order-density', type=float, default=0.3)
    p.add_argument('--seed', type=int, default=0)
    p.set_defaults(func=_gen_command)

    p = sub.add_parser('ingest', help='Build a space document from a CSV information table')
    p.add_argument('--csv', required=True)
    p.add_argument('--nominal', default='', help='Comma-separated nominal attributes')
    p.add_argument('--ordinal', default='', help='Comma-separated ordinal attributes')
    p.add_argument('--relation', choices=['indiscernibility'], default='indiscernibility')
    p.add_argument('--order', choices=['dominance', 'equality'], default='dominance')
    p.set_defaults(func=_ingest_command)

    p = sub.add_parser('oracle-diff', help='Compare fixpoint operators with the enumeration oracle')
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument('--input', help='Space document (JSON)')
    src.add_argument('--random', type=_random_spec, metavar='N,DENSITY,SEED,COUNT')
    p.add_argument('--cap', type=int, default=None, help='Open family cap (default: enumeration_cap setting)')
    p.add_argument('--format', choices=['table', 'json'], default='table')
    p.set_defaults(func=_oracle_diff_command)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, run one command and return its exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_ERROR
    _configure_logging(args.verbose, args.quiet)
    try:
        return args.func(args)
    except GotasError as e:
        logger.error("%s", e)
        return EXIT_ERROR
