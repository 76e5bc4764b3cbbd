"""
Test suite for proposition audits, the random generator, counterexample
hunting, oracle differential and classical reductions.

Authors:
    - Benjamin Dourthe (benjamin@adonamed.com)
"""
import os
import sys
import unittest
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', 'src'))
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))
from common import (
    PerformanceTimer, TestResultAggregator, four_point_space, labels_set, print_suite_footer,
    print_suite_header, recorded, run_suite_methods, set_labels, space_from
)
from test_config import get_sweep_config

import numpy as np

from core.approx import ApproxKind, Operators, lower
from core.audit import (
    CATALOG, GenConfig, Verdict, audit_proposition, catalog_ids, default_labels,
    differential_directed, enumerate_shapes, find_counterexample, instance_configs,
    partition_blocks, partition_gotas, pawlak_approx, random_gotas, recheck_witness,
    reduction_check, resolve_props, run_sweep, sweep_shapes
)
from core.errors import ConfigError, NotAPartition, UniverseTooLarge, UnknownProposition
from core.ingest import serialize_gotas
from core.order import Direction, ElementSet, RawRelation, validate_partial_order
from core.topology import enumerate_open_family

REQUIRED_IDS = [
    'P3.2.1', 'P3.2.2', 'P3.2.3-as-stated', 'P3.2.3-as-proved', 'P3.3.1', 'P3.3.2', 'P3.3.3', 'P3.4',
    'P3.6.1', 'P3.6.2-as-stated', 'P3.6.2-as-proved', 'P3.6.3-as-stated', 'P3.6.3-as-proved',
    'P3.8.1', 'P3.8.2', 'P3.8.3-as-stated', 'P3.8.3-as-proved', 'P3.9.1', 'P3.9.2', 'P3.9.3',
    'P3.10', 'P3.11.1', 'P3.11.2', 'P3.11.3', 'P3.12', 'P3.13', 'P3.14', 'P3.17', 'P3.19',
]


def _expected_to_hold():
    return [p for p in catalog_ids() if CATALOG[p].expected_to_hold]


class PropositionAuditTestSuite(unittest.TestCase):
    """Catalog sweeps on fixed and random spaces."""
    def __init__(self, methodName='runTest'):
        super().__init__(methodName)
        self.aggregator = TestResultAggregator("Proposition Audit Test Suite")

    def setUp(self) -> None:
        self.g = four_point_space()

    def test_01_catalog(self) -> None:
        """TEST 1: Catalog ids resolve; unknown ids are rejected."""
        with recorded(self.aggregator, 1, "Catalog", "Closed set of proposition ids") as m:
            ids = catalog_ids()
            for pid in REQUIRED_IDS:
                self.assertIn(pid, ids)
            self.assertEqual(resolve_props('all'), ids)
            self.assertEqual(resolve_props('P3.12, P3.14'), ['P3.12', 'P3.14'])
            self.assertFalse(CATALOG['P3.2.3-as-stated'].expected_to_hold)
            self.assertTrue(CATALOG['P3.2.3-as-proved'].expected_to_hold)
            with self.assertRaises(UnknownProposition):
                resolve_props('P9.9')
            with self.assertRaises(UnknownProposition):
                audit_proposition(self.g, 'P3.99')
            m['Catalog Size'] = len(ids)
            m['Result'] = "all required ids present"

    def test_02_four_point_space(self) -> None:
        """TEST 2: Chains, accuracy ordering and boundary nesting on the fixture."""
        with recorded(self.aggregator, 2, "Four Point Space", "Exhaustive sweep of 16 subsets") as m:
            r = audit_proposition(self.g, 'P3.12')
            self.assertEqual((r.verdict, r.subsets_checked, r.instances_checked), (Verdict.HOLDS, 16, 1))
            r = audit_proposition(self.g, 'P3.17')
            self.assertEqual((r.verdict, r.subsets_checked), (Verdict.HOLDS, 15))
            for pid in ('P3.14', 'P3.19', 'P3.13'):
                self.assertIs(audit_proposition(self.g, pid).verdict, Verdict.HOLDS)
            r = audit_proposition(self.g, 'P3.2.1', direction=Direction.INC)
            self.assertEqual((r.verdict, r.subsets_checked), (Verdict.HOLDS, 256))
            self.assertEqual(audit_proposition(self.g, 'P3.12'), audit_proposition(self.g, 'P3.12'))
            m['Result'] = "P3.12 over 16, P3.17 over 15"

    def test_03_property_sweep(self) -> None:
        """TEST 3: Every expected-to-hold proposition holds on random spaces."""
        cfg = get_sweep_config('property_sweep')
        with recorded(self.aggregator, 3, "Property Sweep", f"{cfg['instances']} random spaces, n in 1..{cfg['max_size']}") as m:
            configs = instance_configs(GenConfig(cfg['max_size'], cfg['density'], cfg['density'], cfg['seed']),
                                       cfg['instances'])
            timer = PerformanceTimer()
            timer.start()
            reports = run_sweep(_expected_to_hold(), configs, workers=1,
                                limits=(12, cfg['binary_exhaustive_max']), sample_count=cfg['binary_sample_count'])
            elapsed = timer.stop()
            for r in reports:
                self.assertIs(r.verdict, Verdict.HOLDS, f"{r.proposition} failed")
                self.assertEqual(r.instances_checked, cfg['instances'])
            self.assertLess(elapsed, cfg['time_budget_seconds'])
            m['Propositions'] = len(reports)
            m['Subsets Checked'] = sum(r.subsets_checked for r in reports)
            m['Sweep Time'] = f"{elapsed:.1f}s"
            m['Result'] = "zero violations"

    def test_04_statement_audit(self) -> None:
        """TEST 4: As-stated join laws are hunted; as-proved forms hold on every small shape."""
        cfg = get_sweep_config('statement_audit')
        with recorded(self.aggregator, 4, "Statement Audit", "As-stated vs as-proved union laws") as m:
            shaped = sweep_shapes('P3.8.3-as-stated', cfg['shape_sweep_max'])
            self.assertIsNotNone(shaped.witness)
            self.assertTrue(recheck_witness('P3.8.3-as-stated', shaped.witness))

            hunt_cfg = GenConfig(cfg['hunt_size'], cfg['hunt_density'], cfg['hunt_density'], cfg['hunt_seed'])
            hunt = find_counterexample('P3.2.3-as-stated', hunt_cfg, cfg['hunt_budget'],
                                       shapes_upto=cfg['shape_sweep_max'])
            if hunt.witness is not None:
                self.assertTrue(recheck_witness('P3.2.3-as-stated', hunt.witness))
            else:
                self.assertEqual(hunt.shape_size, cfg['shape_sweep_max'])
                self.assertTrue(hunt.notes)

            for pid in ('P3.2.3-as-proved', 'P3.8.3-as-proved'):
                self.assertIsNone(sweep_shapes(pid, cfg['shape_sweep_max']).witness)
                proved = find_counterexample(pid, GenConfig(4, 0.4, 0.4, cfg['hunt_seed']),
                                             cfg['random_as_proved_instances'])
                self.assertIsNone(proved.witness)
            m['P3.2.3-as-stated'] = 'witness found' if hunt.witness is not None else '; '.join(hunt.notes)
            m['P3.8.3-as-stated'] = f"witness at |U| = {shaped.shape_size}"
            m['Result'] = "as-proved forms hold"

    def test_05_negative_region_statements(self) -> None:
        """TEST 5: Literal negative-region inclusion fails; the proved sandwich holds."""
        with recorded(self.aggregator, 5, "Negative Region Statements", "Opens {}, {a}, U with equality order") as m:
            g = space_from(['a', 'b', 'c'], [['a']])
            for pid in ('P3.6.1-as-stated', 'P3.11.1-as-stated'):
                r = audit_proposition(g, pid)
                self.assertIs(r.verdict, Verdict.COUNTEREXAMPLE)
                self.assertTrue(recheck_witness(pid, r.witness))
            b = labels_set(g, 'b')
            self.assertIsNotNone(CATALOG['P3.6.1-as-stated'].check(Operators(g), b, None, Direction.INC))
            for pid in ('P3.6.1', 'P3.11.1'):
                self.assertIs(audit_proposition(g, pid).verdict, Verdict.HOLDS)
            m['Result'] = "as-stated refuted, sandwich holds"

    def test_06_oracle_sweep(self) -> None:
        """TEST 6: Fixpoint operators agree with the enumeration oracle."""
        cfg = get_sweep_config('oracle_sweep')
        with recorded(self.aggregator, 6, "Oracle Sweep", f"{cfg['instances']} random spaces, n <= {cfg['max_size']}") as m:
            r = differential_directed(self.g)
            self.assertEqual((r.verdict, r.subsets_checked), (Verdict.HOLDS, 16))
            configs = instance_configs(GenConfig(cfg['max_size'], cfg['density'], cfg['density'], cfg['seed']),
                                       cfg['instances'])
            total = 0
            for c in configs:
                r = differential_directed(random_gotas(c))
                self.assertIs(r.verdict, Verdict.HOLDS)
                self.assertEqual(r.subsets_checked, 2 ** c.universe_size)
                total += r.subsets_checked
            m['Subsets Checked'] = total
            m['Result'] = "zero disagreements"

    def test_07_reductions(self) -> None:
        """TEST 7: Equality order collapses directions; partitions match the classical oracle."""
        cfg = get_sweep_config('reduction_sweep')
        with recorded(self.aggregator, 7, "Reductions", "Equality order and partition bases") as m:
            self.assertIs(reduction_check(self.g).verdict, Verdict.NOT_APPLICABLE)

            g = partition_gotas([['a', 'b'], ['c', 'd']], ['a', 'b', 'c', 'd'])
            a = labels_set(g, 'a,b,c')
            lo, up = pawlak_approx(partition_blocks(g.topology), a)
            self.assertEqual((set_labels(g, lo), set_labels(g, up)), ('a,b', 'a,b,c,d'))
            self.assertEqual(set_labels(g, lower(g, a, ApproxKind.R, Direction.INC)), 'a,b')
            lo, up = pawlak_approx(partition_blocks(g.topology), labels_set(g, 'a'))
            self.assertEqual((set_labels(g, lo), set_labels(g, up)), ('', 'a,b'))
            self.assertIs(reduction_check(g).verdict, Verdict.HOLDS)

            three = partition_gotas([['a', 'b'], ['c']], ['a', 'b', 'c'])
            r = reduction_check(three)
            self.assertEqual((r.verdict, r.subsets_checked), (Verdict.HOLDS, 8))

            rng = np.random.Generator(np.random.PCG64(cfg['seed']))
            for i in range(cfg['instances']):
                n = 1 + i % cfg['max_size']
                ids = rng.integers(0, n, size=n)
                labels = default_labels(n)
                blocks = [[labels[j] for j in range(n) if ids[j] == k] for k in range(n)]
                g = partition_gotas([b for b in blocks if b], labels)
                self.assertIsNotNone(partition_blocks(g.topology))
                self.assertIs(reduction_check(g).verdict, Verdict.HOLDS)

            base_cfg = GenConfig(cfg['max_size'], 0.4, 0.0, cfg['seed'])
            for c in instance_configs(base_cfg, cfg['instances']):
                g = random_gotas(c)
                self.assertTrue(g.order.is_equality())
                self.assertIs(reduction_check(g).verdict, Verdict.HOLDS)

            with self.assertRaises(NotAPartition):
                pawlak_approx([ElementSet.of([0, 1], 3), ElementSet.of([1, 2], 3)], ElementSet.of([0], 3))
            with self.assertRaises(NotAPartition):
                pawlak_approx([ElementSet.of([0], 3)], ElementSet.of([0], 3))
            m['Result'] = "reductions verified"

    def test_08_generator(self) -> None:
        """TEST 8: Random spaces are deterministic and always valid."""
        cfg = get_sweep_config('generator')
        with recorded(self.aggregator, 8, "Generator", f"{cfg['validity_seeds']} seeds") as m:
            c = GenConfig(5, 0.4, 0.4, 42)
            self.assertEqual(serialize_gotas(random_gotas(c)), serialize_gotas(random_gotas(c)))
            self.assertEqual(random_gotas(c), random_gotas(c))

            one = random_gotas(GenConfig(1, 0.5, 0.5, 9))
            self.assertEqual([set_labels(one, o) for o in enumerate_open_family(one.topology)], ['', 'a'])
            self.assertTrue(one.order.is_equality())

            for i in range(cfg['validity_seeds']):
                n = 1 + i % cfg['max_size']
                g = random_gotas(GenConfig(n, 0.3, 0.3, i))
                validate_partial_order(RawRelation(g.universe, g.order.pairs), g.universe)
                self.assertTrue(any(mb.is_full() for mb in g.topology.base.members))

            for bad in ((0, 0.5, 0.5, 1), (3, 1.5, 0.5, 1), (3, 0.5, -0.1, 1)):
                with self.assertRaises(ConfigError):
                    GenConfig(*bad)
            m['Result'] = "deterministic and valid"

    def test_09_sampling_and_parallel(self) -> None:
        """TEST 9: Sampled mode beyond the caps; parallel merge matches serial."""
        with recorded(self.aggregator, 9, "Sampling And Parallel", "Caps, sample counts, worker merge") as m:
            big = random_gotas(GenConfig(14, 0.2, 0.2, 5))
            r = audit_proposition(big, 'P3.12', sample_count=64)
            self.assertFalse(r.exhaustive)
            self.assertEqual(r.subsets_checked, 64)
            with self.assertRaises(UniverseTooLarge):
                audit_proposition(big, 'P3.12', exhaustive=True)
            with self.assertRaises(UniverseTooLarge):
                audit_proposition(random_gotas(GenConfig(9, 0.2, 0.2, 5)), 'P3.2.1', exhaustive=True)

            props = ['P3.12', 'P3.8.3-as-stated', 'P3.17']
            configs = instance_configs(GenConfig(4, 0.4, 0.4, 42), 8)
            serial = run_sweep(props, configs, workers=1)
            parallel = run_sweep(props, configs, workers=2)
            self.assertEqual(serial, parallel)
            m['Result'] = "sampled counts exact, merge deterministic"

    def test_10_shapes(self) -> None:
        """TEST 10: Shape enumeration counts topologies times orders."""
        with recorded(self.aggregator, 10, "Shapes", "All spaces on 1..3 points") as m:
            counts = [sum(1 for _ in enumerate_shapes(n)) for n in (1, 2, 3)]
            self.assertEqual(counts, [1, 4 * 3, 29 * 19])
            m['Shapes'] = counts
            m['Result'] = "1, 12 and 551 shapes"


def run_proposition_audit_tests(verbose: bool = False, quick: bool = False) -> TestResultAggregator:
    """Run the proposition audit test suite."""
    print_suite_header("GOTAS - PROPOSITION AUDIT TEST SUITE")
    aggregator = TestResultAggregator("Proposition Audit Test Suite")
    methods = [n for n in sorted(dir(PropositionAuditTestSuite)) if n.startswith('test_')]
    if quick:
        methods = ['test_01_catalog', 'test_02_four_point_space', 'test_05_negative_region_statements',
                   'test_07_reductions']
    run_suite_methods(PropositionAuditTestSuite, aggregator, methods, verbose)
    print_suite_footer(aggregator)
    return aggregator


if __name__ == "__main__":
    import argparse
    parser = argparse.ArgumentParser(description='Run Proposition Audit Tests')
    parser.add_argument('--verbose', action='store_true', help='Enable verbose output')
    parser.add_argument('--quick', action='store_true', help='Run quick test subset')
    args = parser.parse_args()
    aggregator = run_proposition_audit_tests(verbose=args.verbose, quick=args.quick)
    sys.exit(0 if aggregator.get_pass_rate() >= 100.0 else 1)
