"""
Test configuration for the gotas test suites.

Defines sweep sizes, seeds, time budgets and pass criteria.

Authors:
    - Benjamin Dourthe (benjamin@adonamed.com)
"""

TEST_CONFIG = {
    # Random property sweep over catalog propositions expected to hold
    'property_sweep': {
        'instances': 200,
        'max_size': 7,                 # sizes cycle 1..7
        'density': 0.4,                # relation and order density
        'seed': 20240501,
        'binary_exhaustive_max': 5,    # pairs exhaustive up to |U| = 5, sampled above
        'binary_sample_count': 128,
        'time_budget_seconds': 60.0,
    },
    'oracle_sweep': {
        'instances': 100,
        'max_size': 6,
        'density': 0.5,
        'seed': 3,
    },
    'reduction_sweep': {
        'instances': 50,
        'max_size': 7,
        'seed': 11,
    },
    'invariant_sweep': {
        'instances': 60,
        'max_size': 5,                 # every subset and pair of subsets
        'density': 0.4,
        'seed': 515,
    },
    'generator': {
        'validity_seeds': 1000,
        'max_size': 8,
    },
    'statement_audit': {
        'hunt_budget': 200,
        'hunt_size': 4,
        'hunt_density': 0.4,
        'hunt_seed': 7,
        'shape_sweep_max': 3,
        'random_as_proved_instances': 150,
    },
    'performance': {
        'universe_size': 64,
        'relation_density': 0.1,
        'order_density': 0.02,
        'seed': 64,
        'report_budget_ms': 100.0,
        'golden_budget_seconds': 1.0,
        'dense_relation_density': 0.5,
        'dense_order_density': 0.1,
        'dense_seed': 1,
        'dense_generation_budget_seconds': 30.0,
    },
    'pass_criteria': {
        'suite_pass_threshold': 100.0,   # every test must pass
    },
}


def get_sweep_config(name: str) -> dict:
    """Get configuration for a named sweep."""
    return TEST_CONFIG[name]


def get_suite_pass_threshold() -> float:
    """Get the pass threshold for test suites."""
    return TEST_CONFIG.get('pass_criteria', {}).get('suite_pass_threshold', 100.0)
