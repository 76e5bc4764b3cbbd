"""
Common utilities and classes for test suites.

Authors:
    - Benjamin Dourthe (benjamin@adonamed.com)
"""
import contextlib
import io
import json
import os
import sys
import tempfile
import time
from contextlib import contextmanager
from datetime import datetime
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

# Keep the user's ~/.gotas/settings.json out of every run
_SETTINGS_DIR = tempfile.mkdtemp(prefix='gotas-tests-')
os.environ['GOTAS_SETTINGS'] = os.path.join(_SETTINGS_DIR, 'settings.json')

from core.ingest import load_gotas, parse_gotas  # noqa: E402
from core.order import ElementSet, Universe  # noqa: E402
from core.topology import Gotas  # noqa: E402

FIXTURES_DIR = os.path.join(os.path.dirname(__file__), 'fixtures')
FOUR_POINT_SPACE = os.path.join(FIXTURES_DIR, 'four_point_space.json')
COLOR_PRICE_TABLE = os.path.join(FIXTURES_DIR, 'color_price.csv')

# Console formatting constants
WIDTH = 100
LABEL_WIDTH = 24
SEPARATOR = "─" * WIDTH
THICK_SEPARATOR = "=" * WIDTH


class PerformanceTimer:
    """Utility for precise performance timing."""
    def __init__(self):
        self.start_time = None
        self.end_time = None

    def start(self) -> None:
        self.start_time = time.perf_counter()

    def stop(self) -> float:
        """Stop timing and return elapsed seconds."""
        self.end_time = time.perf_counter()
        if self.start_time is None:
            return 0.0
        return self.end_time - self.start_time

    def elapsed(self) -> float:
        """Return current elapsed time without stopping."""
        if self.start_time is None:
            return 0.0
        return time.perf_counter() - self.start_time


class TestResultAggregator:
    """Aggregate and format test results."""
    __test__ = False

    def __init__(self, suite_name: str):
        self.suite_name = suite_name
        self.results = []
        self.start_time = datetime.now()

    def add_result(self, test_name: str, status: str, performance: str,
                   metrics: Dict[str, Any], passed: bool) -> None:
        self.results.append({
            "name": test_name,
            "status": status,
            "performance": performance,
            "metrics": metrics,
            "passed": passed
        })

    def get_summary_table(self) -> str:
        """Generate formatted summary table with proper column alignment."""
        if not self.results:
            return "No test results to display."
        header = f"┌{'─' * 38}┬{'─' * 10}┬{'─' * 8}┐"
        separator = f"├{'─' * 38}┼{'─' * 10}┼{'─' * 8}┤"
        footer = f"└{'─' * 38}┴{'─' * 10}┴{'─' * 8}┘"
        title_row = f"│ {'Test Name':<36} │ {'Time':^8} │ {'Status':^5} │"
        rows = [header, title_row, separator]
        for result in self.results:
            name = result["name"][:36]
            status_icon = "✅" if result["passed"] else "❌"
            perf = result["performance"][:8]
            rows.append(f"│ {name:<36} │ {perf:^8} │ {status_icon:^5} │")
        rows.append(footer)
        return "\n".join(rows)

    def get_pass_rate(self) -> float:
        if not self.results:
            return 0.0
        passed = sum(1 for r in self.results if r["passed"])
        return (passed / len(self.results)) * 100


def format_console_output(test_num: int, test_name: str, description: str,
                          metrics: Dict[str, Any], result: str, passed: bool) -> str:
    """Format test output with proper alignment."""
    lines = []
    lines.append("")
    lines.append(f"[TEST {test_num}] {test_name}")
    lines.append(SEPARATOR)
    lines.append(f"{'Description:':<{LABEL_WIDTH}}{description}")
    for key, value in metrics.items():
        lines.append(f"{key + ':':<{LABEL_WIDTH}}{value}")
    result_prefix = f"{'Result:':<{LABEL_WIDTH}}{result} "
    dots = "." * max(1, WIDTH - len(result_prefix) - 3)
    status_icon = "✅" if passed else "❌"
    lines.append(f"{result_prefix}{dots} {status_icon}")
    return "\n".join(lines)


@contextmanager
def recorded(aggregator: TestResultAggregator, test_num: int, test_name: str,
             description: str) -> Iterator[Dict[str, Any]]:
    """
    Time a test body, print its console block and record it in the aggregator.

    The body fills the yielded dict with metrics; a 'Result' key becomes the
    result line. Exceptions are recorded as failures and re-raised.
    """
    timer = PerformanceTimer()
    timer.start()
    metrics: Dict[str, Any] = {}
    try:
        yield metrics
    except Exception as e:
        elapsed = timer.stop()
        errors = {"Error": str(e)}
        print(format_console_output(test_num, test_name, description, errors, f"Failed: {e}", False), flush=True)
        aggregator.add_result(test_name, "❌", f"{elapsed:.2f}s", errors, False)
        raise
    elapsed = timer.stop()
    result = str(metrics.pop('Result', 'ok'))
    metrics.setdefault('Elapsed', f"{elapsed:.3f}s")
    print(format_console_output(test_num, test_name, description, metrics, result, True), flush=True)
    aggregator.add_result(test_name, "✅", f"{elapsed:.2f}s", metrics, True)


def print_suite_header(suite_name: str) -> None:
    print(THICK_SEPARATOR, flush=True)
    print(f"{suite_name:^{WIDTH}}", flush=True)
    print(SEPARATOR, flush=True)
    print(f"Test started at: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}", flush=True)


def print_suite_footer(aggregator: TestResultAggregator, threshold: float = 100.0) -> None:
    """Print standardized test suite footer."""
    print("", flush=True)
    print(SEPARATOR, flush=True)
    print(f"{'TEST SUITE SUMMARY':^{WIDTH}}", flush=True)
    print(SEPARATOR, flush=True)
    print("", flush=True)
    print(aggregator.get_summary_table(), flush=True)
    print("", flush=True)
    passed_count = sum(1 for r in aggregator.results if r["passed"])
    total_count = len(aggregator.results)
    pass_rate = aggregator.get_pass_rate()
    duration = (datetime.now() - aggregator.start_time).total_seconds()
    print(f"Tests Passed:        {passed_count}/{total_count}", flush=True)
    print(f"Pass Threshold:      {threshold:.0f}%", flush=True)
    print(f"Test Duration:       {duration:.0f} seconds", flush=True)
    print(SEPARATOR, flush=True)
    final_status = "✅" if pass_rate >= threshold else "❌"
    print(f"TEST STATUS: {final_status}  with {pass_rate:.0f}% tests passed", flush=True)
    print(THICK_SEPARATOR, flush=True)


def run_suite_methods(test_case_cls, aggregator: TestResultAggregator, method_names: Sequence[str],
                      verbose: bool = False) -> TestResultAggregator:
    """Run selected test methods on one instance sharing the aggregator (runner entry point)."""
    instance = test_case_cls()
    instance.aggregator = aggregator
    for method_name in method_names:
        try:
            instance.setUp()
            getattr(instance, method_name)()
            instance.tearDown()
        except Exception as e:
            if verbose:
                print(f"Test {method_name} failed: {e}", flush=True)
    return aggregator


# ---------- domain fixtures ----------

def four_point_space() -> Gotas:
    """The four-point ordered space a..d stored in fixtures/four_point_space.json."""
    return load_gotas(FOUR_POINT_SPACE)


def labels_set(g: Gotas, labels: str) -> ElementSet:
    """'a,c' -> ElementSet over g's universe; '' is the empty set."""
    return g.universe.set_of([s for s in labels.split(',') if s])


def set_labels(g: Gotas, s: ElementSet) -> str:
    return ','.join(s.labels(g.universe))


def space_from(universe: Sequence[str], base: Sequence[Sequence[str]],
               order: Optional[Sequence[Tuple[str, str]]] = None) -> Gotas:
    """Build a space from a base and order edges; reflexive pairs are added."""
    pairs = [[x, x] for x in universe] + [list(p) for p in (order or [])]
    doc = {'universe': list(universe), 'base': [list(b) for b in base], 'order': pairs}
    return parse_gotas(json.dumps(doc))


def run_cli(argv: List[str]) -> Tuple[int, str, str]:
    """Run the command line in-process and capture (exit code, stdout, stderr)."""
    from cli.app import main

    out = io.StringIO()
    err = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def write_temp(name: str, content: str) -> str:
    path = os.path.join(tempfile.mkdtemp(prefix='gotas-fixture-'), name)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(content)
    return path


def universe_of(labels: str) -> Universe:
    return Universe.of([s for s in labels.split(',') if s])
