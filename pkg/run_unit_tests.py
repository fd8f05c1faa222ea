#!/usr/bin/env python3
"""Dependency-light smoke runner: a quick subset of the unit tests without pytest."""

import json
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

# Add gsp4verify to path
sys.path.insert(0, str(Path(__file__).parent))

from gsp4verify.algebra import scalar_field
from gsp4verify.branching import killing_depth, projection_coefficient, v, w_double_prime
from gsp4verify.cli import parse_specialization
from gsp4verify.components import CheckTracker, ReportExporter
from gsp4verify.config import DEFAULT_SETTINGS, VerifyConfig
from gsp4verify.hecke_data import HeckeParams, admissible_pairs


def run_test(name, test_func):
    """Run a single test function"""
    try:
        test_func()
        print(f"✓ {name}")
        return True
    except AssertionError as e:
        print(f"✗ {name}: {e}")
        return False
    except Exception as e:
        print(f"✗ {name}: ERROR - {e}")
        return False


def assert_equal(actual, expected):
    assert actual == expected, f"Expected {expected}, got {actual}"


def main():
    print("=" * 60)
    print("gsp4verify smoke tests")
    print("=" * 60)
    print()

    results = []

    # Suite 1: exact algebra
    print("Suite 1: Exact algebra")
    print("-" * 40)
    F = scalar_field(3)

    results.append(run_test("test_sqrt_p_squares_to_p",
        lambda: assert_equal(F.sqrt_p_power(1) ** 2, 3)))

    results.append(run_test("test_parse_inverts_to_string",
        lambda: assert_equal(F.parse((F.a + 1 / F.b).to_string()), F.a + 1 / F.b)))

    params = HeckeParams.symbolic(3, 2, 1)
    results.append(run_test("test_delta_relation",
        lambda: assert_equal(params.alpha * params.delta, params.beta * params.gamma)))

    results.append(run_test("test_admissible_pairs_parity",
        lambda: assert_equal(admissible_pairs(params), [(0, 1), (1, 0)])))

    print()

    # Suite 2: branching
    print("Suite 2: Branching")
    print("-" * 40)

    def test_first_slot_coefficient():
        result = projection_coefficient(1, 1, 0, 0)
        assert_equal((result.index, result.brute_force), (2, Fraction(1)))
        assert result.match

    results.append(run_test("test_first_slot_coefficient", test_first_slot_coefficient))

    results.append(run_test("test_killing_depths",
        lambda: assert_equal((killing_depth(v(1)), killing_depth(v(2)),
                              killing_depth(w_double_prime())), (0, 1, 2))))

    print()

    # Suite 3: configuration and reports
    print("Suite 3: Configuration and reports")
    print("-" * 40)

    with tempfile.TemporaryDirectory() as tmp_dir:
        def test_defaults_written():
            config = VerifyConfig(Path(tmp_dir) / "cfg")
            config.ensure_config_exists()
            stored = json.loads(config.settings_file.read_text())
            assert_equal(stored, DEFAULT_SETTINGS)

        results.append(run_test("test_default_settings_written", test_defaults_written))

    def test_report_is_deterministic():
        tracker = CheckTracker()
        tracker.add("b.check", "B", "pass", {"x": "1"}, duration_ms=3.0)
        tracker.add("a.check", "A", "fail", {}, duration_ms=1.0)
        first = ReportExporter(tracker.get_history()).to_json()
        second = ReportExporter(list(reversed(tracker.get_history()))).to_json()
        assert_equal(first, second)
        assert "duration_ms" not in first

    results.append(run_test("test_report_is_deterministic", test_report_is_deterministic))

    results.append(run_test("test_parse_specialization",
        lambda: assert_equal(parse_specialization("a=1/2,b=3,c=-5"),
                             {"a": Fraction(1, 2), "b": Fraction(3), "c": Fraction(-5)})))

    print()
    print("=" * 60)
    passed = sum(results)
    total = len(results)
    print(f"Results: {passed}/{total} tests passed")
    print("=" * 60)

    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(main())
