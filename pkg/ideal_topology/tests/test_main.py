"""
Unit tests for the command-line front end
Drives main() with argument lists and checks exit statuses and output.
"""

import unittest
import sys
import io
import json
from pathlib import Path
from unittest.mock import patch

# Add project root to path for package imports
project_root = Path(__file__).parent.parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from ideal_topology.src.main import EXIT_OK, EXIT_USAGE, EXIT_VIOLATIONS, main

SPACES_DIR = Path(__file__).parent.parent / "spaces"
CHAIN = str(SPACES_DIR / "chain.json")
SIERPINSKI = str(SPACES_DIR / "sierpinski.json")
INDISCRETE = str(SPACES_DIR / "indiscrete2.json")
DISCRETE = str(SPACES_DIR / "discrete2.json")


def run_cli(*argv):
    """Run main() and return (exit status, captured stdout)."""
    with patch("sys.stdout", new_callable=io.StringIO) as out, \
            patch("sys.stderr", new_callable=io.StringIO):
        status = main(list(argv))
    return status, out.getvalue()


class TempFileMixin:
    """Creates named scratch files next to the tests and removes them afterwards"""

    def setUp(self):
        self.temp_files = []

    def tearDown(self):
        for path in self.temp_files:
            if path.exists():
                path.unlink()

    def temp_path(self, name: str) -> Path:
        path = Path(__file__).parent / name
        self.temp_files.append(path)
        return path


class TestEnumerateCommand(TempFileMixin, unittest.TestCase):
    """Test suite for `enumerate`"""

    def test_lines_on_stdout(self):
        status, out = run_cli("enumerate", "--n", "2")
        self.assertEqual(status, EXIT_OK)
        lines = out.strip().splitlines()
        self.assertEqual(len(lines), 4)
        self.assertEqual(json.loads(lines[0])["n"], 2)

    def test_count_on_stderr(self):
        with patch("sys.stdout", new_callable=io.StringIO) as out, \
                patch("sys.stderr", new_callable=io.StringIO) as err:
            status = main(["enumerate", "--n", "3"])
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(len(out.getvalue().strip().splitlines()), 29)
        self.assertIn("29 topologies on 3 points", err.getvalue())

    def test_single_point(self):
        status, out = run_cli("enumerate", "--n", "1")
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(len(out.strip().splitlines()), 1)

    def test_out_file(self):
        path = self.temp_path("temp_topologies.jsonl")
        status, out = run_cli("enumerate", "--n", "3", "--out", str(path))
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(len(path.read_text(encoding="utf-8").splitlines()), 29)
        self.assertIn("29 topologies", out)

    def test_cap(self):
        status, _ = run_cli("enumerate", "--n", "9")
        self.assertEqual(status, EXIT_USAGE)


class TestVerifyCommand(TempFileMixin, unittest.TestCase):
    """Test suite for `verify`"""

    def test_small_suite_passes(self):
        status, out = run_cli("verify", "--n", "2", "--json")
        self.assertEqual(status, EXIT_OK)
        document = json.loads(out)
        self.assertTrue(document["passed"])
        self.assertEqual(document["budget"]["n_max_exhaustive"], 2)

    def test_three_point_suite_passes(self):
        status, out = run_cli("verify", "--n", "3")
        self.assertEqual(status, EXIT_OK)
        self.assertIn("check_IAprime_within_IAmax", out)
        self.assertIn("✓ No violations", out)

    def test_only_one_statement(self):
        status, out = run_cli("verify", "--only", "check_A_open", "--n", "3")
        self.assertEqual(status, EXIT_OK)
        self.assertIn("check_A_open", out)
        self.assertIn("✓ No violations", out)

    def test_unknown_statement(self):
        status, _ = run_cli("verify", "--only", "check_nothing", "--n", "2")
        self.assertEqual(status, EXIT_USAGE)

    def test_cap(self):
        status, _ = run_cli("verify", "--n", "8")
        self.assertEqual(status, EXIT_USAGE)

    def test_self_test_mutation(self):
        status, out = run_cli("verify", "--self-test-mutation", "--n", "2", "--json")
        self.assertEqual(status, EXIT_VIOLATIONS)
        report = json.loads(out)["reports"][0]
        self.assertGreater(report["violation_count"], 0)
        self.assertTrue(report["violations"])

    def test_report_files(self):
        report_path = self.temp_path("temp_report.json")
        csv_path = self.temp_path("temp_report.csv")
        status, _ = run_cli("verify", "--n", "2", "--only", "check_ID_submaximal",
                            "--negative-controls", "--out", str(report_path),
                            "--csv", str(csv_path))
        self.assertEqual(status, EXIT_OK)
        document = json.loads(report_path.read_text(encoding="utf-8"))
        self.assertEqual(document["reports"][0]["statement_id"], "check_ID_submaximal")
        self.assertTrue(csv_path.read_text(encoding="utf-8").startswith("statement_id,"))


class TestExpandCommand(TempFileMixin, unittest.TestCase):
    """Test suite for `expand`"""

    def test_chain_prime(self):
        status, out = run_cli("expand", CHAIN, "--set", "a,c", "--prime", "--json")
        self.assertEqual(status, EXIT_OK)
        result = json.loads(out)
        self.assertEqual(result["star"]["opens"], [[], [0], [0, 1], [0, 2], [0, 1, 2]])
        self.assertEqual(result["ideal"], {"maximal": [[1]]})
        self.assertTrue(result["A_open_in_star"])
        self.assertTrue(result["tau_connected"])
        self.assertTrue(result["star_connected"])
        self.assertTrue(result["semiregularization_preserved"])

    def test_open_set_leaves_topology(self):
        status, out = run_cli("expand", CHAIN, "--set", "a,b", "--json")
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(json.loads(out)["star"]["opens"], [[], [0], [0, 1], [0, 1, 2]])

    def test_sierpinski(self):
        status, out = run_cli("expand", SIERPINSKI, "--set", "0", "--json")
        self.assertEqual(status, EXIT_OK)
        result = json.loads(out)
        self.assertEqual(len(result["star"]["opens"]), 4)
        self.assertFalse(result["star_connected"])
        self.assertFalse(result["A_preopen"])

    def test_max_requires_preopen(self):
        status, _ = run_cli("expand", SIERPINSKI, "--set", "0", "--max")
        self.assertEqual(status, EXIT_USAGE)

    def test_max_on_preopen_set(self):
        status, out = run_cli("expand", CHAIN, "--set", "a", "--max", "--json")
        self.assertEqual(status, EXIT_OK)
        result = json.loads(out)
        self.assertEqual(result["construction"], "I_A^max")
        self.assertEqual(result["ideal"], {"maximal": [[1, 2]]})

    def test_assignment_file(self):
        path = self.temp_path("temp_assignment.json")
        path.write_text(json.dumps({"A": ["a", "c"], "choice": {"c": ["a", "b", "c"]}}),
                        encoding="utf-8")
        status, out = run_cli("expand", CHAIN, "--set", "a,c", "--assignment", str(path), "--json")
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(json.loads(out)["construction"], "I_A")

    def test_invalid_assignment(self):
        path = self.temp_path("temp_bad_assignment.json")
        path.write_text(json.dumps({"A": ["a", "c"], "choice": {"c": ["b", "c"]}}),
                        encoding="utf-8")
        status, _ = run_cli("expand", CHAIN, "--set", "a,c", "--assignment", str(path))
        self.assertEqual(status, EXIT_USAGE)

    def test_set_outside_ground_set(self):
        status, _ = run_cli("expand", CHAIN, "--set", "a,d")
        self.assertEqual(status, EXIT_USAGE)

    def test_human_output(self):
        status, out = run_cli("expand", CHAIN, "--set", "a,c")
        self.assertEqual(status, EXIT_OK)
        self.assertIn("τ* opens: {{}, {a}, {a,b}, {a,c}, {a,b,c}}", out)
        self.assertIn("✓ A open in τ*", out)


class TestDenseExpandCommand(TempFileMixin, unittest.TestCase):
    """Test suite for `dense-expand`"""

    def test_chain_greedy(self):
        status, out = run_cli("dense-expand", CHAIN, "--greedy-max", "--json")
        self.assertEqual(status, EXIT_OK)
        result = json.loads(out)
        self.assertTrue(result["star_submaximal"])
        self.assertTrue(result["star_submaximal_by_dense"])
        self.assertTrue(result["maximal"])

    def test_all_max_on_indiscrete(self):
        status, out = run_cli("dense-expand", INDISCRETE, "--all-max", "--json")
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(json.loads(out)["all_maximal"], [
            {"members": [[0], [0, 1]]},
            {"members": [[1], [0, 1]]},
        ])

    def test_ground_family(self):
        path = self.temp_path("temp_family.json")
        path.write_text(json.dumps({"members": [["a", "b", "c"]]}), encoding="utf-8")
        status, out = run_cli("dense-expand", CHAIN, "--family", str(path), "--json")
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(json.loads(out)["star"]["opens"], [[], [0], [0, 1], [0, 1, 2]])

    def test_family_without_dense_fip(self):
        path = self.temp_path("temp_bad_family.json")
        path.write_text(json.dumps({"members": [[0], [1]]}), encoding="utf-8")
        status, _ = run_cli("dense-expand", INDISCRETE, "--family", str(path))
        self.assertEqual(status, EXIT_USAGE)


class TestInfoCommand(TempFileMixin, unittest.TestCase):
    """Test suite for `info`"""

    def test_chain(self):
        status, out = run_cli("info", CHAIN, "--json")
        self.assertEqual(status, EXIT_OK)
        info = json.loads(out)
        self.assertEqual(info["dense"], [[0], [0, 1], [0, 2], [0, 1, 2]])
        self.assertEqual(info["min_nbhd"], [[0], [0, 1], [0, 1, 2]])
        self.assertTrue(info["connected"])

    def test_discrete_and_indiscrete(self):
        _, out = run_cli("info", DISCRETE, "--json")
        discrete = json.loads(out)
        self.assertTrue(discrete["submaximal"])
        self.assertFalse(discrete["resolvable"])
        _, out = run_cli("info", INDISCRETE, "--json")
        self.assertTrue(json.loads(out)["resolvable"])

    def test_human_output(self):
        status, out = run_cli("info", CHAIN)
        self.assertEqual(status, EXIT_OK)
        self.assertIn("min_nbhd", out)
        self.assertIn("✓ connected", out)

    def test_space_with_ideal(self):
        path = self.temp_path("temp_sierpinski_ideal.json")
        path.write_text(json.dumps({"n": 2, "opens": [[], [1], [0, 1]],
                                    "ideal": {"maximal": [[1]]}}), encoding="utf-8")
        status, out = run_cli("info", str(path), "--json")
        self.assertEqual(status, EXIT_OK)
        info = json.loads(out)
        self.assertEqual(info["space"]["ideal"], {"maximal": [[1]]})
        self.assertEqual(info["star"]["opens"], [[], [0], [1], [0, 1]])
        self.assertFalse(info["trace_trivial"])
        status, out = run_cli("info", str(path))
        self.assertIn("τ* opens", out)

    def test_max_points_limit(self):
        settings = self.temp_path("temp_settings.json")
        settings.write_text(json.dumps({"limits": {"max_points": 2}}), encoding="utf-8")
        status, _ = run_cli("info", CHAIN, "--settings", str(settings))
        self.assertEqual(status, EXIT_USAGE)
        status, _ = run_cli("info", SIERPINSKI, "--settings", str(settings))
        self.assertEqual(status, EXIT_OK)
        status, _ = run_cli("verify", "--n", "1", "--sample", "1", "--sample-n", "3",
                            "--settings", str(settings))
        self.assertEqual(status, EXIT_USAGE)

    def test_missing_file(self):
        status, _ = run_cli("info", str(SPACES_DIR / "missing.json"))
        self.assertEqual(status, EXIT_USAGE)

    def test_usage_error(self):
        status, _ = run_cli("info")
        self.assertEqual(status, EXIT_USAGE)


if __name__ == '__main__':
    unittest.main()
