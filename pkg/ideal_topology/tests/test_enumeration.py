"""
Unit tests for enumeration, sampling and settings loading
"""

import unittest
import sys
import json
from pathlib import Path

import numpy as np

# Add project root to path for package imports
project_root = Path(__file__).parent.parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from ideal_topology.src.enumeration import (
    EnumerationBudget,
    brute_force_topologies,
    enumerate_preorders,
    enumerate_subsets,
    enumerate_topologies,
    get_limit,
    instance_rng,
    random_ideal,
    random_preorder,
    random_topology,
    sampled_topologies,
    topology_key,
)
from ideal_topology.src.point_set import PointSetError, is_subset, points


class TestEnumeration(unittest.TestCase):
    """Test suite for topology enumeration"""

    def test_counts(self):
        expected = {0: 1, 1: 1, 2: 4, 3: 29, 4: 355}
        for n, count in expected.items():
            self.assertEqual(sum(1 for _ in enumerate_topologies(n)), count, f"n={n}")

    def test_matches_brute_force_oracle(self):
        for n in range(4):
            fast = set(enumerate_topologies(n))
            oracle = set(brute_force_topologies(n))
            self.assertEqual(fast, oracle, f"n={n}")

    def test_no_duplicates(self):
        topologies = list(enumerate_topologies(4))
        self.assertEqual(len(set(topologies)), len(topologies))

    def test_every_output_is_a_topology(self):
        for t in enumerate_topologies(3):
            self.assertEqual(t.invariant_problems(), [])

    def test_preorder_rows_transitive(self):
        for rows in enumerate_preorders(3):
            for x, row in enumerate(rows):
                self.assertTrue((row >> x) & 1)
                for y in points(row):
                    self.assertTrue(is_subset(rows[y], row))

    def test_leading_rows_partition_the_stream(self):
        total = 0
        for first in (0b001, 0b011, 0b101, 0b111):
            total += sum(1 for _ in enumerate_topologies(3, leading_rows=[first]))
        self.assertEqual(total, 29)

    def test_subsets(self):
        self.assertEqual(list(enumerate_subsets(2)), [0, 1, 2, 3])
        with self.assertRaises(PointSetError):
            list(enumerate_subsets(17))


class TestSampling(unittest.TestCase):
    """Test suite for seeded random instances"""

    def test_random_topology_is_seeded(self):
        self.assertEqual(random_topology(6, 42), random_topology(6, 42))
        self.assertEqual(random_topology(6, 42).invariant_problems(), [])

    def test_random_preorder_is_closed(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            rows = random_preorder(5, rng, density=0.4)
            for x, row in enumerate(rows):
                self.assertTrue((row >> x) & 1)
                for y in points(row):
                    self.assertTrue(is_subset(rows[y], row))

    def test_sampled_topologies_follow_budget(self):
        budget = EnumerationBudget(sample_count=3, sample_n=5, rng_seed=11)
        sampled = list(sampled_topologies(budget))
        self.assertEqual(len(sampled), 3)
        self.assertTrue(all(t.n == 5 for t in sampled))
        self.assertEqual(sampled, list(sampled_topologies(budget)))

    def test_random_ideal_within_ground_set(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            ideal = random_ideal(4, rng)
            self.assertTrue(all(m >> 4 == 0 for m in ideal.maximal))

    def test_instance_rng_is_deterministic(self):
        budget = EnumerationBudget(rng_seed=9)
        t = random_topology(4, 1)
        first = instance_rng(budget, topology_key(t), 3).integers(0, 1000, size=5)
        second = instance_rng(budget, topology_key(t), 3).integers(0, 1000, size=5)
        self.assertEqual(first.tolist(), second.tolist())

    def test_topology_key_distinguishes(self):
        keys = {topology_key(t) for t in enumerate_topologies(3)}
        self.assertEqual(len(keys), 29)


class TestSettings(unittest.TestCase):
    """Test suite for settings.json loading"""

    def setUp(self):
        self.temp_file = Path(__file__).parent / "temp_settings.json"
        with open(self.temp_file, 'w') as f:
            json.dump({
                "budget": {"n_max_exhaustive": 2, "rng_seed": 5, "unknown_key": 1},
                "limits": {"verify_cap": 3},
                "report": {"max_witnesses": 4},
            }, f)

    def tearDown(self):
        if self.temp_file.exists():
            self.temp_file.unlink()

    def test_packaged_defaults(self):
        budget = EnumerationBudget.from_settings()
        self.assertEqual(budget.n_max_exhaustive, 4)
        self.assertEqual(budget.max_witnesses, 10)
        self.assertEqual(get_limit("enumerate_cap", 0), 5)

    def test_file_values_and_overrides(self):
        budget = EnumerationBudget.from_settings(self.temp_file, rng_seed=None, sample_count=2)
        self.assertEqual(budget.n_max_exhaustive, 2)
        self.assertEqual(budget.rng_seed, 5)
        self.assertEqual(budget.sample_count, 2)
        self.assertEqual(budget.max_witnesses, 4)
        self.assertEqual(get_limit("verify_cap", 5, self.temp_file), 3)
        self.assertEqual(get_limit("enumerate_cap", 5, self.temp_file), 5)

    def test_missing_file_falls_back(self):
        missing = Path(__file__).parent / "no_such_settings.json"
        with self.assertLogs("ideal_topology.src.enumeration", level="WARNING"):
            budget = EnumerationBudget.from_settings(missing)
        self.assertEqual(budget, EnumerationBudget())

    def test_malformed_file_falls_back(self):
        with open(self.temp_file, 'w') as f:
            f.write("{not json")
        with self.assertLogs("ideal_topology.src.enumeration", level="WARNING"):
            budget = EnumerationBudget.from_settings(self.temp_file)
        self.assertEqual(budget, EnumerationBudget())

    def test_with_n(self):
        self.assertEqual(EnumerationBudget().with_n(2).n_max_exhaustive, 2)
        self.assertIn("rng_seed", EnumerationBudget().to_dict())


if __name__ == '__main__':
    unittest.main()
