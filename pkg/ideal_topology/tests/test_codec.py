"""
Unit tests for the JSON codec
"""

import unittest
import sys
import json
from pathlib import Path

# Add project root to path for package imports
project_root = Path(__file__).parent.parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from ideal_topology.src import codec
from ideal_topology.src.codec import SpaceFormatError
from ideal_topology.src.constructions import DenseFamily, minimal_assignment
from ideal_topology.src.ideals import Ideal, IdealSpace
from ideal_topology.src.topology import Topology

SPACES_DIR = Path(__file__).parent.parent / "spaces"


class TestSpaceParsing(unittest.TestCase):
    """Test suite for space descriptors"""

    def test_chain_with_labels(self):
        descriptor = codec.load_space(SPACES_DIR / "chain.json")
        self.assertEqual(descriptor.labels, ["a", "b", "c"])
        self.assertEqual(descriptor.topology.opens, (0, 0b001, 0b011, 0b111))
        self.assertIsNone(descriptor.ideal_space)

    def test_packaged_spaces_load(self):
        expected = {
            "sierpinski.json": Topology.from_opens(2, [0, 0b10, 0b11]),
            "indiscrete2.json": Topology.indiscrete(2),
            "discrete2.json": Topology.discrete(2),
        }
        for name, topology in expected.items():
            self.assertEqual(codec.load_space(SPACES_DIR / name).topology, topology)

    def test_space_with_ideal(self):
        descriptor = codec.parse_space({
            "n": 3, "labels": ["a", "b", "c"],
            "opens": [[], ["a"], ["a", "b"], ["a", "b", "c"]],
            "ideal": {"maximal": [["b"]]},
        })
        self.assertEqual(descriptor.ideal, Ideal.principal(3, 0b010))
        self.assertIsInstance(descriptor.ideal_space, IdealSpace)

    def test_output_parses_back(self):
        t = Topology.from_opens(3, [0, 0b100, 0b011, 0b111])
        data = json.loads(json.dumps(codec.topology_to_dict(t, ["x", "y", "z"])))
        self.assertEqual(codec.parse_space(data).topology, t)

    def test_malformed_spaces(self):
        bad_inputs = [
            [],
            {"opens": []},
            {"n": 2},
            {"n": 2, "opens": [[], [2], [0, 1]]},
            {"n": 2, "opens": [[], [0], [1]]},
            {"n": 17, "opens": []},
            {"n": 2, "labels": ["a", "a"], "opens": [[], [0, 1]]},
            {"n": 2, "opens": [[], ["q"], [0, 1]]},
            {"n": True, "opens": []},
        ]
        for data in bad_inputs:
            with self.assertRaises(SpaceFormatError, msg=repr(data)):
                codec.parse_space(data)

    def test_load_errors(self):
        with self.assertRaises(SpaceFormatError):
            codec.load_space(SPACES_DIR / "missing.json")
        temp_file = Path(__file__).parent / "temp_space.json"
        try:
            temp_file.write_text("{broken", encoding="utf-8")
            with self.assertRaises(SpaceFormatError):
                codec.load_space(temp_file)
        finally:
            if temp_file.exists():
                temp_file.unlink()


class TestSetSpecs(unittest.TestCase):
    """Test suite for command-line set parsing"""

    def test_labels_and_indices(self):
        labels = ["a", "b", "c"]
        self.assertEqual(codec.parse_set_spec("a,c", 3, labels), 0b101)
        self.assertEqual(codec.parse_set_spec("0, 2", 3), 0b101)
        self.assertEqual(codec.parse_set_spec("", 3), 0)

    def test_out_of_range(self):
        with self.assertRaises(SpaceFormatError):
            codec.parse_set_spec("3", 3)
        with self.assertRaises(SpaceFormatError):
            codec.parse_set_spec("d", 3, ["a", "b", "c"])


class TestAssignmentsAndFamilies(unittest.TestCase):
    """Test suite for assignment and dense-family JSON"""

    def setUp(self):
        self.chain = Topology.from_opens(3, [0, 0b001, 0b011, 0b111])

    def test_assignment_round_trip(self):
        asg = minimal_assignment(self.chain, 0b101)
        data = json.loads(json.dumps(codec.assignment_to_dict(asg)))
        self.assertEqual(data, {"A": [0, 2], "choice": {"2": [0, 1, 2]}})
        self.assertEqual(codec.parse_assignment(data, self.chain), asg)

    def test_assignment_with_labels(self):
        data = {"A": ["a", "c"], "choice": {"c": ["a", "b", "c"]}}
        asg = codec.parse_assignment(data, self.chain, ["a", "b", "c"])
        self.assertEqual(asg, minimal_assignment(self.chain, 0b101))

    def test_malformed_assignment(self):
        with self.assertRaises(SpaceFormatError):
            codec.parse_assignment({"A": [0]}, self.chain)

    def test_family_round_trip(self):
        family = DenseFamily.of([0b111, 0b001])
        data = codec.family_to_dict(family)
        self.assertEqual(data, {"members": [[0], [0, 1, 2]]})
        self.assertEqual(codec.parse_family(data, 3), family)
        with self.assertRaises(SpaceFormatError):
            codec.parse_family({"sets": []}, 3)


if __name__ == '__main__':
    unittest.main()
