"""Leaf-to-leaf path lengths in trees and cycle lengths in degree-critical graphs."""

from .graphs import Graph, Path, RootedTree, Tree, parse_graph, serialize_graph
from .treelen import LengthSet, WitnessReport, leaf_lengths, many_lengths, short_lengths, witnessed_lengths
from .constructions import SequenceSpec, build_tree, staircase_sequence, sumset_uv
from .critical import apex_from_13_tree, check_critical, critical_ordering, is_k_ordered
from .cycles import CycleCertificate, cycle_length_oracle, many_cycle_lengths

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "Path",
    "RootedTree",
    "Tree",
    "parse_graph",
    "serialize_graph",
    "LengthSet",
    "WitnessReport",
    "leaf_lengths",
    "many_lengths",
    "short_lengths",
    "witnessed_lengths",
    "SequenceSpec",
    "build_tree",
    "staircase_sequence",
    "sumset_uv",
    "apex_from_13_tree",
    "check_critical",
    "critical_ordering",
    "is_k_ordered",
    "CycleCertificate",
    "cycle_length_oracle",
    "many_cycle_lengths",
]
