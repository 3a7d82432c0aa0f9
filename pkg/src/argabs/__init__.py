"""Dung argumentation frameworks, partition abstraction and Galois-connection checks."""

from .abstraction import (
    FaithfulnessReport,
    Partition,
    QuotientAF,
    alpha,
    build_partition,
    classify,
    coarsest_faithful,
    gamma,
    identity_partition,
    partition_galois,
    quotient_af,
    refine,
)
from .af import ArgumentationFramework, attackers, characteristic, defends, is_conflict_free, parse, serialize
from .semantics import (
    ExtensionSet,
    Label,
    Labelling,
    SemanticsKind,
    complete_labellings,
    enumerate_extensions,
    grounded,
    oracle_enumerate,
    verify,
)

__all__ = [
    "ArgumentationFramework", "parse", "serialize", "attackers", "is_conflict_free", "defends", "characteristic",
    "SemanticsKind", "Label", "Labelling", "ExtensionSet", "grounded", "enumerate_extensions",
    "complete_labellings", "verify", "oracle_enumerate",
    "Partition", "QuotientAF", "FaithfulnessReport", "build_partition", "identity_partition", "quotient_af",
    "alpha", "gamma", "partition_galois", "classify", "refine", "coarsest_faithful",
]
