"""Cosignings of crossing families, outer-planar circle covers and dijoin pairs."""

from .core import (NEG, POS, UNSIGNED, Arc, Family, GroundSet, PartialSigning, Signing,
                   crossing_closure, dual, is_crossing_family, restrict, verify_cc_cosigning,
                   verify_cosigning)
from .cosign import (brute_force_cc_cosign, brute_force_cosign, cc_cosign, check_cc_condition,
                     check_cosign_condition, cosign)
from .circle import CircleInstance, solve_circle, validate_instance
from .dijoin import DijoinPair, decompose_dijoins, verify_dijoin_pair
from .oracle import LatticeFamily, explicit_to_well_provided, oracle_cosign
from .plane import PlaneDigraph, enumerate_dicuts, is_proper, validate_plane

__version__ = "0.1.0"

__all__ = [
    "NEG", "POS", "UNSIGNED", "Arc", "Family", "GroundSet", "PartialSigning", "Signing",
    "crossing_closure", "dual", "is_crossing_family", "restrict", "verify_cc_cosigning",
    "verify_cosigning", "brute_force_cc_cosign", "brute_force_cosign", "cc_cosign",
    "check_cc_condition", "check_cosign_condition", "cosign", "CircleInstance", "solve_circle",
    "validate_instance", "DijoinPair", "decompose_dijoins", "verify_dijoin_pair",
    "LatticeFamily", "explicit_to_well_provided", "oracle_cosign", "PlaneDigraph",
    "enumerate_dicuts", "is_proper", "validate_plane",
]
