"""Chord sets on the cycle C_n with a cycle of every length through exactly k chords."""

from .construction import (
    ConstructionPlan,
    FullConstruction,
    build_F,
    build_H,
    construct,
    decode_length,
    tail_witness,
)
from .graph import ChordedCycle, WitnessCycle, validate_witness
from .oracle import brute_force_c, exists_cycle, verify_property

__all__ = [
    "ChordedCycle",
    "ConstructionPlan",
    "FullConstruction",
    "WitnessCycle",
    "brute_force_c",
    "build_F",
    "build_H",
    "construct",
    "decode_length",
    "exists_cycle",
    "tail_witness",
    "validate_witness",
    "verify_property",
]
