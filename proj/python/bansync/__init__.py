"""Synchronism sensitivity of Boolean automata networks."""

from ._bansync import (
    InputError,
    Network,
    NonMonotoneNetworkError,
    analyze,
    attractors,
    claim_ids,
    critical_cycles,
    impact,
    normal_transitions,
    sensitivity,
    sequentialise,
    verify,
)

__all__ = [
    "InputError",
    "Network",
    "NonMonotoneNetworkError",
    "analyze",
    "attractors",
    "claim_ids",
    "critical_cycles",
    "impact",
    "normal_transitions",
    "sensitivity",
    "sequentialise",
    "verify",
]
