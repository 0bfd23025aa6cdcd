"""Bounded countable sets given by ladders, and their approximating-sequence means."""

from .descriptor import (
    ABOVE,
    BELOW,
    CountableDesc,
    DoubleLadder,
    Ladder,
    desc,
    desc_from_json,
    desc_to_json,
    diagonal_pairs,
    dladder,
    enumerate_desc,
    format_desc,
    ladder,
    parse_desc,
)
from .exact import (
    DerivedSet,
    ExactModeUnsupported,
    accumulation_sides,
    balanced_windows,
    derived_set,
    lemma_witness,
    ms_a,
    ms_as,
    ms_as_by_atoms,
    ms_axs,
    side_limits,
)
from .oracle import BalanceError, BalancedTrace, KernelInput, balanced_oracle, kernel_input

enumerate = enumerate_desc  # noqa: A001

__all__ = [
    "ABOVE", "BELOW", "BalanceError", "BalancedTrace", "CountableDesc", "DerivedSet",
    "DoubleLadder", "ExactModeUnsupported", "KernelInput", "Ladder", "accumulation_sides",
    "balanced_oracle", "balanced_windows", "derived_set", "desc", "desc_from_json",
    "desc_to_json", "diagonal_pairs", "dladder", "enumerate_desc", "format_desc", "kernel_input", "ladder",
    "lemma_witness", "ms_a", "ms_as", "ms_as_by_atoms", "ms_axs", "parse_desc", "side_limits",
]
