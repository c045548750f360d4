"""Splitting t-designs, group divisible and candelabra variants, and optimal splitting A-codes."""

__version__ = "0.1.0"

from .acode import (ACode, DeceptionReport, acode_to_design, design_to_acode, evaluate_deception,
                    huber_pd_bound, huber_rule_bound, is_optimal)
from .admissibility import block_count, divisibility_ok, known_nonexistent
from .combinators import (FAMILIES, candelabra_1m1, construct, example_151, example_151_design, family_2_385,
                          family_2_3x5, family_3_3x2, fc3, fill_groups_2, fill_groups_3,
                          fundamental_construction, lemma_cs_8_2_0, lemma_cs_8_2_2, multiply_by_c,
                          trivial_splitting_gdd)
from .design import (BaseBlockSystem, CandelabraSystem, Gdd, GroupType, SplittingCandelabra,
                     SplittingDesign, SplittingGdd, develop_base_blocks, dumps, load, loads, save)
from .kernels import BACKEND
from .verify import verify, verify_edge_partition

__all__ = [
    "ACode", "BACKEND", "FAMILIES", "BaseBlockSystem", "CandelabraSystem", "DeceptionReport", "Gdd",
    "GroupType", "SplittingCandelabra", "SplittingDesign", "SplittingGdd", "acode_to_design",
    "block_count", "candelabra_1m1", "construct", "design_to_acode", "develop_base_blocks", "divisibility_ok",
    "dumps", "evaluate_deception", "example_151", "example_151_design", "family_2_385",
    "family_2_3x5", "family_3_3x2", "fc3", "fill_groups_2", "fill_groups_3",
    "fundamental_construction", "huber_pd_bound", "huber_rule_bound", "is_optimal",
    "known_nonexistent", "lemma_cs_8_2_0", "lemma_cs_8_2_2", "load", "loads", "multiply_by_c",
    "save", "trivial_splitting_gdd", "verify", "verify_edge_partition",
]
