"""Modules for the quantum affine algebra U_q(sl2^) built from raising/lowering maps."""

from .classify import eight_pieces, extract_system, is_basic, twist
from .construction import ConstructionTrace, HatModule, construct_module, direct_sum
from .linalg import Matrix, QParam, Subspace, q_int
from .relations import check_hat_relations, check_intermediate, check_structure_lemmas
from .system import Decomposition, RLSystem, gen_direct_sum, gen_evaluation, validate_assumptions

__all__ = [
    "ConstructionTrace", "Decomposition", "HatModule", "Matrix", "QParam", "RLSystem", "Subspace",
    "check_hat_relations", "check_intermediate", "check_structure_lemmas", "construct_module",
    "direct_sum", "eight_pieces", "extract_system", "gen_direct_sum", "gen_evaluation",
    "is_basic", "q_int", "twist", "validate_assumptions",
]
