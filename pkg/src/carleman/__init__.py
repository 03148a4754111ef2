"""Exact invariant theory, coinvariant decompositions and Denjoy-Carleman weight sequences."""

from .coinvariants import (CoinvariantBasis, artin_basis, cramer_decompose,
                           delta_divisibility_check, harmonic_basis, invariant_decompose,
                           recombine, subgroup_basis)
from .equivariant import (EquivariantMap, decompose_equivariant, decompose_via_hf,
                          equivariant_module_generators, reconstruct, representation_pair)
from .errors import CarlemanError
from .invariant_theory import (FiniteMatrixGroup, GeneratorSystem, block_symmetric_group,
                               close_group, faa_di_bruno_radius, invariant_generators,
                               operator_norm_mu, reynolds, rewrite_invariant, rotation_group,
                               sign_group, symmetric_group, trivial_group, weyl_embedding)
from .polynomials import (LinearForm, Polynomial, compose, divide_exact, evaluate,
                          format_polynomial, homogeneous_components, parse_polynomial)
from .symmetric_core import (SymmetricCoordinates, block_rewrite, bronshtein_A,
                             bronshtein_partial, change_basis, elementary_symmetric,
                             necessity_report, newton_power_sum, rewrite_symmetric)
from .weight_sequences import (ConditionVerdict, WeightSequence, classify, inclusion_index,
                               is_derivation_closed, is_log_convex, loss_condition,
                               make_sequence, minimal_loss_sequence, moderate_growth,
                               quasianalytic, strong_nonquasianalytic, strongly_regular)

__version__ = "0.1.0"
