"""Workbench for locally recoverable codes.

Finite fields and codes, locality-aware dimension bounds, asymptotic
rate curves, explicit and random constructions, and exhaustive oracles
for small parameters.
"""
from .asymptotic import (RoptProvider, achievable_rate, converse_rate, entropy_q,
                         gv_parity_rate, inv_entropy_q, list_converse_rate, sample_curves)
from .bounds import (BoundQuery, BoundResult, KOptProvider, cm_bound, kopt_upper,
                     list_cm_bound, min_feasible_locality, plotkin_locality_k_bound,
                     singleton_locality_d_bound)
from .code import (Codebook, LinearCode, RepairProfile, build_core_set, locality_of,
                   min_distance, projection_entropy, repair_erasure, shorten_best_prefix,
                   verify_repair_set)
from .constructions import (CodeArtifact, build_concat_rs_spc, build_simplex, gv_augment,
                            sample_random_concat, sample_random_lrc, verify_artifact)
from .errors import BudgetExceeded, LRCError, TableMiss, ValidationError, VerificationError
from .field import GF, Field

__version__ = "0.1.0"
