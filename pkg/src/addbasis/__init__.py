"""Sparse additive bases with prescribed representation counts.

Builds finite stages of a set of integers whose h-fold representation
function matches a target, stage by stage, keeping the set inside a
sparsity budget; every stage is re-checked by brute-force counting and the
whole build is emitted as a replayable text certificate.
"""

from .certfile import build_config_from_doc, parse_certificate, render_certificate
from .construct import (BuildConfig, BuildState, Certificate, CheckResult,
                        InvariantViolation, SelectionPolicy, StepRecord,
                        adjoined_pair, build, choose_spread, seed_stage, step,
                        verify)
from .counting import (FiniteSet, RepHistogram, count_ordered,
                       count_restricted, count_restricted_ordered,
                       count_unordered, histogram, is_sidon, is_sidon_fast,
                       sidon_collision, sidon_extension_bound)
from .streams import (RealizationStream, StreamTerm, SweepIndex,
                      extremal_prefix, extremal_target, final_occurrence_rank,
                      growth_bound, prefix_respects_bound, realization_prefix,
                      sweep_decompose)
from .targets import (INFINITE, ConfigError, Count, SparsityBound,
                      TargetFunction, is_infinite, parse_config,
                      sparsity_threshold)

__all__ = [
    "INFINITE",
    "BuildConfig",
    "BuildState",
    "Certificate",
    "CheckResult",
    "ConfigError",
    "Count",
    "FiniteSet",
    "InvariantViolation",
    "RealizationStream",
    "RepHistogram",
    "SelectionPolicy",
    "SparsityBound",
    "StepRecord",
    "StreamTerm",
    "SweepIndex",
    "TargetFunction",
    "adjoined_pair",
    "build",
    "build_config_from_doc",
    "choose_spread",
    "count_ordered",
    "count_restricted",
    "count_restricted_ordered",
    "count_unordered",
    "extremal_prefix",
    "extremal_target",
    "final_occurrence_rank",
    "growth_bound",
    "histogram",
    "is_infinite",
    "is_sidon",
    "is_sidon_fast",
    "parse_certificate",
    "parse_config",
    "prefix_respects_bound",
    "realization_prefix",
    "render_certificate",
    "seed_stage",
    "sidon_collision",
    "sidon_extension_bound",
    "sparsity_threshold",
    "step",
    "sweep_decompose",
    "verify",
]
