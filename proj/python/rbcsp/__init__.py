"""Model RB random CSP workbench: generation, exact search, encodings, experiments."""

from ._core import (
    Instance,
    RbError,
    Params,
    brute_force_count,
    decode_assignment,
    derive_params,
    encode_dimacs,
    expected_near_solutions,
    expected_solution_count,
    flip_sat_to_unsat,
    flip_unsat_to_sat,
    gen_instance,
    near_solutions,
    parse_instance,
    run_flip_suite,
    run_phase_sweep,
    run_threshold_suite,
    second_moment,
    self_unsat_analysis,
    solve,
    thresholds,
    validate_alpha,
    wilson_interval,
)

__all__ = [
    "Instance",
    "RbError",
    "Params",
    "brute_force_count",
    "decode_assignment",
    "derive_params",
    "encode_dimacs",
    "expected_near_solutions",
    "expected_solution_count",
    "flip_sat_to_unsat",
    "flip_unsat_to_sat",
    "gen_instance",
    "near_solutions",
    "parse_instance",
    "run_flip_suite",
    "run_phase_sweep",
    "run_threshold_suite",
    "second_moment",
    "self_unsat_analysis",
    "solve",
    "thresholds",
    "validate_alpha",
    "wilson_interval",
]
