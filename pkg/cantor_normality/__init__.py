# Cantor Normality Toolkit
# Exact-arithmetic Q-Cantor series expansions and normality diagnostics

"""
Cantor Normality Toolkit - Q-normality, Q-distribution and determinism checks

Every statistic is computed with exact integers and Fractions over finite
prefixes. Limit hypotheses are replaced by explicit finite-n surrogates that
are configured in AnalysisConfig and recorded with each result.

Architecture:
- generators: Basic sequences (periodic, substitution, concatenation, rotation,
  nil, Bernoulli, file, doubling coding) and dynamical-generation checks
- expansion: Digits, values and orbit points of numbers in [0, 1)
- normality: N_n / Q_n ratios, RN and UN normality, cell rectangles
- distribution: Star discrepancy, density comparison, hot spots, g-powers
- complexity: eps-complexity, block entropy and the determinism verdict
- constructions: Reproductions of the worked counterexamples
- validator: Target comparison and report tables
- output_generator: JSON, CSV, SVG, PNG and run manifests

Usage:
    from cantor_normality import BasicSequence, preset, normality_report

    Q = BasicSequence(preset("periodic-23"))
    report = normality_report(Q, "1/7", n=10000, ell_max=2)

    # Every analysis on one (Q, x) pair
    system = run_full_pipeline(preset("thue-morse"), "3/11", 5000, "output/")

Command line:
    python -m cantor_normality stats --spec periodic-23 --x 1/7 --n 10000
"""

__version__ = "1.0.0"

from .errors import (
    CantorError,
    InvalidSpec,
    HorizonExceeded,
    NotExtendable,
    NotPrimitive,
    NotGrowing,
    OutOfRange,
    InadmissibleDigit,
    PrecisionUnreachable,
    LengthMismatch,
    EmptySample,
    BadDensity,
    NotGPower,
    BadParams,
    SourceExhausted,
    MismatchedRadix,
    UnsupportedModel,
)

from .models import (
    Verdict,
    DeterminismVerdict,
    Membership,
    Periodic,
    RotationCoding,
    NilCoding,
    Substitution,
    Concatenation,
    Bernoulli,
    NonErgodicWord,
    FileSource,
    SquarePositions,
    GrowingBlocks,
    DoublingCoding,
    GeneratorSpec,
    ExclusionSet,
    CylinderStats,
    BlockStats,
    CellRectangle,
    OrbitSample,
    HotSpotQuery,
    HotSpotResult,
    NormalityReport,
    ComplexityReport,
    ConstructionResult,
    ValidationResult,
    RunManifest,
)

from .config import (
    AnalysisConfig,
    DESK_SCALE_CONFIG,
)

from .generators import (
    BasicSequence,
    PRESETS,
    preset,
    load_spec,
    validate_spec,
    spec_from_dict,
    spec_to_dict,
    generate,
    substitution_fixed_point,
    concatenation_digits,
    cylinder_stats,
    check_dynamic_generation,
)

from .expansion import (
    CantorReal,
    digits_of,
    value_of,
    orbit_point,
    canonicalize,
    orbit_sample,
    orbit_sample_from_digits,
    orbit_interval_from_digits,
)

from .normality import (
    block_stats,
    expectation_Q_n,
    expectation_Q_n_DB,
    count_N_n,
    count_N_n_DB,
    limit_P_D,
    ratio_normality_matrix,
    normality_report,
    digit_interval,
    cell_rectangles,
    s_d_regions,
)

from .distribution import (
    star_discrepancy,
    empirical_vs_density,
    hotspot_nu,
    hotspot_scan,
    joint_cell_interval_stats,
    gpower_exponent,
    gpower_index_density,
    gpower_exclusion,
    weyl_sums,
)

from .complexity import (
    distinct_blocks,
    p_eps,
    block_entropy,
    letter_densities,
    determinism_check,
    log_integral,
)

from .constructions import (
    build_ex31,
    build_ex32,
    build_ex35,
    build_ex36,
    rebase,
)

from .validator import (
    validate_targets,
    print_validation_report,
    overall_agreement,
)

from .main import (
    CantorAnalysisSystem,
    run_full_pipeline,
    main,
)

__all__ = [
    # Main classes
    "CantorAnalysisSystem",
    "run_full_pipeline",
    "main",
    # Errors
    "CantorError",
    "InvalidSpec",
    "HorizonExceeded",
    "NotExtendable",
    "NotPrimitive",
    "NotGrowing",
    "OutOfRange",
    "InadmissibleDigit",
    "PrecisionUnreachable",
    "LengthMismatch",
    "EmptySample",
    "BadDensity",
    "NotGPower",
    "BadParams",
    "SourceExhausted",
    "MismatchedRadix",
    "UnsupportedModel",
    # Models
    "Verdict",
    "DeterminismVerdict",
    "Membership",
    "Periodic",
    "RotationCoding",
    "NilCoding",
    "Substitution",
    "Concatenation",
    "Bernoulli",
    "NonErgodicWord",
    "FileSource",
    "SquarePositions",
    "GrowingBlocks",
    "DoublingCoding",
    "GeneratorSpec",
    "ExclusionSet",
    "CylinderStats",
    "BlockStats",
    "CellRectangle",
    "OrbitSample",
    "HotSpotQuery",
    "HotSpotResult",
    "NormalityReport",
    "ComplexityReport",
    "ConstructionResult",
    "ValidationResult",
    "RunManifest",
    # Config
    "AnalysisConfig",
    "DESK_SCALE_CONFIG",
    # Generators
    "BasicSequence",
    "PRESETS",
    "preset",
    "load_spec",
    "validate_spec",
    "spec_from_dict",
    "spec_to_dict",
    "generate",
    "substitution_fixed_point",
    "concatenation_digits",
    "cylinder_stats",
    "check_dynamic_generation",
    # Expansion
    "CantorReal",
    "digits_of",
    "value_of",
    "orbit_point",
    "canonicalize",
    "orbit_sample",
    "orbit_sample_from_digits",
    "orbit_interval_from_digits",
    # Normality
    "block_stats",
    "expectation_Q_n",
    "expectation_Q_n_DB",
    "count_N_n",
    "count_N_n_DB",
    "limit_P_D",
    "ratio_normality_matrix",
    "normality_report",
    "digit_interval",
    "cell_rectangles",
    "s_d_regions",
    # Distribution
    "star_discrepancy",
    "empirical_vs_density",
    "hotspot_nu",
    "hotspot_scan",
    "joint_cell_interval_stats",
    "gpower_exponent",
    "gpower_index_density",
    "gpower_exclusion",
    "weyl_sums",
    # Complexity
    "distinct_blocks",
    "p_eps",
    "block_entropy",
    "letter_densities",
    "determinism_check",
    "log_integral",
    # Constructions
    "build_ex31",
    "build_ex32",
    "build_ex35",
    "build_ex36",
    "rebase",
    # Validation
    "validate_targets",
    "print_validation_report",
    "overall_agreement",
]
