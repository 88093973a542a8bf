"""Fourier-side analysis of sparse integer sets.

Build integer sets of prescribed growth exponent (deterministic triadic
Cantor sets and randomized multiscale constructions), compute normalized
discrete Fourier spectra of their indicators, fit power-law decay
envelopes, and count 3-term arithmetic progressions both by brute force
and through the spectral trilinear form, with every spectral shortcut
cross-validated against an exact combinatorial count.
"""

from .apcount import (
    APReport,
    GuaranteeReport,
    SmearingReport,
    UniformityParams,
    VerificationReport,
    ap_report,
    congruence_count,
    cyclic_progression_pairs,
    embed_tripled,
    find_genuine_witness,
    genuine_ap_count,
    lambda3,
    middle_restrict,
    smearing_diagnostic,
    uniformity_guarantee,
    verify_pipeline,
)
from .errors import (
    ConstructionError,
    ParameterError,
    ParityError,
    SetFormatError,
    SizeLimitError,
)
from .intsets import (
    DensityEstimate,
    DiscreteSet,
    cantor_build,
    density_profile,
    fractional_density_fit,
    pad_to_odd,
    read_set,
    scale_embed,
    write_set,
)
from .salemgen import (
    ConstructionTrace,
    FinalDecayReport,
    SalemConfig,
    StageDifferenceReport,
    StageRecord,
    StageSpectra,
    block_deviation_threshold,
    construct,
    final_decay_report,
    stage_difference_check,
    stage_normalized_spectra,
)
from .serialize import dumps_stable
from .spectral import (
    DecayFit,
    Spectrum,
    Violation,
    auto_cutoff,
    decay_fit,
    decay_violations,
    dft,
    dft_indicator,
    fejer_split,
    idft,
    lp_norm,
    linear_bias,
    mean_split,
    spectrum_to_csv,
)

__version__ = "0.1.0"

__all__ = [
    "APReport",
    "ConstructionError",
    "ConstructionTrace",
    "DecayFit",
    "DensityEstimate",
    "DiscreteSet",
    "FinalDecayReport",
    "GuaranteeReport",
    "ParameterError",
    "ParityError",
    "SalemConfig",
    "SetFormatError",
    "SizeLimitError",
    "SmearingReport",
    "Spectrum",
    "StageDifferenceReport",
    "StageRecord",
    "StageSpectra",
    "UniformityParams",
    "VerificationReport",
    "Violation",
    "ap_report",
    "auto_cutoff",
    "block_deviation_threshold",
    "cantor_build",
    "congruence_count",
    "construct",
    "cyclic_progression_pairs",
    "decay_fit",
    "decay_violations",
    "density_profile",
    "dft",
    "dft_indicator",
    "dumps_stable",
    "embed_tripled",
    "fejer_split",
    "final_decay_report",
    "find_genuine_witness",
    "fractional_density_fit",
    "genuine_ap_count",
    "idft",
    "lambda3",
    "linear_bias",
    "lp_norm",
    "mean_split",
    "middle_restrict",
    "pad_to_odd",
    "read_set",
    "scale_embed",
    "smearing_diagnostic",
    "spectrum_to_csv",
    "stage_difference_check",
    "stage_normalized_spectra",
    "uniformity_guarantee",
    "verify_pipeline",
    "write_set",
]
