"""Randomized multiscale construction of spectrally flat integer sets.

Starting from the full interval [0, N**j), each stage subdivides every
surviving interval into N equal blocks and keeps a uniformly random
t-subset of them, ending after j stages with a nested set of t**j
points whose density exponent relative to N**j is log(t)/log(N).

Random choices can optionally be rejection-sampled against a per-block
exponential-sum deviation ceiling (the threshold under which more than
half of all draws succeed); the full record of grids, choices and retry
counts is kept in a trace so builds are reproducible bit for bit.

The stage-normalized spectra (N/t)**m * coeffs(A_m) telescope: their
successive differences obey an explicit ceiling of the form
32 * min(1, N**(m+1)/|k|) * t**(-(m+1)/2) * ln(8 * N**(m+1)), and summing
it geometrically yields a global power-law decay envelope for the final
set.  Checkers for both the stagewise and the final bound live here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConstructionError, ParameterError, SizeLimitError
from .intsets import DiscreteSet
from .spectral import DecayFit, Spectrum, decay_fit, dft_indicator


@dataclass(frozen=True)
class SalemConfig:
    """Parameters of one randomized build.

    branching: blocks per subdivision (N >= 2).
    keep:      blocks kept per interval (1 <= t <= N).
    depth:     number of stages j; the ambient interval is N**j.
    seed:      64-bit seed; block streams derive from (seed, stage, interval).
    max_retries: rejection-sampling attempt budget per block.
    eta_override: replaces the default deviation ceiling when set.
    verify_blocks: enforce the deviation ceiling while sampling.
    full_range_check: test every frequency of the ambient group instead of
        the aliasing period of the block grid.
    """

    branching: int
    keep: int
    depth: int
    seed: int = 0
    max_retries: int = 64
    eta_override: float | None = None
    verify_blocks: bool = False
    full_range_check: bool = False

    def __post_init__(self) -> None:
        if self.branching < 2:
            raise ParameterError(f"branching must be >= 2, got {self.branching}")
        if not 1 <= self.keep <= self.branching:
            raise ParameterError(
                f"keep must lie in [1, {self.branching}], got {self.keep}"
            )
        if self.depth < 1:
            raise ParameterError(f"depth must be >= 1, got {self.depth}")
        if not 0 <= self.seed < 2**64:
            raise ParameterError("seed must fit in 64 unsigned bits")
        if self.max_retries < 1:
            raise ParameterError(f"max_retries must be positive, got {self.max_retries}")
        if self.branching**self.depth >= 2**62:
            raise SizeLimitError(
                f"ambient {self.branching}**{self.depth} escapes the exact integer range"
            )

    @property
    def ambient(self) -> int:
        return self.branching**self.depth

    @property
    def alpha(self) -> float:
        return math.log(self.keep) / math.log(self.branching)

    def to_dict(self) -> dict:
        return {
            "branching": self.branching,
            "keep": self.keep,
            "depth": self.depth,
            "seed": self.seed,
            "maxRetries": self.max_retries,
            "etaOverride": self.eta_override,
            "verifyBlocks": self.verify_blocks,
            "fullRangeCheck": self.full_range_check,
        }


@dataclass(frozen=True)
class StageRecord:
    """Subdivision record for the stage producing A_{stage+1}."""

    stage: int
    endpoint_grid: tuple[int, ...]
    chosen: tuple[int, ...]
    retries: tuple[int, ...]
    eta: float
    checked_upto: int


@dataclass(frozen=True)
class ConstructionTrace:
    config: SalemConfig
    stages: tuple[StageRecord, ...]
    sets: tuple[DiscreteSet, ...]  # A_0 .. A_depth, all with ambient N**depth

    @property
    def final(self) -> DiscreteSet:
        return self.sets[-1]

    def to_dict(self, include_elements: bool = True) -> dict:
        out: dict = {
            "config": self.config.to_dict(),
            "ambient": self.config.ambient,
            "stages": [
                {
                    "stage": rec.stage,
                    "eta": rec.eta,
                    "checkedUpto": rec.checked_upto,
                    "chosen": list(rec.chosen),
                    "retries": list(rec.retries),
                    "cardinality": self.sets[rec.stage + 1].cardinality,
                }
                for rec in self.stages
            ],
        }
        if include_elements:
            out["finalElements"] = list(self.final.elements)
        return out


def block_deviation_threshold(branching: int, keep: int, block_len: int) -> float:
    """Deviation ceiling sqrt(32 * ln(8 * branching**2 * block_len) / keep).

    More than half of all uniform t-subset draws keep every normalized
    exponential sum within this distance of the full grid's, so rejection
    sampling against it terminates quickly.  Note the value exceeds the
    trivial bound 2 at small scales, where the check is vacuous.
    """
    if branching < 1 or keep < 1 or block_len < 1 or keep > branching:
        raise ParameterError("need branching, keep, block_len >= 1 and keep <= branching")
    return math.sqrt(32.0 * math.log(8.0 * branching**2 * block_len) / keep)


def _block_deviation(
    start: int, offsets: np.ndarray, grid: np.ndarray, ambient: int, k_hi: int
) -> float:
    """max_k |S_chosen(k)/t - S_grid(k)/N| over k in [1, k_hi)."""
    k = np.arange(1, k_hi)
    chosen_phase = np.exp(-2j * np.pi * np.outer(k, start + offsets) / ambient)
    grid_phase = np.exp(-2j * np.pi * np.outer(k, start + grid) / ambient)
    diff = chosen_phase.mean(axis=1) - grid_phase.mean(axis=1)
    return float(np.max(np.abs(diff)))


def construct(config: SalemConfig) -> ConstructionTrace:
    """Run the full multiscale build described by the config.

    Stage m splits each surviving interval of length N**(j-m) into N
    blocks of length N**(j-m-1) and keeps a uniformly random t-subset,
    drawn without replacement from a stream keyed by
    (seed, stage, interval index) so the sampling order is immaterial.
    With verify_blocks set, draws violating the deviation ceiling are
    rejected and redrawn up to max_retries times.
    """
    n, t, j = config.branching, config.keep, config.depth
    ambient = config.ambient
    sets = [DiscreteSet.full(ambient)]
    stages: list[StageRecord] = []
    starts = np.array([0], dtype=np.int64)
    for m in range(j):
        block = n ** (j - m - 1)
        eta = (
            config.eta_override
            if config.eta_override is not None
            else block_deviation_threshold(n, t, block)
        )
        k_hi = ambient if config.full_range_check else n * block
        local_grid = np.arange(n, dtype=np.int64) * block
        chosen_rows = []
        retry_counts = []
        for i, start in enumerate(starts):
            rng = np.random.default_rng([config.seed, m, i])
            attempts = 0
            while True:
                attempts += 1
                sel = np.sort(rng.choice(n, size=t, replace=False)).astype(np.int64)
                if not config.verify_blocks:
                    break
                dev = _block_deviation(int(start), sel * block, local_grid, ambient, k_hi)
                if dev <= eta:
                    break
                if attempts >= config.max_retries:
                    raise ConstructionError(
                        f"stage {m}, interval {i} (start {int(start)}): "
                        f"{config.max_retries} draws all exceeded the deviation "
                        f"ceiling {eta:.6g}"
                    )
            chosen_rows.append(int(start) + sel * block)
            retry_counts.append(attempts - 1)
        new_starts = np.concatenate(chosen_rows)  # sorted: parents sorted, offsets sorted
        elements = (new_starts[:, None] + np.arange(block, dtype=np.int64)[None, :]).ravel()
        sets.append(DiscreteSet(ambient, tuple(int(e) for e in elements)))
        grid_all = (starts[:, None] + local_grid[None, :]).ravel()
        stages.append(
            StageRecord(
                stage=m,
                endpoint_grid=tuple(int(g) for g in grid_all),
                chosen=tuple(int(b) for b in new_starts),
                retries=tuple(retry_counts),
                eta=float(eta),
                checked_upto=int(k_hi),
            )
        )
        starts = new_starts
    return ConstructionTrace(config=config, stages=tuple(stages), sets=tuple(sets))


@dataclass(frozen=True, eq=False)
class StageSpectra:
    """Stage-normalized spectra (branching/keep)**m * coeffs(A_m), m = 0..depth.

    The DC entry of every stage is 1, so the sequences telescope from the
    flat spectrum of the full interval down to the final set's rescaled
    transform.
    """

    branching: int
    keep: int
    depth: int
    modulus: int
    per_stage: tuple[np.ndarray, ...]


def stage_normalized_spectra(trace: ConstructionTrace) -> StageSpectra:
    n, t = trace.config.branching, trace.config.keep
    per_stage = []
    for m, s in enumerate(trace.sets):
        scale = n**m / t**m
        coeffs = np.fft.fft(s.indicator()) / trace.config.ambient * scale
        coeffs.setflags(write=False)
        per_stage.append(coeffs)
    return StageSpectra(
        branching=n,
        keep=t,
        depth=trace.config.depth,
        modulus=trace.config.ambient,
        per_stage=tuple(per_stage),
    )


@dataclass(frozen=True)
class StageDifferenceReport:
    symmetric: bool
    violations: tuple[tuple[int, int, float, float], ...]  # (stage, k, value, bound)
    max_ratio_per_stage: tuple[float, ...]
    argmax_k_per_stage: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "symmetric": self.symmetric,
            "violations": [
                {"stage": s, "k": k, "value": v, "bound": b}
                for (s, k, v, b) in self.violations
            ],
            "maxRatioPerStage": list(self.max_ratio_per_stage),
            "argmaxKPerStage": list(self.argmax_k_per_stage),
        }


def stage_difference_check(
    spectra: StageSpectra, symmetric: bool = True
) -> StageDifferenceReport:
    """Test every successive stage difference against its explicit ceiling.

    For stage m and frequency k >= 1 the ceiling is
    32 * min(1, branching**(m+1) / |k|) * keep**(-(m+1)/2) * ln(8 * branching**(m+1))
    with natural logarithm.  By default |k| is the symmetric frequency
    min(k, modulus - k): the stage differences have conjugate-symmetric
    moduli, so a window decaying in the raw index alone cannot hold at
    the mirrored frequencies.  Pass symmetric=False to scan the raw-index
    variant for comparison.
    """
    n, t = spectra.branching, spectra.keep
    modulus = spectra.modulus
    k = np.arange(1, modulus)
    eff = np.minimum(k, modulus - k) if symmetric else k
    violations = []
    max_ratios = []
    argmaxes = []
    for m in range(spectra.depth):
        diff = np.abs(spectra.per_stage[m + 1][1:] - spectra.per_stage[m][1:])
        bound = (
            32.0
            * np.minimum(1.0, float(n) ** (m + 1) / eff)
            * float(t) ** (-(m + 1) / 2.0)
            * math.log(8.0 * float(n) ** (m + 1))
        )
        ratio = diff / bound
        worst = int(np.argmax(ratio))
        max_ratios.append(float(ratio[worst]))
        argmaxes.append(int(k[worst]))
        for i in np.nonzero(diff > bound)[0]:
            violations.append((m, int(k[i]), float(diff[i]), float(bound[i])))
    return StageDifferenceReport(
        symmetric=symmetric,
        violations=tuple(violations),
        max_ratio_per_stage=tuple(max_ratios),
        argmax_k_per_stage=tuple(argmaxes),
    )


@dataclass(frozen=True)
class FinalDecayReport:
    """Decay envelopes of the final stage, in both normalizations.

    normalized_fit bounds the stage-normalized spectrum by C * k**(-beta/2);
    indicator_fit bounds the plain indicator spectrum by C' * (k*N**j)**(-beta/2).
    The two differ by the DC factor (keep/branching)**depth, whose size
    against modulus**(-beta/2) decides whether rescaling alone carries the
    normalized envelope over to the indicator one; that comparison and
    the two exponent window checks are reported side by side without
    being reconciled.
    """

    beta: float
    alpha: float
    normalized_fit: DecayFit
    indicator_fit: DecayFit
    dc_value: float
    dc_target: float
    scale_sufficient: bool
    beta_above_density_floor: bool
    beta_in_window: bool

    def to_dict(self) -> dict:
        def _fit(fit: DecayFit) -> dict:
            return {
                "C": fit.constant,
                "beta": fit.beta,
                "violations": [
                    {"k": v.k, "abs": v.magnitude, "bound": v.bound}
                    for v in fit.violations
                ],
                "degenerate": fit.degenerate,
            }

        return {
            "beta": self.beta,
            "alpha": self.alpha,
            "normalizedFit": _fit(self.normalized_fit),
            "indicatorFit": _fit(self.indicator_fit),
            "dcValue": self.dc_value,
            "dcTarget": self.dc_target,
            "scaleSufficient": self.scale_sufficient,
            "betaAboveDensityFloor": self.beta_above_density_floor,
            "betaInWindow": self.beta_in_window,
        }


def final_decay_report(trace: ConstructionTrace, beta: float) -> FinalDecayReport:
    """Fit both final-stage envelopes at a fixed exponent beta in (0, 1]."""
    if not 0.0 < beta <= 1.0:
        raise ParameterError(f"beta must lie in (0, 1], got {beta}")
    config = trace.config
    n, t, j = config.branching, config.keep, config.depth
    spectra = stage_normalized_spectra(trace)
    normalized = Spectrum(config.ambient, spectra.per_stage[j])
    normalized_fit = decay_fit(normalized, beta=beta, k_scale=1.0)
    indicator_fit = decay_fit(dft_indicator(trace.final), beta=beta)
    dc_value = t**j / n**j
    dc_target = float(config.ambient) ** (-beta / 2.0)
    return FinalDecayReport(
        beta=beta,
        alpha=config.alpha,
        normalized_fit=normalized_fit,
        indicator_fit=indicator_fit,
        dc_value=dc_value,
        dc_target=dc_target,
        scale_sufficient=dc_value <= dc_target,
        beta_above_density_floor=beta > 2.0 - 2.0 * config.alpha,
        beta_in_window=2.0 / 3.0 < beta <= 1.0,
    )
