"""Counting 3-term arithmetic progressions, exactly and spectrally.

Two counting regimes coexist and cross-validate each other:

* combinatorial: brute-force enumeration of genuine integer progressions
  x, x+r, x+2r (no modular wrap) and of ordered congruence triples
  x + y = 2z mod N;
* spectral: the trilinear form L3(f, g, h) = E_{x,r} f(x) g(x+r) h(x+2r),
  which collapses to the single frequency sum
  sum_n fhat(n) * ghat(-2n) * hhat(n).

The module also provides the middle-third restriction, the sparse-set
uniformity guarantee (coefficient ceiling plus middle-mass floor implies
a nontrivial progression), the embedding of a set into a tripled cyclic
group so that every nontrivial modular progression is genuine, the
coefficient "smearing" diagnostic for that embedding, and the end-to-end
verification pipeline combining all of the above.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ParameterError, ParityError
from .intsets import DiscreteSet, fractional_density_fit
from .spectral import (
    DecayFit,
    auto_cutoff,
    decay_fit,
    dft_indicator,
    fejer_split,
    mean_split,
)

_ROW_CHUNK = 1024  # bounds the temporary pair tables in the O(|A|^2) scans


# ---------------------------------------------------------------------------
# Trilinear form and congruence counting


def _lambda3_direct(f: np.ndarray, g: np.ndarray, h: np.ndarray) -> complex:
    n = f.size
    total = 0.0 + 0.0j
    for r in range(n):
        total += np.sum(f * np.roll(g, -r) * np.roll(h, -2 * r))
    return complex(total / n**2)


def _lambda3_from_coeffs(fc: np.ndarray, gc: np.ndarray, hc: np.ndarray) -> complex:
    n = fc.size
    idx = (-2 * np.arange(n)) % n
    return complex(np.sum(fc * gc[idx] * hc))


def lambda3(
    f: Sequence[complex],
    g: Sequence[complex],
    h: Sequence[complex],
    method: str = "direct",
) -> complex:
    """Average of f(x) g(x+r) h(x+2r) over all (x, r) in Z_N x Z_N.

    The direct method runs the double summation; the spectral method
    evaluates sum_n fhat(n) ghat(-2n) hhat(n) and requires an odd modulus
    so that n -> -2n permutes the frequencies.
    """
    fa = np.asarray(f, dtype=np.complex128)
    ga = np.asarray(g, dtype=np.complex128)
    ha = np.asarray(h, dtype=np.complex128)
    if not (fa.shape == ga.shape == ha.shape) or fa.ndim != 1 or fa.size == 0:
        raise ParameterError("all three sequences must share one nonzero modulus")
    if method == "direct":
        return _lambda3_direct(fa, ga, ha)
    if method == "spectral":
        if fa.size % 2 == 0:
            raise ParityError(
                f"spectral trilinear form needs an odd modulus, got {fa.size}"
            )
        n = fa.size
        return _lambda3_from_coeffs(
            np.fft.fft(fa) / n, np.fft.fft(ga) / n, np.fft.fft(ha) / n
        )
    raise ParameterError(f"unknown method {method!r} (expected 'direct' or 'spectral')")


def congruence_count(s: DiscreteSet, method: str = "direct") -> int:
    """Ordered triples (x, y, z) of set elements with x + y = 2z mod N.

    Both methods need an odd modulus: the direct scan resolves z as
    (x+y) * inverse(2), and the spectral route needs n -> -2n to be a
    bijection on the frequencies.  Includes the |A| trivial x = y = z
    triples and any wrap-around progressions of the cyclic group.
    """
    n = s.ambient
    if n % 2 == 0:
        raise ParityError(f"congruence counting needs an odd modulus, got {n}")
    if method == "spectral":
        c = dft_indicator(s).coeffs
        value = _lambda3_from_coeffs(c, c, c) * n**2
        return int(round(value.real))
    if method != "direct":
        raise ParameterError(f"unknown method {method!r} (expected 'direct' or 'spectral')")
    if not s.elements:
        return 0
    inv2 = pow(2, -1, n)
    member = np.zeros(n, dtype=bool)
    els = np.asarray(s.elements, dtype=np.int64)
    member[els] = True
    count = 0
    for start in range(0, els.size, _ROW_CHUNK):
        rows = els[start : start + _ROW_CHUNK, None]
        z = (rows + els[None, :]) * inv2 % n
        count += int(member[z].sum())
    return count


def genuine_ap_count(s: DiscreteSet) -> int:
    """Progressions x, x+r, x+2r with r >= 1 fully inside the set as integers.

    Each unordered progression is counted exactly once, via its endpoint
    pair: (a, c) with a < c, a = c mod 2, and the midpoint in the set.
    """
    els = np.asarray(s.elements, dtype=np.int64)
    if els.size < 3:
        return 0
    member = np.zeros(s.ambient, dtype=bool)
    member[els] = True
    total = 0
    for i in range(els.size - 2):
        a = els[i]
        c = els[i + 1 :]
        mid2 = a + c
        even = mid2 % 2 == 0
        total += int(member[mid2[even] // 2].sum())
    return total


def find_genuine_witness(s: DiscreteSet) -> tuple[int, int, int] | None:
    """One genuine progression (x, x+r, x+2r), or None when there is none."""
    els = np.asarray(s.elements, dtype=np.int64)
    if els.size < 3:
        return None
    member = np.zeros(s.ambient, dtype=bool)
    member[els] = True
    for i in range(els.size - 2):
        a = els[i]
        c = els[i + 1 :]
        mid2 = a + c
        even = mid2 % 2 == 0
        cand = c[even]
        hits = np.nonzero(member[mid2[even] // 2])[0]
        if hits.size:
            cc = int(cand[hits[0]])
            return (int(a), (int(a) + cc) // 2, cc)
    return None


def cyclic_progression_pairs(s: DiscreteSet, include_trivial: bool = False) -> int:
    """Ordered (x, r) pairs with x, x+r, x+2r all in the set mod N.

    A direct modular scan, independent of any Fourier machinery; used as
    an enumeration oracle for the spectral counts.
    """
    n = s.ambient
    member = np.zeros(n, dtype=bool)
    els = np.asarray(s.elements, dtype=np.int64)
    if els.size:
        member[els] = True
    count = 0
    r0 = 0 if include_trivial else 1
    for r in range(r0, n):
        count += int((member[(els + r) % n] & member[(els + 2 * r) % n]).sum())
    return count


# ---------------------------------------------------------------------------
# Middle restriction and the uniformity guarantee


def middle_restrict(s: DiscreteSet) -> DiscreteSet:
    """Elements in the middle third [ceil(N/3), floor(2N/3)), same ambient."""
    if s.ambient < 3:
        raise ParameterError(f"middle restriction needs ambient >= 3, got {s.ambient}")
    lo = -(-s.ambient // 3)
    hi = 2 * s.ambient // 3
    return DiscreteSet(s.ambient, tuple(e for e in s.elements if lo <= e < hi))


@dataclass(frozen=True)
class UniformityParams:
    """Density parameters delta, alpha and the slack epsilon in the exponent.

    The coefficient ceiling is checked at beta = 2*alpha - 2 - epsilon,
    strictly below the critical exponent 2*alpha - 2.
    """

    delta: float
    alpha: float
    epsilon: float = 0.05

    def __post_init__(self) -> None:
        if self.delta <= 0:
            raise ParameterError(f"delta must be positive, got {self.delta}")
        if not 0.0 < self.alpha <= 1.0:
            raise ParameterError(f"alpha must lie in (0, 1], got {self.alpha}")
        if self.epsilon <= 0:
            raise ParameterError(f"epsilon must be positive, got {self.epsilon}")

    @property
    def beta(self) -> float:
        return 2.0 * self.alpha - 2.0 - self.epsilon

    @classmethod
    def from_set(
        cls, s: DiscreteSet, epsilon: float = 0.05, alpha: float | None = None
    ) -> "UniformityParams":
        fit = fractional_density_fit(s, alpha=alpha)
        return cls(fit.delta_hat, max(fit.alpha_hat, 1e-12), epsilon)


@dataclass(frozen=True)
class GuaranteeReport:
    applicable: bool
    max_nonzero_coeff: float
    coeff_bound: float
    middle_size: int
    middle_bound: float
    lower_bound: float
    conclusion: str  # "guaranteed" | "not-applicable"
    reasons: tuple[str, ...]
    params: UniformityParams
    modulus: int

    def to_dict(self) -> dict:
        return {
            "applicable": self.applicable,
            "maxNonzeroCoeff": self.max_nonzero_coeff,
            "coeffBound": self.coeff_bound,
            "middleSize": self.middle_size,
            "middleBound": self.middle_bound,
            "lowerBound": self.lower_bound,
            "conclusion": self.conclusion,
            "reasons": list(self.reasons),
            "delta": self.params.delta,
            "alpha": self.params.alpha,
            "epsilon": self.params.epsilon,
            "beta": self.params.beta,
            "modulus": self.modulus,
        }


def uniformity_guarantee(s: DiscreteSet, params: UniformityParams) -> GuaranteeReport:
    """Check the sparse-set uniformity conditions and the progression bound.

    Applicability needs every nonzero-frequency coefficient below
    delta**2 * N**beta / 32, middle-third mass at least delta * N**alpha / 4,
    and N > 32/delta**2.  When applicable and the net count floor
    delta**3 * N**(3*alpha - 1) / 32 - delta * N**alpha is positive, a
    nontrivial genuine progression is guaranteed.
    """
    n = s.ambient
    expected = params.delta * float(n) ** params.alpha
    if abs(expected - s.cardinality) > 0.5 + 1e-9 * max(1, s.cardinality):
        raise ParameterError(
            f"params imply cardinality {expected:.3f}, set has {s.cardinality}"
        )
    coeffs = dft_indicator(s).coeffs
    max_nonzero = float(np.max(np.abs(coeffs[1:]))) if n > 1 else 0.0
    coeff_bound = params.delta**2 * float(n) ** params.beta / 32.0
    middle_size = middle_restrict(s).cardinality if n >= 3 else 0
    middle_bound = params.delta * float(n) ** params.alpha / 4.0
    lower_bound = (
        params.delta**3 * float(n) ** (3.0 * params.alpha - 1.0) / 32.0
        - params.delta * float(n) ** params.alpha
    )
    reasons = []
    if max_nonzero > coeff_bound:
        reasons.append("coefficient ceiling exceeded")
    if middle_size < middle_bound:
        reasons.append("middle third too thin")
    if n <= 32.0 / params.delta**2:
        reasons.append("modulus too small")
    applicable = not reasons
    if applicable and lower_bound <= 0:
        reasons.append("count floor not positive")
    conclusion = "guaranteed" if applicable and lower_bound > 0 else "not-applicable"
    return GuaranteeReport(
        applicable=applicable,
        max_nonzero_coeff=max_nonzero,
        coeff_bound=coeff_bound,
        middle_size=middle_size,
        middle_bound=middle_bound,
        lower_bound=lower_bound,
        conclusion=conclusion,
        reasons=tuple(reasons),
        params=params,
        modulus=n,
    )


# ---------------------------------------------------------------------------
# Tripled-group embedding and the smearing diagnostic


def embed_tripled(s: DiscreteSet) -> DiscreteSet:
    """Same elements inside a cyclic group three times as large.

    No element lands in the upper two thirds, so every nontrivial modular
    progression of the embedded set is a genuine integer progression of
    the original.
    """
    return DiscreteSet(3 * s.ambient, s.elements)


@dataclass(frozen=True, eq=False)
class SmearingReport:
    """Per-frequency energy of the tripled embedding against the source set.

    group_sums[k] adds the squared coefficient moduli at the embedded
    frequencies 3k, 3k-1, 3k-2 (mod 3N); group_bounds[k] is one third of
    the squared source coefficient at k.  The groupwise comparison is a
    diagnostic only; the aggregate identity (both sides summing to
    |A|/(3N) by Parseval) is exact and its residual is reported.
    """

    modulus: int
    group_sums: np.ndarray
    group_bounds: np.ndarray
    ratios: np.ndarray
    exceedances: tuple[int, ...]
    aggregate_embedded: float
    aggregate_base: float
    residual: float

    def to_dict(self, include_groups: bool = True) -> dict:
        out: dict = {
            "modulus": self.modulus,
            "aggregateEmbedded": self.aggregate_embedded,
            "aggregateBase": self.aggregate_base,
            "residual": self.residual,
            "exceedances": list(self.exceedances),
        }
        if include_groups:
            out["groups"] = [
                {
                    "k": int(k),
                    "groupSum": float(self.group_sums[k]),
                    "bound": float(self.group_bounds[k]),
                    "ratio": float(self.ratios[k]),
                }
                for k in range(self.modulus)
            ]
        return out


def smearing_diagnostic(s: DiscreteSet) -> SmearingReport:
    n = s.ambient
    base = np.abs(dft_indicator(s).coeffs) ** 2
    emb = np.abs(dft_indicator(embed_tripled(s)).coeffs) ** 2
    k = np.arange(n)
    group_sums = emb[3 * k] + emb[(3 * k - 1) % (3 * n)] + emb[(3 * k - 2) % (3 * n)]
    group_bounds = base / 3.0
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = group_sums / group_bounds
    exceedances = tuple(int(i) for i in np.nonzero(group_sums > group_bounds)[0])
    agg_emb = float(emb.sum())
    agg_base = float(base.sum() / 3.0)
    return SmearingReport(
        modulus=n,
        group_sums=group_sums,
        group_bounds=group_bounds,
        ratios=ratios,
        exceedances=exceedances,
        aggregate_embedded=agg_emb,
        aggregate_base=agg_base,
        residual=agg_emb - agg_base,
    )


# ---------------------------------------------------------------------------
# Report objects


def _complex_entry(z: complex) -> dict:
    return {"re": z.real, "im": z.imag, "abs": abs(z)}


@dataclass(frozen=True)
class APReport:
    """Progression counts of one set under one counting method."""

    modulus: int
    congruence_count: int
    genuine_count: int
    trivial_count: int
    lambda3: complex
    method: str
    witness: tuple[int, int, int] | None

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "congruenceCount": self.congruence_count,
            "genuineCount": self.genuine_count,
            "trivialCount": self.trivial_count,
            "lambda3": _complex_entry(self.lambda3),
            "method": self.method,
            "witness": list(self.witness) if self.witness else None,
        }


def ap_report(s: DiscreteSet, method: str = "both") -> APReport:
    """All progression counts of a set; 'both' cross-checks the two routes."""
    if method not in ("direct", "spectral", "both"):
        raise ParameterError(f"unknown method {method!r}")
    n = s.ambient
    ind = s.indicator()
    if method in ("direct", "both"):
        value = lambda3(ind, ind, ind, method="direct")
        count = congruence_count(s, method="direct")
    if method in ("spectral", "both"):
        value_s = lambda3(ind, ind, ind, method="spectral")
        count_s = congruence_count(s, method="spectral")
        if method == "both":
            if count_s != count:
                raise RuntimeError(
                    f"congruence counts disagree: direct {count}, spectral {count_s}"
                )
        else:
            value, count = value_s, count_s
    return APReport(
        modulus=n,
        congruence_count=count,
        genuine_count=genuine_ap_count(s),
        trivial_count=s.cardinality,
        lambda3=value,
        method=method,
        witness=find_genuine_witness(s),
    )


@dataclass(frozen=True)
class VerificationReport:
    """Full spectral-counting pipeline output for one set.

    Collects the density exponent checks, the decay envelope, the eight
    low/high trilinear terms and the eight mean/oscillation refinements
    of the low-only term, both congruence and genuine counts (the latter
    computed through the tripled embedding and cross-checked against the
    brute-force scan), and the uniformity guarantee.
    """

    modulus: int
    cardinality: int
    alpha_hat: float
    delta_hat: float
    alpha_above_half: bool
    fejer_cutoff: int
    decay: DecayFit
    beta_above_density_floor: bool
    beta_in_window: bool
    lambda3_terms: dict
    lambda3_total: complex
    high_term_scale: float
    high_term_max_ratio: float
    dc_cube: float
    dc_cube_reference: float
    scale_constant: float
    congruence_count: int
    genuine_count: int
    genuine_count_direct: int
    counts_agree: bool
    trivial_count: int
    guarantee: GuaranteeReport
    progression_found: bool
    witness: tuple[int, int, int] | None

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "cardinality": self.cardinality,
            "alphaHat": self.alpha_hat,
            "deltaHat": self.delta_hat,
            "alphaAboveHalf": self.alpha_above_half,
            "fejerCutoff": self.fejer_cutoff,
            "decay": self.decay.to_dict(),
            "betaChecks": {
                "aboveDensityFloor": self.beta_above_density_floor,
                "inWindow": self.beta_in_window,
            },
            "lambda3Terms": {
                label: _complex_entry(z) for label, z in self.lambda3_terms.items()
            },
            "lambda3Total": _complex_entry(self.lambda3_total),
            "highTermScale": self.high_term_scale,
            "highTermMaxRatio": self.high_term_max_ratio,
            "dcCube": self.dc_cube,
            "dcCubeReference": self.dc_cube_reference,
            "scaleC": self.scale_constant,
            "congruenceCount": self.congruence_count,
            "genuineCount": self.genuine_count,
            "genuineCountDirect": self.genuine_count_direct,
            "countsAgree": self.counts_agree,
            "trivialCount": self.trivial_count,
            "guarantee": self.guarantee.to_dict(),
            "progressionFound": self.progression_found,
            "witness": list(self.witness) if self.witness else None,
        }


def verify_pipeline(
    s: DiscreteSet,
    cutoff: int | None = None,
    beta: float | None = None,
    epsilon: float = 0.05,
) -> VerificationReport:
    """Run the whole spectral verification chain on one set.

    Needs an odd ambient (spectral counting); pad even sets with
    :func:`apspectra.intsets.pad_to_odd` first.  When ``beta`` is None
    the decay exponent is fitted from the spectrum.
    """
    n = s.ambient
    if n % 2 == 0:
        raise ParityError(
            f"verification needs an odd ambient, got {n}; pad the set to odd first"
        )
    cutoff = auto_cutoff(n) if cutoff is None else cutoff
    spectrum = dft_indicator(s)
    fit = fractional_density_fit(s)
    decay = decay_fit(spectrum, beta=beta)
    low, high = fejer_split(spectrum, cutoff)
    centered, dc = mean_split(low)
    parts = {1: low, 2: high, 3: centered, 4: dc}
    terms: dict[str, complex] = {}
    for trio in itertools.product((1, 2), repeat=3):
        label = "".join(f"m{i}" for i in trio)
        terms[label] = _lambda3_from_coeffs(*(parts[i].coeffs for i in trio))
    for trio in itertools.product((3, 4), repeat=3):
        label = "".join(f"m{i}" for i in trio)
        terms[label] = _lambda3_from_coeffs(*(parts[i].coeffs for i in trio))
    total = _lambda3_from_coeffs(spectrum.coeffs, spectrum.coeffs, spectrum.coeffs)
    congruence = int(round((total * n**2).real))

    # every term touching the high part is expected to live at the
    # N**(-3*beta/2) scale; report the worst ratio against that curve
    high_scale = float(n) ** (-1.5 * decay.beta)
    high_ratio = max(
        abs(value) / high_scale
        for label, value in terms.items()
        if "m2" in label
    )

    embedded = embed_tripled(s)
    cyclic = congruence_count(embedded, method="spectral")
    nontrivial = cyclic - s.cardinality
    genuine_spectral = nontrivial // 2
    genuine_direct = genuine_ap_count(s)

    card = max(s.cardinality, 1)
    dc_cube = float(low.coeffs[0].real) ** 3
    dc_cube_ref = fit.delta_hat**3 * float(n) ** (3.0 * fit.alpha_hat - 3.0)
    scale_constant = float(total.real) * float(n) ** 3 / card**3

    guarantee = uniformity_guarantee(s, UniformityParams.from_set(s, epsilon))
    witness = find_genuine_witness(s)
    return VerificationReport(
        modulus=n,
        cardinality=s.cardinality,
        alpha_hat=fit.alpha_hat,
        delta_hat=fit.delta_hat,
        alpha_above_half=fit.alpha_hat > 0.5,
        fejer_cutoff=cutoff,
        decay=decay,
        beta_above_density_floor=decay.beta > 2.0 - 2.0 * fit.alpha_hat,
        beta_in_window=2.0 / 3.0 < decay.beta <= 1.0,
        lambda3_terms=terms,
        lambda3_total=total,
        high_term_scale=high_scale,
        high_term_max_ratio=high_ratio,
        dc_cube=dc_cube,
        dc_cube_reference=dc_cube_ref,
        scale_constant=scale_constant,
        congruence_count=congruence,
        genuine_count=genuine_spectral,
        genuine_count_direct=genuine_direct,
        counts_agree=genuine_spectral == genuine_direct and nontrivial % 2 == 0,
        trivial_count=s.cardinality,
        guarantee=guarantee,
        progression_found=genuine_direct >= 1,
        witness=witness,
    )
