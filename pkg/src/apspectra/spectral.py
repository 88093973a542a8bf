"""Discrete Fourier analysis of indicator functions.

Spectra here always carry the 1/N normalization: coeff[k] is the average
of f(n) * exp(-2*pi*i*k*n/N) over the modulus, so the DC coefficient of
an indicator is the counting density |A|/N and Parseval reads
sum_k |coeff[k]|**2 = |A|/N.

The module provides the one-sided Fejer low/high split of a spectrum,
the mean/oscillation split of the low part, sup and L^p norms, and
power-law decay envelope fitting of the form |coeff[k]| <= C*(k*N)**(-beta/2).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ParameterError
from .intsets import DiscreteSet

# Coefficients below this modulus are numerically zero and excluded from
# log-log fitting.
NEGLIGIBLE = 1e-14


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Length-N complex coefficient sequence of a function on Z_N."""

    modulus: int
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        arr = np.ascontiguousarray(np.asarray(self.coeffs, dtype=np.complex128))
        if arr.ndim != 1 or arr.shape[0] != self.modulus:
            raise ParameterError(
                f"spectrum must hold exactly {self.modulus} coefficients, got shape {arr.shape}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)


class Violation(NamedTuple):
    k: int
    magnitude: float
    bound: float


@dataclass(frozen=True)
class DecayFit:
    """Envelope |coeff[k]| <= constant * (k*scale)**(-beta/2) over a window."""

    constant: float
    beta: float
    violations: tuple[Violation, ...]
    degenerate: bool

    def to_dict(self) -> dict:
        return {
            "C": self.constant,
            "beta": self.beta,
            "violations": [
                {"k": v.k, "abs": v.magnitude, "bound": v.bound}
                for v in self.violations
            ],
            "degenerate": self.degenerate,
        }


def dft(values: Sequence[complex]) -> Spectrum:
    """Normalized transform of arbitrary complex values on Z_N."""
    arr = np.asarray(values, dtype=np.complex128)
    if arr.ndim != 1 or arr.size == 0:
        raise ParameterError("dft needs a nonempty one-dimensional sequence")
    return Spectrum(arr.size, np.fft.fft(arr) / arr.size)


def dft_indicator(s: DiscreteSet) -> Spectrum:
    """Normalized transform of the 0/1 indicator of a set."""
    return Spectrum(s.ambient, np.fft.fft(s.indicator()) / s.ambient)


def idft(spectrum: Spectrum) -> np.ndarray:
    """Point values of the function whose normalized transform is given."""
    return np.fft.ifft(spectrum.coeffs) * spectrum.modulus


def auto_cutoff(modulus: int) -> int:
    """Default low-pass cutoff: floor(N**(1/3)), clamped below N/2."""
    cutoff = min(int(math.floor(modulus ** (1.0 / 3.0))), (modulus - 1) // 2)
    if cutoff < 1:
        raise ParameterError(f"modulus {modulus} is too small for a low-pass cutoff")
    return cutoff


def fejer_split(
    spectrum: Spectrum, cutoff: int, symmetric: bool = False
) -> tuple[Spectrum, Spectrum]:
    """Split a spectrum into a triangular low-frequency part and the rest.

    The low part keeps frequencies 0..cutoff with weight 1 - n/(cutoff+1)
    (the transform of a one-sided Fejer-style kernel) and is zero above
    the cutoff; the high part is the exact coefficient-wise remainder, so
    low + high reconstructs the input to the last bit of rounding.  With
    ``symmetric=True`` the triangular weight is applied to min(n, N-n)
    instead, pairing each frequency with its conjugate mirror.
    """
    n = spectrum.modulus
    if cutoff < 1:
        raise ParameterError(f"cutoff must be a positive integer, got {cutoff}")
    if 2 * cutoff >= n:
        raise ParameterError(f"cutoff {cutoff} must satisfy cutoff < modulus/2 = {n / 2}")
    idx = np.arange(n)
    eff = np.minimum(idx, n - idx) if symmetric else idx
    weights = np.where(eff <= cutoff, 1.0 - eff / (cutoff + 1), 0.0)
    low = spectrum.coeffs * weights
    high = spectrum.coeffs - low
    return Spectrum(n, low), Spectrum(n, high)


def mean_split(spectrum: Spectrum) -> tuple[Spectrum, Spectrum]:
    """Split into the zero-mean oscillation and the constant (DC-only) part."""
    centered = spectrum.coeffs.copy()
    centered[0] = 0.0
    dc = np.zeros_like(spectrum.coeffs)
    dc[0] = spectrum.coeffs[0]
    return Spectrum(spectrum.modulus, centered), Spectrum(spectrum.modulus, dc)


def linear_bias(spectrum: Spectrum) -> float:
    """Largest coefficient modulus (the sup norm of the transform)."""
    return float(np.max(np.abs(spectrum.coeffs)))


def lp_norm(values: Sequence[complex], p: float) -> float:
    """Averaged L^p norm ((1/N) * sum |v|**p)**(1/p) of point values."""
    if p < 1:
        raise ParameterError(f"p must be >= 1, got {p}")
    arr = np.abs(np.asarray(values, dtype=np.complex128))
    return float(np.mean(arr**p) ** (1.0 / p))


def _frequency_window(
    spectrum: Spectrum, k_range: tuple[int, int] | None
) -> tuple[np.ndarray, np.ndarray]:
    n = spectrum.modulus
    lo, hi = (1, n - 1) if k_range is None else (int(k_range[0]), int(k_range[1]))
    if not 1 <= lo <= hi <= n - 1:
        raise ParameterError(
            f"frequency window [{lo}, {hi}] is empty or escapes [1, {n - 1}]"
        )
    k = np.arange(lo, hi + 1)
    return k, np.abs(spectrum.coeffs[lo : hi + 1])


def _fit_beta_dyadic(eff_k: np.ndarray, mags: np.ndarray) -> float:
    """Slope fit of log(max per dyadic block) against log frequency.

    Pointwise regression is dominated by near-zero coefficients, so only
    the largest coefficient of each block [2**i, 2**(i+1)) enters.
    """
    usable = mags >= NEGLIGIBLE
    if not np.any(usable):
        return 0.0
    ku = eff_k[usable].astype(float)
    mu = mags[usable]
    blocks = np.floor(np.log2(ku)).astype(int)
    xs, ys = [], []
    for b in np.unique(blocks):
        sel = blocks == b
        j = int(np.argmax(mu[sel]))
        xs.append(math.log(ku[sel][j]))
        ys.append(math.log(mu[sel][j]))
    if len(xs) < 2:
        return 0.0
    slope = np.polyfit(xs, ys, 1)[0]
    return float(-2.0 * slope)


def decay_fit(
    spectrum: Spectrum,
    beta: float | None = None,
    k_range: tuple[int, int] | None = None,
    symmetric: bool = False,
    k_scale: float | None = None,
) -> DecayFit:
    """Fit the tightest envelope constant, and the exponent when not given.

    Parameters
    ----------
    beta:
        Envelope exponent.  When None, it is fitted by least squares on
        the per-dyadic-block maxima of the log coefficient magnitudes.
    k_range:
        Inclusive frequency window; defaults to [1, N-1].
    symmetric:
        Measure frequency as min(k, N-k) instead of the raw index.
    k_scale:
        The bound is constant * (k * k_scale)**(-beta/2); defaults to the
        modulus.  Pass 1 for a plain |coeff[k]| <= C * k**(-beta/2) form.

    The returned constant is the minimal value with an empty violation
    list over the window (nudged up by at most a few ulps so that the
    check-mode scan of :func:`decay_violations` comes back clean).
    """
    k, mags = _frequency_window(spectrum, k_range)
    n = spectrum.modulus
    eff = np.minimum(k, n - k) if symmetric else k
    scale = float(n if k_scale is None else k_scale)
    degenerate = bool(np.all(mags < NEGLIGIBLE))
    if beta is None:
        beta = _fit_beta_dyadic(eff, mags)
    base = np.power(eff.astype(float) * scale, -beta / 2.0)
    constant = float(np.max(mags * np.power(eff.astype(float) * scale, beta / 2.0)))
    for _ in range(8):
        if np.all(mags <= constant * base):
            break
        constant = float(np.nextafter(constant, np.inf))
    return DecayFit(constant, float(beta), (), degenerate)


def decay_violations(
    spectrum: Spectrum,
    constant: float,
    beta: float,
    k_range: tuple[int, int] | None = None,
    symmetric: bool = False,
    k_scale: float | None = None,
) -> DecayFit:
    """Check mode: scan a window against a fixed envelope (C, beta)."""
    k, mags = _frequency_window(spectrum, k_range)
    n = spectrum.modulus
    eff = np.minimum(k, n - k) if symmetric else k
    scale = float(n if k_scale is None else k_scale)
    bounds = constant * np.power(eff.astype(float) * scale, -beta / 2.0)
    bad = np.nonzero(mags > bounds)[0]
    violations = tuple(
        Violation(int(k[i]), float(mags[i]), float(bounds[i])) for i in bad
    )
    degenerate = bool(np.all(mags < NEGLIGIBLE))
    return DecayFit(float(constant), float(beta), violations, degenerate)


def spectrum_to_csv(spectrum: Spectrum, path: str | Path | io.TextIOBase, digits: int = 17) -> None:
    """Write one row per frequency: k, real part, imaginary part, modulus."""
    fmt = f".{digits}g"

    def _rows(handle) -> None:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["k", "re", "im", "abs"])
        for k, c in enumerate(spectrum.coeffs):
            writer.writerow(
                [k, format(c.real, fmt), format(c.imag, fmt), format(abs(c), fmt)]
            )

    if isinstance(path, io.TextIOBase):
        _rows(path)
    else:
        with open(path, "w", newline="") as handle:
            _rows(handle)
