import math

import numpy as np
import pytest

from apspectra import (
    DiscreteSet,
    ParameterError,
    Spectrum,
    auto_cutoff,
    decay_fit,
    decay_violations,
    dft,
    dft_indicator,
    fejer_split,
    idft,
    linear_bias,
    lp_norm,
    mean_split,
    spectrum_to_csv,
)


def random_set(rng, n_lo=8, n_hi=120):
    n = int(rng.integers(n_lo, n_hi))
    size = int(rng.integers(1, n + 1))
    els = np.sort(rng.choice(n, size=size, replace=False))
    return DiscreteSet(n, tuple(int(e) for e in els))


def test_dft_examples():
    assert np.allclose(dft_indicator(DiscreteSet.full(4)).coeffs, [1, 0, 0, 0], atol=1e-15)
    assert np.allclose(dft_indicator(DiscreteSet(4, (0,))).coeffs, [0.25] * 4, atol=1e-15)
    assert np.allclose(dft_indicator(DiscreteSet(4, (0, 2))).coeffs, [0.5, 0, 0.5, 0], atol=1e-15)


def test_parseval_and_conjugate_symmetry():
    rng = np.random.default_rng(11)
    for _ in range(40):
        s = random_set(rng)
        c = dft_indicator(s).coeffs
        energy = float(np.sum(np.abs(c) ** 2))
        assert energy == pytest.approx(len(s) / s.ambient, rel=1e-9)
        ks = np.arange(1, s.ambient)
        assert np.max(np.abs(c[s.ambient - ks] - np.conj(c[ks]))) < 1e-12


def test_dft_linearity_on_disjoint_union():
    rng = np.random.default_rng(5)
    for _ in range(20):
        n = int(rng.integers(6, 100))
        picks = rng.choice(n, size=min(n, 10), replace=False).tolist()
        a, b = set(picks[: len(picks) // 2]), set(picks[len(picks) // 2 :])
        ca = dft_indicator(DiscreteSet.from_iterable(n, a)).coeffs
        cb = dft_indicator(DiscreteSet.from_iterable(n, b)).coeffs
        cu = dft_indicator(DiscreteSet.from_iterable(n, a | b)).coeffs
        assert np.max(np.abs(cu - (ca + cb))) < 1e-12


def test_dft_idft_round_trip():
    rng = np.random.default_rng(13)
    values = rng.normal(size=24) + 1j * rng.normal(size=24)
    assert np.allclose(idft(dft(values)), values, atol=1e-12)


def test_fejer_split_small_formula():
    spec = Spectrum(4, np.array([1.0, 2.0, 3.0, 4.0], dtype=complex))
    low, high = fejer_split(spec, 1)
    assert np.allclose(low.coeffs, [1.0, 1.0, 0.0, 0.0])
    assert np.allclose(high.coeffs, [0.0, 1.0, 3.0, 4.0])


def test_fejer_split_reconstruction_and_cutoff():
    rng = np.random.default_rng(3)
    for _ in range(50):
        s = random_set(rng)
        spec = dft_indicator(s)
        cutoff = int(rng.integers(1, s.ambient // 2))
        low, high = fejer_split(spec, cutoff)
        assert np.max(np.abs(low.coeffs + high.coeffs - spec.coeffs)) <= 1e-15
        assert np.all(low.coeffs[cutoff + 1 :] == 0)
        centered, dc = mean_split(low)
        assert centered.coeffs[0] == 0
        assert np.array_equal(centered.coeffs + dc.coeffs, low.coeffs)
        assert dc.coeffs[0] == low.coeffs[0]


def test_fejer_cutoff_precondition():
    spec = dft_indicator(DiscreteSet.full(8))
    with pytest.raises(ParameterError):
        fejer_split(spec, 4)
    with pytest.raises(ParameterError):
        fejer_split(spec, 0)
    fejer_split(spec, 3)


def test_fejer_reconstruction_pair_example():
    spec = dft_indicator(DiscreteSet(6, (0, 2)))
    low, high = fejer_split(spec, 2)
    assert np.max(np.abs(low.coeffs + high.coeffs - spec.coeffs)) < 1e-12
    assert low.coeffs[0] == pytest.approx(2 / 6)


def test_fejer_symmetric_variant_is_real():
    s = DiscreteSet(12, (0, 2, 5))
    spec = dft_indicator(s)
    low, _ = fejer_split(spec, 2, symmetric=True)
    assert low.coeffs[11] != 0  # mirrored frequencies survive
    assert np.max(np.abs(idft(low).imag)) < 1e-12
    one_sided, _ = fejer_split(spec, 2)
    assert np.max(np.abs(idft(one_sided).imag)) > 1e-6


def test_auto_cutoff():
    assert auto_cutoff(4097) == 16
    assert auto_cutoff(8) == 2
    assert 2 * auto_cutoff(9) < 9
    with pytest.raises(ParameterError):
        auto_cutoff(2)


def test_linear_bias():
    const = dft(np.full(8, 0.7 + 0.1j))
    assert linear_bias(const) == pytest.approx(abs(0.7 + 0.1j))
    pair = dft_indicator(DiscreteSet(4, (0, 2)))
    assert linear_bias(pair) == pytest.approx(0.5)
    centered, _ = mean_split(pair)
    assert linear_bias(centered) == pytest.approx(0.5)


def test_lp_norm():
    assert lp_norm(np.ones(9), 3.0) == pytest.approx(1.0)
    s = DiscreteSet(4, (0, 2))
    assert lp_norm(s.indicator(), 2) == pytest.approx(math.sqrt(0.5))
    c = dft_indicator(s).coeffs
    assert lp_norm(s.indicator(), 2) == pytest.approx(math.sqrt(np.sum(np.abs(c) ** 2)))
    with pytest.raises(ParameterError):
        lp_norm(np.ones(4), 0.5)


def test_decay_fit_full_interval_degenerate():
    fit = decay_fit(dft_indicator(DiscreteSet.full(32)))
    assert fit.degenerate
    assert fit.violations == ()
    assert fit.constant == 0.0


def test_decay_fit_flat_singleton():
    spec = dft_indicator(DiscreteSet(257, (0,)))
    fit = decay_fit(spec)
    assert abs(fit.beta) < 0.05
    assert decay_violations(spec, fit.constant, fit.beta).violations == ()


def test_decay_fit_soundness_random():
    rng = np.random.default_rng(19)
    for _ in range(20):
        s = random_set(rng, n_lo=16, n_hi=200)
        spec = dft_indicator(s)
        for fit in (decay_fit(spec), decay_fit(spec, beta=0.7)):
            recheck = decay_violations(spec, fit.constant, fit.beta)
            assert recheck.violations == ()
        sym = decay_fit(spec, symmetric=True)
        assert decay_violations(spec, sym.constant, sym.beta, symmetric=True).violations == ()


def test_decay_violations_reports_breaches():
    spec = dft_indicator(DiscreteSet(64, (0, 1, 5, 17)))
    fit = decay_fit(spec, beta=0.7)
    squeezed = decay_violations(spec, fit.constant / 4, 0.7)
    assert len(squeezed.violations) > 0
    k, magnitude, bound = squeezed.violations[0]
    assert magnitude > bound


def test_decay_fit_window_errors():
    spec = dft_indicator(DiscreteSet(16, (1, 5)))
    with pytest.raises(ParameterError):
        decay_fit(spec, k_range=(5, 3))
    with pytest.raises(ParameterError):
        decay_fit(spec, k_range=(0, 4))


def test_spectrum_csv(tmp_path):
    s = DiscreteSet(6, (0, 2))
    path = tmp_path / "spec.csv"
    spectrum_to_csv(dft_indicator(s), path)
    lines = path.read_text().splitlines()
    assert lines[0] == "k,re,im,abs"
    assert len(lines) == 7
    first = lines[1].split(",")
    assert first[0] == "0"
    assert float(first[1]) == pytest.approx(2 / 6)
