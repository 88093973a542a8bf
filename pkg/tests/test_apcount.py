import math

import numpy as np
import pytest

from apspectra import (
    DiscreteSet,
    ParameterError,
    ParityError,
    SalemConfig,
    UniformityParams,
    ap_report,
    congruence_count,
    construct,
    cyclic_progression_pairs,
    dft_indicator,
    embed_tripled,
    find_genuine_witness,
    genuine_ap_count,
    lambda3,
    middle_restrict,
    pad_to_odd,
    smearing_diagnostic,
    uniformity_guarantee,
    verify_pipeline,
)


def brute_lambda3(f, g, h):
    """Plain double loop, no vectorization; the enumeration oracle."""
    n = len(f)
    total = 0j
    for x in range(n):
        for r in range(n):
            total += f[x] * g[(x + r) % n] * h[(x + 2 * r) % n]
    return total / n**2


def brute_genuine(elements):
    members = set(elements)
    top = max(members, default=0)
    count = 0
    for x in elements:
        r = 1
        while x + 2 * r <= top:
            if x + r in members and x + 2 * r in members:
                count += 1
            r += 1
    return count


def random_set(rng, max_n=101, odd=True):
    n = int(rng.integers(5, max_n + 1))
    if odd and n % 2 == 0:
        n -= 1
    size = int(rng.integers(1, n + 1))
    els = np.sort(rng.choice(n, size=size, replace=False))
    return DiscreteSet(n, tuple(int(e) for e in els))


def test_lambda3_frozen_examples():
    ones = np.ones(9)
    assert lambda3(ones, ones, ones, "direct") == pytest.approx(1.0)
    ind = DiscreteSet(7, (0, 1, 2)).indicator()
    assert lambda3(ind, ind, ind, "direct") == pytest.approx(5 / 49)
    assert lambda3(ind, ind, ind, "spectral") == pytest.approx(5 / 49)
    assert brute_lambda3(ind, ind, ind) == pytest.approx(5 / 49)
    single = DiscreteSet(5, (0,)).indicator()
    assert lambda3(single, single, single, "direct") == pytest.approx(1 / 25)


def test_lambda3_errors():
    with pytest.raises(ParameterError):
        lambda3(np.ones(4), np.ones(5), np.ones(4))
    with pytest.raises(ParityError):
        lambda3(np.ones(4), np.ones(4), np.ones(4), "spectral")
    with pytest.raises(ParameterError):
        lambda3(np.ones(4), np.ones(4), np.ones(4), "fancy")


def test_lambda3_methods_agree_on_complex_inputs():
    rng = np.random.default_rng(23)
    for _ in range(10):
        n = int(rng.integers(3, 40)) | 1
        f = rng.normal(size=n) + 1j * rng.normal(size=n)
        g = rng.normal(size=n) + 1j * rng.normal(size=n)
        h = rng.normal(size=n) + 1j * rng.normal(size=n)
        d = lambda3(f, g, h, "direct")
        s = lambda3(f, g, h, "spectral")
        assert abs(d - s) <= 1e-9 * max(1.0, abs(d))


def test_congruence_examples():
    assert congruence_count(DiscreteSet(7, (0, 1, 2)), "direct") == 5
    assert congruence_count(DiscreteSet(7, (0, 1, 2)), "spectral") == 5
    for n in (1, 5, 9, 17):
        assert congruence_count(DiscreteSet.full(n), "direct") == n * n
    assert congruence_count(DiscreteSet(9, ()), "direct") == 0
    with pytest.raises(ParityError):
        congruence_count(DiscreteSet(8, (0, 1)), "direct")
    with pytest.raises(ParityError):
        congruence_count(DiscreteSet(8, (0, 1)), "spectral")


def test_genuine_examples_and_oracle():
    assert genuine_ap_count(DiscreteSet(10, (1, 3, 7, 9))) == 0
    assert genuine_ap_count(DiscreteSet(7, tuple(range(7)))) == 9
    assert genuine_ap_count(DiscreteSet(3, (0, 1, 2))) == 1
    for n in range(1, 60):
        assert genuine_ap_count(DiscreteSet.full(n)) == (n - 1) ** 2 // 4
    rng = np.random.default_rng(2)
    for _ in range(30):
        s = random_set(rng, max_n=60, odd=False)
        assert genuine_ap_count(s) == brute_genuine(s.elements)


def test_witness():
    assert find_genuine_witness(DiscreteSet(9, (0, 4, 8))) == (0, 4, 8)
    assert find_genuine_witness(DiscreteSet(10, (1, 3, 7, 9))) is None
    witness = find_genuine_witness(DiscreteSet(12, (0, 1, 5, 7, 9, 11)))
    assert witness is not None
    x, y, z = witness
    assert y - x == z - y and y - x >= 1


def test_middle_restrict():
    assert middle_restrict(DiscreteSet.full(9)).elements == (3, 4, 5)
    assert middle_restrict(DiscreteSet.full(10)).elements == (4, 5)
    assert middle_restrict(DiscreteSet(9, (1, 5, 8))).elements == (5,)
    assert middle_restrict(DiscreteSet(9, (1, 5, 8))).ambient == 9
    with pytest.raises(ParameterError):
        middle_restrict(DiscreteSet(2, (0,)))


def test_guarantee_full_interval_64():
    s = DiscreteSet.full(64)
    report = uniformity_guarantee(s, UniformityParams(1.0, 1.0, 0.1))
    assert report.applicable
    assert report.conclusion == "guaranteed"
    assert report.max_nonzero_coeff < 1e-14
    assert report.middle_size == 20  # [ceil(64/3), floor(128/3)) = [22, 42)
    assert report.middle_bound == pytest.approx(16.0)
    assert report.lower_bound == pytest.approx(64.0)
    assert genuine_ap_count(s) == 992


def test_guarantee_failure_reasons():
    small = uniformity_guarantee(DiscreteSet.full(20), UniformityParams(1.0, 1.0, 0.1))
    assert small.conclusion == "not-applicable"
    assert "modulus too small" in small.reasons

    lumpy = DiscreteSet(64, (0, 1, 2, 3))
    report = uniformity_guarantee(lumpy, UniformityParams.from_set(lumpy, 0.1))
    assert report.conclusion == "not-applicable"
    assert "coefficient ceiling exceeded" in report.reasons

    with pytest.raises(ParameterError):
        uniformity_guarantee(DiscreteSet.full(64), UniformityParams(0.5, 1.0, 0.1))


def test_guarantee_soundness_randomized():
    rng = np.random.default_rng(31)
    guaranteed = 0
    for _ in range(40):
        n = int(rng.integers(40, 220))
        drop = int(rng.integers(0, 4))
        els = sorted(set(range(n)) - set(rng.choice(n, size=drop, replace=False).tolist()))
        s = DiscreteSet(n, tuple(els))
        report = uniformity_guarantee(s, UniformityParams.from_set(s, 0.05))
        if report.conclusion == "guaranteed":
            guaranteed += 1
            assert genuine_ap_count(s) >= 1
    assert guaranteed > 10


def test_embed_examples():
    s = DiscreteSet(4, (0, 2))
    e = embed_tripled(s)
    assert e.ambient == 12 and e.elements == (0, 2)
    ce = dft_indicator(e).coeffs
    c = dft_indicator(s).coeffs
    assert ce[6] == pytest.approx(1 / 6)
    assert np.max(np.abs(ce[3 * np.arange(4)] - c / 3)) < 1e-12


def test_embedding_soundness_random():
    rng = np.random.default_rng(41)
    for _ in range(30):
        s = random_set(rng, max_n=51)
        e = embed_tripled(s)
        nontrivial = cyclic_progression_pairs(e)
        assert nontrivial == 2 * genuine_ap_count(s)
        assert congruence_count(e, "direct") - len(s) == nontrivial
        ks = np.arange(s.ambient)
        identity_gap = np.abs(
            dft_indicator(e).coeffs[3 * ks] - dft_indicator(s).coeffs[ks] / 3
        )
        assert np.max(identity_gap) < 1e-12


def test_smearing_hand_examples():
    report = smearing_diagnostic(DiscreteSet(3, (0, 1)))
    assert report.group_sums[1] == pytest.approx(0.0849, abs=2e-3)
    assert report.group_bounds[1] == pytest.approx(0.0370, abs=2e-3)
    assert 1 in report.exceedances

    equality = smearing_diagnostic(DiscreteSet(2, (0,)))
    assert equality.group_sums[1] == pytest.approx(1 / 12, abs=1e-12)
    assert equality.group_bounds[1] == pytest.approx(1 / 12, abs=1e-12)
    assert abs(equality.residual) < 1e-12


def test_smearing_aggregate_random():
    rng = np.random.default_rng(4)
    for _ in range(20):
        s = random_set(rng, max_n=60, odd=False)
        report = smearing_diagnostic(s)
        assert abs(report.residual) < 1e-9
        assert report.aggregate_embedded == pytest.approx(len(s) / (3 * s.ambient), rel=1e-9)


def test_ap_report_and_count_invariants():
    rng = np.random.default_rng(6)
    for _ in range(25):
        s = random_set(rng, max_n=101)
        report = ap_report(s, method="both")
        n = s.ambient
        ind = s.indicator()
        value = lambda3(ind, ind, ind, "direct")
        assert abs((n**2 * value).real - report.congruence_count) < 1e-6
        assert abs((n**2 * value).imag) < 1e-6
        assert report.genuine_count <= (report.congruence_count - report.trivial_count) / 2 + 1e-9
        if len(s) <= 2:
            assert report.genuine_count == 0
        if report.genuine_count >= 1:
            assert report.witness is not None


def test_verify_pipeline_full_interval():
    s = DiscreteSet.full(49)
    report = verify_pipeline(s)
    assert report.alpha_above_half
    assert report.decay.degenerate
    assert report.congruence_count == 49**2
    assert report.genuine_count == report.genuine_count_direct == (49 - 1) ** 2 // 4
    assert report.counts_agree
    assert report.progression_found and report.witness is not None


def test_verify_pipeline_sqrt_density_flag():
    n = 101
    squares = tuple(i * i for i in range(1, int(math.isqrt(n - 1)) + 1))
    report = verify_pipeline(DiscreteSet(n, squares))
    assert not report.alpha_above_half
    assert report.genuine_count == report.genuine_count_direct


def test_verify_pipeline_preconditions():
    with pytest.raises(ParityError):
        verify_pipeline(DiscreteSet.full(10))
    with pytest.raises(ParameterError):
        verify_pipeline(DiscreteSet.full(49), cutoff=30)


def test_verify_pipeline_on_random_build():
    trace = construct(SalemConfig(branching=8, keep=6, depth=4, seed=1))
    s = pad_to_odd(trace.final)
    report = verify_pipeline(s, beta=0.7)
    assert abs(report.alpha_hat - math.log(6) / math.log(8)) < 2e-3
    assert report.genuine_count == report.genuine_count_direct
    assert report.counts_agree
    assert report.progression_found
    assert report.decay.violations == ()

    # multilinearity: the eight low/high terms reassemble the full form,
    # and the eight mean/oscillation terms reassemble the low-only term
    total8 = sum(
        report.lambda3_terms[f"m{i}m{j}m{k}"]
        for i in (1, 2)
        for j in (1, 2)
        for k in (1, 2)
    )
    assert total8 == pytest.approx(report.lambda3_total, rel=1e-9)
    refined = sum(
        report.lambda3_terms[f"m{i}m{j}m{k}"]
        for i in (3, 4)
        for j in (3, 4)
        for k in (3, 4)
    )
    assert refined == pytest.approx(report.lambda3_terms["m1m1m1"], rel=1e-9)
    assert report.lambda3_terms["m4m4m4"].real == pytest.approx(report.dc_cube, rel=1e-9)
    assert report.dc_cube == pytest.approx(report.dc_cube_reference, rel=1e-6)

    payload = report.to_dict()
    for key in (
        "alphaHat",
        "decay",
        "lambda3Terms",
        "congruenceCount",
        "genuineCount",
        "trivialCount",
        "guarantee",
        "progressionFound",
    ):
        assert key in payload
    assert set(payload["decay"]) >= {"C", "beta", "violations"}
    assert set(payload["lambda3Terms"]["m1m2m1"]) == {"re", "im", "abs"}
