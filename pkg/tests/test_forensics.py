import math

import numpy as np
import pytest

from csl import forensics
from csl.errors import ConfigError, DataFormatError, DomainError, InsufficientDataError


def make_tape(sizes):
    n = len(sizes)
    return forensics.TradeTape(
        tuple(float(i) for i in range(n)), (1.0,) * n, tuple(float(s) for s in sizes)
    )


def authentic_sizes(rng, n):
    """Exactly Benford first digits, heavy tail, round-size clustering."""
    g = rng.geometric(0.85, n) - 1
    w = rng.random(n)
    sizes = 10.0 ** (g + w)
    snap = rng.random(n) < 0.10
    snapped = np.round(sizes / 0.5) * 0.5
    return np.where(snap & (snapped > 0), snapped, sizes)


def test_first_digits():
    got = forensics.first_digits(np.array([123.4, 0.00456, 250.0, 1.0, 9.99, 1000.0]))
    assert list(got) == [1, 4, 2, 1, 9, 1]
    with pytest.raises(DomainError):
        forensics.first_digits(np.array([0.0]))


def test_benford_expected_first_digit_share():
    assert forensics.BENFORD_PROBS[0] == pytest.approx(math.log10(2))
    assert forensics.BENFORD_PROBS[0] == pytest.approx(0.30103, abs=1e-5)
    assert sum(forensics.BENFORD_PROBS) == pytest.approx(1.0)


def test_benford_log_uniform_passes():
    rng = np.random.default_rng(42)
    tape = make_tape(10 ** rng.uniform(0, 3, 100_000))
    res = forensics.benford_test(tape)
    assert res.passed and res.chi2 < 15.507
    assert res.observed[0] == pytest.approx(0.30103, abs=0.01)


def test_benford_uniform_fails():
    rng = np.random.default_rng(42)
    tape = make_tape(rng.uniform(1, 9.99, 100_000))
    res = forensics.benford_test(tape)
    assert not res.passed and res.chi2 > 1000


def test_benford_scale_invariance():
    rng = np.random.default_rng(7)
    sizes = 10 ** rng.uniform(0, 2, 2000)
    base = forensics.benford_test(make_tape(sizes)).chi2
    for k in (-3, 2, 5):
        scaled = forensics.benford_test(make_tape(sizes * 10.0**k)).chi2
        assert scaled == pytest.approx(base, rel=1e-9)


def test_benford_floor():
    with pytest.raises(InsufficientDataError):
        forensics.benford_test(make_tape([1.5] * 499))


def test_clustering_all_round():
    tape = make_tape([1.0] * 600)
    res = forensics.size_clustering_test(tape, round_bases=(1.0,), tolerance=1e-9)
    assert res.round_fraction == 1.0
    assert res.passed


def test_clustering_uniform_matches_band_measure():
    rng = np.random.default_rng(3)
    tol = 0.01
    tape = make_tape(rng.uniform(0.25, 10.25, 200_000))
    res = forensics.size_clustering_test(tape, round_bases=(0.5,), tolerance=tol)
    expected_band = 2 * tol / 0.5
    assert res.round_fraction == pytest.approx(expected_band, rel=0.05)
    assert abs(res.excess) < 0.005
    assert not res.passed  # uniform sizes show no genuine round-size excess


def test_clustering_mixture_recovers_round_share():
    rng = np.random.default_rng(11)
    n = 50_000
    continuous = 10 ** rng.uniform(0, 2, n)
    snap_mask = rng.random(n) < 0.20
    sizes = np.where(snap_mask, np.maximum(np.round(continuous / 0.5) * 0.5, 0.5), continuous)
    res = forensics.size_clustering_test(make_tape(sizes), round_bases=(0.5,), tolerance=1e-9)
    assert res.excess == pytest.approx(0.20, abs=0.02)
    assert res.passed


def test_clustering_config_errors():
    tape = make_tape([1.0] * 600)
    with pytest.raises(ConfigError):
        forensics.size_clustering_test(tape, round_bases=())
    with pytest.raises(ConfigError):
        forensics.size_clustering_test(tape, round_bases=(1.0,), tolerance=0.6)


def test_hill_pareto():
    rng = np.random.default_rng(5)
    sizes = (1 - rng.random(100_000)) ** (-1 / 2.0)  # Pareto alpha=2
    res = forensics.hill_tail_index(make_tape(sizes), k=1000)
    assert res.tail_exponent == pytest.approx(2.0, rel=0.10)


def test_hill_exponential_estimate_is_k_unstable():
    # Non-power-law signature: for an exponential tail the estimated
    # exponent tracks the threshold (grows as k shrinks), unlike the
    # k-stable Pareto estimate.
    rng = np.random.default_rng(6)
    sizes = rng.exponential(1.0, 100_000) + 1e-9
    deep = forensics.hill_tail_index(make_tape(sizes), k=100).tail_exponent
    shallow = forensics.hill_tail_index(make_tape(sizes), k=5000).tail_exponent
    assert deep > 1.5 * shallow
    pareto = (1 - rng.random(100_000)) ** (-1 / 2.0)
    p_deep = forensics.hill_tail_index(make_tape(pareto), k=100).tail_exponent
    p_shallow = forensics.hill_tail_index(make_tape(pareto), k=5000).tail_exponent
    assert p_deep == pytest.approx(p_shallow, rel=0.25)


def test_hill_degenerate_and_scale_invariance():
    res = forensics.hill_tail_index(make_tape([3.0] * 600), k=20)
    assert res.xi == 0.0 and math.isinf(res.tail_exponent)
    rng = np.random.default_rng(8)
    sizes = (1 - rng.random(5000)) ** -1.0
    a = forensics.hill_tail_index(make_tape(sizes), k=100).xi
    b = forensics.hill_tail_index(make_tape(sizes * 37.0), k=100).xi
    assert a == pytest.approx(b, rel=1e-12)
    with pytest.raises(DomainError):
        forensics.hill_tail_index(make_tape([1.0] * 100), k=9)
    with pytest.raises(DomainError):
        forensics.hill_tail_index(make_tape([1.0] * 100), k=50)


def test_suspicious_volume_fraction():
    assert forensics.suspicious_volume_fraction(110_554_502, 1_030_878) == pytest.approx(
        0.9907, abs=1e-4
    )
    assert forensics.suspicious_volume_fraction(100.0, 100.0) == 0.0
    assert forensics.suspicious_volume_fraction(100.0, 0.0) == 1.0
    with pytest.warns(UserWarning):
        assert forensics.suspicious_volume_fraction(100.0, 150.0) == 0.0
    with pytest.raises(DomainError):
        forensics.suspicious_volume_fraction(0.0, 1.0)


def test_verdict_authentic_tape_consistent():
    rng = np.random.default_rng(21)
    tape = make_tape(authentic_sizes(rng, 20_000))
    rep = forensics.forensic_verdict(tape)
    assert rep.verdict == "consistent"
    assert rep.benford.passed and rep.clustering.passed and rep.tail_passed
    assert rep.tests_failed == 0


def test_verdict_wash_tape_suspicious():
    rng = np.random.default_rng(22)
    tape = make_tape(rng.uniform(1, 9.99, 20_000))
    rep = forensics.forensic_verdict(tape)
    assert rep.verdict == "suspicious"
    assert rep.tests_failed >= 2


def test_verdict_single_failure_still_consistent():
    # Benford-exact and clustered, but bounded support (thin tail fails).
    rng = np.random.default_rng(23)
    sizes = 10 ** rng.uniform(0, 3, 20_000)
    snap = rng.random(20_000) < 0.10
    snapped = np.maximum(np.round(sizes / 0.5) * 0.5, 0.5)
    tape = make_tape(np.where(snap, snapped, sizes))
    rep = forensics.forensic_verdict(tape)
    assert not rep.tail_passed
    assert rep.tests_failed == 1
    assert rep.verdict == "consistent"


def test_verdict_deterministic_and_volumes():
    rng = np.random.default_rng(24)
    tape = make_tape(authentic_sizes(rng, 5000))
    cfg = forensics.ForensicConfig(
        reported_volume=110_554_502.0, predicted_real_volume=1_030_878.0
    )
    rep1 = forensics.forensic_verdict(tape, cfg)
    rep2 = forensics.forensic_verdict(tape, cfg)
    assert rep1 == rep2
    assert rep1.suspicious_volume_fraction == pytest.approx(0.9907, abs=1e-4)


def test_trade_csv_loader(tmp_path):
    path = tmp_path / "trades.csv"
    path.write_text(
        "timestamp,price,size\n"
        "1700000000,100.5,2.0\n"
        "2023-11-14T22:13:21+00:00,101.0,0.5\n"
    )
    tape = forensics.load_trades_csv(str(path))
    assert len(tape) == 2
    assert tape.timestamps[0] == pytest.approx(1.7e9)
    assert tape.timestamps[1] == pytest.approx(1700000001.0)

    bad = tmp_path / "bad.csv"
    bad.write_text("time,price,size\n1,2,3\n")
    with pytest.raises(DataFormatError):
        forensics.load_trades_csv(str(bad))
    neg = tmp_path / "neg.csv"
    neg.write_text("timestamp,price,size\n1,2,-3\n")
    with pytest.raises(DataFormatError):
        forensics.load_trades_csv(str(neg))


def test_tape_invariants():
    with pytest.raises(DataFormatError):
        forensics.TradeTape((2.0, 1.0), (1.0, 1.0), (1.0, 1.0))
    with pytest.raises(DataFormatError):
        forensics.TradeTape((1.0, 2.0), (1.0, -1.0), (1.0, 1.0))
