import sys
import os

run_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, run_dir)

import numpy as np
import pytest

from rankDrift.model import (
    BinomialEnvelope,
    ZipfParams,
    net_potential,
    potential_profile,
    segment_overlap,
)
from rankDrift.utils import ParameterDomainError


def test_segment_overlap_examples():
    assert segment_overlap(BinomialEnvelope(5.0, 2.0), BinomialEnvelope(5.0, 2.0)) == pytest.approx(16.0)
    assert segment_overlap(BinomialEnvelope(0.0, 0.0), BinomialEnvelope(10.0, 0.0)) == pytest.approx(-10.0)
    assert segment_overlap(BinomialEnvelope(10.0, 1.0), BinomialEnvelope(14.0, 1.0)) == pytest.approx(4.0)


def test_segment_overlap_symmetric():
    e1, e2 = BinomialEnvelope(3.0, 0.5), BinomialEnvelope(4.5, 1.5)
    assert segment_overlap(e1, e2) == segment_overlap(e2, e1)


def test_single_word_has_no_potential():
    report = net_potential(ZipfParams(a=1.0, c=1), 10)
    np.testing.assert_array_equal(report.net_potential, [0])


def test_two_words_disjoint_at_beta_600():
    report = net_potential(ZipfParams(a=1.0, c=2), 600)
    np.testing.assert_array_equal(report.net_potential, [0, 0])


def test_potential_invariants():
    report = net_potential(ZipfParams(a=1.0, c=50), 2000)
    potential = report.net_potential
    assert potential.sum() == 0
    assert potential[0] >= 0
    assert potential[-1] <= 0
    assert np.all(np.abs(potential) <= report.c - 1)
    assert np.all(np.abs(report.normalized_potential) < 1)
    frame = report.to_frame()
    assert list(frame.columns) == ["rank", "mu", "sigma", "net_potential", "normalized_potential"]
    assert len(report.envelopes) == 50


@pytest.mark.parametrize("a,c,beta", [(1.0, 20, 100), (1.0, 200, 1000), (0.6, 300, 5000), (1.4, 120, 130)])
def test_sweep_matches_pairwise(a, c, beta):
    zipf = ZipfParams(a=a, c=c)
    sweep = net_potential(zipf, beta, method="sweep").net_potential
    pairwise = net_potential(zipf, beta, method="pairwise").net_potential
    np.testing.assert_array_equal(sweep, pairwise)


def test_uniform_vocabulary_has_zero_net_potential():
    # 所有包络相同，每个词都与其余词重叠: 净势为 (c−w) − (w−1)
    report = net_potential(ZipfParams(a=0.0, c=5), 1000)
    np.testing.assert_array_equal(report.net_potential, [4, 2, 0, -2, -4])


def test_net_potential_errors():
    with pytest.raises(ParameterDomainError):
        net_potential(ZipfParams(a=1.0, c=10), 5)
    with pytest.raises(ParameterDomainError):
        net_potential(ZipfParams(a=1.0, c=10), 100, method="brute")


def test_potential_decreases_with_beta():
    zipf = ZipfParams(a=1.0, c=20)
    peaks = [np.abs(net_potential(zipf, beta).normalized_potential).max() for beta in (100, 1000, 10_000, 100_000)]
    assert all(b <= a for a, b in zip(peaks, peaks[1:]))


def test_potential_increases_with_vocabulary():
    peaks = [
        np.abs(net_potential(ZipfParams(a=1.0, c=c), 10_000).normalized_potential).max()
        for c in (20, 100, 500)
    ]
    assert all(b >= a for a, b in zip(peaks, peaks[1:]))


def test_potential_profile():
    zipf = ZipfParams(a=1.0, c=20)
    profile = potential_profile(zipf, [100, 1000, 100_000])
    assert len(profile) == 60
    assert list(profile.columns[:3]) == ["beta", "c", "a"]
    top = profile[profile["rank"] == 1]["net_potential"].to_numpy()
    assert all(b <= a for a, b in zip(top, top[1:]))
    single = potential_profile(zipf, [1000])
    np.testing.assert_array_equal(single["net_potential"], net_potential(zipf, 1000).net_potential)
    with pytest.raises(ParameterDomainError):
        potential_profile(zipf, [])
