"""Per-packet delay distribution and parallel-link delivery."""

import math

import numpy as np
import pytest

from relaylink import config, mobility
from relaylink.chain import steady_metrics
from relaylink.multirelay import (
    MultiRelayError,
    delay_distribution,
    expected_delay,
    min_delay_probability,
    poisson_min_delay,
    steady_entry_law,
)


@pytest.fixture
def link():
    return config.link_config(config.default_config(), e_t=2e-4)


def test_entry_law_is_distribution(link):
    phi = steady_entry_law(link)
    assert phi.shape == (10,)
    assert np.all(phi >= 0.0)
    assert phi.sum() == pytest.approx(1.0, abs=1e-12)


def test_mean_matches_steady_state_delay(link):
    # first-passage mean from the steady entry law equals 1/pi0
    tau = steady_metrics(link).tau
    assert expected_delay(link) == pytest.approx(tau, rel=1e-10)


def test_cdf_shape(link):
    dist = delay_distribution(link, t_max=300)
    assert dist.cdf.shape == (301,)
    assert dist.cdf[0] == 0.0 and dist.cdf[1] == 0.0  # minimum delay is 2
    assert dist.cdf[2] > 0.0
    assert np.all(np.diff(dist.cdf) >= -1e-15)
    assert dist.cdf[-1] <= 1.0
    pmf = dist.pmf()
    assert pmf.sum() == pytest.approx(dist.cdf[-1], abs=1e-12)


def test_perfect_channel_delay_is_two():
    cfg = config.default_config()
    cfg["per_model"] = "perfect"
    link = config.link_config(cfg)
    dist = delay_distribution(link, t_max=10)
    assert dist.cdf[1] == pytest.approx(0.0, abs=1e-15)
    assert dist.cdf[2] == pytest.approx(1.0, abs=1e-12)
    assert expected_delay(link) == pytest.approx(2.0, rel=1e-12)


def test_truncated_mean_converges(link):
    exact = expected_delay(link)
    short = delay_distribution(link, t_max=100).mean()
    long = delay_distribution(link, t_max=4000).mean()
    assert short < exact
    assert long == pytest.approx(exact, rel=1e-6)


def test_explicit_start_changes_mean(link):
    # a cold start from the walk occupancy is not the steady entry law
    mu = mobility.walk_stationary(link.walk)
    cold = expected_delay(link, start=mu)
    warm = expected_delay(link)
    assert cold != pytest.approx(warm, rel=1e-4)


def test_min_delay_single_link_is_identity(link):
    dist = delay_distribution(link, t_max=50)
    np.testing.assert_allclose(min_delay_probability(dist, 1), dist.cdf,
                               atol=1e-15)


def test_min_delay_more_relays_helps(link):
    dist = delay_distribution(link, t_max=50)
    one = min_delay_probability(dist, 1)
    three = min_delay_probability(dist, 3)
    assert np.all(three >= one - 1e-15)
    assert three[30] > one[30]


def test_poisson_matches_brute_force(link):
    dist = delay_distribution(link, t_max=60)
    lam = 5.0
    closed = poisson_min_delay(dist, lam)
    brute = np.zeros_like(dist.cdf)
    weight = math.exp(-lam)  # Poisson pmf at m=0, then recurrence
    for m in range(0, 120):
        brute += weight * (1.0 - (1.0 - dist.cdf) ** m)
        weight *= lam / (m + 1)
    np.testing.assert_allclose(closed, brute, atol=1e-12)


def test_invalid_inputs(link):
    with pytest.raises(MultiRelayError):
        delay_distribution(link, t_max=1)
    with pytest.raises(MultiRelayError):
        delay_distribution(link, t_max=10, start=np.ones(10))  # not normalized
    dist = delay_distribution(link, t_max=10)
    with pytest.raises(MultiRelayError):
        min_delay_probability(dist, 0)
    with pytest.raises(MultiRelayError):
        poisson_min_delay(dist, 0.0)
