import numpy as np
import pytest

from bandlim import AnalyticSignal, Kernel, WeightSpec, matched_weights

BANDWIDTH = 1.0


@pytest.fixture(scope="session")
def bandwidth():
    return BANDWIDTH


@pytest.fixture(scope="session")
def lowfreq_signal():
    return AnalyticSignal.lowfreq(BANDWIDTH)


@pytest.fixture(scope="session")
def highfreq_signal():
    return AnalyticSignal.highfreq(BANDWIDTH)


@pytest.fixture(scope="session")
def lowpass_spec(lowfreq_signal):
    """Weights matched to the low-frequency-dominant signal (K=3, M=11)."""
    return matched_weights(lowfreq_signal)


@pytest.fixture(scope="session")
def highpass_spec(highfreq_signal):
    return matched_weights(highfreq_signal)


@pytest.fixture(scope="session")
def lowpass_kernel(lowpass_spec):
    return Kernel.from_spec(lowpass_spec)


@pytest.fixture(scope="session")
def highpass_kernel(highpass_spec):
    return Kernel.from_spec(highpass_spec)


@pytest.fixture(scope="session")
def uniform_kernel():
    return Kernel.uniform(BANDWIDTH)


def random_weight_spec(seed, degree_K=None, half_count_M=None, bandwidth_B=None):
    """A random valid symmetric spec with strictly positive reciprocal weight."""
    rng = np.random.default_rng(seed)
    K = int(rng.integers(0, 6)) if degree_K is None else degree_K
    M = int(rng.integers(2, 13)) if half_count_M is None else half_count_M
    B = float(rng.choice([0.5, 1.0, 2.0])) if bandwidth_B is None else bandwidth_B
    half = rng.uniform(0.2, 1.5, M + 1)
    d = np.concatenate([half[:0:-1], half])
    alpha = float(rng.uniform(0.01, 0.3))
    return WeightSpec(B, K, M, d, alpha)
