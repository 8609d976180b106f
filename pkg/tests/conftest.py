import numpy as np
import pytest

P_HIT = 0.5 + np.sqrt(2) / 3
Q_MISS = 0.25 - 1 / (3 * np.sqrt(2))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long optimizer regressions")


@pytest.fixture
def closed_form_bits():
    """Mutual information of the entangled-basis measurement on the double-trine ensemble."""
    return np.log2(3) + P_HIT * np.log2(P_HIT) + 2 * Q_MISS * np.log2(Q_MISS)
