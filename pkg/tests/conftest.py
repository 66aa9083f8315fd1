"""Pytest fixtures for formstab tests."""
import os
import pytest
import sys

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from click.testing import CliRunner
import numpy as np
import yaml

from formstab.factor import canonical_skew_matrix

FIXTURES = os.path.join(os.path.dirname(__file__), 'fixtures')


def random_orthogonal(n, gen):
    """Orthogonal test matrix built from numpy's own generator (independent of formstab)."""
    Q, R = np.linalg.qr(gen.standard_normal((n, n)))
    return Q * np.sign(np.diag(R))


def random_symmetric_form(n, gen):
    """Q diag(lam) Q^T with mixed-sign lam, |lam| in [0.1, 10]."""
    lam = gen.uniform(0.1, 10.0, n) * gen.choice([-1.0, 1.0], n)
    Q = random_orthogonal(n, gen)
    return (Q * lam) @ Q.T


def random_skew_form(n_pairs, gen):
    """Q T Q^T with canonical blocks, lam_j in [0.1, 10]."""
    Q = random_orthogonal(2 * n_pairs, gen)
    return Q @ canonical_skew_matrix(gen.uniform(0.1, 10.0, n_pairs)) @ Q.T


@pytest.fixture
def fixture_matrix():
    """Return the path of a matrix file under tests/fixtures/matrices."""
    def path(name):
        return os.path.join(FIXTURES, 'matrices', name)
    return path


@pytest.fixture
def golden_dir():
    return os.path.join(FIXTURES, 'golden')


@pytest.fixture(scope='session')
def stat_config():
    """Load the pinned seeds and thresholds for statistical tests."""
    with open(os.path.join(FIXTURES, 'stat_config.yaml')) as f:
        return yaml.safe_load(f)


@pytest.fixture
def gen():
    """A seeded numpy generator for building test inputs."""
    return np.random.default_rng(20240229)


@pytest.fixture
def runner():
    """CliRunner that keeps stderr apart from stdout."""
    try:
        return CliRunner(mix_stderr=False)
    except TypeError:
        return CliRunner()
