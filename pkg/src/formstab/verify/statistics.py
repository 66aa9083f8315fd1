"""Sample summaries and the goodness-of-fit helpers used by statistical checks.

moment_stats only summarizes; thresholds are applied by callers.
"""
from dataclasses import dataclass
from typing import Dict

import numpy as np
import scipy.stats

from formstab.errors import InvalidArgumentError, InvalidDimensionError


@dataclass(frozen=True, eq=False)
class MomentSummary:
    count: int
    mean: np.ndarray
    second_moment: np.ndarray
    det_sign_frequencies: Dict[str, float]

    def to_dict(self):
        return {
            'count': self.count,
            'shape': list(self.mean.shape),
            'mean': self.mean.tolist(),
            'second_moment': self.second_moment.tolist(),
            'det_sign_frequencies': dict(self.det_sign_frequencies),
        }


@dataclass(frozen=True)
class FitOutcome:
    statistic: float
    p_value: float
    passed: bool


def moment_stats(samples):
    """Per-entry mean and second moment, and frequencies of det(A) > 0 / < 0."""
    samples = [np.asarray(s, dtype=np.float64) for s in samples]
    if not samples:
        raise InvalidArgumentError("moment_stats needs at least one sample")
    shape = samples[0].shape
    if len(shape) != 2 or shape[0] != shape[1]:
        raise InvalidDimensionError(f"Samples must be square matrices, got shape {shape}")
    for s in samples:
        if s.shape != shape:
            raise InvalidDimensionError(f"Samples have mixed shapes {shape} and {s.shape}")

    stack = np.stack(samples)
    signs = np.sign(np.linalg.det(stack))
    count = len(samples)
    return MomentSummary(
        count=count,
        mean=stack.mean(axis=0),
        second_moment=(stack ** 2).mean(axis=0),
        det_sign_frequencies={'+1': float(np.count_nonzero(signs > 0)) / count,
                              '-1': float(np.count_nonzero(signs < 0)) / count},
    )


def chi_square_uniform(counts, alpha=0.01):
    """Pearson chi-square test of counts against the uniform distribution over cells."""
    counts = np.asarray(counts, dtype=np.float64)
    if counts.ndim != 1 or counts.size < 2 or counts.sum() <= 0:
        raise InvalidArgumentError("chi_square_uniform needs at least two cells and a positive total")
    result = scipy.stats.chisquare(counts)
    return FitOutcome(statistic=float(result.statistic), p_value=float(result.pvalue),
                      passed=bool(result.pvalue > alpha))


def ks_uniform(values, low, high, alpha=0.01):
    """Kolmogorov-Smirnov test of values against Uniform(low, high)."""
    values = np.asarray(values, dtype=np.float64).ravel()
    if values.size == 0:
        raise InvalidArgumentError("ks_uniform needs at least one value")
    if not high > low:
        raise InvalidArgumentError(f"Empty interval ({low}, {high})")
    result = scipy.stats.kstest(values, 'uniform', args=(low, high - low))
    return FitOutcome(statistic=float(result.statistic), p_value=float(result.pvalue),
                      passed=bool(result.pvalue > alpha))
