"""Percentile bootstrap confidence intervals for sample means."""

from typing import NamedTuple, Optional, Sequence

import numpy as np
import pandas as pd

from exceptions import InsufficientSamplesError

# Resample indices are drawn in blocks to bound memory for long payoff streams
CHUNK_ELEMENTS = 2_000_000


class MeanEstimate(NamedTuple):
    mean: float
    ci_lo: float
    ci_hi: float
    n: int


def bootstrap_means(samples: np.ndarray, resamples: int, rng: np.random.Generator) -> np.ndarray:
    n = len(samples)
    rows = max(1, CHUNK_ELEMENTS // n)
    means = np.empty(resamples)
    for start in range(0, resamples, rows):
        stop = min(resamples, start + rows)
        idx = rng.integers(n, size=(stop - start, n))
        means[start:stop] = samples[idx].mean(axis=1)
    return means


def bootstrap_ci(
    samples: Sequence[float],
    resamples: int = 1000,
    level: float = 0.95,
    rng: Optional[np.random.Generator] = None,
) -> tuple[float, float]:
    """
    Percentile bootstrap interval for the mean.

    The interval is widened if needed so it always contains the sample mean.

    Raises:
        InsufficientSamplesError: fewer than two samples
    """
    data = np.asarray(samples, dtype=float)
    if len(data) < 2:
        raise InsufficientSamplesError(f"Bootstrap needs at least 2 samples, got {len(data)}")
    rng = rng or np.random.default_rng()
    tail = (1.0 - level) / 2.0
    lo, hi = np.quantile(bootstrap_means(data, resamples, rng), [tail, 1.0 - tail])
    mean = float(data.mean())
    return min(float(lo), mean), max(float(hi), mean)


def estimate_mean(
    samples: Sequence[float],
    resamples: int = 1000,
    level: float = 0.95,
    rng: Optional[np.random.Generator] = None,
) -> MeanEstimate:
    data = np.asarray(samples, dtype=float)
    lo, hi = bootstrap_ci(data, resamples, level, rng)
    return MeanEstimate(float(data.mean()), lo, hi, len(data))


def running_mean(samples: Sequence[float]) -> np.ndarray:
    data = np.asarray(samples, dtype=float)
    return np.cumsum(data) / np.arange(1, len(data) + 1)


def running_estimates(
    samples: Sequence[float],
    points: Sequence[int],
    resamples: int = 1000,
    level: float = 0.95,
    rng: Optional[np.random.Generator] = None,
) -> pd.DataFrame:
    """
    Mean and bootstrap interval of each prefix of a payoff stream.

    Shows how many runs a stable estimate needs.

    Args:
        samples: Payoffs in the order they were generated
        points: Prefix lengths to report (each at least 2)
    """
    data = np.asarray(samples, dtype=float)
    rng = rng or np.random.default_rng()
    rows = [estimate_mean(data[:n], resamples, level, rng)._asdict() for n in points if n <= len(data)]
    return pd.DataFrame(rows, columns=list(MeanEstimate._fields))
