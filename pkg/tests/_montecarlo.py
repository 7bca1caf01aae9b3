"""
Direct simulation of two memories loaded by independent geometric processes.

Used to check the closed-form loading statistics of `qlink.maqkd`.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Estimate:
    value: float
    stderr: float

    def agrees_with(self, expected: float, sigmas: float) -> bool:
        return abs(self.value - expected) <= sigmas * self.stderr + 1e-12 * abs(expected)


@dataclass(frozen=True)
class LoadingEstimates:
    expected_uses: Estimate
    dephasing_factor: Estimate
    uses_per_success: Estimate


def _mean(values: np.ndarray) -> Estimate:
    if values.size < 2:
        return Estimate(float(values.mean()), float("inf"))
    return Estimate(float(values.mean()), float(values.std(ddof=1) / np.sqrt(values.size)))


def simulate_loading(
    herald_prob: float,
    cutoff_uses: int | None,
    decay_per_use: float,
    trials: int = 1_000_000,
    seed: int = 0,
) -> LoadingEstimates:
    """
    Draw `trials` pairs of loading times and estimate the waiting statistics.

    A trial succeeds when the two loading times differ by at most `cutoff_uses`; every trial,
    successful or not, spends the larger of the two times.
    """
    rng = np.random.default_rng(seed)
    first = rng.geometric(herald_prob, size=trials)
    second = rng.geometric(herald_prob, size=trials)

    longest = np.maximum(first, second).astype(float)
    gap = np.abs(first - second).astype(float)
    kept = np.ones(trials, dtype=bool) if cutoff_uses is None else gap <= cutoff_uses

    success_rate = kept.mean()
    ratio = longest.mean() / success_rate
    # ratio estimator: linearise around the estimated ratio
    residual = longest - ratio * kept
    ratio_stderr = residual.std(ddof=1) / (np.sqrt(trials) * success_rate)

    return LoadingEstimates(
        expected_uses=_mean(longest[kept]),
        dephasing_factor=_mean(np.exp(-decay_per_use * gap[kept])),
        uses_per_success=Estimate(float(ratio), float(ratio_stderr)),
    )
