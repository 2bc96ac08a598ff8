#!/usr/lib/brdp/environment/bin/python
import math

import numpy as np

"""
    Monte Carlo estimate of an expected cost. Failed trials (infinite cost) are counted in failure_fraction and
    excluded from mean / std. When every trial failed the mean is undefined (nan, mean_defined is False).
"""
class CostSummary:
    def __init__(self, mean, std, n_trials, failure_fraction):
        self.mean = float(mean)
        self.std = float(std)
        self.n_trials = int(n_trials)
        self.failure_fraction = float(failure_fraction)

    @property
    def mean_defined(self):
        return self.failure_fraction < 1.0

    @property
    def n_finite(self):
        return self.n_trials - int(round(self.failure_fraction * self.n_trials))

    def standard_error(self):
        if self.n_finite == 0:
            return math.nan
        return self.std / math.sqrt(self.n_finite)

    def to_dict(self):
        return {
            'mean': self.mean,
            'std': self.std,
            'n_trials': self.n_trials,
            'failure_fraction': self.failure_fraction,
        }

    @staticmethod
    def from_costs(costs):
        costs = np.asarray(costs, dtype=float)
        if costs.size == 0:
            raise ValueError('Cannot summarize zero trials.')
        finite = costs[np.isfinite(costs)]
        failures = costs.size - finite.size
        if finite.size == 0:
            return CostSummary(mean=math.nan, std=math.nan, n_trials=costs.size, failure_fraction=1.0)
        std = float(np.std(finite, ddof=1)) if finite.size > 1 else 0.0
        return CostSummary(mean=float(np.mean(finite)), std=std, n_trials=costs.size,
                           failure_fraction=failures / costs.size)
