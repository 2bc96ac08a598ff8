#!/usr/lib/brdp/environment/bin/python
import numpy as np
from scipy.stats import norm

from src.dp.StateMetric import StateMetric

"""
    Estimate of the rho-Lipschitz level of x -> H(x, u).
    value is exact when the Hamiltonian has a closed form (QuadraticHamiltonian under the quadratic metric), otherwise
    it is the largest ratio |H(x, u) - H(x', u)| / rho(x, x') over the n_pairs sampled pairs of the region: a lower
    estimate.
"""
class LipschitzEstimate:
    def __init__(self, value, exact, n_pairs, region_radius):
        self.value = float(value)
        self.exact = exact
        self.n_pairs = n_pairs
        self.region_radius = float(region_radius)

    def to_dict(self):
        return {'value': self.value, 'exact': self.exact, 'n_pairs': self.n_pairs,
                'region_radius': self.region_radius}


class Lipschitz:
    DEFAULT_PAIRS = 1000

    # Sampled offsets have a log-uniform norm in [10^MIN_LOG_RADIUS, 10^MAX_LOG_RADIUS]
    MIN_LOG_RADIUS = -3.0
    MAX_LOG_RADIUS = 3.0

    """
        ham is a function (x, u) -> H, or an object with a lipschitz_level(u) method (closed form).
        Candidate pairs do not depend on the radius: they are drawn around center (default 0) and the estimate keeps
        the pairs whose points both lie in the ball of radius region_radius. On a fixed seed the kept sets are nested
        in n_pairs and in region_radius, so is the estimate.
    """
    @staticmethod
    def lipschitz_level(ham, u, region_radius, center=None, n_pairs=DEFAULT_PAIRS, metric=None, rng=None,
                        state_dim=None):
        if metric is None and hasattr(ham, 'lipschitz_level'):
            return LipschitzEstimate(float(np.max(ham.lipschitz_level(u))), True, 0, region_radius)

        metric = metric or StateMetric.quadratic()
        if center is None:
            center = np.zeros(state_dim)
        center = np.asarray(center, dtype=float)
        rng = rng if rng is not None else np.random.default_rng(0)

        offsets = Lipschitz._offsets(rng, n_pairs, center.size)
        inside = np.all(np.linalg.norm(offsets, axis=-1) <= region_radius, axis=1)
        first = center + offsets[inside, 0, :]
        second = center + offsets[inside, 1, :]
        used = int(np.sum(inside))
        if used == 0:
            return LipschitzEstimate(0.0, False, 0, region_radius)

        h_first = np.array([float(ham(x, u)) for x in first])
        h_second = np.array([float(ham(x, u)) for x in second])
        distances = np.asarray(metric(first, second), dtype=float)
        valid = distances > 0
        if not np.any(valid):
            return LipschitzEstimate(0.0, False, used, region_radius)
        ratios = np.abs(h_first[valid] - h_second[valid]) / distances[valid]
        return LipschitzEstimate(float(np.max(ratios)), False, used, region_radius)

    """
        (n, 2, dim) offsets drawn pair after pair, so the first k pairs are the same whatever n
    """
    @staticmethod
    def _offsets(rng, n, dim):
        raw = rng.standard_normal((n, 2, dim + 1))
        directions = raw[..., :dim] / np.linalg.norm(raw[..., :dim], axis=-1, keepdims=True)
        # the last normal coordinate gives the norm through its CDF
        span = Lipschitz.MAX_LOG_RADIUS - Lipschitz.MIN_LOG_RADIUS
        exponents = Lipschitz.MIN_LOG_RADIUS + span * norm.cdf(raw[..., dim])
        return directions * (10.0 ** exponents)[..., None]
