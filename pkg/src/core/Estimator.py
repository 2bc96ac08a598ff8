#!/usr/lib/brdp/environment/bin/python
import numpy as np

"""
    A state estimator seen as a noise channel x -> x_hat. Only the composition with the controller matters, so the
    estimator is described by its sampling function and some metadata (noise family, scale sigma2, scaling vector v).
"""
class Estimator:
    def __init__(self, sample, family='none', sigma2=0.0, scaling=None):
        self._sample = sample
        self.family = family
        self.sigma2 = float(sigma2)
        self.scaling = None if scaling is None else np.asarray(scaling, dtype=float)

    def sample(self, x, rng):
        return np.asarray(self._sample(np.asarray(x, dtype=float), rng), dtype=float)

    def is_perfect(self):
        return self.family == 'none' or self.sigma2 == 0.0

    def description(self):
        return {
            'family': self.family,
            'sigma2': self.sigma2,
            'v': None if self.scaling is None else self.scaling.tolist(),
        }

    """
        The perfect estimator: returns the true state.
    """
    @staticmethod
    def perfect():
        return Estimator(sample=lambda x, rng: x.copy(), family='none', sigma2=0.0)
