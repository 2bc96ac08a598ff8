#!/usr/lib/brdp/environment/bin/python
import numpy as np

from src.core.Estimator import Estimator

"""
    Additive Gaussian estimation channel x_hat = x + eps, eps ~ N(0, diag(sigma2 * v)).
"""
class GaussianEstimator:
    QUADROTOR_SCALING = (0.25, 0.25, 0.1, 0.25, 0.25, 0.1)

    @staticmethod
    def gaussian_estimator(sigma2, v):
        sigma2 = float(sigma2)
        v = np.asarray(v, dtype=float)
        if sigma2 < 0 or np.any(v < 0):
            raise ValueError('sigma2 and v must be non-negative.')
        if sigma2 == 0.0:
            return Estimator(sample=lambda x, rng: x.copy(), family='gaussian', sigma2=0.0, scaling=v)
        std = np.sqrt(sigma2 * v)

        def sample(x, rng):
            return x + std * rng.standard_normal(x.shape)

        return Estimator(sample=sample, family='gaussian', sigma2=sigma2, scaling=v)
