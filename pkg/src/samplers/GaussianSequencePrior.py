#!/usr/lib/brdp/environment/bin/python
import math

import numpy as np

"""
    Prior over input sequences: independent Gaussians N(mean_t, diag(std_t^2)) for every step of the horizon.
    window(t) restricts it to the steps t .. t_f - 1, which is what a planner started at time t needs.
"""
class GaussianSequencePrior:
    def __init__(self, mean, std):
        self.mean = np.atleast_2d(np.asarray(mean, dtype=float))
        self.std = np.broadcast_to(np.asarray(std, dtype=float), self.mean.shape).copy()
        if np.any(self.std <= 0):
            raise ValueError('Prior standard deviations must be positive.')

    """
        Constant prior N(mean, std^2 I) over `steps` steps of an m-dimensional input
    """
    @staticmethod
    def constant(steps, input_dim, std, mean=0.0):
        mean = np.broadcast_to(np.asarray(mean, dtype=float), (input_dim,))
        return GaussianSequencePrior(np.tile(mean, (steps, 1)), np.full((steps, input_dim), float(std)))

    @property
    def steps(self):
        return self.mean.shape[0]

    @property
    def input_dim(self):
        return self.mean.shape[1]

    def window(self, t):
        return GaussianSequencePrior(self.mean[t:], self.std[t:])

    def sample(self, rng, size):
        return self.mean + self.std * rng.standard_normal((size,) + self.mean.shape)

    def logpdf(self, sequences):
        z = (np.asarray(sequences, dtype=float) - self.mean) / self.std
        return (-0.5 * np.sum(z ** 2, axis=(-2, -1)) - float(np.sum(np.log(self.std)))
                - 0.5 * self.mean.size * math.log(2.0 * math.pi))

    def grad_logpdf(self, sequences):
        return -(np.asarray(sequences, dtype=float) - self.mean) / self.std ** 2
