#!/usr/lib/brdp/environment/bin/python
import numpy as np

"""
    Pseudometric rho(x, x_hat) on the state space. evaluate accepts single vectors or batches (leading axis).
"""
class StateMetric:
    def __init__(self, evaluate, name='custom'):
        self._evaluate = evaluate
        self.name = name

    def __call__(self, x, x_hat):
        return self.evaluate(x, x_hat)

    def evaluate(self, x, x_hat):
        x = np.asarray(x, dtype=float)
        x_hat = np.asarray(x_hat, dtype=float)
        if x.shape[-1] != x_hat.shape[-1]:
            raise ValueError('States of different dimensions: ' + str(x.shape) + ' and ' + str(x_hat.shape) + '.')
        return self._evaluate(x, x_hat)

    """
        rho(x, x_hat) = 1/2 ||x x^T - x_hat x_hat^T||_F + ||x - x_hat||_2
    """
    @staticmethod
    def rho_quadratic(x, x_hat):
        x = np.asarray(x, dtype=float)
        x_hat = np.asarray(x_hat, dtype=float)
        outer = x[..., :, None] * x[..., None, :] - x_hat[..., :, None] * x_hat[..., None, :]
        return 0.5 * np.sqrt(np.sum(outer ** 2, axis=(-2, -1))) + np.linalg.norm(x - x_hat, axis=-1)

    @staticmethod
    def quadratic():
        return StateMetric(StateMetric.rho_quadratic, name='quadratic')

    @staticmethod
    def euclidean():
        return StateMetric(lambda x, x_hat: np.linalg.norm(x - x_hat, axis=-1), name='euclidean')
