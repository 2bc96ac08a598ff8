#!/usr/lib/brdp/environment/bin/python
import json

import numpy as np

from src.gibbs.Gaussian import Gaussian

"""
    Bounded-rational LQG policy u_t = K_t x_t + eta_t, eta_t ~ N(eta_mean_t, eta_cov_t), with the coefficients of the
    beta-regularized value V_t(x) = 1/2 x^T P_t x + b_t^T x + d_t (t = 0 .. t_f).
    Immutable once solved, it can be shared by parallel rollouts.
"""
class BrLqgPolicy:
    def __init__(self, beta, K, eta_mean, eta_cov, P, b, d, eta_precision=None):
        self.beta = float(beta)
        self.K = [np.asarray(k, dtype=float) for k in K]
        self.eta_mean = [np.asarray(e, dtype=float) for e in eta_mean]
        self.eta_cov = [np.asarray(c, dtype=float) for c in eta_cov]
        self.P = [np.asarray(p, dtype=float) for p in P]
        self.b = [np.asarray(v, dtype=float) for v in b]
        self.d = [float(v) for v in d]
        self.eta = [Gaussian(mean, cov) for mean, cov in zip(self.eta_mean, self.eta_cov)]
        if eta_precision is None:
            eta_precision = [gaussian.precision() for gaussian in self.eta]
        self.eta_precision = [np.asarray(p, dtype=float) for p in eta_precision]

    @property
    def horizon(self):
        return len(self.K)

    """
        Output distribution N(K_t x + eta_mean_t, eta_cov_t) at state x
    """
    def output_distribution(self, t, x):
        return Gaussian(self.K[t] @ np.asarray(x, dtype=float) + self.eta_mean[t], self.eta_cov[t])

    def sample(self, t, x, rng):
        return self.K[t] @ np.asarray(x, dtype=float) + self.eta[t].sample(rng)

    def log_density(self, t, x, u):
        return float(self.output_distribution(t, x).logpdf(u))

    def value(self, t, x):
        x = np.asarray(x, dtype=float)
        return float(0.5 * x @ self.P[t] @ x + self.b[t] @ x + self.d[t])

    def to_dict(self):
        return {
            'beta': self.beta,
            'K': [k.tolist() for k in self.K],
            'eta_mean': [e.tolist() for e in self.eta_mean],
            'eta_cov': [c.tolist() for c in self.eta_cov],
            'P': [p.tolist() for p in self.P],
            'b': [v.tolist() for v in self.b],
            'd': list(self.d),
        }

    def to_json(self):
        return json.dumps(self.to_dict())

    @staticmethod
    def from_json(text):
        raw = json.loads(text)
        return BrLqgPolicy(beta=raw['beta'], K=raw['K'], eta_mean=raw['eta_mean'], eta_cov=raw['eta_cov'],
                           P=raw['P'], b=raw['b'], d=raw['d'])
