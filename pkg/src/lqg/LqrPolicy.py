#!/usr/lib/brdp/environment/bin/python
import math

import numpy as np

"""
    Deterministic linear feedback u_t = K_t x_t, the beta = inf controller (optimal with perfect state estimation).
"""
class LqrPolicy:
    def __init__(self, K, P):
        self.K = [np.asarray(k, dtype=float) for k in K]
        self.P = [np.asarray(p, dtype=float) for p in P]
        self.beta = math.inf

    @property
    def horizon(self):
        return len(self.K)

    def sample(self, t, x, rng):
        return self.K[t] @ np.asarray(x, dtype=float)

    def to_dict(self):
        return {'beta': 'inf', 'K': [k.tolist() for k in self.K], 'P': [p.tolist() for p in self.P]}
