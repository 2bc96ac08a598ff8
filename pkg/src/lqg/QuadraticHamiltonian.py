#!/usr/lib/brdp/environment/bin/python
import numpy as np

"""
    Per-step Hamiltonian of a linear-quadratic problem:
        H(x, u) = 1/2 x^T W x + x^T (G u + g) + 1/2 u^T M u + u^T h + c

    Under the metric rho(x, x') = 1/2 ||x x^T - x' x'^T||_F + ||x - x'||_2 the map x -> H(x, u) is globally
    Lipschitz with constant max(||W||_F, ||G u + g||_2):
        |1/2 tr(W (x x^T - x' x'^T))| <= ||W||_F * 1/2 ||x x^T - x' x'^T||_F
        |(G u + g)^T (x - x')|        <= ||G u + g||_2 * ||x - x'||_2
"""
class QuadraticHamiltonian:
    def __init__(self, W, G, g, M, h, c=0.0):
        self.W = np.atleast_2d(np.asarray(W, dtype=float))
        self.G = np.atleast_2d(np.asarray(G, dtype=float))
        self.g = np.asarray(g, dtype=float)
        self.M = np.atleast_2d(np.asarray(M, dtype=float))
        self.h = np.asarray(h, dtype=float)
        self.c = float(c)

    def __call__(self, x, u):
        return self.evaluate(x, u)

    """
        H(x, u), batched on the leading axis of x and / or u
    """
    def evaluate(self, x, u):
        x = np.asarray(x, dtype=float)
        u = np.asarray(u, dtype=float)
        coupling = u @ self.G.T + self.g
        return (0.5 * np.einsum('...i,ij,...j->...', x, self.W, x) + np.sum(x * coupling, axis=-1)
                + 0.5 * np.einsum('...i,ij,...j->...', u, self.M, u) + u @ self.h + self.c)

    """
        rho-Lipschitz constant of x -> H(x, u), exact for this class
    """
    def lipschitz_level(self, u):
        coupling = np.asarray(u, dtype=float) @ self.G.T + self.g
        return np.maximum(np.linalg.norm(self.W, 'fro'), np.linalg.norm(coupling, axis=-1))
