#!/usr/lib/brdp/environment/bin/python
import math

"""
    Free energy F = -(1/beta) log Z at one state, with the two sides of F = E[H] + KL / beta.
    log_Z is kept because Z underflows for large beta. tolerance is 0 for exact backends and the Monte Carlo
    standard error (in free-energy units) otherwise.
"""
class FreeEnergyReport:
    def __init__(self, state, log_Z, F, expected_H, kl, beta, tolerance=0.0, standard_error=0.0):
        self.state = state
        self.log_Z = float(log_Z)
        self.F = float(F)
        self.expected_H = float(expected_H)
        self.kl = float(kl)
        self.beta = float(beta)
        self.tolerance = float(tolerance)
        self.standard_error = float(standard_error)

    @property
    def Z(self):
        return math.exp(self.log_Z)

    """
        Gap of the identity F = E[H] + KL / beta
    """
    def identity_gap(self):
        if self.beta == 0.0 or math.isinf(self.beta):
            return abs(self.F - self.expected_H)
        return abs(self.F - (self.expected_H + self.kl / self.beta))

    def to_dict(self):
        return {
            'log_Z': self.log_Z,
            'F': self.F,
            'expected_H': self.expected_H,
            'kl': self.kl,
            'beta': self.beta,
            'tolerance': self.tolerance,
            'standard_error': self.standard_error,
        }
