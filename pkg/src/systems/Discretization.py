#!/usr/lib/brdp/environment/bin/python
import numpy as np

"""
    Single-step maps x_{k+1} = phi(x_k, u_k) of a continuous-time model x' = f(x, u), with u held constant over the
    step. f must accept batches on the leading axis.
"""
class Discretization:
    EULER = 'euler'
    RK4 = 'rk4'

    @staticmethod
    def discretize(dynamics, dt, method=RK4):
        if dt <= 0:
            raise ValueError('The time step must be positive, got ' + str(dt) + '.')
        if method == Discretization.EULER:
            return Discretization.euler(dynamics, dt)
        if method == Discretization.RK4:
            return Discretization.rk4(dynamics, dt)
        raise ValueError('Unknown discretization method "' + str(method) + '".')

    @staticmethod
    def euler(dynamics, dt):
        def step(x, u):
            x = np.asarray(x, dtype=float)
            return x + dt * dynamics(x, u)
        return step

    @staticmethod
    def rk4(dynamics, dt):
        def step(x, u):
            x = np.asarray(x, dtype=float)
            k1 = dynamics(x, u)
            k2 = dynamics(x + 0.5 * dt * k1, u)
            k3 = dynamics(x + 0.5 * dt * k2, u)
            k4 = dynamics(x + dt * k3, u)
            return x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        return step
