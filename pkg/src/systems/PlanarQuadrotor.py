#!/usr/lib/brdp/environment/bin/python
import logging

import numpy as np

from src.core.ControlSystem import ControlSystem
from src.core.Errors import ConfigurationError, NumericalError
from src.lqg.LqgProblem import LqgProblem
from src.systems.Discretization import Discretization

"""
    Planar quadrotor, state x = (y, z, theta, y', z', theta') and rotor-pair thrusts u = (u1, u2) in newtons:
        y''     = -(u1 + u2) sin(theta) / m
        z''     =  (u1 + u2) cos(theta) / m - g
        theta'' =  r (u1 - u2) / J_x
    Controllers act on the thrust deviation du = u - u_hover, u_hover = (m g / 2, m g / 2), so the hover equilibrium is
    (x, du) = (0, 0) for both the nonlinear and the linearized model, and the costs are
        c_t = 1/2 (x^T Q x + du^T R du),  c_{t_f} = 1/2 x^T Q_f x.
"""
class PlanarQuadrotor:
    logger = logging.getLogger('PlanarQuadrotor')

    STATE_DIM = 6
    INPUT_DIM = 2
    JACOBIAN_STEP = 1e-6
    JACOBIAN_TOLERANCE = 1e-6

    DEFAULTS = {
        'mass': 0.03,
        'inertia': 1.43e-5,
        'gravity': 9.81,
        'arm': 0.046,
        'dt': 0.3,
        'horizon': 13,
        'q_diag': [1.0] * 6,
        'r_diag': [0.1, 0.1],
        'qf_diag': [1.0] * 6,
        'x0_mean': [1.0, -1.0, 0.0, 0.0, 0.0, 0.0],
        'x0_var': [1e-2, 1e-2, 1e-6, 1e-4, 1e-4, 1e-8],
    }

    def __init__(self, mass=0.03, inertia=1.43e-5, gravity=9.81, arm=0.046, dt=0.3, horizon=13, q_diag=None,
                 r_diag=None, qf_diag=None, x0_mean=None, x0_var=None):
        self.mass = float(mass)
        self.inertia = float(inertia)
        self.gravity = float(gravity)
        self.arm = float(arm)
        self.dt = float(dt)
        self.horizon = int(horizon)
        for name in ('mass', 'inertia', 'gravity', 'arm', 'dt', 'horizon'):
            if not getattr(self, name) > 0:
                raise ConfigurationError('quadrotor.' + name + ' must be positive, got ' + str(getattr(self, name))
                                         + '.')
        self.Q = np.diag(PlanarQuadrotor._vector('q_diag', q_diag, PlanarQuadrotor.STATE_DIM))
        self.R = np.diag(PlanarQuadrotor._vector('r_diag', r_diag, PlanarQuadrotor.INPUT_DIM))
        self.Q_f = np.diag(PlanarQuadrotor._vector('qf_diag', qf_diag, PlanarQuadrotor.STATE_DIM))
        self.x0_mean = PlanarQuadrotor._vector('x0_mean', x0_mean, PlanarQuadrotor.STATE_DIM)
        self.x0_var = PlanarQuadrotor._vector('x0_var', x0_var, PlanarQuadrotor.STATE_DIM)
        if np.any(self.x0_var < 0):
            raise ConfigurationError('quadrotor.x0_var must be non-negative.')

    @staticmethod
    def _vector(name, value, size):
        value = np.asarray(value if value is not None else PlanarQuadrotor.DEFAULTS[name], dtype=float)
        if value.shape != (size,):
            raise ConfigurationError('quadrotor.' + name + ' must hold ' + str(size) + ' values, got shape '
                                     + str(value.shape) + '.')
        return value

    """
        Build from the "quadrotor.*" section of the configuration, missing keys take the default values
    """
    @staticmethod
    def from_configuration(section):
        values = dict(PlanarQuadrotor.DEFAULTS)
        values.update({key: value for key, value in section.items() if key in PlanarQuadrotor.DEFAULTS})
        return PlanarQuadrotor(**values)

    def hover_input(self):
        return np.full(2, 0.5 * self.mass * self.gravity)

    """
        Continuous-time derivative for thrusts u (absolute, not deviations), batched on the leading axis
    """
    def quadrotor_dynamics_continuous(self, x, u):
        x = np.asarray(x, dtype=float)
        u = np.asarray(u, dtype=float)
        theta = x[..., 2]
        thrust = u[..., 0] + u[..., 1]
        return np.stack([
            x[..., 3],
            x[..., 4],
            x[..., 5],
            -thrust * np.sin(theta) / self.mass,
            thrust * np.cos(theta) / self.mass - self.gravity,
            self.arm * (u[..., 0] - u[..., 1]) / self.inertia,
        ], axis=-1)

    """
        Analytic Jacobians (df/dx, df/du) at hover
    """
    def hover_jacobians(self):
        jx = np.zeros((6, 6))
        jx[0:3, 3:6] = np.eye(3)
        jx[3, 2] = -self.gravity
        ju = np.zeros((6, 2))
        ju[4, :] = 1.0 / self.mass
        ju[5, 0] = self.arm / self.inertia
        ju[5, 1] = -self.arm / self.inertia
        return jx, ju

    def finite_difference_jacobians(self, step=JACOBIAN_STEP):
        x0 = np.zeros(6)
        u0 = self.hover_input()
        jx = np.empty((6, 6))
        ju = np.empty((6, 2))
        for i in range(6):
            e = np.zeros(6)
            e[i] = step
            jx[:, i] = (self.quadrotor_dynamics_continuous(x0 + e, u0)
                        - self.quadrotor_dynamics_continuous(x0 - e, u0)) / (2.0 * step)
        for j in range(2):
            e = np.zeros(2)
            e[j] = step
            ju[:, j] = (self.quadrotor_dynamics_continuous(x0, u0 + e)
                        - self.quadrotor_dynamics_continuous(x0, u0 - e)) / (2.0 * step)
        return jx, ju

    """
        Discrete (A, B) = (I + dt df/dx, dt df/du) at hover. The analytic Jacobians are checked against central
        finite differences.
    """
    def linearize_quadrotor(self, dt=None):
        dt = self.dt if dt is None else float(dt)
        jx, ju = self.hover_jacobians()
        fd_x, fd_u = self.finite_difference_jacobians()
        for analytic, numeric in ((jx, fd_x), (ju, fd_u)):
            error = np.abs(analytic - numeric)
            if np.any(error > PlanarQuadrotor.JACOBIAN_TOLERANCE * np.maximum(1.0, np.abs(analytic))):
                raise NumericalError('Hover Jacobian does not match finite differences (max error '
                                     + str(float(np.max(error))) + ').')
        return np.eye(6) + dt * jx, dt * ju

    def quadrotor_initial_distribution(self):
        std = np.sqrt(self.x0_var)

        def sample(rng):
            return self.x0_mean + std * rng.standard_normal(6)

        return sample

    def stage_cost(self, t, x, du):
        x = np.asarray(x, dtype=float)
        du = np.asarray(du, dtype=float)
        return 0.5 * (np.einsum('...i,ij,...j->...', x, self.Q, x) + np.einsum('...i,ij,...j->...', du, self.R, du))

    def terminal_cost(self, x):
        x = np.asarray(x, dtype=float)
        return 0.5 * np.einsum('...i,ij,...j->...', x, self.Q_f, x)

    """
        Linearized problem without prior (see BrLqgSolver.lqr_prior for the prior)
    """
    def lqg_problem(self):
        A, B = self.linearize_quadrotor()
        return LqgProblem(A, B, self.Q, self.R, self.Q_f, self.horizon)

    def linear_system(self):
        return self.lqg_problem().control_system(self.quadrotor_initial_distribution(), name='linear-quadrotor')

    """
        Nonlinear model integrated with RK4 over dt, input = thrust deviation from hover
    """
    def nonlinear_system(self):
        step = Discretization.discretize(self.quadrotor_dynamics_continuous, self.dt, Discretization.RK4)
        hover = self.hover_input()

        def dynamics(t, x, du, noise=None):
            return step(x, hover + np.asarray(du, dtype=float))

        return ControlSystem(name='nonlinear-quadrotor', state_dim=6, input_dim=2, horizon=self.horizon,
                             dynamics=dynamics, stage_cost=self.stage_cost, terminal_cost=self.terminal_cost,
                             initial_distribution=self.quadrotor_initial_distribution())
