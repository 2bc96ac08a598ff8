#!/usr/lib/brdp/environment/bin/python
import math

import numpy as np

"""
    A discrete-time control system: the tuple (F_t, c_t, t_f) plus the initial distribution.

    dynamics(t, x, u, noise) -> next state. "noise" is a numpy Generator or None (null source). The functions must
    accept a batch of states / inputs on the leading axis (shape (..., n)), samplers rely on it to evaluate many input
    sequences in one rollout.
    stage_cost(t, x, u) and terminal_cost(x) return non-negative values (one per batch row). A system that declares
    absorbing failure sets may return math.inf, it then sets has_failure_set to True.
    initial_distribution(rng) returns one state vector.
"""
class ControlSystem:
    FAILURE_COST = math.inf

    def __init__(self, name, state_dim, input_dim, horizon, dynamics, stage_cost, terminal_cost,
                 initial_distribution, has_failure_set=False):
        if state_dim < 1 or input_dim < 1 or horizon < 1:
            raise ValueError('state_dim, input_dim and horizon must be positive integers.')
        self.name = name
        self.state_dim = int(state_dim)
        self.input_dim = int(input_dim)
        self.horizon = int(horizon)
        self.dynamics = dynamics
        self.stage_cost = stage_cost
        self.terminal_cost = terminal_cost
        self.initial_distribution = initial_distribution
        self.has_failure_set = has_failure_set

    def step(self, t, x, u, noise=None):
        return np.asarray(self.dynamics(t, x, u, noise), dtype=float)

    """
        Total cost c_0 + ... + c_{t_f} recomputed from the states and inputs of a trajectory.
    """
    def trajectory_cost(self, states, inputs):
        total = 0.0
        for t in range(self.horizon):
            total += float(self.stage_cost(t, states[t], inputs[t]))
        return total + float(self.terminal_cost(states[self.horizon]))

    """
        Cost-to-go of a batch of input sequences (shape (batch, steps, m)) from state x at time t, with the null
        noise source. Used by the trajectory samplers, returns one cost per sequence.
    """
    def cost_to_go(self, t, x, input_sequences):
        input_sequences = np.asarray(input_sequences, dtype=float)
        batch, steps = input_sequences.shape[0], input_sequences.shape[1]
        states = np.repeat(np.asarray(x, dtype=float)[None, :], batch, axis=0)
        total = np.zeros(batch)
        for k in range(steps):
            u = input_sequences[:, k, :]
            total = total + self.stage_cost(t + k, states, u)
            states = self.step(t + k, states, u)
        if t + steps >= self.horizon:
            total = total + self.terminal_cost(states)
        # diverged continuations (nan states) count as failures
        total = np.where(np.isnan(total), math.inf, total)
        return total
