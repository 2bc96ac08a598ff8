#!/usr/lib/brdp/environment/bin/python
import numpy as np

"""
    Cost-to-go of an input sequence over the remaining horizon, from the state x at time t, obtained by a
    deterministic rollout of the system (null noise source). It plays the role of H_t(x, u) for the trajectory
    samplers: the first input is applied, the others stand for the continuation.
"""
class TrajectoryHamiltonian:
    # Central-difference step used when no analytic gradient is given
    GRADIENT_STEP = 1e-5

    def __init__(self, system, t, x, gradient=None):
        if not 0 <= t < system.horizon:
            raise ValueError('t must be in [0, ' + str(system.horizon - 1) + '], got ' + str(t) + '.')
        self.system = system
        self.t = int(t)
        self.x = np.asarray(x, dtype=float)
        self._gradient = gradient

    @property
    def steps(self):
        return self.system.horizon - self.t

    @property
    def input_dim(self):
        return self.system.input_dim

    def evaluate(self, sequence):
        return float(self.evaluate_batch(np.asarray(sequence, dtype=float)[None, ...])[0])

    def __call__(self, sequence):
        return self.evaluate(sequence)

    """
        Costs of a batch of sequences (shape (batch, steps, m)) in a single vectorized rollout
    """
    def evaluate_batch(self, sequences):
        sequences = np.asarray(sequences, dtype=float)
        if sequences.shape[1:] != (self.steps, self.input_dim):
            raise ValueError('Input sequences must have shape (batch, ' + str(self.steps) + ', '
                             + str(self.input_dim) + '), got ' + str(sequences.shape) + '.')
        return self.system.cost_to_go(self.t, self.x, sequences)

    """
        Gradient of the cost-to-go for every sequence of the batch. All the central differences of the batch are
        evaluated in one rollout of size 2 * batch * steps * m.
    """
    def gradient_batch(self, sequences):
        sequences = np.asarray(sequences, dtype=float)
        if self._gradient is not None:
            return np.asarray(self._gradient(self.t, self.x, sequences), dtype=float)

        batch = sequences.shape[0]
        size = self.steps * self.input_dim
        flat = sequences.reshape(batch, 1, size)
        offsets = TrajectoryHamiltonian.GRADIENT_STEP * np.eye(size)[None, :, :]
        perturbed = np.concatenate([flat + offsets, flat - offsets], axis=1)
        costs = self.evaluate_batch(perturbed.reshape(batch * 2 * size, self.steps, self.input_dim))
        costs = costs.reshape(batch, 2, size)
        with np.errstate(invalid='ignore'):
            gradient = (costs[:, 0, :] - costs[:, 1, :]) / (2.0 * TrajectoryHamiltonian.GRADIENT_STEP)
        return gradient.reshape(sequences.shape)
