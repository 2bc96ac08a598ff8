#!/usr/lib/brdp/environment/bin/python
import copy
import json
import logging
import math
import os

import numpy as np

from src.core.Errors import SteinDivergenceError

"""
    Hyper-parameters of the Stein-variational planner.
    bandwidth is 'median' (median heuristic, recomputed at every iteration) or a fixed positive real.
    optimizer is 'sgd' (x += step * phi) or 'adagrad' (per-coordinate step adaptation).
    mode is 'sample' (uniform draw among the final particles) or 'argmin' (cheapest particle).
    beta = inf drops the prior and the repulsion: the particles become independent gradient-descent restarts.
"""
class SvgdConfig:
    OPTIMIZERS = ('sgd', 'adagrad')
    MODES = ('sample', 'argmin')

    def __init__(self, beta, n_particles=32, n_iterations=200, step_size=1e-2, bandwidth='median', optimizer='sgd',
                 mode='sample', trace_path=None):
        if n_particles < 1 or n_iterations < 1 or step_size <= 0:
            raise ValueError('n_particles, n_iterations and step_size must be positive.')
        if beta <= 0:
            raise ValueError('beta must be positive, got ' + str(beta) + '.')
        if bandwidth != 'median' and not float(bandwidth) > 0:
            raise ValueError('bandwidth must be "median" or a positive real, got ' + repr(bandwidth) + '.')
        if optimizer not in SvgdConfig.OPTIMIZERS:
            raise ValueError('Unknown optimizer "' + str(optimizer) + '".')
        if mode not in SvgdConfig.MODES:
            raise ValueError('Unknown mode "' + str(mode) + '".')
        self.beta = float(beta)
        self.n_particles = int(n_particles)
        self.n_iterations = int(n_iterations)
        self.step_size = float(step_size)
        self.bandwidth = bandwidth
        self.optimizer = optimizer
        self.mode = mode
        self.trace_path = trace_path


"""
    Stein variational gradient descent on input sequences. The target density is
        p(u) ~ prior(u) exp(-beta H(u))
    and every particle moves along
        phi(x_i) = 1/n sum_j [k(x_j, x_i) grad log p(x_j) + grad_{x_j} k(x_j, x_i)]
    with the RBF kernel k(x, y) = exp(-||x - y||^2 / (2 h)).
"""
class SvgdSampler:
    logger = logging.getLogger('SvgdSampler')

    ADAGRAD_DECAY = 0.9
    ADAGRAD_FUDGE = 1e-6
    MAX_HALVINGS = 10
    OVERSHOOT_TOLERANCE = 1e-6

    def __init__(self, config):
        self.config = config

    def __call__(self, ham, prior, rng):
        return self.sample_control(ham, prior, rng)[0]

    """
        Sampler writing its trace to the file of one trial, so parallel rollouts never share a trace file
    """
    def for_trial(self, trial_index):
        if self.config.trace_path is None:
            return self
        config = copy.copy(self.config)
        config.trace_path = SvgdSampler.trial_trace_path(self.config.trace_path, trial_index)
        return SvgdSampler(config)

    @staticmethod
    def trial_trace_path(trace_path, trial_index):
        root, extension = os.path.splitext(trace_path)
        return root + '_trial_' + str(trial_index) + extension

    """
        Median heuristic h = median(||x_i - x_j||^2) / (2 ln(n + 1)). A single particle gets h = 1 (unused, its kernel
        gradient is zero anyway).
    """
    @staticmethod
    def median_bandwidth(sq_distances):
        n = sq_distances.shape[0]
        if n < 2:
            return 1.0
        median = float(np.median(sq_distances[np.triu_indices(n, k=1)]))
        if median <= 0:
            return 1.0
        return median / (2.0 * math.log(n + 1))

    """
        Stein direction for flattened particles (n, d) and their scores (n, d)
    """
    def stein_direction(self, particles, scores):
        diff = particles[:, None, :] - particles[None, :, :]
        sq_distances = np.sum(diff ** 2, axis=-1)
        h = SvgdSampler.median_bandwidth(sq_distances) if self.config.bandwidth == 'median' \
            else float(self.config.bandwidth)
        kernel = np.exp(-sq_distances / (2.0 * h))
        # sum_j grad_{x_j} k(x_j, x_i) = sum_j k_ij (x_i - x_j) / h
        repulsion = np.sum(kernel[:, :, None] * diff, axis=1) / h
        return (kernel @ scores + repulsion) / particles.shape[0]

    def objective(self, ham, prior, sequence):
        cost = ham.evaluate(sequence)
        if math.isinf(self.config.beta):
            return cost
        value = self.config.beta * cost - float(prior.logpdf(sequence))
        return math.inf if math.isnan(value) else value

    """
        Return (input sequence, final particles of shape (n, steps, m))
    """
    def sample_control(self, ham, prior, rng):
        config = self.config
        shape = (ham.steps, ham.input_dim)
        particles = prior.sample(rng, config.n_particles).reshape(config.n_particles, -1)
        rational = math.isinf(config.beta)
        history = None
        step = config.step_size

        for iteration in range(config.n_iterations):
            sequences = particles.reshape((config.n_particles,) + shape)
            gradient = ham.gradient_batch(sequences).reshape(config.n_particles, -1)
            if rational:
                scores = -gradient
            else:
                scores = prior.grad_logpdf(sequences).reshape(config.n_particles, -1) - config.beta * gradient
            bad = ~np.all(np.isfinite(scores), axis=1)
            if np.any(bad):
                raise SteinDivergenceError(particle=int(np.argmax(bad)), iteration=iteration)

            direction = scores if rational else self.stein_direction(particles, scores)
            if config.optimizer == 'adagrad':
                if history is None:
                    history = direction ** 2
                else:
                    history = SvgdSampler.ADAGRAD_DECAY * history + (1.0 - SvgdSampler.ADAGRAD_DECAY) * direction ** 2
                direction = direction / (SvgdSampler.ADAGRAD_FUDGE + np.sqrt(history))

            particles = self._guarded_update(ham, prior, particles, direction, step, iteration, shape)
            if config.trace_path is not None:
                self._dump_trace(ham, particles, iteration, shape)

        sequences = particles.reshape((config.n_particles,) + shape)
        if config.mode == 'argmin':
            index = int(np.argmin(ham.evaluate_batch(sequences)))
        else:
            index = int(rng.integers(config.n_particles))
        return sequences[index], sequences

    """
        x + step * direction, halving the step while the objective of the particle mean increases
    """
    def _guarded_update(self, ham, prior, particles, direction, step, iteration, shape):
        before = self.objective(ham, prior, particles.mean(axis=0).reshape(shape))
        for halving in range(SvgdSampler.MAX_HALVINGS + 1):
            candidate = particles + step * direction
            after = self.objective(ham, prior, candidate.mean(axis=0).reshape(shape))
            if math.isinf(before) or after <= before + SvgdSampler.OVERSHOOT_TOLERANCE * (1.0 + abs(before)):
                return candidate
            SvgdSampler.logger.debug('Overshoot at iteration ' + str(iteration) + ', halving the step to '
                                     + str(step / 2.0))
            step = step / 2.0
        worst = int(np.argmax(np.linalg.norm(direction, axis=1)))
        raise SteinDivergenceError(particle=worst, iteration=iteration,
                                   message='Stein update still overshoots after ' + str(SvgdSampler.MAX_HALVINGS)
                                           + ' step halvings at iteration ' + str(iteration) + ' (particle '
                                           + str(worst) + ').')

    def _dump_trace(self, ham, particles, iteration, shape):
        costs = ham.evaluate_batch(particles.reshape((particles.shape[0],) + shape))
        with open(self.config.trace_path, 'a') as f:
            for index in range(particles.shape[0]):
                f.write(json.dumps({'t': ham.t, 'iteration': iteration, 'particle': index,
                                    'inputs': particles[index].tolist(),
                                    'cost': float(costs[index])}) + '\n')
