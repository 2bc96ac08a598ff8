#!/usr/lib/brdp/environment/bin/python
import json
import math

import numpy as np

"""
    One rollout: t_f + 1 states, t_f estimates, t_f inputs and the total cost (math.inf for absorbing failures).
"""
class Trajectory:
    def __init__(self, states, estimates, inputs, total_cost):
        self.states = np.asarray(states, dtype=float)
        self.estimates = np.asarray(estimates, dtype=float)
        self.inputs = np.asarray(inputs, dtype=float)
        self.total_cost = float(total_cost)

        if self.states.shape[0] != self.inputs.shape[0] + 1 or self.estimates.shape[0] != self.inputs.shape[0]:
            raise ValueError('Inconsistent trajectory lengths: ' + str(self.states.shape[0]) + ' states, '
                             + str(self.estimates.shape[0]) + ' estimates, ' + str(self.inputs.shape[0]) + ' inputs.')

    @property
    def horizon(self):
        return self.inputs.shape[0]

    def is_failure(self):
        return math.isinf(self.total_cost)

    """
        JSON-lines representation: one trajectory per line, rows are time steps.
        A failed trajectory has "cost": Infinity, which json.loads reads back as float('inf').
    """
    def to_json(self):
        return json.dumps({
            'states': self.states.tolist(),
            'estimates': self.estimates.tolist(),
            'inputs': self.inputs.tolist(),
            'cost': self.total_cost,
        })

    @staticmethod
    def from_json(line):
        raw = json.loads(line)
        return Trajectory(states=raw['states'], estimates=raw['estimates'], inputs=raw['inputs'],
                          total_cost=raw['cost'])

    """
        Append trajectories to a JSON-lines file
    """
    @staticmethod
    def dump(trajectories, filepath):
        with open(filepath, 'a') as f:
            for trajectory in trajectories:
                f.write(trajectory.to_json() + '\n')
