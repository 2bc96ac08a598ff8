#!/usr/lib/brdp/environment/bin/python
import logging
import math

import numpy as np

from src.core.ControlSystem import ControlSystem
from src.core.Errors import ConfigurationError
from src.samplers.GaussianSequencePrior import GaussianSequencePrior
from src.samplers.MixtureSequenceProposal import MixtureSequenceProposal

"""
    Single integrator x_{t+1} = x_t + u_t in the open unit square, with a vertical divider punctured by a wide and a
    narrow slit, and a goal rectangle in the lower right corner.

    The state is (p_x, p_y, status): status is FREE, GOAL or COLLIDED. Goal and obstacles are absorbing: the position
    freezes (at the end of the step inside the goal, or at the entry point, and at the first hit point of an obstacle
    or of the square boundary) and the cost latches:
        c_t = ||u_t||_2 while free, +inf on the step that collides, 0 once absorbed
        c_{t_f} = 0 in the goal (or after a collision, already paid), +inf when the goal was never reached
    Inputs are clipped per axis to [-input_bound, input_bound]. Collisions are detected on the whole motion segment.
"""
class DoubleSlitWorld:
    logger = logging.getLogger('DoubleSlitWorld')

    FREE = 0.0
    GOAL = 1.0
    COLLIDED = 2.0

    PASSAGE_WIDE = 'wide'
    PASSAGE_NARROW = 'narrow'
    PASSAGE_NONE = 'none'

    DEFAULTS = {
        'divider_x': 0.5,
        'divider_half_thickness': 0.01,
        'wide_center': 0.7,
        'wide_half_width': 0.08,
        'narrow_center': 0.35,
        'narrow_half_width': 0.02,
        'start': [0.1, 0.5],
        'goal': [0.85, 0.95, 0.1, 0.2],
        'horizon': 40,
        'input_bound': 0.05,
        'prior_std': 0.05,
        'proposal_std': 0.01,
        'proposal_prior_weight': 0.2,
    }

    def __init__(self, divider_x=0.5, divider_half_thickness=0.01, wide_center=0.7, wide_half_width=0.08,
                 narrow_center=0.35, narrow_half_width=0.02, start=(0.1, 0.5), goal=(0.85, 0.95, 0.1, 0.2),
                 horizon=40, input_bound=0.05, prior_std=0.05, proposal_std=0.01, proposal_prior_weight=0.2):
        self.divider_x = float(divider_x)
        self.divider_half_thickness = float(divider_half_thickness)
        self.wide_center = float(wide_center)
        self.wide_half_width = float(wide_half_width)
        self.narrow_center = float(narrow_center)
        self.narrow_half_width = float(narrow_half_width)
        self.start = np.asarray(start, dtype=float)
        self.goal = np.asarray(goal, dtype=float)
        self.horizon = int(horizon)
        self.input_bound = float(input_bound)
        self.prior_std = float(prior_std)
        self.proposal_std = float(proposal_std)
        self.proposal_prior_weight = float(proposal_prior_weight)

        self.obstacles = self._divider_rectangles()
        self._check_geometry()

    @staticmethod
    def from_configuration(section):
        values = dict(DoubleSlitWorld.DEFAULTS)
        values.update({key: value for key, value in section.items() if key in DoubleSlitWorld.DEFAULTS})
        return DoubleSlitWorld(**values)

    """
        The divider as three rectangles (x_min, x_max, y_min, y_max): below the narrow slit, between the slits and
        above the wide slit
    """
    def _divider_rectangles(self):
        x_min = self.divider_x - self.divider_half_thickness
        x_max = self.divider_x + self.divider_half_thickness
        slits = sorted([(self.narrow_center - self.narrow_half_width, self.narrow_center + self.narrow_half_width),
                        (self.wide_center - self.wide_half_width, self.wide_center + self.wide_half_width)])
        bounds = [0.0, slits[0][0], slits[0][1], slits[1][0], slits[1][1], 1.0]
        return np.array([[x_min, x_max, bounds[i], bounds[i + 1]] for i in (0, 2, 4)])

    def _check_geometry(self):
        low, high = sorted([(self.narrow_center - self.narrow_half_width, self.narrow_center + self.narrow_half_width),
                            (self.wide_center - self.wide_half_width, self.wide_center + self.wide_half_width)])
        if not (0.0 < low[0] and low[1] < high[0] and high[1] < 1.0):
            raise ConfigurationError('Slits must be disjoint and inside the unit square.')
        x_min, x_max, y_min, y_max = self.goal
        if not (0.0 < x_min < x_max < 1.0 and 0.0 < y_min < y_max < 1.0):
            raise ConfigurationError('The goal must be a rectangle inside the unit square.')
        overlaps = ((self.obstacles[:, 0] <= x_max) & (x_min <= self.obstacles[:, 1])
                    & (self.obstacles[:, 2] <= y_max) & (y_min <= self.obstacles[:, 3]))
        if np.any(overlaps):
            raise ConfigurationError('The goal region intersects an obstacle.')
        if self._inside(self.goal, self.start[None, :])[0] or self.status_of_point(self.start) != DoubleSlitWorld.FREE:
            raise ConfigurationError('The start must be free and outside the goal.')

    @staticmethod
    def _inside(rectangle, points):
        return ((rectangle[0] <= points[:, 0]) & (points[:, 0] <= rectangle[1])
                & (rectangle[2] <= points[:, 1]) & (points[:, 1] <= rectangle[3]))

    def status_of_point(self, point):
        point = np.asarray(point, dtype=float)[None, :2]
        if not (0.0 < point[0, 0] < 1.0 and 0.0 < point[0, 1] < 1.0):
            return DoubleSlitWorld.COLLIDED
        if any(self._inside(rectangle, point)[0] for rectangle in self.obstacles):
            return DoubleSlitWorld.COLLIDED
        return DoubleSlitWorld.GOAL if self._inside(self.goal, point)[0] else DoubleSlitWorld.FREE

    """
        Earliest parameter s in [0, 1] at which the segments p + s d enter any of the rectangles (slab test),
        +inf when there is no intersection. p and d have shape (k, 2).
    """
    @staticmethod
    def _segment_hits(rectangles, p, d):
        hits = np.full(p.shape[0], math.inf)
        with np.errstate(divide='ignore', invalid='ignore'):
            for rectangle in np.atleast_2d(rectangles):
                lower = rectangle[[0, 2]]
                upper = rectangle[[1, 3]]
                t1 = (lower - p) / d
                t2 = (upper - p) / d
                inside = (lower <= p) & (p <= upper)
                near = np.where(d == 0, np.where(inside, -math.inf, math.inf), np.minimum(t1, t2))
                far = np.where(d == 0, np.where(inside, math.inf, -math.inf), np.maximum(t1, t2))
                entry = np.max(near, axis=1)
                exit_ = np.min(far, axis=1)
                hit = (entry <= exit_) & (exit_ >= 0.0) & (entry <= 1.0)
                hits = np.where(hit, np.minimum(hits, np.maximum(entry, 0.0)), hits)
        return hits

    """
        First parameter s in (0, 1] at which the segment reaches the boundary of the open unit square, +inf if the
        segment stays inside
    """
    @staticmethod
    def _boundary_hits(p, d):
        with np.errstate(divide='ignore', invalid='ignore'):
            to_wall = np.where(d > 0, (1.0 - p) / d, np.where(d < 0, -p / d, math.inf))
        first = np.min(to_wall, axis=1)
        return np.where(first <= 1.0, first, math.inf)

    def clip(self, u):
        return np.clip(np.asarray(u, dtype=float), -self.input_bound, self.input_bound)

    """
        One step for a batch: (next states, collided-on-this-step flags, free-before-the-step flags, clipped inputs)
    """
    def _advance(self, x, u):
        x = np.atleast_2d(np.asarray(x, dtype=float))
        d = np.atleast_2d(self.clip(u))
        d = np.broadcast_to(d, (x.shape[0], 2))
        p = x[:, :2]
        status = x[:, 2]
        free = status == DoubleSlitWorld.FREE

        collision = np.minimum(self._segment_hits(self.obstacles, p, d), self._boundary_hits(p, d))
        goal = self._segment_hits(self.goal, p, d)
        reaches_goal = free & (goal <= 1.0) & (goal < collision)
        collides = free & ~reaches_goal & (collision <= 1.0)

        end = p + d
        end_in_goal = self._inside(self.goal, end)
        goal_point = np.where(end_in_goal[:, None], end, p + np.where(np.isfinite(goal), goal, 0.0)[:, None] * d)
        hit_point = p + np.where(np.isfinite(collision), collision, 0.0)[:, None] * d

        position = np.where(free[:, None], end, p)
        position = np.where(reaches_goal[:, None], goal_point, position)
        position = np.where(collides[:, None], hit_point, position)
        new_status = np.where(reaches_goal, DoubleSlitWorld.GOAL, np.where(collides, DoubleSlitWorld.COLLIDED, status))
        return np.column_stack([position, new_status]), collides, free, d

    def dynamics(self, t, x, u, noise=None):
        single = np.ndim(x) == 1
        nxt = self._advance(x, u)[0]
        return nxt[0] if single else nxt

    def stage_cost(self, t, x, u):
        single = np.ndim(x) == 1
        _, collides, free, d = self._advance(x, u)
        cost = np.where(collides, math.inf, np.where(free, np.linalg.norm(d, axis=1), 0.0))
        return float(cost[0]) if single else cost

    def terminal_cost(self, x):
        single = np.ndim(x) == 1
        x = np.atleast_2d(np.asarray(x, dtype=float))
        cost = np.where(x[:, 2] == DoubleSlitWorld.FREE, math.inf, 0.0)
        return float(cost[0]) if single else cost

    def initial_state(self):
        return np.array([self.start[0], self.start[1], DoubleSlitWorld.FREE])

    def double_slit_system(self):
        start = self.initial_state()
        return ControlSystem(name='double-slit', state_dim=3, input_dim=2, horizon=self.horizon,
                             dynamics=self.dynamics, stage_cost=self.stage_cost, terminal_cost=self.terminal_cost,
                             initial_distribution=lambda rng: start.copy(), has_failure_set=True)

    """
        Zero-mean Gaussian prior on the input sequence
    """
    def prior(self):
        return GaussianSequencePrior.constant(self.horizon, 2, self.prior_std)

    """
        Estimation noise acts on the position only, the status coordinate is exact
    """
    @staticmethod
    def estimator_scaling():
        return (1.0, 1.0, 0.0)

    def route_waypoints(self, position):
        goal_center = np.array([0.5 * (self.goal[0] + self.goal[1]), 0.5 * (self.goal[2] + self.goal[3])])
        if position[0] >= self.divider_x:
            return [[goal_center]]
        return [[np.array([self.divider_x, self.wide_center]), goal_center],
                [np.array([self.divider_x, self.narrow_center]), goal_center]]

    """
        Nominal input sequence following the waypoints at constant speed (capped by the input bound)
    """
    def nominal_inputs(self, position, waypoints, steps):
        points = [np.asarray(position[:2], dtype=float)] + list(waypoints)
        lengths = np.array([np.linalg.norm(b - a) for a, b in zip(points[:-1], points[1:])])
        total = float(np.sum(lengths))
        speed = min(total / steps, self.input_bound) if total > 0 else 0.0
        inputs = np.zeros((steps, 2))
        leg, travelled = 0, 0.0
        for k in range(steps):
            remaining = speed
            move = np.zeros(2)
            while remaining > 1e-15 and leg < len(lengths):
                direction = (points[leg + 1] - points[leg]) / max(lengths[leg], 1e-15)
                left_on_leg = lengths[leg] - travelled
                advance = min(remaining, left_on_leg)
                move += advance * direction
                remaining -= advance
                travelled += advance
                if travelled >= lengths[leg] - 1e-15:
                    leg += 1
                    travelled = 0.0
            inputs[k] = move
        return inputs

    """
        Importance proposal for a planner started at ham.x: mixture of Gaussian tubes around the routes through each
        slit, and the prior itself with weight proposal_prior_weight. The sampler corrects the weights with the
        prior / proposal density ratio, so the target Gibbs measure does not change.
    """
    def route_proposal(self, ham):
        prior = self.prior().window(ham.t)
        if ham.x[2] != DoubleSlitWorld.FREE:
            return prior
        tubes = [GaussianSequencePrior(self.nominal_inputs(ham.x, waypoints, ham.steps),
                                       np.full((ham.steps, 2), self.proposal_std))
                 for waypoints in self.route_waypoints(ham.x)]
        tube_weight = (1.0 - self.proposal_prior_weight) / len(tubes)
        return MixtureSequenceProposal([prior] + tubes, [self.proposal_prior_weight] + [tube_weight] * len(tubes))

    """
        Slit used by a trajectory: the divider crossing height is interpolated on the first step that crosses
        x = divider_x
    """
    def classify_passage(self, states):
        states = np.asarray(states, dtype=float)
        for a, b in zip(states[:-1], states[1:]):
            if a[0] < self.divider_x <= b[0]:
                y = a[1] + (self.divider_x - a[0]) / (b[0] - a[0]) * (b[1] - a[1])
                if abs(y - self.wide_center) <= self.wide_half_width:
                    return DoubleSlitWorld.PASSAGE_WIDE
                if abs(y - self.narrow_center) <= self.narrow_half_width:
                    return DoubleSlitWorld.PASSAGE_NARROW
                return DoubleSlitWorld.PASSAGE_NONE
        return DoubleSlitWorld.PASSAGE_NONE
