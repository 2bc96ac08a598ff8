#!/usr/lib/brdp/environment/bin/python

"""
    Every error raised by the library belongs to this family. The exit_code is used by src.main to
    translate an error into a process status: 2 for a configuration problem, 3 for a numerical failure.
"""
class BrdpError(Exception):
    CONFIGURATION = 2
    NUMERICAL = 3

    exit_code = 1

    def __init__(self, message):
        super().__init__(message)
        self.message = message


class ConfigurationError(BrdpError):
    exit_code = BrdpError.CONFIGURATION


class NumericalError(BrdpError):
    exit_code = BrdpError.NUMERICAL


"""
    A rollout reached a non-finite state. The step index is the first time step t for which x_{t+1} is not finite.
"""
class DivergedTrajectoryError(NumericalError):
    def __init__(self, step, message=None):
        super().__init__(message or 'Trajectory diverged at step ' + str(step) + '.')
        self.step = step


class DivergingMechanismError(NumericalError):
    pass


class UnreliableEstimateError(NumericalError):
    def __init__(self, ess, message=None):
        super().__init__(message or 'Effective sample size ' + str(ess) + ' is too small for a reliable estimate.')
        self.ess = ess


class IllConditionedProblemError(NumericalError):
    def __init__(self, condition, step=None):
        message = 'Ill-conditioned precision matrix (condition number ' + str(condition) + ')'
        if step is not None:
            message += ' at step ' + str(step)
        super().__init__(message + '.')
        self.condition = condition
        self.step = step


class InfeasibleProposalError(NumericalError):
    pass


class SteinDivergenceError(NumericalError):
    def __init__(self, particle, iteration, message=None):
        super().__init__(message or 'Stein update failed for particle ' + str(particle)
                         + ' at iteration ' + str(iteration) + '.')
        self.particle = particle
        self.iteration = iteration


class UnsupportedPolicyError(NumericalError):
    pass


class InsufficientSamplesError(NumericalError):
    pass


class UnboundedGridError(NumericalError):
    pass


"""
    Wraps an error raised while computing one (beta, sigma2) cell of a sweep, so the user knows which cell failed.
"""
class CellError(BrdpError):
    def __init__(self, experiment, beta, sigma2, cause):
        super().__init__('Cell (experiment=' + str(experiment) + ', beta=' + str(beta) + ', sigma2=' + str(sigma2)
                         + ') failed: ' + str(cause))
        self.exit_code = getattr(cause, 'exit_code', BrdpError.NUMERICAL)
        self.cause = cause
