#!/usr/lib/brdp/environment/bin/python
import math

from src.core.Errors import DivergingMechanismError

"""
    The exponential mechanism U^beta(x){u} = prior{u} exp(-beta H(x, u)) / Z^beta(x).

    GibbsPolicy only holds what every backend shares (prior, Hamiltonian, beta). The evaluation backend is chosen by
    the caller through the subclass, never detected automatically:
        FiniteGibbsPolicy       exact enumeration over a finite input set
        QuadraticGibbsPolicy    Gaussian prior with a Hamiltonian quadratic in u, closed form
        SampledGibbsPolicy      self-normalized Monte Carlo with the prior as proposal

    beta = 0 is the prior mode and beta = inf the argmin mode, both handled by the backends that support them.
"""
class GibbsPolicy:
    PRIOR_MODE = 'prior'
    GIBBS_MODE = 'gibbs'
    ARGMIN_MODE = 'argmin'
    KL_TOLERANCE = 1e-12

    def __init__(self, prior, hamiltonian, beta):
        beta = float(beta)
        if math.isnan(beta) or beta < 0:
            raise ValueError('beta must be >= 0, got ' + str(beta) + '.')
        self.prior = prior
        self.hamiltonian = hamiltonian
        self.beta = beta

    @property
    def mode(self):
        if self.beta == 0.0:
            return GibbsPolicy.PRIOR_MODE
        if math.isinf(self.beta):
            return GibbsPolicy.ARGMIN_MODE
        return GibbsPolicy.GIBBS_MODE

    """
        Density of the mechanism at input u for state x
    """
    def density(self, x, u):
        return math.exp(self.log_density(x, u))

    def log_density(self, x, u):
        raise NotImplementedError

    def log_partition_function(self, x):
        raise NotImplementedError

    def partition_function(self, x):
        return math.exp(self.log_partition_function(x))

    def free_energy(self, x):
        raise NotImplementedError

    def kl_to_prior(self, x):
        return self.free_energy(x).kl

    """
        Returns (F(x), E_alt[H] + KL(alt || prior) / beta). The first value is never larger than the second one
        (up to estimation error), with equality when the alternative is the Gibbs policy itself.
    """
    def variational_check(self, x, alternative):
        raise NotImplementedError

    """
        KL(alt || prior) / beta. In the prior mode any alternative other than the prior is priced +inf.
    """
    def kl_price(self, kl):
        if self.mode == GibbsPolicy.PRIOR_MODE:
            return 0.0 if kl <= GibbsPolicy.KL_TOLERANCE else math.inf
        return kl / self.beta

    """
        Draw one input for state x. The time index is ignored, so a GibbsPolicy can be used as a per-step controller.
    """
    def sample(self, t, x, rng):
        raise NotImplementedError

    def _check_log_partition(self, log_Z):
        if not math.isfinite(log_Z):
            raise DivergingMechanismError('Partition function is not finite (log Z = ' + str(log_Z) + ').')
        return log_Z
