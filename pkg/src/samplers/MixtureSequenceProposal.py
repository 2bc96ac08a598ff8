#!/usr/lib/brdp/environment/bin/python
import numpy as np
from scipy.special import logsumexp

"""
    Finite mixture of GaussianSequencePrior components of the same shape, used as an importance proposal.
    The component of every sample is drawn first, the samples of a component are then drawn in one block.
"""
class MixtureSequenceProposal:
    def __init__(self, components, weights=None):
        if not components:
            raise ValueError('A mixture needs at least one component.')
        self.components = list(components)
        weights = np.full(len(components), 1.0 / len(components)) if weights is None else np.asarray(weights, float)
        if weights.size != len(components) or np.any(weights < 0) or abs(weights.sum() - 1.0) > 1e-12:
            raise ValueError('Mixture weights must be a probability vector, one per component.')
        self.weights = weights
        with np.errstate(divide='ignore'):
            self.log_weights = np.log(weights)

    def sample(self, rng, size):
        labels = rng.choice(len(self.components), size=size, p=self.weights)
        samples = np.empty((size,) + self.components[0].mean.shape)
        for index, component in enumerate(self.components):
            chosen = np.flatnonzero(labels == index)
            if chosen.size:
                samples[chosen] = component.sample(rng, chosen.size)
        return samples

    def logpdf(self, sequences):
        per_component = np.stack([component.logpdf(sequences) for component in self.components], axis=0)
        return logsumexp(per_component + self.log_weights[:, None], axis=0)
