"""Module containing the Adam optimizer used to train SybilGAT."""
import numpy as np


class Adam:
    """
    Adaptive moment estimation over a list of parameter arrays, updated in
    place by step(). 'betas' are the decay rates of the first and second
    moment estimates; both estimates are bias corrected.
    """

    def __init__(self, parameters, learning_rate=0.01, betas=(0.9, 0.999),
                 eps=1e-8):
        self.parameters = list(parameters)
        self.learning_rate = learning_rate
        self.beta1, self.beta2 = betas
        self.eps = eps
        self.steps = 0
        self.first = [np.zeros_like(p) for p in self.parameters]
        self.second = [np.zeros_like(p) for p in self.parameters]

    def step(self, grads):
        """Apply one update with the gradients 'grads' (same order)"""
        self.steps += 1
        correction1 = 1.0 - self.beta1 ** self.steps
        correction2 = 1.0 - self.beta2 ** self.steps
        for param, grad, m, v in zip(self.parameters, grads, self.first,
                                     self.second):
            m *= self.beta1
            m += (1.0 - self.beta1) * grad
            v *= self.beta2
            v += (1.0 - self.beta2) * grad * grad
            param -= self.learning_rate * (m / correction1) / \
                (np.sqrt(v / correction2) + self.eps)
