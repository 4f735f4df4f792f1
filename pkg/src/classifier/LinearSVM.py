# -*- coding:utf-8 -*-
"""
Linear SVM trained by stochastic subgradient descent (Pegasos).

Stands in for the RBF-kernel SVM, whose training time on the full training set is
measured in hours. Minimises

    lambda / 2 * (||w||^2 + b^2) + mean_i max(0, 1 - y_i (w . x_i + b)),  lambda = 1 / (C n)

with y in {-1, +1}; the bias is handled as a weight on a constant feature.
"""
import logging

import numpy as np

from src.utils.errors import ConfigError, DataError
from src.utils.policies import threshold_scores

__all__ = ['LinearSVM', 'svm_objective']

logger = logging.getLogger(__name__)


def svm_objective(w, b, X, y, C):
    """
    :param y: 0/1 labels
    """
    signs = np.where(np.asarray(y) == 1, 1.0, -1.0)
    lam = 1.0 / (C * X.shape[0])
    hinge = np.maximum(0.0, 1.0 - signs * (X @ w + b))
    return 0.5 * lam * (float(np.dot(w, w)) + b * b) + float(np.mean(hinge))


class LinearSVM:
    boundary = 0.0

    def __init__(self, C=1.0, epochs=20, batch_size=1, seed=0, average=True):
        if C <= 0:
            raise ConfigError('C must be > 0')
        if not isinstance(epochs, int) or epochs < 1:
            raise ConfigError('epochs must be an integer >= 1')
        self.C = C
        self.epochs = epochs
        self.batch_size = batch_size
        self.seed = seed
        self.average = average
        self.w = None
        self.b = 0.0

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        if X.shape[0] == 0:
            raise DataError('cannot fit a linear SVM on an empty dataset')
        signs = np.where(np.asarray(y) == 1, 1.0, -1.0)
        n, p = X.shape
        lam = 1.0 / (self.C * n)
        radius = 1.0 / np.sqrt(lam)
        rng = np.random.default_rng(self.seed)

        # augmented weights: last entry is the bias
        Xa = np.hstack([X, np.ones((n, 1))])
        w = np.zeros(p + 1)
        w_sum, averaged = np.zeros(p + 1), 0
        t = 0
        for epoch in range(self.epochs):
            order = rng.permutation(n)
            for start in range(0, n, self.batch_size):
                batch = order[start:start + self.batch_size]
                t += 1
                eta = 1.0 / (lam * t)
                margins = signs[batch] * (Xa[batch] @ w)
                violators = batch[margins < 1.0]
                w *= 1.0 - eta * lam
                if violators.shape[0]:
                    w += (eta / batch.shape[0]) * (signs[violators] @ Xa[violators])
                norm = np.linalg.norm(w)
                if norm > radius:
                    w *= radius / norm
                # suffix average over the second half of training
                if self.average and epoch >= self.epochs // 2:
                    w_sum += w
                    averaged += 1

        final = w_sum / averaged if (self.average and averaged) else w
        self.w, self.b = final[:-1].copy(), float(final[-1])
        logger.debug('linsvm objective %.6f after %d epochs', self.objective(X, y), self.epochs)
        return self

    def decision_scores(self, X):
        """signed margin w . x + b"""
        return np.asarray(X, dtype=np.float64) @ self.w + self.b

    def predict(self, X):
        return threshold_scores(self.decision_scores(X), self.boundary)

    def objective(self, X, y):
        return svm_objective(self.w, self.b, np.asarray(X, dtype=np.float64), y, self.C)

    def to_state(self):
        return {'C': self.C, 'epochs': self.epochs, 'batch_size': self.batch_size, 'seed': self.seed,
                'average': self.average, 'w': self.w.tolist(), 'b': self.b}

    @classmethod
    def from_state(cls, state):
        model = cls(C=state['C'], epochs=state['epochs'], batch_size=state['batch_size'],
                    seed=state['seed'], average=state['average'])
        model.w = np.asarray(state['w'], dtype=np.float64)
        model.b = float(state['b'])
        return model
