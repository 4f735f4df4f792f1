# -*- coding:utf-8 -*-
"""
Brute-force k-nearest-neighbours with Euclidean distance.

sklearn's KNeighborsClassifier finds the neighbours; the vote over their labels is
ours, so an even split goes to attack.
"""
import logging

import numpy as np
from sklearn.neighbors import KNeighborsClassifier

from src.utils.artifact import encode_array, decode_array
from src.utils.errors import ConfigError, DataError
from src.utils.policies import majority_vote

__all__ = ['KNNClassifier']

logger = logging.getLogger(__name__)


class KNNClassifier:
    boundary = 0.5

    def __init__(self, k=5, distance='euclidean'):
        if not isinstance(k, int) or k < 1:
            raise ConfigError('k must be an integer >= 1')
        if distance != 'euclidean':
            raise ConfigError('only euclidean distance is supported, got {!r}'.format(distance))
        self.k = k
        self.distance = distance
        self.model = None
        self.X = None
        self.y = None

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        if X.shape[0] == 0:
            raise DataError('cannot fit kNN on an empty dataset')
        if X.shape[1] == 0:
            raise DataError('kNN needs at least one feature')
        self.X = np.ascontiguousarray(X)
        self.y = np.asarray(y, dtype=np.int64)
        self.model = KNeighborsClassifier(n_neighbors=min(self.k, X.shape[0]), algorithm='brute',
                                          metric=self.distance).fit(self.X, self.y)
        return self

    def neighbors(self, X):
        """
        indices of the k nearest training rows of every query row
        """
        X = np.asarray(X, dtype=np.float64)
        if X.shape[0] == 0:
            return np.zeros((0, self.model.n_neighbors), dtype=np.int64)
        return self.model.kneighbors(X, return_distance=False)

    def decision_scores(self, X):
        """attack fraction among the k neighbours, in [0, 1]"""
        return self.y[self.neighbors(X)].mean(axis=1)

    def predict(self, X):
        labels = self.y[self.neighbors(X)]
        return majority_vote(labels.sum(axis=1), labels.shape[1])

    def to_state(self):
        return {'k': self.k, 'distance': self.distance, 'X': encode_array(self.X), 'y': encode_array(self.y)}

    @classmethod
    def from_state(cls, state):
        model = cls(k=state['k'], distance=state['distance'])
        return model.fit(decode_array(state['X']), decode_array(state['y']))
