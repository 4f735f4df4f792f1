# -*- coding:utf-8 -*-
import logging

import numpy as np
from scipy.special import logsumexp
from sklearn import naive_bayes

from src.utils.errors import ConfigError, DataError
from src.utils.policies import threshold_scores

__all__ = ['GaussianNB']

logger = logging.getLogger(__name__)

CLASSES = (0, 1)


class GaussianNB:
    """
    Gaussian naive Bayes for 0/1 labels on top of sklearn's GaussianNB.

    Per-class feature means and variances; every variance is widened by
    var_smoothing times the largest feature variance. A class missing from the
    training rows gets log-likelihood -inf.
    """
    boundary = 0.0

    def __init__(self, var_smoothing=1e-9):
        if var_smoothing < 0:
            raise ConfigError('var_smoothing must be >= 0')
        self.var_smoothing = var_smoothing
        self.model = None

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        if X.shape[0] == 0:
            raise DataError('cannot fit naive Bayes on an empty dataset')
        if X.shape[1] == 0:
            raise DataError('naive Bayes needs at least one feature')
        self.model = naive_bayes.GaussianNB(var_smoothing=self.var_smoothing).fit(X, y)
        logger.debug('naive Bayes classes %s, priors %s', self.model.classes_.tolist(),
                     self.model.class_prior_.tolist())
        return self

    def joint_log_likelihood(self, X):
        """(rows, 2) log P(c) + log P(x | c), columns in label order"""
        X = np.asarray(X, dtype=np.float64)
        jll = np.full((X.shape[0], len(CLASSES)), -np.inf)
        if X.shape[0]:
            jll[:, self.model.classes_.astype(np.int64)] = self.model.predict_joint_log_proba(X)
        return jll

    def predict_proba(self, X):
        jll = self.joint_log_likelihood(X)
        return np.exp(jll - logsumexp(jll, axis=1, keepdims=True))

    def decision_scores(self, X):
        """log P(attack | x) - log P(normal | x)"""
        jll = self.joint_log_likelihood(X)
        with np.errstate(invalid='ignore'):
            scores = jll[:, 1] - jll[:, 0]
        return np.where(np.isnan(scores), 0.0, scores)

    def predict(self, X):
        return threshold_scores(self.decision_scores(X), self.boundary)

    def to_state(self):
        m = self.model
        return {'var_smoothing': self.var_smoothing, 'classes': m.classes_.tolist(),
                'class_count': m.class_count_.tolist(), 'class_prior': m.class_prior_.tolist(),
                'theta': m.theta_.tolist(), 'var': m.var_.tolist(), 'epsilon': float(m.epsilon_)}

    @classmethod
    def from_state(cls, state):
        model = cls(var_smoothing=state['var_smoothing'])
        m = naive_bayes.GaussianNB(var_smoothing=state['var_smoothing'])
        m.classes_ = np.asarray(state['classes'], dtype=np.int64)
        m.class_count_ = np.asarray(state['class_count'], dtype=np.float64)
        m.class_prior_ = np.asarray(state['class_prior'], dtype=np.float64)
        m.theta_ = np.asarray(state['theta'], dtype=np.float64).reshape(len(m.classes_), -1)
        m.var_ = np.asarray(state['var'], dtype=np.float64).reshape(len(m.classes_), -1)
        m.epsilon_ = state['epsilon']
        m.n_features_in_ = m.theta_.shape[1]
        model.model = m
        return model
