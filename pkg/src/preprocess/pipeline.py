# -*- coding:utf-8 -*-
"""
The holdout preparation chain, always in the order
feature selection -> min-max normalisation -> one-hot encoding.
"""
import logging

from src.preprocess.encoding import EncoderMap, fit_onehot, apply_onehot
from src.preprocess.feature_subset import FeatureSubset, full_subset, project
from src.preprocess.normalization import NormalizerStats, fit_minmax, apply_minmax

__all__ = ['Preprocessor', 'prepare_holdout']

logger = logging.getLogger(__name__)


class Preprocessor:
    def __init__(self, subset, normalize=True, encode=True, stats=None, encoder=None, signature=None):
        self.subset = subset
        self.normalize = normalize
        self.encode = encode
        self.stats = stats
        self.encoder = encoder
        self.signature = signature  # (name, kind) pairs after projection

    def fit(self, train, test=None):
        """
        statistics come from train only; vocabularies from train then test
        """
        train = project(train, self.subset)
        test = project(test, self.subset) if test is not None else None
        self.signature = train.signature()
        if self.normalize:
            self.stats = fit_minmax(train)
            train = apply_minmax(self.stats, train)
            test = apply_minmax(self.stats, test) if test is not None else None
        if self.encode:
            self.encoder = fit_onehot(train, test)
        return self

    def transform(self, d):
        d = project(d, self.subset)
        d.require_signature(self.signature, what='preprocessing')
        if self.normalize:
            d = apply_minmax(self.stats, d)
        if self.encode:
            d = apply_onehot(self.encoder, d)
        return d

    def to_dict(self):
        return {
            'subset': self.subset.to_dict(),
            'normalize': self.normalize,
            'encode': self.encode,
            'stats': self.stats.to_dict() if self.stats is not None else None,
            'encoder': self.encoder.to_dict() if self.encoder is not None else None,
            'signature': [list(pair) for pair in self.signature],
        }

    @classmethod
    def from_dict(cls, values):
        return cls(subset=FeatureSubset.from_dict(values['subset']),
                   normalize=values['normalize'],
                   encode=values['encode'],
                   stats=NormalizerStats.from_dict(values['stats']) if values['stats'] else None,
                   encoder=EncoderMap.from_dict(values['encoder']) if values['encoder'] else None,
                   signature=[tuple(pair) for pair in values['signature']])


def prepare_holdout(train, test, subset=None, normalize=True, encode=True):
    """
    :return: (fitted Preprocessor, prepared train, prepared test)
    """
    if subset is None:
        subset = full_subset(train)
    preprocessor = Preprocessor(subset, normalize=normalize, encode=encode).fit(train, test)
    prepared_train = preprocessor.transform(train)
    prepared_test = preprocessor.transform(test) if test is not None else None
    logger.info('prepared %d features -> width %d', len(subset), len(prepared_train.attributes))
    return preprocessor, prepared_train, prepared_test
