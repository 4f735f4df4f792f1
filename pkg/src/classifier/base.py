# -*- coding:utf-8 -*-
"""
One fit/predict contract over the whole classifier zoo.

A ClassifierSpec names a kind and its hyperparameters; fit() turns it into a
TrainedModel that remembers the attribute signature it was trained on and refuses
data with any other.
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from src.classifier.GaussianNB import GaussianNB
from src.classifier.LinearSVM import LinearSVM
from src.classifier.MLP import MLPParams, MLPClassifier
from src.classifier.kNN import KNNClassifier
from src.preprocess.pipeline import Preprocessor
from src.tree.C45_tree import TreeParams, fit_tree, tree_predict, tree_scores, tree_to_dict, tree_from_dict
from src.tree.random_forest import ForestParams, Forest, fit_forest, forest_predict, forest_scores
from src.utils.artifact import save_artifact, load_artifact
from src.utils.config import CLASSIFIER_KINDS
from src.utils.errors import ArtifactError, ConfigError, DataError

__all__ = ['ClassifierSpec', 'TrainedModel', 'DEFAULT_PARAMS', 'fit', 'predict', 'decision_scores',
           'save_model', 'load_model']

logger = logging.getLogger(__name__)

# library defaults of each kind; `seed` comes from ClassifierSpec.seed for the stochastic ones
DEFAULT_PARAMS = {
    'tree': {'min_leaf': 2, 'pruning_confidence': 0.25, 'max_depth': None},
    'forest': {'n_trees': 100, 'features_per_split': 'sqrt', 'bootstrap': True, 'min_leaf': 1, 'max_depth': None},
    'knn': {'k': 5, 'distance': 'euclidean'},
    'gnb': {'var_smoothing': 1e-9},
    'mlp': {'hidden': 100, 'activation': 'relu', 'max_epochs': 200, 'batch': 200, 'learning_rate': 1e-3,
            'tol': 1e-4, 'patience': 10, 'optimizer': 'adam'},
    'linsvm': {'C': 1.0, 'epochs': 20, 'batch_size': 16, 'average': True},
}

# kinds that see nominal columns directly; the rest need an all-numeric matrix
MIXED_INPUT_KINDS = ('tree', 'forest')


@dataclass
class ClassifierSpec:
    kind: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.kind not in CLASSIFIER_KINDS:
            raise ConfigError('classifier kind must be one of {}, got {!r}'.format(CLASSIFIER_KINDS, self.kind))
        unknown = set(self.params) - set(DEFAULT_PARAMS[self.kind]) - {'seed'}
        if unknown:
            raise ConfigError('unknown {} parameter(s): {}'.format(self.kind, sorted(unknown)))
        merged = dict(DEFAULT_PARAMS[self.kind])
        merged.update(self.params)
        if 'seed' in merged:
            self.seed = merged.pop('seed')
        self.params = merged

    @property
    def label(self):
        return self.kind

    @classmethod
    def from_dict(cls, values, seed=0):
        """
        :param values: {"kind": ..., "params": {...}, "seed": ...}; a missing seed takes `seed`
        """
        if not isinstance(values, dict) or 'kind' not in values:
            raise ConfigError('a classifier spec needs a "kind": {!r}'.format(values))
        return cls(kind=values['kind'], params=dict(values.get('params') or {}), seed=values.get('seed', seed))

    def to_dict(self):
        return {'kind': self.kind, 'params': dict(self.params), 'seed': self.seed}

    def build(self):
        """unfitted estimator of this kind"""
        p = self.params
        if self.kind == 'knn':
            return KNNClassifier(k=p['k'], distance=p['distance'])
        if self.kind == 'gnb':
            return GaussianNB(var_smoothing=p['var_smoothing'])
        if self.kind == 'mlp':
            return MLPClassifier(MLPParams(seed=self.seed, **p))
        if self.kind == 'linsvm':
            return LinearSVM(C=p['C'], epochs=p['epochs'], batch_size=p['batch_size'], seed=self.seed,
                             average=p['average'])
        raise ConfigError('{} is not built from a matrix estimator'.format(self.kind))

    def tree_params(self):
        return TreeParams.from_dict(self.params)

    def forest_params(self):
        return ForestParams.from_dict(dict(self.params, seed=self.seed))


class TrainedModel:
    def __init__(self, spec, signature, estimator, config_hash=None):
        self.spec = spec
        self.signature = [tuple(pair) for pair in signature]
        self.estimator = estimator
        self.config_hash = config_hash  # hash of the training config, known once loaded

    @property
    def kind(self):
        return self.spec.kind

    def _inputs(self, d):
        d.require_signature(self.signature, what='{} model'.format(self.kind))
        return d if self.kind in MIXED_INPUT_KINDS else d.to_matrix()

    def predict(self, d):
        inputs = self._inputs(d)
        if self.kind == 'tree':
            return tree_predict(self.estimator, inputs)
        if self.kind == 'forest':
            return forest_predict(self.estimator, inputs)
        return self.estimator.predict(inputs)

    def decision_scores(self, d):
        inputs = self._inputs(d)
        if self.kind == 'tree':
            return tree_scores(self.estimator, inputs)
        if self.kind == 'forest':
            return forest_scores(self.estimator, inputs)
        return self.estimator.decision_scores(inputs)

    def to_dict(self):
        if self.kind == 'tree':
            state = tree_to_dict(self.estimator)
        elif self.kind == 'forest':
            state = self.estimator.to_dict()
        else:
            state = self.estimator.to_state()
        return {'spec': self.spec.to_dict(), 'signature': [list(pair) for pair in self.signature], 'state': state}

    @classmethod
    def from_dict(cls, values):
        spec = ClassifierSpec.from_dict(values['spec'])
        state = values['state']
        if spec.kind == 'tree':
            estimator = tree_from_dict(state)
        elif spec.kind == 'forest':
            estimator = Forest.from_dict(state)
        else:
            estimator = type(spec.build()).from_state(state)
        return cls(spec, values['signature'], estimator)


def fit(spec, train, threads=1):
    """
    :param spec: ClassifierSpec
    :param train: Dataset; all-numeric except for tree and forest
    :param threads: worker threads for the forest
    :return: TrainedModel
    """
    if train.row_count == 0:
        raise DataError('cannot fit {} on an empty dataset'.format(spec.kind))
    if spec.kind == 'tree':
        estimator = fit_tree(train, spec.tree_params())
    elif spec.kind == 'forest':
        estimator = fit_forest(train, spec.forest_params(), threads=threads)
    else:
        X = train.to_matrix()
        estimator = spec.build().fit(X, np.asarray(train.labels))
    logger.info('fitted %s on %d rows x %d attributes', spec.kind, train.row_count, len(train.attributes))
    return TrainedModel(spec, train.signature(), estimator)


def predict(m, d):
    """one 0/1 label per row, ties -> 1"""
    return m.predict(d)


def decision_scores(m, d):
    """higher means more attack-like; thresholding at the model's boundary reproduces predict"""
    return m.decision_scores(d)


def save_model(path, m, preprocessor=None, config_hash=None):
    """
    :param config_hash: hash of the config the model was trained under
    """
    payload = {'model': m.to_dict(), 'preprocessor': preprocessor.to_dict() if preprocessor is not None else None,
               'config_hash': config_hash}
    save_artifact(path, 'model', payload)


def load_model(path, config_hash=None):
    """
    :param config_hash: when given, the model must have been trained under this config hash
    :return: (TrainedModel, Preprocessor or None)
    """
    payload = load_artifact(path, expected_kind='model')
    if config_hash is not None and payload.get('config_hash') != config_hash:
        raise ArtifactError('model {} was trained under config {}, not {}'.format(
            path, payload.get('config_hash'), config_hash))
    preprocessor = Preprocessor.from_dict(payload['preprocessor']) if payload.get('preprocessor') else None
    model = TrainedModel.from_dict(payload['model'])
    model.config_hash = payload.get('config_hash')
    return model, preprocessor
