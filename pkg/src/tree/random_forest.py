# -*- coding:utf-8 -*-
"""
Random forest of randomised Gini trees with bootstrap resampling and majority vote.

Each tree gets its own seed derived from the master seed, so training the trees on a
thread pool gives the same forest as training them one after the other.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, asdict

import numpy as np

from src.tree.C45_tree import (TreeData, TreeParams, grow_tree, predict_tree, tree_predict,
                               tree_to_dict, tree_from_dict)
from src.tree.criteria import GINI
from src.utils.errors import ConfigError, DataError
from src.utils.policies import majority_vote
from src.utils.sampling_fn import bootstrap_indices, child_seeds

__all__ = ['ForestParams', 'Forest', 'fit_forest', 'predict_forest', 'forest_predict', 'forest_scores']

logger = logging.getLogger(__name__)


@dataclass
class ForestParams:
    n_trees: int = 100
    features_per_split: object = 'sqrt'  # 'sqrt', 'all' or an explicit integer
    bootstrap: bool = True
    seed: int = 0
    min_leaf: int = 1
    max_depth: object = None

    def validate(self, n_attributes=None):
        if not isinstance(self.n_trees, int) or self.n_trees < 1:
            raise ConfigError('n_trees must be an integer >= 1')
        if isinstance(self.features_per_split, str):
            if self.features_per_split not in ('sqrt', 'all'):
                raise ConfigError("features_per_split must be 'sqrt', 'all' or an integer")
        elif not isinstance(self.features_per_split, int) or self.features_per_split < 1:
            raise ConfigError('features_per_split must be a positive integer')
        elif n_attributes is not None and self.features_per_split > n_attributes:
            raise ConfigError('features_per_split {} exceeds the {} attributes'.format(
                self.features_per_split, n_attributes))
        return self

    def candidates_per_split(self, n_attributes):
        if self.features_per_split == 'all':
            return n_attributes
        if self.features_per_split == 'sqrt':
            return max(1, int(math.sqrt(n_attributes)))
        return self.features_per_split

    def tree_params(self):
        return TreeParams(min_leaf=self.min_leaf, max_depth=self.max_depth, criterion=GINI, prune=False)

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, values):
        try:
            return cls(**(values or {}))
        except TypeError as err:
            raise ConfigError('bad forest parameters: {}'.format(err))


class Forest:
    def __init__(self, trees, params):
        self.trees = trees
        self.params = params

    def attack_votes(self, d):
        votes = np.zeros(d.row_count, dtype=np.int64)
        for tree in self.trees:
            votes += tree_predict(tree, d)
        return votes

    def to_dict(self):
        return {'params': self.params.to_dict(), 'trees': [tree_to_dict(tree) for tree in self.trees]}

    @classmethod
    def from_dict(cls, values):
        return cls([tree_from_dict(tree) for tree in values['trees']], ForestParams.from_dict(values['params']))


def fit_forest(train, params=None, threads=1):
    """
    :param train: Dataset
    :param params: ForestParams
    :param threads: worker threads; the result does not depend on it
    :return: Forest
    """
    params = (params or ForestParams()).validate(len(train.attributes))
    if train.row_count == 0:
        raise DataError('cannot fit a forest on an empty dataset')

    data = TreeData.from_dataset(train)
    tree_params = params.tree_params().validate()
    max_features = params.candidates_per_split(data.width)
    seeds = child_seeds(params.seed, params.n_trees)

    def build(seed):
        rng = np.random.default_rng(seed)
        rows = bootstrap_indices(train.row_count, rng) if params.bootstrap else np.arange(train.row_count)
        return grow_tree(data, rows, tree_params, rng=rng, max_features=max_features)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            trees = list(pool.map(build, seeds))
    else:
        trees = [build(seed) for seed in seeds]
    logger.info('grew %d trees, %d candidate attributes per split', len(trees), max_features)
    return Forest(trees, params)


def forest_predict(forest, d):
    return majority_vote(forest.attack_votes(d), len(forest.trees))


def forest_scores(forest, d):
    """share of trees voting attack; >= 0.5 is an attack"""
    return forest.attack_votes(d) / float(len(forest.trees))


def predict_forest(forest, row):
    """single-row vote, ties -> 1"""
    votes = sum(predict_tree(tree, row) for tree in forest.trees)
    return int(majority_vote([votes], len(forest.trees))[0])
