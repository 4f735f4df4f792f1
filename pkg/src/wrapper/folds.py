# -*- coding:utf-8 -*-
import logging

import numpy as np
from sklearn.model_selection import StratifiedKFold

from src.utils.errors import ConfigError, DataError
from src.utils.sampling_fn import stratified_subsample_indices

__all__ = ['stratified_folds', 'fold_class_counts', 'subsample_dataset']

logger = logging.getLogger(__name__)


def stratified_folds(d, k, seed):
    """
    assign every row to one of k folds, keeping the class mix of each fold within
    one row of the exact proportion
    :param d: Dataset
    :param k: number of folds, >= 2
    :param seed: shuffling seed; the same seed gives the same assignment
    :return: int array, fold id per row
    """
    if not isinstance(k, int) or k < 2:
        raise ConfigError('k must be an integer >= 2, got {!r}'.format(k))
    labels = np.asarray(d.labels)
    for label in (0, 1):
        count = int(np.sum(labels == label))
        if 0 < count < k:
            raise DataError('class {} has {} rows, fewer than the {} folds'.format(label, count, k))
    if labels.shape[0] < k:
        raise DataError('{} rows cannot be split into {} folds'.format(labels.shape[0], k))

    assignment = np.empty(labels.shape[0], dtype=np.int64)
    splitter = StratifiedKFold(n_splits=k, shuffle=True, random_state=seed)
    for fold, (_, held_out) in enumerate(splitter.split(np.zeros((labels.shape[0], 1)), labels)):
        assignment[held_out] = fold
    return assignment


def fold_class_counts(assignment, labels, k):
    """(k, 2) table of normal/attack rows per fold"""
    labels = np.asarray(labels)
    return np.stack([np.bincount(assignment[labels == label], minlength=k) for label in (0, 1)], axis=1)


def subsample_dataset(d, fraction, seed):
    """
    seeded stratified share of the rows, for desk-scale searches
    """
    if fraction is None or fraction == 1.0:
        return d
    rows = stratified_subsample_indices(d.labels, float(fraction), seed)
    logger.info('subsampled %d of %d rows (fraction %g)', rows.shape[0], d.row_count, fraction)
    return d.take(rows)
