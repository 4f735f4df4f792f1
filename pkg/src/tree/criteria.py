# -*- coding:utf-8 -*-
"""
Split criteria for binary labels: entropy / gain ratio (C4.5) and Gini impurity.

All scans work on class counts so one sorted pass scores every numeric threshold.
"""
from collections import namedtuple

import numpy as np

from src.utils.errors import DataError

__all__ = ['entropy', 'gini', 'information_gain', 'split_information', 'gain_ratio',
           'split_gain_ratio', 'best_numeric_threshold', 'NumericSplit', 'GAIN_RATIO', 'GINI']

GAIN_RATIO = 'gain_ratio'
GINI = 'gini'

# gains below this are float noise, not information
MIN_GAIN = 1e-12

NumericSplit = namedtuple('NumericSplit', ['threshold', 'gain_ratio', 'gain'])


def _binary_entropy(attack, total):
    """entropy in bits of (total - attack, attack) counts; vectorised, 0 where total == 0"""
    attack = np.asarray(attack, dtype=np.float64)
    total = np.asarray(total, dtype=np.float64)
    with np.errstate(divide='ignore', invalid='ignore'):
        p = np.where(total > 0, attack / np.where(total > 0, total, 1.0), 0.0)
        q = 1.0 - p
        h = -(np.where(p > 0, p * np.log2(np.where(p > 0, p, 1.0)), 0.0) +
              np.where(q > 0, q * np.log2(np.where(q > 0, q, 1.0)), 0.0))
    return np.where(total > 0, h, 0.0)


def _binary_gini(attack, total):
    attack = np.asarray(attack, dtype=np.float64)
    total = np.asarray(total, dtype=np.float64)
    with np.errstate(divide='ignore', invalid='ignore'):
        p = np.where(total > 0, attack / np.where(total > 0, total, 1.0), 0.0)
    return np.where(total > 0, 2.0 * p * (1.0 - p), 0.0)


def entropy(labels):
    """
    H = -sum p_c log2 p_c over the classes present; 0 for an empty array
    """
    labels = np.asarray(labels)
    return float(_binary_entropy(np.sum(labels == 1), labels.shape[0]))


def gini(labels):
    labels = np.asarray(labels)
    return float(_binary_gini(np.sum(labels == 1), labels.shape[0]))


def _branch_counts(labels, branches):
    labels = np.asarray(labels)
    _, branch_index = np.unique(np.asarray(branches), return_inverse=True)
    branch_index = branch_index.ravel()
    sizes = np.bincount(branch_index).astype(np.float64)
    attacks = np.bincount(branch_index, weights=(labels == 1).astype(np.float64))
    return sizes, attacks


def split_information(branches):
    """entropy of the branch sizes themselves"""
    branches = np.asarray(branches)
    if branches.shape[0] == 0:
        return 0.0
    _, sizes = np.unique(branches, return_counts=True)
    p = sizes / float(branches.shape[0])
    return float(-np.sum(p * np.log2(p)))


def information_gain(labels, branches):
    labels = np.asarray(labels)
    n = labels.shape[0]
    if n == 0:
        return 0.0
    sizes, attacks = _branch_counts(labels, branches)
    children = float(np.sum(sizes / n * _binary_entropy(attacks, sizes)))
    return max(entropy(labels) - children, 0.0)


def gain_ratio(labels, branches):
    """
    information gain of a partition divided by its split information
    :param labels: 0/1 labels
    :param branches: branch id (category, or side of a threshold) of every row
    :return: ratio, 0 when the split information is 0
    """
    info = split_information(branches)
    if info <= 0.0:
        return 0.0
    return information_gain(labels, branches) / info


def split_gain_ratio(d, attribute, threshold=None):
    """
    gain ratio of splitting Dataset d on one attribute: multi-way by category for a
    nominal attribute, binary at `threshold` (x <= t, x > t) for a numeric one
    """
    values = d.column(attribute)
    if d.kind_of(attribute) == 'numeric':
        if threshold is None:
            raise DataError('a numeric split needs a threshold')
        branches = (values > threshold).astype(np.int64)
    else:
        branches = values.astype(str)
    return gain_ratio(d.labels, branches)


# ----------------------------------------------------------------------
# numeric threshold scan
# ----------------------------------------------------------------------
def scan_numeric(values, labels, min_leaf=1, criterion=GAIN_RATIO):
    """
    score every midpoint between consecutive distinct sorted values
    :return: (thresholds, scores, gains) arrays over the admissible candidates
    """
    order = np.argsort(values, kind='mergesort')
    sorted_values = values[order]
    cum_attacks = np.cumsum(labels[order] == 1, dtype=np.float64)

    n = sorted_values.shape[0]
    cut = np.nonzero(sorted_values[:-1] < sorted_values[1:])[0]
    left_size = (cut + 1).astype(np.float64)
    admissible = (left_size >= min_leaf) & (n - left_size >= min_leaf)
    cut, left_size = cut[admissible], left_size[admissible]
    if cut.shape[0] == 0:
        empty = np.zeros(0, dtype=np.float64)
        return empty, empty, empty

    right_size = n - left_size
    left_attacks = cum_attacks[cut]
    right_attacks = cum_attacks[-1] - left_attacks
    thresholds = (sorted_values[cut] + sorted_values[cut + 1]) / 2.0

    if criterion == GINI:
        parent = _binary_gini(cum_attacks[-1], n)
        children = (left_size * _binary_gini(left_attacks, left_size) +
                    right_size * _binary_gini(right_attacks, right_size)) / n
        gains = np.maximum(parent - children, 0.0)
        return thresholds, gains, gains

    parent = _binary_entropy(cum_attacks[-1], n)
    children = (left_size * _binary_entropy(left_attacks, left_size) +
                right_size * _binary_entropy(right_attacks, right_size)) / n
    gains = np.maximum(parent - children, 0.0)
    split_info = _binary_entropy(left_size, float(n))
    return thresholds, gains / split_info, gains


def best_numeric_threshold(values, labels, min_leaf=1):
    """
    midpoint threshold with the highest gain ratio; ties go to the smaller threshold
    :param values: real array with at least two distinct values
    :param labels: 0/1 labels
    :return: NumericSplit(threshold, gain_ratio, gain)
    """
    values = np.asarray(values, dtype=np.float64)
    labels = np.asarray(labels)
    if values.shape[0] < 2 or np.all(values == values[0]):
        raise DataError('a numeric threshold needs at least two distinct values')

    thresholds, ratios, gains = scan_numeric(values, labels, min_leaf=min_leaf)
    if thresholds.shape[0] == 0:
        raise DataError('no threshold leaves {} rows on both sides'.format(min_leaf))
    best = int(np.argmax(ratios))  # first maximum = smallest threshold
    return NumericSplit(threshold=float(thresholds[best]), gain_ratio=float(ratios[best]), gain=float(gains[best]))


def score_nominal(codes, labels, n_categories, min_leaf=1, criterion=GAIN_RATIO):
    """
    multi-way split on integer category codes
    :return: (score, gain, present category codes) or None when the split is not admissible
    """
    sizes = np.bincount(codes, minlength=n_categories).astype(np.float64)
    attacks = np.bincount(codes, weights=(labels == 1).astype(np.float64), minlength=n_categories)
    present = np.nonzero(sizes > 0)[0]
    # at least two branches must carry min_leaf rows
    if present.shape[0] < 2 or np.sum(sizes >= min_leaf) < 2:
        return None
    sizes, attacks = sizes[present], attacks[present]
    n = float(np.sum(sizes))

    if criterion == GINI:
        gain = float(_binary_gini(np.sum(attacks), n) - np.sum(sizes * _binary_gini(attacks, sizes)) / n)
        return max(gain, 0.0), max(gain, 0.0), present

    gain = float(_binary_entropy(np.sum(attacks), n) - np.sum(sizes * _binary_entropy(attacks, sizes)) / n)
    gain = max(gain, 0.0)
    p = sizes / n
    info = float(-np.sum(p * np.log2(p)))
    return (gain / info if info > 0 else 0.0), gain, present
