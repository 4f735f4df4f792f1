# -*- coding:utf-8 -*-
import numpy as np
from sklearn.model_selection import train_test_split

from src.utils.errors import ConfigError

__all__ = ['bootstrap_indices', 'stratified_subsample_indices', 'child_seeds']


def bootstrap_indices(n_rows, rng):
    """
    draw n_rows row indices with replacement
    :param n_rows: size of the training set
    :param rng: numpy Generator
    """
    return rng.integers(0, n_rows, size=n_rows)


def stratified_subsample_indices(labels, fraction, seed):
    """
    seeded, class-stratified row sample used to shrink wrapper runs
    :param labels: 0/1 label array
    :param fraction: share of rows to keep, in (0, 1]
    :param seed: random_state for the split
    :return: sorted int array of kept row indices
    """
    if not 0.0 < fraction <= 1.0:
        raise ConfigError('subsample fraction must be in (0, 1], got {}'.format(fraction))

    all_rows = np.arange(len(labels))
    if fraction == 1.0:
        return all_rows

    kept, _ = train_test_split(all_rows, train_size=fraction, stratify=labels,
                               shuffle=True, random_state=seed)
    return np.sort(kept)


def child_seeds(seed, n):
    """
    n independent integer seeds derived from a master seed,
    the same whatever order the children are consumed in
    """
    children = np.random.SeedSequence(seed).spawn(n)
    return [int(each.generate_state(1)[0]) for each in children]
