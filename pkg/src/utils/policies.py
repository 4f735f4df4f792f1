# -*- coding:utf-8 -*-
"""
Decision policies shared by all classifiers.

Every tie resolves to attack (1).
"""
import numpy as np

__all__ = ['ATTACK', 'NORMAL', 'majority_label', 'majority_vote', 'threshold_scores']

NORMAL = 0
ATTACK = 1


def majority_label(counts):
    """
    label of a (normal_count, attack_count) pair
    :param counts: sequence of two non-negative counts
    :return: 1 when attack_count >= normal_count, else 0
    """
    return ATTACK if counts[1] >= counts[0] else NORMAL


def majority_vote(attack_votes, total_votes):
    """
    vectorised majority vote, ties -> attack
    :param attack_votes: array of attack votes per row
    :param total_votes: number of voters (scalar or array)
    :return: int array of labels
    """
    attack_votes = np.asarray(attack_votes, dtype=np.float64)
    return (2.0 * attack_votes >= np.asarray(total_votes, dtype=np.float64)).astype(np.int64)


def threshold_scores(scores, boundary=0.0):
    """
    scores at or above the boundary are attacks
    """
    return (np.asarray(scores) >= boundary).astype(np.int64)
