# -*- coding:utf-8 -*-
"""
Confusion counts with attack (1) as the positive class, and the three rates built on them:

    ACC = (TP + TN) / (TP + TN + FP + FN)
    DR  = TP / (TP + FN)
    FAR = FP / (FP + TN)

DR and FAR are None when their denominator is 0 and render as "undefined".
"""
from dataclasses import dataclass, asdict

import numpy as np

from src.utils.errors import DataError

__all__ = ['ConfusionMatrix', 'confusion', 'accuracy', 'detection_rate', 'false_alert_rate',
           'format_rate', 'UNDEFINED']

UNDEFINED = 'undefined'


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    tn: int
    fp: int
    fn: int

    def __post_init__(self):
        for name in ('tp', 'tn', 'fp', 'fn'):
            value = getattr(self, name)
            if int(value) != value or value < 0:
                raise DataError('{} must be a non-negative integer, got {!r}'.format(name, value))
            object.__setattr__(self, name, int(value))

    @property
    def total(self):
        return self.tp + self.tn + self.fp + self.fn

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, values):
        return cls(tp=values['tp'], tn=values['tn'], fp=values['fp'], fn=values['fn'])


def confusion(pred, truth):
    """
    :param pred: predicted 0/1 labels
    :param truth: true 0/1 labels, same length
    """
    pred = np.asarray(pred).ravel()
    truth = np.asarray(truth).ravel()
    if pred.shape[0] != truth.shape[0]:
        raise DataError('{} predictions for {} labels'.format(pred.shape[0], truth.shape[0]))
    if pred.shape[0] == 0:
        raise DataError('cannot score an empty prediction')
    pred_attack = pred == 1
    true_attack = truth == 1
    return ConfusionMatrix(tp=int(np.sum(pred_attack & true_attack)),
                           tn=int(np.sum(~pred_attack & ~true_attack)),
                           fp=int(np.sum(pred_attack & ~true_attack)),
                           fn=int(np.sum(~pred_attack & true_attack)))


def accuracy(c):
    if c.total == 0:
        raise DataError('accuracy of an empty confusion matrix')
    return (c.tp + c.tn) / float(c.total)


def detection_rate(c):
    """share of attacks flagged; None when there are no attacks"""
    if c.tp + c.fn == 0:
        return None
    return c.tp / float(c.tp + c.fn)


def false_alert_rate(c):
    """share of normal traffic flagged; None when there is no normal traffic"""
    if c.fp + c.tn == 0:
        return None
    return c.fp / float(c.fp + c.tn)


def format_rate(value, digits=2):
    """fraction as a percentage string, e.g. 0.86413 -> '86.41'"""
    if value is None:
        return UNDEFINED
    return '{:.{}f}'.format(100.0 * value, digits)
