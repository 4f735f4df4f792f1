# -*- coding:utf-8 -*-
import logging
import platform
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from src.classifier.base import fit
from src.metrics.confusion import ConfusionMatrix, confusion, accuracy, detection_rate, false_alert_rate
from src.utils.artifact import TOOLCHAIN_VERSION
from src.utils.errors import ConfigError

__all__ = ['EvalReport', 'time_fit_eval', 'environment_note']

logger = logging.getLogger(__name__)


def environment_note():
    return {'toolchain': TOOLCHAIN_VERSION, 'python': platform.python_version(),
            'numpy': np.__version__, 'machine': platform.machine(), 'system': platform.system()}


@dataclass
class EvalReport:
    classifier: str
    feature_set: str  # 'full', 'wrapper' or 'custom'
    confusion: ConfusionMatrix
    acc: float
    dr: Optional[float]
    far: Optional[float]
    mbt: float  # seconds, fit + predict only
    mbt_runs: list = field(default_factory=list)
    preprocess_seconds: Optional[float] = None
    width: Optional[int] = None  # encoded input width
    seed: int = 0
    fingerprints: dict = field(default_factory=dict)
    note: str = ''
    environment: dict = field(default_factory=environment_note)

    def recompute(self):
        """(acc, dr, far) from the confusion counts alone"""
        return accuracy(self.confusion), detection_rate(self.confusion), false_alert_rate(self.confusion)

    def to_dict(self):
        values = {key: getattr(self, key) for key in self.__dataclass_fields__}
        values['confusion'] = self.confusion.to_dict()
        return values

    @classmethod
    def from_dict(cls, values):
        values = dict(values)
        values['confusion'] = ConfusionMatrix.from_dict(values['confusion'])
        return cls(**values)


def time_fit_eval(spec, train, test, feature_set='custom', repeats=1, threads=1):
    """
    fit on train and predict test under a monotonic clock; the reported time is the
    median over `repeats` runs, the metrics come from the last one
    :param spec: ClassifierSpec
    :param train: prepared training Dataset
    :param test: prepared test Dataset
    :return: EvalReport
    """
    if not isinstance(repeats, int) or repeats < 1:
        raise ConfigError('repeats must be an integer >= 1')

    runs, predictions = [], None
    for _ in range(repeats):
        start = time.perf_counter()
        model = fit(spec, train, threads=threads)
        predictions = model.predict(test)
        runs.append(time.perf_counter() - start)

    matrix = confusion(predictions, test.labels)
    report = EvalReport(classifier=spec.kind, feature_set=feature_set, confusion=matrix,
                        acc=accuracy(matrix), dr=detection_rate(matrix), far=false_alert_rate(matrix),
                        mbt=float(np.median(runs)), mbt_runs=runs, width=len(train.attributes), seed=spec.seed,
                        fingerprints={'train': train.fingerprint(), 'test': test.fingerprint()})
    logger.info('%s on %s: acc %.4f, mbt %.3fs', spec.kind, feature_set, report.acc, report.mbt)
    return report
