# -*- coding:utf-8 -*-
"""
Min-max normalisation to [0, 1], fitted on training rows only.

x_new = (x - min(x)) / (max(x) - min(x)) through sklearn's MinMaxScaler; zero-range columns
map to 0 and test values outside the training range are left unclipped.
"""
import logging
from dataclasses import dataclass

import numpy as np
from sklearn.preprocessing import MinMaxScaler

from src.dataset.unsw_nb15 import Dataset
from src.utils.errors import DataError

__all__ = ['NormalizerStats', 'fit_minmax', 'apply_minmax']

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NormalizerStats:
    columns: tuple
    minimum: tuple
    maximum: tuple

    def range_of(self, name):
        i = self.columns.index(name)
        return self.minimum[i], self.maximum[i]

    def scaler(self):
        """MinMaxScaler holding these ranges; fitting on the two extreme rows reproduces them"""
        return MinMaxScaler(clip=False).fit(np.array([self.minimum, self.maximum], dtype=np.float64))

    def to_dict(self):
        return {'columns': list(self.columns), 'minimum': list(self.minimum), 'maximum': list(self.maximum)}

    @classmethod
    def from_dict(cls, values):
        return cls(columns=tuple(values['columns']), minimum=tuple(float(v) for v in values['minimum']),
                   maximum=tuple(float(v) for v in values['maximum']))


def _numeric_matrix(d, names):
    return np.column_stack([d.column(name).astype(np.float64) for name in names])


def fit_minmax(train):
    """
    per numeric column min and max over the training rows
    """
    if train.row_count == 0:
        raise DataError('cannot fit min-max statistics on an empty dataset')
    columns = tuple(train.numeric_names)
    if not columns:
        return NormalizerStats(columns=(), minimum=(), maximum=())
    scaler = MinMaxScaler().fit(_numeric_matrix(train, columns))
    return NormalizerStats(columns=columns, minimum=tuple(float(v) for v in scaler.data_min_),
                           maximum=tuple(float(v) for v in scaler.data_max_))


def apply_minmax(stats, d):
    missing = [name for name in d.numeric_names if name not in stats.columns]
    if missing:
        raise DataError('no min-max statistics for column(s): {}'.format(missing))

    columns = {name: d.column(name) for name in d.attribute_names}
    numeric = tuple(d.numeric_names)
    if numeric and d.row_count:
        positions = [stats.columns.index(name) for name in numeric]
        low = np.array([stats.minimum[i] for i in positions])
        high = np.array([stats.maximum[i] for i in positions])
        scaled = NormalizerStats(columns=numeric, minimum=tuple(low), maximum=tuple(high)).scaler().transform(
            _numeric_matrix(d, numeric))
        scaled[:, high - low <= 0] = 0.0
        for index, name in enumerate(numeric):
            columns[name] = scaled[:, index]
    return Dataset(d.schema, columns, d.labels)
