# -*- coding:utf-8 -*-
"""
One-hot encoding of nominal columns.

Vocabularies are the categories seen in the training rows, then the new ones seen in
the testing rows, each in first-appearance order. sklearn's OneHotEncoder is built on that
fixed vocabulary, so categories outside it encode as the all-zero vector.
"""
import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd
from sklearn.preprocessing import OneHotEncoder

from src.dataset.unsw_nb15 import Dataset, NUMERIC, LABEL
from src.utils.errors import DataError, SchemaMismatchError

__all__ = ['EncoderMap', 'fit_onehot', 'apply_onehot', 'encoded_name']

logger = logging.getLogger(__name__)


def encoded_name(column, category):
    return '{}={}'.format(column, category)


@dataclass(frozen=True)
class EncoderMap:
    columns: tuple
    vocabularies: tuple  # one tuple of categories per column

    def vocabulary(self, name):
        return self.vocabularies[self.columns.index(name)]

    def to_dict(self):
        return {'columns': list(self.columns), 'vocabularies': [list(v) for v in self.vocabularies]}

    @classmethod
    def from_dict(cls, values):
        return cls(columns=tuple(values['columns']),
                   vocabularies=tuple(tuple(v) for v in values['vocabularies']))


def fit_onehot(train, test=None):
    """
    :param train: training Dataset
    :param test: optional testing Dataset sharing train's schema
    :return: EncoderMap over train's nominal columns
    """
    if test is not None and train.signature() != test.signature():
        raise SchemaMismatchError('training and testing sets have different schemas')

    columns = tuple(train.nominal_names)
    vocabularies = []
    for name in columns:
        values = train.column(name)
        if test is not None:
            values = np.concatenate([values, test.column(name)])
        vocabularies.append(tuple(str(category) for category in pd.unique(values)))
    encoder = EncoderMap(columns=columns, vocabularies=tuple(vocabularies))
    logger.debug('one-hot vocabularies: %s', {name: len(v) for name, v in zip(columns, vocabularies)})
    return encoder


def apply_onehot(encoder, d):
    """
    numeric columns pass through first (original order), then one indicator
    block per nominal column (original nominal order)
    """
    missing = [name for name in d.nominal_names if name not in encoder.columns]
    if missing:
        raise DataError('no one-hot vocabulary for column(s): {}'.format(missing))

    schema, columns = [], {}
    for name in d.numeric_names:
        schema.append((name, NUMERIC))
        columns[name] = d.column(name)
    # a column with an empty vocabulary has no indicators
    nominal = [name for name in d.nominal_names if encoder.vocabulary(name)]
    if nominal:
        vocabularies = [list(encoder.vocabulary(name)) for name in nominal]
        onehot = OneHotEncoder(categories=vocabularies, handle_unknown='ignore', sparse_output=False,
                               dtype=np.float64)
        # the categories are fixed, so fitting on one row of them only sets the layout
        onehot.fit(np.array([[vocabulary[0] for vocabulary in vocabularies]], dtype=object))
        if d.row_count:
            values = np.column_stack([d.column(name).astype(str).astype(object) for name in nominal])
            matrix = onehot.transform(values)
        else:
            matrix = np.zeros((0, sum(len(vocabulary) for vocabulary in vocabularies)))
        offset = 0
        for name, vocabulary in zip(nominal, vocabularies):
            for category in vocabulary:
                column = encoded_name(name, category)
                schema.append((column, NUMERIC))
                columns[column] = matrix[:, offset]
                offset += 1
    schema.append((d.label_name, LABEL))
    return Dataset(schema, columns, d.labels)
