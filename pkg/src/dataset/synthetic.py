# -*- coding:utf-8 -*-
"""
Seeded synthetic flow-like datasets with a known ground truth, used as the
test substrate for the tree, the wrapper search and the CLI.

Columns are named inf_<i> (informative numeric), noise_<i> (label-independent
numeric) and nom_<i> (nominal, label-correlated), followed by `label`.
"""
import logging
from dataclasses import dataclass, asdict

import numpy as np

from src.dataset.unsw_nb15 import Dataset, NUMERIC, NOMINAL, LABEL
from src.utils.errors import ConfigError

__all__ = ['SyntheticSpec', 'generate_synthetic', 'informative_names', 'noise_names']

logger = logging.getLogger(__name__)

# distance between the class-conditional means of an informative column, in standard deviations
MEAN_SEPARATION = 2.0
NOMINAL_CATEGORIES = ('c0', 'c1', 'c2', 'c3')
ATTACK_CATEGORY_P = (0.4, 0.3, 0.2, 0.1)
NORMAL_CATEGORY_P = (0.1, 0.2, 0.3, 0.4)


@dataclass(frozen=True)
class SyntheticSpec:
    rows: int = 5000
    informative_numeric: int = 4
    noise_numeric: int = 12
    nominal_features: int = 0
    class_balance: float = 0.5  # attack share

    @classmethod
    def from_dict(cls, values):
        try:
            return cls(**values)
        except TypeError as err:
            raise ConfigError('bad synthetic block: {}'.format(err))

    def to_dict(self):
        return asdict(self)

    def validate(self):
        if not isinstance(self.rows, int) or self.rows < 1:
            raise ConfigError('synthetic rows must be an integer >= 1')
        for field in ('informative_numeric', 'noise_numeric', 'nominal_features'):
            value = getattr(self, field)
            if not isinstance(value, int) or value < 0:
                raise ConfigError('synthetic {} must be an integer >= 0'.format(field))
        if not 0.0 < self.class_balance < 1.0:
            raise ConfigError('synthetic class_balance must be in (0, 1)')
        return self


def informative_names(spec):
    return ['inf_{}'.format(i) for i in range(spec.informative_numeric)]


def noise_names(spec):
    return ['noise_{}'.format(i) for i in range(spec.noise_numeric)]


def generate_synthetic(spec, seed):
    """
    :param spec: SyntheticSpec (or a dict with its fields)
    :param seed: integer seed; equal seeds give bitwise-identical datasets
    :return: Dataset
    """
    if isinstance(spec, dict):
        spec = SyntheticSpec.from_dict(spec)
    spec.validate()
    rng = np.random.default_rng(seed)

    # exact class counts, shuffled
    attack_count = min(max(int(round(spec.rows * spec.class_balance)), 0), spec.rows)
    labels = np.zeros(spec.rows, dtype=np.int64)
    labels[:attack_count] = 1
    labels = rng.permutation(labels)

    schema, columns = [], {}
    for name in informative_names(spec):
        columns[name] = rng.normal(loc=MEAN_SEPARATION * labels, scale=1.0)
        schema.append((name, NUMERIC))
    for name in noise_names(spec):
        columns[name] = rng.normal(loc=0.0, scale=1.0, size=spec.rows)
        schema.append((name, NUMERIC))
    for i in range(spec.nominal_features):
        name = 'nom_{}'.format(i)
        draws = np.where(labels == 1,
                         rng.choice(len(NOMINAL_CATEGORIES), size=spec.rows, p=ATTACK_CATEGORY_P),
                         rng.choice(len(NOMINAL_CATEGORIES), size=spec.rows, p=NORMAL_CATEGORY_P))
        columns[name] = np.array(NOMINAL_CATEGORIES, dtype=object)[draws]
        schema.append((name, NOMINAL))
    schema.append(('label', LABEL))

    dataset = Dataset(schema, columns, labels)
    logger.debug('generated synthetic %s with seed %d', dataset, seed)
    return dataset
