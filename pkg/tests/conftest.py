# -*- coding:utf-8 -*-
import csv
import os

import numpy as np
import pytest

from src.dataset.synthetic import SyntheticSpec, generate_synthetic
from src.dataset.unsw_nb15 import Dataset, NUMERIC, NOMINAL, LABEL, UNSW_RAW_COLUMNS

PROTOCOLS = ('tcp', 'udp', 'arp', 'ospf')
SERVICES = ('-', 'http', 'dns', 'ftp')
STATES = ('FIN', 'INT', 'CON', 'REQ')


def make_dataset(columns, labels, kinds=None):
    """Dataset from a dict of columns; kinds default to numeric"""
    kinds = kinds or {}
    schema = [(name, kinds.get(name, NUMERIC)) for name in columns] + [('label', LABEL)]
    return Dataset(schema, columns, labels)


def write_unsw_csv(path, rows, seed=0, extra_category=None):
    """
    small file in the published 45-column layout; attack rows lean towards
    large sbytes and the 'INT' state
    """
    rng = np.random.default_rng(seed)
    with open(path, 'w', newline='', encoding='utf-8') as f:
        writer = csv.writer(f)
        writer.writerow(UNSW_RAW_COLUMNS)
        for i in range(rows):
            label = int(i % 3 != 0)
            record = []
            for name in UNSW_RAW_COLUMNS:
                if name == 'id':
                    record.append(i + 1)
                elif name == 'label':
                    record.append(label)
                elif name == 'attack_cat':
                    record.append('Generic' if label else 'Normal')
                elif name == 'proto':
                    record.append(extra_category if extra_category and i == rows - 1 else PROTOCOLS[i % 4])
                elif name == 'service':
                    record.append(SERVICES[(i // 2) % 4])
                elif name == 'state':
                    record.append('INT' if label and rng.random() < 0.8 else STATES[i % 4])
                elif name == 'sbytes':
                    record.append(int(rng.integers(500, 1000)) if label else int(rng.integers(0, 600)))
                else:
                    record.append(round(float(rng.random() * 10), 4))
            writer.writerow(record)
    return path


@pytest.fixture
def unsw_files(tmp_path):
    train = write_unsw_csv(os.path.join(str(tmp_path), 'train.csv'), 60, seed=1)
    test = write_unsw_csv(os.path.join(str(tmp_path), 'test.csv'), 30, seed=2, extra_category='sctp')
    return train, test


@pytest.fixture
def perfect_feature_data():
    """three numeric features, `a` equals the label"""
    rng = np.random.default_rng(3)
    labels = np.array([0, 1] * 20)
    return make_dataset({'a': labels.astype(float), 'b': rng.normal(size=40), 'c': rng.normal(size=40)}, labels)


@pytest.fixture
def small_synthetic():
    return generate_synthetic(SyntheticSpec(rows=400, informative_numeric=2, noise_numeric=2,
                                            nominal_features=1, class_balance=0.5), seed=7)


@pytest.fixture
def mixed_data():
    """numeric + nominal columns where the nominal one separates the classes"""
    labels = np.array([1, 1, 1, 0, 0, 0, 1, 0, 1, 0, 1, 0])
    proto = np.array(['tcp' if y else 'udp' for y in labels], dtype=object)
    dur = np.arange(12, dtype=float)
    return make_dataset({'dur': dur, 'proto': proto}, labels, kinds={'proto': NOMINAL})
