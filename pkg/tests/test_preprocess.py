# -*- coding:utf-8 -*-
import numpy as np
import pytest

from conftest import make_dataset
from src.dataset.unsw_nb15 import NOMINAL, load_split
from src.preprocess.encoding import apply_onehot, fit_onehot
from src.preprocess.feature_subset import FeatureSubset, TABLE2_FEATURES, full_subset, project, table2_subset
from src.preprocess.normalization import apply_minmax, fit_minmax
from src.preprocess.pipeline import Preprocessor, prepare_holdout
from src.utils.errors import DataError, SchemaMismatchError


def test_minmax_definition_and_endpoints():
    train = make_dataset({'x': [2.0, 6.0, 10.0], 'c': [5.0, 5.0, 5.0]}, [0, 1, 0])
    stats = fit_minmax(train)
    assert stats.range_of('x') == (2.0, 10.0)
    assert stats.range_of('c') == (5.0, 5.0)
    scaled = apply_minmax(stats, train)
    np.testing.assert_array_equal(scaled.column('x'), [0.0, 0.5, 1.0])
    np.testing.assert_array_equal(scaled.column('c'), [0.0, 0.0, 0.0])


def test_minmax_does_not_clip_test_values():
    stats = fit_minmax(make_dataset({'x': [0.0, 10.0]}, [0, 1]))
    scaled = apply_minmax(stats, make_dataset({'x': [-5.0, 20.0]}, [0, 1]))
    np.testing.assert_array_equal(scaled.column('x'), [-0.5, 2.0])


def test_minmax_preserves_order_and_range(small_synthetic):
    scaled = apply_minmax(fit_minmax(small_synthetic), small_synthetic)
    for name in small_synthetic.numeric_names:
        values = scaled.column(name)
        assert values.min() == 0.0 and values.max() == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_array_equal(np.argsort(values, kind='mergesort'),
                                      np.argsort(small_synthetic.column(name), kind='mergesort'))
    assert list(scaled.column('nom_0')) == list(small_synthetic.column('nom_0'))


def test_minmax_errors():
    with pytest.raises(DataError):
        fit_minmax(make_dataset({'x': []}, []))
    stats = fit_minmax(make_dataset({'x': [1.0]}, [1]))
    with pytest.raises(DataError):
        apply_minmax(stats, make_dataset({'y': [1.0]}, [1]))


def test_onehot_first_appearance_order():
    d = make_dataset({'protocol_type': np.array(['UDP', 'TCP', 'ICMP', 'TCP'], dtype=object)}, [0, 1, 1, 0],
                     kinds={'protocol_type': NOMINAL})
    encoder = fit_onehot(d)
    assert encoder.vocabulary('protocol_type') == ('UDP', 'TCP', 'ICMP')
    encoded = apply_onehot(encoder, d)
    assert encoded.attribute_names == ['protocol_type=UDP', 'protocol_type=TCP', 'protocol_type=ICMP']
    np.testing.assert_array_equal(encoded.to_matrix(), [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 1, 0]])


def test_onehot_union_vocabulary_and_unknown_category():
    kinds = {'p': NOMINAL}
    train = make_dataset({'p': np.array(['a', 'b'], dtype=object)}, [0, 1], kinds)
    test = make_dataset({'p': np.array(['c', 'a'], dtype=object)}, [1, 0], kinds)
    encoder = fit_onehot(train, test)
    assert encoder.vocabulary('p') == ('a', 'b', 'c')

    train_only = fit_onehot(train)
    encoded = apply_onehot(train_only, test)
    np.testing.assert_array_equal(encoded.to_matrix(), [[0, 0], [1, 0]])


def test_onehot_single_category_and_numeric_passthrough(mixed_data):
    single = make_dataset({'p': np.array(['x', 'x'], dtype=object)}, [0, 1], {'p': NOMINAL})
    np.testing.assert_array_equal(apply_onehot(fit_onehot(single), single).to_matrix(), [[1], [1]])

    numeric = make_dataset({'a': [1.0, 2.0]}, [0, 1])
    assert apply_onehot(fit_onehot(numeric), numeric) == numeric

    encoded = apply_onehot(fit_onehot(mixed_data), mixed_data)
    assert encoded.attribute_names[0] == 'dur'
    block = encoded.to_matrix()[:, 1:]
    assert set(block.sum(axis=1)) == {1.0}


def test_onehot_schema_mismatch(mixed_data):
    other = make_dataset({'dur': [1.0]}, [1])
    with pytest.raises(SchemaMismatchError):
        fit_onehot(mixed_data, other)


def test_table2_subset_substitutes_stepb():
    subset = table2_subset()
    assert len(subset) == 19
    assert 'stcpb' in subset.names and 'stepb' not in subset.names
    assert 'stepb' in TABLE2_FEATURES
    assert 'stcpb' in subset.note()


def test_project_contract(mixed_data):
    assert project(mixed_data, full_subset(mixed_data)) == mixed_data
    reordered = project(mixed_data, ['proto', 'dur'])
    assert reordered.attribute_names == ['proto', 'dur']
    assert project(reordered, ['proto', 'dur']) == reordered
    empty = project(mixed_data, [])
    assert empty.attributes == () and empty.row_count == mixed_data.row_count
    with pytest.raises(DataError):
        project(mixed_data, ['nope'])
    with pytest.raises(DataError):
        project(mixed_data, ['label'])
    with pytest.raises(DataError):
        FeatureSubset(names=['dur', 'dur'])


def test_unsw_shaped_widths(unsw_files):
    train_path, test_path = unsw_files
    train, test = load_split(train_path), load_split(test_path)
    # 39 numeric + proto (4 + 'sctp' from test) + service (4) + state (4)
    _, full_train, full_test = prepare_holdout(train, test)
    assert len(full_train.attributes) == 39 + 5 + 4 + 4
    assert full_test.signature() == full_train.signature()

    # table2 keeps proto and service, 17 numeric columns
    _, t2_train, _ = prepare_holdout(train, test, table2_subset())
    assert len(t2_train.attributes) == 17 + 5 + 4


def test_preprocessor_round_trip_is_bit_identical(unsw_files):
    train_path, test_path = unsw_files
    train, test = load_split(train_path), load_split(test_path)
    preprocessor, _, prepared_test = prepare_holdout(train, test, table2_subset())
    restored = Preprocessor.from_dict(preprocessor.to_dict())
    assert restored.transform(test) == prepared_test


def test_preprocessor_rejects_other_schema(unsw_files, mixed_data):
    train_path, test_path = unsw_files
    preprocessor, _, _ = prepare_holdout(load_split(train_path), load_split(test_path))
    with pytest.raises(DataError):
        preprocessor.transform(mixed_data)
