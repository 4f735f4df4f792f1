# -*- coding:utf-8 -*-
import numpy as np
import pytest

from conftest import make_dataset
from src.classifier.base import ClassifierSpec
from src.dataset.synthetic import SyntheticSpec, generate_synthetic, informative_names, noise_names
from src.preprocess.feature_subset import FeatureSubset
from src.wrapper.best_first import (SearchConfig, SubsetEvaluator, best_first_search, evaluate_subset,
                                    exhaustive_search, read_trace, selected_from_trace)
from src.wrapper.folds import fold_class_counts, stratified_folds, subsample_dataset
from src.wrapper.validation import resolve_feature_source, validate_selection
from src.utils.errors import ConfigError, DataError


# ----------------------------------------------------------------------
# folds
# ----------------------------------------------------------------------
def test_folds_are_stratified_and_seeded():
    d = make_dataset({'x': np.arange(10, dtype=float)}, [1] * 5 + [0] * 5)
    assignment = stratified_folds(d, 5, seed=0)
    counts = fold_class_counts(assignment, d.labels, 5)
    np.testing.assert_array_equal(counts, np.ones((5, 2)))
    np.testing.assert_array_equal(stratified_folds(d, 5, seed=0), assignment)


def test_folds_keep_class_mix_within_one_row(small_synthetic):
    k = 7
    assignment = stratified_folds(small_synthetic, k, seed=3)
    counts = fold_class_counts(assignment, small_synthetic.labels, k)
    totals = np.bincount(small_synthetic.labels, minlength=2)
    assert np.all(np.abs(counts - totals / float(k)) < 1.0)
    assert counts.sum() == small_synthetic.row_count


def test_folds_errors():
    d = make_dataset({'x': np.arange(6, dtype=float)}, [1, 1, 1, 1, 1, 0])
    with pytest.raises(DataError):
        stratified_folds(d, 3, seed=0)
    with pytest.raises(ConfigError):
        stratified_folds(d, 1, seed=0)


def test_subsample_is_stratified(small_synthetic):
    part = subsample_dataset(small_synthetic, 0.25, seed=1)
    assert part.row_count == 100
    assert abs(part.labels.mean() - small_synthetic.labels.mean()) <= 0.01
    assert subsample_dataset(small_synthetic, None, seed=1) is small_synthetic


# ----------------------------------------------------------------------
# merit
# ----------------------------------------------------------------------
def test_empty_subset_merit_is_majority_share(small_synthetic):
    cfg = SearchConfig()
    merit = evaluate_subset(small_synthetic, [], cfg)
    assert merit == pytest.approx(max(small_synthetic.labels.mean(), 1.0 - small_synthetic.labels.mean()))


def test_perfect_feature_has_full_merit(perfect_feature_data):
    assert evaluate_subset(perfect_feature_data, ['a'], SearchConfig()) == 1.0


def test_merit_is_memoised(perfect_feature_data):
    evaluator = SubsetEvaluator(perfect_feature_data, SearchConfig(folds=4))
    first = evaluator.evaluate(('b', 'a'))
    assert evaluator.fits == 4
    assert evaluator.evaluate(['a', 'b']) == first
    assert evaluator.evaluate(FeatureSubset(names=['a', 'b'])) == first
    assert evaluator.fits == 4
    with pytest.raises(DataError):
        evaluator.evaluate(['z'])


def test_search_config_validation():
    with pytest.raises(ConfigError):
        SearchConfig(folds=1).validate()
    with pytest.raises(ConfigError):
        SearchConfig(termination=0).validate()
    with pytest.raises(ConfigError):
        SearchConfig(direction='backward').validate()
    with pytest.raises(ConfigError):
        SearchConfig(subsample=1.5).validate()


# ----------------------------------------------------------------------
# best-first search
# ----------------------------------------------------------------------
def test_search_finds_the_perfect_feature(perfect_feature_data):
    result = best_first_search(perfect_feature_data, SearchConfig())
    assert result.best.names == ('a',)
    assert result.merit == 1.0
    assert exhaustive_search(perfect_feature_data, SearchConfig()).best.names == ('a',)


def test_unbounded_search_matches_exhaustive_merit():
    spec = SyntheticSpec(rows=120, informative_numeric=3, noise_numeric=4, nominal_features=1)
    d = generate_synthetic(spec, 9)
    cfg = SearchConfig(termination=None, seed=2)
    evaluator = SubsetEvaluator(d, cfg)
    oracle = exhaustive_search(d, cfg, evaluator=evaluator)
    result = best_first_search(d, cfg)
    assert result.trace.summary['stopped'] == 'exhausted'
    assert result.trace.summary['evaluated'] == 2 ** 8
    assert result.merit == pytest.approx(oracle.merit, abs=1e-6)


def test_single_attribute_dataset():
    labels = [0, 1] * 10
    d = make_dataset({'only': np.array(labels, dtype=float)}, labels)
    result = best_first_search(d, SearchConfig(termination=3))
    assert result.best.names == ('only',)
    assert result.trace.summary['stopped'] == 'exhausted'
    assert len(result.trace.records) == 2

    with pytest.raises(DataError):
        best_first_search(make_dataset({}, labels), SearchConfig())


def test_search_recovers_informative_features():
    spec = SyntheticSpec(rows=5000, informative_numeric=4, noise_numeric=12)
    d = generate_synthetic(spec, 0)
    cfg = SearchConfig(termination=5, threads=4)
    result = best_first_search(d, cfg)
    chosen = set(result.best.names)
    assert set(informative_names(spec)) <= chosen
    assert len(chosen & set(noise_names(spec))) <= 2
    assert result.merit >= evaluate_subset(d, [], cfg) + 0.25


def test_trace_invariants(small_synthetic, tmp_path):
    path = str(tmp_path / 'trace.jsonl')
    result = best_first_search(small_synthetic, SearchConfig(termination=2), trace_path=path,
                               tags={'config_hash': 'abc'})
    records = result.trace.records
    best = result.trace.best_so_far
    assert all(later >= earlier for earlier, later in zip(best, best[1:]))
    counter, best_merit = 0, records[0]['merit']
    for record in records:
        counter = 0 if record['best_merit'] > best_merit + 1e-6 else counter + 1
        best_merit = record['best_merit']
        assert record['non_improving'] == counter
    assert records[-1]['non_improving'] == 2
    assert result.trace.summary['stopped'] == 'termination'
    assert result.trace.summary['fs_seconds'] >= 0.0

    parsed = read_trace(path)
    assert parsed['header']['config_hash'] == 'abc'
    assert parsed['header']['fingerprint'] == small_synthetic.fingerprint()
    assert len(parsed['expansions']) == len(records)
    assert parsed['summary']['selected'] == list(result.best.names)
    assert parsed['summary']['fs_seconds'] == result.trace.summary['fs_seconds']
    assert selected_from_trace(path) == result.best


def test_threads_do_not_change_the_result(small_synthetic):
    serial = best_first_search(small_synthetic, SearchConfig(threads=1))
    parallel = best_first_search(small_synthetic, SearchConfig(threads=4))
    assert serial.best == parallel.best
    assert serial.trace.records == parallel.trace.records


def test_resume_reuses_every_merit(small_synthetic, tmp_path):
    path = str(tmp_path / 'trace.jsonl')
    first = best_first_search(small_synthetic, SearchConfig(), trace_path=path)
    again = best_first_search(small_synthetic, SearchConfig(), trace_path=path, resume_from=path)
    assert again.best == first.best
    assert again.merit == first.merit
    assert again.trace.summary['fits'] == 0

    with pytest.raises(ConfigError):
        best_first_search(small_synthetic, SearchConfig(seed=5), resume_from=path)


def test_interrupted_trace_has_no_selection(small_synthetic, tmp_path):
    path = str(tmp_path / 'trace.jsonl')
    best_first_search(small_synthetic, SearchConfig(), trace_path=path)
    with open(path, 'r', encoding='utf-8') as f:
        lines = f.readlines()
    with open(path, 'w', encoding='utf-8') as f:
        f.writelines(lines[:-1])
        f.write('{"type": "expans')
    parsed = read_trace(path)
    assert parsed['summary'] is None
    assert len(parsed['expansions']) == len(lines) - 2
    with pytest.raises(DataError):
        selected_from_trace(path)

    # the cut trace still seeds a resumed run
    resumed = best_first_search(small_synthetic, SearchConfig(), resume_from=path)
    assert resumed.trace.summary['fits'] == 0


# ----------------------------------------------------------------------
# holdout validation
# ----------------------------------------------------------------------
def test_validate_empty_subset_gives_majority_accuracy(small_synthetic):
    train = small_synthetic.take(np.arange(0, 300))
    test = small_synthetic.take(np.arange(300, 400))
    report = validate_selection(train, test, FeatureSubset(names=[]), ClassifierSpec(kind='tree'))
    majority = int(train.labels.mean() >= 0.5)
    assert report.acc == pytest.approx(np.mean(test.labels == majority))
    assert report.width == 0
    assert report.preprocess_seconds >= 0.0


def test_validate_selection_scores_informative_subset(small_synthetic):
    train = small_synthetic.take(np.arange(0, 300))
    test = small_synthetic.take(np.arange(300, 400))
    subset = FeatureSubset(names=['inf_0', 'inf_1'])
    report = validate_selection(train, test, subset, ClassifierSpec(kind='gnb'))
    assert report.acc > 0.8
    assert report.recompute() == (report.acc, report.dr, report.far)
    assert report.width == 2


def test_resolve_feature_source(small_synthetic, tmp_path):
    assert resolve_feature_source('full', small_synthetic).names == tuple(small_synthetic.attribute_names)
    assert resolve_feature_source(['inf_1'], small_synthetic).names == ('inf_1',)
    path = str(tmp_path / 'trace.jsonl')
    result = best_first_search(small_synthetic, SearchConfig(), trace_path=path)
    assert resolve_feature_source({'trace': path}, small_synthetic) == result.best
    with pytest.raises(ConfigError):
        resolve_feature_source(42, small_synthetic)
    with pytest.raises(DataError):
        resolve_feature_source(['missing'], small_synthetic)
