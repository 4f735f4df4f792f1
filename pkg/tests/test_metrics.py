# -*- coding:utf-8 -*-
import numpy as np
import pandas as pd
import pytest

from src.classifier.base import ClassifierSpec
from src.metrics.benchmark import (load_reports, render_performance_table, render_timing_table, reports_frame,
                                   run_benchmark, write_reports, STAND_IN_NOTE)
from src.metrics.confusion import (ConfusionMatrix, accuracy, confusion, detection_rate, false_alert_rate,
                                   format_rate, UNDEFINED)
from src.metrics.timing import EvalReport, time_fit_eval
from src.preprocess.feature_subset import FeatureSubset
from src.preprocess.pipeline import prepare_holdout
from src.utils.config import Config
from src.utils.errors import DataError, EncodedWidthError
from src.wrapper.validation import validate_selection


def _report(kind, feature_set, matrix, mbt=1.0):
    return EvalReport(classifier=kind, feature_set=feature_set, confusion=matrix, acc=accuracy(matrix),
                      dr=detection_rate(matrix), far=false_alert_rate(matrix), mbt=mbt, mbt_runs=[mbt])


def test_rates_hand_computed():
    c = ConfusionMatrix(tp=90, tn=80, fp=20, fn=10)
    assert accuracy(c) == pytest.approx(0.85)
    assert detection_rate(c) == pytest.approx(0.90)
    assert false_alert_rate(c) == pytest.approx(0.20)


def test_published_forest_counts_are_consistent():
    c = ConfusionMatrix(tp=44403, tn=26740, fp=10260, fn=929)
    assert (format_rate(accuracy(c)), format_rate(detection_rate(c)), format_rate(false_alert_rate(c))) == \
        ('86.41', '97.95', '27.73')


def test_perfect_and_undefined_rates():
    perfect = confusion([1, 0, 1], [1, 0, 1])
    assert (accuracy(perfect), detection_rate(perfect), false_alert_rate(perfect)) == (1.0, 1.0, 0.0)

    no_attacks = confusion([0, 1, 0], [0, 0, 0])
    assert detection_rate(no_attacks) is None
    assert format_rate(detection_rate(no_attacks)) == UNDEFINED
    no_normal = confusion([1, 1], [1, 1])
    assert false_alert_rate(no_normal) is None


def test_confusion_errors():
    with pytest.raises(DataError):
        confusion([1, 0], [1])
    with pytest.raises(DataError):
        confusion([], [])
    with pytest.raises(DataError):
        ConfusionMatrix(tp=-1, tn=0, fp=0, fn=0)


def test_confusion_counts_every_row():
    rng = np.random.default_rng(0)
    pred, truth = rng.integers(0, 2, 500), rng.integers(0, 2, 500)
    c = confusion(pred, truth)
    assert c.total == 500
    assert c.tp == np.sum((pred == 1) & (truth == 1))


def test_accuracy_decomposes_into_rates():
    rng = np.random.default_rng(1)
    for _ in range(1000):
        tp, tn, fp, fn = (int(v) for v in rng.integers(1, 10000, size=4))
        c = ConfusionMatrix(tp=tp, tn=tn, fp=fp, fn=fn)
        n = float(c.total)
        rebuilt = detection_rate(c) * (tp + fn) / n + (1.0 - false_alert_rate(c)) * (fp + tn) / n
        assert accuracy(c) == pytest.approx(rebuilt, rel=1e-12)
        assert accuracy(c) == (tp + tn) / n


def test_rate_invariances():
    base = ConfusionMatrix(tp=30, tn=50, fp=5, fn=15)
    assert detection_rate(base) == detection_rate(ConfusionMatrix(tp=30, tn=7, fp=90, fn=15))
    assert false_alert_rate(base) == false_alert_rate(ConfusionMatrix(tp=1, tn=50, fp=5, fn=99))


def test_time_fit_eval_matches_separate_scoring(small_synthetic):
    train, test = small_synthetic.take(np.arange(300)), small_synthetic.take(np.arange(300, 400))
    _, prepared_train, prepared_test = prepare_holdout(train, test)
    spec = ClassifierSpec(kind='forest', params={'n_trees': 5})
    report = time_fit_eval(spec, prepared_train, prepared_test, repeats=3)
    assert report.mbt > 0.0
    assert len(report.mbt_runs) == 3
    assert report.mbt == sorted(report.mbt_runs)[1]
    assert report.recompute() == (report.acc, report.dr, report.far)
    assert report.confusion.total == 100
    assert report.fingerprints['test'] == prepared_test.fingerprint()


def test_report_round_trip(tmp_path):
    reports = [_report('forest', 'wrapper', ConfusionMatrix(tp=44403, tn=26740, fp=10260, fn=929), mbt=37.0),
               _report('gnb', 'wrapper', ConfusionMatrix(tp=0, tn=4, fp=0, fn=0), mbt=0.5)]
    paths = write_reports(reports, str(tmp_path), config_hash='deadbeef')
    restored = load_reports(paths['reports.json'])
    assert [r.to_dict() for r in restored] == [r.to_dict() for r in reports]

    frame = pd.read_csv(paths['reports.csv'])
    assert list(frame['classifier']) == ['forest', 'gnb']
    assert set(frame['config_hash']) == {'deadbeef'}
    with open(paths['performance.txt'], encoding='utf-8') as f:
        text = f.read()
    assert 'deadbeef' in text
    assert '86.41 [86.41]' in text


def test_rendered_tables():
    reports = [_report('forest', 'full', ConfusionMatrix(tp=9, tn=9, fp=1, fn=1), mbt=90.0),
               _report('linsvm', 'full', ConfusionMatrix(tp=0, tn=5, fp=0, fn=0), mbt=2.0)]
    performance = render_performance_table(reports)
    assert 'RF' in performance and 'SVM' in performance
    assert '90.00 [86.82]' in performance
    assert UNDEFINED in performance
    assert STAND_IN_NOTE in performance

    timing = render_timing_table(reports)
    assert '1.50m [44.40s]' in timing
    assert '2.00s' in timing


def test_reports_frame_columns():
    frame = reports_frame([_report('gnb', 'full', ConfusionMatrix(tp=1, tn=1, fp=0, fn=0))], 'abc')
    assert {'tp', 'tn', 'fp', 'fn', 'acc', 'dr', 'far', 'mbt', 'config_hash'} <= set(frame.columns)


def _bench_config(feature_sets, classifiers, **extra):
    config = Config()
    config.update(dict(feature_sets=feature_sets, classifiers=classifiers, schema='infer', **extra))
    return config.validate()


def test_single_cell_benchmark_equals_validate_selection(small_synthetic):
    train, test = small_synthetic.take(np.arange(300)), small_synthetic.take(np.arange(300, 400))
    config = _bench_config({'custom': ['inf_0', 'nom_0']}, [{'kind': 'gnb'}], seed=4)
    reports = run_benchmark(config, train=train, test=test)
    assert len(reports) == 1

    direct = validate_selection(train, test, FeatureSubset(names=['inf_0', 'nom_0']),
                                ClassifierSpec(kind='gnb', seed=4), feature_set='custom')
    assert reports[0].confusion == direct.confusion
    assert (reports[0].acc, reports[0].dr, reports[0].far) == (direct.acc, direct.dr, direct.far)
    assert reports[0].width == direct.width == 1 + 4


def test_benchmark_grid_order_and_stand_in_note(small_synthetic):
    train, test = small_synthetic.take(np.arange(300)), small_synthetic.take(np.arange(300, 400))
    config = _bench_config({'full': 'full', 'wrapper': ['inf_0', 'inf_1']},
                           [{'kind': 'gnb'}, {'kind': 'linsvm', 'params': {'epochs': 2}}])
    reports = run_benchmark(config, train=train, test=test)
    assert [(r.feature_set, r.classifier) for r in reports] == [
        ('full', 'gnb'), ('full', 'linsvm'), ('wrapper', 'gnb'), ('wrapper', 'linsvm')]
    assert reports[1].note == STAND_IN_NOTE

    again = run_benchmark(config, train=train, test=test)
    assert [r.confusion for r in again] == [r.confusion for r in reports]


def test_benchmark_checks_encoded_width(small_synthetic):
    train, test = small_synthetic.take(np.arange(300)), small_synthetic.take(np.arange(300, 400))
    config = _bench_config({'full': 'full'}, [{'kind': 'gnb'}], expected_widths={'full': 99})
    with pytest.raises(EncodedWidthError) as err:
        run_benchmark(config, train=train, test=test)
    assert err.value.observed == 4 + 4
