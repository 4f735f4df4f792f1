# -*- coding:utf-8 -*-
"""
The feature-set x classifier comparison grid and its report files.

Reports are written three ways: an aligned text table per concern (detection metrics,
model building time), a CSV with one row per grid cell, and a JSON artifact with the
full confusion counts. Published reference figures are printed next to the measured
ones for the `full` and `wrapper` feature sets.
"""
import logging
import os

import pandas as pd

from src.classifier.base import ClassifierSpec
from src.dataset.unsw_nb15 import load_split
from src.metrics.confusion import format_rate
from src.metrics.timing import EvalReport, time_fit_eval
from src.preprocess.pipeline import prepare_holdout
from src.utils.artifact import TOOLCHAIN_VERSION, save_artifact, load_artifact
from src.utils.errors import EncodedWidthError
from src.wrapper.validation import resolve_feature_source

__all__ = ['run_benchmark', 'render_performance_table', 'render_timing_table', 'reports_frame',
           'write_reports', 'load_reports', 'PUBLISHED_PERFORMANCE', 'PUBLISHED_MBT', 'DISPLAY_NAMES',
           'STAND_IN_NOTE']

logger = logging.getLogger(__name__)

DISPLAY_NAMES = {'mlp': 'ANN', 'linsvm': 'SVM', 'knn': 'KNN', 'forest': 'RF', 'gnb': 'NB', 'tree': 'DT'}
STAND_IN_NOTE = 'stand-in, not comparable'

# published ACC / DR / FAR in percent
PUBLISHED_PERFORMANCE = {
    ('mlp', 'full'): (86.00, 98.62, 29.45), ('mlp', 'wrapper'): (82.08, 97.94, 37.36),
    ('linsvm', 'full'): (81.60, 99.64, 40.51), ('linsvm', 'wrapper'): (79.11, 99.31, 45.64),
    ('knn', 'full'): (84.78, 96.46, 29.53), ('knn', 'wrapper'): (83.21, 96.44, 33.01),
    ('forest', 'full'): (86.82, 98.70, 27.74), ('forest', 'wrapper'): (86.41, 97.95, 27.73),
    ('gnb', 'full'): (55.61, 19.39, 0.01), ('gnb', 'wrapper'): (55.61, 19.38, 0.01),
}
# published model building time in seconds
PUBLISHED_MBT = {
    ('mlp', 'full'): 676.2, ('mlp', 'wrapper'): 297.0,
    ('linsvm', 'full'): 10900.8, ('linsvm', 'wrapper'): 15546.0,
    ('knn', 'full'): 1075.2, ('knn', 'wrapper'): 656.4,
    ('forest', 'full'): 44.4, ('forest', 'wrapper'): 37.8,
    ('gnb', 'full'): 4.64, ('gnb', 'wrapper'): 2.86,
}


def run_benchmark(config, train=None, test=None):
    """
    every feature set of the config against every classifier, feature sets outermost
    :param config: validated Config
    :param train: Dataset, loaded from config.train_path when None
    :param test: Dataset, loaded from config.test_path when None
    :return: list of EvalReport in grid order
    """
    if train is None:
        train = load_split(config.train_path, config.schema, config.drop_columns)
    if test is None:
        test = load_split(config.test_path, config.schema, config.drop_columns)
    specs = [ClassifierSpec.from_dict(values, seed=config.seed) for values in config.classifiers]

    reports = []
    for tag, source in config.feature_sets.items():
        subset = resolve_feature_source(source, train)
        subset.validate(test)
        _, prepared_train, prepared_test = prepare_holdout(train, test, subset, normalize=config.normalize,
                                                           encode=config.encode)
        width = len(prepared_train.attributes)
        expected = config.expected_widths.get(tag)
        if expected is not None and width != expected:
            raise EncodedWidthError(tag, expected, width)
        print('feature set {}: {} features, encoded width {}'.format(tag, len(subset), width))
        if subset.note():
            print('  {}'.format(subset.note()))

        for spec in specs:
            report = time_fit_eval(spec, prepared_train, prepared_test, feature_set=tag,
                                   repeats=config.timing_repeats, threads=config.threads)
            notes = [subset.note()] if subset.note() else []
            if spec.kind == 'linsvm':
                notes.append(STAND_IN_NOTE)
            report.note = '; '.join(notes)
            reports.append(report)
            print('  {:<4} acc {}  dr {}  far {}  mbt {:.2f}s'.format(
                DISPLAY_NAMES[spec.kind], format_rate(report.acc), format_rate(report.dr),
                format_rate(report.far), report.mbt))
    return reports


# ----------------------------------------------------------------------
# rendering
# ----------------------------------------------------------------------
def _feature_sets(reports):
    return list(dict.fromkeys(report.feature_set for report in reports))


def _classifiers(reports):
    return list(dict.fromkeys(report.classifier for report in reports))


def render_performance_table(reports):
    """
    one block of ACC / DR / FAR rows per classifier, one column per feature set,
    published figures in brackets where they exist
    """
    feature_sets = _feature_sets(reports)
    cells = {(report.classifier, report.feature_set): report for report in reports}
    rows = []
    for kind in _classifiers(reports):
        for index, metric in enumerate(('ACC', 'DR', 'FAR')):
            row = {'Model': DISPLAY_NAMES.get(kind, kind) if index == 0 else '', 'Metric': metric}
            for tag in feature_sets:
                report = cells.get((kind, tag))
                if report is None:
                    row[tag] = ''
                    continue
                text = format_rate((report.acc, report.dr, report.far)[index])
                published = PUBLISHED_PERFORMANCE.get((kind, tag))
                if published is not None:
                    text = '{} [{:.2f}]'.format(text, published[index])
                row[tag] = text
            row['Note'] = STAND_IN_NOTE if kind == 'linsvm' and index == 0 else ''
            rows.append(row)
    return pd.DataFrame(rows).to_string(index=False)


def _format_seconds(seconds):
    return '{:.2f}m'.format(seconds / 60.0) if seconds >= 60.0 else '{:.2f}s'.format(seconds)


def render_timing_table(reports):
    """model building time, one row per feature set, one column per classifier"""
    cells = {(report.classifier, report.feature_set): report for report in reports}
    rows = []
    for tag in _feature_sets(reports):
        row = {'Features': tag}
        for kind in _classifiers(reports):
            report = cells.get((kind, tag))
            text = _format_seconds(report.mbt) if report is not None else ''
            published = PUBLISHED_MBT.get((kind, tag))
            if report is not None and published is not None:
                text = '{} [{}]'.format(text, _format_seconds(published))
            row[DISPLAY_NAMES.get(kind, kind)] = text
        rows.append(row)
    return pd.DataFrame(rows).to_string(index=False)


def reports_frame(reports, config_hash=''):
    """one row per grid cell; the timing columns are mbt and preprocess_seconds"""
    rows = []
    for report in reports:
        rows.append({
            'classifier': report.classifier, 'feature_set': report.feature_set, 'width': report.width,
            'tp': report.confusion.tp, 'tn': report.confusion.tn, 'fp': report.confusion.fp,
            'fn': report.confusion.fn, 'acc': report.acc, 'dr': report.dr, 'far': report.far,
            'seed': report.seed, 'train_fingerprint': report.fingerprints.get('train'),
            'test_fingerprint': report.fingerprints.get('test'), 'toolchain': TOOLCHAIN_VERSION,
            'config_hash': config_hash, 'note': report.note,
            'mbt': report.mbt, 'preprocess_seconds': report.preprocess_seconds,
        })
    return pd.DataFrame(rows)


def write_reports(reports, folder, config_hash=''):
    """
    reports.json, reports.csv, performance.txt and timing.txt under `folder`
    :return: dict of written paths
    """
    os.makedirs(folder, exist_ok=True)
    paths = {name: os.path.join(folder, name)
             for name in ('reports.json', 'reports.csv', 'performance.txt', 'timing.txt')}

    save_artifact(paths['reports.json'], 'reports',
                  {'config_hash': config_hash, 'reports': [report.to_dict() for report in reports]})
    reports_frame(reports, config_hash).to_csv(paths['reports.csv'], index=False, na_rep='undefined')
    banner = 'toolchain {}  config {}\n'.format(TOOLCHAIN_VERSION, config_hash)
    with open(paths['performance.txt'], 'w', encoding='utf-8') as f:
        f.write(banner + render_performance_table(reports) + '\n')
    with open(paths['timing.txt'], 'w', encoding='utf-8') as f:
        f.write(banner + render_timing_table(reports) + '\n')
    logger.info('wrote %d reports to %s', len(reports), folder)
    return paths


def load_reports(path):
    """EvalReports back from a reports.json artifact"""
    payload = load_artifact(path, expected_kind='reports')
    return [EvalReport.from_dict(values) for values in payload['reports']]
