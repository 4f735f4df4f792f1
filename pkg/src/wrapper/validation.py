# -*- coding:utf-8 -*-
import logging
import time

from src.metrics.timing import time_fit_eval
from src.preprocess.feature_subset import FeatureSubset, full_subset, table2_subset
from src.preprocess.pipeline import prepare_holdout
from src.utils.errors import ConfigError
from src.wrapper.best_first import selected_from_trace

__all__ = ['resolve_feature_source', 'validate_selection']

logger = logging.getLogger(__name__)


def resolve_feature_source(source, d):
    """
    :param source: 'full', 'table2', a list of names, {"trace": path} or a FeatureSubset
    :param d: Dataset the subset must fit
    :return: FeatureSubset
    """
    if isinstance(source, FeatureSubset):
        subset = source
    elif source == 'full':
        subset = full_subset(d)
    elif source == 'table2':
        subset = table2_subset()
    elif isinstance(source, (list, tuple)):
        subset = FeatureSubset(names=list(source))
    elif isinstance(source, dict) and 'trace' in source:
        subset = selected_from_trace(source['trace'])
    else:
        raise ConfigError('unsupported feature source {!r}'.format(source))
    return subset.validate(d)


def validate_selection(train, test, subset, spec, feature_set='custom', normalize=True, encode=True,
                       repeats=1, threads=1):
    """
    holdout check of a selected subset: project, normalise and encode both splits,
    then fit on train and score test
    :return: EvalReport, preprocessing time recorded apart from the model building time
    """
    subset.validate(train)
    subset.validate(test)
    start = time.perf_counter()
    _, prepared_train, prepared_test = prepare_holdout(train, test, subset, normalize=normalize, encode=encode)
    preprocess_seconds = time.perf_counter() - start

    report = time_fit_eval(spec, prepared_train, prepared_test, feature_set=feature_set, repeats=repeats,
                           threads=threads)
    report.preprocess_seconds = preprocess_seconds
    report.note = subset.note()
    return report
