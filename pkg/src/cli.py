# -*- coding:utf-8 -*-
"""
Command-line driver: wrapper-ids <command> [--config PATH] [flags]

Exit codes: 0 ok, 1 internal error, 2 usage or config error, 3 data error.
"""
import argparse
import json
import logging
import os
import sys
import time

from src.classifier.base import ClassifierSpec, fit, save_model, load_model
from src.dataset.synthetic import SyntheticSpec, generate_synthetic
from src.dataset.unsw_nb15 import class_distribution, load_split, write_csv
from src.metrics.benchmark import render_performance_table, render_timing_table, run_benchmark, write_reports
from src.metrics.confusion import confusion, accuracy, detection_rate, false_alert_rate, format_rate
from src.metrics.timing import EvalReport
from src.preprocess.feature_subset import project
from src.preprocess.pipeline import prepare_holdout
from src.utils.artifact import save_artifact
from src.utils.config import Config
from src.utils.errors import ConfigError, WrapperIDSError
from src.utils.logger import setup_logging
from src.wrapper.best_first import SearchConfig, SubsetEvaluator, best_first_search, exhaustive_search
from src.wrapper.folds import subsample_dataset
from src.wrapper.validation import resolve_feature_source

__all__ = ['main', 'build_parser', 'load_config']

logger = logging.getLogger(__name__)

COMMANDS = ('inspect', 'select', 'train', 'eval', 'bench', 'synth')


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='JSON run configuration')
    common.add_argument('--seed', type=int, help='global seed')
    common.add_argument('--threads', type=int, help='worker threads')
    common.add_argument('--output', help='output directory')
    common.add_argument('--subsample', type=float, help='stratified share of training rows for select')
    common.add_argument('--verbose', action='store_true', default=None, help='debug logging')

    parser = argparse.ArgumentParser(prog='wrapper-ids',
                                     description='wrapper feature selection and IDS classifier benchmark')
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True
    commands.add_parser('inspect', parents=[common], help='print schema and class distribution')
    select = commands.add_parser('select', parents=[common], help='best-first wrapper feature selection')
    select.add_argument('--exhaustive', action='store_true', help='brute force every subset instead')
    train = commands.add_parser('train', parents=[common], help='fit one classifier and save the model')
    train.add_argument('--classifier', help='kind from the config classifiers, first one when omitted')
    train.add_argument('--model', help='where to write the model artifact')
    evaluate = commands.add_parser('eval', parents=[common], help='score a saved model on the test split')
    evaluate.add_argument('--model', help='model artifact to load')
    commands.add_parser('bench', parents=[common], help='feature set x classifier comparison grid')
    commands.add_parser('synth', parents=[common], help='write a synthetic dataset')
    return parser


def load_config(args):
    config = Config.from_json(args.config) if args.config else Config()
    model = getattr(args, 'model', None)
    config.override(seed=args.seed, threads=args.threads, output_dir=args.output,
                    subsample=args.subsample, verbose=args.verbose,
                    model_path=os.path.abspath(model) if model else None)
    return config


def _save_run_config(config, folder):
    os.makedirs(folder, exist_ok=True)
    with open(os.path.join(folder, 'config.json'), 'w', encoding='utf-8') as f:
        json.dump(dict(config.to_dict(), config_hash=config.config_hash()), f, indent=2, sort_keys=True)


def _load(config, key):
    return load_split(getattr(config, key), config.schema, config.drop_columns)


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------
def cmd_inspect(config):
    config.validate(require=('train_path',) + (('test_path',) if config.test_path else ()))
    for key in ('train_path', 'test_path'):
        if getattr(config, key) is None:
            continue
        d = _load(config, key)
        print('{}: {}'.format(key.replace('_path', ''), getattr(config, key)))
        print('-' * 64)
        for column in d.attributes:
            print('  {:<20} {}'.format(column.name, column.kind))
        print('-' * 64)
        print('{} rows, {} attributes ({} numeric, {} nominal)'.format(
            d.row_count, len(d.attributes), len(d.numeric_names), len(d.nominal_names)))
        print(class_distribution(d))
        print('=' * 64)
    return 0


def cmd_select(config, exhaustive=False):
    config.validate(require=('train_path',))
    train = _load(config, 'train_path')
    cfg = SearchConfig.from_config(config)
    folder = config.run_directory('select')
    _save_run_config(config, folder)
    trace_path = os.path.join(folder, 'trace.jsonl')

    if exhaustive:
        start = time.perf_counter()
        d = subsample_dataset(train, cfg.subsample, cfg.seed)
        result = exhaustive_search(d, cfg, SubsetEvaluator(d, cfg))
        fs_seconds = time.perf_counter() - start
    else:
        # an interrupted run left its trace here; its merits are reused
        result = best_first_search(train, cfg, trace_path=trace_path, resume_from=trace_path,
                                   tags={'config_hash': config.config_hash()})
        fs_seconds = result.trace.summary['fs_seconds']

    subset_path = os.path.join(folder, 'subset.json')
    save_artifact(subset_path, 'subset', {'names': list(result.best.names), 'merit': result.merit,
                                          'config_hash': config.config_hash(),
                                          'search': cfg.to_dict(), 'exhaustive': exhaustive,
                                          'fs_seconds': fs_seconds})
    print('selected {} of {} features, merit {:.4f}'.format(len(result.best), len(train.attributes), result.merit))
    print('-' * 64)
    print(', '.join(result.best.names))
    print('feature selection time: {:.2f}s'.format(fs_seconds))
    print('subset: {}'.format(subset_path))
    if not exhaustive:
        print('trace:  {}'.format(trace_path))
    return 0


def _chosen_spec(config, kind=None):
    specs = [ClassifierSpec.from_dict(values, seed=config.seed) for values in config.classifiers]
    if kind is None:
        return specs[0]
    for spec in specs:
        if spec.kind == kind:
            return spec
    raise ConfigError('classifier {!r} is not in the config classifiers {}'.format(kind, [s.kind for s in specs]))


def cmd_train(config, kind=None):
    config.validate(require=('train_path',))
    train = _load(config, 'train_path')
    test = _load(config, 'test_path') if config.test_path else None
    subset = resolve_feature_source(config.features, train)
    spec = _chosen_spec(config, kind)

    preprocessor, prepared_train, _ = prepare_holdout(train, test, subset, normalize=config.normalize,
                                                      encode=config.encode)
    model = fit(spec, prepared_train, threads=config.threads)

    folder = config.run_directory('train')
    _save_run_config(config, folder)
    model_path = config.model_path or os.path.join(folder, 'model.json')
    save_model(model_path, model, preprocessor, config_hash=config.config_hash())
    print('trained {} on {} rows, {} features -> width {}'.format(
        spec.kind, train.row_count, len(subset), len(prepared_train.attributes)))
    print('model: {}'.format(model_path))
    return 0


def cmd_eval(config):
    config.validate(require=('test_path', 'model_path'))
    model, preprocessor = load_model(config.model_path)
    test = _load(config, 'test_path')
    subset = resolve_feature_source(config.features, test)

    projected = project(test, subset)
    if preprocessor is not None:
        projected.require_signature(preprocessor.signature, what='model')
        prepared = preprocessor.transform(projected)
    else:
        prepared = projected
    predictions = model.predict(prepared)

    matrix = confusion(predictions, prepared.labels)
    report = EvalReport(classifier=model.kind, feature_set='custom', confusion=matrix, acc=accuracy(matrix),
                        dr=detection_rate(matrix), far=false_alert_rate(matrix), mbt=0.0,
                        width=len(prepared.attributes), seed=model.spec.seed,
                        fingerprints={'test': prepared.fingerprint()}, note=subset.note())
    folder = config.run_directory('eval')
    _save_run_config(config, folder)
    save_artifact(os.path.join(folder, 'report.json'), 'report',
                  dict(report.to_dict(), config_hash=config.config_hash(), model_config_hash=model.config_hash))
    print('{} on {} rows'.format(model.kind, prepared.row_count))
    print('-' * 64)
    print('tp {}  tn {}  fp {}  fn {}'.format(matrix.tp, matrix.tn, matrix.fp, matrix.fn))
    print('ACC {}  DR {}  FAR {}'.format(format_rate(report.acc), format_rate(report.dr), format_rate(report.far)))
    return 0


def cmd_bench(config):
    config.validate(require=('train_path', 'test_path'))
    reports = run_benchmark(config)
    folder = config.run_directory('bench')
    _save_run_config(config, folder)
    write_reports(reports, folder, config_hash=config.config_hash())
    print('=' * 64)
    print(render_performance_table(reports))
    print('-' * 64)
    print(render_timing_table(reports))
    print('reports: {}'.format(folder))
    return 0


def cmd_synth(config):
    config.validate()
    spec = SyntheticSpec.from_dict(config.synthetic)
    d = generate_synthetic(spec, config.seed)
    path = config.synthetic_path or os.path.join(config.run_directory('synth'), 'synthetic.csv')
    write_csv(d, path)
    print('{} rows, {} attributes -> {}'.format(d.row_count, len(d.attributes), path))
    print(class_distribution(d))
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args)
        setup_logging(config.verbose)
        if args.command == 'inspect':
            return cmd_inspect(config)
        if args.command == 'select':
            return cmd_select(config, exhaustive=args.exhaustive)
        if args.command == 'train':
            return cmd_train(config, kind=args.classifier)
        if args.command == 'eval':
            return cmd_eval(config)
        if args.command == 'bench':
            return cmd_bench(config)
        return cmd_synth(config)
    except WrapperIDSError as err:
        print('error: {}'.format(err), file=sys.stderr)
        return err.exit_code
    except KeyboardInterrupt:
        print('interrupted; rerun the same command to resume', file=sys.stderr)
        return 1
    except Exception:
        logger.exception('internal error')
        return 1


if __name__ == '__main__':
    sys.exit(main())
