# -*- coding:utf-8 -*-
from src import *


def run_synthetic_search_example(seed=0):
    C = Config()
    C.seed = seed
    data = generate_synthetic(SyntheticSpec(rows=2000, informative_numeric=4, noise_numeric=4), seed=seed)
    print(data)
    print(class_distribution(data))
    print('-' * 64)

    result = best_first_search(data, SearchConfig.from_config(C))
    print('selected: {}'.format(', '.join(result.best.names)))
    print('merit: {:.4f} after {} expansions'.format(result.merit, len(result.trace.records)))
    print('=' * 64)

    oracle = exhaustive_search(data, SearchConfig(folds=C.folds, seed=C.seed))
    print('exhaustive best: {} ({:.4f})'.format(', '.join(oracle.best.names), oracle.merit))


def run_holdout_example(train_path, test_path, kind='forest'):
    C = Config()
    train = load_split(train_path, C.schema, C.drop_columns)
    test = load_split(test_path, C.schema, C.drop_columns)
    print(class_distribution(train))
    print(class_distribution(test))
    print('-' * 64)

    for tag, subset in (('full', full_subset(train)), ('wrapper', table2_subset())):
        report = validate_selection(train, test, subset, ClassifierSpec(kind=kind), feature_set=tag)
        print('{} {}: ACC {} DR {} FAR {} ({:.2f}s)'.format(kind, tag, format_rate(report.acc),
                                                            format_rate(report.dr), format_rate(report.far),
                                                            report.mbt))
        if report.note:
            print('  {}'.format(report.note))


def run_benchmark_example(config_path='configs/unsw_nb15_benchmark.json'):
    C = Config.from_json(config_path).validate(require=('train_path', 'test_path'))
    reports = run_benchmark(C)
    print('=' * 64)
    print(render_performance_table(reports))
    print('-' * 64)
    print(render_timing_table(reports))
    write_reports(reports, C.run_directory('bench'), config_hash=C.config_hash())


if __name__ == '__main__':
    setup_logging()
    run_synthetic_search_example()
    # run_holdout_example('data/UNSW_NB15_training-set.csv', 'data/UNSW_NB15_testing-set.csv')
    # run_benchmark_example()
