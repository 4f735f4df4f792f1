# -*- coding:utf-8 -*-
import glob
import json
import os
import shutil

import pandas as pd
import pytest

from src.cli import main
from src.dataset.synthetic import SyntheticSpec, generate_synthetic
from src.dataset.unsw_nb15 import write_csv
from src.utils.artifact import load_artifact

SYNTHETIC = {'rows': 300, 'informative_numeric': 2, 'noise_numeric': 3, 'nominal_features': 1,
             'class_balance': 0.4}


def _config(folder, **values):
    path = os.path.join(folder, 'run.json')
    base = {'schema': 'infer', 'drop_columns': [], 'output_dir': os.path.join(folder, 'out')}
    base.update(values)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(base, f)
    return path


@pytest.fixture
def splits(tmp_path):
    spec = SyntheticSpec(**SYNTHETIC)
    train = os.path.join(str(tmp_path), 'train.csv')
    test = os.path.join(str(tmp_path), 'test.csv')
    write_csv(generate_synthetic(spec, 1), train)
    write_csv(generate_synthetic(spec, 2), test)
    return train, test


def _only(pattern):
    matches = glob.glob(pattern)
    assert len(matches) == 1, matches
    return matches[0]


def test_missing_train_file_is_a_config_error(tmp_path, capsys):
    config = _config(str(tmp_path), train_path='nope.csv')
    assert main(['inspect', '--config', config]) == 2
    assert 'does not exist' in capsys.readouterr().err


def test_bad_config_key_and_bad_json(tmp_path):
    assert main(['inspect', '--config', _config(str(tmp_path), colour='red')]) == 2
    broken = os.path.join(str(tmp_path), 'broken.json')
    with open(broken, 'w') as f:
        f.write('{')
    assert main(['synth', '--config', broken]) == 2


def test_synth_writes_configured_balance(tmp_path, capsys):
    target = os.path.join(str(tmp_path), 'synthetic.csv')
    config = _config(str(tmp_path), synthetic=SYNTHETIC, synthetic_path=target)
    assert main(['synth', '--config', config, '--seed', '3']) == 0
    frame = pd.read_csv(target)
    assert len(frame) == 300
    assert frame['label'].sum() == 120
    assert '300 rows' in capsys.readouterr().out


def test_inspect_prints_schema_and_distribution(tmp_path, splits, capsys):
    train, test = splits
    config = _config(str(tmp_path), train_path=train, test_path=test)
    assert main(['inspect', '--config', config]) == 0
    out = capsys.readouterr().out
    assert 'nom_0' in out and 'nominal' in out
    assert '300 rows, 6 attributes' in out


def test_select_writes_subset_and_trace(tmp_path, splits, capsys):
    train, _ = splits
    config = _config(str(tmp_path), train_path=train, termination=2)
    assert main(['select', '--config', config]) == 0
    assert 'feature selection time' in capsys.readouterr().out
    folder = _only(os.path.join(str(tmp_path), 'out', 'select-*'))
    subset = load_artifact(os.path.join(folder, 'subset.json'), expected_kind='subset')
    assert subset['names']
    assert subset['fs_seconds'] >= 0.0
    assert os.path.exists(os.path.join(folder, 'trace.jsonl'))
    with open(os.path.join(folder, 'config.json')) as f:
        assert json.load(f)['termination'] == 2

    # the second run resumes from the first trace and lands on the same subset
    assert main(['select', '--config', config]) == 0
    again = load_artifact(os.path.join(folder, 'subset.json'), expected_kind='subset')
    assert again['names'] == subset['names']
    assert again['merit'] == subset['merit']


def test_select_exhaustive(tmp_path, splits):
    train, _ = splits
    config = _config(str(tmp_path), train_path=train, folds=3)
    assert main(['select', '--config', config, '--exhaustive', '--subsample', '0.5']) == 0
    folder = _only(os.path.join(str(tmp_path), 'out', 'select-*'))
    subset = load_artifact(os.path.join(folder, 'subset.json'), expected_kind='subset')
    assert subset['exhaustive'] is True
    assert subset['fs_seconds'] >= 0.0
    assert subset['search']['subsample'] == 0.5


def test_train_then_eval(tmp_path, splits, capsys):
    train, test = splits
    model = os.path.join(str(tmp_path), 'model.json')
    config = _config(str(tmp_path), train_path=train, test_path=test, features=['inf_0', 'inf_1', 'nom_0'],
                     classifiers=[{'kind': 'gnb'}, {'kind': 'tree'}])
    assert main(['train', '--config', config, '--classifier', 'tree', '--model', model]) == 0
    artifact = load_artifact(model, expected_kind='model')
    assert artifact['model']['spec']['kind'] == 'tree'
    with open(_only(os.path.join(str(tmp_path), 'out', 'train-*', 'config.json'))) as f:
        trained_hash = json.load(f)['config_hash']
    assert artifact['config_hash'] == trained_hash

    assert main(['eval', '--config', config, '--model', model]) == 0
    out = capsys.readouterr().out
    assert 'ACC' in out
    report = load_artifact(_only(os.path.join(str(tmp_path), 'out', 'eval-*', 'report.json')),
                           expected_kind='report')
    assert report['classifier'] == 'tree'
    assert sum(report['confusion'].values()) == 300
    assert report['model_config_hash'] == trained_hash

    # where the model lives does not change the run folder
    moved = os.path.join(str(tmp_path), 'moved.json')
    shutil.copyfile(model, moved)
    assert main(['eval', '--config', config, '--model', moved]) == 0
    assert len(glob.glob(os.path.join(str(tmp_path), 'out', 'eval-*'))) == 1


def test_train_unknown_classifier(tmp_path, splits):
    train, _ = splits
    config = _config(str(tmp_path), train_path=train, features='full', classifiers=[{'kind': 'gnb'}])
    assert main(['train', '--config', config, '--classifier', 'knn']) == 2


def test_eval_with_other_features_is_a_data_error(tmp_path, splits, capsys):
    train, test = splits
    model = os.path.join(str(tmp_path), 'model.json')
    trained = _config(str(tmp_path), train_path=train, features=['inf_0', 'inf_1'],
                      classifiers=[{'kind': 'gnb'}])
    assert main(['train', '--config', trained, '--model', model]) == 0
    narrower = _config(str(tmp_path), test_path=test, features=['inf_0'])
    assert main(['eval', '--config', narrower, '--model', model]) == 3
    assert 'error' in capsys.readouterr().err


def test_bench_reports_are_reproducible(tmp_path, splits):
    train, test = splits
    values = dict(train_path=train, test_path=test, feature_sets={'full': 'full', 'wrapper': ['inf_0', 'inf_1']},
                  classifiers=[{'kind': 'gnb'}, {'kind': 'forest', 'params': {'n_trees': 5}}])
    config = _config(str(tmp_path), **values)
    assert main(['bench', '--config', config]) == 0
    folder = _only(os.path.join(str(tmp_path), 'out', 'bench-*'))
    first = pd.read_csv(os.path.join(folder, 'reports.csv'))
    assert len(first) == 4
    for name in ('reports.json', 'performance.txt', 'timing.txt'):
        assert os.path.exists(os.path.join(folder, name))

    assert main(['bench', '--config', config, '--threads', '2']) == 0
    second = pd.read_csv(os.path.join(folder, 'reports.csv'))
    timing = ['mbt', 'preprocess_seconds']
    pd.testing.assert_frame_equal(first.drop(columns=timing), second.drop(columns=timing))


def test_bench_width_mismatch(tmp_path, splits):
    train, test = splits
    config = _config(str(tmp_path), train_path=train, test_path=test, feature_sets={'full': 'full'},
                     expected_widths={'full': 194}, classifiers=[{'kind': 'gnb'}])
    assert main(['bench', '--config', config]) == 3


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as err:
        main(['frobnicate'])
    assert err.value.code == 2
