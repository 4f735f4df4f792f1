# -*- coding:utf-8 -*-
import copy
import hashlib
import json
import os

from src.utils.errors import ConfigError

__all__ = ['Config', 'CLASSIFIER_KINDS', 'SCHEMA_NAMES']

CLASSIFIER_KINDS = ('tree', 'forest', 'knn', 'gnb', 'mlp', 'linsvm')
SCHEMA_NAMES = ('unsw-nb15-raw', 'unsw-nb15', 'infer')
FEATURE_PRESETS = ('full', 'table2')

# keys that change where or how fast a run goes, never what it computes
_UNHASHED_KEYS = ('output_dir', 'threads', 'verbose', 'model_path')


class Config:
    def __init__(self):
        # dataset parameters
        self.train_path = None
        self.test_path = None
        self.schema = 'unsw-nb15-raw'  # built-in name, 'infer', or a schema JSON file
        self.drop_columns = ['id', 'attack_cat']  # the id and multi-class label columns

        # pipeline stages, always applied in the order FS -> normalize -> encode
        self.normalize = True
        self.encode = True

        # feature source for select/train/eval: 'full', 'table2', a list of names,
        # or {"trace": path} pointing at a wrapper trace log
        self.features = 'table2'

        # benchmark grid: feature-set tag -> feature source, plus the classifier zoo
        self.feature_sets = {'full': 'full', 'wrapper': 'table2'}
        self.expected_widths = {}  # feature-set tag -> encoded width that must be hit
        self.classifiers = [{'kind': kind} for kind in ('mlp', 'linsvm', 'knn', 'forest', 'gnb')]
        self.timing_repeats = 1  # 3 gives the median-of-3 model building time

        # wrapper search parameters
        self.folds = 5
        self.termination = 5  # consecutive non-improving expansions, null disables the stop
        self.subsample = None  # stratified share of training rows used by the wrapper
        self.evaluator = {'min_leaf': 2, 'pruning_confidence': 0.25, 'max_depth': None}

        # train/eval split of the pipeline
        self.model_path = None

        # synthetic generator block, used by `synth`
        self.synthetic = {'rows': 5000, 'informative_numeric': 4, 'noise_numeric': 12,
                          'nominal_features': 0, 'class_balance': 0.5}
        self.synthetic_path = None

        # run parameters
        self.output_dir = './results'
        self.seed = 0
        self.threads = 1
        self.verbose = False

    @classmethod
    def from_json(cls, path):
        """
        defaults overlaid with a JSON config file
        :param path: path to the config file
        """
        if not os.path.exists(path):
            raise ConfigError('config file not found: {}'.format(path))
        with open(path, 'r', encoding='utf-8') as f:
            try:
                values = json.load(f)
            except json.JSONDecodeError as err:
                raise ConfigError('config file {} is not valid JSON: {}'.format(path, err))
        if not isinstance(values, dict):
            raise ConfigError('config file {} must hold a JSON object'.format(path))

        config = cls()
        config.update(values)
        # relative data paths are resolved against the config file's folder
        base = os.path.dirname(os.path.abspath(path))
        for key in ('train_path', 'test_path', 'model_path', 'synthetic_path'):
            value = getattr(config, key)
            if value and not os.path.isabs(value):
                setattr(config, key, os.path.normpath(os.path.join(base, value)))
        if isinstance(config.schema, str) and config.schema.endswith('.json') and not os.path.isabs(config.schema):
            config.schema = os.path.normpath(os.path.join(base, config.schema))
        return config

    def update(self, values):
        known = self.to_dict(hashed_only=False)
        for key, value in values.items():
            if key not in known:
                raise ConfigError('unknown config key: {!r}'.format(key))
            setattr(self, key, copy.deepcopy(value))
        return self

    def override(self, **flags):
        """
        command-line flags win over file values; None means "not given"
        """
        return self.update({key: value for key, value in flags.items() if value is not None})

    def to_dict(self, hashed_only=False):
        values = {key: copy.deepcopy(value) for key, value in vars(self).items()}
        if hashed_only:
            for key in _UNHASHED_KEYS:
                values.pop(key, None)
        return values

    def config_hash(self):
        canonical = json.dumps(self.to_dict(hashed_only=True), sort_keys=True)
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()

    def run_directory(self, command):
        """
        output folder of one command; a changed config never lands in an old folder
        """
        return os.path.join(self.output_dir, '{}-{}'.format(command, self.config_hash()[:12]))

    def validate(self, require=()):
        """
        check value ranges and that the files a command needs exist
        :param require: attribute names of paths that must point at existing files
        """
        for key in require:
            path = getattr(self, key)
            if not path:
                raise ConfigError('{} is not set'.format(key))
            if not os.path.exists(path):
                raise ConfigError('{} does not exist: {}'.format(key, path))

        if not isinstance(self.schema, str) or not (self.schema in SCHEMA_NAMES or self.schema.endswith('.json')):
            raise ConfigError('schema must be one of {} or a .json file, got {!r}'.format(SCHEMA_NAMES, self.schema))
        if not isinstance(self.drop_columns, list):
            raise ConfigError('drop_columns must be a list of column names')
        self.check_feature_source(self.features)
        if not isinstance(self.feature_sets, dict) or not self.feature_sets:
            raise ConfigError('feature_sets must be a non-empty object')
        for source in self.feature_sets.values():
            self.check_feature_source(source)
        for tag, width in self.expected_widths.items():
            if tag not in self.feature_sets or not isinstance(width, int) or width < 1:
                raise ConfigError('expected_widths[{!r}] must be a positive integer for a known feature set'.format(tag))
        if not isinstance(self.classifiers, list) or not self.classifiers:
            raise ConfigError('classifiers must be a non-empty list')
        for spec in self.classifiers:
            if not isinstance(spec, dict) or spec.get('kind') not in CLASSIFIER_KINDS:
                raise ConfigError('classifier kind must be one of {}, got {!r}'.format(CLASSIFIER_KINDS, spec))

        if not isinstance(self.folds, int) or self.folds < 2:
            raise ConfigError('folds must be an integer >= 2')
        if self.termination is not None and (not isinstance(self.termination, int) or self.termination < 1):
            raise ConfigError('termination must be an integer >= 1 or null')
        if self.subsample is not None and not 0.0 < float(self.subsample) <= 1.0:
            raise ConfigError('subsample must be in (0, 1]')
        if not isinstance(self.timing_repeats, int) or self.timing_repeats < 1:
            raise ConfigError('timing_repeats must be an integer >= 1')
        if not isinstance(self.seed, int):
            raise ConfigError('seed must be an integer')
        if not isinstance(self.threads, int) or self.threads < 1:
            raise ConfigError('threads must be an integer >= 1')
        return self

    @staticmethod
    def check_feature_source(source):
        if isinstance(source, str):
            if source not in FEATURE_PRESETS:
                raise ConfigError('feature source must be one of {}, a list or {{"trace": path}}, got {!r}'.format(
                    FEATURE_PRESETS, source))
        elif isinstance(source, list):
            if not all(isinstance(name, str) for name in source):
                raise ConfigError('feature lists must hold column names')
        elif isinstance(source, dict):
            if set(source) != {'trace'}:
                raise ConfigError('a feature source object must have exactly one key, "trace"')
        else:
            raise ConfigError('unsupported feature source {!r}'.format(source))
