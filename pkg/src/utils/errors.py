# -*- coding:utf-8 -*-
"""
Exception types shared by every stage of the pipeline.

The CLI maps them to exit codes: ConfigError -> 2, DataError/ArtifactError -> 3,
anything else -> 1.
"""

__all__ = ['WrapperIDSError', 'ConfigError', 'DataError', 'SchemaMismatchError',
           'EncodedWidthError', 'ArtifactError']


class WrapperIDSError(ValueError):
    exit_code = 1


class ConfigError(WrapperIDSError):
    exit_code = 2


class DataError(WrapperIDSError):
    exit_code = 3


class SchemaMismatchError(DataError):
    pass


class EncodedWidthError(DataError):
    def __init__(self, feature_set, expected, observed):
        super().__init__('encoded width of feature set {!r} is {}, expected {}'.format(
            feature_set, observed, expected))
        self.feature_set = feature_set
        self.expected = expected
        self.observed = observed


class ArtifactError(WrapperIDSError):
    exit_code = 3
