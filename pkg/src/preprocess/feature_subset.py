# -*- coding:utf-8 -*-
"""
Feature subsets and the projection (`Remove`) step.
"""
import logging
from dataclasses import dataclass, field

from src.utils.errors import DataError

__all__ = ['FeatureSubset', 'TABLE2_FEATURES', 'TABLE2_SUBSTITUTIONS', 'table2_subset',
           'full_subset', 'project']

logger = logging.getLogger(__name__)

# the published 19-feature wrapper selection, as printed
TABLE2_FEATURES = [
    'proto', 'service', 'spkts', 'sbytes', 'dbytes', 'dttl', 'sloss', 'dloss', 'swin', 'stepb',
    'trans_depth', 'response_body_len', 'ct_srv_src', 'ct_src_dport_ltm', 'ct_dst_sport_ltm',
    'ct_dst_src_ltm', 'ct_flw_http_mthd', 'ct_src_ltm', 'ct_srv_dst',
]
# "stepb" is not a UNSW-NB15 column; the source TCP base sequence number is "stcpb"
TABLE2_SUBSTITUTIONS = {'stepb': 'stcpb'}


@dataclass(frozen=True)
class FeatureSubset:
    names: tuple
    # (printed name, column used) pairs for names that had to be corrected
    substitutions: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, 'names', tuple(self.names))
        object.__setattr__(self, 'substitutions', tuple(tuple(pair) for pair in self.substitutions))
        if len(set(self.names)) != len(self.names):
            raise DataError('feature subset has duplicate names: {}'.format(list(self.names)))

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def validate(self, d):
        unknown = [name for name in self.names if name not in d.attribute_names]
        if unknown:
            if d.label_name in unknown:
                raise DataError('the label column {!r} cannot be a feature'.format(d.label_name))
            raise DataError('unknown feature name(s): {}'.format(unknown))
        return self

    def positions(self, d):
        """schema positions of the subset, sorted; the canonical cache key"""
        self.validate(d)
        lookup = {column.name: column.position for column in d.attributes}
        return tuple(sorted(lookup[name] for name in self.names))

    def note(self):
        if not self.substitutions:
            return ''
        return '; '.join('{!r} read as {!r}'.format(printed, used) for printed, used in self.substitutions)

    def to_dict(self):
        return {'names': list(self.names), 'substitutions': [list(pair) for pair in self.substitutions]}

    @classmethod
    def from_dict(cls, values):
        return cls(names=values['names'], substitutions=values.get('substitutions', ()))


def table2_subset():
    names = [TABLE2_SUBSTITUTIONS.get(name, name) for name in TABLE2_FEATURES]
    substitutions = [(printed, used) for printed, used in TABLE2_SUBSTITUTIONS.items() if printed in TABLE2_FEATURES]
    return FeatureSubset(names=names, substitutions=substitutions)


def full_subset(d):
    return FeatureSubset(names=d.attribute_names)


def project(d, subset):
    """
    keep exactly the subset's columns, in subset order, plus the label
    """
    if not isinstance(subset, FeatureSubset):
        subset = FeatureSubset(names=subset)
    subset.validate(d)
    return d.select(list(subset.names))
