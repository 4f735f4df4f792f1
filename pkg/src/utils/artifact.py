# -*- coding:utf-8 -*-
"""
Versioned JSON envelope for everything the toolchain persists:
preprocessing state, fitted models and benchmark reports.
"""
import base64
import json
import logging
import os

import numpy as np

from src.utils.errors import ArtifactError

__all__ = ['ARTIFACT_FORMAT', 'ARTIFACT_VERSION', 'TOOLCHAIN_VERSION',
           'save_artifact', 'load_artifact', 'wrap_artifact', 'unwrap_artifact', 'encode_array', 'decode_array']

logger = logging.getLogger(__name__)

ARTIFACT_FORMAT = 'wrapper-ids'
ARTIFACT_VERSION = 1
TOOLCHAIN_VERSION = '0.1.0'


def wrap_artifact(kind, payload):
    return {
        'format': ARTIFACT_FORMAT,
        'version': ARTIFACT_VERSION,
        'toolchain': TOOLCHAIN_VERSION,
        'kind': kind,
        'payload': payload,
    }


def unwrap_artifact(document, expected_kind=None):
    """
    validate an envelope and return its payload
    :param document: parsed JSON object
    :param expected_kind: raise when the envelope holds something else
    """
    if not isinstance(document, dict) or document.get('format') != ARTIFACT_FORMAT:
        raise ArtifactError('not a {} artifact'.format(ARTIFACT_FORMAT))
    if document.get('version') != ARTIFACT_VERSION:
        raise ArtifactError('artifact version {} is not supported (expected {})'.format(
            document.get('version'), ARTIFACT_VERSION))
    if expected_kind is not None and document.get('kind') != expected_kind:
        raise ArtifactError('artifact holds {!r}, expected {!r}'.format(document.get('kind'), expected_kind))
    return document['payload']


def save_artifact(path, kind, payload):
    folder = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(wrap_artifact(kind, payload), f, sort_keys=True)
    logger.info('wrote %s artifact to %s', kind, path)


def load_artifact(path, expected_kind=None):
    if not os.path.exists(path):
        raise ArtifactError('artifact not found: {}'.format(path))
    with open(path, 'r', encoding='utf-8') as f:
        try:
            document = json.load(f)
        except json.JSONDecodeError as err:
            raise ArtifactError('artifact {} is not valid JSON: {}'.format(path, err))
    return unwrap_artifact(document, expected_kind)


def encode_array(array):
    """exact, compact JSON form of a numeric array"""
    array = np.ascontiguousarray(array)
    return {'dtype': array.dtype.str, 'shape': list(array.shape),
            'data': base64.b64encode(array.tobytes()).decode('ascii')}


def decode_array(values):
    raw = base64.b64decode(values['data'].encode('ascii'))
    return np.frombuffer(raw, dtype=np.dtype(values['dtype'])).reshape(values['shape']).copy()
