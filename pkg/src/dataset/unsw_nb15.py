# -*- coding:utf-8 -*-
"""
Typed, immutable flow-record tables and the UNSW-NB15 ingestion path.

A Dataset is column oriented: numeric attributes are float64 arrays, nominal attributes
are arrays of category strings, and the binary label (0 = normal, 1 = attack) is kept
apart from the attributes. Arrays are frozen after construction, so a Dataset can be
shared between worker threads without copying.
"""
import hashlib
import json
import logging
import os
import warnings
from dataclasses import dataclass

import numpy as np
import pandas as pd

from src.utils.errors import DataError, SchemaMismatchError

__all__ = ['NUMERIC', 'NOMINAL', 'LABEL', 'ColumnSchema', 'Dataset', 'ClassDistribution',
           'make_schema', 'unsw_raw_schema', 'unsw_schema', 'infer_schema', 'resolve_schema',
           'load_csv', 'load_split', 'write_csv', 'drop_columns', 'filter_unsw', 'class_distribution',
           'UNSW_RAW_COLUMNS', 'UNSW_NOMINAL', 'UNSW_FILTERED_OUT']

logger = logging.getLogger(__name__)

NUMERIC = 'numeric'
NOMINAL = 'nominal'
LABEL = 'label'
KINDS = (NUMERIC, NOMINAL, LABEL)

# column order of the published UNSW-NB15 training/testing set files
UNSW_RAW_COLUMNS = [
    'id', 'dur', 'proto', 'service', 'state', 'spkts', 'dpkts', 'sbytes', 'dbytes', 'rate',
    'sttl', 'dttl', 'sload', 'dload', 'sloss', 'dloss', 'sinpkt', 'dinpkt', 'sjit', 'djit',
    'swin', 'stcpb', 'dtcpb', 'dwin', 'tcprtt', 'synack', 'ackdat', 'smean', 'dmean',
    'trans_depth', 'response_body_len', 'ct_srv_src', 'ct_state_ttl', 'ct_dst_ltm',
    'ct_src_dport_ltm', 'ct_dst_sport_ltm', 'ct_dst_src_ltm', 'is_ftp_login', 'ct_ftp_cmd',
    'ct_flw_http_mthd', 'ct_src_ltm', 'ct_srv_dst', 'is_sm_ips_ports', 'attack_cat', 'label',
]
UNSW_NOMINAL = ('proto', 'service', 'state', 'attack_cat')
UNSW_FILTERED_OUT = ['id', 'attack_cat']


@dataclass(frozen=True)
class ColumnSchema:
    name: str
    kind: str
    position: int

    def to_dict(self):
        return {'name': self.name, 'kind': self.kind}


@dataclass(frozen=True)
class ClassDistribution:
    attack_count: int
    normal_count: int
    attack_fraction: float

    @property
    def row_count(self):
        return self.attack_count + self.normal_count

    def __str__(self):
        return 'rows: {:,}  attack: {:,} ({:.2f}%)  normal: {:,} ({:.2f}%)'.format(
            self.row_count, self.attack_count, 100.0 * self.attack_fraction,
            self.normal_count, 100.0 * (1.0 - self.attack_fraction) if self.row_count else 0.0)


def make_schema(columns):
    """
    build and validate a schema
    :param columns: iterable of (name, kind) pairs or ColumnSchema objects, in column order
    :return: tuple of ColumnSchema with positions 0..n-1
    """
    schema = []
    for position, column in enumerate(columns):
        if isinstance(column, ColumnSchema):
            name, kind = column.name, column.kind
        elif isinstance(column, dict):
            name, kind = column['name'], column['kind']
        else:
            name, kind = column
        if kind not in KINDS:
            raise DataError('column {!r} has unknown kind {!r}'.format(name, kind))
        schema.append(ColumnSchema(name=str(name), kind=kind, position=position))

    names = [column.name for column in schema]
    if len(set(names)) != len(names):
        duplicated = sorted({name for name in names if names.count(name) > 1})
        raise DataError('duplicate column names in schema: {}'.format(duplicated))
    if sum(column.kind == LABEL for column in schema) != 1:
        raise DataError('a schema needs exactly one label column')
    return tuple(schema)


def unsw_raw_schema():
    """45 columns of the published files: id + 42 attributes + attack_cat + label"""
    return make_schema([(name, LABEL if name == 'label' else NOMINAL if name in UNSW_NOMINAL else NUMERIC)
                        for name in UNSW_RAW_COLUMNS])


def unsw_schema():
    """the 42 attributes + label left after filtration"""
    return make_schema([(column.name, column.kind) for column in unsw_raw_schema()
                        if column.name not in UNSW_FILTERED_OUT])


class Dataset:
    """
    immutable column-oriented table with a binary label column
    """

    def __init__(self, schema, columns, labels):
        self.schema = make_schema(schema)
        self.labels = np.asarray(labels, dtype=np.int64)
        self.row_count = int(self.labels.shape[0])

        if np.any((self.labels != 0) & (self.labels != 1)):
            raise DataError('label values must be 0 or 1')

        self._columns = {}
        for column in self.attributes:
            if column.name not in columns:
                raise DataError('missing data for column {!r}'.format(column.name))
            if column.kind == NUMERIC:
                values = np.array(columns[column.name], dtype=np.float64)
                if not np.all(np.isfinite(values)):
                    raise DataError('column {!r} holds non-finite values'.format(column.name))
            else:
                values = np.array(columns[column.name], dtype=object)
            if values.shape != (self.row_count,):
                raise DataError('column {!r} has {} values for {} rows'.format(
                    column.name, values.shape[0] if values.ndim else 0, self.row_count))
            values.flags.writeable = False
            self._columns[column.name] = values
        self.labels.flags.writeable = False

    # ------------------------------------------------------------------
    @property
    def attributes(self):
        return tuple(column for column in self.schema if column.kind != LABEL)

    @property
    def attribute_names(self):
        return [column.name for column in self.attributes]

    @property
    def numeric_names(self):
        return [column.name for column in self.attributes if column.kind == NUMERIC]

    @property
    def nominal_names(self):
        return [column.name for column in self.attributes if column.kind == NOMINAL]

    @property
    def label_name(self):
        return next(column.name for column in self.schema if column.kind == LABEL)

    def kind_of(self, name):
        for column in self.schema:
            if column.name == name:
                return column.kind
        raise DataError('unknown column {!r}'.format(name))

    def column(self, name):
        if name == self.label_name:
            return self.labels
        if name not in self._columns:
            raise DataError('unknown column {!r}'.format(name))
        return self._columns[name]

    def signature(self):
        """(name, kind) pairs of the attributes, used to match models against data"""
        return [(column.name, column.kind) for column in self.attributes]

    def require_signature(self, signature, what='model'):
        expected = [tuple(pair) for pair in signature]
        if self.signature() != expected:
            raise SchemaMismatchError('{} expects {} attributes {}..., data has {} attributes {}...'.format(
                what, len(expected), [name for name, _ in expected[:5]],
                len(self.attributes), self.attribute_names[:5]))

    def take(self, rows):
        rows = np.asarray(rows, dtype=np.int64)
        return Dataset(self.schema, {name: values[rows] for name, values in self._columns.items()},
                       self.labels[rows])

    def select(self, names):
        """attributes `names` (in that order) plus the label"""
        kinds = {column.name: column.kind for column in self.attributes}
        unknown = [name for name in names if name not in kinds]
        if unknown:
            raise DataError('unknown feature name(s): {}'.format(unknown))
        schema = [(name, kinds[name]) for name in names] + [(self.label_name, LABEL)]
        return Dataset(schema, {name: self._columns[name] for name in names}, self.labels)

    def to_matrix(self):
        """
        float matrix of the attributes; only valid for all-numeric data
        """
        if self.nominal_names:
            raise DataError('numeric input required, nominal columns present: {}'.format(self.nominal_names))
        if not self.attributes:
            return np.zeros((self.row_count, 0), dtype=np.float64)
        return np.column_stack([self._columns[name] for name in self.attribute_names])

    def row(self, index):
        return {name: values[index] for name, values in self._columns.items()}

    def to_frame(self):
        data = {}
        for column in self.schema:
            data[column.name] = self.labels if column.kind == LABEL else self._columns[column.name]
        return pd.DataFrame(data, columns=[column.name for column in self.schema])

    def fingerprint(self):
        """sha256 over schema and cell contents"""
        digest = hashlib.sha256()
        digest.update(json.dumps([column.to_dict() for column in self.schema]).encode('utf-8'))
        for column in self.attributes:
            values = self._columns[column.name]
            if column.kind == NUMERIC:
                digest.update(np.ascontiguousarray(values).tobytes())
            else:
                digest.update('\x1f'.join(map(str, values)).encode('utf-8'))
        digest.update(np.ascontiguousarray(self.labels).tobytes())
        return digest.hexdigest()

    def __eq__(self, other):
        if not isinstance(other, Dataset) or self.schema != other.schema:
            return False
        if not np.array_equal(self.labels, other.labels):
            return False
        return all(np.array_equal(self._columns[name], other._columns[name]) for name in self._columns)

    def __ne__(self, other):
        return not self.__eq__(other)

    __hash__ = None

    def __repr__(self):
        return 'Dataset(rows={}, attributes={}, numeric={}, nominal={})'.format(
            self.row_count, len(self.attributes), len(self.numeric_names), len(self.nominal_names))


# ----------------------------------------------------------------------
# schema resolution
# ----------------------------------------------------------------------
def infer_schema(path, label='label'):
    """
    schema from a CSV header: `label` is the label column, a column is numeric
    when every cell parses as a finite number, nominal otherwise
    """
    frame = _read_frame(path)
    if label not in frame.columns:
        raise DataError('{}: no {!r} column to use as label'.format(path, label))
    columns = []
    for name in frame.columns:
        if name == label:
            columns.append((name, LABEL))
            continue
        parsed = pd.to_numeric(frame[name], errors='coerce')
        numeric = not parsed.isna().any() and np.all(np.isfinite(parsed.to_numpy(dtype=np.float64)))
        columns.append((name, NUMERIC if numeric else NOMINAL))
    return make_schema(columns)


def resolve_schema(name, csv_path=None):
    """
    :param name: 'unsw-nb15-raw', 'unsw-nb15', 'infer' or a path to a schema JSON file
    :param csv_path: file to infer from when name is 'infer'
    """
    if name == 'unsw-nb15-raw':
        return unsw_raw_schema()
    if name == 'unsw-nb15':
        return unsw_schema()
    if name == 'infer':
        if csv_path is None:
            raise DataError('schema inference needs a CSV file')
        return infer_schema(csv_path)
    if isinstance(name, str) and name.endswith('.json'):
        if not os.path.exists(name):
            raise DataError('schema file not found: {}'.format(name))
        with open(name, 'r', encoding='utf-8') as f:
            return make_schema(json.load(f))
    raise DataError('unknown schema {!r}'.format(name))


# ----------------------------------------------------------------------
# operations
# ----------------------------------------------------------------------
def _read_frame(path):
    if not os.path.exists(path):
        raise DataError('file not found: {}'.format(path))
    try:
        # every cell as text; "", "-" and "NA" stay categories, nothing is imputed.
        # rows wider than the header are never read as an index column
        with warnings.catch_warnings():
            warnings.simplefilter('error', pd.errors.ParserWarning)
            return pd.read_csv(path, dtype=str, keep_default_na=False, na_filter=False, index_col=False)
    except pd.errors.ParserWarning as err:
        raise DataError('{}: ragged row: {}'.format(path, err))
    except pd.errors.EmptyDataError:
        raise DataError('{}: no header row'.format(path))
    except pd.errors.ParserError as err:
        raise DataError('{}: ragged row: {}'.format(path, err))


def load_csv(path, schema):
    """
    read an RFC 4180 CSV with a header row into a typed Dataset
    :param path: CSV file
    :param schema: ColumnSchema sequence (or (name, kind) pairs) the header must match in order
    :return: Dataset
    """
    schema = make_schema(schema)
    frame = _read_frame(path)

    header = list(frame.columns)
    expected = [column.name for column in schema]
    if header != expected:
        mismatch = next((i for i, (a, b) in enumerate(zip(header, expected)) if a != b),
                        min(len(header), len(expected)))
        raise DataError('{}: header does not match schema at column {} (found {!r}, expected {!r}; '
                        '{} columns found, {} expected)'.format(
                            path, mismatch + 1,
                            header[mismatch] if mismatch < len(header) else None,
                            expected[mismatch] if mismatch < len(expected) else None,
                            len(header), len(expected)))

    # short rows come back padded with NaN
    missing = frame.isna().any(axis=1).to_numpy()
    if missing.any():
        row = int(np.argmax(missing)) + 1
        raise DataError('{}: ragged row {}: expected {} fields'.format(path, row, len(expected)))

    columns = {}
    labels = np.zeros(len(frame), dtype=np.int64)
    for column in schema:
        cells = frame[column.name].to_numpy(dtype=object)
        if column.kind == LABEL:
            stripped = np.array([cell.strip() for cell in cells], dtype=object)
            bad = ~np.isin(stripped, ['0', '1'])
            if bad.any():
                row = int(np.argmax(bad))
                raise DataError('{}: row {}, column {!r}: label {!r} is not 0 or 1'.format(
                    path, row + 1, column.name, cells[row]))
            labels = (stripped == '1').astype(np.int64)
        elif column.kind == NUMERIC:
            columns[column.name] = _parse_numeric(path, column.name, cells)
        else:
            columns[column.name] = cells

    dataset = Dataset(schema, columns, labels)
    logger.info('loaded %s: %s', path, dataset)
    return dataset


def _parse_numeric(path, name, cells):
    try:
        values = cells.astype(np.float64)
    except ValueError:
        values = None
    if values is not None and np.all(np.isfinite(values)):
        return values

    for row, cell in enumerate(cells):
        try:
            value = float(cell)
        except ValueError:
            raise DataError('{}: row {}, column {!r}: cannot parse {!r} as a number'.format(
                path, row + 1, name, cell))
        if not np.isfinite(value):
            raise DataError('{}: row {}, column {!r}: non-finite value {!r}'.format(path, row + 1, name, cell))
    raise DataError('{}: column {!r}: cannot parse as numbers'.format(path, name))


def write_csv(d, path):
    """write a Dataset so that load_csv(path, d.schema) reproduces it"""
    folder = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder, exist_ok=True)
    d.to_frame().to_csv(path, index=False)
    logger.info('wrote %d rows to %s', d.row_count, path)


def drop_columns(d, names):
    """
    remove attribute columns; the label column cannot be dropped
    """
    known = {column.name for column in d.schema}
    unknown = [name for name in names if name not in known]
    if unknown:
        raise DataError('cannot drop unknown column(s): {}'.format(unknown))
    if d.label_name in names:
        raise DataError('cannot drop the label column {!r}'.format(d.label_name))

    dropped = set(names)
    schema = [(column.name, column.kind) for column in d.schema if column.name not in dropped]
    return Dataset(schema, {name: d.column(name) for name in d.attribute_names if name not in dropped},
                   d.labels)


def filter_unsw(d):
    """drop the id and attack_cat columns that are present"""
    return drop_columns(d, [name for name in UNSW_FILTERED_OUT if name in d.attribute_names])


def class_distribution(d):
    attack_count = int(np.sum(d.labels == 1))
    normal_count = d.row_count - attack_count
    attack_fraction = attack_count / d.row_count if d.row_count else 0.0
    return ClassDistribution(attack_count=attack_count, normal_count=normal_count,
                             attack_fraction=attack_fraction)


def load_split(path, schema='unsw-nb15-raw', drop=UNSW_FILTERED_OUT):
    """
    load one split and remove the `drop` columns it has
    :param schema: schema name or schema JSON path, see resolve_schema
    """
    d = load_csv(path, resolve_schema(schema, csv_path=path))
    present = [name for name in drop if name in d.attribute_names]
    if len(present) < len(drop):
        logger.debug('%s has no column(s) %s to drop', path, sorted(set(drop) - set(present)))
    return drop_columns(d, present) if present else d
