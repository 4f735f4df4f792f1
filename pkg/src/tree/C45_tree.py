# -*- coding:utf-8 -*-
"""
C4.5-style decision tree induction.

Numeric attributes split in two at a midpoint threshold (x <= t, x > t); nominal
attributes split multi-way with one child per category seen at the node, and unseen
categories follow the child that received the most training rows. Splits maximise gain
ratio (or Gini decrease for forest trees). Gain-ratio splits follow J48: both branches of a
split hold a minimum share of the rows, numeric gains pay for the number of thresholds tried,
and only splits with at least the average gain compete on ratio. The grown tree is pruned
bottom-up by subtree replacement against the pessimistic (upper confidence limit) error estimate.
"""
import logging
from collections import deque
from dataclasses import dataclass, asdict, field
from typing import Optional

import numpy as np
from scipy.stats import norm

from src.dataset.unsw_nb15 import NUMERIC, NOMINAL
from src.tree.criteria import GAIN_RATIO, GINI, MIN_GAIN, scan_numeric, score_nominal
from src.utils.errors import ConfigError, DataError, SchemaMismatchError
from src.utils.policies import majority_label

__all__ = ['TreeParams', 'Leaf', 'Split', 'TreeData', 'fit_tree', 'grow_tree', 'prune_tree',
           'added_errors', 'min_split_size', 'predict_tree', 'tree_predict', 'tree_scores', 'tree_size',
           'tree_depth', 'describe_tree', 'tree_to_dict', 'tree_from_dict']

logger = logging.getLogger(__name__)

# a subtree is replaced when the leaf estimate is within this many errors of it
PRUNE_SLACK = 0.1
# upper clip of the minimum split size
MAX_MIN_SPLIT = 25
AVERAGE_GAIN_SLACK = 1e-3


@dataclass
class TreeParams:
    min_leaf: int = 2
    pruning_confidence: float = 0.25
    max_depth: Optional[int] = None
    criterion: str = GAIN_RATIO
    prune: bool = True

    def validate(self):
        if not isinstance(self.min_leaf, int) or self.min_leaf < 1:
            raise ConfigError('min_leaf must be an integer >= 1')
        if not 0.0 < self.pruning_confidence < 1.0:
            raise ConfigError('pruning_confidence must be in (0, 1)')
        if self.max_depth is not None and (not isinstance(self.max_depth, int) or self.max_depth < 0):
            raise ConfigError('max_depth must be a non-negative integer or None')
        if self.criterion not in (GAIN_RATIO, GINI):
            raise ConfigError('criterion must be {!r} or {!r}'.format(GAIN_RATIO, GINI))
        return self

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, values):
        try:
            return cls(**(values or {})).validate()
        except TypeError as err:
            raise ConfigError('bad tree parameters: {}'.format(err))


@dataclass
class Leaf:
    counts: tuple  # (normal rows, attack rows) that reached the leaf

    @property
    def label(self):
        return majority_label(self.counts)

    @property
    def attack_fraction(self):
        total = self.counts[0] + self.counts[1]
        return self.counts[1] / total if total else 1.0


@dataclass
class Split:
    attribute: str
    kind: str
    counts: tuple
    children: list
    threshold: Optional[float] = None
    categories: tuple = ()  # nominal only, one per child
    default: int = 0  # child taken by unseen categories
    _routes: dict = field(default=None, repr=False, compare=False)

    def route(self, category):
        if self._routes is None:
            self._routes = {category: index for index, category in enumerate(self.categories)}
        return self._routes.get(category, self.default)


class TreeData:
    """
    one float column per attribute (nominal columns as sorted-vocabulary codes)
    """

    def __init__(self, names, kinds, columns, vocabularies, labels):
        self.names = names
        self.kinds = kinds
        self.columns = columns
        self.vocabularies = vocabularies
        self.labels = labels

    @classmethod
    def from_dataset(cls, d):
        names, kinds, columns, vocabularies = [], [], [], []
        for column in d.attributes:
            values = d.column(column.name)
            names.append(column.name)
            kinds.append(column.kind)
            if column.kind == NOMINAL:
                vocabulary, codes = np.unique(values.astype(str), return_inverse=True)
                columns.append(codes.ravel().astype(np.int64))
                vocabularies.append(tuple(vocabulary.tolist()))
            else:
                columns.append(values)
                vocabularies.append(None)
        return cls(names, kinds, columns, vocabularies, d.labels)

    @property
    def width(self):
        return len(self.names)


def _counts(labels):
    attacks = int(np.sum(labels == 1))
    return labels.shape[0] - attacks, attacks


def min_split_size(n, min_leaf):
    """rows each of two branches must hold: a tenth of the per-class share, clipped to [min_leaf, 25]"""
    return float(min(MAX_MIN_SPLIT, max(min_leaf, 0.1 * n / 2.0)))


def _gain_ratio_candidates(data, rows, y, params, candidates):
    """
    (ratio, gain, position, rule) of every admissible gain-ratio split; numeric gains
    pay log2(number of candidate thresholds) / n
    """
    n = rows.shape[0]
    floor = min_split_size(n, params.min_leaf)
    found = []
    for j in candidates:
        values = data.columns[j][rows]
        if data.kinds[j] == NOMINAL:
            scored = score_nominal(values, y, len(data.vocabularies[j]), floor, GAIN_RATIO)
            if scored is not None and scored[1] > MIN_GAIN:
                found.append((scored[0], scored[1], j, scored[2]))
            continue
        thresholds, ratios, gains = scan_numeric(values, y, floor, GAIN_RATIO)
        if thresholds.shape[0] == 0:
            continue
        k = int(np.argmax(gains))
        gain = float(gains[k]) - np.log2(thresholds.shape[0]) / n
        if gain <= MIN_GAIN:
            continue
        split_info = float(gains[k] / ratios[k]) if ratios[k] > 0 else 0.0
        found.append((gain / split_info if split_info > 0 else 0.0, gain, j, float(thresholds[k])))
    return found


def _find_split(data, rows, y, params, candidates):
    """best admissible split over `candidates`, lowest position winning equal scores"""
    if params.criterion == GAIN_RATIO:
        found = _gain_ratio_candidates(data, rows, y, params, candidates)
        if not found:
            return None
        # only splits with at least the average gain compete on ratio
        average = float(np.mean([gain for _, gain, _, _ in found]))
        best = None
        for ratio, gain, j, rule in found:
            if gain >= average - AVERAGE_GAIN_SLACK and (best is None or ratio > best[0]):
                best = (ratio, j, rule)
        return best

    best = None
    for j in candidates:
        values = data.columns[j][rows]
        if data.kinds[j] == NOMINAL:
            scored = score_nominal(values, y, len(data.vocabularies[j]), params.min_leaf, params.criterion)
            if scored is None or scored[1] <= MIN_GAIN:
                continue
            if best is None or scored[0] > best[0]:
                best = (scored[0], j, scored[2])
        else:
            thresholds, scores, gains = scan_numeric(values, y, params.min_leaf, params.criterion)
            useful = gains > MIN_GAIN
            if not np.any(useful):
                continue
            scores = np.where(useful, scores, -np.inf)
            k = int(np.argmax(scores))
            if best is None or scores[k] > best[0]:
                best = (float(scores[k]), j, float(thresholds[k]))
    return best


def grow_tree(data, rows, params, rng=None, max_features=None):
    """
    top-down induction without pruning
    :param data: TreeData
    :param rows: training row indices
    :param params: TreeParams
    :param rng: numpy Generator, needed when max_features is set
    :param max_features: random candidate attributes per node (None = all)
    :return: root node
    """
    holder = [None]
    stack = [(np.asarray(rows, dtype=np.int64), 0, holder, 0)]
    all_attributes = np.arange(data.width)

    while stack:
        rows, depth, parent, slot = stack.pop()
        y = data.labels[rows]
        counts = _counts(y)

        stop = (counts[0] == 0 or counts[1] == 0 or rows.shape[0] < 2 * params.min_leaf
                or (params.max_depth is not None and depth >= params.max_depth) or data.width == 0)
        best = None
        if not stop:
            if max_features is not None and max_features < data.width:
                candidates = np.sort(rng.choice(data.width, size=max_features, replace=False))
            else:
                candidates = all_attributes
            best = _find_split(data, rows, y, params, candidates)

        if best is None:
            parent[slot] = Leaf(counts=counts)
            continue

        _, j, rule = best
        values = data.columns[j][rows]
        if data.kinds[j] == NOMINAL:
            present = rule
            categories = tuple(data.vocabularies[j][code] for code in present)
            parts = [rows[values == code] for code in present]
            default = int(np.argmax([part.shape[0] for part in parts]))
            node = Split(attribute=data.names[j], kind=NOMINAL, counts=counts, children=[None] * len(parts),
                         categories=categories, default=default)
        else:
            parts = [rows[values <= rule], rows[values > rule]]
            node = Split(attribute=data.names[j], kind=NUMERIC, counts=counts, children=[None, None],
                         threshold=rule)
        parent[slot] = node
        for index in reversed(range(len(parts))):
            stack.append((parts[index], depth + 1, node.children, index))

    return holder[0]


def added_errors(n, e, confidence):
    """
    extra errors implied by the upper confidence limit of the binomial error rate
    at a leaf with n rows and e training errors
    """
    if confidence > 0.5:
        return 0.0
    if e < 1:
        base = n * (1.0 - confidence ** (1.0 / n))
        if e == 0:
            return base
        return base + e * (added_errors(n, 1.0, confidence) - base)
    if e + 0.5 >= n:
        return max(n - e, 0.0)
    z = norm.ppf(1.0 - confidence)
    f = (e + 0.5) / n
    r = (f + z * z / (2 * n) + z * np.sqrt(f / n - f * f / n + z * z / (4 * n * n))) / (1 + z * z / n)
    return r * n - e


def _leaf_estimate(counts, confidence):
    n = counts[0] + counts[1]
    e = n - max(counts)
    return e + added_errors(float(n), float(e), confidence)


def prune_tree(root, confidence):
    """
    bottom-up subtree replacement; returns the (possibly new) root
    """
    order = []
    stack = [(root, None, 0)]
    while stack:
        node, parent, slot = stack.pop()
        order.append((node, parent, slot))
        if isinstance(node, Split):
            for index, child in enumerate(node.children):
                stack.append((child, node, index))

    estimate = {}
    for node, parent, slot in reversed(order):
        if isinstance(node, Leaf):
            estimate[id(node)] = _leaf_estimate(node.counts, confidence)
            continue
        subtree = sum(estimate[id(child)] for child in node.children)
        as_leaf = _leaf_estimate(node.counts, confidence)
        if as_leaf <= subtree + PRUNE_SLACK:
            leaf = Leaf(counts=node.counts)
            estimate[id(leaf)] = as_leaf
            if parent is None:
                root = leaf
            else:
                parent.children[slot] = leaf
        else:
            estimate[id(node)] = subtree
    return root


def fit_tree(train, params=None, rng=None, max_features=None, rows=None):
    """
    :param train: Dataset with numeric and/or nominal attributes
    :param params: TreeParams, J48-like defaults when None
    :param rows: optional row indices (bootstrap samples may repeat rows)
    :return: root TreeNode (Leaf or Split)
    """
    params = (params or TreeParams()).validate()
    if train.row_count == 0:
        raise DataError('cannot fit a tree on an empty dataset')
    data = TreeData.from_dataset(train)
    rows = np.arange(train.row_count) if rows is None else np.asarray(rows, dtype=np.int64)
    root = grow_tree(data, rows, params, rng=rng, max_features=max_features)
    if params.prune:
        grown = tree_size(root)
        root = prune_tree(root, params.pruning_confidence)
        logger.debug('pruned tree from %d to %d nodes', grown, tree_size(root))
    return root


# ----------------------------------------------------------------------
# prediction
# ----------------------------------------------------------------------
def _child_of(node, value):
    if node.kind == NOMINAL:
        return node.children[node.route(str(value))]
    return node.children[0] if value <= node.threshold else node.children[1]


def predict_tree(tree, row):
    """
    :param tree: root node
    :param row: mapping attribute name -> value
    :return: 0/1, ties -> 1
    """
    node = tree
    while isinstance(node, Split):
        if node.attribute not in row:
            raise SchemaMismatchError('row has no attribute {!r}'.format(node.attribute))
        node = _child_of(node, row[node.attribute])
    return node.label


def _leaf_index(tree, d):
    """route every row of d to its leaf; returns the leaves and a leaf id per row"""
    leaves = []
    assignment = np.zeros(d.row_count, dtype=np.int64)
    stack = [(tree, np.arange(d.row_count))]
    while stack:
        node, rows = stack.pop()
        if isinstance(node, Leaf):
            assignment[rows] = len(leaves)
            leaves.append(node)
            continue
        if rows.shape[0] == 0:
            continue
        values = d.column(node.attribute)[rows]
        if node.kind == NOMINAL:
            routes = np.array([node.route(str(value)) for value in values], dtype=np.int64)
        else:
            routes = (values > node.threshold).astype(np.int64)
        for index, child in enumerate(node.children):
            stack.append((child, rows[routes == index]))
    return leaves, assignment


def tree_predict(tree, d):
    leaves, assignment = _leaf_index(tree, d)
    labels = np.array([leaf.label for leaf in leaves], dtype=np.int64)
    return labels[assignment] if leaves else np.zeros(0, dtype=np.int64)


def tree_scores(tree, d):
    """attack fraction of the leaf each row lands in; >= 0.5 is an attack"""
    leaves, assignment = _leaf_index(tree, d)
    fractions = np.array([leaf.attack_fraction for leaf in leaves], dtype=np.float64)
    return fractions[assignment] if leaves else np.zeros(0, dtype=np.float64)


# ----------------------------------------------------------------------
# inspection and persistence
# ----------------------------------------------------------------------
def _walk(tree):
    stack = [(tree, 0)]
    while stack:
        node, depth = stack.pop()
        yield node, depth
        if isinstance(node, Split):
            stack.extend((child, depth + 1) for child in node.children)


def tree_size(tree):
    return sum(1 for _ in _walk(tree))


def tree_depth(tree):
    return max(depth for _, depth in _walk(tree))


def describe_tree(tree, max_lines=200):
    lines = []
    stack = [(tree, 0, '')]
    while stack and len(lines) < max_lines:
        node, depth, prefix = stack.pop()
        indent = '|   ' * depth
        if isinstance(node, Leaf):
            lines.append('{}{}: {} ({}/{})'.format(indent, prefix, node.label, node.counts[0], node.counts[1]))
            continue
        if prefix:
            lines.append('{}{}'.format(indent, prefix))
        if node.kind == NOMINAL:
            branches = ['{} = {}'.format(node.attribute, category) for category in node.categories]
        else:
            branches = ['{} <= {:g}'.format(node.attribute, node.threshold),
                        '{} > {:g}'.format(node.attribute, node.threshold)]
        for child, branch in reversed(list(zip(node.children, branches))):
            stack.append((child, depth + (1 if prefix else 0), branch))
    return '\n'.join(lines)


def tree_to_dict(tree):
    """flat breadth-first node list; children are indices into it"""
    nodes, queue = [], deque([tree])
    while queue:
        node = queue.popleft()
        if isinstance(node, Leaf):
            nodes.append({'counts': list(node.counts)})
            continue
        first = len(nodes) + len(queue) + 1
        entry = {'attribute': node.attribute, 'kind': node.kind, 'counts': list(node.counts),
                 'children': list(range(first, first + len(node.children)))}
        if node.kind == NOMINAL:
            entry['categories'] = list(node.categories)
            entry['default'] = node.default
        else:
            entry['threshold'] = node.threshold
        nodes.append(entry)
        queue.extend(node.children)
    return {'nodes': nodes}


def tree_from_dict(values):
    entries = values['nodes']
    built = [None] * len(entries)
    for index in reversed(range(len(entries))):
        entry = entries[index]
        counts = tuple(int(c) for c in entry['counts'])
        if 'children' not in entry:
            built[index] = Leaf(counts=counts)
            continue
        children = [built[child] for child in entry['children']]
        if entry['kind'] == NOMINAL:
            built[index] = Split(attribute=entry['attribute'], kind=NOMINAL, counts=counts, children=children,
                                 categories=tuple(entry['categories']), default=int(entry['default']))
        else:
            built[index] = Split(attribute=entry['attribute'], kind=NUMERIC, counts=counts, children=children,
                                 threshold=float(entry['threshold']))
    return built[0]
