# -*- coding:utf-8 -*-
"""
Wrapper feature selection: subsets are scored by the cross-validated accuracy of the
C4.5 evaluator tree and explored by a forward best-first search.

The search keeps an open list of evaluated subsets ordered by merit (ties go to the
smaller subset, then to the lexicographically smaller position tuple). Each expansion
pops the best open subset and evaluates every one-feature extension not seen before.
An expansion that does not raise the global best by more than IMPROVEMENT_EPSILON
counts as non-improving; the search stops after `termination` of them in a row, or
when the open list runs dry.
"""
import heapq
import itertools
import json
import logging
import os
import time
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from src.preprocess.feature_subset import FeatureSubset
from src.tree.C45_tree import TreeParams, fit_tree, tree_predict
from src.utils.artifact import TOOLCHAIN_VERSION
from src.utils.errors import ConfigError, DataError
from src.wrapper.folds import stratified_folds, subsample_dataset

__all__ = ['SearchConfig', 'SearchNode', 'SearchTrace', 'SearchResult', 'SubsetEvaluator', 'evaluate_subset',
           'best_first_search', 'exhaustive_search', 'read_trace', 'selected_from_trace',
           'IMPROVEMENT_EPSILON']

logger = logging.getLogger(__name__)

IMPROVEMENT_EPSILON = 1e-6
# brute force beyond this many attributes is refused
EXHAUSTIVE_LIMIT = 16

SearchResult = namedtuple('SearchResult', ['best', 'merit', 'trace'])


@dataclass
class SearchConfig:
    folds: int = 5
    termination: object = 5  # None: run until the open list is empty
    seed: int = 0
    evaluator: TreeParams = field(default_factory=TreeParams)
    direction: str = 'forward'
    subsample: object = None  # stratified share of rows searched on, None for all
    threads: int = 1

    def validate(self):
        if not isinstance(self.folds, int) or self.folds < 2:
            raise ConfigError('folds must be an integer >= 2')
        if self.termination is not None and (not isinstance(self.termination, int) or self.termination < 1):
            raise ConfigError('termination must be an integer >= 1 or None')
        if self.direction != 'forward':
            raise ConfigError('only forward search is supported, got {!r}'.format(self.direction))
        if self.subsample is not None and not 0.0 < float(self.subsample) <= 1.0:
            raise ConfigError('subsample must be in (0, 1]')
        if not isinstance(self.threads, int) or self.threads < 1:
            raise ConfigError('threads must be an integer >= 1')
        self.evaluator.validate()
        return self

    def to_dict(self):
        return {'folds': self.folds, 'termination': self.termination, 'seed': self.seed,
                'evaluator': self.evaluator.to_dict(), 'direction': self.direction, 'subsample': self.subsample}

    @classmethod
    def from_config(cls, config):
        """SearchConfig from the run Config"""
        return cls(folds=config.folds, termination=config.termination, seed=config.seed,
                   evaluator=TreeParams.from_dict(config.evaluator), subsample=config.subsample,
                   threads=config.threads).validate()


@dataclass(frozen=True)
class SearchNode:
    positions: tuple  # sorted attribute indices
    merit: float

    def key(self):
        """heap order: higher merit, then fewer features, then smaller positions"""
        return -self.merit, len(self.positions), self.positions


class SearchTrace:
    """
    in-memory log of one search, optionally mirrored line by line to a JSONL file
    """

    def __init__(self, header, path=None):
        self.header = header
        self.records = []
        self.summary = None
        self.path = path
        self._stream = None
        if path is not None:
            folder = os.path.dirname(os.path.abspath(path))
            os.makedirs(folder, exist_ok=True)
            self._stream = open(path, 'w', encoding='utf-8')
            self._write(dict(header, type='header'))

    def _write(self, record):
        if self._stream is not None:
            self._stream.write(json.dumps(record, sort_keys=True) + '\n')
            # every line hits the disk so an interrupted run can resume
            self._stream.flush()

    def add_expansion(self, record):
        self.records.append(record)
        self._write(dict(record, type='expansion'))

    def finish(self, summary):
        self.summary = summary
        self._write(dict(summary, type='summary'))
        self.close()

    def close(self):
        if self._stream is not None:
            self._stream.close()
            self._stream = None

    @property
    def best_so_far(self):
        return [record['best_merit'] for record in self.records]


class SubsetEvaluator:
    """
    merit of attribute subsets on one dataset with fixed folds, memoised by the sorted
    attribute positions
    """

    def __init__(self, d, cfg):
        self.cfg = cfg.validate()
        self.d = d
        self.names = d.attribute_names
        self.assignment = stratified_folds(d, cfg.folds, cfg.seed)
        self.cache = {}
        self.fits = 0

    def canonical(self, subset):
        """sorted attribute positions of a FeatureSubset, name list or position iterable"""
        if isinstance(subset, FeatureSubset) or (subset and isinstance(next(iter(subset)), str)):
            lookup = {name: index for index, name in enumerate(self.names)}
            unknown = [name for name in subset if name not in lookup]
            if unknown:
                raise DataError('unknown feature name(s): {}'.format(unknown))
            return tuple(sorted(lookup[name] for name in subset))
        return tuple(sorted(int(p) for p in subset))

    def subset_of(self, positions):
        return FeatureSubset(names=[self.names[p] for p in positions])

    def _cross_validate(self, positions):
        projected = self.d.select([self.names[p] for p in positions])
        correct = []
        for fold in range(self.cfg.folds):
            held_out = np.nonzero(self.assignment == fold)[0]
            training = np.nonzero(self.assignment != fold)[0]
            tree = fit_tree(projected, self.cfg.evaluator, rows=training)
            predictions = tree_predict(tree, projected.take(held_out))
            correct.append(float(np.mean(predictions == projected.labels[held_out])))
        return float(np.mean(correct))

    def evaluate(self, positions):
        return self.evaluate_many([positions])[0]

    def evaluate_many(self, subsets):
        """
        merits of several subsets; new ones may be cross-validated concurrently,
        results are stored in the order given
        """
        keys = [self.canonical(subset) for subset in subsets]
        pending = [key for key in dict.fromkeys(keys) if key not in self.cache]
        if pending:
            if self.cfg.threads > 1 and len(pending) > 1:
                with ThreadPoolExecutor(max_workers=self.cfg.threads) as pool:
                    merits = list(pool.map(self._cross_validate, pending))
            else:
                merits = [self._cross_validate(key) for key in pending]
            for key, merit in zip(pending, merits):
                self.cache[key] = merit
                self.fits += self.cfg.folds
                logger.debug('merit %.6f for %s', merit, [self.names[p] for p in key])
        return [self.cache[key] for key in keys]

    def seed_cache(self, merits):
        """
        :param merits: mapping of position tuples to merits from an earlier run
        """
        for key, merit in merits.items():
            self.cache.setdefault(tuple(sorted(key)), float(merit))


def evaluate_subset(d, subset, cfg, evaluator=None):
    """
    mean k-fold accuracy of the evaluator tree on the subset's columns
    :param evaluator: SubsetEvaluator to share folds and the memo with other calls
    """
    evaluator = evaluator or SubsetEvaluator(d, cfg)
    return evaluator.evaluate(subset)


def _trace_header(d, cfg):
    return {'toolchain': TOOLCHAIN_VERSION, 'search': cfg.to_dict(), 'rows': d.row_count,
            'attributes': d.attribute_names, 'fingerprint': d.fingerprint(),
            'merit_data': 'raw'}


def best_first_search(d, cfg=None, trace_path=None, resume_from=None, tags=None):
    """
    :param d: Dataset (raw, unnormalised)
    :param cfg: SearchConfig
    :param trace_path: JSONL file receiving one line per expansion
    :param resume_from: earlier trace whose merits are reused instead of refitted
    :param tags: extra header fields, e.g. the run's config hash
    :return: SearchResult(best FeatureSubset, its merit, SearchTrace)
    """
    start = time.perf_counter()
    cfg = (cfg or SearchConfig()).validate()
    if not d.attributes:
        raise DataError('the dataset has no attributes to select from')
    d = subsample_dataset(d, cfg.subsample, cfg.seed)
    evaluator = SubsetEvaluator(d, cfg)
    header = dict(_trace_header(d, cfg), **(tags or {}))

    if resume_from is not None and os.path.exists(resume_from):
        previous = read_trace(resume_from)
        if previous['header'].get('fingerprint') != header['fingerprint'] or \
                previous['header'].get('search') != header['search']:
            raise ConfigError('trace {} belongs to another dataset or search setting'.format(resume_from))
        evaluator.seed_cache(_trace_merits(previous))
        logger.info('resuming with %d cached merits from %s', len(evaluator.cache), resume_from)

    trace = SearchTrace(header, path=trace_path)
    try:
        best, best_merit, stopped = _search(evaluator, cfg, trace)
    except BaseException:
        trace.close()
        raise

    selected = evaluator.subset_of(best)
    trace.finish({'selected': list(selected.names), 'positions': list(best), 'merit': best_merit,
                  'expansions': len(trace.records), 'evaluated': len(evaluator.cache),
                  'fits': evaluator.fits, 'stopped': stopped, 'fs_seconds': time.perf_counter() - start})
    logger.info('selected %d of %d features, merit %.4f (%s after %d expansions)',
                len(best), len(d.attributes), best_merit, stopped, len(trace.records))
    return SearchResult(best=selected, merit=best_merit, trace=trace)


def _search(evaluator, cfg, trace):
    width = len(evaluator.names)
    start = SearchNode(positions=(), merit=evaluator.evaluate(()))
    generated = {start.positions}
    open_list = [(start.key(), start)]
    best, non_improving = start, 0
    stopped = 'exhausted'

    while open_list:
        _, node = heapq.heappop(open_list)
        children = [tuple(sorted(node.positions + (p,))) for p in range(width) if p not in node.positions]
        children = [child for child in children if child not in generated]
        generated.update(children)
        merits = evaluator.evaluate_many(children)

        nodes = [SearchNode(positions=child, merit=merit) for child, merit in zip(children, merits)]
        for child in nodes:
            heapq.heappush(open_list, (child.key(), child))

        leader = min(nodes, key=SearchNode.key) if nodes else None
        if leader is not None and leader.merit > best.merit + IMPROVEMENT_EPSILON:
            best, non_improving = leader, 0
        else:
            non_improving += 1

        trace.add_expansion({
            'step': len(trace.records),
            'expanded': list(node.positions),
            'merit': node.merit,
            'children': [[list(child.positions), child.merit] for child in nodes],
            'best': list(best.positions),
            'best_merit': best.merit,
            'non_improving': non_improving,
        })
        logger.debug('expanded %s (%.6f), %d children, best %.6f, non-improving %d',
                     list(node.positions), node.merit, len(nodes), best.merit, non_improving)

        if cfg.termination is not None and non_improving >= cfg.termination:
            stopped = 'termination'
            break

    return best.positions, best.merit, stopped


def exhaustive_search(d, cfg=None, evaluator=None):
    """
    brute-force oracle over every subset, same folds and tie order as the best-first search
    :return: SearchResult with no trace
    """
    cfg = (cfg or SearchConfig()).validate()
    evaluator = evaluator or SubsetEvaluator(d, cfg)
    width = len(evaluator.names)
    if width > EXHAUSTIVE_LIMIT:
        raise ConfigError('exhaustive search over {} attributes is refused (limit {})'.format(width, EXHAUSTIVE_LIMIT))

    subsets = [combo for size in range(width + 1) for combo in itertools.combinations(range(width), size)]
    merits = evaluator.evaluate_many(subsets)
    best = min((SearchNode(positions=s, merit=m) for s, m in zip(subsets, merits)), key=SearchNode.key)
    return SearchResult(best=evaluator.subset_of(best.positions), merit=best.merit, trace=None)


# ----------------------------------------------------------------------
# trace files
# ----------------------------------------------------------------------
def read_trace(path):
    """
    :return: {'header': dict, 'expansions': [dict], 'summary': dict or None}
    """
    if not os.path.exists(path):
        raise DataError('trace file not found: {}'.format(path))
    parsed = {'header': None, 'expansions': [], 'summary': None}
    with open(path, 'r', encoding='utf-8') as f:
        for number, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError:
                # a run killed mid-write leaves a torn last line
                logger.warning('%s: ignoring unreadable line %d', path, number)
                continue
            kind = record.pop('type', None)
            if kind == 'header':
                parsed['header'] = record
            elif kind == 'expansion':
                parsed['expansions'].append(record)
            elif kind == 'summary':
                parsed['summary'] = record
    if parsed['header'] is None:
        raise DataError('{} is not a search trace (no header line)'.format(path))
    return parsed


def _trace_merits(parsed):
    merits = {}
    for record in parsed['expansions']:
        merits[tuple(record['expanded'])] = record['merit']
        for positions, merit in record['children']:
            merits[tuple(positions)] = merit
    return merits


def selected_from_trace(path):
    """FeatureSubset chosen by a finished search"""
    parsed = read_trace(path)
    if parsed['summary'] is None:
        raise DataError('trace {} has no summary; the search did not finish'.format(path))
    return FeatureSubset(names=parsed['summary']['selected'])
