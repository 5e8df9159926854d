"""
Module containing the result file formats of the experiment harness and the
plot series derived from them.

A result record is a mapping with the fields of RESULT_FIELDS (the CSV
columns) plus 'threshold', 'epochs' and the 'attack' label (JSON only).
'wall_ms' is empty in CSV and null in JSON when wall time is not recorded.
"""
import csv
import json
import pathlib

import numpy as np
import scipy.stats

from dataio.edgelist import DataFormatError

RESULT_FIELDS = ['experiment', 'dataset', 'model', 'algorithm', 'seed',
                 'attack_edges_per_sybil', 'p_targeted', 'auc', 'wall_ms']
EXTRA_FIELDS = ['threshold', 'epochs', 'attack']

_INTEGERS = {'experiment', 'seed', 'epochs'}
_FLOATS = {'attack_edges_per_sybil', 'p_targeted', 'auc', 'wall_ms',
           'threshold'}

FORMATS = ('csv', 'json')


def _as_mapping(record):
    return record.to_dict() if hasattr(record, 'to_dict') else dict(record)


def result_format(path):
    """Result format implied by the extension of 'path'"""
    suffix = pathlib.Path(path).suffix.lower().lstrip('.')
    return suffix if suffix in FORMATS else 'csv'


def write_results(records, path, fmt=None):
    """
    Write 'records' (mappings or objects with to_dict()) to 'path' as 'csv'
    or 'json'. The format defaults to the one of the file extension.
    """
    fmt = fmt or result_format(path)
    if fmt not in FORMATS:
        raise DataFormatError('Unknown result format', fmt)
    rows = [_as_mapping(r) for r in records]
    path = pathlib.Path(path)
    if fmt == 'json':
        fields = RESULT_FIELDS + EXTRA_FIELDS
        with path.open('w') as f:
            json.dump([{k: row.get(k) for k in fields} for row in rows], f,
                      indent=1)
            f.write('\n')
        return
    with path.open('w', newline='') as f:
        writer = csv.DictWriter(f, fieldnames=RESULT_FIELDS,
                                extrasaction='ignore', lineterminator='\n')
        writer.writeheader()
        for row in rows:
            writer.writerow({k: ('' if row.get(k) is None else row.get(k))
                             for k in RESULT_FIELDS})


def _convert(key, value):
    if value is None or value == '':
        return None
    if key in _INTEGERS:
        return int(value)
    if key in _FLOATS:
        return float(value)
    return value


def read_results(path, fmt=None):
    """Read a result file written by write_results() into mappings"""
    fmt = fmt or result_format(path)
    path = pathlib.Path(path)
    if fmt == 'json':
        with path.open() as f:
            rows = json.load(f)
        return [{k: _convert(k, v) for k, v in row.items()} for row in rows]
    with path.open(newline='') as f:
        reader = csv.DictReader(f)
        if reader.fieldnames != RESULT_FIELDS:
            raise DataFormatError('Unexpected result file header',
                                  reader.fieldnames)
        return [{k: _convert(k, v) for k, v in row.items()}
                for row in reader]


def mean_std(values):
    """Mean and sample standard deviation (0 for a single value)"""
    values = np.asarray(values, dtype=np.float64)
    if len(values) == 0:
        return float('nan'), float('nan')
    std = float(np.std(values, ddof=1)) if len(values) > 1 else 0.0
    return float(np.mean(values)), std


def plot_series(records, x='attack_edges_per_sybil'):
    """
    Build one curve per (experiment, dataset, model, attack, algorithm): for
    every value of the field 'x', the mean and std of the AUC over seeds.
    Each curve also carries the Spearman correlation between x and the mean
    AUC (None when undefined, e.g. a single point).
    """
    curves = {}
    for record in map(_as_mapping, records):
        key = (record['experiment'], record['dataset'], record['model'],
               record.get('attack') or '', record['algorithm'])
        curves.setdefault(key, {}).setdefault(record[x], []) \
            .append(record['auc'])

    series = []
    for key in sorted(curves, key=lambda k: tuple(str(p) for p in k)):
        points = curves[key]
        xs = sorted(points)
        stats = [mean_std(points[value]) for value in xs]
        means = [s[0] for s in stats]
        rho = None
        if len(xs) > 1 and len(set(means)) > 1:
            rho = float(scipy.stats.spearmanr(xs, means)[0])
        series.append({'experiment': key[0], 'dataset': key[1],
                       'model': key[2], 'attack': key[3],
                       'algorithm': key[4],
                       'x_field': x, 'x': xs, 'mean': means,
                       'std': [s[1] for s in stats],
                       'count': [len(points[value]) for value in xs],
                       'spearman': rho})
    return series


def write_plot_data(series, path):
    """Write plot series as JSON"""
    with pathlib.Path(path).open('w') as f:
        json.dump(series, f, indent=1)
        f.write('\n')
