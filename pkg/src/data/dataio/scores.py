"""
Module containing the score file format: a CSV with a 'node,score' header,
optionally followed by a 'label' column holding the predicted class (0
honest, 1 Sybil). Scores are written with 6 significant digits.
"""
import csv
import pathlib

import numpy as np

from dataio.edgelist import DataFormatError


def write_scores(path, scores, labels=None, nodes=None):
    """
    Write the ScoreVector (or array) 'scores' for 'nodes' (all by default)
    and the predicted 'labels' if given.
    """
    values = getattr(scores, 'values', scores)
    values = np.asarray(values, dtype=np.float64)
    nodes = np.arange(len(values)) if nodes is None else np.asarray(nodes)
    path = pathlib.Path(path)
    with path.open('w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        if labels is None:
            writer.writerow(['node', 'score'])
            for node in nodes.tolist():
                writer.writerow([node, '%.6g' % values[node]])
        else:
            writer.writerow(['node', 'score', 'label'])
            for node in nodes.tolist():
                writer.writerow([node, '%.6g' % values[node],
                                 int(labels[node])])


def read_scores(path):
    """
    Read a score file. Return the node ids, the scores and the predicted
    labels (None when the file has no label column).
    """
    path = pathlib.Path(path)
    nodes = []
    values = []
    labels = []
    with path.open(newline='') as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or header[:2] != ['node', 'score']:
            raise DataFormatError('Score file must start with "node,score"',
                                  str(path))
        has_labels = len(header) > 2
        for number, row in enumerate(reader, start=2):
            try:
                nodes.append(int(row[0]))
                values.append(float(row[1]))
                if has_labels:
                    labels.append(int(row[2]))
            except (IndexError, ValueError) as e:
                raise DataFormatError(f'Malformed score at line {number}',
                                      f'{path}:{number}') from e
    return (np.asarray(nodes, dtype=np.int64),
            np.asarray(values, dtype=np.float64),
            np.asarray(labels, dtype=np.int64) if has_labels else None)
