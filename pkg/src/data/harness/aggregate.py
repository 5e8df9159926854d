"""
Module containing the aggregation of run records into experiment cells.
"""
from dataio.results import mean_std

# Fields identifying a cell: every seed of a cell is one sample of it
CELL_FIELDS = ('experiment', 'dataset', 'model', 'algorithm', 'attack',
               'attack_edges_per_sybil', 'p_targeted')


def aggregate(records):
    """
    Group 'records' (RunRecords or mappings) by CELL_FIELDS and return one
    mapping per cell, in order of first appearance, with the cell fields,
    the 'mean' and sample 'std' of the AUC over seeds and the 'count' of
    runs. Records read back from CSV have no 'attack' and group by the
    other fields.
    """
    cells = {}
    for record in records:
        data = record.to_dict() if hasattr(record, 'to_dict') else record
        key = tuple((data.get(f) or '') if f == 'attack' else data[f]
                    for f in CELL_FIELDS)
        cells.setdefault(key, []).append(data['auc'])
    rows = []
    for key, aucs in cells.items():
        mean, std = mean_std(aucs)
        row = dict(zip(CELL_FIELDS, key))
        row.update(mean=mean, std=std, count=len(aucs))
        rows.append(row)
    return rows


def format_cells(rows):
    """One human readable line per aggregated cell"""
    lines = []
    for row in rows:
        attack = f"{row['attack']} " if row.get('attack') else ''
        lines.append(f"{row['dataset']} {row['model']} {attack}"
                     f"{row['attack_edges_per_sybil']:g} edges/Sybil "
                     f"p_T={row['p_targeted']:g} {row['algorithm']}: "
                     f"AUC {row['mean']:.4f} +- {row['std']:.4f} "
                     f"(n={row['count']})")
    return lines
