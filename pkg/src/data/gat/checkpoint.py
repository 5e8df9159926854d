"""
Module containing the SybilGAT checkpoint format. A checkpoint is a JSON
document:

    {
      "format": "sybillab-gat",
      "version": 1,
      "hyper": {...every GatHyper field...},
      "threshold": 0.5,
      "layers": [
        {"in_dim": 1, "out_dim": 4, "heads": 4,
         "weight": [...], "attention": [...], "bias": [...]},
        ...
      ]
    }

Arrays are stored flat in row-major order: 'weight' has in_dim x
heads * out_dim entries, 'attention' heads x 2 * out_dim and 'bias'
heads * out_dim. Floats are written with full precision, so loading a saved
model gives back bit-identical parameters.
"""
import json
import pathlib

import numpy as np

from core import LabError
from gat.model import GatHyper
from gat.model import GatModel
from gat.model import ModelError

FORMAT = 'sybillab-gat'
VERSION = 1


def model_to_dict(model, threshold=0.5):
    layers = []
    for layer in model.layers:
        layers.append({'in_dim': layer.in_dim,
                       'out_dim': layer.out_dim,
                       'heads': layer.heads,
                       'weight': layer.weight.ravel().tolist(),
                       'attention': layer.attention.ravel().tolist(),
                       'bias': layer.bias.ravel().tolist()})
    return {'format': FORMAT, 'version': VERSION,
            'hyper': model.hyper.to_dict(), 'threshold': float(threshold),
            'layers': layers}


def model_from_dict(data):
    """Rebuild a GatModel and its threshold from a checkpoint mapping"""
    if not isinstance(data, dict) or data.get('format') != FORMAT:
        raise CheckpointError('Not a SybilGAT checkpoint')
    if data.get('version') != VERSION:
        raise CheckpointError('Unsupported checkpoint version',
                              data.get('version'))
    try:
        model = GatModel(GatHyper.from_dict(data['hyper']))
        stored = data['layers']
        if len(stored) != len(model.layers):
            raise CheckpointError('Layer count does not match the '
                                  'hyperparameters', len(stored))
        for layer, raw in zip(model.layers, stored):
            for name, param in zip(('weight', 'attention', 'bias'),
                                   layer.parameters()):
                values = np.asarray(raw[name], dtype=np.float64)
                if values.size != param.size:
                    raise CheckpointError(f'Wrong size for {name}',
                                          (values.size, param.size))
                param[...] = values.reshape(param.shape)
        threshold = float(data.get('threshold', 0.5))
    except (KeyError, TypeError, ModelError) as e:
        raise CheckpointError('Malformed checkpoint', str(e)) from e
    return model, threshold


def save_checkpoint(path, model, threshold=0.5):
    """Write 'model' and its decision 'threshold' to 'path'"""
    path = pathlib.Path(path)
    with path.open('w') as f:
        json.dump(model_to_dict(model, threshold), f)
        f.write('\n')


def load_checkpoint(path):
    """Read a checkpoint written by save_checkpoint(): (GatModel, threshold)"""
    path = pathlib.Path(path)
    try:
        with path.open() as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise CheckpointError('Checkpoint is not valid JSON', path) from e
    return model_from_dict(data)


class CheckpointError(LabError):
    """Error raised for unreadable or inconsistent checkpoints."""
