"""
Package containing SybilGAT, a graph attention network written on numpy:
- edge layout with self-loops (gat.structure);
- attention layer with its backward pass (gat.layers);
- hyperparameters, model and loss (gat.model);
- optimizer (gat.optim);
- training, threshold and inference (gat.training);
- checkpoint files (gat.checkpoint).
"""

# Expose classes in modules for easy access
from gat.structure import AttentionStructure
from gat.layers import GatLayer
from gat.layers import LayerError
from gat.model import GatHyper
from gat.model import GatModel
from gat.model import ModelError
from gat.model import node_features
from gat.model import gat_layer_forward
from gat.model import model_forward
from gat.model import loss_and_gradients
from gat.optim import Adam
from gat.training import TrainReport
from gat.training import EarlyStopping
from gat.training import TrainingError
from gat.training import train
from gat.training import estimate_threshold
from gat.training import predict
from gat.training import predict_with_threshold
from gat.checkpoint import CheckpointError
from gat.checkpoint import save_checkpoint
from gat.checkpoint import load_checkpoint
