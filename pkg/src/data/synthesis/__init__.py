"""
Package containing everything needed to build a labeled network to run
detectors on:
- region generators (synthesis.generators);
- attack edge placement (synthesis.attack);
- network descriptors and bundles (synthesis.network).

For easier access, all important classes have been exposed and won't require
typing their module.
"""

# Expose classes in modules for easy access
from synthesis.generators import generate_ba
from synthesis.generators import generate_pl
from synthesis.generators import SynthesisError
from synthesis.attack import AttackConfig
from synthesis.attack import AttackError
from synthesis.attack import draw_edge_kinds
from synthesis.attack import place_attack_edges
from synthesis.network import RegionModel
from synthesis.network import SynthSpec
from synthesis.network import LabeledNetwork
from synthesis.network import sample_train_split
from synthesis.network import attack_network
from synthesis.network import build_regions
from synthesis.network import synthesize_network
from synthesis.network import labeled_network_from_dataset
