"""
Package containing the graph samplers used by the pretraining protocol.
"""

# Expose classes in modules for easy access
from sampling.forestfire import SampleResult
from sampling.forestfire import SamplingError
from sampling.forestfire import forest_fire_sample
from sampling.forestfire import residual_graph
from sampling.forestfire import sample_size
from sampling.networks import restrict_network
from sampling.networks import split_network
