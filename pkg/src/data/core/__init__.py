"""
Package containing the substrate every other part of the lab is built on.
This includes:
- shared variables (core.vars);
- the base error (core.errors);
- graphs and graph algorithms (core.graph);
- ground truth and known nodes (core.regions);
- detector output (core.scores);
- named random streams (core.rng);
- event system (core.eventsys).

For more in depth documentation, read the docs for each of the
module/subpackage.

For easier access, all important classes have been exposed and won't require
typing their module. For example, to use the Graph class you can write
'core.Graph' instead of 'core.graph.Graph'.
"""

# Modules
import core.vars

# Subpackages
import core.eventsys

# Expose useful classes and functions
from core.errors import LabError
from core.regions import RegionLabels
from core.regions import TrainSplit
from core.regions import LabelError
from core.graph import Graph
from core.graph import GraphError
from core.graph import build_graph
from core.graph import bfs_distance_sets
from core.graph import compose_regions
from core.scores import ScoreVector
from core.scores import ScoreError
from core.rng import derive_rng
from core.rng import derive_seed
