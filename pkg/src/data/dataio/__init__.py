"""
Package containing every file format of the lab:
- edge lists and id maps (dataio.edgelist);
- ground truth and known node files (dataio.labels);
- score files (dataio.scores);
- result files and plot series (dataio.results);
- dataset descriptors (dataio.dataset);
- network directories (dataio.store).

For easier access, all important classes have been exposed and won't require
typing their module.
"""

# Expose classes in modules for easy access
from dataio.edgelist import IdMap
from dataio.edgelist import DataFormatError
from dataio.edgelist import load_edge_list
from dataio.edgelist import write_edge_list
from dataio.labels import load_labels
from dataio.labels import write_labels
from dataio.labels import load_split
from dataio.labels import write_split
from dataio.scores import write_scores
from dataio.scores import read_scores
from dataio.results import RESULT_FIELDS
from dataio.results import write_results
from dataio.results import read_results
from dataio.results import mean_std
from dataio.results import plot_series
from dataio.results import write_plot_data
from dataio.dataset import DatasetDescriptor
from dataio.dataset import resolve_data_path
from dataio.store import save_network
from dataio.store import load_network
from dataio.store import load_meta
