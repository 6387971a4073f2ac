from .core import Graph, TemporalGraph, degree, degrees, density, symmetrize  # noqa
from .io import load_graph, save_graph  # noqa
