"""Exact depth and Stanley depth of squarefree monomial ideals, aimed at
edge ideals of powers of paths and cycles."""

from .errors import CapExceededError, DegenerateError, InvalidInputError, SqfDepthError
from .graphs import Graph, GraphSpec, build_power_graph, cycle_power, edge_ideal, min_maximal_independent_set, path_power
from .homology import depth_ideal, depth_quotient, independence_complex, projective_dimension, reduced_homology_ranks
from .ideal import MonomialIdeal, SqfMonomial, VariableRenaming, minimalize
from .sdepth import CharPoset, IntervalPartition, SdepthResult, char_poset, sdepth_exact, sdepth_oracle, validate_partition

__version__ = "0.1.0"
