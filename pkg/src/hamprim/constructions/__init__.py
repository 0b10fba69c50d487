"""Hamilton-cycle builders for the vertex-transitive families, and the case registry."""

from .common import (DENSITY, HAMILTONIAN, NON_HAMILTONIAN, QUOTIENT_LIFT, SEARCH, SINGER_COVER,
                     SPLICE, STRATEGIES, TIMEOUT, CaseDescriptor, CaseResult, ConstructionFailed,
                     run_ladder)
from .combinatorial import johnson_case, johnson_graph, johnson_splice, kneser_case, kneser_graph
from .dihedral import dminus_pipeline, dplus_pipeline
from .geometric import grassmann_case, orthogonal_case, singer_partition
from .families import FAMILIES, get_family, table_case_runner
