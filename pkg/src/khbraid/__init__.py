"""Khovanov homology over F2 of braid closures, the basepoint module
structure, and the transverse class psi."""

from .basepoints import ModuleStructure, chain_action, homology_action, is_free_rank_one, module_structure
from .braid import (BraidWord, ClosureDiagram, closure_diagram, closure_permutation,
                    component_count, free_reduce, mirror, parse_braid, stabilize, writhe)
from .cube import (DEFAULT_MAX_CROSSINGS, EnhancedState, KhComplex, Resolution,
                   braid_like_vertex, build_complex, edge_map, gradings, resolve)
from .errors import BraidParseError, CapExceededError, ChainMapError, ConsistencyError
from .f2 import F2Matrix, SubquotientBasis, homology, image_basis, induced_map, kernel_basis, membership, rank
from .homology import HomologyTable, betti_table, graded_euler_characteristic, khovanov, mirror_table_check
from .oracles import dense_homology_oracle, kauffman_state_sum
from .transverse import (TransverseReport, Verdict, admissible_component_counts, certify,
                         euler_component_check, fiber_genus, max_fibered_euler_char, psi_class,
                         psi_is_nonzero)

__version__ = "0.1.0"
