"""Edge-minimizing metrics on the cocycle lattice of a multigraph.

Decides, for the dual graph of a stable curve, how the Jacobian degenerates:
whether a positive-definite quadratic form q on H^1(G, Z) exists with
q(e*) = 1 on all coedges and minimum 1 on the whole lattice, in integral
(root-lattice) or rational (strong) flavours, and what that says about
regularity of the period map into the classical toroidal compactifications.
"""
from __future__ import annotations

from .multigraph import Multigraph, GraphError
from .homology import (HomologyBasis, homology_basis, genus, decompose,
                       cubic_reduction, zero_one_cycles, simple_cycles,
                       is_coedge, is_coedge_by_columns, is_coedge_by_cycles,
                       edge_outside_2cutsets)
from .forms import (QuadForm, min_vectors, ShortVectorReport,
                    root_lattice_type, RootDecomposition,
                    totally_unimodular, resistance_form)
from .verify import EmmVerdict, verify_emm
from .embed import (planar_embed, projective_embed, Embedding, FaceCover,
                    enumerate_double_covers, surface_from_cover)
from .zemm import (decide_zemm, ZemmResult, a_type_emm, d_type_emm,
                   e_type_search, cover_form, chain_square_form)
from .qemm import (strong_qemm, strong_qemm_cubic, split_at_edge, SplitTriple,
                   strengthen)
from .torelli import (FanKind, RegularityVerdict, torelli_regular, s_of_g,
                      contraction_pullback, contraction_monotonicity_check)
from .corpus import CORPUS, CorpusEntry, corpus_graph, check_entry
from .generate import (connected_multigraphs, two_edge_connected_multigraphs,
                       bridgeless_cubic_multigraphs, planar_samples)

from .errors import BudgetExceeded

__version__ = "0.1.0"

__all__ = [
    "Multigraph", "GraphError", "HomologyBasis", "homology_basis", "genus",
    "decompose", "cubic_reduction", "zero_one_cycles", "simple_cycles",
    "is_coedge", "is_coedge_by_columns", "is_coedge_by_cycles",
    "edge_outside_2cutsets",
    "QuadForm", "min_vectors", "ShortVectorReport", "root_lattice_type",
    "RootDecomposition", "totally_unimodular", "resistance_form",
    "EmmVerdict", "verify_emm",
    "planar_embed", "projective_embed", "Embedding", "FaceCover",
    "enumerate_double_covers", "surface_from_cover",
    "decide_zemm", "ZemmResult", "a_type_emm", "d_type_emm", "e_type_search",
    "cover_form", "chain_square_form",
    "strong_qemm", "strong_qemm_cubic", "split_at_edge", "SplitTriple",
    "strengthen",
    "FanKind", "RegularityVerdict", "torelli_regular", "s_of_g",
    "contraction_pullback", "contraction_monotonicity_check",
    "CORPUS", "CorpusEntry", "corpus_graph", "check_entry",
    "connected_multigraphs", "two_edge_connected_multigraphs",
    "bridgeless_cubic_multigraphs", "planar_samples",
    "BudgetExceeded",
    "__version__",
]
