"""Sequential dynamical systems, acyclic orientations and update-order equivalence.

The package is split by concern:

* ``graph_core``: simple graphs, named families, surgery, automorphisms, JSON/DOT
* ``sds_engine``: local rules, SDS maps, phase spaces and equivalence notions
* ``orientations``: acyclic orientations, clicks, kappa/delta, deletion-contraction
* ``symmetry``: automorphism actions and the orbit counts alpha_bar, kappa_bar, delta_bar
* ``verification``: the reproduction checks used by ``sdscycle verify``
"""

from .errors import CapExceeded, InvalidInput, SdsError
from .graph_core import (
    Graph,
    VertexPermutation,
    automorphisms,
    bridges,
    circle,
    circulant_radius2,
    circulant_radius2_open,
    complete,
    contract_edge,
    delete_edge,
    hypercube,
    is_bipartite,
    is_connected,
    make_graph,
    named_family,
    path,
    star,
    vertex_join,
)
from .orientations import (
    ClickClassification,
    Orientation,
    alpha,
    alpha_recursive,
    classify,
    click,
    enumerate_acyclic,
    kappa_recursive,
    linear_extension,
    orientation_of_permutation,
    tutte,
    unique_source_representatives,
    update_graph_components,
)
from .sds_engine import (
    PhaseSpace,
    RuleTable,
    SdsSystem,
    State,
    apply_local,
    apply_parallel,
    apply_sds,
    builtin_rule,
    cycle_equivalent,
    cycle_multiset,
    functionally_cycle_equivalent,
    functionally_equivalent,
    phase_space,
    reflect_word,
    shift_word,
)
from .symmetry import burnside_alpha_bar, delta_bar, kappa_bar, orbit_count_acyc

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
