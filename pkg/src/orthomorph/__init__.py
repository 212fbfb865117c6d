"""Orthomorphisms of small finite groups and the orthomorphism graph of Z2 x Z4."""

from .graph import (
    ComponentReport,
    OrthGraph,
    are_orthogonal,
    build_graph,
    clique_number,
    component_report,
    homology,
    lemma2_orthogonal,
)
from .groups import (
    EnumerationBoundError,
    FiniteGroup,
    GroupError,
    automorphisms,
    build_cyclic,
    direct_product,
    element_order,
    parse_group_spec,
)
from .latin import LatinSquare, latin_orthogonal, to_latin_square
from .orthomorphisms import (
    OrderPartition,
    Orthomorphism,
    check_lemma1,
    complete_mapping,
    enumerate_orthomorphisms,
    is_orthomorphism,
    order_partition,
)
from .z2z4 import (
    CycleForm,
    Form,
    VerificationError,
    alpha_of,
    classify_form,
    construct_form,
    four_cycle_of,
    intersection_adjacency,
    predicted_partners,
    z2xz4,
)

__version__ = "0.1.0"
