"""Cell posets of totally nonnegative flag varieties for finite Coxeter groups."""

from .coxeter import (CoxeterSystem, NonFiniteTypeError, coxeter_matrix,
                      symmetric_group)
from .reflection_order import (ReflectionOrder, is_reflection_order,
                               order_from_reduced_word, order_with_wj_last)
from .poset_topology import (EdgeLabeling, GradedPoset, cw_ball_evidence,
                             shelling_from_el, verify_el_labeling,
                             verify_shelling)
from .qj import (BOTTOM, QJPoset, build_qj_poset, enumerate_cells, qj_leq,
                 structural_suite, top_cell)
from .grassmannian import (DecoratedPermutation, LeDiagram, chord_svg,
                           chord_text, compose_phi, enumerate_le_diagrams,
                           is_le, phi1, phi2, trace_pipe_dream)

__version__ = "0.1.0"

__all__ = [
    "BOTTOM", "CoxeterSystem", "DecoratedPermutation", "EdgeLabeling",
    "GradedPoset", "LeDiagram", "NonFiniteTypeError", "QJPoset",
    "ReflectionOrder", "build_qj_poset", "chord_svg", "chord_text",
    "compose_phi", "coxeter_matrix", "cw_ball_evidence", "enumerate_cells",
    "enumerate_le_diagrams", "is_le", "is_reflection_order",
    "order_from_reduced_word", "order_with_wj_last", "phi1", "phi2",
    "qj_leq", "shelling_from_el", "structural_suite", "symmetric_group",
    "top_cell", "trace_pipe_dream", "verify_el_labeling", "verify_shelling",
]
