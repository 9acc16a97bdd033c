"""Toolkit for uniformly 4-connected graphs: exact connectivity analysis,
the delta expansion operations with their compatibility conditions, edge
reduction, decomposition traces, and exhaustive small-order verification.
"""

__version__ = "0.1.0"

from .graph_core import (Graph, GraphError, FormatError, canonical_cert, canonical_form,
                         are_isomorphic, find_isomorphism, parse_graph6, format_graph6,
                         parse_edge_list, format_edge_list, to_dot, square_of_cycle,
                         complete_graph, cycle_graph, octahedron, octahedron_plus, k6_minus_edge,
                         remove_edges, add_edges, add_vertex_with_neighbors, delete_vertex,
                         induced)
from .connectivity import (ConnectivityReport, CutWitness, FanWitness, Fragment, End,
                           connectivity_report, local_connectivity, vertex_connectivity,
                           is_k_connected, is_uniformly_4_connected, minimum_cuts,
                           fragments, ends, disjoint_path_fan)
from .chording import (BudgetExceeded, SearchBudget, DEFAULT_BUDGET, ChordingWitness,
                       classify_quasi_3cc, verify_witness, is_e_plus_quasi_3cc,
                       exists_quasi_3cc_path, exists_e_plus_quasi_3cc_path,
                       exists_quasi_chord, validate_path)
from .transform import (Delta1Spec, Delta2Spec, CompatSet, CompatReport, CompatViolation,
                        SpecInvalid, ConnectivityTooLow, EndCoverageViolated, reduce_edge,
                        is_removable, is_removable_structural, removable_edges,
                        validate_delta1, validate_delta2, validate_delta, apply_delta1,
                        apply_delta2, apply_delta, is_quasi_4_compatible)
from .construct import (ConstructionTrace, TraceStep, NotUniform, DecompositionError,
                        StepInvalid, CertMismatch, TraceFormatError, base_graph, decompose,
                        replay, trace_to_json, trace_from_json, generate_all,
                        generate_catalog, brute_force_uniform, oracle_graphs,
                        verify_theorem, VerificationReport, GenerationResult)
