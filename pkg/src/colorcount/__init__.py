"""Exact counts of proper, list, DP and dual DP colorings, and shameful-inequality checks."""
from .dpcover import (Cover, canonical_cover, count_cover_colorings, doubled_cover,
                      dp_color_function, dual_dp_color_function, enumerate_full_covers,
                      restrict_cover)
from .errors import BudgetExceeded, Graph6Error
from .graph import (EdgePartition, Graph, all_graphs, complete, complete_bipartite,
                    complete_multipartite, components, cycle, empty, encode_graph6, generate,
                    parse_graph6, parse_graph_spec, path, spanning_forest)
from .listcolor import (ListAssignment, count_L_colorings, enumerate_k_assignments,
                        list_color_function)
from .polynomial import (brute_force_proper_colorings, chromatic_eval, closed_form_eval,
                         falling_factorial, stirling2)
from .shameful import (ExtensionMatrix, RatioOrder, ScanReport, TrialStats, Verdict,
                       bipartite_extension_matrix, monte_carlo_expectation, mu_expected_colors,
                       random_restriction_trial, ratio_compare, rearrangement_check,
                       shameful_scan)

__version__ = "0.1.0"
