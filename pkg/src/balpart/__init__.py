"""balpart: exact and heuristic balanced 2-partitions minimizing max{e(A), e(A^c)}."""

from .graphs import (BalancedPartition, Bipartition, ContractError, Graph,
                     NoEdgeError, ParityError, VertexSet, degree_stats,
                     e_cross, e_subset, find_k4, find_triangle,
                     induced_subgraph, is_independent, is_k4_free,
                     is_triangle_free)
from .families import (BlowupGraph, blowup, build_family, complete,
                       complete_multipartite, cycle, erdos_renyi, i7c5,
                       i7c5_blowup, independent_set, join, path,
                       random_k4_free, random_triangle_free, random_tripartite)
from .exact import (ExactResult, SizeCapError, exact_d2,
                    exact_min_max_balanced, exact_min_sum_balanced)
from .blowups import (AggregatedBlowup, BlowupResult, CountVector, FiveProfile,
                     TransferTrace, aggregate_twins, all_optimal_count_vectors,
                     blowup_edges_from_counts, c5_profile_edges,
                     exact_min_max_blowup, i7c5_blowup_case_value,
                     i7c5_blowup_optimum, min_edges_closed_form,
                     min_edges_profile, minimize_star_form, star_form,
                     transfer_delta, transfer_delta_formula)
from .search import (HeavyEdgeDecomposition, SubsetSearchResult, heavy_edge,
                     independence_number, max_triangle_free_induced)
from .bounds import BoundEntry, BoundReport, edge_upper_bounds
from .localsearch import (BipartizeResult, HeuristicConfig, LocalSearchResult,
                          bipartize_local_search, polish_partition,
                          swap_local_search, xu_degree_bound)
from .pipelines import (CaseTrace, SparseApplicability, TripartiteResult,
                        join_partition, k4free_partition, partition_from_parts,
                        proportional_subset, sparse_partition,
                        tripartite_partition, validate_trace)
from .io import (GraphFormatError, from_edge_list, from_graph6, read_graph,
                 to_edge_list, to_graph6, write_graph)

__version__ = "0.1.0"
