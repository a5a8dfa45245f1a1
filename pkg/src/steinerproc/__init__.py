"""Constrained partial-system edge process: simulation and verification toolkit."""

__version__ = "0.1.0"

from .combinatorics import (LogNumber, Params, falling_factorial,
                            log_binomial, sample_uniform_rset, trial_rng)
from .hypergraph import (GeneralGraph, PartialSystem, codegree, ell_subsets,
                         excess, is_partial_steiner, load_general_graph,
                         load_partial_system, read_edge_list, write_edge_list)
from .clusters import (ClassLabel, ClusterCensus, build_link_graph,
                       capacity_M, classify_splus, cluster_census, linked)
from .process import (AtConnectivity, AtEdgeCount, AtSaturation, ProcessTrace,
                      UnionFind, run_process, stage_snapshot, trace_record,
                      union_edge)
from .exact import (ComponentCensus, InfeasibleError, RSetUniverse, all_rsets,
                    component_census, count_ordered_sequences, count_systems,
                    exact_containment_prob, exact_deg_zero_prob, list_systems,
                    predicted_acceptance, sample_uniform_system)
from .formulas import (AsymptoticValue, SummationInput, ThresholdParams,
                       count_dropped, count_exponent, log_containment_asymptotic,
                       log_count_asymptotic, log_deg_zero_asymptotic,
                       quadratic_exponent, summation_bounds, switching_ratio_predicted,
                       threshold_edge_count)
from .switching import (SwitchingMove, apply_switching, count_ei_displacements,
                        count_forward_switchings, count_legal_ei_replacements,
                        count_Pr, count_reverse_switchings)
from .stats import (SampleSummary, chi_square_uniformity, factorial_moment,
                    poisson_tv_distance)
from .experiments import (ConfigError, ExperimentConfig, ExperimentReport,
                          run_experiment)
