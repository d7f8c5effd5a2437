"""Exact and constructive tools for making K_{r+1}-free graphs r-partite."""

from .bounds import (
    BoundReport,
    alpha_of,
    bound_report,
    brouwer_threshold,
    c_alpha,
    main_upper_bound,
    sharpness_edge_formula,
    sharpness_lower_bound,
)
from .constructions import (
    ConstructionSpec,
    c5_blowup,
    conjecture_family,
    random_near_extremal,
    sharpness_graph,
    turan_graph,
)
from .edgelist import read_edge_list, write_edge_list
from .exact import (
    SolveOptions,
    SolveResult,
    Status,
    is_r_partite,
    min_deletions_bruteforce,
    min_deletions_classwise,
    min_deletions_exact,
)
from .graph import (
    Graph,
    Partition,
    VertexSet,
    blow_up,
    build_graph,
    edges_between,
    internal_edges,
    is_clique_free,
    join,
    max_degree,
    missing_between,
    turan_number,
)
from .pipeline import CliqueFoundError, PipelineParams, PipelineResult, run_pipeline

__version__ = "0.1.0"
