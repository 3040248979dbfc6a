"""Solution-density-parameterized SAT toolkit.

The sparser the solution set, the more structure a formula must carry;
this package exploits that trade-off in both directions.  It provides
exact uniform sampling of 2-CNF satisfying assignments (counting-based
chain sampling raced against family rejection and enumeration),
breadth-first branching search for k-SAT and vertex cover that stops
early under a solution-density promise, randomized 3-SAT (clause-pool
propagation and Schoening's walk), and an analysis engine computing
every runtime exponent the algorithms are calibrated against.
"""

from . import errors
from .analysis import (
    DEFAULT_COUNT_BASE,
    ExponentReport,
    LpProblem,
    LpSolution,
    branching_number,
    delta_lp,
    entropy,
    entropy_inv,
    hirsch_exponent,
    report_constants,
    report_delta,
    report_hirsch,
    report_schoening,
    report_tau,
    report_vc_exponent,
    schoening_exponent,
    simplex_solve,
    threesat_exponent,
    vc_exponent,
    warmup_exponent,
)
from .bench import BenchReport, run_bench
from .cnf import Clause, CnfFormula, parse_dimacs, write_dimacs
from .detsearch import (
    BASIC_RULE,
    MS_RULE,
    BfsResult,
    bfs_solve,
    floor_census_rows,
    is_autark,
    ms_branch,
    stopping_bound,
)
from .families import (
    BoundarySets,
    FamilyStats,
    IndependentFamily,
    Star,
    Triangle,
    boundary_sets,
    build_family_sequence,
    family_pool_count,
    max_disjoint_clauses,
    member_solutions,
    one_maximal_matching,
)
from .oracle import (
    InstanceSpec,
    brute_count,
    brute_enumerate,
    brute_sample,
    gen_random_ksat,
)
from .racing import race
from .sampler import (
    SampleReport,
    SamplerConfig,
    family_enumeration_sample,
    family_rejection_sample,
    sample_solution,
    warmup_sample,
)
from .threesat import WalkConfig, WalkResult, schoening, solve3_prop
from .twosat import (
    ChainSampler,
    CountResult,
    count_2sat,
    sample_2sat_exact,
    solve_2sat,
)
from .vcover import (
    Graph,
    PromiseCoverResult,
    brute_min_cover,
    count_covers,
    gen_random_graph,
    parse_graph,
    vc_bfs_promise,
    vc_branch,
    write_graph,
)

__version__ = "0.1.0"

__all__ = [
    "BASIC_RULE",
    "BenchReport",
    "BfsResult",
    "BoundarySets",
    "ChainSampler",
    "Clause",
    "CnfFormula",
    "CountResult",
    "DEFAULT_COUNT_BASE",
    "ExponentReport",
    "FamilyStats",
    "Graph",
    "IndependentFamily",
    "InstanceSpec",
    "LpProblem",
    "LpSolution",
    "MS_RULE",
    "PromiseCoverResult",
    "SampleReport",
    "SamplerConfig",
    "Star",
    "Triangle",
    "WalkConfig",
    "WalkResult",
    "boundary_sets",
    "branching_number",
    "brute_count",
    "brute_enumerate",
    "brute_min_cover",
    "brute_sample",
    "build_family_sequence",
    "count_2sat",
    "count_covers",
    "delta_lp",
    "entropy",
    "entropy_inv",
    "errors",
    "family_enumeration_sample",
    "family_pool_count",
    "family_rejection_sample",
    "floor_census_rows",
    "gen_random_graph",
    "gen_random_ksat",
    "hirsch_exponent",
    "is_autark",
    "max_disjoint_clauses",
    "member_solutions",
    "ms_branch",
    "one_maximal_matching",
    "parse_dimacs",
    "parse_graph",
    "race",
    "report_constants",
    "report_delta",
    "report_hirsch",
    "report_schoening",
    "report_tau",
    "report_vc_exponent",
    "run_bench",
    "sample_2sat_exact",
    "sample_solution",
    "schoening",
    "schoening_exponent",
    "simplex_solve",
    "solve3_prop",
    "solve_2sat",
    "stopping_bound",
    "threesat_exponent",
    "vc_bfs_promise",
    "vc_branch",
    "vc_exponent",
    "warmup_exponent",
    "warmup_sample",
    "write_dimacs",
    "write_graph",
    "__version__",
]
