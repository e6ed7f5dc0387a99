"""Goal-obstacle modelling and fuzzy design-space exploration."""

__version__ = "0.1.0"

from .fuzzy import (  # noqa: F401
    FuzzyNumber,
    LinguisticLevel,
    SampledFuzzySet,
    centroid,
    chen_indices,
    chen_indices_grid,
    fuzzy_add,
    fuzzy_scale,
    level_to_fuzzy,
    mamdani_aggregate,
    membership,
    sup_min_utility,
)
from .goal_model import (  # noqa: F401
    AlternativeNode,
    Consequence,
    DecisionNode,
    Direction,
    GoalModelGraph,
    GoalNode,
    Likelihood,
    ObstacleNode,
    RiskLevel,
    Tactic,
    apply_tactic,
    assess_risk,
    export_dot,
    severe_obstacles,
    validate,
)
from .model_io import (  # noqa: F401
    Model,
    ModelError,
    Settings,
    divergence_path,
    exemplar_path,
    load_model,
    parse_model,
    write_model,
)
from .ranking import (  # noqa: F401
    DivergenceReport,
    EmptyFeasibleSetError,
    RankedResult,
    crisp_rank,
    crisp_score,
    divergence_report,
    feasible_set,
    optimum,
    rank,
)
from .space import (  # noqa: F401
    Architecture,
    ConstraintSet,
    ContributionMatrix,
    ScoredArchitecture,
    check_constraints,
    cost_of,
    enumerate_architectures,
    goal_score,
    matrix_from_graph,
    score_space,
    space_size,
    total_score,
)
