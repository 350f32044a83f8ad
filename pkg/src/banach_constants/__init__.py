"""Numerical estimation of geometric constants of finite-dimensional normed spaces."""

from .constants import (
    ConstantId,
    ExactValue,
    a2_constant,
    a_kt_constant,
    cnj_constant,
    cnj_prime_constant,
    convexity_modulus,
    estimate,
    exact_value,
    james_constant,
    t1_constant,
    t2_constant,
    t_constant,
)
from .errors import (
    BanachError,
    DegenerateInputError,
    DimensionError,
    DomainError,
    InfeasibleError,
    ObjectiveError,
    SpaceDefinitionError,
    UnsupportedSpaceError,
)
from .search import Estimate, SearchConfig, maximize_pairwise, minimize_constrained_pair
from .spaces import (
    DayJamesSpace,
    EuclideanSpace,
    LpSpace,
    NormedSpace,
    ParamPair,
    PolyhedralSpace,
    norm,
    normalize,
    parse_space,
    sphere_point_2d,
    validate_norm_axioms,
)

from .theorems import ClassificationReport, TheoremReport, run_check

__version__ = "0.1.0"
