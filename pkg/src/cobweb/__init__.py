"""Exact computations on cobweb posets and other F-denominated graded posets."""

from .fsequence import (
    FSequence,
    constant,
    f_factorial,
    falling_factorial,
    fibonacci,
    fnomial,
    from_list,
    gaussian,
    is_admissible,
    natural,
    upper_function_factorial,
)
from .poset import (
    FinitePoset,
    GradedPoset,
    GridVertex,
    adjacency_matrix,
    antichain,
    chain,
    cobweb,
    dual,
    from_biadjacency,
    layer,
    max_chains,
    natural_labeling,
)

__version__ = "0.1.0"

__all__ = [
    "FSequence", "constant", "f_factorial", "falling_factorial", "fibonacci", "fnomial", "from_list",
    "gaussian", "is_admissible", "natural", "upper_function_factorial",
    "FinitePoset", "GradedPoset", "GridVertex", "adjacency_matrix", "antichain", "chain", "cobweb",
    "dual", "from_biadjacency", "layer", "max_chains", "natural_labeling",
]
