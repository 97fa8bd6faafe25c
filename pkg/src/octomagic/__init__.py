"""Magic squares of squares from quaternion and octonion double multiplication."""
from .algebra import (
    CONVENTIONS,
    DEFAULT_CONVENTION,
    BasisTable,
    Hyper,
    cd_basis_table,
    conjugate,
    find_norm_multiplicativity_counterexample,
    multiply,
    norm,
)
from .dyadic import HalfRational
from .magic import (
    Classification,
    GramReport,
    MagicKind,
    SquareMatrix,
    TermPattern,
    build_matrix,
    build_symbolic,
    classify,
    diagonal_sums,
    gram_report,
    prove_theorem,
)

__version__ = "0.1.0"

__all__ = [
    "CONVENTIONS", "DEFAULT_CONVENTION", "BasisTable", "Hyper", "cd_basis_table", "conjugate",
    "find_norm_multiplicativity_counterexample", "multiply", "norm", "HalfRational",
    "Classification", "GramReport", "MagicKind", "SquareMatrix", "TermPattern", "build_matrix",
    "build_symbolic", "classify", "diagonal_sums", "gram_report", "prove_theorem",
]
