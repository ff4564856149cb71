"""Exact Lie-algebra computation around solvable subalgebras and flag stabilizers,
with a finite ultrafilter/ultraproduct engine."""

from .errors import FieldNotSplit, FlagstabError, NotSolvable
from .exactlinalg import Matrix, Subspace, span
from .flags import Flag, stabilizer
from .liealg import LieAlgebra, Representation, Subalgebra, gl
from .lietheorem import common_eigenvector, faithful_submodule, full_flag

__version__ = "0.1.0"

__all__ = [
    "FieldNotSplit", "FlagstabError", "NotSolvable",
    "Matrix", "Subspace", "span",
    "Flag", "stabilizer",
    "LieAlgebra", "Representation", "Subalgebra", "gl",
    "common_eigenvector", "faithful_submodule", "full_flag",
]
