"""Exact computations for submanifolds of almost complex manifolds with Norden metric.

The ambient is a Lie algebra with a pair ``(J, g)`` where ``J^2 = -1`` and
``g(JX, JY) = -g(X, Y)``; subspaces stand for left-invariant submanifolds.
All arithmetic is over the rationals.
"""

from .errors import (
    InputError,
    MetricError,
    NordenError,
    PreconditionError,
    StructureError,
    TheoremViolation,
)
from .linalg import BilinearForm, Subspace, signature, span
from .norden import (
    ComplexStructure,
    NordenPair,
    build_lightlike_splitting,
    classify_complex_type,
    classify_degeneracy,
    cross_classify,
    radical_transversal_splitting,
    validate_norden_pair,
)
from .lie import LieAlgebraAmbient, kaehler_check, make_ambient
from .submanifold import curvature_suite, gauss_weingarten, identity_suite, totally_real_setting
from .catalog import SeededGenerator, load_builtin

__all__ = [
    "BilinearForm",
    "ComplexStructure",
    "InputError",
    "LieAlgebraAmbient",
    "MetricError",
    "NordenError",
    "NordenPair",
    "PreconditionError",
    "SeededGenerator",
    "StructureError",
    "Subspace",
    "TheoremViolation",
    "build_lightlike_splitting",
    "classify_complex_type",
    "classify_degeneracy",
    "cross_classify",
    "curvature_suite",
    "gauss_weingarten",
    "identity_suite",
    "kaehler_check",
    "load_builtin",
    "make_ambient",
    "radical_transversal_splitting",
    "signature",
    "span",
    "totally_real_setting",
    "validate_norden_pair",
]
