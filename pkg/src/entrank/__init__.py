"""Algebraic entanglement measures for tensors in products of qubit spaces.

Tensor rank, the Cayley hyperdeterminant, 4-qubit flattening determinants
and purity tests, with constructive decompositions, 3-qubit classification
and local-unitary normal forms. Exact (Gaussian-rational) and floating
arithmetic are both supported.
"""

from .classify3 import (Classification3, NormalForm3, classify3, decompose3, normal_form3,
                        real_rank3)
from .invariants import (bipartite_rank, delta, hyperdet, is_pure_exchange, purity_defect,
                         rank_lower_bound)
from .linalg import HomPoly, RootStructure, hom_roots, matrix_rank, nullspace, schmidt
from .oracle import als_fit, numeric_rank_estimate, verify_decomposition
from .qubit4 import (RankCertificate, decompose4, in_s3_closure, rank4, s2_closure_necessary,
                     stabilizer_dimension)
from .scalars import GaussianRational
from .states import builtin_state, strassen_decomposition
from .tensor import (Decomposition, Tensor, TensorError, frobenius_distance, matricize, pure,
                     slice_axis, tensor_new)

__version__ = "0.1.0"

__all__ = [
    "Classification3", "NormalForm3", "classify3", "decompose3", "normal_form3", "real_rank3",
    "bipartite_rank", "delta", "hyperdet", "is_pure_exchange", "purity_defect", "rank_lower_bound",
    "HomPoly", "RootStructure", "hom_roots", "matrix_rank", "nullspace", "schmidt",
    "als_fit", "numeric_rank_estimate", "verify_decomposition",
    "RankCertificate", "decompose4", "in_s3_closure", "rank4", "s2_closure_necessary",
    "stabilizer_dimension", "GaussianRational", "builtin_state", "strassen_decomposition",
    "Decomposition", "Tensor", "TensorError", "frobenius_distance", "matricize", "pure",
    "slice_axis", "tensor_new",
]
