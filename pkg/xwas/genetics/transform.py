"""Equivalence of design matrices

Two design matrices X₁ and X₂ with the same tested block size give
identical Wald, score and likelihood ratio statistics whenever there
is an invertible block upper-triangular matrix

    T = [[T₁, T₁₂],
         [0,  T₂ ]]

with X₂ = X₁T and X₂₁ = X₁₁T₁, where the first block of columns holds
the untested covariates.  `find_transformation` searches for such a
witness numerically.

>>> from xwas.genetics.design import ModelId, ModelSpec, build_design
>>> from xwas.genetics.genotype import Allele, CodingScheme, Inactivation
>>> states, sexes = [0, 1, 2, 3, 4], [0, 0, 0, 1, 1]
>>> R = CodingScheme(Allele.ALT, Inactivation.NOT_INACTIVATED)
>>> r = CodingScheme(Allele.REF, Inactivation.NOT_INACTIVATED)
>>> X1 = build_design(states, sexes, ModelSpec(ModelId.M1, scheme=R))
>>> X2 = build_design(states, sexes, ModelSpec(ModelId.M1, scheme=r))
>>> witness = find_transformation(X1, X2)
>>> witness.T12.round(10).ravel().tolist(), witness.T2.round(10).tolist()
([2.0, -1.0], [[-1.0]])
"""

from dataclasses import dataclass
import numpy as np
from scipy import linalg
from .design import DesignMatrix

__all__ = [
    'TransformationWitness',
    'NotEquivalent',
    'find_transformation',
]

SINGULAR_CUTOFF = 1e-10
"""Relative singular value below which a block is treated as singular"""


@dataclass
class TransformationWitness:
    """Block upper-triangular transformation between two designs"""

    T: np.ndarray
    """Full transformation (untested columns first)"""

    T1: np.ndarray
    """Untested-to-untested block"""

    T12: np.ndarray
    """Untested-to-tested block"""

    T2: np.ndarray
    """Tested-to-tested block"""

    residual_norm: float
    """Largest absolute residual of the defining equations"""

    def __bool__(self):
        return True


@dataclass
class NotEquivalent:
    """Verdict that no transformation witness exists"""

    reason: str
    """Explanation"""

    residual_norm: float
    """Largest absolute residual of the best least-squares candidate"""

    def __bool__(self):
        return False


def invertible(block):
    """Check that a square block is numerically invertible"""
    if not block.size:
        return True
    singular = linalg.svdvals(block)
    return singular.min() > SINGULAR_CUTOFF * singular.max()


def find_transformation(X1: DesignMatrix, X2: DesignMatrix, tol=1e-8):
    """Find a transformation witness relating two designs

    The tolerance is relative to the largest absolute entry of X₂.
    Returns a `TransformationWitness`, or a `NotEquivalent` verdict.
    """
    if X1.values.shape != X2.values.shape:
        raise ValueError("design shapes differ: %s vs %s" %
                         (X1.values.shape, X2.values.shape))
    if X1.q != X2.q:
        raise ValueError("tested block sizes differ: %d vs %d" %
                         (X1.q, X2.q))

    # Reorder columns so that the tested block is trailing
    A = X1.values[:, X1.untested + X1.tested]
    B = X2.values[:, X2.untested + X2.tested]
    k = A.shape[1] - X1.q

    # Solve for each column block separately, fixing the lower-left
    # block at zero
    T1 = linalg.lstsq(A[:, :k], B[:, :k])[0]
    upper = linalg.lstsq(A, B[:, k:])[0]
    T = np.zeros((A.shape[1], A.shape[1]))
    T[:k, :k] = T1
    T[:, k:] = upper
    T12 = T[:k, k:]
    T2 = T[k:, k:]

    # Check residuals and invertibility
    residual = max(np.abs(B - A @ T).max(),
                   np.abs(B[:, :k] - A[:, :k] @ T1).max())
    scale = max(1.0, np.abs(B).max())
    if residual > tol * scale:
        return NotEquivalent("no block upper-triangular solution", residual)
    if not (invertible(T1) and invertible(T2)):
        return NotEquivalent("singular diagonal block", residual)
    return TransformationWitness(T, T1, T12, T2, residual)
