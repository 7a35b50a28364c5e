import logging
from typing import List, NamedTuple, Optional

import numpy as np
from scipy import linalg
from scipy.sparse.linalg import eigsh

from ..constants import GDIRAC_DENSE_LIMIT
from ..exceptions import CertificationError
from ..utils import get_setting
from .operator import DiscreteOperator, SampledSpinor


logger = logging.getLogger(__name__)

VECTOR_RESIDUAL_TOLERANCE = 1e-8
# shift-invert pole offset, relative to the window radius; a window centred on an eigenvalue is singular
SHIFT_OFFSET = 1e-6


class EigenSystem(NamedTuple):
    values: np.ndarray
    vectors: Optional[np.ndarray]
    operator: DiscreteOperator

    def spinors(self) -> List[SampledSpinor]:
        if self.vectors is None:
            return []
        return [SampledSpinor.from_vector(self.operator, self.vectors[:, i]) for i in range(len(self.values))]

    def residuals(self) -> np.ndarray:
        if self.vectors is None or not len(self.values):
            return np.zeros(0)
        difference = self.operator.matrix @ self.vectors - self.vectors * self.values
        return np.linalg.norm(difference, axis=0) / np.linalg.norm(self.vectors, axis=0)


def _checked(system: EigenSystem) -> EigenSystem:
    residuals = system.residuals()
    if len(residuals) and residuals.max() > VECTOR_RESIDUAL_TOLERANCE:
        logger.error(f"eigenvector residual {residuals.max():.2e} above {VECTOR_RESIDUAL_TOLERANCE}")
        raise CertificationError(f"eigenvector residual {residuals.max():.2e}")
    return system


def _dense_window(op, lower, upper, vectors):
    dense = op.matrix.toarray()
    bounds = (np.nextafter(lower, -np.inf), upper)
    if vectors:
        values, vecs = linalg.eigh(dense, subset_by_value=bounds, driver='evr')
        return values, vecs
    return linalg.eigh(dense, eigvals_only=True, subset_by_value=bounds, driver='evr'), None


def _sparse_window(op, lower, upper, vectors):
    size = op.size
    radius = 0.5 * (upper - lower)
    offset = SHIFT_OFFSET * radius
    sigma = 0.5 * (lower + upper) + offset
    count = min(16, size - 2)
    while True:
        values, vecs = eigsh(op.matrix, k=count, sigma=sigma, which='LM')
        order = np.argsort(values)
        values, vecs = values[order], vecs[:, order]
        covered = np.max(np.abs(values - sigma)) > radius + offset
        if covered or count >= size - 2:
            break
        count = min(2 * count, size - 2)
        logger.debug(f"widening shift-invert solve around {sigma} to {count} eigenpairs")
    inside = (values >= lower) & (values <= upper)
    return values[inside], (vecs[:, inside] if vectors else None)


def eigs_window(op: DiscreteOperator, a, b, vectors=True) -> EigenSystem:
    """All eigenvalues of the discrete operator in [a, b], ascending."""
    if not a < b:
        raise ValueError(f"empty window [{a}, {b}]")
    dense = op.size <= int(get_setting(GDIRAC_DENSE_LIMIT))
    if dense:
        values, vecs = _dense_window(op, a, b, vectors)
    else:
        values, vecs = _sparse_window(op, a, b, vectors)
    logger.info(f"{len(values)} eigenvalues in [{a}, {b}] ({'dense' if dense else 'shift-invert'}, N={op.size})")
    return _checked(EigenSystem(np.asarray(values, dtype=float), vecs, op))


def eigs_full(op: DiscreteOperator, vectors=True) -> EigenSystem:
    """The full eigendecomposition, dense."""
    limit = int(get_setting(GDIRAC_DENSE_LIMIT))
    if op.size > limit:
        logger.warning(f"full decomposition of {op.size} rows exceeds the dense limit {limit}")
    dense = op.matrix.toarray()
    if vectors:
        values, vecs = linalg.eigh(dense)
    else:
        values, vecs = linalg.eigh(dense, eigvals_only=True), None
    return _checked(EigenSystem(values, vecs, op))
