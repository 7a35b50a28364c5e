import logging
from dataclasses import replace
from typing import List, NamedTuple, Optional

from django.core.exceptions import ValidationError

import numpy as np
from scipy import linalg

from ..constants import GDIRAC_SEED
from ..exceptions import CertificationError
from ..utils import get_setting
from .operator import DiscreteOperator, default_length, discretize, kirchhoff_laplacian
from .solvers import eigs_full, eigs_window


logger = logging.getLogger(__name__)

SYMMETRY_PAIRS = 20
SQUARE_MODES = 5
SATURATION = 1e-12


class SquareCheck(NamedTuple):
    dirac: np.ndarray
    laplacian: np.ndarray
    mismatch: float


class ConvergenceStudy(NamedTuple):
    target: float
    spacings: List[float]
    values: List[float]
    errors: List[float]
    orders: List[float]
    order: Optional[float]
    saturated: bool
    monotone: bool
    richardson: Optional[float]

    @property
    def status(self) -> str:
        return 'saturated' if self.saturated else 'converging'


def hermiticity_residual(op: DiscreteOperator) -> float:
    return op.hermiticity_residual()


def _random_vectors(rng, size, count):
    return rng.standard_normal((size, count)) + 1j * rng.standard_normal((size, count))


def symmetry_residual(g, p=None, h=None, L=None, operator=None, pairs=SYMMETRY_PAIRS, seed=None) -> float:
    """
    max |<H psi, phi> - <psi, H phi>| / (|psi| |phi|) over random pairs; pass
    ``operator`` to check an already assembled (or deliberately altered) matrix.
    """
    op = operator if operator is not None else discretize(g, p, h, L)
    seed = int(get_setting(GDIRAC_SEED)) if seed is None else seed
    rng = np.random.default_rng(seed)
    psi = _random_vectors(rng, op.size, pairs)
    phi = _random_vectors(rng, op.size, pairs)
    h_psi = op.matrix @ psi
    h_phi = op.matrix @ phi
    residual = 0.0
    for i in range(pairs):
        left = np.vdot(phi[:, i], h_psi[:, i])
        right = np.vdot(h_phi[:, i], psi[:, i])
        scale = np.linalg.norm(psi[:, i]) * np.linalg.norm(phi[:, i])
        residual = max(residual, abs(left - right) / scale)
    logger.debug(f"symmetry residual {residual:.2e} over {pairs} pairs")
    return float(residual)


def square_spectrum_check(g, p=None, h=None, modes=SQUARE_MODES) -> SquareCheck:
    """
    Compare (lambda² - m²c⁴)/c² over the Dirac eigenvalues lambda >= mc² with
    the lowest eigenvalues of the Kirchhoff Laplacian on the same grid.
    """
    if not g.is_compact:
        raise ValidationError('the square check needs a compact graph', code='not_compact')
    p = p or g.params
    op = discretize(g, p, h)
    rest = p.threshold
    values = eigs_full(op, vectors=False).values
    positive = np.sort(values[values >= rest * (1 - 1e-9)])
    dirac = (positive ** 2 - rest ** 2) / p.c ** 2
    dirac = np.maximum(dirac, 0.0)[:modes]
    laplacian = np.sort(linalg.eigh(kirchhoff_laplacian(op).toarray(), eigvals_only=True))[:modes]
    count = min(len(dirac), len(laplacian))
    if count < modes:
        logger.warning(f"square check compares only {count} modes")
    mismatch = np.abs(dirac[:count] - laplacian[:count]) / np.maximum(np.abs(laplacian[:count]), 1.0)
    result = SquareCheck(dirac[:count], laplacian[:count], float(mismatch.max(initial=0.0)))
    logger.info(f"square check mismatch {result.mismatch:.2e} over {count} modes")
    return result


def _closest(op, target, width):
    window = eigs_window(op, target - width, target + width, vectors=False).values
    if not len(window):
        return None
    return float(window[np.argmin(np.abs(window - target))])


def convergence_study(g, p=None, lam_target=None, h_list=None, L=None, width=None) -> ConvergenceStudy:
    """
    Errors of the discrete eigenvalue nearest ``lam_target`` under grid
    refinement, with observed orders and a Richardson estimate.
    """
    p = p or g.params
    if lam_target is None or not h_list:
        raise ValueError('a target eigenvalue and at least one spacing are required')
    spacings = sorted((float(h) for h in h_list), reverse=True)
    L = None if g.is_compact else (L or default_length(g, p))
    width = width or 0.05 * max(abs(lam_target), p.threshold)

    values = []
    for h in spacings:
        value = _closest(discretize(g, p, h, L), lam_target, width)
        if value is None:
            logger.error(f"no discrete eigenvalue within {width} of {lam_target} at h={h}")
            raise CertificationError(f"eigenvalue {lam_target} lost at h={h}")
        values.append(value)
    errors = [abs(value - lam_target) for value in values]

    saturated = bool(errors[0] < SATURATION)
    orders = []
    for (h1, e1), (h2, e2) in zip(zip(spacings, errors), zip(spacings[1:], errors[1:])):
        if e1 < SATURATION or e2 < SATURATION:
            saturated = True
            continue
        orders.append(float(np.log(e1 / e2) / np.log(h1 / h2)))
    order = float(np.mean(orders)) if orders else None
    monotone = all(later <= earlier or later < SATURATION for earlier, later in zip(errors, errors[1:]))

    richardson = None
    if order and len(values) > 1 and order > 0:
        ratio = (spacings[-2] / spacings[-1]) ** order
        richardson = values[-1] + (values[-1] - values[-2]) / (ratio - 1)
    logger.info(f"convergence towards {lam_target}: errors {errors}, order {order}")
    return ConvergenceStudy(float(lam_target), spacings, values, errors, orders, order, saturated, monotone,
                            richardson)


def weyl_count(g, p=None, L=None, lower=None, upper=None) -> float:
    """
    Expected number of eigenvalues in [lower, upper] above mc² for a graph with
    truncated half-lines: total length times the momentum span over π.
    """
    p = p or g.params
    L = L or default_length(g, p)
    lower = p.threshold if lower is None else lower
    upper = p.threshold + 1.0 if upper is None else upper

    def momentum(value):
        return np.sqrt(max(value ** 2 - p.threshold ** 2, 0.0)) / p.c

    total = L * g.n_halflines + sum(edge.length for edge in g.segments)
    return float(total * (momentum(upper) - momentum(lower)) / np.pi)


def essential_count(g, p=None, h=None, L=None, lower=None, upper=None) -> int:
    p = p or g.params
    lower = p.threshold if lower is None else lower
    upper = p.threshold + 1.0 if upper is None else upper
    return len(eigs_window(discretize(g, p, h, L), lower, upper, vectors=False).values)


def flipped_balance(op: DiscreteOperator, vertex: str) -> DiscreteOperator:
    """A copy whose balance row at ``vertex`` has the opposite endpoint signs."""
    row = next(index for index, dof in enumerate(op.dofs) if dof.vertex == vertex)
    matrix = op.matrix.tolil()
    for column in list(matrix.rows[row]):
        if column != row:
            matrix[row, column] = -matrix[row, column]
    return replace(op, matrix=matrix.tocsr())
