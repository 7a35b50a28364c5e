"""
Weyl function, gamma field and secular function of the Kirchhoff-type Dirac
operator on a metric graph.

The momentum k(z) lives on the sheet Im k >= 0 of k² = (z² - m²c⁴)/c², which
is holomorphic off the two cuts |Re z| >= mc² of the real axis; values on the
cuts are limits from the upper half-plane.
"""
import logging
from typing import List, NamedTuple, Optional

import numpy as np
from scipy import linalg

from .conditions import assemble_AB, conditions_residual, trace_index_map, trace_vectors
from .constants import GDIRAC_KERNEL_TOLERANCE, GDIRAC_TRUNCATION_FACTOR
from .exceptions import CertificationError, KernelEmpty, PoleError
from .graph import max_vertex_residual, vertex_residuals
from .spinors import (
    ClosedFormSpinor, Component, EdgeSpinor, Exponential, Linear, Trig, combine, eigen_residual, l2_norm,
)
from .utils import get_setting


logger = logging.getLogger(__name__)

POLE_TOLERANCE = 1e-12
EIGENFUNCTION_TOLERANCE = 1e-8


class BranchScalar(NamedTuple):
    z: complex
    k: complex
    k1: complex
    on_cut: bool
    k1_infinite: bool = False


class WeylEvaluation(NamedTuple):
    z: complex
    M: Optional[np.ndarray]
    secular: complex
    pole_flag: bool
    pole_edge: Optional[str] = None


def at_threshold(z, p) -> int:
    """+1 or -1 when z is the threshold ±mc², 0 otherwise."""
    z = complex(z)
    rest = p.threshold
    tol = 4 * np.finfo(float).eps * max(1.0, rest)
    if abs(z - rest) <= tol:
        return 1
    if abs(z + rest) <= tol:
        return -1
    return 0


def branch_eval(z, p) -> BranchScalar:
    z = complex(z)
    rest = p.threshold
    on_cut = z.imag == 0 and abs(z.real) > rest
    threshold = at_threshold(z, p)
    if threshold:
        k1 = 0j if threshold > 0 else complex(np.inf)
        return BranchScalar(z, 0j, k1, False, threshold < 0)
    root = np.sqrt(complex(z * z - rest * rest))
    if on_cut:
        k = np.copysign(abs(root), z.real) / p.c + 0j
    else:
        k = root / p.c
        if k.imag < 0:
            k = -k
    k1 = p.c * k / (z + rest)
    return BranchScalar(z, complex(k), complex(k1), on_cut)


def _sin_over_k(k, x):
    """sin(kx)/k, equal to x at k = 0."""
    return x * np.sinc(k * x / np.pi)


def edge_weyl_block(e, z, p) -> np.ndarray:
    """
    Half-line: [ic k1]. Segment, slots (0-end, l-end):
    [[c k1 tan(lk), sec(lk)], [sec(lk), tan(lk)/(c k1)]], evaluated in the
    equivalent form [[(z - mc²) S/cos, 1/cos], [1/cos, (z + mc²) S/(c² cos)]]
    with S = sin(lk)/k, which stays finite at the thresholds.
    """
    branch = branch_eval(z, p)
    if not e.is_segment:
        if branch.k1_infinite:
            raise PoleError(e.id, z)
        return np.array([[1j * p.c * branch.k1]])
    cos = np.cos(branch.k * e.length)
    if abs(cos) < POLE_TOLERANCE:
        raise PoleError(e.id, z)
    z = complex(z)
    rest = p.threshold
    s = _sin_over_k(branch.k, e.length)
    return np.array([
        [(z - rest) * s / cos, 1 / cos],
        [1 / cos, (z + rest) * s / (p.c ** 2 * cos)],
    ])


def assemble_M(g, z, index_map=None) -> np.ndarray:
    index_map = trace_index_map(g) if index_map is None else index_map
    M = np.zeros((index_map.dimension, index_map.dimension), dtype=complex)
    for edge in g.edges:
        indices = index_map.edge_indices(edge.id)
        M[np.ix_(indices, indices)] = edge_weyl_block(edge, z, g.params)
    return M


def _conditions(g, conditions):
    return conditions if conditions is not None else assemble_AB(g)


def secular(g, z, conditions=None, index_map=None) -> complex:
    """det(B M(z) - A); raises PoleError on a segment pole."""
    cm = _conditions(g, conditions)
    return complex(linalg.det(cm.B @ assemble_M(g, z, index_map) - cm.A))


def weyl_evaluation(g, z, conditions=None, index_map=None) -> WeylEvaluation:
    """Like ``secular`` but flags poles instead of raising."""
    cm = _conditions(g, conditions)
    try:
        M = assemble_M(g, z, index_map)
    except PoleError as err:
        logger.debug(f"pole at z={z} on edge {err.edge_id}")
        return WeylEvaluation(complex(z), None, complex(np.nan, np.nan), True, err.edge_id)
    return WeylEvaluation(complex(z), M, complex(linalg.det(cm.B @ M - cm.A)), False)


def defect_basis(e, z, p) -> List[ClosedFormSpinor]:
    """
    Solutions of D psi = z psi on one edge spanning the defect space. On a
    segment the pair (cos kx, i(z - mc²)/c S(x)) and ((z + mc²)/c S(x),
    -i cos kx), S(x) = sin(kx)/k, is entire in z; at ±mc² it reduces to the
    linear/constant solutions. A half-line carries (e^{ikx}, k1 e^{ikx}),
    which has no L² counterpart at the thresholds.
    """
    z = complex(z)
    rest = p.threshold
    branch = branch_eval(z, p)
    if not e.is_segment:
        if at_threshold(z, p):
            return []
        first = Component.of(Exponential(branch.k, 1))
        second = Component.of(Exponential(branch.k, branch.k1))
        return [ClosedFormSpinor({e.id: EdgeSpinor(first, second)})]
    if branch.k == 0:
        fields = [
            EdgeSpinor(Component.of(Linear(0j, 1)), Component.of(Linear(1j * (z - rest) / p.c, 0j))),
            EdgeSpinor(Component.of(Linear((z + rest) / p.c, 0j)), Component.of(Linear(0j, -1j))),
        ]
    else:
        k = branch.k
        fields = [
            EdgeSpinor(Component.of(Trig(k, 1, 0)), Component.of(Trig(k, 0, 1j * (z - rest) / (p.c * k)))),
            EdgeSpinor(Component.of(Trig(k, 0, (z + rest) / (p.c * k))), Component.of(Trig(k, -1j, 0))),
        ]
    return [ClosedFormSpinor({e.id: field}) for field in fields]


def gamma_field(g, z) -> List[ClosedFormSpinor]:
    """Defect solutions of the whole graph, edge by edge in slot order."""
    zero = ClosedFormSpinor.zero(g)
    basis = []
    for edge in g.edges:
        basis.extend(zero.plus(spinor) for spinor in defect_basis(edge, z, g.params))
    return basis


def gamma_matrices(g, z, index_map=None):
    """(Gamma0 Phi, Gamma1 Phi) for the defect solutions Phi of ``gamma_field``."""
    index_map = trace_index_map(g) if index_map is None else index_map
    basis = gamma_field(g, z)
    if len(basis) != index_map.dimension:
        raise PoleError(g.halflines[0].id, z)
    columns = [trace_vectors(g, spinor, index_map) for spinor in basis]
    G0 = np.column_stack([column[0] for column in columns])
    G1 = np.column_stack([column[1] for column in columns])
    return G0, G1, basis


def regularized_matrix(g, z, conditions=None, index_map=None):
    cm = _conditions(g, conditions)
    G0, G1, basis = gamma_matrices(g, z, index_map)
    return cm.B @ G1 - cm.A @ G0, basis


def regularized_secular(g, z, conditions=None, index_map=None) -> complex:
    """
    det(B Gamma1 Phi - A Gamma0 Phi) = det(B M - A) * prod c cos(l_e k) over
    segments. Pole-free; its zeros are the eigenvalues of the coupled operator.
    """
    matrix, _ = regularized_matrix(g, z, conditions, index_map)
    return complex(linalg.det(matrix))


def default_truncation(p) -> float:
    return float(get_setting(GDIRAC_TRUNCATION_FACTOR)) * p.c / p.threshold


def eigenfunction_from_kernel(g, lam, conditions=None, truncation=None) -> ClosedFormSpinor:
    """
    Eigenfunction for a real root ``lam`` of the secular function, built from
    the kernel of the regularized secular matrix and L²-normalized on the
    segments plus the half-lines truncated at ``truncation``.
    """
    p = g.params
    truncation = truncation or default_truncation(p)
    if at_threshold(lam, p) and not g.is_compact:
        from .scan import threshold_modes

        for value, mode in threshold_modes(g):
            if at_threshold(value, p) == at_threshold(lam, p):
                return mode
        raise KernelEmpty(complex(lam), 1.0)

    matrix, basis = regularized_matrix(g, lam, conditions)
    _, sigma, vh = linalg.svd(matrix)
    ratio = sigma[-1] / sigma[0] if sigma[0] else 0.0
    if ratio > float(get_setting(GDIRAC_KERNEL_TOLERANCE)):
        raise KernelEmpty(complex(lam), ratio)
    coefficients = vh[-1].conj()
    psi = combine(basis, coefficients)
    psi = psi.scaled(1 / l2_norm(g, psi, truncation))

    residual = eigen_residual(g, psi, p, lam, truncation=truncation)
    if conditions is None:
        vertex = max_vertex_residual(vertex_residuals(g, psi))
    else:
        vertex = conditions_residual(conditions, *trace_vectors(g, psi))
    if residual > EIGENFUNCTION_TOLERANCE or vertex > EIGENFUNCTION_TOLERANCE:
        logger.error(f"eigenfunction at {lam} fails its residual contract: {residual:.2e}, {vertex:.2e}")
        raise CertificationError(f"eigenfunction residuals {residual:.2e} (Dirac), {vertex:.2e} (vertex)")
    logger.info(f"eigenfunction at {lam} with relative singular value {ratio:.2e}")
    return psi
