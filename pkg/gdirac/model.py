"""
The triple junction: two half-lines and one unit segment meeting at a common
vertex, with m = 1/2, c = 1 and the free end of the segment closed by the
row a·Γ0 = b·(-i)Γ1 (a = 0, b = 1 clamps it).
"""
import logging

from django.core.exceptions import ValidationError

import numpy as np

from .conditions import ConditionMatrices
from .constants import HALFLINE, SEGMENT
from .exceptions import PoleError
from .graph import graph_from_document
from .weyl import branch_eval


logger = logging.getLogger(__name__)

MODEL_MASS = 0.5
MODEL_C = 1.0
MODEL_LENGTH = 1.0
MODEL_THRESHOLD = 0.5
MODEL_EDGE = 'e3'


def model_document(a=0, b=1) -> dict:
    data = {
        'mass': MODEL_MASS,
        'c': MODEL_C,
        'vertices': ['v0', 'v1'],
        'edges': [
            {'id': 'e1', 'kind': HALFLINE, 'from': 'v0'},
            {'id': 'e2', 'kind': HALFLINE, 'from': 'v0'},
            {'id': MODEL_EDGE, 'kind': SEGMENT, 'length': MODEL_LENGTH, 'from': 'v0', 'to': 'v1'},
        ],
    }
    if a == 0:
        data['clamped'] = ['v1']
    return data


def model_conditions(a=0, b=1) -> ConditionMatrices:
    """
    A = 2/3 [[J - 3I, 0], [0, a]], B = -2i/3 [[J, 0], [0, b]] on the slots
    (e1, e2, e3 at 0, e3 at 1), J the 3×3 all-ones block.
    """
    a, b = complex(a), complex(b)
    if a == 0 and b == 0:
        raise ValidationError('a and b cannot both vanish.', code='model_rank')
    if abs((a * np.conj(b)).real) > 1e-14:
        raise ValidationError('a·conj(b) must be purely imaginary for a self-adjoint row.', code='model_row')
    ones = np.ones((3, 3))
    A = np.zeros((4, 4), dtype=complex)
    B = np.zeros((4, 4), dtype=complex)
    A[:3, :3] = ones - 3 * np.eye(3)
    A[3, 3] = a
    B[:3, :3] = ones
    B[3, 3] = b
    return ConditionMatrices(2 / 3 * A, -2j / 3 * B, {'v0': [0, 1, 2], 'v1': [3]})


def builtin_model(a=0, b=1):
    """The model graph and its condition matrices; deterministic."""
    return graph_from_document(model_document(a, b)), model_conditions(a, b)


def _model_k(z) -> complex:
    return branch_eval(z, graph_from_document(model_document()).params).k


def model_f(z) -> complex:
    """
    The model's secular function, split into its regimes on the real axis:
    in the gap the positive form (8/9)(sinh κ + sinh 3κ + 2) sech⁴κ with
    κ = ½√(1 - 4z²); outside it real part (16/9) sec⁴q and imaginary part
    -(8/9) sin(4q) cos(2q) with q = ½√(4z² - 1). Non-real z fall back to the
    closed form.
    """
    z = complex(z)
    if z.imag != 0:
        return model_f_direct(z)
    x = z.real
    if abs(x) == MODEL_THRESHOLD:
        return 16 / 9 + 0j
    if abs(x) < MODEL_THRESHOLD:
        kappa = 0.5 * np.sqrt(1 - 4 * x * x)
        return complex(8 / 9 * (np.sinh(kappa) + np.sinh(3 * kappa) + 2) / np.cosh(kappa) ** 4)
    q = 0.5 * np.sqrt(4 * x * x - 1)
    cos = np.cos(q)
    if abs(cos) < 1e-12:
        raise PoleError(MODEL_EDGE, z)
    return complex(16 / 9 / cos ** 4, -8 / 9 * np.sin(4 * q) * np.cos(2 * q))


def model_f_direct(z) -> complex:
    """(16/9)(1 - 2i sin k cos²k) sec⁴k with k on the branch of ``branch_eval``."""
    k = _model_k(z)
    cos = np.cos(k)
    if abs(cos) < 1e-12:
        raise PoleError(MODEL_EDGE, z)
    return complex(16 / 9 * (1 - 2j * np.sin(k) * cos ** 2) / cos ** 4)


def model_secular_closed(z) -> complex:
    """det(B M(z) - A) for the builtin conditions: (16/9)(1 - 2i tan k)."""
    k = _model_k(z)
    cos = np.cos(k)
    if abs(cos) < 1e-12:
        raise PoleError(MODEL_EDGE, z)
    return complex(16 / 9 * (1 - 2j * np.sin(k) / cos))
