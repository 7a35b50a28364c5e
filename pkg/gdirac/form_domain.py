"""
Finite-dimensional form domain of the Dirac operator.

In an eigenbasis the operator is multiplication by its eigenvalues f_i, and
the graph norm weights the i-th coordinate by A_i = 1 + f_i². The quadratic
K-functional, the interpolation norms it generates and the fractional power
norms <A^θ x, x> are computed here for such diagonal surrogates.
"""
import logging
from dataclasses import dataclass
from typing import NamedTuple

from django.core.exceptions import ValidationError

import numpy as np
from scipy.integrate import trapezoid
from scipy.special import expit


logger = logging.getLogger(__name__)

QUADRATURE_TOLERANCE = 1e-8
QUADRATURE_WINDOW = 40.0
MAX_REFINEMENTS = 16


@dataclass(frozen=True)
class MultiplierSurrogate:
    f: np.ndarray

    def __post_init__(self):
        f = np.atleast_1d(np.asarray(self.f, dtype=float))
        if f.ndim != 1 or not len(f):
            raise ValidationError('a multiplier surrogate needs at least one eigenvalue', code='empty')
        if not np.all(np.isfinite(f)):
            raise ValidationError('multiplier eigenvalues must be finite', code='not_finite')
        object.__setattr__(self, 'f', f)

    @classmethod
    def from_multipliers(cls, multipliers) -> 'MultiplierSurrogate':
        """Build from the weights A_i >= 1 directly."""
        multipliers = np.atleast_1d(np.asarray(multipliers, dtype=float))
        if np.any(multipliers < 1):
            raise ValidationError('multipliers must be at least 1', code='multiplier')
        return cls(np.sqrt(multipliers - 1))

    @property
    def A(self) -> np.ndarray:
        return 1 + self.f ** 2

    @property
    def n(self) -> int:
        return len(self.f)


class KDecomposition(NamedTuple):
    value: float
    x0: np.ndarray
    x1: np.ndarray


def _vector(s, x):
    x = np.atleast_1d(np.asarray(x, dtype=complex))
    if x.shape != (s.n,):
        raise ValidationError(f"vector of shape {x.shape} does not match dimension {s.n}", code='dimension')
    return x


def _positive(t):
    if not t > 0:
        raise ValidationError(f"t must be positive, got {t}", code='t')


def k_functional_closed(s: MultiplierSurrogate, x, t) -> float:
    """K(t, x) = <tA/(1 + tA) x, x>."""
    _positive(t)
    x = _vector(s, x)
    weights = t * s.A / (1 + t * s.A)
    return float(np.sum(weights * np.abs(x) ** 2))


def k_objective(s: MultiplierSurrogate, x, x1, t) -> float:
    x = _vector(s, x)
    x0 = x - x1
    return float(np.sum(np.abs(x0) ** 2) + t * np.sum(s.A * np.abs(x1) ** 2))


def k_functional_direct(s: MultiplierSurrogate, x, t) -> KDecomposition:
    """Minimize |x0|² + t<A x1, x1> over x = x0 + x1."""
    _positive(t)
    x = _vector(s, x)
    x1 = x / (1 + t * s.A)
    x0 = x - x1
    return KDecomposition(k_objective(s, x, x1, t), x0, x1)


def power_norm(s: MultiplierSurrogate, x, theta) -> float:
    """<A^θ x, x>."""
    x = _vector(s, x)
    return float(np.sum(s.A ** theta * np.abs(x) ** 2))


def interpolation_constant(theta) -> float:
    """∫ s^{-θ}/(1 + s) ds over (0, ∞)."""
    return float(np.pi / np.sin(np.pi * theta))


def _window(s, theta):
    width = max(QUADRATURE_WINDOW, 30 / min(theta, 1 - theta))
    return -width - float(np.log(s.A.max())), width


def interpolation_norm(s: MultiplierSurrogate, x, theta) -> float:
    """
    ∫ t^{-θ} K(t, x) dt/t over (0, ∞), as a trapezoid rule in u = log t with
    the number of nodes doubled until two passes agree to 1e-8.
    """
    if not 0 < theta < 1:
        raise ValidationError(f"theta must lie in (0, 1), got {theta}", code='theta')
    x = _vector(s, x)
    weights = np.abs(x) ** 2
    if not weights.any():
        return 0.0
    log_a = np.log(s.A)
    lower, upper = _window(s, theta)

    def integrand(u):
        return np.exp(-theta * u) * (expit(u[:, None] + log_a[None, :]) @ weights)

    points = 257
    previous = None
    for _ in range(MAX_REFINEMENTS):
        u = np.linspace(lower, upper, points)
        value = float(trapezoid(integrand(u), u))
        if previous is not None and abs(value - previous) <= QUADRATURE_TOLERANCE * abs(value):
            logger.debug(f"interpolation norm converged with {points} nodes")
            return value
        previous = value
        points = 2 * points - 1
    logger.warning(f"interpolation norm did not reach {QUADRATURE_TOLERANCE} with {points} nodes")
    return value


def dirac_form_norm(eigensystem, x) -> float:
    """
    The order-1/2 power norm of ``x`` (unknowns of the discrete operator) with
    the eigenvalues of the operator as the multiplier surrogate.
    """
    if eigensystem is None or eigensystem.vectors is None:
        raise ValidationError('the form norm needs a full eigendecomposition', code='decomposition')
    coefficients = eigensystem.vectors.conj().T @ np.asarray(x, dtype=complex)
    return power_norm(MultiplierSurrogate(eigensystem.values), coefficients, 0.5)


def form_norm_report(s: MultiplierSurrogate, x, theta) -> dict:
    interpolated = interpolation_norm(s, x, theta)
    power = power_norm(s, x, theta)
    return {
        'theta': float(theta),
        'interpolation_norm': interpolated,
        'power_norm': power,
        'ratio': interpolated / power if power else float('nan'),
        'expected_ratio': interpolation_constant(theta),
    }
