"""
Closed-form spinor fields on metric graphs.

Every component is a short sum of terms of three kinds: linear polynomials,
trigonometric pairs and exponentials. These kinds are closed under
differentiation and under reversing the orientation of a segment, so the
Dirac action can be applied exactly.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, NamedTuple, Tuple, Union

import numpy as np
from scipy.integrate import simpson


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Linear:
    slope: complex
    intercept: complex

    def __call__(self, x):
        return self.slope * np.asarray(x) + self.intercept

    def derivative(self):
        return Linear(0j, self.slope)

    def scaled(self, factor):
        return Linear(factor * self.slope, factor * self.intercept)

    def reflected(self, length):
        return Linear(-self.slope, self.slope * length + self.intercept)

    def key(self):
        return ('linear',)

    def merged(self, other):
        return Linear(self.slope + other.slope, self.intercept + other.intercept)


@dataclass(frozen=True)
class Trig:
    k: complex
    alpha: complex
    beta: complex

    def __call__(self, x):
        kx = self.k * np.asarray(x)
        return self.alpha * np.cos(kx) + self.beta * np.sin(kx)

    def derivative(self):
        return Trig(self.k, self.beta * self.k, -self.alpha * self.k)

    def scaled(self, factor):
        return Trig(self.k, factor * self.alpha, factor * self.beta)

    def reflected(self, length):
        cos, sin = np.cos(self.k * length), np.sin(self.k * length)
        return Trig(self.k, self.alpha * cos + self.beta * sin, self.alpha * sin - self.beta * cos)

    def key(self):
        return ('trig', complex(self.k))

    def merged(self, other):
        return Trig(self.k, self.alpha + other.alpha, self.beta + other.beta)


@dataclass(frozen=True)
class Exponential:
    k: complex
    alpha: complex

    def __call__(self, x):
        return self.alpha * np.exp(1j * self.k * np.asarray(x))

    def derivative(self):
        return Exponential(self.k, 1j * self.k * self.alpha)

    def scaled(self, factor):
        return Exponential(self.k, factor * self.alpha)

    def reflected(self, length):
        return Exponential(-self.k, self.alpha * np.exp(1j * self.k * length))

    def key(self):
        return ('exp', complex(self.k))

    def merged(self, other):
        return Exponential(self.k, self.alpha + other.alpha)


Term = Union[Linear, Trig, Exponential]


class Component(NamedTuple):
    terms: Tuple[Term, ...] = ()

    @classmethod
    def of(cls, *terms: Term) -> 'Component':
        return cls(()).plus(cls(tuple(terms)))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        total = np.zeros(x.shape, dtype=complex)
        for term in self.terms:
            total = total + term(x)
        return total

    def derivative(self) -> 'Component':
        return Component(tuple(term.derivative() for term in self.terms))

    def scaled(self, factor) -> 'Component':
        return Component(tuple(term.scaled(factor) for term in self.terms))

    def reflected(self, length) -> 'Component':
        return Component.of(*(term.reflected(length) for term in self.terms))

    def plus(self, other: 'Component') -> 'Component':
        merged = {}
        for term in self.terms + other.terms:
            key = term.key()
            merged[key] = merged[key].merged(term) if key in merged else term
        return Component(tuple(merged.values()))


ZERO = Component()


class EdgeSpinor(NamedTuple):
    first: Component = ZERO
    second: Component = ZERO

    def __call__(self, x):
        return self.first(x), self.second(x)

    def scaled(self, factor) -> 'EdgeSpinor':
        return EdgeSpinor(self.first.scaled(factor), self.second.scaled(factor))

    def plus(self, other: 'EdgeSpinor') -> 'EdgeSpinor':
        return EdgeSpinor(self.first.plus(other.first), self.second.plus(other.second))

    def reflected(self, length) -> 'EdgeSpinor':
        # x -> length - x keeps the Dirac action when psi2 changes sign.
        return EdgeSpinor(self.first.reflected(length), self.second.reflected(length).scaled(-1))


class ClosedFormSpinor:
    """A spinor given by closed-form components on every edge of a graph."""

    def __init__(self, fields: Dict[str, EdgeSpinor]):
        self.fields = dict(fields)

    @classmethod
    def zero(cls, g) -> 'ClosedFormSpinor':
        return cls({edge.id: EdgeSpinor() for edge in g.edges})

    def __getitem__(self, edge_id) -> EdgeSpinor:
        return self.fields[edge_id]

    def __iter__(self):
        return iter(self.fields.items())

    def evaluate(self, edge_id, x):
        return self.fields[edge_id](x)

    def endpoint_values(self, edge_id, x) -> Tuple[complex, complex]:
        first, second = self.fields[edge_id](x)
        return complex(first), complex(second)

    def replaced(self, edge_id, field: EdgeSpinor) -> 'ClosedFormSpinor':
        fields = dict(self.fields)
        fields[edge_id] = field
        return ClosedFormSpinor(fields)

    def scaled(self, factor) -> 'ClosedFormSpinor':
        return ClosedFormSpinor({key: value.scaled(factor) for key, value in self})

    def plus(self, other: 'ClosedFormSpinor') -> 'ClosedFormSpinor':
        keys = list(self.fields) + [key for key in other.fields if key not in self.fields]
        return ClosedFormSpinor({
            key: self.fields.get(key, EdgeSpinor()).plus(other.fields.get(key, EdgeSpinor()))
            for key in keys
        })

    def reversed(self, edge_id, length) -> 'ClosedFormSpinor':
        """The field transported to the graph where segment ``edge_id`` is reversed."""
        return self.replaced(edge_id, self.fields[edge_id].reflected(length))

    def support(self, g, x_samples: int = 33, tol: float = 1e-14):
        """Edge ids on which the field does not vanish (on a sample grid)."""
        edges = []
        for edge in g.edges:
            xs = np.linspace(0.0, edge.length if edge.is_segment else 1.0, x_samples)
            first, second = self.evaluate(edge.id, xs)
            if max(np.max(np.abs(first)), np.max(np.abs(second))) > tol:
                edges.append(edge.id)
        return edges


def apply_dirac(psi: ClosedFormSpinor, p) -> ClosedFormSpinor:
    """(-ic psi2' + mc² psi1, -ic psi1' - mc² psi2) on every edge."""
    rest = p.threshold
    fields = {}
    for edge_id, field in psi:
        first = field.second.derivative().scaled(-1j * p.c).plus(field.first.scaled(rest))
        second = field.first.derivative().scaled(-1j * p.c).plus(field.second.scaled(-rest))
        fields[edge_id] = EdgeSpinor(first, second)
    return ClosedFormSpinor(fields)


def edge_grid(edge, truncation, samples):
    length = edge.length if edge.is_segment else truncation
    return np.linspace(0.0, length, samples)


def eigen_residual(g, psi: ClosedFormSpinor, p, lam, truncation: float = 10.0, samples: int = 64) -> float:
    """max |Dpsi - lam psi| over sample points, relative to max |psi|."""
    image = apply_dirac(psi, p)
    worst, scale = 0.0, 0.0
    for edge in g.edges:
        xs = edge_grid(edge, truncation, samples)
        first, second = psi.evaluate(edge.id, xs)
        d_first, d_second = image.evaluate(edge.id, xs)
        worst = max(worst, np.max(np.abs(d_first - lam * first)), np.max(np.abs(d_second - lam * second)))
        scale = max(scale, np.max(np.abs(first)), np.max(np.abs(second)))
    return float(worst / scale) if scale else 0.0


def l2_norm(g, psi: ClosedFormSpinor, truncation: float, samples: int = 2001) -> float:
    """L² norm on the segments plus the half-lines truncated at ``truncation``."""
    total = 0.0
    for edge in g.edges:
        xs = edge_grid(edge, truncation, samples)
        first, second = psi.evaluate(edge.id, xs)
        total += simpson(np.abs(first) ** 2 + np.abs(second) ** 2, x=xs)
    return float(np.sqrt(total))


def combine(spinors: Iterable[ClosedFormSpinor], coefficients) -> ClosedFormSpinor:
    result = None
    for spinor, coefficient in zip(spinors, coefficients):
        term = spinor.scaled(coefficient)
        result = term if result is None else result.plus(term)
    return result
