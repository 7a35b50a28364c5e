"""
Staggered-grid discretization of the Dirac operator on a metric graph.

psi1 lives on the nodes of every edge grid, psi2 on the midpoints. A vertex
carries one shared psi1 unknown (continuity), and its row collects the
one-sided differences of the adjacent psi2 values with the endpoint sign
(discrete balance). Clamped vertices and the far ends of truncated
half-lines have psi1 = 0 and no unknown.

The matrix is stored in the symmetrized unknowns v = W^{1/2} psi, W the
quadrature weights (h on interior nodes and midpoints, half the incident
spacings at a vertex), which makes it Hermitian.
"""
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Tuple

from django.core.exceptions import ValidationError

import numpy as np
from scipy import sparse

from ..constants import GDIRAC_TRUNCATION_FACTOR
from ..utils import get_setting


logger = logging.getLogger(__name__)


class Dof(NamedTuple):
    component: int
    edge_id: Optional[str]
    index: float
    vertex: Optional[str] = None

    @property
    def label(self) -> str:
        if self.vertex is not None:
            return f"psi1@{self.vertex}"
        return f"psi{self.component}@{self.edge_id}[{self.index:g}]"


@dataclass(frozen=True)
class EdgeGrid:
    edge_id: str
    cells: int
    spacing: float
    length: float
    node_rows: Tuple[Optional[int], ...]
    mid_rows: Tuple[int, ...]

    @property
    def nodes(self) -> np.ndarray:
        return self.spacing * np.arange(self.cells + 1)

    @property
    def midpoints(self) -> np.ndarray:
        return self.spacing * (np.arange(self.cells) + 0.5)


@dataclass(frozen=True)
class DiscreteOperator:
    matrix: sparse.csr_matrix
    weights: np.ndarray
    dofs: Tuple[Dof, ...]
    grids: Dict[str, EdgeGrid]
    graph: object
    params: object
    h: float
    truncation: Optional[float]
    node_count: int

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def hermiticity_residual(self) -> float:
        difference = self.matrix - self.matrix.conj().T
        return float(abs(difference).max()) if difference.nnz else 0.0


@dataclass(frozen=True)
class SampledSpinor:
    """psi1 on the nodes and psi2 on the midpoints of each edge grid."""
    first: Dict[str, np.ndarray]
    second: Dict[str, np.ndarray]
    spacing: Dict[str, float]

    @classmethod
    def from_vector(cls, op: DiscreteOperator, vector) -> 'SampledSpinor':
        psi = np.asarray(vector) / np.sqrt(op.weights)
        first, second, spacing = {}, {}, {}
        for edge_id, grid in op.grids.items():
            first[edge_id] = np.array([psi[row] if row is not None else 0j for row in grid.node_rows])
            second[edge_id] = psi[list(grid.mid_rows)]
            spacing[edge_id] = grid.spacing
        return cls(first, second, spacing)

    def vertex_values(self, g) -> Dict[str, List[complex]]:
        """psi1 at every vertex as seen from each incident edge."""
        values = {vertex: [] for vertex in g.vertices}
        for vertex, incidences in g.incidences.items():
            for incidence in incidences:
                samples = self.first[incidence.edge.id]
                values[vertex].append(samples[0] if incidence.end == 0 else samples[-1])
        return values


def sample_spinor(op: DiscreteOperator, psi) -> np.ndarray:
    """Unknown vector of a closed-form spinor: psi1 at the nodes, psi2 at the midpoints, scaled by W^{1/2}."""
    values = np.zeros(op.size, dtype=complex)
    for edge_id, grid in op.grids.items():
        field = psi[edge_id]
        for row, x in zip(grid.node_rows, grid.nodes):
            if row is not None:
                values[row] = field.first(x)
        for row, x in zip(grid.mid_rows, grid.midpoints):
            values[row] = field.second(x)
    return values * np.sqrt(op.weights)


def default_spacing(g) -> float:
    return min(g.min_length / 8, 0.05)


def default_length(g, p=None) -> float:
    p = p or g.params
    return float(get_setting(GDIRAC_TRUNCATION_FACTOR)) * p.c / p.threshold


def _check_ranges(g, p, h, truncation):
    if not h or h <= 0:
        raise ValidationError(f"grid spacing must be positive, got {h}", code='spacing')
    if g.segments and h > g.min_length / 8 * (1 + 1e-12):
        raise ValidationError(
            f"grid spacing {h} exceeds min edge length / 8 = {g.min_length / 8}", code='spacing')
    if not g.is_compact:
        minimum = 10 * p.c / p.threshold
        if truncation < minimum * (1 - 1e-12):
            raise ValidationError(
                f"half-line truncation {truncation} is below 10 c/(mc²) = {minimum}", code='truncation')


def discretize(g, p=None, h=None, L=None) -> DiscreteOperator:
    p = p or g.params
    h = h or default_spacing(g)
    truncation = None if g.is_compact else (L or default_length(g, p))
    _check_ranges(g, p, h, truncation)

    dofs: List[Dof] = []
    vertex_rows = {}
    for vertex in g.vertices:
        if vertex in g.clamped:
            continue
        vertex_rows[vertex] = len(dofs)
        dofs.append(Dof(1, None, 0.0, vertex))

    layout = []
    for edge in g.edges:
        length = edge.length if edge.is_segment else truncation
        cells = max(int(math.ceil(length / h - 1e-9)), 1)
        rows: List[Optional[int]] = [vertex_rows.get(edge.tail)]
        for j in range(1, cells):
            rows.append(len(dofs))
            dofs.append(Dof(1, edge.id, float(j)))
        rows.append(vertex_rows.get(edge.head) if edge.is_segment else None)
        layout.append((edge, cells, length / cells, length, rows))
    node_count = len(dofs)

    grids = {}
    for edge, cells, spacing, length, rows in layout:
        mids = []
        for j in range(cells):
            mids.append(len(dofs))
            dofs.append(Dof(2, edge.id, j + 0.5))
        grids[edge.id] = EdgeGrid(edge.id, cells, spacing, length, tuple(rows), tuple(mids))

    size = len(dofs)
    weights = np.zeros(size)
    for edge, cells, spacing, length, rows in layout:
        grid = grids[edge.id]
        weights[list(grid.mid_rows)] = spacing
        for j, row in enumerate(rows):
            if row is None:
                continue
            weights[row] += spacing if 0 < j < cells else spacing / 2

    ic = 1j * p.c
    rows_x, cols_x, values_x = [], [], []
    for edge_id, grid in grids.items():
        for j, mid in enumerate(grid.mid_rows):
            # (D psi)2 at j+1/2 = -ic (psi1[j+1] - psi1[j]) / h - mc² psi2
            for node, coefficient in ((grid.node_rows[j + 1], -ic), (grid.node_rows[j], ic)):
                if node is None:
                    continue
                rows_x.append(mid)
                cols_x.append(node)
                values_x.append(np.sqrt(weights[mid] / weights[node]) * coefficient / grid.spacing)
    coupling = sparse.coo_matrix((values_x, (rows_x, cols_x)), shape=(size, size)).tocsr()
    diagonal = np.full(size, p.threshold, dtype=complex)
    diagonal[node_count:] = -p.threshold
    matrix = (sparse.diags(diagonal) + coupling + coupling.conj().T).tocsr()

    logger.info(f"discretized {len(g.edges)} edges with h={h}: {size} unknowns")
    return DiscreteOperator(matrix, weights, tuple(dofs), grids, g, p, h, truncation, node_count)


def difference_matrix(op: DiscreteOperator) -> sparse.csr_matrix:
    """Symmetrized psi1 -> psi1' map from the nodes to the midpoints."""
    rows, cols, values = [], [], []
    for grid in op.grids.values():
        for j, mid in enumerate(grid.mid_rows):
            for node, sign in ((grid.node_rows[j + 1], 1.0), (grid.node_rows[j], -1.0)):
                if node is None:
                    continue
                rows.append(mid - op.node_count)
                cols.append(node)
                values.append(np.sqrt(op.weights[mid] / op.weights[node]) * sign / grid.spacing)
    shape = (op.size - op.node_count, op.node_count)
    return sparse.coo_matrix((values, (rows, cols)), shape=shape).tocsr()


def kirchhoff_laplacian(op: DiscreteOperator) -> sparse.csr_matrix:
    """
    The Kirchhoff Laplacian on the node unknowns of the same grid: continuity
    through the shared vertex unknowns and the derivative balance as the
    adjoint of the difference map.
    """
    gradient = difference_matrix(op)
    return (gradient.T @ gradient).tocsr()
