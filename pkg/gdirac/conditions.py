import logging
from typing import List, NamedTuple, Optional

from django.core.exceptions import ValidationError

import numpy as np

from .constants import END_LENGTH, END_ZERO


logger = logging.getLogger(__name__)

GAMMA_0 = 0
GAMMA_1 = 1


class TraceSlot(NamedTuple):
    """
    One slot of the boundary space: the trace ``multiplier * psi^component``
    at ``end`` of ``edge_id`` sits in Gamma_{gamma} at ``index``; the
    complementary trace of the same endpoint shares the index in the other
    Gamma.
    """
    index: int
    edge_id: str
    end: int
    component: int
    multiplier: complex
    gamma: int


class TraceIndexMap(NamedTuple):
    dimension: int
    slots: List[TraceSlot]

    def locate(self, edge_id, end, component) -> TraceSlot:
        for slot in self.slots:
            if (slot.edge_id, slot.end, slot.component) == (edge_id, end, component):
                return slot
        raise KeyError((edge_id, end, component))

    def edge_indices(self, edge_id) -> List[int]:
        return sorted({slot.index for slot in self.slots if slot.edge_id == edge_id})


class ConditionMatrices(NamedTuple):
    A: np.ndarray
    B: np.ndarray
    vertex_rows: Optional[dict] = None

    @property
    def dimension(self):
        return self.A.shape[0]


class SelfAdjointReport(NamedTuple):
    hermitian_compat: bool
    rank_full: bool
    compat_residual: float
    rank: int
    dimension: int


def trace_dimension(g) -> int:
    return 2 * g.n_segments + g.n_halflines


def trace_index_map(g) -> TraceIndexMap:
    """
    Segment 0-end: psi1(0) in Gamma0, ic psi2(0) in Gamma1.
    Segment l-end: ic psi2(l) in Gamma0, psi1(l) in Gamma1.
    Half-line: psi1(0) in Gamma0, ic psi2(0) in Gamma1, as for a 0-end.
    """
    ic = 1j * g.params.c
    slots = []
    index = 0
    for edge in g.edges:
        slots.append(TraceSlot(index, edge.id, END_ZERO, 1, 1, GAMMA_0))
        slots.append(TraceSlot(index, edge.id, END_ZERO, 2, ic, GAMMA_1))
        index += 1
        if edge.is_segment:
            slots.append(TraceSlot(index, edge.id, END_LENGTH, 2, ic, GAMMA_0))
            slots.append(TraceSlot(index, edge.id, END_LENGTH, 1, 1, GAMMA_1))
            index += 1
    return TraceIndexMap(index, slots)


def trace_vectors(g, psi, index_map=None):
    index_map = index_map or trace_index_map(g)
    gamma = np.zeros((2, index_map.dimension), dtype=complex)
    for slot in index_map.slots:
        edge = g.edge(slot.edge_id)
        values = psi.endpoint_values(edge.id, edge.coordinate(slot.end))
        gamma[slot.gamma, slot.index] = slot.multiplier * values[slot.component - 1]
    return gamma[GAMMA_0], gamma[GAMMA_1]


def _add_trace(A, B, row, slot, coefficient):
    # the row reads (A Gamma0 - B Gamma1)[row] = 0
    if slot.gamma == GAMMA_0:
        A[row, slot.index] += coefficient / slot.multiplier
    else:
        B[row, slot.index] -= coefficient / slot.multiplier


def assemble_AB(g, index_map=None) -> ConditionMatrices:
    """
    Kirchhoff-type conditions as endpoint rows, vertex by vertex: consecutive
    differences of psi1 traces, then the signed sum of the ic psi2 traces,
    which keeps A and B real. A clamped vertex gets the single row
    psi1(v) = 0 instead.
    """
    index_map = index_map or trace_index_map(g)
    size = index_map.dimension
    A = np.zeros((size, size), dtype=complex)
    B = np.zeros((size, size), dtype=complex)
    vertex_rows = {}
    row = 0
    for vertex in g.vertices:
        incidences = g.incidences[vertex]
        start = row
        if vertex in g.clamped:
            incidence = incidences[0]
            _add_trace(A, B, row, index_map.locate(incidence.edge.id, incidence.end, 1), 1)
            row += 1
        else:
            for left, right in zip(incidences, incidences[1:]):
                _add_trace(A, B, row, index_map.locate(left.edge.id, left.end, 1), 1)
                _add_trace(A, B, row, index_map.locate(right.edge.id, right.end, 1), -1)
                row += 1
            for incidence in incidences:
                slot = index_map.locate(incidence.edge.id, incidence.end, 2)
                _add_trace(A, B, row, slot, incidence.sign * slot.multiplier)
            row += 1
        vertex_rows[vertex] = list(range(start, row))
    if row != size:
        raise ValidationError(f"assembled {row} condition rows for trace dimension {size}")
    logger.debug(f"assembled {size}x{size} condition matrices")
    return ConditionMatrices(A, B, vertex_rows)


def check_selfadjoint_conditions(cm: ConditionMatrices, tol: float = 1e-14) -> SelfAdjointReport:
    A, B = np.asarray(cm.A), np.asarray(cm.B)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape != B.shape:
        raise ValidationError(f"condition matrices must be square and equal in size, got {A.shape} and {B.shape}")
    size = A.shape[0]
    residual = float(np.max(np.abs(A @ B.conj().T - B @ A.conj().T), initial=0.0))
    stacked = np.hstack([A, B])
    # rank through the singular values of [A | B]
    rank = int(np.linalg.matrix_rank(stacked, tol=max(size, 1) * 1e-12 * max(1.0, np.abs(stacked).max(initial=0.0))))
    return SelfAdjointReport(residual <= tol, rank == size, residual, rank, size)


def conditions_residual(cm: ConditionMatrices, gamma_0, gamma_1) -> float:
    """Relative residual of A Gamma0 = B Gamma1."""
    residual = np.linalg.norm(cm.A @ gamma_0 - cm.B @ gamma_1)
    return float(residual / (1 + np.linalg.norm(gamma_0) + np.linalg.norm(gamma_1)))


def row_space_equal(first: np.ndarray, second: np.ndarray, tol: float = 1e-10) -> bool:
    """Whether the rows of two (A | B) juxtapositions span the same space."""
    rank_first = np.linalg.matrix_rank(first, tol=tol)
    rank_second = np.linalg.matrix_rank(second, tol=tol)
    joint = np.linalg.matrix_rank(np.vstack([first, second]), tol=tol)
    return rank_first == rank_second == joint


def permute_columns(cm: ConditionMatrices, source_map: TraceIndexMap, target_map: TraceIndexMap):
    """Express ``cm`` (built on ``source_map``) in the slot order of ``target_map``."""
    order = np.zeros(source_map.dimension, dtype=int)
    for slot in source_map.slots:
        if slot.gamma == GAMMA_0:
            order[target_map.locate(slot.edge_id, slot.end, slot.component).index] = slot.index
    return np.hstack([cm.A[:, order], cm.B[:, order]])
