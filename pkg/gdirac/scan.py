import logging
from typing import Dict, List, NamedTuple, Optional, Tuple

import numpy as np
from scipy import linalg
from scipy.optimize import brentq, minimize_scalar

from .conditions import assemble_AB, trace_index_map
from .constants import (
    GDIRAC_CANDIDATE_TOLERANCE, GDIRAC_CONTOUR_POINTS, GDIRAC_GAP_MARGIN, GDIRAC_ROOT_TOLERANCE, GDIRAC_SEGMENT_MODES,
)
from .exceptions import CertificationError, CutError
from .graph import PhysicalParams, max_vertex_residual, vertex_residuals
from .spinors import ClosedFormSpinor, Component, EdgeSpinor, Linear, eigen_residual
from .utils import get_setting, parallel_map
from .weyl import regularized_secular, secular


logger = logging.getLogger(__name__)

SHOOTING_TOLERANCE = 1e-10
THRESHOLD_MODE_TOLERANCE = 1e-12
MINIMUM_XTOL = 1e-12


class EssentialSpectrum(NamedTuple):
    neg: Tuple[float, float]
    pos: Tuple[float, float]


class SegmentSpectrum(NamedTuple):
    edge_id: str
    dispersion: np.ndarray
    shooting: np.ndarray
    scaled: np.ndarray
    confirmed: str
    mismatch: float

    @property
    def values(self) -> np.ndarray:
        """±lambda_j, ascending."""
        return np.concatenate([-self.dispersion[::-1], self.dispersion])


class RootCertificate(NamedTuple):
    z: complex
    certified: bool
    winding: int
    value: float
    iterations: int = 0


class GapScan(NamedTuple):
    z: np.ndarray
    values: np.ndarray
    minima: List[Tuple[float, float]]
    certified: List[RootCertificate]
    rejected: List[RootCertificate]


class ThresholdCandidate(NamedTuple):
    lam: float
    spinor: ClosedFormSpinor
    vertex: str
    edges: Tuple[str, str]
    residual: float
    accepted: bool


class GapCheck(NamedTuple):
    passed: bool
    scan: GapScan
    oracle_min_abs: float
    tolerance: float
    violations: List[float]


class SpectralReport(NamedTuple):
    essential: EssentialSpectrum
    gap_roots: List[RootCertificate]
    thresholds: List[ThresholdCandidate]
    segment_spectra: Dict[str, SegmentSpectrum]
    gap_check: Optional[GapCheck] = None

    def as_dict(self) -> dict:
        return {
            'essential': {
                'neg': ['-inf', self.essential.neg[1]],
                'pos': [self.essential.pos[0], 'inf'],
            },
            'gap_roots': [
                {'z': [root.z.real, root.z.imag], 'winding': root.winding, 'abs_secular': root.value}
                for root in self.gap_roots
            ],
            'thresholds': [
                {'lambda': mode.lam, 'vertex': mode.vertex, 'edges': list(mode.edges)}
                for mode in self.thresholds
            ],
            'segment_spectra': {
                edge_id: {
                    'dispersion': spectrum.dispersion.tolist(),
                    'shooting': spectrum.shooting.tolist(),
                    'scaled': spectrum.scaled.tolist(),
                    'confirmed': spectrum.confirmed,
                    'mismatch': spectrum.mismatch,
                }
                for edge_id, spectrum in self.segment_spectra.items()
            },
            'gap_check': None if self.gap_check is None else {
                'passed': self.gap_check.passed,
                'oracle_min_abs': self.gap_check.oracle_min_abs,
                'tolerance': self.gap_check.tolerance,
            },
        }


def essential_spectrum(p: PhysicalParams) -> EssentialSpectrum:
    rest = p.threshold
    return EssentialSpectrum((-np.inf, -rest), (rest, np.inf))


def shooting_function(length, p: PhysicalParams, lam) -> float:
    """psi2(length) for the solution of D psi = lam psi with psi(0) = (0, 1)."""
    rest = p.threshold
    transfer = 1j / p.c * np.array([[0, lam + rest], [lam - rest, 0]])
    return float(linalg.expm(length * transfer)[1, 1].real)


def shooting_roots(length, p: PhysicalParams, count, sign=1) -> np.ndarray:
    """First ``count`` eigenvalues of sign ``sign`` of the segment with psi1(0) = psi2(length) = 0."""
    rest = p.threshold
    step = np.pi / (16.5 * length)
    roots = []
    kappa = 0.0
    previous_lam = sign * rest
    previous = shooting_function(length, p, previous_lam)
    while len(roots) < count:
        kappa += step
        lam = sign * np.sqrt((p.c * kappa) ** 2 + rest ** 2)
        value = shooting_function(length, p, lam)
        if previous == 0:
            roots.append(previous_lam)
        elif previous * value < 0:
            roots.append(brentq(lambda x: shooting_function(length, p, x), previous_lam, lam,
                                xtol=1e-15, rtol=4 * np.finfo(float).eps))
        previous_lam, previous = lam, value
    return np.abs(np.array(roots[:count]))


def segment_spectrum(e, p: PhysicalParams, j_max) -> SegmentSpectrum:
    """
    Eigenvalues of the decoupled segment (psi1(0) = 0, psi2(l) = 0) from the
    dispersion relation, the shooting oracle and the scaled variant
    sqrt(2mc²π²(j + 1/2)²/l² + m²c⁴).
    """
    j = np.arange(j_max + 1)
    rest = p.threshold
    dispersion = np.sqrt((p.c * np.pi * (j + 0.5) / e.length) ** 2 + rest ** 2)
    scaled = np.sqrt(2 * rest * (np.pi * (j + 0.5) / e.length) ** 2 + rest ** 2)
    shooting = shooting_roots(e.length, p, j_max + 1)
    negative = shooting_roots(e.length, p, j_max + 1, sign=-1)
    mismatch = float(max(np.max(np.abs(dispersion - shooting)), np.max(np.abs(dispersion - negative))))
    if mismatch <= SHOOTING_TOLERANCE:
        confirmed = 'dispersion'
    elif float(np.max(np.abs(scaled - shooting))) <= SHOOTING_TOLERANCE:
        confirmed = 'scaled'
    else:
        confirmed = 'none'
    if confirmed != 'dispersion':
        logger.warning(f"segment {e.id}: shooting oracle disagrees with the dispersion relation by {mismatch:.2e}")
    return SegmentSpectrum(e.id, dispersion, shooting, scaled, confirmed, mismatch)


def local_minima(values) -> List[int]:
    """Indices of local minima of a sampled curve, endpoints included."""
    values = np.asarray(values)
    count = len(values)
    indices = []
    for i in range(count):
        left = values[i - 1] if i > 0 else np.inf
        right = values[i + 1] if i < count - 1 else np.inf
        if values[i] <= left and values[i] <= right:
            indices.append(i)
    return indices


def refine_minimum(func, z, lower, upper) -> float:
    """
    Golden-section refinement of a sampled minimum bracketed by its
    neighbours; endpoint minima and flat brackets are returned unchanged.
    """
    value = func(z)
    if not (lower < z < upper and value < func(lower) and value < func(upper)):
        return z
    result = minimize_scalar(func, bracket=(lower, z, upper), method='golden', options={'xtol': MINIMUM_XTOL})
    return float(result.x) if result.fun <= value else z


def _crosses_cut(g, z0, radius) -> bool:
    if g.is_compact:
        return False
    rest = g.params.threshold
    if abs(z0.imag) > radius:
        return False
    reach = np.sqrt(radius ** 2 - z0.imag ** 2)
    return abs(z0.real) + reach >= rest


def winding_number(func, z0, radius, points) -> complex:
    """(1/2πi)∮ f'/f dz on the circle |z - z0| = radius, trapezoid rule."""
    theta = 2 * np.pi * np.arange(points) / points
    contour = z0 + radius * np.exp(1j * theta)
    step = 1e-6 * radius
    total = 0j
    for z, angle in zip(contour, theta):
        value = func(z)
        if value == 0:
            raise CertificationError(f"secular function vanishes on the contour at {z}")
        derivative = (func(z + step) - func(z - step)) / (2 * step)
        total += derivative / value * 1j * radius * np.exp(1j * angle)
    return total * (2 * np.pi / points) / (2j * np.pi)


def refine_root(g, z0, radius, conditions=None, points=None) -> RootCertificate:
    """
    Certify a root of the regularized secular function in the disk
    |z - z0| < radius by its winding number, then polish it by Newton.
    """
    z0 = complex(z0)
    if _crosses_cut(g, z0, radius):
        raise CutError()
    points = points or int(get_setting(GDIRAC_CONTOUR_POINTS))
    tolerance = float(get_setting(GDIRAC_ROOT_TOLERANCE))
    index_map = trace_index_map(g)
    conditions = assemble_AB(g, index_map) if conditions is None else conditions

    def func(z):
        return regularized_secular(g, z, conditions, index_map)

    winding = winding_number(func, z0, radius, points)
    count = int(round(winding.real))
    if abs(winding - count) > 0.1:
        logger.error(f"winding number {winding} around {z0} is not an integer")
        raise CertificationError(f"winding number {winding:.4f} is not an integer")
    if count == 0:
        logger.debug(f"no root within {radius} of {z0}")
        return RootCertificate(z0, False, 0, abs(func(z0)))

    z = z0
    step = 1e-7 * radius
    for iteration in range(1, 51):
        value = func(z)
        if abs(value) <= tolerance:
            break
        derivative = (func(z + step) - func(z - step)) / (2 * step)
        z = z - value / derivative
        if abs(z - z0) > radius:
            raise CertificationError(f"Newton iteration left the disk around {z0}")
    else:
        raise CertificationError(f"Newton iteration did not reach {tolerance} around {z0}")
    logger.info(f"certified root {z} with winding number {count}")
    return RootCertificate(z, True, count, abs(func(z)), iteration)


def sampled_minima(func, zs, values) -> List[Tuple[float, float]]:
    """
    Refined local minima of a sampled curve ``values`` of ``func`` at ``zs``.
    Non-finite samples (poles) are dropped first, so their neighbours bracket
    across them; ``func`` must return inf there.
    """
    values = np.asarray(values, dtype=float)
    finite = np.isfinite(values)
    zs, values = np.asarray(zs, dtype=float)[finite], values[finite]
    last = len(zs) - 1
    minima = []
    for index in local_minima(values):
        lower, upper = zs[max(index - 1, 0)], zs[min(index + 1, last)]
        z = refine_minimum(func, float(zs[index]), float(lower), float(upper))
        minima.append((z, float(func(z))))
    return minima


def gap_scan(g, n_samples=1000, conditions=None) -> GapScan:
    if n_samples < 100:
        raise ValueError(f"gap scans need at least 100 samples, got {n_samples}")
    rest = g.params.threshold
    margin = float(get_setting(GDIRAC_GAP_MARGIN)) * rest
    zs = np.linspace(-rest + margin, rest - margin, n_samples)
    index_map = trace_index_map(g)
    conditions = assemble_AB(g, index_map) if conditions is None else conditions

    def magnitude(z):
        return abs(secular(g, z, conditions, index_map))

    values = np.array(parallel_map(magnitude, zs))
    candidate_tolerance = float(get_setting(GDIRAC_CANDIDATE_TOLERANCE))
    minima = sampled_minima(magnitude, zs, values)
    certified, rejected = [], []
    for z, value in minima:
        if value >= candidate_tolerance:
            continue
        radius = min(0.5 * (rest - abs(z)), 0.1 * rest)
        certificate = refine_root(g, z, radius, conditions)
        (certified if certificate.certified else rejected).append(certificate)
    logger.info(f"gap scan: {len(minima)} minima, {len(certified)} certified roots")
    return GapScan(zs, values, minima, certified, rejected)


def terminal_segments(g, vertex) -> List:
    """Incidences at ``vertex`` of segments whose other end is a pendant vertex."""
    terminals = []
    for incidence in g.incidences[vertex]:
        edge = incidence.edge
        if not edge.is_segment or edge.tail == edge.head:
            continue
        other = edge.head if edge.tail == vertex else edge.tail
        if g.degree(other) == 1 and g.degree(vertex) > 1:
            terminals.append(incidence)
    return terminals


def _local_field(lam, p, amplitude):
    if lam > 0:
        # psi1 = 2imc A x, psi2 = A
        return EdgeSpinor(
            Component.of(Linear(2j * p.mass * p.c * amplitude, 0j)),
            Component.of(Linear(0j, amplitude)),
        )
    # psi1 = 0, psi2 = F
    return EdgeSpinor(Component(), Component.of(Linear(0j, amplitude)))


def threshold_candidates(g) -> List[ThresholdCandidate]:
    """
    Pairwise constructions on terminal segments sharing a vertex, at both
    thresholds, each checked against the graph's own vertex conditions.
    """
    p = g.params
    candidates = []
    for vertex in g.vertices:
        terminals = terminal_segments(g, vertex)
        for second in terminals[1:]:
            pair = (terminals[0], second)
            for lam in (p.threshold, -p.threshold):
                psi = ClosedFormSpinor.zero(g)
                for incidence, amplitude in zip(pair, (1, -1)):
                    field = _local_field(lam, p, amplitude)
                    if incidence.coordinate != 0:
                        field = field.reflected(incidence.edge.length)
                    psi = psi.replaced(incidence.edge.id, field)
                residual = max(
                    max_vertex_residual(vertex_residuals(g, psi)),
                    eigen_residual(g, psi, p, lam),
                )
                accepted = residual <= THRESHOLD_MODE_TOLERANCE
                edges = (pair[0].edge.id, pair[1].edge.id)
                if not accepted:
                    logger.warning(f"threshold candidate {lam} at {vertex} on {edges} violates the vertex "
                                   f"conditions by {residual:.2e}")
                candidates.append(ThresholdCandidate(lam, psi, vertex, edges, residual, accepted))
    return candidates


def threshold_modes(g) -> List[Tuple[float, ClosedFormSpinor]]:
    return [(candidate.lam, candidate.spinor) for candidate in threshold_candidates(g) if candidate.accepted]


def gap_theorem_check(g, h=None, truncation=None, conditions=None, n_samples=1000) -> GapCheck:
    """
    Passes when the secular scan certifies no root inside the gap and the
    discrete operator has no eigenvalue with |lambda| < mc² - h·mc².
    """
    from .oracle import default_spacing, discretize, eigs_window

    rest = g.params.threshold
    scan = gap_scan(g, n_samples, conditions)
    operator = discretize(g, g.params, h or default_spacing(g), truncation)
    tolerance = max(operator.h * rest, 1e-9)
    inside = eigs_window(operator, -rest, rest, vectors=False).values
    violations = [float(value) for value in inside if abs(value) < rest - tolerance]
    oracle_min_abs = float(np.abs(inside).min()) if len(inside) else float(rest)
    passed = not scan.certified and not violations
    if not passed:
        logger.error(f"gap check failed: {len(scan.certified)} certified roots, {len(violations)} oracle eigenvalues")
    return GapCheck(passed, scan, oracle_min_abs, tolerance, violations)


def spectral_report(g, conditions=None, j_max=None, n_samples=1000, h=None, truncation=None,
                    oracle=True) -> SpectralReport:
    j_max = int(get_setting(GDIRAC_SEGMENT_MODES)) if j_max is None else j_max
    gap_check = gap_theorem_check(g, h, truncation, conditions, n_samples) if oracle else None
    scan = gap_check.scan if gap_check else gap_scan(g, n_samples, conditions)
    return SpectralReport(
        essential=essential_spectrum(g.params),
        gap_roots=scan.certified,
        thresholds=[candidate for candidate in threshold_candidates(g) if candidate.accepted],
        segment_spectra={edge.id: segment_spectrum(edge, g.params, j_max) for edge in g.segments},
        gap_check=gap_check,
    )
