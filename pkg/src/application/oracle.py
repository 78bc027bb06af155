"""
Brute-force verifiers for the closed forms: dense-sampling root finding,
finite differences, Rankine-Hugoniot checks on blown-down states and a
flood fill of the complement of C, Son and Son'.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Dict, Iterable, List, Tuple

import numpy as np
from loguru import logger
from scipy import ndimage
from scipy.optimize import brentq

from ..domain.configuration import GridConfig
from ..domain.curves import HugoniotCurve, eval_curve_array, speed_along
from ..domain.lax import RegionLabel, region_classify, region_table
from ..domain.model import ChartPoint, ModelParams, chart_to_states, flux_eval, rh_residual
from ..domain.polynomials import RealRoots, sign_change_brackets
from ..domain.surfaces import (
    SurfaceId,
    sigma_value,
    son_value,
    sonprime_value,
    surface_values_grid,
    tf_value,
)

# bounds, per-axis resolution and guard width of a sampling box
GridSpec = GridConfig


@dataclass
class OracleReport:
    name: str
    samples: int
    max_residual: float
    tolerance: float
    worst: List[Dict[str, Any]] = field(default_factory=list)
    skipped: int = 0
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.max_residual) and self.max_residual <= self.tolerance)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "samples": self.samples,
            "skipped": self.skipped,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "worst": self.worst,
            "notes": self.notes,
        }


class ResidualTracker:
    """Collects residuals and keeps the worst offenders"""

    def __init__(self, keep: int = 5):
        self.keep = keep
        self.count = 0
        self.skipped = 0
        self.max_residual = 0.0
        self._worst: List[Tuple[float, Dict[str, Any]]] = []

    def add(self, residual: float, **inputs: Any) -> None:
        self.count += 1
        residual = float(residual) if np.isfinite(residual) else float("inf")
        self.max_residual = max(self.max_residual, residual)
        self._worst.append((residual, inputs))
        self._worst.sort(key=lambda item: -item[0])
        del self._worst[self.keep :]

    def skip(self) -> None:
        self.skipped += 1

    def report(self, name: str, tolerance: float, notes: Iterable[str] = ()) -> OracleReport:
        return OracleReport(
            name=name,
            samples=self.count,
            max_residual=self.max_residual,
            tolerance=tolerance,
            worst=[dict(inputs, residual=r) for r, inputs in self._worst],
            skipped=self.skipped,
            notes=list(notes),
        )


# -- intersections ----------------------------------------------------------------


def surface_along_curve(
    params: ModelParams, curve: HugoniotCurve, surface: SurfaceId, z: np.ndarray
) -> np.ndarray:
    t, y = eval_curve_array(params, curve, z)
    if surface is SurfaceId.CHARACTERISTIC:
        return y
    if surface is SurfaceId.SON:
        return son_value(params, z, t, y)
    if surface is SurfaceId.SON_PRIME:
        return sonprime_value(params, z, t, y)
    if surface is SurfaceId.TF:
        return tf_value(params, z, t, y)
    if surface is SurfaceId.TF_PRIME:
        return tf_value(params, z, t, -y)
    return sigma_value(params, z, t, y)


def oracle_intersections(
    params: ModelParams,
    curve: HugoniotCurve,
    surface: SurfaceId,
    grid: GridSpec,
    samples: int = 20001,
    tangency_tolerance: float = 1e-10,
) -> RealRoots:
    """Zeros of a surface along a curve by sign-change bracketing on a dense z-sample.

    Sign changes are refined with Brent's method; sampled local minima of
    |value| below tangency_tolerance without a sign change are reported
    with multiplicity 2 as tangency candidates.
    """
    z = np.linspace(grid.z_bounds[0], grid.z_bounds[1], samples)
    values = surface_along_curve(params, curve, surface, z)

    def along(x: float) -> float:
        return float(surface_along_curve(params, curve, surface, np.array([x]))[0])

    roots: List[float] = []
    mults: List[int] = []
    residuals: List[float] = []
    signs = np.sign(values)
    for i in np.nonzero(signs == 0.0)[0]:
        roots.append(float(z[i]))
        mults.append(1)
        residuals.append(0.0)
    for low, high in sign_change_brackets(values, z):
        root = brentq(along, low, high, xtol=1e-12)
        roots.append(float(root))
        mults.append(1)
        residuals.append(abs(along(root)))

    magnitude = np.abs(values)
    scale = 1.0 + float(np.max(magnitude))
    inner = magnitude[1:-1]
    candidates = (
        (inner <= magnitude[:-2])
        & (inner <= magnitude[2:])
        & (signs[:-2] == signs[2:])
        & (signs[:-2] != 0.0)
        & (inner < tangency_tolerance * scale)
    )
    for i in np.nonzero(candidates)[0] + 1:
        roots.append(float(z[i]))
        mults.append(2)
        residuals.append(float(magnitude[i]))

    order = np.argsort(roots)
    return RealRoots(
        tuple(roots[i] for i in order),
        tuple(mults[i] for i in order),
        tuple(residuals[i] for i in order),
    )


def compare_roots(closed: RealRoots, sampled: RealRoots, spacing: float) -> Tuple[float, int]:
    """(max distance between matched simple roots, number of flagged near-misses).

    A closed-form root with no sampled partner within two sample spacings
    is a near-miss when it is double or has another closed-form root that
    close; anything else unmatched on either side makes the distance
    infinite.
    """
    window = 2.0 * spacing
    unmatched = list(sampled.roots)
    worst = 0.0
    flagged = 0
    for root, multiplicity in zip(closed.roots, closed.multiplicities):
        nearest = min(unmatched, key=lambda r: abs(r - root), default=None)
        if nearest is not None and abs(nearest - root) <= window:
            unmatched.remove(nearest)
            if multiplicity == 1:
                worst = max(worst, abs(nearest - root))
            continue
        crowded = sum(1 for other in closed.roots if abs(other - root) <= window) > 1
        if multiplicity > 1 or crowded:
            flagged += 1
            continue
        return float("inf"), flagged
    for root in unmatched:
        if not any(abs(root - other) <= window for other in closed.roots):
            return float("inf"), flagged
    return worst, flagged


# -- finite differences -------------------------------------------------------------


def richardson_derivative(func: Callable[[float], float], x: float, h: float) -> float:
    """Centered difference with one Richardson extrapolation step"""

    def centered(step: float) -> float:
        return (func(x + step) - func(x - step)) / (2.0 * step)

    return (4.0 * centered(h / 2.0) - centered(h)) / 3.0


def oracle_fd_speed(params: ModelParams, curve: HugoniotCurve, z: float, h: float = 1e-3) -> float:
    if not h > 0.0:
        raise ValueError("step must be positive")
    return richardson_derivative(lambda x: speed_along(params, curve, x), z, h)


# -- Rankine-Hugoniot -----------------------------------------------------------------


def oracle_rh_states(
    params: ModelParams,
    points: Iterable[ChartPoint],
    tolerance: float = 1e-9,
    speed_perturbation: float = 0.0,
) -> OracleReport:
    """Blow each point down to states and check the jump condition relative to the flux size"""
    tracker = ResidualTracker()
    for cp in points:
        states = chart_to_states(params, cp)
        if speed_perturbation:
            states = type(states)(
                states.u, states.v, states.u_prime, states.v_prime, states.s + speed_perturbation
            )
        r1, r2 = rh_residual(params, states)
        f1, g1 = flux_eval(params, states.u, states.v)
        f2, g2 = flux_eval(params, states.u_prime, states.v_prime)
        jump = abs(states.u - states.u_prime) + abs(states.v - states.v_prime)
        scale = 1.0 + max(abs(f1), abs(g1), abs(f2), abs(g2), abs(states.s) * jump)
        tracker.add(max(abs(r1), abs(r2)) / scale, z=cp.z, t=cp.t, Y=cp.y)
    return tracker.report("rh-states", tolerance)


# -- flood fill -----------------------------------------------------------------------


@dataclass(frozen=True)
class FloodFillResult:
    component_count: int
    labels: np.ndarray
    representatives: Tuple[ChartPoint, ...]
    sign_classes: Tuple[Tuple[int, int, int], ...]
    sizes: Tuple[int, ...]

    @property
    def upper_half_count(self) -> int:
        return sum(1 for signs in self.sign_classes if signs[0] > 0)


def grid_axes(grid: GridSpec) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    nz, nt, ny = grid.resolution
    return (
        np.linspace(grid.z_bounds[0], grid.z_bounds[1], nz),
        np.linspace(grid.t_bounds[0], grid.t_bounds[1], nt),
        np.linspace(grid.y_bounds[0], grid.y_bounds[1], ny),
    )


@lru_cache(maxsize=8)
def oracle_floodfill(params: ModelParams, grid: GridSpec) -> FloodFillResult:
    """6-connected components of the box minus C, Son and Son' and a guard band around them.

    Cells are grouped by their (sgn Y, sgn son, sgn son') class; a cell
    whose class differs from a face neighbour's, or that has an exact zero,
    is on a surface and is dilated by grid.guard_cells before labelling.
    """
    z, t, y = grid_axes(grid)
    zz, tt, yy = np.meshgrid(z, t, y, indexing="ij")
    son, sonprime = surface_values_grid(params, zz, tt, yy)
    code = (yy > 0).astype(np.int8) * 4 + (son > 0).astype(np.int8) * 2 + (sonprime > 0).astype(np.int8)

    on_surface = (yy == 0) | (son == 0) | (sonprime == 0)
    for axis in range(3):
        change = np.diff(code, axis=axis) != 0
        lead = [slice(None)] * 3
        trail = [slice(None)] * 3
        lead[axis] = slice(None, -1)
        trail[axis] = slice(1, None)
        on_surface[tuple(lead)] |= change
        on_surface[tuple(trail)] |= change

    structure = ndimage.generate_binary_structure(3, 1)
    guard = ndimage.binary_dilation(on_surface, structure=structure, iterations=grid.guard_cells)

    labels = np.zeros(code.shape, dtype=np.int32)
    classes: List[Tuple[int, int, int]] = []
    count = 0
    for value in range(8):
        mask = (code == value) & ~guard
        class_labels, found = ndimage.label(mask, structure=structure)
        if not found:
            continue
        labels[mask] = class_labels[mask] + count
        signs = (1 if value & 4 else -1, 1 if value & 2 else -1, 1 if value & 1 else -1)
        classes.extend([signs] * found)
        count += found

    representatives: List[ChartPoint] = []
    sizes: List[int] = []
    if count:
        depth = ndimage.distance_transform_cdt(labels > 0, metric="taxicab")
        index = np.arange(1, count + 1)
        positions = ndimage.maximum_position(depth, labels, index)
        sizes = [int(n) for n in ndimage.sum_labels(np.ones_like(labels), labels, index)]
        for i, j, k in positions:
            representatives.append(ChartPoint(z=float(z[i]), t=float(t[j]), y=float(y[k])))

    logger.debug("flood fill found {} component(s) at resolution {}", count, grid.resolution)
    return FloodFillResult(
        component_count=count,
        labels=labels,
        representatives=tuple(representatives),
        sign_classes=tuple(classes),
        sizes=tuple(sizes),
    )


def _component_name(
    params: ModelParams, signs: Tuple[int, int, int], z_cells: np.ndarray
) -> RegionLabel:
    """Name a component from its sign class and where its cells sit in z"""
    y_sign, son_sign, sonprime_sign = signs
    r = params.double_sonic_z
    z_plus = float(np.mean(z_cells)) > 0.0
    outer = bool(np.all(np.abs(z_cells) > r))
    upper = y_sign > 0
    if son_sign > 0 and sonprime_sign > 0:
        return {
            (True, True): RegionLabel.LATERAL_ZPLUS_YPLUS,
            (True, False): RegionLabel.LATERAL_ZPLUS_YMINUS,
            (False, True): RegionLabel.LATERAL_ZMINUS_YPLUS,
            (False, False): RegionLabel.LATERAL_ZMINUS_YMINUS,
        }[(z_plus, upper)]
    if outer and son_sign != sonprime_sign:
        return {
            (True, True): RegionLabel.SS_PRIME_ZPLUS_YPLUS,
            (True, False): RegionLabel.SS_PRIME_ZPLUS_YMINUS,
            (False, True): RegionLabel.SS_PRIME_ZMINUS_YPLUS,
            (False, False): RegionLabel.SS_PRIME_ZMINUS_YMINUS,
        }[(z_plus, upper)]
    if upper:
        return RegionLabel.ABOVE_BRIDGE if son_sign > 0 else RegionLabel.BELOW_BRIDGE
    return RegionLabel.BELOW_TUNNEL if sonprime_sign > 0 else RegionLabel.ABOVE_TUNNEL


def regenerate_region_table(
    params: ModelParams, grid: GridSpec
) -> Tuple[Dict[Tuple[int, int, int, int], RegionLabel], List[str]]:
    """Rebuild the (signs, z band) lookup from the flood fill.

    Returns the table and a list of conflicts: keys seen in two differently
    named components, or entries that disagree with region_table().
    """
    fill = oracle_floodfill(params, grid)
    z_axis, _, _ = grid_axes(grid)
    r = params.double_sonic_z
    bands = np.where(z_axis < -r, -2, np.where(z_axis < 0.0, -1, np.where(z_axis <= r, 1, 2)))

    table: Dict[Tuple[int, int, int, int], RegionLabel] = {}
    conflicts: List[str] = []
    for component, signs in enumerate(fill.sign_classes, start=1):
        cells = np.nonzero(fill.labels == component)
        z_cells = z_axis[cells[0]]
        name = _component_name(params, signs, z_cells)
        for band in np.unique(bands[cells[0]]):
            key = signs + (int(band),)
            previous = table.setdefault(key, name)
            if previous is not name:
                conflicts.append(f"{key}: {previous.value} vs {name.value}")

    frozen = region_table()
    for key, name in table.items():
        if frozen.get(key) is not name:
            conflicts.append(f"{key}: frozen {getattr(frozen.get(key), 'value', None)} vs {name.value}")
    return table, conflicts


def representative_labels(params: ModelParams, grid: GridSpec) -> List[RegionLabel]:
    fill = oracle_floodfill(params, grid)
    return [region_classify(params, cp) for cp in fill.representatives]


def half_resolution(grid: GridSpec) -> GridSpec:
    resolution = tuple(max(8, n // 2) for n in grid.resolution)
    return grid.model_copy(update={"resolution": resolution, "guard_cells": max(1, grid.guard_cells // 2)})

