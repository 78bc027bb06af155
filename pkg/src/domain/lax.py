"""
Lax admissibility on the wave manifold.

Slow and fast parts of the characteristic surface (t < 0 and t > 0) and of
Son', the twelve regions cut out by C, Son and Son', the L3 test at Son'
points, and extraction of admissible arcs from plain Hugoniot curves.
Admissible arcs start at C_s (local) or at Son'_s where L3 holds
(non-local), run in the direction of decreasing speed and stop at Son or
at the clip window.
"""

from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import List, Mapping, Optional, Tuple

import numpy as np
from loguru import logger

from .curves import (
    CurveSample,
    HugoniotCurve,
    curve_through_point,
    eval_curve,
    intersect_characteristic,
    intersect_son,
    intersect_sonprime,
    is_secondary,
    sample_curve,
    speed_along,
    speed_polynomials,
    y_numerator,
)
from .errors import (
    DegenerateDenominator,
    MissingSidePoint,
    NoRealRoots,
    SecondaryBifurcation,
    UnsupportedCurve,
    ZAxisDegenerate,
)
from .model import ChartPoint, ModelParams, speed_at
from .surfaces import son_value, sonprime_value


class CharacteristicSide(Enum):
    SLOW = "slow"
    FAST = "fast"
    FOLD = "fold"


class SonPrimeSide(Enum):
    SLOW_SIDE = "slow"
    FAST_SIDE = "fast"
    ON_BOUNDARY = "boundary"


class RegionLabel(Enum):
    SS_PRIME_ZPLUS_YPLUS = "SS'(z+,Y+)"
    SS_PRIME_ZPLUS_YMINUS = "SS'(z+,Y-)"
    SS_PRIME_ZMINUS_YPLUS = "SS'(z-,Y+)"
    SS_PRIME_ZMINUS_YMINUS = "SS'(z-,Y-)"
    LATERAL_ZPLUS_YPLUS = "Lateral(z+,Y+)"
    LATERAL_ZPLUS_YMINUS = "Lateral(z+,Y-)"
    LATERAL_ZMINUS_YPLUS = "Lateral(z-,Y+)"
    LATERAL_ZMINUS_YMINUS = "Lateral(z-,Y-)"
    ABOVE_BRIDGE = "AboveBridge"
    BELOW_BRIDGE = "BelowBridge"
    ABOVE_TUNNEL = "AboveTunnel"
    BELOW_TUNNEL = "BelowTunnel"
    BOUNDARY = "Boundary"
    UNCLASSIFIED = "Unclassified"


class StartKind(Enum):
    CS = "Cs"
    SON_PRIME_S = "SonPrimeS"


class EndKind(Enum):
    SON = "Son"
    INFINITY = "Infinity"


class ArcClass(Enum):
    LOCAL = "Local"
    NON_LOCAL = "NonLocal"


@dataclass(frozen=True)
class ArcSegment:
    """Admissible arc; z_start -> z_end is the direction of decreasing speed"""

    curve: HugoniotCurve
    z_start: float
    z_end: float
    start_kind: StartKind
    end_kind: EndKind
    classification: ArcClass

    @property
    def z_interval(self) -> Tuple[float, float]:
        return (self.z_start, self.z_end)

    def polyline(self, params: ModelParams, samples: int = 100) -> Tuple[CurveSample, ...]:
        return sample_curve(params, self.curve, np.linspace(self.z_start, self.z_end, samples))

    def to_dict(self, params: Optional[ModelParams] = None, samples: int = 0) -> dict:
        data = {
            "curve": self.curve.to_dict(),
            "z_interval": [self.z_start, self.z_end],
            "start_kind": self.start_kind.value,
            "end_kind": self.end_kind.value,
            "classification": self.classification.value,
        }
        if params is not None and samples > 0:
            data["samples"] = [s.to_dict() for s in self.polyline(params, samples)]
        return data


@dataclass(frozen=True)
class SidePoint:
    """Slow and fast C-intersections of the plain (U) and prime (U') curves through a point"""

    slow: Optional[ChartPoint] = None
    fast: Optional[ChartPoint] = None
    slow_prime: Optional[ChartPoint] = None
    fast_prime: Optional[ChartPoint] = None

    def to_dict(self) -> dict:
        def point(cp: Optional[ChartPoint]):
            return None if cp is None else list(cp.as_tuple())

        return {
            "U_s": point(self.slow),
            "U_f": point(self.fast),
            "U'_s": point(self.slow_prime),
            "U'_f": point(self.fast_prime),
        }


@dataclass(frozen=True)
class LaxCheck:
    """L1-L3 evaluated at one point of a curve"""

    z: float
    speed: float
    speed_derivative: float
    l2: Optional[bool] = None
    l3: Optional[bool] = None
    notes: Tuple[str, ...] = field(default=())


# -- characteristic surface -----------------------------------------------------


def classify_characteristic_point(
    params: ModelParams, z: float, t: float, tolerance: float = 1e-9
) -> CharacteristicSide:
    if t < -tolerance:
        return CharacteristicSide.SLOW
    if t > tolerance:
        return CharacteristicSide.FAST
    return CharacteristicSide.FOLD


def local_side_derivatives(params: ModelParams, z0: float, t0: float) -> Tuple[float, float]:
    """(ds/dz, dY/dz) at z0 along the curve through the C point (z0, t0, 0)"""
    b1, c = params.b1, params.c
    z2 = z0 * z0
    w0 = z2 + 1.0
    q0 = (b1 - 1.0) * z2 + 1.0
    il = c * (((b1 + 1.0) * z0**5 + (b1 + 4.0) * z0**3 + 3.0 * z0) * t0 + q0)
    return il / (w0 * q0), -2.0 * c * w0 * t0 / q0


# -- Son' -----------------------------------------------------------------------


def sonprime_t0(params: ModelParams, z0: float, y0: float) -> float:
    """t of the Son' point over (z0, Y0), z0 != 0"""
    if z0 == 0.0:
        raise ZAxisDegenerate(z0)
    b1, c = params.b1, params.c
    z2 = z0 * z0
    w0 = z2 + 1.0
    numerator = y0 * w0 * ((b1 + 1.0) * z2 - 1.0) - 2.0 * c * ((b1 - 1.0) * z2 + 1.0)
    return numerator / (2.0 * c * z0 * w0 * ((b1 + 1.0) * z2 + 3.0))


def sonprime_point(params: ModelParams, z0: float, y0: float) -> ChartPoint:
    return ChartPoint(z=z0, t=sonprime_t0(params, z0, y0), y=y0)


def sonic_prime_fold_y(params: ModelParams, z0: float) -> float:
    b1 = params.b1
    z2 = z0 * z0
    a = (b1 + 1.0) ** 2 * z2 * z2 + 2.0 * (b1 + 3.0) * z2 + 1.0
    return -2.0 * params.c * ((b1 - 1.0) * z2 + 1.0) / a


def classify_sonprime_point(
    params: ModelParams, z0: float, y0: float, tolerance: float = 1e-9
) -> SonPrimeSide:
    """Slow side iff Y0 lies above the sonic' fold for z0 > 0 (below it for z0 < 0).

    The z = 0 line of Son' separates the two sides and is reported as a
    boundary.
    """
    y_fold = sonic_prime_fold_y(params, z0)
    if abs(z0) < tolerance or abs(y0 - y_fold) < tolerance:
        return SonPrimeSide.ON_BOUNDARY
    if (y0 > y_fold) == (z0 > 0.0):
        return SonPrimeSide.SLOW_SIDE
    return SonPrimeSide.FAST_SIDE


def sonprime_speed(params: ModelParams, z0: float, y0: float) -> float:
    """Shock speed at the Son' point over (z0, Y0)"""
    if z0 == 0.0:
        raise ZAxisDegenerate(z0)
    b1, c = params.b1, params.c
    z2 = z0 * z0
    numerator = ((b1 + 1.0) * z2 - 1.0) ** 2 * y0 + 6.0 * c * (b1 + 1.0) * z2 + 2.0 * c
    return numerator / (2.0 * b1 * z0 * ((b1 + 1.0) * z2 + 3.0))


def sonprime_characteristic_pair(
    params: ModelParams, z0: float, y0: float
) -> Tuple[float, Optional[float]]:
    """C-intersections (z_C1, z_C2) of the plain curve through a Son' point.

    z_C2 carries the same speed as the Son' point; None means it sits at
    z = infinity.
    """
    if z0 == 0.0:
        raise ZAxisDegenerate(z0)
    b1, c = params.b1, params.c
    z2 = z0 * z0
    z_c1 = ((b1 + 1.0) * z2 + 1.0) / (2.0 * z0)
    denominator = (b1 + 1.0) * y0 * z2 + y0 + 2.0 * c
    if denominator == 0.0:
        return z_c1, None
    return z_c1, -2.0 * (y0 - c) * z0 / denominator


def sonprime_speed_derivative(params: ModelParams, z0: float, y0: float) -> float:
    """ds/dz along the plain curve at the Son' point over (z0, Y0)"""
    b1 = params.b1
    z2 = z0 * z0
    return y0 * ((b1 + 1.0) * z2 - 1.0) / ((b1 - 1.0) * z2 + 1.0)


# -- regions ----------------------------------------------------------------------


def _band(params: ModelParams, z: float) -> int:
    r = params.double_sonic_z
    if z < -r:
        return -2
    if z < 0.0:
        return -1
    if z <= r:
        return 1
    return 2


def _build_region_table() -> Mapping[Tuple[int, int, int, int], RegionLabel]:
    # Kept in sync with oracle.regenerate_region_table, which rebuilds these
    # keys from the flood fill; `verify --check region-table` reports drift.
    table = {}
    for band in (-2, -1, 1, 2):
        outer = abs(band) == 2
        z_plus = band > 0
        # Y > 0
        table[(1, 1, 1, band)] = (
            RegionLabel.LATERAL_ZPLUS_YPLUS if z_plus else RegionLabel.LATERAL_ZMINUS_YPLUS
        )
        table[(1, -1, -1, band)] = RegionLabel.BELOW_BRIDGE
        if outer:
            table[(1, -1, 1, band)] = (
                RegionLabel.SS_PRIME_ZPLUS_YPLUS if z_plus else RegionLabel.SS_PRIME_ZMINUS_YPLUS
            )
        else:
            table[(1, 1, -1, band)] = RegionLabel.ABOVE_BRIDGE
        # Y < 0
        table[(-1, 1, 1, band)] = (
            RegionLabel.LATERAL_ZPLUS_YMINUS if z_plus else RegionLabel.LATERAL_ZMINUS_YMINUS
        )
        table[(-1, -1, -1, band)] = RegionLabel.ABOVE_TUNNEL
        if outer:
            table[(-1, 1, -1, band)] = (
                RegionLabel.SS_PRIME_ZPLUS_YMINUS if z_plus else RegionLabel.SS_PRIME_ZMINUS_YMINUS
            )
        else:
            table[(-1, -1, 1, band)] = RegionLabel.BELOW_TUNNEL
    return MappingProxyType(table)


_REGION_TABLE = _build_region_table()


def region_table() -> Mapping[Tuple[int, int, int, int], RegionLabel]:
    """Frozen lookup (sgn Y, sgn son, sgn son', z band) -> RegionLabel.

    Bands: -2 for z < -r, -1 for -r <= z < 0, 1 for 0 <= z <= r and 2 for
    z > r, where r = 1/sqrt(b1+1).
    """
    return _REGION_TABLE


def sign_vector(
    params: ModelParams, cp: ChartPoint, tolerance: float = 1e-9
) -> Optional[Tuple[int, int, int, int]]:
    """Sign vector of a point, or None when it lies within tolerance of a surface"""
    values = (
        cp.y,
        son_value(params, cp.z, cp.t, cp.y),
        sonprime_value(params, cp.z, cp.t, cp.y),
    )
    if any(abs(v) < tolerance for v in values):
        return None
    signs = tuple(1 if v > 0.0 else -1 for v in values)
    return signs + (_band(params, cp.z),)


def region_classify(params: ModelParams, cp: ChartPoint, tolerance: float = 1e-9) -> RegionLabel:
    key = sign_vector(params, cp, tolerance)
    if key is None:
        return RegionLabel.BOUNDARY
    return _REGION_TABLE.get(key, RegionLabel.UNCLASSIFIED)


# -- side points ------------------------------------------------------------------


def _characteristic_sides(
    params: ModelParams, curve: HugoniotCurve, tolerance: float
) -> Tuple[ChartPoint, ChartPoint]:
    """(slow, fast) C-intersections of a curve; MissingSidePoint unless both are simple"""
    if is_secondary(params, curve, tolerance):
        raise SecondaryBifurcation(curve.l, params.c)
    roots = intersect_characteristic(params, curve)
    if len(roots) != 2 or roots.count_with_multiplicity != 2:
        raise MissingSidePoint(
            "curve does not cross the characteristic surface in two simple points",
            {"curve": curve.to_dict(), "roots": list(roots.roots)},
        )
    slow = fast = None
    for z in roots:
        cp = eval_curve(params, curve, z)
        side = classify_characteristic_point(params, z, cp.t, tolerance)
        point = ChartPoint(z=z, t=cp.t, y=0.0)
        if side is CharacteristicSide.SLOW:
            slow = point
        elif side is CharacteristicSide.FAST:
            fast = point
    if slow is None or fast is None:
        raise MissingSidePoint(
            "curve has no distinct slow and fast characteristic points",
            {"curve": curve.to_dict(), "roots": list(roots.roots)},
        )
    return slow, fast


def side_points(
    params: ModelParams, cp: ChartPoint, strict: bool = True, tolerance: float = 1e-9
) -> SidePoint:
    """U_s, U_f from the Hugoniot curve and U'_s, U'_f from the Hugoniot' curve through cp.

    With strict=False a missing pair is left as None instead of raising.
    """
    found = {}
    for prime in (False, True):
        curve = curve_through_point(params, cp, prime=prime)
        try:
            found[prime] = _characteristic_sides(params, curve, tolerance)
        except (MissingSidePoint, SecondaryBifurcation):
            if strict:
                raise
            logger.debug("no side points on {} curve through {}", "prime" if prime else "plain", cp)
            found[prime] = (None, None)
    return SidePoint(
        slow=found[False][0],
        fast=found[False][1],
        slow_prime=found[True][0],
        fast_prime=found[True][1],
    )


# -- L3 -------------------------------------------------------------------------


def l3_closed_form(params: ModelParams, z0: float) -> bool:
    return (params.b1 + 1.0) * z0 * z0 < 1.0


def l3_numeric(params: ModelParams, z0: float, y0: float, tolerance: float = 1e-9) -> bool:
    """s(U'_s) < s_son' < s(U'_f) on the Hugoniot' curve through the Son' point"""
    cp = sonprime_point(params, z0, y0)
    prime_curve = curve_through_point(params, cp, prime=True)
    slow, fast = _characteristic_sides(params, prime_curve, tolerance)
    s = sonprime_speed(params, z0, y0)
    return speed_at(params, slow) < s < speed_at(params, fast)


def interval_condition(
    a: float, b: float, c_: float, d: float, f: float, g: float, h: float, s: float
) -> bool:
    """True iff s lies strictly between (a z + b)/(c_ z + d) at the two roots of f z^2 + g z + h"""
    if f == 0.0 or g * g - 4.0 * f * h <= 0.0:
        raise NoRealRoots(
            "quadratic has no pair of distinct real roots", {"f": f, "g": g, "h": h}
        )
    denominator = c_ * c_ * h - d * c_ * g + d * d * f
    if denominator == 0.0:
        raise DegenerateDenominator(
            "c z + d vanishes at a root", {"c": c_, "d": d, "f": f, "g": g, "h": h}
        )
    numerator = (
        denominator * s * s
        + (a * g * d + b * c_ * g - 2.0 * (a * c_ * h + b * d * f)) * s
        + a * a * h
        - a * b * g
        + b * b * f
    )
    return numerator / denominator < 0.0


def _linear_coefficients(poly) -> Tuple[float, float]:
    coef = np.zeros(2)
    coef[: min(2, poly.coef.size)] = poly.coef[:2]
    return float(coef[1]), float(coef[0])


def l3_interval(params: ModelParams, z0: float, y0: float) -> bool:
    """L3 through the remainders of the speed modulo the C-polynomial of the Hugoniot' curve"""
    cp = sonprime_point(params, z0, y0)
    prime_curve = curve_through_point(params, cp, prime=True)
    ny = y_numerator(params, prime_curve)
    numerator, denominator = speed_polynomials(params, prime_curve)
    _, r1 = divmod(numerator, ny)
    _, r2 = divmod(denominator, ny)
    a, b = _linear_coefficients(r1)
    c_, d = _linear_coefficients(r2)
    coef = np.zeros(3)
    coef[: ny.coef.size] = ny.coef
    h, g, f = (float(x) for x in coef)
    return interval_condition(a, b, c_, d, f, g, h, sonprime_speed(params, z0, y0))


# -- arcs -------------------------------------------------------------------------


def lax_check(
    params: ModelParams, curve: HugoniotCurve, z: float, tolerance: float = 1e-9
) -> LaxCheck:
    """Evaluate the Lax conditions at the point of the curve over z.

    L2 compares s with the slow side point of the plain curve, L3 brackets s
    between the side points of the Hugoniot' curve. Either is None when the
    side points do not exist.
    """
    cp = eval_curve(params, curve, z)
    derivative = _speed_slope(params, curve, z)
    s = speed_at(params, cp)
    sides = side_points(params, cp, strict=False, tolerance=tolerance)
    notes = []
    l2 = None
    if sides.slow is not None:
        l2 = s < speed_at(params, sides.slow) + tolerance
    else:
        notes.append("no slow side point")
    l3 = None
    if sides.slow_prime is not None and sides.fast_prime is not None:
        l3 = speed_at(params, sides.slow_prime) < s < speed_at(params, sides.fast_prime)
    else:
        notes.append("no prime side points")
    return LaxCheck(z=z, speed=s, speed_derivative=derivative, l2=l2, l3=l3, notes=tuple(notes))


def _speed_slope(params: ModelParams, curve: HugoniotCurve, z: float) -> float:
    numerator, denominator = speed_polynomials(params, curve)
    return float(
        (numerator.deriv()(z) * denominator(z) - numerator(z) * denominator.deriv()(z))
        / denominator(z) ** 2
    )


def extract_arcs(
    params: ModelParams,
    curve: HugoniotCurve,
    z_max: float = 50.0,
    tolerance: float = 1e-9,
    tangency_trim: float = 1e-6,
) -> List[ArcSegment]:
    """Admissible arcs of a plain Hugoniot curve clipped to |z| <= z_max"""
    if curve.prime:
        raise UnsupportedCurve("arc extraction is defined for plain Hugoniot curves")
    if is_secondary(params, curve, tolerance):
        raise SecondaryBifurcation(curve.l, params.c)

    son_roots = intersect_son(params, curve, tolerance).in_window(-z_max, z_max)
    starts: List[Tuple[float, StartKind, ArcClass]] = []

    characteristic = intersect_characteristic(params, curve)
    for z, multiplicity in zip(characteristic.roots, characteristic.multiplicities):
        if abs(z) > z_max:
            continue
        if multiplicity > 1:
            logger.debug("skipping tangency with C at z={}", z)
            continue
        t = eval_curve(params, curve, z).t
        if classify_characteristic_point(params, z, t, tolerance) is CharacteristicSide.SLOW:
            starts.append((z, StartKind.CS, ArcClass.LOCAL))

    sonprime_roots = intersect_sonprime(params, curve, tolerance).in_window(-z_max, z_max)
    for z, multiplicity in zip(sonprime_roots.roots, sonprime_roots.multiplicities):
        if multiplicity > 1 or abs(z) < tangency_trim:
            continue
        y = eval_curve(params, curve, z).y
        if classify_sonprime_point(params, z, y, tolerance) is not SonPrimeSide.SLOW_SIDE:
            continue
        if not l3_closed_form(params, z):
            continue
        starts.append((z, StartKind.SON_PRIME_S, ArcClass.NON_LOCAL))

    arcs: List[ArcSegment] = []
    for z_start, start_kind, classification in starts:
        slope = _speed_slope(params, curve, z_start)
        if abs(slope) < tolerance:
            logger.debug("skipping start z={} at a speed extremum", z_start)
            continue
        direction = -1.0 if slope > 0.0 else 1.0
        ahead = [
            z for z in son_roots.roots if (z - z_start) * direction > tangency_trim
        ]
        if ahead:
            z_end = min(ahead, key=lambda z: abs(z - z_start))
            end_kind = EndKind.SON
        else:
            z_end = direction * z_max
            end_kind = EndKind.INFINITY
        arcs.append(
            ArcSegment(
                curve=curve,
                z_start=z_start,
                z_end=z_end,
                start_kind=start_kind,
                end_kind=end_kind,
                classification=classification,
            )
        )
    logger.debug("curve k={} l={}: {} admissible arc(s)", curve.k, curve.l, len(arcs))
    return arcs


def arc_is_monotone(params: ModelParams, arc: ArcSegment, samples: int = 100) -> bool:
    """Speed strictly decreasing on interior samples of the arc"""
    z = np.linspace(arc.z_start, arc.z_end, samples + 2)[1:-1]
    s = np.array([speed_along(params, arc.curve, float(zi)) for zi in z])
    steps = np.diff(s)
    # rounding slack only on the end steps, where an arc meeting a Son root flattens out
    slack = 1e-12 * (1.0 + np.abs(s[[0, -2]]))
    return bool(np.all(steps[1:-1] < 0.0) and np.all(steps[[0, -1]] < slack))
