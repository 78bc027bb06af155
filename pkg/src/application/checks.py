"""
Registry of verification checks.

Every closed form of the domain layer is listed in CLOSED_FORMS and must be
covered by at least one registered check; coverage_gaps() reports the ones
that are not.
"""

from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np
from loguru import logger

from ..domain.configuration import Config
from ..domain.curves import (
    HugoniotCurve,
    characteristic_pair,
    critical_speed_polynomial,
    curve_from_kl,
    curve_through_point,
    eval_curve,
    eval_through_point,
    intersect_characteristic,
    intersect_son,
    intersect_sonprime,
    is_secondary,
    kl_from_point,
    speed_along,
    speed_along_closed_form,
    speed_gap,
    speed_polynomials,
    through_point_coefficients,
)
from ..domain.errors import DegenerateInputError, NoRealRoots, DegenerateDenominator
from ..domain.lax import (
    CharacteristicSide,
    SonPrimeSide,
    arc_is_monotone,
    classify_characteristic_point,
    classify_sonprime_point,
    extract_arcs,
    interval_condition,
    l3_closed_form,
    l3_interval,
    l3_numeric,
    lax_check,
    local_side_derivatives,
    region_classify,
    sonprime_characteristic_pair,
    sonprime_speed,
    sonprime_speed_derivative,
    sonprime_t0,
)
from ..domain.model import (
    ChartPoint,
    ModelParams,
    chart_from_blowup,
    chart_to_blowup,
    manifold_residual,
    speed_at,
)
from ..domain.polynomials import real_roots
from ..domain.surfaces import (
    CurveOnSurface,
    SurfaceId,
    curve_on_surface_point,
    double_sonic_points,
    fold_curve,
    inflection_locus_value,
    sigma_contains,
    son_sonprime_lines_z0,
    son_y,
    sonic_prime_fold,
    sonprime_y,
    surface_mesh,
    surface_value,
    tf_coefficients,
    tf_sonprime_discriminant,
)
from .oracle import (
    OracleReport,
    ResidualTracker,
    compare_roots,
    half_resolution,
    oracle_fd_speed,
    oracle_floodfill,
    oracle_intersections,
    oracle_rh_states,
    regenerate_region_table,
    representative_labels,
    richardson_derivative,
    surface_along_curve,
)

CLOSED_FORMS: Tuple[str, ...] = (
    "speed_at",
    "chart_to_blowup",
    "chart_from_blowup",
    "chart_to_states",
    "manifold_residual",
    "rh_residual",
    "flux_eval",
    "curve_from_kl",
    "eval_curve",
    "kl_from_point",
    "curve_through_point",
    "through_point_coefficients",
    "eval_through_point",
    "speed_along",
    "speed_along_closed_form",
    "speed_polynomials",
    "characteristic_pair",
    "speed_gap",
    "intersect_characteristic",
    "intersect_son",
    "intersect_sonprime",
    "is_secondary",
    "surface_value",
    "fold_curve",
    "inflection_locus_value",
    "double_sonic_points",
    "sonic_prime_fold",
    "son_sonprime_lines_z0",
    "sigma_contains",
    "sonprime_y",
    "son_y",
    "tf_coefficients",
    "tf_sonprime_discriminant",
    "surface_mesh",
    "classify_characteristic_point",
    "sonprime_t0",
    "classify_sonprime_point",
    "region_classify",
    "region_table",
    "side_points",
    "l3_closed_form",
    "l3_numeric",
    "l3_interval",
    "interval_condition",
    "extract_arcs",
    "local_side_derivatives",
    "sonprime_speed",
    "sonprime_characteristic_pair",
    "sonprime_speed_derivative",
    "lax_check",
)


@dataclass
class CheckContext:
    """Inputs shared by all checks of one verification run"""

    config: Config
    rng: np.random.Generator
    samples: int = 200

    @property
    def params(self) -> ModelParams:
        return self.config.params

    @classmethod
    def from_config(cls, config: Config, samples: int = 200) -> "CheckContext":
        return cls(config=config, rng=np.random.default_rng(config.seed), samples=samples)


@dataclass(frozen=True)
class OracleCheck:
    """Registry entry for a verification check"""

    name: str
    covers: Tuple[str, ...]
    description: str
    run: Callable[[CheckContext], OracleReport]


class OracleRegistry:
    """Central registry of verification checks"""

    REGISTERED_CHECKS: Dict[str, OracleCheck] = {}

    @classmethod
    def register(
        cls, name: str, covers: Iterable[str], description: str
    ) -> Callable[[Callable[[CheckContext], OracleReport]], Callable[[CheckContext], OracleReport]]:
        """Decorator adding a check function to the registry"""

        def decorator(func: Callable[[CheckContext], OracleReport]):
            cls.REGISTERED_CHECKS[name] = OracleCheck(
                name=name,
                covers=tuple(covers),
                description=description,
                run=func,
            )
            return func

        return decorator

    @classmethod
    def get_all_names(cls) -> List[str]:
        """Get all registered check names in registration order"""
        return list(cls.REGISTERED_CHECKS.keys())

    @classmethod
    def get(cls, name: str) -> Optional[OracleCheck]:
        return cls.REGISTERED_CHECKS.get(name)

    @classmethod
    def coverage_gaps(cls) -> List[str]:
        """Closed forms that no registered check covers"""
        covered = {form for check in cls.REGISTERED_CHECKS.values() for form in check.covers}
        return [form for form in CLOSED_FORMS if form not in covered]

    @classmethod
    def run(cls, names: Iterable[str], context: CheckContext) -> List[OracleReport]:
        reports = []
        for name in names:
            check = cls.REGISTERED_CHECKS[name]
            logger.info("running check {}", name)
            report = check.run(context)
            logger.bind(check=name).debug(
                "{}: max residual {} over {} samples", name, report.max_residual, report.samples
            )
            reports.append(report)
        return reports


# -- helpers ------------------------------------------------------------------------


def _random_curve(rng: np.random.Generator, scale: float = 5.0, prime: bool = False) -> HugoniotCurve:
    k, l = rng.uniform(-scale, scale, size=2)
    return HugoniotCurve(k=float(k), l=float(l), prime=prime)


def _random_point(rng: np.random.Generator, scale: float = 3.0) -> ChartPoint:
    z, t, y = rng.uniform(-scale, scale, size=3)
    return ChartPoint(z=float(z), t=float(t), y=float(y))


def _relative(a: float, b: float) -> float:
    return abs(a - b) / (1.0 + abs(b))


def _surface_scale(params: ModelParams, cp: ChartPoint) -> float:
    w = cp.z * cp.z + 1.0
    return 1.0 + (params.b1 + params.c) ** 2 * w**3 * (1.0 + abs(cp.t)) ** 2 * (1.0 + abs(cp.y)) ** 2


# -- core model ---------------------------------------------------------------------


@OracleRegistry.register(
    "manifold-closure",
    covers=("eval_curve", "curve_from_kl", "chart_to_blowup", "manifold_residual"),
    description="points of random curves satisfy G = 0",
)
def check_manifold_closure(ctx: CheckContext) -> OracleReport:
    params = ctx.params
    tracker = ResidualTracker()
    for _ in range(ctx.samples):
        k, l, z = ctx.rng.uniform(-5.0, 5.0, size=3)
        cp = eval_curve(params, curve_from_kl(params, k, l), float(z))
        bp = chart_to_blowup(params, cp)
        scale = 1.0 + abs(z * z - 1.0) * abs(bp.v1) + abs(z) * abs(bp.u_tilde) + params.c
        tracker.add(abs(manifold_residual(params, bp)) / scale, k=k, l=l, z=z)
    return tracker.report("manifold-closure", 1e-12)


@OracleRegistry.register(
    "chart-roundtrip",
    covers=("chart_from_blowup",),
    description="chart_from_blowup inverts chart_to_blowup",
)
def check_chart_roundtrip(ctx: CheckContext) -> OracleReport:
    params = ctx.params
    tracker = ResidualTracker()
    for _ in range(ctx.samples):
        cp = _random_point(ctx.rng)
        back = chart_from_blowup(params, chart_to_blowup(params, cp), ctx.config.tolerances.membership)
        tracker.add(
            max(_relative(back.z, cp.z), _relative(back.t, cp.t), _relative(back.y, cp.y)),
            z=cp.z,
            t=cp.t,
            Y=cp.y,
        )
    return tracker.report("chart-roundtrip", 1e-10)


@OracleRegistry.register(
    "rh-blowdown",
    covers=("chart_to_states", "rh_residual", "flux_eval", "speed_at"),
    description="blown-down states satisfy the Rankine-Hugoniot condition",
)
def check_rh_blowdown(ctx: CheckContext) -> OracleReport:
    points = []
    while len(points) < ctx.samples:
        cp = _random_point(ctx.rng)
        if abs(cp.z * cp.y) > 1e-6:
            points.append(cp)
    report = oracle_rh_states(ctx.params, points)
    report.name = "rh-blowdown"
    return report


# -- curves ------------------------------------------------------------------------------


@OracleRegistry.register(
    "through-point",
    covers=(
        "kl_from_point",
        "curve_through_point",
        "through_point_coefficients",
        "eval_through_point",
    ),
    description="curves through a point reproduce it; expanded and composed forms agree",
)
def check_through_point(ctx: CheckContext) -> OracleReport:
    params = ctx.params
    tracker = ResidualTracker()
    for _ in range(ctx.samples):
        cp = _random_point(ctx.rng)
        z = float(ctx.rng.uniform(-5.0, 5.0))
        for prime in (False, True):
            curve = curve_through_point(params, cp, prime=prime)
            at_point = eval_curve(params, curve, cp.z)
            k, l = kl_from_point(params, cp, prime=prime)
            coeffs = through_point_coefficients(params, cp, prime=prime)
            expanded = eval_through_point(params, coeffs, cp.z, z, prime=prime)
            composed = eval_curve(params, curve_from_kl(params, k, l, prime), z)
            tracker.add(
                max(
                    _relative(at_point.t, cp.t),
                    _relative(at_point.y, cp.y),
                    _relative(expanded.t, composed.t),
                    _relative(expanded.y, composed.y),
                ),
                z=cp.z,
                t=cp.t,
                Y=cp.y,
                prime=prime,
            )
    return tracker.report("through-point", 1e-9)


@OracleRegistry.register(
    "speed-closed-form",
    covers=("speed_along", "speed_along_closed_form", "speed_polynomials"),
    description="composed speed agrees with the expanded and polynomial forms",
)
def check_speed_closed_form(ctx: CheckContext) -> OracleReport:
    params = ctx.params
    tracker = ResidualTracker()
    for index in range(ctx.samples):
        cp = _random_point(ctx.rng)
        if index % 2:
            cp = ChartPoint(z=cp.z, t=cp.t, y=0.0)
        curve = curve_through_point(params, cp)
        numerator, denominator = speed_polynomials(params, curve)
        z = float(ctx.rng.uniform(-5.0, 5.0))
        s = speed_along(params, curve, z)
        tracker.add(
            max(
                _relative(speed_along_closed_form(params, cp, z), s),
                _relative(float(numerator(z) / denominator(z)), s),
            ),
            z0=cp.z,
            t0=cp.t,
            Y0=cp.y,
            z=z,
        )
    return tracker.report("speed-closed-form", 1e-10)


@OracleRegistry.register(
    "speed-gap",
    covers=(
        "characteristic_pair",
        "speed_gap",
        "intersect_characteristic",
        "classify_characteristic_point",
    ),
    description="speed gap between C-intersections and the slow/fast ordering",
)
def check_speed_gap(ctx: CheckContext) -> OracleReport:
    params = ctx.params
    tracker = ResidualTracker()
    for index in range(ctx.samples):
        z0, t0 = (float(x) for x in ctx.rng.uniform(-3.0, 3.0, size=2))
        if index % 10 == 0:
            t0 = 0.0
        curve = curve_through_point(params, ChartPoint(z=z0, t=t0, y=0.0))
        roots = intersect_characteristic(params, curve)
        if t0 == 0.0:
            tangent = len(roots) == 1 and roots.multiplicities[0] == 2
            tracker.add(0.0 if tangent else float("inf"), z0=z0, t0=t0)
            continue
        _, z1 = characteristic_pair(params, z0, t0)
        if z1 is None or is_secondary(params, curve, 1e-9) or len(roots) != 2:
            tracker.skip()
            continue
        other = roots.roots[1] if abs(roots.roots[0] - z0) < abs(roots.roots[1] - z0) else roots.roots[0]
        gap = speed_along(params, curve, z0) - speed_along(params, curve, z1)
        residual = max(_relative(other, z1), _relative(gap, speed_gap(params, z0, t0)))
        t1 = eval_curve(params, curve, z1).t
        sides = {
            classify_characteristic_point(params, z0, t0): speed_along(params, curve, z0),
            classify_characteristic_point(params, z1, t1): speed_along(params, curve, z1),
        }
        if set(sides) != {CharacteristicSide.SLOW, CharacteristicSide.FAST}:
            residual = float("inf")
        elif not sides[CharacteristicSide.FAST] > sides[CharacteristicSide.SLOW]:
            residual = float("inf")
        tracker.add(residual, z0=z0, t0=t0)
    return tracker.report("speed-gap", 1e-9)


@OracleRegistry.register(
    "son-critical",
    covers=("intersect_son",),
    description="Son roots are critical points of the speed along the curve",
)
def check_son_critical(ctx: CheckContext) -> OracleReport:
    params = ctx.params
    tracker = ResidualTracker()
    for _ in range(ctx.samples):
        curve = _random_curve(ctx.rng)
        if is_secondary(params, curve):
            tracker.skip()
            continue
        son_roots = intersect_son(params, curve).in_window(-10.0, 10.0)
        critical = real_roots(critical_speed_polynomial(params, curve)).in_window(-10.0, 10.0)
        if len(son_roots.simple()) != len(critical.simple()):
            tracker.add(float("inf"), k=curve.k, l=curve.l)
            continue
        for z in son_roots.simple():
            slope = oracle_fd_speed(params, curve, z)
            scale = 1.0 + abs(speed_along(params, curve, z))
            tracker.add(abs(slope) / scale, k=curve.k, l=curve.l, z=z)
    return tracker.report("son-critical", 1e-6)


@OracleRegistry.register(
    "sonprime-counts",
    covers=("intersect_sonprime",),
    description="Son' meets every curve in 0, 2 or 4 points",
)
def check_sonprime_counts(ctx: CheckContext) -> OracleReport:
    params = ctx.params
    tracker = ResidualTracker()
    for _ in range(ctx.samples):
        curve = _random_curve(ctx.rng)
        count = intersect_sonprime(params, curve).count_with_multiplicity
        tracker.add(0.0 if count in (0, 2, 4) else float("inf"), k=curve.k, l=curve.l, count=count)
    return tracker.report("sonprime-counts", 0.0)


@OracleRegistry.register(
    "intersections",
    covers=("intersect_characteristic", "intersect_sonprime"),
    description="closed-form intersections match dense-sampling bracketing",
)
def check_intersections(ctx: CheckContext) -> OracleReport:
    params = ctx.params
    window = ctx.config.grid.model_copy(update={"z_bounds": (-10.0, 10.0)})
    samples = 4001
    spacing = 20.0 / (samples - 1)
    tracker = ResidualTracker()
    flagged = 0
    for _ in range(ctx.samples):
        curve = _random_curve(ctx.rng)
        for surface, closed in (
            (SurfaceId.CHARACTERISTIC, intersect_characteristic(params, curve)),
            (SurfaceId.SON_PRIME, intersect_sonprime(params, curve)),
        ):
            closed = closed.in_window(-10.0 + 2 * spacing, 10.0 - 2 * spacing)
            sampled = oracle_intersections(params, curve, surface, window, samples=samples)
            sampled = sampled.in_window(-10.0 + 2 * spacing, 10.0 - 2 * spacing)
            distance, near_misses = compare_roots(closed, sampled, spacing)
            flagged += near_misses
            tracker.add(distance, k=curve.k, l=curve.l, surface=surface.value)
    return tracker.report("intersections", 1e-8, notes=[f"{flagged} tangency near-miss(es) flagged"])


@OracleRegistry.register(
    "sigma",
    covers=("sigma_contains", "is_secondary", "surface_value"),
    description="curves with l = -2c lie on Sigma",
)
def check_sigma(ctx: CheckContext) -> OracleReport:
    params = ctx.params
    tracker = ResidualTracker()
    z = np.linspace(-10.0, 10.0, 1001)
    for _ in range(min(ctx.samples, 100)):
        k = float(ctx.rng.uniform(-5.0, 5.0))
        curve = curve_from_kl(params, k, -2.0 * params.c)
        if not sigma_contains(params, curve):
            tracker.add(float("inf"), k=k)
            continue
        values = surface_along_curve(params, curve, SurfaceId.SIGMA, z)
        tracker.add(float(np.max(np.abs(values))), k=k)
        z0 = float(ctx.rng.uniform(0.1, 3.0))
        fold = curve_through_point(params, fold_curve(z0))
        if sigma_contains(params, fold):
            tracker.add(float("inf"), z0=z0)
    return tracker.report("sigma", 1e-10)


# -- surfaces ------------------------------------------------------------------------


@OracleRegistry.register(
    "tf-tangency",
    covers=("tf_coefficients", "tf_sonprime_discriminant", "sonic_prime_fold", "fold_curve"),
    description="Tf touches C along t = 0 and Son' along the sonic' fold",
)
def check_tf_tangency(ctx: CheckContext) -> OracleReport:
    params = ctx.params
    tracker = ResidualTracker()
    r = params.double_sonic_z
    for z in np.linspace(-3.0, 3.0, 200):
        z = float(z)
        if abs(abs(z) - r) < 1e-3:
            tracker.skip()
            continue
        fold = sonic_prime_fold(params, z)
        tf1, tf2, tf3 = tf_coefficients(params, fold.z, fold.t)
        scale = 1.0 + tf1 * fold.y**2 + abs(tf2 * fold.y) + tf3
        tracker.add(
            max(
                abs(tf_sonprime_discriminant(params, z)),
                abs(surface_value(params, SurfaceId.TF, fold)) / scale,
                abs(surface_value(params, SurfaceId.SON_PRIME, fold)) / _surface_scale(params, fold),
                0.0 if fold.y < 0.0 else float("inf"),
                abs(surface_value(params, SurfaceId.TF, fold_curve(z))),
            ),
            z=z,
        )
    return tracker.report("tf-tangency", 1e-9)


@OracleRegistry.register(
    "distinguished-curves",
    covers=(
        "double_sonic_points",
        "son_sonprime_lines_z0",
        "inflection_locus_value",
        "son_y",
        "sonprime_y",
    ),
    description="double sonic lines, z = 0 lines and the inflection locus lie on their surfaces",
)
def check_distinguished_curves(ctx: CheckContext) -> OracleReport:
    params = ctx.params
    tracker = ResidualTracker()
    for y in np.linspace(-5.0, 5.0, 41):
        for which in (CurveOnSurface.DOUBLE_SONIC_PLUS, CurveOnSurface.DOUBLE_SONIC_MINUS):
            cp = curve_on_surface_point(params, which, float(y))
            scale = _surface_scale(params, cp)
            tracker.add(
                max(
                    abs(surface_value(params, SurfaceId.SON, cp)),
                    abs(surface_value(params, SurfaceId.SON_PRIME, cp)),
                )
                / scale,
                curve=which.label,
                Y=float(y),
            )
    for t in np.linspace(-3.0, 3.0, 41):
        son_cp = curve_on_surface_point(params, CurveOnSurface.SON_LINE_Z0, float(t))
        sonprime_cp = curve_on_surface_point(params, CurveOnSurface.SON_PRIME_LINE_Z0, float(t))
        tracker.add(
            max(
                abs(surface_value(params, SurfaceId.SON, son_cp)),
                abs(surface_value(params, SurfaceId.SON_PRIME, sonprime_cp)),
                abs(surface_value(params, SurfaceId.SIGMA, sonprime_cp)),
            ),
            t=float(t),
        )
    son_level, sonprime_level = son_sonprime_lines_z0(params)
    (z_plus, _), (z_minus, _) = double_sonic_points(params)
    tracker.add(abs(son_level + sonprime_level) + abs(z_plus + z_minus))
    for _ in range(ctx.samples):
        z, t = (float(x) for x in ctx.rng.uniform(-3.0, 3.0, size=2))
        if abs(z) < 1e-3:
            tracker.skip()
            continue
        il = curve_on_surface_point(params, CurveOnSurface.INFLECTION_LOCUS, z)
        scale = _surface_scale(params, il)
        tracker.add(
            max(
                abs(inflection_locus_value(params, il.z, il.t)) / scale,
                abs(surface_value(params, SurfaceId.SON, il)) / scale,
                abs(surface_value(params, SurfaceId.SON_PRIME, il)) / scale,
                _relative(inflection_locus_value(params, z, t), -surface_value(params, SurfaceId.SON, ChartPoint(z, t, 0.0)) / 2.0),
            ),
            z=z,
            t=t,
        )
        if abs(abs(z) - params.double_sonic_z) < 1e-3:
            continue
        on_son = ChartPoint(z=z, t=t, y=son_y(params, z, t))
        on_sonprime = ChartPoint(z=z, t=t, y=sonprime_y(params, z, t))
        tracker.add(
            max(
                abs(surface_value(params, SurfaceId.SON, on_son)) / _surface_scale(params, on_son),
                abs(surface_value(params, SurfaceId.SON_PRIME, on_sonprime))
                / _surface_scale(params, on_sonprime),
            ),
            z=z,
            t=t,
        )
    return tracker.report("distinguished-curves", 1e-10)


@OracleRegistry.register(
    "surface-mesh",
    covers=("surface_mesh",),
    description="mesh points lie on their surface",
)
def check_surface_mesh(ctx: CheckContext) -> OracleReport:
    params = ctx.params
    grid = ctx.config.grid.model_copy(update={"resolution": (40, 40, 40)})
    tracker = ResidualTracker()
    for surface in SurfaceId:
        points = surface_mesh(params, surface, grid, ctx.config.tolerances.guard_band)
        for z, t, y in points[:: max(1, len(points) // 200)]:
            cp = ChartPoint(z=float(z), t=float(t), y=float(y))
            tracker.add(
                abs(surface_value(params, surface, cp)) / _surface_scale(params, cp),
                surface=surface.value,
                z=cp.z,
                t=cp.t,
                Y=cp.y,
            )
    return tracker.report("surface-mesh", 1e-9)


# -- lax ---------------------------------------------------------------------------------


def _sonprime_sample(rng: np.random.Generator, params: ModelParams) -> Tuple[float, float]:
    while True:
        z0 = float(rng.uniform(-2.0, 2.0))
        y0 = float(rng.uniform(-5.0, 5.0))
        if abs(z0) > 1e-3 and abs(y0 - params.c) > 1e-3:
            return z0, y0


@OracleRegistry.register(
    "sonprime-speed",
    covers=(
        "sonprime_t0",
        "sonprime_speed",
        "sonprime_characteristic_pair",
        "classify_sonprime_point",
        "sonprime_speed_derivative",
    ),
    description="the speed at a Son' point is carried by the slow or fast C-intersection",
)
def check_sonprime_speed(ctx: CheckContext) -> OracleReport:
    params = ctx.params
    tracker = ResidualTracker()
    for _ in range(ctx.samples):
        z0, y0 = _sonprime_sample(ctx.rng, params)
        t0 = sonprime_t0(params, z0, y0)
        cp = ChartPoint(z=z0, t=t0, y=y0)
        curve = curve_through_point(params, cp)
        s = sonprime_speed(params, z0, y0)
        z_c1, z_c2 = sonprime_characteristic_pair(params, z0, y0)
        numerator, denominator = speed_polynomials(params, curve)
        exact_slope = float(critical_speed_polynomial(params, curve)(z0) / denominator(z0) ** 2)
        roots = intersect_characteristic(params, curve)
        side = classify_sonprime_point(params, z0, y0)
        if z_c2 is None or len(roots) != 2 or side is SonPrimeSide.ON_BOUNDARY:
            tracker.skip()
            continue
        t_c2 = eval_curve(params, curve, z_c2).t
        tag_matches = (t_c2 < 0.0) == (side is SonPrimeSide.SLOW_SIDE)
        nearest = [min(roots.roots, key=lambda r: abs(r - target)) for target in (z_c1, z_c2)]
        residual = max(
            abs(surface_value(params, SurfaceId.SON_PRIME, cp)) / _surface_scale(params, cp),
            _relative(s, speed_at(params, cp)),
            _relative(speed_along(params, curve, z_c2), s),
            _relative(nearest[0], z_c1),
            _relative(nearest[1], z_c2),
            _relative(sonprime_speed_derivative(params, z0, y0), exact_slope),
        )
        tracker.add(residual if tag_matches else float("inf"), z0=z0, Y0=y0)
    return tracker.report("sonprime-speed", 1e-9)


@OracleRegistry.register(
    "l3-equivalence",
    covers=("l3_closed_form", "l3_numeric", "l3_interval"),
    description="numeric L3 agrees with the closed-form band and the interval test",
)
def check_l3_equivalence(ctx: CheckContext) -> OracleReport:
    base = ctx.params
    tracker = ResidualTracker()
    for b1 in (base.b1, 3.0, 1.5):
        params = ModelParams.canonical(b1=b1, c=base.c)
        for _ in range(ctx.samples):
            z0, y0 = _sonprime_sample(ctx.rng, params)
            if abs((params.b1 + 1.0) * z0 * z0 - 1.0) <= 1e-3:
                tracker.skip()
                continue
            try:
                numeric = l3_numeric(params, z0, y0)
                interval = l3_interval(params, z0, y0)
            except DegenerateInputError:
                tracker.skip()
                continue
            agree = numeric == l3_closed_form(params, z0) == interval
            tracker.add(0.0 if agree else 1.0, b1=b1, z0=z0, Y0=y0)
    return tracker.report("l3-equivalence", 0.0)


@OracleRegistry.register(
    "interval-condition",
    covers=("interval_condition",),
    description="the quadratic sign test equals the two-sided bound",
)
def check_interval_condition(ctx: CheckContext) -> OracleReport:
    tracker = ResidualTracker()
    for _ in range(ctx.samples * 5):
        a, b, c_, d, f, g, h, s = (float(x) for x in ctx.rng.uniform(-3.0, 3.0, size=8))
        try:
            result = interval_condition(a, b, c_, d, f, g, h, s)
        except (NoRealRoots, DegenerateDenominator):
            tracker.skip()
            continue
        root = np.sqrt(g * g - 4.0 * f * h)
        bounds = [(a * z + b) / (c_ * z + d) for z in ((-g - root) / (2 * f), (-g + root) / (2 * f))]
        if min(abs(s - e) for e in bounds) < 1e-9:
            tracker.skip()
            continue
        direct = min(bounds) < s < max(bounds)
        tracker.add(0.0 if direct == result else 1.0, s=s)
    return tracker.report("interval-condition", 0.0)


@OracleRegistry.register(
    "local-derivatives",
    covers=("local_side_derivatives",),
    description="derivatives at C points match Richardson finite differences",
)
def check_local_derivatives(ctx: CheckContext) -> OracleReport:
    params = ctx.params
    tracker = ResidualTracker()
    for _ in range(ctx.samples):
        z0, t0 = (float(x) for x in ctx.rng.uniform(-3.0, 3.0, size=2))
        curve = curve_through_point(params, ChartPoint(z=z0, t=t0, y=0.0))
        ds_dz, dy_dz = local_side_derivatives(params, z0, t0)
        fd_s = oracle_fd_speed(params, curve, z0)
        fd_y = richardson_derivative(lambda x: eval_curve(params, curve, x).y, z0, 1e-3)
        tracker.add(max(_relative(ds_dz, fd_s), _relative(dy_dz, fd_y)), z0=z0, t0=t0)
    return tracker.report("local-derivatives", 1e-6)


@OracleRegistry.register(
    "arc-validity",
    covers=("extract_arcs", "lax_check", "side_points"),
    description="emitted arcs are monotone, satisfy L2 and contain no Son point",
)
def check_arc_validity(ctx: CheckContext) -> OracleReport:
    params = ctx.params
    tolerances = ctx.config.tolerances
    tracker = ResidualTracker()
    for _ in range(ctx.samples):
        curve = _random_curve(ctx.rng)
        if is_secondary(params, curve, tolerances.boundary):
            tracker.skip()
            continue
        arcs = extract_arcs(params, curve, ctx.config.z_max, tolerances.root, tolerances.tangency_trim)
        son_roots = intersect_son(params, curve).roots
        for arc in arcs:
            low, high = sorted(arc.z_interval)
            violations = 0
            if not arc_is_monotone(params, arc):
                violations += 1
            if any(low + tolerances.tangency_trim < r < high - tolerances.tangency_trim for r in son_roots):
                violations += 1
            for z in np.linspace(arc.z_start, arc.z_end, 12)[1:-1]:
                check = lax_check(params, curve, float(z))
                if check.l2 is False:
                    violations += 1
            tracker.add(float(violations), k=curve.k, l=curve.l, z_start=arc.z_start)
    return tracker.report("arc-validity", 0.0)


@OracleRegistry.register(
    "arc-tfprime",
    covers=("extract_arcs",),
    description="emitted arcs do not cross Tf'",
)
def check_arc_tfprime(ctx: CheckContext) -> OracleReport:
    params = ctx.params
    tracker = ResidualTracker()
    for _ in range(ctx.samples):
        curve = _random_curve(ctx.rng)
        if is_secondary(params, curve):
            tracker.skip()
            continue
        for arc in extract_arcs(params, curve, ctx.config.z_max):
            z = np.linspace(arc.z_start, arc.z_end, 102)[1:-1]
            values = surface_along_curve(params, curve, SurfaceId.TF_PRIME, z)
            signs = np.sign(values[np.abs(values) > 1e-9])
            crossings = int(np.count_nonzero(signs[1:] != signs[:-1]))
            tracker.add(float(crossings), k=curve.k, l=curve.l, z_start=arc.z_start)
    return tracker.report("arc-tfprime", 0.0)


# (b1, c) instances checked by the region checks besides the configured one
REGION_INSTANCES: Tuple[Tuple[float, float], ...] = ((3.0, 1.0), (1.5, 2.0))


def _region_instances(ctx: CheckContext) -> List[ModelParams]:
    instances = [ctx.params]
    for b1, c in REGION_INSTANCES:
        params = ModelParams.canonical(b1=b1, c=c)
        if (params.b1, params.c) != (ctx.params.b1, ctx.params.c):
            instances.append(params)
    return instances


@OracleRegistry.register(
    "floodfill",
    covers=("region_classify",),
    description="twelve components off C, Son and Son', six of them in Y > 0, at each instance",
)
def check_floodfill(ctx: CheckContext) -> OracleReport:
    grid = ctx.config.grid
    tracker = ResidualTracker()
    notes = []
    for params in _region_instances(ctx):
        fill = oracle_floodfill(params, grid)
        tracker.add(
            float(abs(fill.component_count - 12) + abs(fill.upper_half_count - 6)),
            b1=params.b1,
            c=params.c,
            components=fill.component_count,
            upper_half=fill.upper_half_count,
        )
        for cp in fill.representatives:
            label = region_classify(params, cp)
            tracker.add(
                1.0 if label.value in ("Boundary", "Unclassified") else 0.0,
                b1=params.b1,
                c=params.c,
                z=cp.z,
                t=cp.t,
                Y=cp.y,
            )
        full = sorted(label.value for label in representative_labels(params, grid))
        coarse = sorted(label.value for label in representative_labels(params, half_resolution(grid)))
        tracker.add(0.0 if full == coarse else 1.0, b1=params.b1, c=params.c, full=full, half_resolution=coarse)
        notes.append(f"b1={params.b1:g}, c={params.c:g}: {fill.component_count} component(s)")
    return tracker.report("floodfill", 0.0, notes=notes)


@OracleRegistry.register(
    "region-table",
    covers=("region_table", "region_classify"),
    description="the frozen region lookup matches a table rebuilt from the flood fill at each instance",
)
def check_region_table(ctx: CheckContext) -> OracleReport:
    tracker = ResidualTracker()
    for params in _region_instances(ctx):
        _, conflicts = regenerate_region_table(params, ctx.config.grid)
        tracker.add(float(len(conflicts)), b1=params.b1, c=params.c, conflicts=conflicts[:5])
    return tracker.report("region-table", 0.0)
