"""
Quadratic flux model and the coordinate charts of the wave manifold.

Three coordinate systems are used:

* state space: pairs of states (u, v), (u', v') with a shock speed s;
* blow-up coordinates: U~ = b1*U + a1 - a4, V1 = V + a3, X = u - u',
  Y = v - v' and the slope z = X / Y;
* the working chart (z, t, Y) on M^3 minus the plane at z = infinity.

The chart is
    U~ = 2cz/(z^2+1) + c*t*(z^2-1),   V1 = c/(z^2+1) + c*t*z,   X = z*Y,
so that every (z, t, Y) lies on G = (z^2-1)V1 - z*U~ + c = 0.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import NotOnManifold, ValidationError


def offsets_consistent(a2: float, a3: float, c: float) -> bool:
    """c = a3 - a2 up to rounding of the offsets"""
    return math.isclose(a3 - a2, c, rel_tol=1e-12, abs_tol=1e-15)


@dataclass(frozen=True)
class ModelParams:
    """Flux parameters of symmetric case IV: b1 > 1, c = a3 - a2 > 0"""

    b1: float = 2.0
    c: float = 1.0
    a1: float = 0.0
    a2: float = 0.0
    a3: float = 1.0
    a4: float = 0.0

    def __post_init__(self) -> None:
        values = (self.b1, self.c, self.a1, self.a2, self.a3, self.a4)
        if not all(math.isfinite(v) for v in values):
            raise ValidationError("model parameters must be finite")
        if not self.b1 > 1.0:
            raise ValidationError("b1 must be greater than 1", {"b1": self.b1})
        if not self.c > 0.0:
            raise ValidationError("c must be positive", {"c": self.c})
        if not offsets_consistent(self.a2, self.a3, self.c):
            raise ValidationError(
                "offsets must satisfy c = a3 - a2",
                {"a2": self.a2, "a3": self.a3, "c": self.c},
            )

    @classmethod
    def canonical(cls, b1: float = 2.0, c: float = 1.0) -> "ModelParams":
        """Parameters with zero offsets except a3 = c"""
        return cls(b1=b1, c=c, a1=0.0, a2=0.0, a3=c, a4=0.0)

    @property
    def double_sonic_z(self) -> float:
        """Positive z where the Y coefficient of son and son' vanishes"""
        return 1.0 / math.sqrt(self.b1 + 1.0)


@dataclass(frozen=True)
class StatePair:
    u: float
    v: float
    u_prime: float
    v_prime: float
    s: float


@dataclass(frozen=True)
class BlowupPoint:
    """Point in blow-up coordinates; Y is kept so that z = 0 stays invertible"""

    u_tilde: float
    v1: float
    x: float
    y: float
    z: float


@dataclass(frozen=True)
class ChartPoint:
    z: float
    t: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.z) and math.isfinite(self.t) and math.isfinite(self.y)):
            raise ValidationError(
                "chart coordinates must be finite",
                {"z": self.z, "t": self.t, "Y": self.y},
            )

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.z, self.t, self.y)


def flux_eval(params: ModelParams, u: float, v: float) -> Tuple[float, float]:
    """Quadratic flux (f, g) of symmetric case IV"""
    f = v * v / 2.0 + (params.b1 + 1.0) * u * u / 2.0 + params.a1 * u + params.a2 * v
    g = u * v + params.a3 * u + params.a4 * v
    return f, g


def rh_residual(params: ModelParams, sp: StatePair) -> Tuple[float, float]:
    """F(W) - F(W') - s(W - W'); zero on the wave manifold"""
    f1, g1 = flux_eval(params, sp.u, sp.v)
    f2, g2 = flux_eval(params, sp.u_prime, sp.v_prime)
    return (
        f1 - f2 - sp.s * (sp.u - sp.u_prime),
        g1 - g2 - sp.s * (sp.v - sp.v_prime),
    )


def manifold_residual(params: ModelParams, bp: BlowupPoint) -> float:
    """G = (z^2 - 1) V1 - z U~ + c"""
    return (bp.z * bp.z - 1.0) * bp.v1 - bp.z * bp.u_tilde + params.c


def chart_to_blowup(params: ModelParams, cp: ChartPoint) -> BlowupPoint:
    z, t, y = cp.z, cp.t, cp.y
    c = params.c
    w = z * z + 1.0
    return BlowupPoint(
        u_tilde=2.0 * c * z / w + c * t * (z * z - 1.0),
        v1=c / w + c * t * z,
        x=z * y,
        y=y,
        z=z,
    )


def chart_from_blowup(
    params: ModelParams, bp: BlowupPoint, tolerance: float = 1e-9
) -> ChartPoint:
    """Invert the chart; raises NotOnManifold when G or X = zY is violated"""
    scale = 1.0 + abs(bp.u_tilde) + abs(bp.v1) + params.c
    residual = manifold_residual(params, bp)
    if abs(residual) > tolerance * scale:
        raise NotOnManifold(residual, tolerance)
    slope_residual = bp.x - bp.z * bp.y
    if abs(slope_residual) > tolerance * (1.0 + abs(bp.x)):
        raise NotOnManifold(slope_residual, tolerance)

    z = bp.z
    c = params.c
    w = z * z + 1.0
    # least-squares combination of both chart equations; z^4 - z^2 + 1 > 0
    du = bp.u_tilde - 2.0 * c * z / w
    dv = bp.v1 - c / w
    t = ((z * z - 1.0) * du + z * dv) / (c * (z**4 - z * z + 1.0))
    return ChartPoint(z=z, t=t, y=bp.y)


def chart_to_states(params: ModelParams, cp: ChartPoint) -> StatePair:
    """Blow down a chart point to a pair of states and its shock speed.

    The state-space speed is U + a4 + z*V1, which is speed_at shifted by
    speed_shift(params).
    """
    bp = chart_to_blowup(params, cp)
    big_u = (bp.u_tilde - params.a1 + params.a4) / params.b1
    big_v = bp.v1 - params.a3
    half_x = bp.x / 2.0
    half_y = bp.y / 2.0
    return StatePair(
        u=big_u + half_x,
        v=big_v + half_y,
        u_prime=big_u - half_x,
        v_prime=big_v - half_y,
        s=speed_at(params, cp) + speed_shift(params),
    )


def speed_shift(params: ModelParams) -> float:
    """Constant separating state-space speed from speed_at; zero when a1 = a4 = 0"""
    return (params.a4 - params.a1) / params.b1 + params.a4


def speed_at(params: ModelParams, cp: ChartPoint) -> float:
    """Shock speed c((b1+1)t z^4 + b1 z^2 t + (b1+2) z - t) / (b1 (z^2+1))"""
    b1, c = params.b1, params.c
    z, t = cp.z, cp.t
    z2 = z * z
    numerator = c * ((b1 + 1.0) * t * z2 * z2 + b1 * z2 * t + (b1 + 2.0) * z - t)
    return numerator / (b1 * (z2 + 1.0))


def speed_grid(params: ModelParams, z: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Vectorised speed_at over broadcastable arrays"""
    b1, c = params.b1, params.c
    z2 = z * z
    return c * ((b1 + 1.0) * t * z2 * z2 + b1 * z2 * t + (b1 + 2.0) * z - t) / (
        b1 * (z2 + 1.0)
    )
