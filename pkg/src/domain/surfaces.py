"""
Named surfaces of the wave manifold and the distinguished curves on them.

Surfaces are zero sets of functions of the chart point (z, t, Y):

    Characteristic   Y
    Son              -2c z P5 t - P Y - 2c q
    SonPrime         -2c z P5 t + P Y - 2c q
    Tf               tf1 Y^2 + tf2 Y + tf3
    TfPrime          Tf with Y replaced by -Y
    Sigma            Y + 2c(t z^3 + t z + 1) / (z^2 + 1)

with z P5 = z((b1+1)z^2 + 3)(z^2+1), P = ((b1+1)z^2 - 1)(z^2+1) and
q = (b1-1)z^2 + 1.
"""

import math
from enum import Enum
from typing import Tuple

import numpy as np
from loguru import logger

from .configuration import GridConfig
from .curves import HugoniotCurve, is_secondary
from .errors import ValidationError
from .model import ChartPoint, ModelParams


class SurfaceId(Enum):
    CHARACTERISTIC = "characteristic"
    SON = "son"
    SON_PRIME = "sonprime"
    TF = "tf"
    TF_PRIME = "tfprime"
    SIGMA = "sigma"


class CurveOnSurface(Enum):
    """Distinguished curves and the coordinate that parametrizes each one"""

    FOLD_CURVE = ("fold", "z")
    INFLECTION_LOCUS = ("inflection", "z")
    DOUBLE_SONIC_PLUS = ("double-sonic-plus", "Y")
    DOUBLE_SONIC_MINUS = ("double-sonic-minus", "Y")
    SONIC_PRIME_FOLD = ("sonic-prime-fold", "z")
    SON_PRIME_LINE_Z0 = ("sonprime-line-z0", "t")
    SON_LINE_Z0 = ("son-line-z0", "t")

    @property
    def label(self) -> str:
        return self.value[0]

    @property
    def parameter(self) -> str:
        return self.value[1]


def _sonic_parts(params: ModelParams, z: float) -> Tuple[float, float, float]:
    """(z P5, P, q) at z"""
    b1 = params.b1
    z2 = z * z
    w = z2 + 1.0
    zp5 = z * ((b1 + 1.0) * z2 + 3.0) * w
    p = ((b1 + 1.0) * z2 - 1.0) * w
    q = (b1 - 1.0) * z2 + 1.0
    return zp5, p, q


def son_value(params: ModelParams, z: float, t: float, y: float) -> float:
    zp5, p, q = _sonic_parts(params, z)
    return -2.0 * params.c * zp5 * t - p * y - 2.0 * params.c * q


def sonprime_value(params: ModelParams, z: float, t: float, y: float) -> float:
    zp5, p, q = _sonic_parts(params, z)
    return -2.0 * params.c * zp5 * t + p * y - 2.0 * params.c * q


def tf_coefficients(params: ModelParams, z: float, t: float) -> Tuple[float, float, float]:
    """Coefficients (tf1, tf2, tf3) of Tf as a quadratic in Y"""
    b1, c = params.b1, params.c
    z2 = z * z
    w = z2 + 1.0
    tf1 = w * (b1 * b1 * z2 + 4.0)
    tf2 = 4.0 * c * z * w * (b1 * z2 - b1 + 4.0) * t + 8.0 * c * ((b1 - 1.0) * z2 + 1.0)
    tf3 = 4.0 * c * c * t * t * w**3
    return tf1, tf2, tf3


def tf_value(params: ModelParams, z: float, t: float, y: float) -> float:
    tf1, tf2, tf3 = tf_coefficients(params, z, t)
    return (tf1 * y + tf2) * y + tf3


def sigma_value(params: ModelParams, z: float, t: float, y: float) -> float:
    return y + 2.0 * params.c * (t * z**3 + t * z + 1.0) / (z * z + 1.0)


def surface_value(params: ModelParams, surface: SurfaceId, cp: ChartPoint) -> float:
    z, t, y = cp.z, cp.t, cp.y
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
    if surface is SurfaceId.SIGMA:
        return sigma_value(params, z, t, y)
    raise ValidationError(f"unknown surface {surface!r}")


def surface_values_grid(
    params: ModelParams, z: np.ndarray, t: np.ndarray, y: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """Vectorised (son, son') over broadcastable arrays"""
    b1, c = params.b1, params.c
    z2 = z * z
    w = z2 + 1.0
    zp5 = z * ((b1 + 1.0) * z2 + 3.0) * w
    p = ((b1 + 1.0) * z2 - 1.0) * w
    q = (b1 - 1.0) * z2 + 1.0
    base = -2.0 * c * zp5 * t - 2.0 * c * q
    return base - p * y, base + p * y


def fold_curve(z: float) -> ChartPoint:
    return ChartPoint(z=z, t=0.0, y=0.0)


def inflection_locus_value(params: ModelParams, z: float, t: float) -> float:
    """c[((b1+1)z^5 + (b1+4)z^3 + 3z) t + (b1-1)z^2 + 1]; equals -son(z, t, 0)/2"""
    b1 = params.b1
    z2 = z * z
    return params.c * (
        ((b1 + 1.0) * z**5 + (b1 + 4.0) * z**3 + 3.0 * z) * t + (b1 - 1.0) * z2 + 1.0
    )


def inflection_locus_t(params: ModelParams, z: float) -> float:
    """t of the inflection locus over z != 0"""
    if z == 0.0:
        raise ValidationError("the inflection locus does not meet z = 0")
    b1 = params.b1
    z2 = z * z
    return -((b1 - 1.0) * z2 + 1.0) / (z * ((b1 + 1.0) * z2 + 3.0) * (z2 + 1.0))


def double_sonic_points(params: ModelParams) -> Tuple[Tuple[float, float], Tuple[float, float]]:
    """(z, t) of the two vertical double sonic lines; Y is free along each"""
    b1 = params.b1
    root = math.sqrt(b1 + 1.0)
    t_plus = -b1 * root / (2.0 * (b1 + 2.0))
    return (1.0 / root, t_plus), (-1.0 / root, -t_plus)


def sonic_prime_fold(params: ModelParams, z: float) -> ChartPoint:
    """Tangency curve of Tf with Son'; lies in Y < 0"""
    b1, c = params.b1, params.c
    z2 = z * z
    q = (b1 - 1.0) * z2 + 1.0
    a = (b1 + 1.0) ** 2 * z2 * z2 + 2.0 * (b1 + 3.0) * z2 + 1.0
    return ChartPoint(
        z=z,
        t=-(b1 + 2.0) * z * q / ((z2 + 1.0) * a),
        y=-2.0 * c * q / a,
    )


def son_sonprime_lines_z0(params: ModelParams) -> Tuple[float, float]:
    """Y levels of the z = 0 lines of Son and Son'; the latter is Son' meets Sigma"""
    return 2.0 * params.c, -2.0 * params.c


def sigma_contains(params: ModelParams, curve: HugoniotCurve, tolerance: float = 1e-9) -> bool:
    if curve.prime:
        raise ValidationError("sigma_contains is defined for plain curves")
    return is_secondary(params, curve, tolerance)


def sonprime_y(params: ModelParams, z: float, t: float) -> float:
    """Son' solved for Y; undefined on the double sonic lines"""
    zp5, p, q = _sonic_parts(params, z)
    if p == 0.0:
        raise ValidationError("Son' is vertical at the double sonic z", {"z": z})
    return 2.0 * params.c * (zp5 * t + q) / p


def son_y(params: ModelParams, z: float, t: float) -> float:
    return -sonprime_y(params, z, t)


def tf_sonprime_discriminant(params: ModelParams, z: float) -> float:
    """Discriminant in t of Tf restricted to Son' at fixed z.

    Son' is linear in t for fixed z, so Tf along it is a quadratic in t;
    a zero discriminant means Tf touches Son' on that line.
    """
    b1, c = params.b1, params.c
    zp5, p, q = _sonic_parts(params, z)
    if p == 0.0:
        raise ValidationError("Son' is vertical at the double sonic z", {"z": z})
    z2 = z * z
    w = z2 + 1.0
    alpha = 2.0 * c * zp5 / p
    beta = 2.0 * c * q / p
    tf1 = w * (b1 * b1 * z2 + 4.0)
    lin = 4.0 * c * z * w * (b1 * z2 - b1 + 4.0)
    const = 8.0 * c * q
    t2 = tf1 * alpha * alpha + lin * alpha + 4.0 * c * c * w**3
    t1 = 2.0 * tf1 * alpha * beta + lin * beta + const * alpha
    t0 = tf1 * beta * beta + const * beta
    scale = max(abs(t1) ** 2, abs(4.0 * t2 * t0), 1.0)
    return (t1 * t1 - 4.0 * t2 * t0) / scale


def curve_on_surface_point(
    params: ModelParams, curve: CurveOnSurface, parameter: float
) -> ChartPoint:
    """Point of a distinguished curve at the given value of its parameter"""
    if curve is CurveOnSurface.FOLD_CURVE:
        return fold_curve(parameter)
    if curve is CurveOnSurface.INFLECTION_LOCUS:
        return ChartPoint(z=parameter, t=inflection_locus_t(params, parameter), y=0.0)
    if curve is CurveOnSurface.DOUBLE_SONIC_PLUS:
        (z, t), _ = double_sonic_points(params)
        return ChartPoint(z=z, t=t, y=parameter)
    if curve is CurveOnSurface.DOUBLE_SONIC_MINUS:
        _, (z, t) = double_sonic_points(params)
        return ChartPoint(z=z, t=t, y=parameter)
    if curve is CurveOnSurface.SONIC_PRIME_FOLD:
        return sonic_prime_fold(params, parameter)
    son_level, sonprime_level = son_sonprime_lines_z0(params)
    if curve is CurveOnSurface.SON_PRIME_LINE_Z0:
        return ChartPoint(z=0.0, t=parameter, y=sonprime_level)
    return ChartPoint(z=0.0, t=parameter, y=son_level)


def surface_mesh(
    params: ModelParams,
    surface: SurfaceId,
    grid: GridConfig,
    guard_band: float = 1e-3,
) -> np.ndarray:
    """Sample a surface over a uniform (z, t) grid as an (n, 3) array of (z, t, Y).

    Y is solved per surface: both branches for Tf and Tf', nothing within
    guard_band of the double sonic z values for Son and Son'. Points
    outside grid.y_bounds are dropped.
    """
    nz, nt_, _ = grid.resolution
    z = np.linspace(grid.z_bounds[0], grid.z_bounds[1], nz)
    t = np.linspace(grid.t_bounds[0], grid.t_bounds[1], nt_)
    zz, tt = np.meshgrid(z, t, indexing="ij")
    zz = zz.ravel()
    tt = tt.ravel()
    b1, c = params.b1, params.c
    z2 = zz * zz
    w = z2 + 1.0
    q = (b1 - 1.0) * z2 + 1.0

    if surface is SurfaceId.CHARACTERISTIC:
        points = np.column_stack([zz, tt, np.zeros_like(zz)])
    elif surface in (SurfaceId.SON, SurfaceId.SON_PRIME):
        keep = np.abs(np.abs(zz) - params.double_sonic_z) > guard_band
        zk, tk, wk, qk = zz[keep], tt[keep], w[keep], q[keep]
        p = ((b1 + 1.0) * zk * zk - 1.0) * wk
        zp5 = zk * ((b1 + 1.0) * zk * zk + 3.0) * wk
        y = 2.0 * c * (zp5 * tk + qk) / p
        if surface is SurfaceId.SON:
            y = -y
        points = np.column_stack([zk, tk, y])
    elif surface in (SurfaceId.TF, SurfaceId.TF_PRIME):
        tf1 = w * (b1 * b1 * z2 + 4.0)
        tf2 = 4.0 * c * zz * w * (b1 * z2 - b1 + 4.0) * tt + 8.0 * c * q
        tf3 = 4.0 * c * c * tt * tt * w**3
        disc = tf2 * tf2 - 4.0 * tf1 * tf3
        real = disc >= 0.0
        root = np.sqrt(disc[real])
        lower = (-tf2[real] - root) / (2.0 * tf1[real])
        upper = (-tf2[real] + root) / (2.0 * tf1[real])
        zr, tr = zz[real], tt[real]
        y = np.concatenate([lower, upper])
        if surface is SurfaceId.TF_PRIME:
            y = -y
        points = np.column_stack([np.concatenate([zr, zr]), np.concatenate([tr, tr]), y])
    elif surface is SurfaceId.SIGMA:
        y = -2.0 * c * (tt * zz**3 + tt * zz + 1.0) / w
        points = np.column_stack([zz, tt, y])
    else:
        raise ValidationError(f"unknown surface {surface!r}")

    low, high = grid.y_bounds
    inside = (points[:, 2] >= low) & (points[:, 2] <= high)
    logger.debug("{} mesh: {} of {} points inside Y bounds", surface.value, int(inside.sum()), len(points))
    return points[inside]
