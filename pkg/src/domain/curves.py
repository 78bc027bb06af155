"""
Hugoniot and Hugoniot' curves as one-parameter families over z.

A plain curve fixes the right state and is labelled by the invariants
    k = 2U~ + b1 X,   l = 2V~ + Y      (V~ = V1 - c),
a prime curve fixes the left state; its formulas are the plain ones with
Y replaced by -Y. Along a curve

    Y(z) = -((l+2c) z^2 - k z - l) / q(z)
    t(z) = ((z^2+1)(b1 z l - k) + 2cz(2 + b1 z^2)) / (2c w(z) q(z))

with w = z^2 + 1 and q = (b1-1) z^2 + 1, both strictly positive.
"""

from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

import numpy as np
from loguru import logger
from numpy.polynomial import Polynomial

from .model import ChartPoint, ModelParams, speed_at, speed_grid
from .polynomials import RealRoots, quadratic_roots, real_roots


@dataclass(frozen=True)
class HugoniotCurve:
    k: float
    l: float
    prime: bool = False

    @property
    def y_sign(self) -> float:
        return -1.0 if self.prime else 1.0

    def to_dict(self) -> dict:
        return {"k": self.k, "l": self.l, "prime": self.prime}


@dataclass(frozen=True)
class CurveSample:
    z: float
    t: float
    y: float
    s: float

    def to_dict(self) -> dict:
        return {"z": self.z, "t": self.t, "Y": self.y, "s": self.s}


class ThroughPointCoefficients(NamedTuple):
    """Expanded coefficients of the curve through (z0, t0, Y0)"""

    a: float
    b: float
    c: float
    d: float
    e: float
    f: float
    g: float


# -- elementary polynomials in z ------------------------------------------------


def w_poly() -> Polynomial:
    return Polynomial([1.0, 0.0, 1.0])


def q_poly(params: ModelParams) -> Polynomial:
    return Polynomial([1.0, 0.0, params.b1 - 1.0])


def y_numerator(params: ModelParams, curve: HugoniotCurve) -> Polynomial:
    """Numerator of Y(z) over q(z), sign-adjusted for prime curves"""
    k, l, c = curve.k, curve.l, params.c
    return curve.y_sign * Polynomial([l, k, -(l + 2.0 * c)])


def t_numerator(params: ModelParams, curve: HugoniotCurve) -> Polynomial:
    """Numerator of t(z) over 2c w(z) q(z); identical for plain and prime curves"""
    b1, c = params.b1, params.c
    k, l = curve.k, curve.l
    return Polynomial([-k, b1 * l + 4.0 * c, -k, b1 * (l + 2.0 * c)])


def speed_polynomials(
    params: ModelParams, curve: HugoniotCurve
) -> Tuple[Polynomial, Polynomial]:
    """Speed along the curve as numerator / denominator polynomials in z.

    s(z) = (a3 z^3 + a2 z^2 + a1 z + a0) / (2 b1 q(z)), the common factor
    w(z) having been cancelled.
    """
    b1, c = params.b1, params.c
    k, l = curve.k, curve.l
    numerator = Polynomial(
        [k, b1 * (2.0 * c - l), -(b1 + 1.0) * k, b1 * (b1 + 1.0) * (l + 2.0 * c)]
    )
    return numerator, 2.0 * b1 * q_poly(params)


# -- operations -------------------------------------------------------------------


def curve_from_kl(
    params: ModelParams, k: float, l: float, prime: bool = False
) -> HugoniotCurve:
    return HugoniotCurve(k=float(k), l=float(l), prime=bool(prime))


def eval_curve(params: ModelParams, curve: HugoniotCurve, z: float) -> ChartPoint:
    b1, c = params.b1, params.c
    k, l = curve.k, curve.l
    z2 = z * z
    q = (b1 - 1.0) * z2 + 1.0
    y = -((l + 2.0 * c) * z2 - k * z - l) / q
    t = ((z2 + 1.0) * (b1 * z * l - k) + 2.0 * c * z * (2.0 + b1 * z2)) / (
        2.0 * c * ((b1 - 1.0) * z2 * z2 + b1 * z2 + 1.0)
    )
    return ChartPoint(z=z, t=t, y=curve.y_sign * y)


def eval_curve_array(
    params: ModelParams, curve: HugoniotCurve, z: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """Vectorised (t, Y) along the curve"""
    b1, c = params.b1, params.c
    k, l = curve.k, curve.l
    z = np.asarray(z, dtype=float)
    z2 = z * z
    y = -((l + 2.0 * c) * z2 - k * z - l) / ((b1 - 1.0) * z2 + 1.0)
    t = ((z2 + 1.0) * (b1 * z * l - k) + 2.0 * c * z * (2.0 + b1 * z2)) / (
        2.0 * c * ((b1 - 1.0) * z2 * z2 + b1 * z2 + 1.0)
    )
    return t, curve.y_sign * y


def kl_from_point(
    params: ModelParams, cp: ChartPoint, prime: bool = False
) -> Tuple[float, float]:
    """Invariants (k, l) of the plain (or prime) curve through cp"""
    c, b1 = params.c, params.b1
    z, t = cp.z, cp.t
    y = -cp.y if prime else cp.y
    w = z * z + 1.0
    k = (4.0 * c * z + 2.0 * c * t * (z**4 - 1.0) + b1 * z * w * y) / w
    l = (2.0 * c * z * w * t + y * w - 2.0 * c * z * z) / w
    return k, l


def curve_through_point(
    params: ModelParams, cp: ChartPoint, prime: bool = False
) -> HugoniotCurve:
    k, l = kl_from_point(params, cp, prime)
    return HugoniotCurve(k=k, l=l, prime=prime)


def through_point_coefficients(
    params: ModelParams, cp: ChartPoint, prime: bool = False
) -> ThroughPointCoefficients:
    """Coefficients A..G of the expanded curve through cp (Y0 negated for prime)"""
    b1, c = params.b1, params.c
    z0, t0 = cp.z, cp.t
    y0 = -cp.y if prime else cp.y
    w0 = z0 * z0 + 1.0
    return ThroughPointCoefficients(
        a=-(2.0 * c + 2.0 * c * t0 * z0 * w0 + y0 * w0),
        b=4.0 * c * z0 + 2.0 * c * t0 * (z0**4 - 1.0) + b1 * y0 * z0 * w0,
        c=-2.0 * c * z0 * z0 + 2.0 * c * t0 * z0 * w0 + y0 * w0,
        d=2.0 * c * b1 + 2.0 * c * b1 * t0 * z0 * w0 + b1 * y0 * w0,
        e=2.0 * c * t0 * (1.0 - z0**4) - b1 * z0 * y0 * w0 - 4.0 * c * z0,
        f=4.0 * c * w0 + 2.0 * c * b1 * t0 * z0 * w0 + b1 * y0 * w0 - 2.0 * c * b1 * z0 * z0,
        g=-4.0 * c * z0 + 2.0 * c * t0 * (1.0 - z0**4) - b1 * z0 * y0 * w0,
    )


def eval_through_point(
    params: ModelParams,
    coeffs: ThroughPointCoefficients,
    z0: float,
    z: float,
    prime: bool = False,
) -> ChartPoint:
    """Evaluate the expanded form; agrees with eval_curve(curve_through_point(...))"""
    b1, c = params.b1, params.c
    w0 = z0 * z0 + 1.0
    z2 = z * z
    y = (coeffs.a * z2 + coeffs.b * z + coeffs.c) / (w0 * ((b1 - 1.0) * z2 + 1.0))
    t = (coeffs.d * z2 * z + coeffs.e * z2 + coeffs.f * z + coeffs.g) / (
        2.0 * c * w0 * ((b1 - 1.0) * z2 * z2 + b1 * z2 + 1.0)
    )
    return ChartPoint(z=z, t=t, y=-y if prime else y)


def speed_along(params: ModelParams, curve: HugoniotCurve, z: float) -> float:
    """Shock speed along the curve, computed as speed_at(eval_curve(curve, z))"""
    return speed_at(params, eval_curve(params, curve, z))


def speed_along_closed_form(params: ModelParams, cp0: ChartPoint, z: float) -> float:
    """Expanded speed along the curve through cp0, used as a cross-check"""
    b1, c = params.b1, params.c
    z0, t0, y0 = cp0.z, cp0.t, cp0.y
    w0 = z0 * z0 + 1.0
    sp3 = b1 * (b1 + 1.0) * (y0 * w0 + 2.0 * c * (1.0 + z0 * t0 * w0))
    sp2 = (b1 + 1.0) * (b1 * z0 * y0 * w0 + 2.0 * c * (2.0 * z0 + t0 * z0**4 - t0))
    sp1 = b1 * (y0 * w0 + 2.0 * c * (z0 * t0 * w0 - 2.0 * z0 * z0 - 1.0))
    sp0 = b1 * z0 * y0 * w0 + 2.0 * c * (2.0 * z0 + t0 * z0**4 - t0)
    numerator = sp3 * z**3 - sp2 * z * z - sp1 * z + sp0
    return numerator / (2.0 * b1 * w0 * ((b1 - 1.0) * z * z + 1.0))


def sample_curve(
    params: ModelParams, curve: HugoniotCurve, z_values: np.ndarray
) -> Tuple[CurveSample, ...]:
    t, y = eval_curve_array(params, curve, z_values)
    z_values = np.asarray(z_values, dtype=float)
    s = speed_grid(params, z_values, t)
    return tuple(
        CurveSample(z=float(zi), t=float(ti), y=float(yi), s=float(si))
        for zi, ti, yi, si in zip(z_values, t, y, s)
    )


def is_secondary(params: ModelParams, curve: HugoniotCurve, tolerance: float = 1e-9) -> bool:
    """True when the curve passes through the secondary bifurcation, l = -2c"""
    return abs(curve.l + 2.0 * params.c) < tolerance


# -- intersections ------------------------------------------------------------------


def characteristic_pair(
    params: ModelParams, z0: float, t0: float
) -> Tuple[float, Optional[float]]:
    """Both C-intersections of the curve through (z0, t0, 0); None when the second is at z = infinity"""
    w0 = z0 * z0 + 1.0
    denominator = t0 * z0 * w0 + 1.0
    if denominator == 0.0:
        return z0, None
    return z0, -(t0 * w0 - z0) / denominator


def speed_gap(params: ModelParams, z0: float, t0: float) -> float:
    """s(z0) - s(z1) for the curve through (z0, t0, 0)"""
    return params.c * (z0 * z0 + 1.0) * t0


def intersect_characteristic(
    params: ModelParams, curve: HugoniotCurve, disc_tolerance: float = 1e-14
) -> RealRoots:
    """Real zeros of the quadratic numerator of Y(z)"""
    numerator = y_numerator(params, curve)
    coef = np.zeros(3)
    coef[: numerator.coef.size] = numerator.coef
    return quadratic_roots(coef[2], coef[1], coef[0], disc_tolerance=disc_tolerance)


def _sonic_polynomial(
    params: ModelParams, curve: HugoniotCurve, y_coefficient_sign: float
) -> Polynomial:
    """son (y_coefficient_sign=-1) or son' (+1) along the curve times q(z), divided by w(z).

    son*q = -z((b1+1)z^2+3) nt - ((b1+1)z^2-1) w nY - 2c q^2, and w always
    divides it, leaving a quartic.
    """
    b1, c = params.b1, params.c
    z = Polynomial([0.0, 1.0])
    w = w_poly()
    q = q_poly(params)
    beta = b1 + 1.0
    nt = t_numerator(params, curve)
    ny = y_numerator(params, curve)
    full = (
        -z * (beta * z * z + 3.0) * nt
        + y_coefficient_sign * (beta * z * z - 1.0) * w * ny
        - 2.0 * c * q * q
    )
    quotient, remainder = divmod(full, w)
    scale = 1.0 + float(np.max(np.abs(full.coef)))
    if float(np.max(np.abs(remainder.coef))) > 1e-9 * scale:
        logger.warning("sonic polynomial not divisible by z^2+1 (remainder {})", remainder.coef)
        return full
    return quotient


def son_polynomial(params: ModelParams, curve: HugoniotCurve) -> Polynomial:
    return _sonic_polynomial(params, curve, -1.0)


def sonprime_polynomial(params: ModelParams, curve: HugoniotCurve) -> Polynomial:
    return _sonic_polynomial(params, curve, 1.0)


def critical_speed_polynomial(params: ModelParams, curve: HugoniotCurve) -> Polynomial:
    """Numerator of d s / d z along the curve"""
    numerator, denominator = speed_polynomials(params, curve)
    return numerator.deriv() * denominator - numerator * denominator.deriv()


def intersect_son(
    params: ModelParams, curve: HugoniotCurve, tolerance: float = 1e-9
) -> RealRoots:
    return real_roots(son_polynomial(params, curve), tolerance)


def intersect_sonprime(
    params: ModelParams, curve: HugoniotCurve, tolerance: float = 1e-9
) -> RealRoots:
    return real_roots(sonprime_polynomial(params, curve), tolerance)
