"""
Real-root finding for the small univariate polynomials produced by
substituting a Hugoniot curve into a surface equation.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from loguru import logger
from numpy.polynomial import Polynomial
from scipy.optimize import brentq

from .errors import DegenerateCurve

# relative size below which a leading coefficient is treated as zero
LEADING_EPS = 1e-13
# imaginary part accepted as numerical noise around a real root
IMAG_TOL = 1e-6
# roots closer than this are merged into one root with multiplicity
CLUSTER_TOL = 1e-6


@dataclass(frozen=True)
class RealRoots:
    """Sorted real roots with multiplicities and per-root residual bounds"""

    roots: Tuple[float, ...] = ()
    multiplicities: Tuple[int, ...] = ()
    residuals: Tuple[float, ...] = ()

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    @property
    def count_with_multiplicity(self) -> int:
        return int(sum(self.multiplicities))

    def simple(self) -> Tuple[float, ...]:
        return tuple(r for r, m in zip(self.roots, self.multiplicities) if m == 1)

    def in_window(self, low: float, high: float) -> "RealRoots":
        keep = [i for i, r in enumerate(self.roots) if low <= r <= high]
        return RealRoots(
            roots=tuple(self.roots[i] for i in keep),
            multiplicities=tuple(self.multiplicities[i] for i in keep),
            residuals=tuple(self.residuals[i] for i in keep),
        )

    def to_dict(self) -> dict:
        return {
            "roots": list(self.roots),
            "multiplicities": list(self.multiplicities),
            "residuals": list(self.residuals),
        }


def residual_bound(poly: Polynomial, tolerance: float) -> float:
    """Acceptance bound tolerance * (1 + max |coefficient|)"""
    return tolerance * (1.0 + float(np.max(np.abs(poly.coef))))


def trim_leading(poly: Polynomial) -> Polynomial:
    """Drop leading coefficients that are negligible relative to the largest one"""
    coef = np.asarray(poly.coef, dtype=float)
    scale = float(np.max(np.abs(coef))) if coef.size else 0.0
    if scale == 0.0:
        return Polynomial([0.0])
    last = coef.size - 1
    while last > 0 and abs(coef[last]) <= LEADING_EPS * scale:
        last -= 1
    return Polynomial(coef[: last + 1])


def is_identically_zero(poly: Polynomial, tolerance: float = 1e-12) -> bool:
    return bool(np.all(np.abs(poly.coef) <= tolerance))


def _newton_polish(poly: Polynomial, root: float, steps: int = 3) -> float:
    deriv = poly.deriv()
    x = root
    for _ in range(steps):
        slope = deriv(x)
        if slope == 0.0:
            break
        step = poly(x) / slope
        if not np.isfinite(step):
            break
        x_next = x - step
        if abs(poly(x_next)) > abs(poly(x)):
            break
        x = x_next
    return float(x)


def _refine_simple(poly: Polynomial, root: float) -> float:
    """Bracket a simple root and refine it with Brent's method"""
    width = 1e-7 * (1.0 + abs(root))
    for _ in range(8):
        low, high = root - width, root + width
        f_low, f_high = poly(low), poly(high)
        if f_low == 0.0:
            return float(low)
        if f_high == 0.0:
            return float(high)
        if f_low * f_high < 0.0:
            return float(brentq(poly, low, high, xtol=1e-15, rtol=4 * np.finfo(float).eps))
        width *= 4.0
    return root


def real_roots(poly: Polynomial, tolerance: float = 1e-9) -> RealRoots:
    """Real roots of a polynomial via companion-matrix eigenvalues.

    Near-real eigenvalues are polished with Newton steps, clustered into
    multiple roots and, when simple, refined inside a sign-change bracket.
    Raises DegenerateCurve when the polynomial vanishes identically.
    """
    poly = trim_leading(poly)
    if is_identically_zero(poly):
        raise DegenerateCurve("intersection polynomial is identically zero")
    if poly.degree() == 0:
        return RealRoots()

    scale = float(np.max(np.abs(poly.coef)))
    normalized = Polynomial(poly.coef / scale)
    candidates = [
        float(r.real)
        for r in normalized.roots()
        if abs(r.imag) <= IMAG_TOL * (1.0 + abs(r.real))
    ]
    candidates.sort()

    clusters: List[List[float]] = []
    for root in candidates:
        if clusters and abs(root - clusters[-1][-1]) <= CLUSTER_TOL * (1.0 + abs(root)):
            clusters[-1].append(root)
        else:
            clusters.append([root])

    bound = residual_bound(normalized, tolerance)
    roots: List[float] = []
    mults: List[int] = []
    residuals: List[float] = []
    for cluster in clusters:
        centre = float(np.mean(cluster))
        if len(cluster) == 1:
            centre = _refine_simple(normalized, _newton_polish(normalized, centre))
        value = abs(float(normalized(centre)))
        if value > bound:
            logger.debug("rejecting spurious root {} with residual {}", centre, value)
            continue
        roots.append(centre)
        mults.append(len(cluster))
        residuals.append(value)

    return RealRoots(tuple(roots), tuple(mults), tuple(residuals))


def quadratic_roots(
    a: float, b: float, c: float, disc_tolerance: float = 1e-14
) -> RealRoots:
    """Roots of a z^2 + b z + c; a double root when the normalised discriminant is below disc_tolerance"""
    poly = Polynomial([c, b, a])
    scale = max(abs(a), abs(b), abs(c))
    if scale == 0.0:
        raise DegenerateCurve("quadratic vanishes identically")
    a_n, b_n, c_n = a / scale, b / scale, c / scale
    if abs(a_n) <= LEADING_EPS:
        if abs(b_n) <= LEADING_EPS:
            return RealRoots()
        root = -c_n / b_n
        return RealRoots((root,), (1,), (abs(float(poly(root))) / scale,))

    disc = b_n * b_n - 4.0 * a_n * c_n
    if disc < -disc_tolerance:
        return RealRoots()
    if abs(disc) <= disc_tolerance:
        root = -b_n / (2.0 * a_n)
        return RealRoots((root,), (2,), (abs(float(poly(root))) / scale,))

    sqrt_disc = np.sqrt(disc)
    # avoid cancellation in the smaller-magnitude root
    q = -0.5 * (b_n + np.copysign(sqrt_disc, b_n))
    pair = sorted((q / a_n, c_n / q)) if q != 0.0 else sorted(
        (-sqrt_disc / (2 * a_n), sqrt_disc / (2 * a_n))
    )
    return RealRoots(
        tuple(float(r) for r in pair),
        (1, 1),
        tuple(abs(float(poly(r))) / scale for r in pair),
    )


def sign_change_brackets(
    values: Sequence[float], grid: Sequence[float]
) -> List[Tuple[float, float]]:
    """Adjacent grid intervals on which the sampled values change sign"""
    values = np.asarray(values, dtype=float)
    grid = np.asarray(grid, dtype=float)
    brackets: List[Tuple[float, float]] = []
    signs = np.sign(values)
    for i in np.nonzero(signs[:-1] * signs[1:] < 0)[0]:
        brackets.append((float(grid[i]), float(grid[i + 1])))
    return brackets
