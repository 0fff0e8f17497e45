"""Elementary mappings, numerical derivatives and contour integrals.

A fuzzy mapping takes elements ``z = x + y*A`` to elements ``u(x, y) +
v(x, y)*A``.  Differentiability of such a mapping is governed by the
Cauchy-Riemann equations on ``(u, v)``; this module estimates the partials
by central differences, reports the residuals of both equations, and
assembles the derivative from ``u_x`` and ``v_x``.  Integrals are computed
as quadrature of ``f(z(t)) * z'(t)`` along sampled paths, which for an
analytic integrand converges to the antiderivative difference and is
therefore path independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .core import LcNumber, norm_phi, to_polar

__all__ = [
    "CrReport",
    "FuzzyMapping",
    "Path",
    "check_chain_rule",
    "compose",
    "contour_integral",
    "derivative_cr",
    "exp_map",
    "exp_rfa",
    "identity_map",
    "constant_map",
    "log_rfa",
    "poly_eval",
    "polynomial_map",
    "pow_real",
    "power_map",
    "solve_linear_mapping_ode",
]

MapLike = Callable[[LcNumber], LcNumber]


def exp_rfa(z: LcNumber) -> LcNumber:
    """Exponential by the Euler-type formula ``e^re * (cos fu + sin fu * A)``.

    ``math.exp`` raises OverflowError when ``e^re`` leaves the double range.
    """
    scale = math.exp(z.re)
    return LcNumber(scale * math.cos(z.fu), scale * math.sin(z.fu))


def log_rfa(z: LcNumber, n: int = 0) -> LcNumber:
    """Logarithm branch ``n``: ``(ln ||z||, arg z + 2*pi*n)``."""
    if z.is_zero():
        raise ValueError("logarithm of the zero element is undefined")
    p = to_polar(z)
    return LcNumber(math.log(p.modulus), p.argument + 2.0 * math.pi * n)


def pow_real(z: LcNumber, a: float) -> LcNumber:
    """Real power through the principal logarithm: ``exp(a * log z)``."""
    if z.is_zero():
        raise ValueError("real power of the zero element is undefined")
    return exp_rfa(float(a) * log_rfa(z, 0))


def poly_eval(coeffs, z: LcNumber) -> LcNumber:
    """Evaluate ``a0 + a1*z + ... + an*z^n`` by Horner's scheme."""
    coeffs = list(coeffs)
    if not coeffs:
        raise ValueError("polynomial needs at least one coefficient")
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * z + c
    return acc


@dataclass(frozen=True)
class FuzzyMapping:
    """A deterministic map between elements, with pointwise combinators.

    ``domain`` optionally restricts evaluation to a rectangle in the
    ``(re, fu)`` coordinates; evaluation outside it raises.
    """

    fn: MapLike
    domain: tuple[tuple[float, float], tuple[float, float]] | None = None

    def __call__(self, z: LcNumber) -> LcNumber:
        if self.domain is not None:
            (re_lo, re_hi), (fu_lo, fu_hi) = self.domain
            if not (re_lo <= z.re <= re_hi and fu_lo <= z.fu <= fu_hi):
                raise ValueError(f"{z!r} is outside the mapping domain")
        return self.fn(z)

    @staticmethod
    def _lift(value) -> "FuzzyMapping":
        if isinstance(value, FuzzyMapping):
            return value
        if isinstance(value, LcNumber):
            return constant_map(value)
        if isinstance(value, (int, float)):
            return constant_map(LcNumber(float(value), 0.0))
        raise TypeError(f"cannot treat {value!r} as a fuzzy mapping")

    def __add__(self, other):
        other = self._lift(other)
        return FuzzyMapping(lambda z: self(z) + other(z))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        return FuzzyMapping(lambda z: self(z) - other(z))

    def __mul__(self, other):
        other = self._lift(other)
        return FuzzyMapping(lambda z: self(z) * other(z))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        return FuzzyMapping(lambda z: self(z) / other(z))

    def compose(self, inner: MapLike) -> "FuzzyMapping":
        """The mapping ``z -> self(inner(z))``."""
        return FuzzyMapping(lambda z: self(inner(z)))

    @classmethod
    def from_components(
        cls,
        u: Callable[[float, float], float],
        v: Callable[[float, float], float],
        domain=None,
    ) -> "FuzzyMapping":
        """Assemble a mapping from its real and fuzzy component functions."""
        return cls(lambda z: LcNumber(u(z.re, z.fu), v(z.re, z.fu)), domain=domain)


def compose(outer: MapLike, inner: MapLike) -> FuzzyMapping:
    return FuzzyMapping(lambda z: outer(inner(z)))


def identity_map() -> FuzzyMapping:
    return FuzzyMapping(lambda z: z)


def constant_map(k: LcNumber) -> FuzzyMapping:
    return FuzzyMapping(lambda z: k)


def exp_map() -> FuzzyMapping:
    return FuzzyMapping(exp_rfa)


def log_map(n: int = 0) -> FuzzyMapping:
    return FuzzyMapping(lambda z: log_rfa(z, n))


def power_map(a: float) -> FuzzyMapping:
    return FuzzyMapping(lambda z: pow_real(z, a))


def polynomial_map(coeffs) -> FuzzyMapping:
    frozen = tuple(coeffs)
    return FuzzyMapping(lambda z: poly_eval(frozen, z))


@dataclass(frozen=True)
class CrReport:
    """Central-difference partials of ``(u, v)`` plus the assembled derivative.

    ``residual1 = |u_x - v_y|`` and ``residual2 = |u_y + v_x|`` report how
    far the point is from satisfying the Cauchy-Riemann equations; they are
    diagnostics, never enforced.
    """

    d_ux: float
    d_uy: float
    d_vx: float
    d_vy: float
    residual1: float
    residual2: float
    derivative: LcNumber


def derivative_cr(f: MapLike, z0: LcNumber, h: float = 1e-5) -> CrReport:
    """Numerical derivative at ``z0`` from a four-point central stencil.

    The derivative is ``u_x + v_x*A``; evaluation failures inside the
    stencil propagate unchanged.
    """
    if h <= 0.0:
        raise ValueError(f"step h must be positive, got {h}")
    x0, y0 = z0.re, z0.fu
    f_xp = f(LcNumber(x0 + h, y0))
    f_xm = f(LcNumber(x0 - h, y0))
    f_yp = f(LcNumber(x0, y0 + h))
    f_ym = f(LcNumber(x0, y0 - h))
    inv = 0.5 / h
    d_ux = (f_xp.re - f_xm.re) * inv
    d_vx = (f_xp.fu - f_xm.fu) * inv
    d_uy = (f_yp.re - f_ym.re) * inv
    d_vy = (f_yp.fu - f_ym.fu) * inv
    return CrReport(
        d_ux=d_ux,
        d_uy=d_uy,
        d_vx=d_vx,
        d_vy=d_vy,
        residual1=abs(d_ux - d_vy),
        residual2=abs(d_uy + d_vx),
        derivative=LcNumber(d_ux, d_vx),
    )


def check_chain_rule(g: MapLike, f: MapLike, z0: LcNumber, h: float = 1e-5) -> float:
    """Residual norm of ``(g o f)'(z0)`` against ``g'(f(z0)) * f'(z0)``."""
    composed = derivative_cr(lambda z: g(f(z)), z0, h).derivative
    outer = derivative_cr(g, f(z0), h).derivative
    inner = derivative_cr(f, z0, h).derivative
    return norm_phi(composed - outer * inner)


@dataclass(frozen=True)
class Path:
    """A sampled integration path: at least two points, vertices included.

    ``segment`` and ``polyline`` sample piecewise-linearly (polyline
    intervals are distributed proportionally to edge length); ``parametric``
    samples a caller-supplied ``t -> z`` on a uniform grid over [0, 1].
    """

    points: tuple[LcNumber, ...]

    def __post_init__(self):
        if len(self.points) < 2:
            raise ValueError("a path needs at least two sample points")
        for z in self.points:
            if not (math.isfinite(z.re) and math.isfinite(z.fu)):
                raise ValueError("path samples must be finite")

    @classmethod
    def segment(cls, z_start: LcNumber, z_end: LcNumber, samples: int = 10001) -> "Path":
        if samples < 2:
            raise ValueError(f"samples must be at least 2, got {samples}")
        n = samples - 1
        pts = [
            LcNumber(
                z_start.re + (z_end.re - z_start.re) * (i / n),
                z_start.fu + (z_end.fu - z_start.fu) * (i / n),
            )
            for i in range(samples)
        ]
        pts[0], pts[-1] = z_start, z_end
        return cls(tuple(pts))

    @classmethod
    def polyline(cls, vertices, samples: int = 10001) -> "Path":
        verts = [v if isinstance(v, LcNumber) else LcNumber(*v) for v in vertices]
        if len(verts) < 2:
            raise ValueError("a polyline needs at least two vertices")
        if samples < 2:
            raise ValueError(f"samples must be at least 2, got {samples}")
        lengths = [norm_phi(b - a) for a, b in zip(verts, verts[1:])]
        total = sum(lengths)
        budget = max(samples - 1, len(lengths))
        counts = []
        for ell in lengths:
            share = budget * (ell / total) if total > 0.0 else budget / len(lengths)
            counts.append(max(1, round(share)))
        # absorb rounding drift into the longest edge
        drift = budget - sum(counts)
        counts[lengths.index(max(lengths))] += drift
        pts: list[LcNumber] = [verts[0]]
        for a, b, n in zip(verts, verts[1:], counts):
            n = max(1, n)
            for i in range(1, n + 1):
                pts.append(
                    LcNumber(a.re + (b.re - a.re) * (i / n), a.fu + (b.fu - a.fu) * (i / n))
                )
            pts[-1] = b
        return cls(tuple(pts))

    @classmethod
    def parametric(cls, fn: Callable[[float], LcNumber], samples: int = 10001) -> "Path":
        if samples < 2:
            raise ValueError(f"samples must be at least 2, got {samples}")
        n = samples - 1
        pts = tuple(fn(i / n) for i in range(samples))
        gaps = [norm_phi(b - a) for a, b in zip(pts, pts[1:])]
        total = sum(gaps)
        # a jump stays O(1) while the mean gap shrinks with the sample count
        if total > 0.0 and samples >= 8 and max(gaps) > 10.0 * total / len(gaps):
            raise ValueError("parametric path looks discontinuous on its sample grid")
        return cls(pts)


def contour_integral(f: MapLike, path: Path, scheme: str = "trapezoid") -> LcNumber:
    """Quadrature of ``f`` along the path.

    Per sampled interval the increment is ``mean(f) * dz`` with the mean
    taken by the trapezoid rule or, for ``scheme="simpson"``, Simpson's rule
    with the chord midpoint (exact midpoint for piecewise-linear paths).
    Components are accumulated with ``fsum`` to keep long paths clean.
    """
    if scheme not in ("trapezoid", "simpson"):
        raise ValueError(f"unknown quadrature scheme {scheme!r}")
    pts = path.points
    res: list[float] = []
    fus: list[float] = []
    values = [f(z) for z in pts]
    for i in range(len(pts) - 1):
        z0, z1 = pts[i], pts[i + 1]
        dz = z1 - z0
        if scheme == "trapezoid":
            mean = 0.5 * (values[i] + values[i + 1])
        else:
            mid = f(LcNumber(0.5 * (z0.re + z1.re), 0.5 * (z0.fu + z1.fu)))
            mean = (values[i] + 4.0 * mid + values[i + 1]) * (1.0 / 6.0)
        inc = mean * dz
        res.append(inc.re)
        fus.append(inc.fu)
    return LcNumber(math.fsum(res), math.fsum(fus))


def solve_linear_mapping_ode(
    b: LcNumber,
    f: MapLike | None,
    z0: LcNumber,
    w0: LcNumber,
    z: LcNumber,
    samples: int = 10001,
) -> LcNumber:
    """Mapping-valued solution of ``w' + b*w = f`` with ``w(z0) = w0``.

    Evaluates ``e^{-b(z - z0)} (w0 + integral of e^{b(zeta - z0)} f(zeta))``
    with the integral taken along the straight segment from ``z0`` to ``z``.
    ``f=None`` selects the homogeneous case and skips quadrature entirely.
    """
    decay = exp_rfa(-(b * (z - z0)))
    if f is None:
        return w0 * decay
    kernel = lambda zeta: exp_rfa(b * (zeta - z0)) * f(zeta)
    integral = contour_integral(kernel, Path.segment(z0, z, samples))
    return decay * (w0 + integral)
