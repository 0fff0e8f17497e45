"""Field arithmetic on fuzzy numbers linearly correlated with a basis.

Fix an asymmetric fuzzy number ``A``.  Every element handled here has the
form ``z = re + fu*A`` and is stored as the coefficient pair ``(re, fu)``.
Asymmetry of the basis makes that pair unique, and the coefficient algebra
is then exactly the algebra of ``re + fu*i``: addition, multiplication,
division, norm and polar decomposition all mirror their complex
counterparts.  The basis itself never enters the arithmetic; it is only
needed to materialise alpha-cuts, the sup metric and exports.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass

__all__ = [
    "AlphaBand",
    "BasisNumber",
    "LcNumber",
    "LcSpace",
    "PolarForm",
    "ZERO",
    "ONE",
    "add",
    "sub",
    "mul",
    "div",
    "norm_phi",
    "conjugate",
    "to_polar",
    "from_polar",
    "pow_int",
    "nth_root",
    "alpha_cut",
    "d_infty",
    "is_asymmetric",
]


def _require_finite(label: str, values) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"{label} endpoints must be finite, got {values}")


@dataclass(frozen=True)
class BasisNumber:
    """A basis fuzzy number described by its alpha-level endpoints.

    Use the ``triangular``, ``trapezoidal`` or ``tabulated`` constructors;
    ``level(alpha)`` evaluates the closed interval of membership at least
    ``alpha``.  Tabulated bases interpolate linearly between grid levels.
    """

    kind: str
    points: tuple[float, ...] = ()
    grid: tuple[tuple[float, float, float], ...] = ()

    @classmethod
    def triangular(cls, a: float, b: float, d: float) -> "BasisNumber":
        a, b, d = float(a), float(b), float(d)
        _require_finite("triangular", (a, b, d))
        if not a <= b <= d:
            raise ValueError(f"triangular endpoints must satisfy a <= b <= d, got ({a}; {b}; {d})")
        return cls("triangular", points=(a, b, d))

    @classmethod
    def trapezoidal(cls, a: float, b: float, c: float, d: float) -> "BasisNumber":
        a, b, c, d = float(a), float(b), float(c), float(d)
        _require_finite("trapezoidal", (a, b, c, d))
        if not a <= b <= c <= d:
            raise ValueError(
                f"trapezoidal endpoints must satisfy a <= b <= c <= d, got ({a}; {b}; {c}; {d})"
            )
        return cls("trapezoidal", points=(a, b, c, d))

    @classmethod
    def tabulated(cls, levels) -> "BasisNumber":
        """Build a basis from rows ``(alpha, lower, upper)`` covering [0, 1]."""
        rows = sorted((float(a), float(lo), float(hi)) for a, lo, hi in levels)
        if len(rows) < 2:
            raise ValueError("tabulated basis needs at least the 0- and 1-levels")
        for a, lo, hi in rows:
            _require_finite("tabulated", (a, lo, hi))
            if not 0.0 <= a <= 1.0:
                raise ValueError(f"tabulated alpha {a} outside [0, 1]")
            if lo > hi:
                raise ValueError(f"tabulated level at alpha={a} has lower {lo} > upper {hi}")
        if rows[0][0] != 0.0 or rows[-1][0] != 1.0:
            raise ValueError("tabulated grid must include alpha=0 and alpha=1")
        for (a0, lo0, hi0), (a1, lo1, hi1) in zip(rows, rows[1:]):
            if a0 == a1:
                raise ValueError(f"duplicate alpha {a0} in tabulated grid")
            if lo1 < lo0 or hi1 > hi0:
                raise ValueError("tabulated levels must nest as alpha increases")
        return cls("tabulated", grid=tuple(rows))

    def level(self, alpha: float) -> tuple[float, float]:
        """Endpoints ``[lower(alpha), upper(alpha)]`` of the alpha-level."""
        if not 0.0 <= alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
        if self.kind == "triangular":
            a, b, d = self.points
            return a + alpha * (b - a), d - alpha * (d - b)
        if self.kind == "trapezoidal":
            a, b, c, d = self.points
            return a + alpha * (b - a), d - alpha * (d - c)
        alphas = [row[0] for row in self.grid]
        i = bisect_right(alphas, alpha)
        if i == len(alphas):
            return self.grid[-1][1], self.grid[-1][2]
        a0, lo0, hi0 = self.grid[i - 1] if i > 0 else self.grid[0]
        a1, lo1, hi1 = self.grid[i]
        if alpha == a0:
            return lo0, hi0
        w = (alpha - a0) / (a1 - a0)
        return lo0 + w * (lo1 - lo0), hi0 + w * (hi1 - hi0)

    def lower(self, alpha: float) -> float:
        return self.level(alpha)[0]

    def upper(self, alpha: float) -> float:
        return self.level(alpha)[1]

    def one_level_value(self) -> float:
        """The single point of the 1-level; raises if it is an interval."""
        lo, hi = self.level(1.0)
        if lo != hi:
            raise ValueError(f"1-level of the basis is the interval [{lo}, {hi}], not a point")
        return lo


def is_asymmetric(basis: BasisNumber, grid_size: int = 101, eps: float = 1e-9) -> bool:
    """Whether ``lower(alpha) + upper(alpha)`` actually varies with alpha.

    A constant endpoint sum would make coefficient pairs non-unique, so all
    constructions on this space require the test to pass.  Triangular and
    trapezoidal shapes are decided in closed form (the endpoint sum is
    linear in alpha); tabulated shapes are sampled on a ``grid_size`` grid.
    """
    if grid_size < 3:
        raise ValueError(f"grid_size must be at least 3, got {grid_size}")
    if eps <= 0.0:
        raise ValueError(f"eps must be positive, got {eps}")
    if basis.kind == "triangular":
        a, b, d = basis.points
        return abs(2.0 * b - a - d) > eps
    if basis.kind == "trapezoidal":
        a, b, c, d = basis.points
        return abs((b + c) - (a + d)) > eps
    lo0, hi0 = basis.level(0.0)
    base = lo0 + hi0
    deviation = 0.0
    for i in range(grid_size):
        lo, hi = basis.level(i / (grid_size - 1))
        deviation = max(deviation, abs((lo + hi) - base))
    return deviation > eps


@dataclass(frozen=True)
class LcNumber:
    """Element ``re + fu*A``, stored as its coefficient pair.

    Arithmetic never inspects the basis: the operators below act on the
    coefficients exactly as complex arithmetic acts on ``re + fu*i``.
    """

    re: float
    fu: float

    def __post_init__(self):
        object.__setattr__(self, "re", float(self.re))
        object.__setattr__(self, "fu", float(self.fu))

    @staticmethod
    def _coerce(value):
        if isinstance(value, LcNumber):
            return value
        if isinstance(value, (int, float)):
            return LcNumber(float(value), 0.0)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return LcNumber(self.re + other.re, self.fu + other.fu)

    __radd__ = __add__

    def __neg__(self):
        return LcNumber(-self.re, -self.fu)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return LcNumber(self.re - other.re, self.fu - other.fu)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        r, q = self.re, self.fu
        s, p = other.re, other.fu
        return LcNumber(r * s - q * p, s * q + r * p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        r, q = self.re, self.fu
        s, p = other.re, other.fu
        denom = s * s + p * p
        if denom == 0.0:
            raise ZeroDivisionError("division by the zero element")
        return LcNumber((r * s + q * p) / denom, (q * s - r * p) / denom)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n):
        if isinstance(n, int):
            return pow_int(self, n)
        return NotImplemented

    def __abs__(self) -> float:
        return math.hypot(self.re, self.fu)

    def norm(self) -> float:
        return math.hypot(self.re, self.fu)

    def conjugate(self) -> "LcNumber":
        return LcNumber(self.re, -self.fu)

    def is_zero(self) -> bool:
        return self.re == 0.0 and self.fu == 0.0

    def __repr__(self):
        return f"LcNumber({self.re!r}, {self.fu!r})"


ZERO = LcNumber(0.0, 0.0)
ONE = LcNumber(1.0, 0.0)


def add(b: LcNumber, c: LcNumber) -> LcNumber:
    return b + c


def sub(b: LcNumber, c: LcNumber) -> LcNumber:
    return b - c


def mul(b: LcNumber, c: LcNumber) -> LcNumber:
    return b * c


def div(b: LcNumber, c: LcNumber) -> LcNumber:
    return b / c


def norm_phi(z: LcNumber) -> float:
    """Euclidean norm of the coefficient pair."""
    return math.hypot(z.re, z.fu)


def conjugate(z: LcNumber) -> LcNumber:
    """Negate the fuzzy coefficient; ``z * conjugate(z)`` is the squared norm."""
    return LcNumber(z.re, -z.fu)


@dataclass(frozen=True)
class PolarForm:
    """Polar coordinates ``(modulus, argument)`` with argument in (-pi, pi]."""

    modulus: float
    argument: float


def to_polar(z: LcNumber) -> PolarForm:
    """Polar decomposition; the zero element has no argument."""
    if z.is_zero():
        raise ValueError("argument of the zero element is undefined")
    arg = math.atan2(z.fu, z.re)
    if arg <= -math.pi:
        arg = math.pi
    return PolarForm(math.hypot(z.re, z.fu), arg)


def from_polar(p: PolarForm) -> LcNumber:
    return LcNumber(p.modulus * math.cos(p.argument), p.modulus * math.sin(p.argument))


def pow_int(z: LcNumber, n: int) -> LcNumber:
    """Integer power evaluated in polar form.

    Small exponents are answered directly so identities such as ``z**1``
    stay bitwise exact; everything else goes through the angle-multiple
    formula, and negative exponents through the reciprocal.
    """
    if n == 0:
        return ONE
    if z.is_zero():
        if n < 0:
            raise ZeroDivisionError("negative power of the zero element")
        return ZERO
    if n == 1:
        return z
    if n < 0:
        return ONE / pow_int(z, -n)
    p = to_polar(z)
    m = p.modulus**n
    return LcNumber(m * math.cos(n * p.argument), m * math.sin(n * p.argument))


def nth_root(z: LcNumber, n: int, branch: int = 0) -> LcNumber:
    """Branch ``k`` of the n-th root: modulus**(1/n) at angle (arg + 2*pi*k)/n.

    The branch index is reduced modulo ``n`` since angles repeat with that
    period.
    """
    if n < 1:
        raise ValueError(f"root order must be a positive integer, got {n}")
    if z.is_zero():
        raise ValueError("roots of the zero element are undefined")
    p = to_polar(z)
    k = branch % n
    m = p.modulus ** (1.0 / n)
    ang = (p.argument + 2.0 * math.pi * k) / n
    return LcNumber(m * math.cos(ang), m * math.sin(ang))


@dataclass(frozen=True)
class AlphaBand:
    """One alpha-level of an element: a closed interval tagged with its alpha."""

    alpha: float
    lower: float
    upper: float

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if self.lower > self.upper:
            raise ValueError(f"band endpoints out of order: [{self.lower}, {self.upper}]")

    def contains(self, other: "AlphaBand") -> bool:
        return self.lower <= other.lower and other.upper <= self.upper

    def width(self) -> float:
        return self.upper - self.lower


def alpha_cut(z: LcNumber, basis: BasisNumber, alpha: float) -> AlphaBand:
    """The alpha-level of ``z``: ``{re + fu*x : x in [A]_alpha}``.

    The fuzzy coefficient's sign decides which basis endpoint lands where;
    a crisp element collapses to the point ``re``.
    """
    lo, hi = basis.level(alpha)
    if z.fu >= 0.0:
        return AlphaBand(alpha, z.re + z.fu * lo, z.re + z.fu * hi)
    return AlphaBand(alpha, z.re + z.fu * hi, z.re + z.fu * lo)


def d_infty(b: LcNumber, c: LcNumber, basis: BasisNumber, grid_size: int = 101) -> float:
    """Sup metric: largest endpoint distance of the alpha-levels over a grid."""
    if grid_size < 2:
        raise ValueError(f"grid_size must be at least 2, got {grid_size}")
    worst = 0.0
    for i in range(grid_size):
        alpha = i / (grid_size - 1)
        band_b = alpha_cut(b, basis, alpha)
        band_c = alpha_cut(c, basis, alpha)
        worst = max(
            worst,
            abs(band_b.lower - band_c.lower),
            abs(band_b.upper - band_c.upper),
        )
    return worst


@dataclass(frozen=True)
class LcSpace:
    """A validated basis plus the helpers that need one.

    Construction is the single choke point that rejects a symmetric basis;
    the coefficient arithmetic itself never looks at it.
    """

    basis: BasisNumber
    grid_size: int = 101
    eps: float = 1e-9

    def __post_init__(self):
        if not is_asymmetric(self.basis, self.grid_size, self.eps):
            raise ValueError("basis fuzzy number is symmetric; coefficient pairs would not be unique")

    def number(self, re: float, fu: float = 0.0) -> LcNumber:
        return LcNumber(re, fu)

    def alpha_cut(self, z: LcNumber, alpha: float) -> AlphaBand:
        return alpha_cut(z, self.basis, alpha)

    def bands(self, z: LcNumber, alphas) -> list[AlphaBand]:
        return [alpha_cut(z, self.basis, a) for a in alphas]

    def d_infty(self, b: LcNumber, c: LcNumber, grid_size: int | None = None) -> float:
        return d_infty(b, c, self.basis, grid_size or self.grid_size)

    @property
    def a1(self) -> float:
        """The singleton 1-level of the basis, required by the cross product."""
        return self.basis.one_level_value()
