"""Gaussian-rational scalars, tolerance-based float fallback, and on-shell momenta.

Every coefficient, matrix entry, and field component in this package is one
of the two scalar types defined here.  ``ExactScalar`` is a complex number
with ``fractions.Fraction`` real and imaginary parts; its arithmetic never
rounds.  ``ApproxScalar`` is a complex double with tolerance-aware equality,
used only where a mass parameter is swept continuously.  Mixed arithmetic
degrades exact to approximate, never the other way around.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence, Union

from .exceptions import DivisionByZero, NotExactlyOnShell

Rational = Union[int, Fraction]

_DEFAULT_TOLERANCE = 1e-12
_tolerance = _DEFAULT_TOLERANCE


def tolerance() -> float:
    """Ambient tolerance used by ApproxScalar comparisons."""
    return _tolerance


def set_tolerance(eps: float) -> None:
    global _tolerance
    if eps <= 0:
        raise ValueError("tolerance must be positive")
    _tolerance = float(eps)


def reset_tolerance() -> None:
    global _tolerance
    _tolerance = _DEFAULT_TOLERANCE


class ExactScalar:
    """Complex number with rational real and imaginary parts.

    Fraction keeps both parts reduced (gcd = 1, positive denominator), so
    values are always canonical.  Instances are treated as immutable.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: Rational = 0, im: Rational = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(value) -> "ExactScalar | None":
        if isinstance(value, ExactScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return ExactScalar(value)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ExactScalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ExactScalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ExactScalar(other.re - self.re, other.im - self.im)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ExactScalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise DivisionByZero("exact division by zero")
        return ExactScalar(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self):
        return ExactScalar(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> "ExactScalar":
        return ExactScalar(self.re, -self.im)

    def abs2(self) -> Fraction:
        """|z|^2, exact."""
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return math.sqrt(float(self.abs2()))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def as_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"ExactScalar({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_scalar(self)


EXACT_ZERO = ExactScalar(0)
EXACT_ONE = ExactScalar(1)
IMAG_UNIT = ExactScalar(0, 1)


class ApproxScalar:
    """Complex double whose equality uses the ambient tolerance.

    Two values compare equal when ``|x - y| <= tol * max(1, |x|, |y|)``.
    Unhashable by design: tolerance equality is not transitive.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: float = 0.0, im: float = 0.0):
        self.re = float(re)
        self.im = float(im)

    @staticmethod
    def _coerce(value) -> "ApproxScalar | None":
        if isinstance(value, ApproxScalar):
            return value
        if isinstance(value, ExactScalar):
            return ApproxScalar(float(value.re), float(value.im))
        if isinstance(value, (int, float, Fraction)):
            return ApproxScalar(float(value))
        if isinstance(value, complex):
            return ApproxScalar(value.real, value.imag)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ApproxScalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ApproxScalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ApproxScalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        norm = other.re * other.re + other.im * other.im
        if norm == 0.0:
            raise DivisionByZero("division by zero")
        return ApproxScalar(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self):
        return ApproxScalar(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> "ApproxScalar":
        return ApproxScalar(self.re, -self.im)

    def abs2(self) -> float:
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)

    def __bool__(self) -> bool:
        return abs(self) > tolerance()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        diff = math.hypot(self.re - other.re, self.im - other.im)
        return diff <= tolerance() * max(1.0, abs(self), abs(other))

    __hash__ = None  # tolerance-based equality

    def as_complex(self) -> complex:
        return complex(self.re, self.im)

    def __repr__(self):
        return f"ApproxScalar({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[ExactScalar, ApproxScalar]

_OPS = frozenset({"add", "sub", "mul", "div", "conj"})


def scalar_arith(a: Scalar, b: Scalar | None, op: str) -> Scalar:
    """Dispatch one arithmetic operation by name.

    ``conj`` ignores ``b``.  Division by zero raises DivisionByZero.
    """
    if op not in _OPS:
        raise ValueError(f"unknown operation {op!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    return a.conjugate()


def make_scalar(value, exact: bool) -> Scalar:
    """Wrap a raw number in the scalar type for the given mode."""
    if exact:
        if isinstance(value, ExactScalar):
            return value
        return ExactScalar(value)
    if isinstance(value, ApproxScalar):
        return value
    coerced = ApproxScalar._coerce(value)
    if coerced is None:
        raise TypeError(f"cannot make scalar from {value!r}")
    return coerced


def imaginary_unit(exact: bool) -> Scalar:
    return IMAG_UNIT if exact else ApproxScalar(0.0, 1.0)


def zero_scalar(exact: bool) -> Scalar:
    return EXACT_ZERO if exact else ApproxScalar(0.0)


def format_scalar(value) -> str:
    """Canonical rendering: "a/b", "c/d i", "a/b+c/d i", or "0"."""
    if isinstance(value, ExactScalar):
        re, im = value.re, value.im
        if im == 0:
            return str(re)
        im_part = f"{im} i" if im > 0 else f"-{-im} i"
        if re == 0:
            return im_part
        sign = "+" if im > 0 else "-"
        return f"{re}{sign}{abs(im)} i"
    if isinstance(value, ApproxScalar):
        if value.im == 0.0:
            return repr(value.re)
        sign = "+" if value.im >= 0 else "-"
        return f"{value.re!r}{sign}{abs(value.im)!r} i"
    return str(value)


def rational_sqrt(value: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class OnShellMomentum:
    """Four-momentum (p0, p1, p2, p3) with mass m and p0 = +sqrt(|p|^2 + m^2).

    Components are contravariant.  In exact mode all components are
    Fractions and the shell condition holds exactly; in approximate mode
    they are floats and the condition holds within the ambient tolerance.
    """

    p0: Rational | float
    p1: Rational | float
    p2: Rational | float
    p3: Rational | float
    m: Rational | float
    exact: bool = True

    def __post_init__(self):
        radicand = self.p1 * self.p1 + self.p2 * self.p2 + self.p3 * self.p3 + self.m * self.m
        shell = self.p0 * self.p0
        if self.exact:
            if shell != radicand:
                raise ValueError("momentum is not exactly on shell")
        else:
            scale = max(1.0, abs(float(shell)), abs(float(radicand)))
            if abs(float(shell) - float(radicand)) > tolerance() * scale:
                raise ValueError("momentum is off shell beyond tolerance")
        if not self.p0 > 0:
            raise ValueError("positive-energy momentum requires p0 > 0")

    @cached_property
    def upper(self) -> tuple[Scalar, Scalar, Scalar, Scalar]:
        """Contravariant components as scalars."""
        return tuple(make_scalar(c, self.exact) for c in (self.p0, self.p1, self.p2, self.p3))

    @cached_property
    def lower(self) -> tuple[Scalar, Scalar, Scalar, Scalar]:
        """Covariant components under g = diag(+,-,-,-)."""
        u = self.upper
        return (u[0], -u[1], -u[2], -u[3])

    @property
    def spatial(self):
        return (self.p1, self.p2, self.p3)

    @property
    def mass_scalar(self) -> Scalar:
        return make_scalar(self.m, self.exact)

    @property
    def p_r(self) -> Scalar:
        """p1 + i p2."""
        if self.exact:
            return ExactScalar(self.p1, self.p2)
        return ApproxScalar(self.p1, self.p2)

    @property
    def p_l(self) -> Scalar:
        """p1 - i p2."""
        return self.p_r.conjugate()

    def key(self):
        """Deterministic sort key."""
        return (self.p1, self.p2, self.p3, self.m)

    def label(self) -> str:
        return f"p=({self.p1},{self.p2},{self.p3};m={self.m})"


def mass_shell_energy(p_spatial: Sequence, m, exact: bool = True) -> OnShellMomentum:
    """Build an on-shell momentum with p0 = +sqrt(|p|^2 + m^2).

    In exact mode the spatial components and mass must be rationals whose
    radicand is a perfect rational square; otherwise NotExactlyOnShell is
    raised so the caller can fall back to approximate mode or choose a
    Pythagorean sample.
    """
    if len(p_spatial) != 3:
        raise ValueError("p_spatial must have three components")
    if exact:
        p1, p2, p3 = (Fraction(c) for c in p_spatial)
        mass = Fraction(m)
        if mass < 0:
            raise ValueError("mass must be non-negative")
        radicand = p1 * p1 + p2 * p2 + p3 * p3 + mass * mass
        p0 = rational_sqrt(radicand)
        if p0 is None:
            raise NotExactlyOnShell(f"|p|^2 + m^2 = {radicand} is not a perfect rational square")
        return OnShellMomentum(p0, p1, p2, p3, mass, exact=True)
    p1, p2, p3 = (float(c) for c in p_spatial)
    mass = float(m)
    if mass < 0:
        raise ValueError("mass must be non-negative")
    p0 = math.sqrt(p1 * p1 + p2 * p2 + p3 * p3 + mass * mass)
    return OnShellMomentum(p0, p1, p2, p3, mass, exact=False)


def pythagorean_momenta(bound: int) -> list[OnShellMomentum]:
    """All integer (p1, p2, p3, m) in [-bound, bound]^3 x [0, bound] whose
    radicand is a perfect square, in lexicographic order.

    The degenerate all-zero momentum with m = 0 is excluded.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    out = []
    for q1 in range(-bound, bound + 1):
        for q2 in range(-bound, bound + 1):
            for q3 in range(-bound, bound + 1):
                for mass in range(0, bound + 1):
                    if q1 == 0 and q2 == 0 and q3 == 0 and mass == 0:
                        continue
                    radicand = q1 * q1 + q2 * q2 + q3 * q3 + mass * mass
                    root = math.isqrt(radicand)
                    if root * root == radicand:
                        out.append(
                            OnShellMomentum(
                                Fraction(root), Fraction(q1), Fraction(q2), Fraction(q3),
                                Fraction(mass), exact=True,
                            )
                        )
    return out


def momentum_sample(count: int, min_mass: int = 1) -> list[OnShellMomentum]:
    """First ``count`` distinct Pythagorean momenta with m >= min_mass.

    Enumerates growing bounds, so the sample is stable: extending the count
    never reorders earlier entries.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    seen = set()
    sample: list[OnShellMomentum] = []
    bound = 1
    while len(sample) < count:
        for q in pythagorean_momenta(bound):
            if q.m < min_mass:
                continue
            key = q.key()
            if key in seen:
                continue
            seen.add(key)
            sample.append(q)
            if len(sample) == count:
                break
        bound += 1
        if bound > 64:
            raise RuntimeError("momentum sample exhausted the search bound")
    return sample
