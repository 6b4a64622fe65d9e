"""Momentum-space polarization vectors, the antisymmetric-tensor potential,
electric and magnetic field strengths, and massless-limit scans.

Exact-mode handling of the 1/sqrt(2) prefactor carried by the helicity
+-1 vectors: the stored components are the sqrt(2)-rescaled (rational)
values and ``sqrt2_power`` records how many powers of 1/sqrt(2) the true
value carries.  Every identity checked here is homogeneous, so the factor
cancels wherever it matters; numeric output applies it explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .exact import (
    ApproxScalar,
    OnShellMomentum,
    Scalar,
    format_scalar,
    imaginary_unit,
    make_scalar,
    mass_shell_energy,
    rational_sqrt,
    zero_scalar,
)
from .exceptions import MasslessSingular
from .tensors import cross3

_SQRT2 = math.sqrt(2.0)


class Helicity(Enum):
    PLUS = "+1"
    MINUS = "-1"
    ZERO = "0"
    TIME = "0t"  # the time-like (scalar) mode, u ~ p


TRANSVERSE = (Helicity.PLUS, Helicity.MINUS, Helicity.ZERO)


class EnergySign(Enum):
    POSITIVE = "+"
    NEGATIVE = "-"


@dataclass(frozen=True)
class Normalization:
    """Overall normalization N of the field functions.

    ``mass`` means N = m with the N/m cancellation performed before any
    substitution, which is what makes the massless evaluation exact.
    """

    kind: str  # "mass" | "unit" | "custom"
    value: Fraction | None = None

    @classmethod
    def mass(cls) -> "Normalization":
        return cls("mass")

    @classmethod
    def unit(cls) -> "Normalization":
        return cls("unit")

    @classmethod
    def custom(cls, value) -> "Normalization":
        value = Fraction(value)
        if value == 0:
            raise ValueError("custom normalization must be nonzero")
        return cls("custom", value)

    def over_mass(self, p: OnShellMomentum) -> Scalar:
        """N/m as a scalar; requires m > 0 unless the cancellation is exact."""
        if self.kind == "mass":
            return make_scalar(1, p.exact)
        if p.m == 0:
            raise MasslessSingular("N/m is singular at m = 0 unless N = m")
        if self.kind == "unit":
            return make_scalar(1, p.exact) / p.mass_scalar
        return make_scalar(self.value, p.exact) / p.mass_scalar

    def squared_over_mass(self, p: OnShellMomentum) -> Scalar:
        """N^2/m; for N = m this is just m."""
        if self.kind == "mass":
            return p.mass_scalar
        if p.m == 0:
            raise MasslessSingular("N^2/m is singular at m = 0 unless N = m")
        n = make_scalar(1 if self.kind == "unit" else self.value, p.exact)
        return n * n / p.mass_scalar

    def label(self) -> str:
        if self.kind == "mass":
            return "N=m"
        if self.kind == "unit":
            return "N=1"
        return f"N={self.value}"


@dataclass(frozen=True)
class PolarizationVector:
    """Contravariant components u^mu for one helicity at one momentum."""

    components: tuple[Scalar, Scalar, Scalar, Scalar]
    momentum: OnShellMomentum
    helicity: Helicity
    normalization: Normalization
    sqrt2_power: int = 0

    @property
    def spatial(self):
        return self.components[1:]

    def lowered(self):
        c = self.components
        return (c[0], -c[1], -c[2], -c[3])

    def conjugated(self) -> "PolarizationVector":
        return PolarizationVector(
            tuple(c.conjugate() for c in self.components),
            self.momentum, self.helicity, self.normalization, self.sqrt2_power,
        )

    def numeric(self) -> tuple[complex, ...]:
        scale = _SQRT2 ** -self.sqrt2_power
        return tuple(c.as_complex() * scale for c in self.components)

    def dot_momentum(self) -> Scalar:
        """g^{mu nu} p_mu u_nu, i.e. p_mu u^mu."""
        pl = self.momentum.lower
        acc = pl[0] * self.components[0]
        for mu in range(1, 4):
            acc = acc + pl[mu] * self.components[mu]
        return acc


def u_vector(p: OnShellMomentum, helicity: Helicity, normalization: Normalization) -> PolarizationVector:
    """The four polarization column vectors.

    Uses p_r = p1 + i p2 and p_l = p1 - i p2.  For helicity +-1 the stored
    components are sqrt(2) times the true ones (sqrt2_power = 1) so exact
    mode stays rational.  m = 0 is allowed only for N = m, where the N/m
    cancellation leaves every entry finite (p must be nonzero).
    """
    nm = normalization.over_mass(p)
    m = p.mass_scalar
    p0, p1, p2, p3 = p.upper
    denom = p0 + m
    if not denom:
        raise ValueError("p0 + m vanished; the momentum is degenerate")
    i = imaginary_unit(p.exact)
    if helicity is Helicity.TIME:
        comps = (nm * p0, nm * p1, nm * p2, nm * p3)
        return PolarizationVector(comps, p, helicity, normalization, 0)
    if helicity is Helicity.ZERO:
        comps = (
            nm * p3,
            nm * (p1 * p3 / denom),
            nm * (p2 * p3 / denom),
            nm * (m + p3 * p3 / denom),
        )
        return PolarizationVector(comps, p, helicity, normalization, 0)
    if helicity is Helicity.PLUS:
        pr = p.p_r
        comps = (
            -(nm * pr),
            -(nm * (m + p1 * pr / denom)),
            -(nm * (i * m + p2 * pr / denom)),
            -(nm * (p3 * pr / denom)),
        )
    elif helicity is Helicity.MINUS:
        pl = p.p_l
        comps = (
            nm * pl,
            nm * (m + p1 * pl / denom),
            nm * (-(i * m) + p2 * pl / denom),
            nm * (p3 * pl / denom),
        )
    else:
        raise ValueError(f"unknown helicity {helicity!r}")
    if p.exact:
        return PolarizationVector(comps, p, helicity, normalization, 1)
    scale = 1.0 / _SQRT2
    return PolarizationVector(tuple(scale * c for c in comps), p, helicity, normalization, 0)


def negative_energy(u: PolarizationVector) -> PolarizationVector:
    """Negative-energy counterpart: componentwise complex conjugation."""
    return u.conjugated()


def ast_potential(p: OnShellMomentum, normalization: Normalization):
    """Antisymmetric tensor potential A^{mu nu}(p), contravariant, built
    from the transverse polarization pair.

    The prefactor is i N^2 / m; with N = m it reduces to i m, so the exact
    m = 0 evaluation is well defined (and vanishes entirely for motion
    along OZ).
    """
    pref = imaginary_unit(p.exact) * normalization.squared_over_mass(p)
    m = p.mass_scalar
    p0, p1, p2, p3 = p.upper
    denom = p0 + m
    if not denom:
        raise ValueError("p0 + m vanished; the momentum is degenerate")
    zero = zero_scalar(p.exact)
    prpl = p.p_r * p.p_l  # = p1^2 + p2^2
    a12 = m + prpl / denom
    a13 = p2 * p3 / denom
    a23 = -(p1 * p3 / denom)
    rows = (
        (zero, -p2, p1, zero),
        (p2, zero, a12, a13),
        (-p1, -a12, zero, a23),
        (zero, -a13, -a23, zero),
    )
    return tuple(tuple(pref * entry for entry in row) for row in rows)


@dataclass(frozen=True)
class FieldStrength3:
    """Magnetic and electric three-vectors for one helicity and energy sign."""

    b: tuple[Scalar, Scalar, Scalar]
    e: tuple[Scalar, Scalar, Scalar]
    sign: EnergySign
    sqrt2_power: int = 0

    def numeric(self):
        scale = _SQRT2 ** -self.sqrt2_power
        return (
            tuple(c.as_complex() * scale for c in self.b),
            tuple(c.as_complex() * scale for c in self.e),
        )

    def __eq__(self, other):
        if not isinstance(other, FieldStrength3):
            return NotImplemented
        return (
            self.sqrt2_power == other.sqrt2_power
            and self.sign == other.sign
            and all(a == b for a, b in zip(self.b, other.b))
            and all(a == b for a, b in zip(self.e, other.e))
        )

    __hash__ = None


def strengths_closed_form(p: OnShellMomentum, helicity: Helicity, normalization: Normalization) -> FieldStrength3:
    """The six printed strength column vectors (positive energy).

    As with u_vector, helicity +-1 results are stored sqrt(2)-scaled.
    """
    if helicity not in TRANSVERSE:
        raise ValueError("strengths exist for helicities +1, 0, -1")
    nm = normalization.over_mass(p)
    m = p.mass_scalar
    p0, p1, p2, p3 = p.upper
    denom = p0 + m
    i = imaginary_unit(p.exact)
    zero = zero_scalar(p.exact)
    half = Fraction(1, 2)
    if helicity is Helicity.ZERO:
        pref = i * nm * half
        b = (pref * p2, -(pref * p1), zero)
        e = (
            -(pref * (p1 * p3 / denom)),
            -(pref * (p2 * p3 / denom)),
            pref * (p0 - p3 * p3 / denom),
        )
        return FieldStrength3(b, e, EnergySign.POSITIVE, 0)
    power = 1 if p.exact else 0
    scale = make_scalar(1, p.exact) if p.exact else ApproxScalar(1.0 / _SQRT2)
    if helicity is Helicity.PLUS:
        pr = p.p_r
        pref = -(i * nm * half) * scale
        b = (pref * (-(i * p3)), pref * p3, pref * (i * pr))
        e = (
            pref * (p0 - p1 * pr / denom),
            pref * (i * p0 - p2 * pr / denom),
            -(pref * (p3 * pr / denom)),
        )
    else:
        pl = p.p_l
        pref = (i * nm * half) * scale
        b = (pref * (i * p3), pref * p3, -(pref * (i * pl)))
        e = (
            pref * (p0 - p1 * pl / denom),
            pref * (-(i * p0) - p2 * pl / denom),
            -(pref * (p3 * pl / denom)),
        )
    return FieldStrength3(b, e, EnergySign.POSITIVE, power)


def strengths_from_u(
    p: OnShellMomentum,
    helicity: Helicity,
    normalization: Normalization,
    sign: EnergySign = EnergySign.POSITIVE,
) -> FieldStrength3:
    """Generate B and E from the polarization vector:
    B = +- (i/2m) p x u,  E = +- (i/2m) p0 u -+ (i/2m) p u^0,
    with the conjugated vector for the negative-energy sign.

    Requires m > 0: the massless cancellation happens inside p x u and is
    not available termwise.
    """
    if p.m == 0:
        raise MasslessSingular("generated strengths need m > 0")
    u = u_vector(p, helicity, normalization)
    if sign is EnergySign.NEGATIVE:
        u = u.conjugated()
    i = imaginary_unit(p.exact)
    front = i / (2 * p.mass_scalar)
    if sign is EnergySign.NEGATIVE:
        front = -front
    p_spatial = p.upper[1:]
    b = tuple(front * c for c in cross3(p_spatial, u.spatial))
    p0 = p.upper[0]
    u0 = u.components[0]
    e = tuple(front * (p0 * us) - front * (ps * u0) for us, ps in zip(u.spatial, p_spatial))
    return FieldStrength3(b, e, sign, u.sqrt2_power)


@dataclass(frozen=True)
class ComponentTrajectory:
    label: str
    magnitudes: tuple[tuple[float, float], ...]  # (m, |value|)
    classification: str  # "convergent" | "divergent"
    slope: float | None
    divergence_order: int | None
    limit_magnitude: float | None
    exact_massless: str | None


@dataclass(frozen=True)
class LimitReport:
    quantity: str  # "u" | "ast"
    helicity: Helicity | None
    normalization: Normalization
    spatial: tuple
    components: tuple[ComponentTrajectory, ...]


def _fit_slope(points: list[tuple[float, float]]) -> float:
    """Least-squares slope of log|value| against log m."""
    xs = [math.log(m) for m, _ in points]
    ys = [math.log(v) for _, v in points]
    n = len(points)
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    sxx = sum((x - mean_x) ** 2 for x in xs)
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    return sxy / sxx


_ZERO_FLOOR = 1e-250


def _classify(label: str, magnitudes, exact_massless) -> ComponentTrajectory:
    smallest_m = min(m for m, _ in magnitudes)
    window = smallest_m * 1.0e3  # last three decades of the sweep
    fit_points = [(m, v) for m, v in magnitudes if v > _ZERO_FLOOR and m <= window * (1 + 1e-9)]
    if len(fit_points) < 2:
        return ComponentTrajectory(label, magnitudes, "convergent", None, None, 0.0, exact_massless)
    slope = _fit_slope(fit_points)
    if slope < -0.5:
        order = round(-slope)
        return ComponentTrajectory(label, magnitudes, "divergent", slope, order, None, exact_massless)
    limit = min(fit_points, key=lambda pt: pt[0])[1]
    return ComponentTrajectory(label, magnitudes, "convergent", slope, None, limit, exact_massless)


def default_mass_sequence(m_max: float = 1e-3, m_min: float = 1e-6, points: int = 13):
    """Log-spaced decreasing mass sweep."""
    if points < 2 or m_min <= 0 or m_max <= m_min:
        raise ValueError("need points >= 2 and 0 < m_min < m_max")
    ratio = (m_min / m_max) ** (1.0 / (points - 1))
    return tuple(m_max * ratio**k for k in range(points))


def massless_limit_scan(
    p_spatial,
    helicity: Helicity | None,
    normalization: Normalization,
    m_sequence,
    quantity: str = "u",
) -> LimitReport:
    """Sweep m -> 0 and classify each component as convergent or divergent.

    ``quantity`` selects the polarization vector ("u", needs a helicity) or
    the tensor potential ("ast").  For N = m the exact m = 0 value is also
    evaluated whenever |p| is exactly rational.
    """
    seq = tuple(float(m) for m in m_sequence)
    if not seq or any(m <= 0 for m in seq) or any(a <= b for a, b in zip(seq, seq[1:])):
        raise ValueError("m_sequence must be strictly decreasing and positive")
    if quantity == "u" and helicity is None:
        raise ValueError("scanning u requires a helicity")

    def labelled_components(pt):
        if quantity == "u":
            u = u_vector(pt, helicity, normalization)
            vals = u.numeric()
            return [(f"u[{mu}]", vals[mu]) for mu in range(4)]
        if quantity == "ast":
            grid = ast_potential(pt, normalization)
            return [
                (f"A[{a},{b}]", grid[a][b].as_complex())
                for a in range(4)
                for b in range(a + 1, 4)
            ]
        raise ValueError(f"unknown quantity {quantity!r}")

    per_component: dict[str, list[tuple[float, float]]] = {}
    order: list[str] = []
    for m in seq:
        pt = mass_shell_energy(p_spatial, m, exact=False)
        for label, value in labelled_components(pt):
            if label not in per_component:
                per_component[label] = []
                order.append(label)
            per_component[label].append((m, abs(value)))

    exact_values: dict[str, str] = {}
    if normalization.kind == "mass":
        try:
            spatial_fracs = tuple(Fraction(c) for c in p_spatial)
            norm = rational_sqrt(sum(c * c for c in spatial_fracs))
        except (TypeError, ValueError):
            norm = None
        if norm is not None and norm > 0:
            pt0 = mass_shell_energy(spatial_fracs, 0, exact=True)
            if quantity == "u":
                u0 = u_vector(pt0, helicity, normalization)
                for mu in range(4):
                    exact_values[f"u[{mu}]"] = format_scalar(u0.components[mu])
            else:
                grid = ast_potential(pt0, normalization)
                for a in range(4):
                    for b in range(a + 1, 4):
                        exact_values[f"A[{a},{b}]"] = format_scalar(grid[a][b])

    components = tuple(
        _classify(label, tuple(per_component[label]), exact_values.get(label))
        for label in order
    )
    return LimitReport(quantity, helicity, normalization, tuple(p_spatial), components)


@dataclass(frozen=True)
class CrossProductRecord:
    family: str  # "u" | "B" | "E"
    left: Helicity
    right: Helicity
    vector: tuple[str, str, str]
    parallel_fraction: str | None  # exact |v_par|^2 / |v|^2, None for v = 0
    perpendicular_zero: bool


def _spatial_vectors(p, normalization, family):
    out = {}
    for h in TRANSVERSE:
        if family == "u":
            out[h] = u_vector(p, h, normalization).spatial
        else:
            s = strengths_closed_form(p, h, normalization)
            out[h] = s.b if family == "B" else s.e
    return out


def cross_product_diagnostics(p: OnShellMomentum, normalization: Normalization) -> list[CrossProductRecord]:
    """Cross products X(h) x conj(X(h')) for X in {u, B, E}, decomposed
    into components parallel and perpendicular to the spatial momentum.

    The parallel fraction |v_par|^2 / |v|^2 is exact (it is scale free, so
    the sqrt(2) bookkeeping cancels).
    """
    if p.m == 0:
        raise MasslessSingular("cross-product diagnostics need m > 0")
    p_spatial = p.upper[1:]
    p_norm2 = p_spatial[0] * p_spatial[0] + p_spatial[1] * p_spatial[1] + p_spatial[2] * p_spatial[2]
    records = []
    for family in ("u", "B", "E"):
        vectors = _spatial_vectors(p, normalization, family)
        for h in TRANSVERSE:
            for hp in TRANSVERSE:
                v = cross3(vectors[h], tuple(c.conjugate() for c in vectors[hp]))
                v_abs2 = v[0].abs2() + v[1].abs2() + v[2].abs2()
                if not v_abs2:
                    records.append(
                        CrossProductRecord(family, h, hp, tuple(format_scalar(c) for c in v), None, True)
                    )
                    continue
                dot = v[0] * p_spatial[0] + v[1] * p_spatial[1] + v[2] * p_spatial[2]
                alpha = dot / p_norm2
                par2 = alpha.abs2() * p_norm2
                perp = tuple(c - alpha * ps for c, ps in zip(v, p_spatial))
                perp_zero = all(not c for c in perp)
                fraction = par2 / v_abs2
                records.append(
                    CrossProductRecord(
                        family, h, hp,
                        tuple(format_scalar(c) for c in v),
                        str(fraction),
                        perp_zero,
                    )
                )
    return records


def pairing_table(p: OnShellMomentum, normalization: Normalization):
    """g^{mu nu} u_mu(h) conj(u_nu(h')) for all helicity pairs.

    Returns a dict keyed by (h, h') with values (scalar, sqrt2_power)
    reduced so even powers of 1/sqrt(2) are folded into the scalar.
    """
    metric = (1, -1, -1, -1)
    vectors = {h: u_vector(p, h, normalization) for h in Helicity}
    table = {}
    for h, u in vectors.items():
        for hp, w in vectors.items():
            acc = zero_scalar(p.exact)
            for mu in range(4):
                acc = acc + metric[mu] * (u.components[mu] * w.components[mu].conjugate())
            power = u.sqrt2_power + w.sqrt2_power
            if power >= 2:
                acc = acc / 2
                power -= 2
            table[(h, hp)] = (acc, power)
    return table
