"""Weyl-representation gamma matrices, the reflection operator, and
trace-orthogonal decomposition of 4x4 matrices over the Clifford basis.

Conventions (validated, not assumed: the builder runs the full identity
suite and refuses a representation that fails it):

* g = diag(+1, -1, -1, -1);
* gamma^0 has identity off-diagonal blocks, gamma^i has +sigma_i upper
  right and -sigma_i lower left, gamma^5 = i gamma^0 gamma^1 gamma^2
  gamma^3 = diag(-1, -1, +1, +1);
* sigma^{mu nu} = (i/2) [gamma^mu, gamma^nu];
* eps^{0123} = +1 by default (so eps_{0123} = -1); the sign is a
  constructor parameter so convention sensitivity can be probed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations

from .exact import EXACT_ONE, EXACT_ZERO, ExactScalar, IMAG_UNIT, Scalar
from .exceptions import RepresentationInvalid

METRIC = (1, -1, -1, -1)

_QUARTER = Fraction(1, 4)
_HALF = Fraction(1, 2)

# sign of each permutation of (0,1,2,3); zero entries are simply absent
_EPS_SIGNS: dict[tuple[int, int, int, int], int] = {}
for _perm in permutations(range(4)):
    _inversions = sum(
        1 for _i in range(4) for _j in range(_i + 1, 4) if _perm[_i] > _perm[_j]
    )
    _EPS_SIGNS[_perm] = -1 if _inversions % 2 else 1


def epsilon4(a: int, b: int, c: int, d: int) -> int:
    """Totally antisymmetric symbol with value +1 on (0,1,2,3)."""
    return _EPS_SIGNS.get((a, b, c, d), 0)


class Matrix4:
    """Immutable 4x4 matrix of scalars with exact arithmetic."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(row) for row in rows)
        if len(rows) != 4 or any(len(row) != 4 for row in rows):
            raise ValueError("Matrix4 requires a 4x4 grid")
        self.rows = rows

    @classmethod
    def zeros(cls) -> "Matrix4":
        return cls(tuple((EXACT_ZERO,) * 4 for _ in range(4)))

    @classmethod
    def identity(cls) -> "Matrix4":
        return cls.diagonal((EXACT_ONE,) * 4)

    @classmethod
    def diagonal(cls, entries) -> "Matrix4":
        return cls(
            tuple(
                tuple(entries[i] if i == j else EXACT_ZERO for j in range(4))
                for i in range(4)
            )
        )

    def __getitem__(self, i):
        return self.rows[i]

    def __add__(self, other):
        if not isinstance(other, Matrix4):
            return NotImplemented
        return Matrix4(
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            )
        )

    def __sub__(self, other):
        if not isinstance(other, Matrix4):
            return NotImplemented
        return Matrix4(
            tuple(
                tuple(a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            )
        )

    def __neg__(self):
        return Matrix4(tuple(tuple(-a for a in row) for row in self.rows))

    def __mul__(self, other):
        if isinstance(other, Matrix4):
            # skipping zero entries pays off: the basis matrices are sparse
            rows = []
            for i in range(4):
                self_row = self.rows[i]
                row = []
                for j in range(4):
                    acc = None
                    for k in range(4):
                        a = self_row[k]
                        if type(a) is ExactScalar and not (a.re or a.im):
                            continue
                        b = other.rows[k][j]
                        if type(b) is ExactScalar and not (b.re or b.im):
                            continue
                        acc = a * b if acc is None else acc + a * b
                    row.append(EXACT_ZERO if acc is None else acc)
                rows.append(tuple(row))
            return Matrix4(tuple(rows))
        return Matrix4(tuple(tuple(a * other for a in row) for row in self.rows))

    def __rmul__(self, other):
        return Matrix4(tuple(tuple(other * a for a in row) for row in self.rows))

    def transpose(self) -> "Matrix4":
        return Matrix4(tuple(tuple(self.rows[j][i] for j in range(4)) for i in range(4)))

    def dagger(self) -> "Matrix4":
        return Matrix4(
            tuple(tuple(self.rows[j][i].conjugate() for j in range(4)) for i in range(4))
        )

    def trace(self) -> Scalar:
        return self.rows[0][0] + self.rows[1][1] + self.rows[2][2] + self.rows[3][3]

    def inverse(self) -> "Matrix4":
        """Gauss-Jordan inverse, exact over the scalar field."""
        work = [list(row) for row in self.rows]
        out = [list(row) for row in Matrix4.identity().rows]
        for col in range(4):
            pivot = next((r for r in range(col, 4) if work[r][col]), None)
            if pivot is None:
                raise ZeroDivisionError("matrix is singular")
            if pivot != col:
                work[col], work[pivot] = work[pivot], work[col]
                out[col], out[pivot] = out[pivot], out[col]
            inv = EXACT_ONE / work[col][col] if isinstance(work[col][col], ExactScalar) else 1.0 / work[col][col]
            work[col] = [e * inv for e in work[col]]
            out[col] = [e * inv for e in out[col]]
            for r in range(4):
                if r == col:
                    continue
                factor = work[r][col]
                if not factor:
                    continue
                work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
                out[r] = [a - factor * b for a, b in zip(out[r], out[col])]
        return Matrix4(tuple(tuple(row) for row in out))

    def is_zero(self) -> bool:
        return all(not entry for row in self.rows for entry in row)

    def is_symmetric(self) -> bool:
        return (self - self.transpose()).is_zero()

    def is_antisymmetric(self) -> bool:
        return (self + self.transpose()).is_zero()

    def is_diagonal(self) -> bool:
        return all(not self.rows[i][j] for i in range(4) for j in range(4) if i != j)

    def __eq__(self, other):
        if not isinstance(other, Matrix4):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.rows)
        return f"Matrix4([{body}])"


def _gamma_matrices() -> tuple[Matrix4, ...]:
    one, i = EXACT_ONE, IMAG_UNIT
    zero = EXACT_ZERO
    g0 = Matrix4(
        (
            (zero, zero, one, zero),
            (zero, zero, zero, one),
            (one, zero, zero, zero),
            (zero, one, zero, zero),
        )
    )
    # Pauli blocks: gamma^k = [[0, sigma_k], [-sigma_k, 0]]
    g1 = Matrix4(
        (
            (zero, zero, zero, one),
            (zero, zero, one, zero),
            (zero, -one, zero, zero),
            (-one, zero, zero, zero),
        )
    )
    g2 = Matrix4(
        (
            (zero, zero, zero, -i),
            (zero, zero, i, zero),
            (zero, i, zero, zero),
            (-i, zero, zero, zero),
        )
    )
    g3 = Matrix4(
        (
            (zero, zero, one, zero),
            (zero, zero, zero, -one),
            (-one, zero, zero, zero),
            (zero, one, zero, zero),
        )
    )
    return (g0, g1, g2, g3)


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    equation: str
    passed: bool


@dataclass(frozen=True)
class SymmetryCheck:
    name: str
    equation: str
    expected: str  # "symmetric" | "antisymmetric"
    passed: bool


@dataclass(frozen=True)
class SymmetricBasisReport:
    """Symmetry verdicts for the sixteen expansion matrices and the six
    antisymmetric companions."""

    symmetric: tuple[SymmetryCheck, ...]
    antisymmetric: tuple[SymmetryCheck, ...]

    def all_passed(self) -> bool:
        return all(c.passed for c in self.symmetric + self.antisymmetric)


@dataclass(frozen=True)
class GammaBasis:
    """The sixteen-element Clifford basis plus the reflection operator."""

    gamma: tuple[Matrix4, Matrix4, Matrix4, Matrix4]
    gamma5: Matrix4
    sigma: tuple[tuple[Matrix4, ...], ...]
    reflection: Matrix4
    identity: Matrix4
    metric: tuple[int, int, int, int] = METRIC
    epsilon_sign: int = 1

    def eps_upper(self, a: int, b: int, c: int, d: int) -> int:
        """eps with all indices up; eps^{0123} = epsilon_sign."""
        return self.epsilon_sign * epsilon4(a, b, c, d)

    def eps_lower(self, a: int, b: int, c: int, d: int) -> int:
        """All indices down: one metric factor per index gives det g = -1."""
        return -self.eps_upper(a, b, c, d)

    @cached_property
    def axials(self) -> tuple[Matrix4, Matrix4, Matrix4, Matrix4]:
        return tuple(self.gamma5 * self.gamma[mu] for mu in range(4))

    def axial(self, mu: int) -> Matrix4:
        """gamma^5 gamma^mu."""
        return self.axials[mu]


def build_gamma_basis(epsilon_sign: int = 1) -> GammaBasis:
    """Construct the basis and run its defining identity suite.

    Raises RepresentationInvalid if any anticommutation, diagonality, or
    reflection identity fails; the suite, not the block convention, is the
    source of truth.
    """
    if epsilon_sign not in (1, -1):
        raise ValueError("epsilon_sign must be +1 or -1")
    gamma = _gamma_matrices()
    gamma5 = IMAG_UNIT * (gamma[0] * gamma[1] * gamma[2] * gamma[3])
    half_i = ExactScalar(0, _HALF)
    sigma = tuple(
        tuple(
            half_i * (gamma[mu] * gamma[nu] - gamma[nu] * gamma[mu])
            for nu in range(4)
        )
        for mu in range(4)
    )
    zero, i = EXACT_ZERO, IMAG_UNIT
    reflection = Matrix4(
        (
            (zero, -i, zero, zero),
            (i, zero, zero, zero),
            (zero, zero, zero, i),
            (zero, zero, -i, zero),
        )
    )
    basis = GammaBasis(
        gamma=gamma,
        gamma5=gamma5,
        sigma=sigma,
        reflection=reflection,
        identity=Matrix4.identity(),
        epsilon_sign=epsilon_sign,
    )
    validate_representation(basis)
    return basis


def validate_representation(basis: GammaBasis) -> None:
    """Anticommutators, diagonal gamma^5, and the reflection identity suite."""
    for mu in range(4):
        for nu in range(mu, 4):
            anti = basis.gamma[mu] * basis.gamma[nu] + basis.gamma[nu] * basis.gamma[mu]
            expect = ExactScalar(2 * (basis.metric[mu] if mu == nu else 0)) * basis.identity
            if anti != expect:
                raise RepresentationInvalid(
                    f"anticommutator of gamma^{mu}, gamma^{nu} is wrong"
                )
    if not basis.gamma5.is_diagonal():
        raise RepresentationInvalid("gamma^5 is not diagonal")
    for check in check_reflection_properties(basis):
        if not check.passed:
            raise RepresentationInvalid(f"reflection identity failed: {check.equation}")


def check_reflection_properties(basis: GammaBasis) -> list[IdentityCheck]:
    """Exact evaluation of the five defining reflection-operator identities."""
    r = basis.reflection
    r_inv = r.inverse()
    checks = [
        IdentityCheck("reflection_antisymmetric", "R^T = -R", r.transpose() == -r),
        IdentityCheck(
            "reflection_hermitian_involution",
            "R^dagger = R = R^-1",
            r.dagger() == r and r_inv == r,
        ),
        IdentityCheck(
            "gamma5_conjugation",
            "R^-1 gamma^5 R = (gamma^5)^T",
            r_inv * basis.gamma5 * r == basis.gamma5.transpose(),
        ),
        IdentityCheck(
            "gamma_conjugation",
            "R^-1 gamma^mu R = -(gamma^mu)^T",
            all(
                r_inv * basis.gamma[mu] * r == -basis.gamma[mu].transpose()
                for mu in range(4)
            ),
        ),
        IdentityCheck(
            "sigma_conjugation",
            "R^-1 sigma^{mu nu} R = -(sigma^{mu nu})^T",
            all(
                r_inv * basis.sigma[mu][nu] * r == -basis.sigma[mu][nu].transpose()
                for mu in range(4)
                for nu in range(mu + 1, 4)
            ),
        ),
    ]
    return checks


def check_symmetric_basis(basis: GammaBasis) -> SymmetricBasisReport:
    """Verify the symmetry pattern that makes the multispinor expansion exist.

    gamma^mu R (4), sigma^{mu nu} R (6), and gamma^5 sigma^{mu nu} R (6)
    must be symmetric; R, gamma^5 R, and gamma^5 gamma^mu R must be
    antisymmetric.  All comparisons are exact.
    """
    r = basis.reflection
    symmetric = []
    for mu in range(4):
        m = basis.gamma[mu] * r
        symmetric.append(
            SymmetryCheck(f"gamma{mu}_reflection", f"(gamma^{mu} R)^T = gamma^{mu} R",
                          "symmetric", m.is_symmetric())
        )
    for mu in range(4):
        for nu in range(mu + 1, 4):
            m = basis.sigma[mu][nu] * r
            symmetric.append(
                SymmetryCheck(
                    f"sigma{mu}{nu}_reflection",
                    f"(sigma^{{{mu}{nu}}} R)^T = sigma^{{{mu}{nu}}} R",
                    "symmetric", m.is_symmetric(),
                )
            )
    for mu in range(4):
        for nu in range(mu + 1, 4):
            m = basis.gamma5 * basis.sigma[mu][nu] * r
            symmetric.append(
                SymmetryCheck(
                    f"gamma5_sigma{mu}{nu}_reflection",
                    f"(gamma^5 sigma^{{{mu}{nu}}} R)^T = gamma^5 sigma^{{{mu}{nu}}} R",
                    "symmetric", m.is_symmetric(),
                )
            )
    antisymmetric = [
        SymmetryCheck("reflection", "R^T = -R", "antisymmetric", r.is_antisymmetric()),
        SymmetryCheck(
            "gamma5_reflection", "(gamma^5 R)^T = -gamma^5 R", "antisymmetric",
            (basis.gamma5 * r).is_antisymmetric(),
        ),
    ]
    for mu in range(4):
        m = basis.axial(mu) * r
        antisymmetric.append(
            SymmetryCheck(
                f"gamma5_gamma{mu}_reflection",
                f"(gamma^5 gamma^{mu} R)^T = -gamma^5 gamma^{mu} R",
                "antisymmetric", m.is_antisymmetric(),
            )
        )
    return SymmetricBasisReport(tuple(symmetric), tuple(antisymmetric))


@dataclass(frozen=True)
class CliffordCoefficients:
    """Coefficients of M = s 1 + p gamma^5 + v_mu gamma^mu
    + a_mu gamma^5 gamma^mu + (1/2) t_{mu nu} sigma^{mu nu}.

    Vector-like coefficients are stored with lower indices; t is
    antisymmetric.
    """

    s: Scalar
    p: Scalar
    v: tuple[Scalar, Scalar, Scalar, Scalar]
    a: tuple[Scalar, Scalar, Scalar, Scalar]
    t: tuple[tuple[Scalar, ...], ...]

    def reconstruct(self, basis: GammaBasis) -> Matrix4:
        out = self.s * basis.identity + self.p * basis.gamma5
        for mu in range(4):
            out = out + self.v[mu] * basis.gamma[mu]
            out = out + self.a[mu] * basis.axial(mu)
        for mu in range(4):
            for nu in range(4):
                if self.t[mu][nu]:
                    out = out + (_HALF * self.t[mu][nu]) * basis.sigma[mu][nu]
        return out

    def as_row(self) -> tuple[Scalar, ...]:
        """Flatten to the canonical slot order (s, p, v, a, t with mu < nu)."""
        flat = [self.s, self.p, *self.v, *self.a]
        for mu in range(4):
            for nu in range(mu + 1, 4):
                flat.append(self.t[mu][nu])
        return tuple(flat)


SLOT_LABELS = (
    "scalar",
    "pseudoscalar",
    *(f"vector[{mu}]" for mu in range(4)),
    *(f"axial[{mu}]" for mu in range(4)),
    *(f"tensor[{mu},{nu}]" for mu in range(4) for nu in range(mu + 1, 4)),
)


def trace_product(a: Matrix4, b: Matrix4) -> Scalar:
    """Tr(a b) without forming the product matrix."""
    acc = None
    for i in range(4):
        row = a.rows[i]
        for j in range(4):
            x = row[j]
            if type(x) is ExactScalar and not (x.re or x.im):
                continue
            y = b.rows[j][i]
            if type(y) is ExactScalar and not (y.re or y.im):
                continue
            acc = x * y if acc is None else acc + x * y
    return EXACT_ZERO if acc is None else acc


def clifford_decompose(m: Matrix4, basis: GammaBasis) -> CliffordCoefficients:
    """Trace-orthogonal projection onto the sixteen-element basis.

    The reconstruction is exact for every matrix; the round trip is a
    tested invariant, not an assumption.
    """
    s = m.trace() * _QUARTER
    p = trace_product(basis.gamma5, m) * _QUARTER
    v = tuple(
        trace_product(basis.gamma[mu], m) * _QUARTER * basis.metric[mu] for mu in range(4)
    )
    a = tuple(
        -(trace_product(basis.axial(mu), m) * _QUARTER) * basis.metric[mu] for mu in range(4)
    )
    t_rows = []
    for mu in range(4):
        row = []
        for nu in range(4):
            if mu == nu:
                row.append(EXACT_ZERO)
            else:
                row.append(
                    trace_product(basis.sigma[mu][nu], m)
                    * _QUARTER
                    * (basis.metric[mu] * basis.metric[nu])
                )
        t_rows.append(tuple(row))
    return CliffordCoefficients(s, p, v, a, tuple(t_rows))
