"""Multispinor assembly and machine derivation of the spin-1 systems.

The rank-2 multispinor is written as Psi = Phi R where Phi is a Clifford
combination of the field components and R is the reflection operator.  The
Dirac-operator pair acting on the first and second spinor index is applied
in momentum space with the positive-energy plane-wave convention
``Psi(x) = Psi(p) exp(-i p.x)``, so ``i d_mu -> p_mu``.

Summing and subtracting the pair yields a commutator and an anticommutator
equation for Phi.  Because everything is linear in the field components,
the full equation system at a fixed momentum is extracted mechanically:
evaluate on each unit field configuration, decompose over the Clifford
basis, and read one linear equation off every nonvanishing slot.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .clifford import SLOT_LABELS, GammaBasis, Matrix4, clifford_decompose
from .exact import OnShellMomentum, Scalar, make_scalar, zero_scalar
from .tensors import is_antisymmetric, zeros_mat, zeros_vec


@dataclass(frozen=True)
class SingleMassCouplings:
    """Coefficients of the four terms of the single-mass expansion.

    ``vector_potential`` multiplies m A_mu, ``vector_strength`` multiplies
    F_mu, ``tensor_potential`` multiplies m A_{mu nu} (through the axial
    sigma term), and ``tensor_strength`` multiplies F_{mu nu}.
    """

    vector_potential: Fraction
    vector_strength: Fraction
    tensor_potential: Fraction
    tensor_strength: Fraction
    mass: Fraction

    variant = "single_mass"

    def __post_init__(self):
        if self.mass < 0:
            raise ValueError("mass must be non-negative")

    @classmethod
    def classical(cls, mass) -> "SingleMassCouplings":
        """The coefficient choice that reduces to the ordinary massive
        vector-field system."""
        return cls(Fraction(1), Fraction(0), Fraction(0), Fraction(1, 2), Fraction(mass))

    def with_mass(self, mass) -> "SingleMassCouplings":
        return replace(self, mass=Fraction(mass))


@dataclass(frozen=True)
class TwoMassCouplings:
    """Coefficients and masses of the two-mass expansion.

    ``strength_coupling`` multiplies the field-strength sigma term,
    ``potential_coupling`` the axial tensor-potential term;
    ``pseudoscalar_mass`` enters the Dirac operator through gamma^5.
    """

    strength_coupling: Fraction
    potential_coupling: Fraction
    scalar_mass: Fraction
    pseudoscalar_mass: Fraction

    variant = "two_mass"

    def __post_init__(self):
        if self.scalar_mass < 0 or self.pseudoscalar_mass < 0:
            raise ValueError("masses must be non-negative")

    def with_mass(self, mass) -> "TwoMassCouplings":
        return replace(self, scalar_mass=Fraction(mass))


Couplings = SingleMassCouplings | TwoMassCouplings


@dataclass(frozen=True)
class Spin1Fields:
    """Momentum-space field components, all stored covariant.

    ``tensor_potential`` and ``tensor_strength`` must be exactly
    antisymmetric.  ``vector_field`` is the four-vector of the two-mass
    system and is ignored by the single-mass expansion.
    """

    vector_potential: tuple
    vector_strength: tuple
    tensor_potential: tuple
    tensor_strength: tuple
    vector_field: tuple

    def __post_init__(self):
        for name in ("tensor_potential", "tensor_strength"):
            if not is_antisymmetric(getattr(self, name)):
                raise ValueError(f"{name} must be antisymmetric")

    @classmethod
    def zeros(cls, exact: bool = True) -> "Spin1Fields":
        return cls(
            zeros_vec(exact), zeros_vec(exact), zeros_mat(exact), zeros_mat(exact),
            zeros_vec(exact),
        )

    def replace(self, **kwargs) -> "Spin1Fields":
        return replace(self, **kwargs)


_VECTOR_FIELDS = ("vector_potential", "vector_strength", "vector_field")
_TENSOR_FIELDS = ("tensor_potential", "tensor_strength")


def field_basis(variant: str, exact: bool = True) -> list[tuple[str, Spin1Fields]]:
    """Unit field configurations spanning the field space of a variant.

    single_mass: A (4) + F (4) + A2 (6) + F2 (6) = 20 columns;
    two_mass: vector_field (4) + F2 (6) + A2 (6) = 16 columns.
    """
    if variant == "single_mass":
        vector_names = ("vector_potential", "vector_strength")
    elif variant == "two_mass":
        vector_names = ("vector_field",)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    one = make_scalar(1, exact)
    zero = zero_scalar(exact)
    out = []
    base = Spin1Fields.zeros(exact)
    for name in vector_names:
        for mu in range(4):
            vec = tuple(one if i == mu else zero for i in range(4))
            out.append((f"{name}[{mu}]", base.replace(**{name: vec})))
    for name in _TENSOR_FIELDS:
        for mu in range(4):
            for nu in range(mu + 1, 4):
                grid = tuple(
                    tuple(
                        one if (a, b) == (mu, nu) else (-one if (a, b) == (nu, mu) else zero)
                        for b in range(4)
                    )
                    for a in range(4)
                )
                out.append((f"{name}[{mu},{nu}]", base.replace(**{name: grid})))
    return out


def _clifford_combination(couplings: Couplings, fields: Spin1Fields, basis: GammaBasis) -> Matrix4:
    """Phi such that the multispinor is Phi R."""
    out = Matrix4.zeros()
    if couplings.variant == "single_mass":
        m = couplings.mass
        for mu in range(4):
            coeff = (
                couplings.vector_potential * m * fields.vector_potential[mu]
                + couplings.vector_strength * fields.vector_strength[mu]
            )
            if coeff:
                out = out + coeff * basis.gamma[mu]
        for mu in range(4):
            for nu in range(4):
                if mu == nu:
                    continue
                c_pot = couplings.tensor_potential * m * fields.tensor_potential[mu][nu]
                c_str = couplings.tensor_strength * fields.tensor_strength[mu][nu]
                if c_pot:
                    out = out + c_pot * (basis.gamma5 * basis.sigma[mu][nu])
                if c_str:
                    out = out + c_str * basis.sigma[mu][nu]
        return out
    for mu in range(4):
        if fields.vector_field[mu]:
            out = out + fields.vector_field[mu] * basis.gamma[mu]
    for mu in range(4):
        for nu in range(4):
            if mu == nu:
                continue
            c_str = couplings.strength_coupling * fields.tensor_strength[mu][nu]
            c_pot = couplings.potential_coupling * fields.tensor_potential[mu][nu]
            if c_str:
                out = out + c_str * basis.sigma[mu][nu]
            if c_pot:
                out = out + c_pot * (basis.gamma5 * basis.sigma[mu][nu])
    return out


def assemble_multispinor(couplings: Couplings, fields: Spin1Fields, basis: GammaBasis) -> Matrix4:
    """The rank-2 multispinor Phi R; symmetric for every field configuration."""
    return _clifford_combination(couplings, fields, basis) * basis.reflection


def momentum_slash(p: OnShellMomentum, basis: GammaBasis) -> Matrix4:
    """gamma^mu p_mu."""
    pl = p.lower
    out = pl[0] * basis.gamma[0]
    for mu in range(1, 4):
        out = out + pl[mu] * basis.gamma[mu]
    return out


def _mass_matrix(couplings: Couplings, basis: GammaBasis) -> Matrix4:
    if couplings.variant == "single_mass":
        return couplings.mass * basis.identity
    return couplings.scalar_mass * basis.identity + couplings.pseudoscalar_mass * basis.gamma5


def apply_dirac_operator(
    psi: Matrix4,
    p: OnShellMomentum,
    couplings: Couplings,
    side: str,
    basis: GammaBasis,
) -> Matrix4:
    """Apply the momentum-space Dirac operator to one spinor index.

    ``first_index`` gives (pslash - M) Psi; ``second_index`` contracts the
    operator on the second index, i.e. Psi (pslash^T - M^T).
    """
    slash = momentum_slash(p, basis)
    mass = _mass_matrix(couplings, basis)
    if side == "first_index":
        return (slash - mass) * psi
    if side == "second_index":
        return psi * (slash.transpose() - mass.transpose())
    raise ValueError(f"side must be 'first_index' or 'second_index', got {side!r}")


def pair_sum_matrix(couplings: Couplings, phi: Matrix4, p: OnShellMomentum, basis: GammaBasis) -> Matrix4:
    """Sum of the operator pair, reduced with the reflection identities:
    [pslash, Phi] - 2 m1 Phi - m2 {gamma^5, Phi}.  The full sum equals this
    matrix times R."""
    slash = momentum_slash(p, basis)
    if couplings.variant == "single_mass":
        m1, m2 = couplings.mass, Fraction(0)
    else:
        m1, m2 = couplings.scalar_mass, couplings.pseudoscalar_mass
    out = slash * phi - phi * slash - (2 * m1) * phi
    if m2:
        g5 = basis.gamma5
        out = out - m2 * (g5 * phi + phi * g5)
    return out


def pair_difference_matrix(couplings: Couplings, phi: Matrix4, p: OnShellMomentum, basis: GammaBasis) -> Matrix4:
    """Difference of the operator pair over R:
    {pslash, Phi} - m2 [gamma^5, Phi]."""
    slash = momentum_slash(p, basis)
    out = slash * phi + phi * slash
    if couplings.variant == "two_mass" and couplings.pseudoscalar_mass:
        g5 = basis.gamma5
        out = out - couplings.pseudoscalar_mass * (g5 * phi - phi * g5)
    return out


@dataclass(frozen=True)
class LinearEquation:
    """One scalar equation: sum_j coefficients[j] * field_component[j] = 0."""

    kind: str  # "dynamics" (from the pair sum) | "constraint" (difference)
    name: str  # slot or transcribed-equation label, e.g. "tensor[0,1]"
    coefficients: tuple[Scalar, ...]

    def is_zero(self) -> bool:
        return all(not c for c in self.coefficients)


@dataclass(frozen=True)
class LinearSystem:
    """A linear map from field components to equation residuals at one
    momentum.  Identically-zero equations are dropped."""

    variant: str
    momentum: OnShellMomentum
    column_labels: tuple[str, ...]
    equations: tuple[LinearEquation, ...]

    def by_name(self) -> dict[str, LinearEquation]:
        return {eq.name: eq for eq in self.equations}

    def rank(self) -> int:
        return _matrix_rank([list(eq.coefficients) for eq in self.equations])


def _matrix_rank(rows: list[list[Scalar]]) -> int:
    """Row-echelon rank over the exact (or tolerance) scalar field."""
    rows = [row[:] for row in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot_row = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        pivot = rows[rank][col]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                factor = rows[r][col] / pivot
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def derive_system(couplings: Couplings, p: OnShellMomentum, basis: GammaBasis) -> LinearSystem:
    """Machine-derive the field-equation system at one momentum.

    Evaluates the commutator (sum) and anticommutator (difference) matrices
    on every unit field configuration, Clifford-decomposes them, and emits
    one linear equation per nonvanishing slot.
    """
    columns = field_basis(couplings.variant, exact=p.exact)
    sum_rows: dict[str, list[Scalar]] = {label: [] for label in SLOT_LABELS}
    diff_rows: dict[str, list[Scalar]] = {label: [] for label in SLOT_LABELS}
    slash = momentum_slash(p, basis)
    if couplings.variant == "single_mass":
        m1, m2 = couplings.mass, Fraction(0)
    else:
        m1, m2 = couplings.scalar_mass, couplings.pseudoscalar_mass
    g5 = basis.gamma5
    for _, fields in columns:
        phi = _clifford_combination(couplings, fields, basis)
        slash_phi = slash * phi
        phi_slash = phi * slash
        summed = slash_phi - phi_slash - (2 * m1) * phi
        difference = slash_phi + phi_slash
        if m2:
            g5_phi = g5 * phi
            phi_g5 = phi * g5
            summed = summed - m2 * (g5_phi + phi_g5)
            difference = difference - m2 * (g5_phi - phi_g5)
        for target, matrix in ((sum_rows, summed), (diff_rows, difference)):
            decomposed = clifford_decompose(matrix, basis).as_row()
            for label, value in zip(SLOT_LABELS, decomposed):
                target[label].append(value)
    equations = []
    for kind, rows in (("dynamics", sum_rows), ("constraint", diff_rows)):
        for label in SLOT_LABELS:
            eq = LinearEquation(kind, label, tuple(rows[label]))
            if not eq.is_zero():
                equations.append(eq)
    return LinearSystem(
        variant=couplings.variant,
        momentum=p,
        column_labels=tuple(label for label, _ in columns),
        equations=tuple(equations),
    )


# Fixed pairing between derivation slots and transcribed-equation names.
_SLOT_TO_TRANSCRIBED = {
    "single_mass": {
        **{f"tensor[{m},{n}]": f"strength[{m},{n}]" for m in range(4) for n in range(m + 1, 4)},
        **{f"vector[{m}]": f"motion[{m}]" for m in range(4)},
        "scalar": "vector_divergence",
        **{f"axial[{m}]": f"tensor_divergence[{m}]" for m in range(4)},
    },
    "two_mass": {
        **{f"tensor[{m},{n}]": f"strength[{m},{n}]" for m in range(4) for n in range(m + 1, 4)},
        **{f"vector[{m}]": f"divergence[{m}]" for m in range(4)},
        **{f"axial[{m}]": f"dual_divergence[{m}]" for m in range(4)},
        "scalar": "vector_divergence",
    },
}

def _group_of(name: str) -> str:
    # components of one printed equation share a single scale factor
    return name.split("[", 1)[0]


@dataclass(frozen=True)
class EquationDiff:
    derived_name: str
    target_name: str
    verdict: str  # "identical" | "proportional" | "mismatch" | "missing"
    scale: str | None
    mismatched_columns: tuple[str, ...]


@dataclass(frozen=True)
class DiffReport:
    """Entry-by-entry comparison of a derived and a transcribed system."""

    verdict: str  # "identical" | "proportional" | "mismatch"
    entries: tuple[EquationDiff, ...]
    scales: tuple[tuple[str, str], ...]  # (equation group, scale factor)

    def passed(self) -> bool:
        return self.verdict in ("identical", "proportional")


def diff_systems(derived: LinearSystem, transcribed: LinearSystem) -> DiffReport:
    """Compare two linear systems under the fixed slot pairing.

    Verdicts: ``identical`` (equal coefficient matrices), ``proportional``
    (each printed equation matches up to one global scalar shared by all of
    its components), or ``mismatch`` (locations reported).
    """
    if derived.column_labels != transcribed.column_labels:
        raise ValueError("systems use different field-component bases")
    pairing = _SLOT_TO_TRANSCRIBED[derived.variant]
    derived_eqs = derived.by_name()
    target_eqs = transcribed.by_name()
    groups: dict[str, list[tuple[str, str]]] = {}
    for slot, target in pairing.items():
        groups.setdefault(_group_of(target), []).append((slot, target))

    entries = []
    scales = []
    any_mismatch = False
    all_unit_scale = True
    for group in sorted(groups):
        pairs = sorted(groups[group])
        scale = None
        group_entries = []
        for slot, target_name in pairs:
            d_eq = derived_eqs.get(slot)
            t_eq = target_eqs.get(target_name)
            if d_eq is None and t_eq is None:
                continue  # dropped on both sides
            if d_eq is None or t_eq is None:
                group_entries.append(
                    EquationDiff(slot, target_name, "missing", None, ())
                )
                any_mismatch = True
                continue
            if scale is None:
                for d, t in zip(d_eq.coefficients, t_eq.coefficients):
                    if t:
                        scale = d / t
                        break
                    if d:
                        break
            lam = scale if scale is not None else make_scalar(1, derived.momentum.exact)
            bad = tuple(
                label
                for label, d, t in zip(derived.column_labels, d_eq.coefficients, t_eq.coefficients)
                if d != lam * t
            )
            verdict = "mismatch" if bad else ("identical" if lam == 1 else "proportional")
            if bad:
                any_mismatch = True
            if lam != 1:
                all_unit_scale = False
            group_entries.append(EquationDiff(slot, target_name, verdict, str(lam), bad))
        if scale is not None and group_entries:
            scales.append((group, str(scale)))
        entries.extend(group_entries)
    if any_mismatch:
        overall = "mismatch"
    elif all_unit_scale:
        overall = "identical"
    else:
        overall = "proportional"
    return DiffReport(overall, tuple(entries), tuple(scales))
