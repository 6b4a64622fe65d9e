"""Residual evaluators for the generalized spin-1 systems.

Every evaluator is a literal momentum-space transcription of one printed
equation with the substitution ``d_mu -> -i p_mu``; the machine-derived
system from :mod:`notoph.bw` is the cross-check (and the tie breaker for
any sign or factor question).  Index raising and lowering is always an
explicit contraction with g = diag(+1, -1, -1, -1).

The lowercase vector field appearing in the divergence constraint is
interpreted as the same object as the vector field strength of the
expansion; the CLI surfaces this assumption by name.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bw import (
    LinearEquation,
    LinearSystem,
    SingleMassCouplings,
    Spin1Fields,
    TwoMassCouplings,
    field_basis,
)
from .clifford import GammaBasis
from .exact import OnShellMomentum, Scalar, imaginary_unit, make_scalar, zero_scalar
from .polarization import Helicity, Normalization, u_vector
from .tensors import (
    contract_vec,
    dual_cov,
    flip_both_indices,
    flip_index,
    is_zero,
    max_magnitude,
    mat_add,
    mat_scale,
    minkowski_dot,
    vec_add,
    vec_scale,
    wedge,
    zeros_mat,
)

F_EQUALS_LOWERCASE_F = (
    "the lowercase vector field in the divergence constraint is read as the "
    "vector field strength F_mu of the expansion"
)


@dataclass(frozen=True)
class ResidualBundle:
    """Named residual tensors for one equation system at one momentum."""

    entries: tuple[tuple[str, object], ...]

    def __getitem__(self, name: str):
        for key, value in self.entries:
            if key == name:
                return value
        raise KeyError(name)

    def names(self) -> tuple[str, ...]:
        return tuple(key for key, _ in self.entries)

    def is_zero(self) -> bool:
        return all(is_zero(value) for _, value in self.entries)

    def max_magnitude(self) -> float:
        return max((max_magnitude(value) for _, value in self.entries), default=0.0)


def dual(x_cov, basis: GammaBasis, exact: bool = True):
    """Covariant dual of a covariant antisymmetric rank-2 grid:
    X~^{mu nu} = (1/2) eps^{mu nu rho sigma} X_{rho sigma}, indices then
    lowered.  dual(dual(X)) = -X."""
    return dual_cov(x_cov, basis.epsilon_sign, exact)


def strength_residual(fields: Spin1Fields, p: OnShellMomentum, c: SingleMassCouplings, basis: GammaBasis):
    """Rank-2 residual of the generalized field-strength equation

        c_a m (d_mu A_nu - d_nu A_mu) + c_f (d_mu F_nu - d_nu F_mu)
          = i c_A m^2 eps_{ab mu nu} A^{ab} + 2 m c_F F_{mu nu}

    transcribed with d -> -i p; zero iff the equation holds at p.
    """
    exact = p.exact
    i = imaginary_unit(exact)
    pl = p.lower
    m = make_scalar(c.mass, exact)
    res = mat_scale(-(i * (c.vector_potential * m)), wedge(pl, fields.vector_potential))
    res = mat_add(res, mat_scale(-(i * make_scalar(c.vector_strength, exact)), wedge(pl, fields.vector_strength)))
    a_up = flip_both_indices(fields.tensor_potential)
    eps_term = []
    for mu in range(4):
        row = []
        for nu in range(4):
            acc = zero_scalar(exact)
            for a in range(4):
                for b in range(4):
                    e = basis.eps_lower(a, b, mu, nu)
                    if e:
                        acc = acc + a_up[a][b] if e > 0 else acc - a_up[a][b]
            row.append(acc)
        eps_term.append(tuple(row))
    res = mat_add(res, mat_scale(-(i * (c.tensor_potential * m * m)), tuple(eps_term)))
    res = mat_add(res, mat_scale(-(2 * c.tensor_strength * m), fields.tensor_strength))
    return res


def motion_residual(fields: Spin1Fields, p: OnShellMomentum, c: SingleMassCouplings, basis: GammaBasis):
    """Rank-1 residual of the generalized equation of motion

        c_a m^2 A_mu + c_f m F_mu
          = i c_A m eps_{mu nu a b} d^nu A^{ab} + 2 c_F d^nu F_{mu nu}.
    """
    exact = p.exact
    i = imaginary_unit(exact)
    pu = p.upper
    m = make_scalar(c.mass, exact)
    res = vec_scale(c.vector_potential * m * m, fields.vector_potential)
    res = vec_add(res, vec_scale(c.vector_strength * m, fields.vector_strength))
    a_up = flip_both_indices(fields.tensor_potential)
    eps_term = []
    for mu in range(4):
        acc = zero_scalar(exact)
        for nu in range(4):
            for a in range(4):
                for b in range(4):
                    e = basis.eps_lower(mu, nu, a, b)
                    if e:
                        term = pu[nu] * a_up[a][b]
                        acc = acc + term if e > 0 else acc - term
        eps_term.append(acc)
    res = vec_add(res, vec_scale(-(c.tensor_potential * m), tuple(eps_term)))
    div = contract_vec(pu, fields.tensor_strength, slot=1, exact=exact)  # p^nu F_{mu nu}
    res = vec_add(res, vec_scale(2 * c.tensor_strength * i, div))
    return res


def constraint_residuals(fields: Spin1Fields, p: OnShellMomentum, c: SingleMassCouplings, basis: GammaBasis):
    """The subtraction pair: a scalar and a four-vector residual for

        m c_a d^mu A_mu + c_f d^mu F_mu = 0,
        m c_A d^a A_{a mu} + (i/2) c_F eps_{a b nu mu} d^a F^{b nu} = 0.
    """
    exact = p.exact
    i = imaginary_unit(exact)
    pu = p.upper
    m = make_scalar(c.mass, exact)
    scalar_res = -(i * (
        m * c.vector_potential * minkowski_dot(pu, fields.vector_potential, exact)
        + c.vector_strength * minkowski_dot(pu, fields.vector_strength, exact)
    ))
    div_a2 = contract_vec(pu, fields.tensor_potential, slot=0, exact=exact)  # p^a A_{a mu}
    vector_res = list(vec_scale(-(i * (m * c.tensor_potential)), div_a2))
    f_up = flip_both_indices(fields.tensor_strength)
    half = Fraction(1, 2)
    for mu in range(4):
        acc = zero_scalar(exact)
        for a in range(4):
            for b in range(4):
                for nu in range(4):
                    e = basis.eps_lower(a, b, nu, mu)
                    if e:
                        term = pu[a] * f_up[b][nu]
                        acc = acc + term if e > 0 else acc - term
        # (i/2) eps d^a -> (i/2)(-i) p^a = (1/2) p^a
        vector_res[mu] = vector_res[mu] + (c.tensor_strength * half) * acc
    return scalar_res, tuple(vector_res)


def generalized_residuals(fields: Spin1Fields, p: OnShellMomentum, c: SingleMassCouplings, basis: GammaBasis) -> ResidualBundle:
    """All four single-mass residuals in one bundle."""
    scalar_res, vector_res = constraint_residuals(fields, p, c, basis)
    return ResidualBundle(
        (
            ("strength", strength_residual(fields, p, c, basis)),
            ("motion", motion_residual(fields, p, c, basis)),
            ("vector_divergence", scalar_res),
            ("tensor_divergence", vector_res),
        )
    )


def two_mass_residuals(fields: Spin1Fields, p: OnShellMomentum, c: TwoMassCouplings, basis: GammaBasis) -> ResidualBundle:
    """Residuals of the two-mass system, free indices upper as printed:

        2 c1 d_mu F~^{mu a} - 2 i c2 d_mu A^{mu a} + m2 Psi^a = 0
        2 c1 d_mu F^{mu a} + 2 i c2 d_mu A~^{mu a} + m1 Psi^a = 0
        2 c1 (m1 F^{mu nu} + i m2 F~^{mu nu})
          + 2 c2 (m2 A^{mu nu} + i m1 A~^{mu nu})
          - (d^mu Psi^nu - d^nu Psi^mu) = 0
        d_mu Psi^mu = 0.
    """
    exact = p.exact
    i = imaginary_unit(exact)
    pl = p.lower
    m1 = make_scalar(c.scalar_mass, exact)
    m2 = make_scalar(c.pseudoscalar_mass, exact)
    c1 = make_scalar(c.strength_coupling, exact)
    c2 = make_scalar(c.potential_coupling, exact)
    psi_up = flip_index(fields.vector_field)
    f_up = flip_both_indices(fields.tensor_strength)
    a_up = flip_both_indices(fields.tensor_potential)
    f_dual_up = flip_both_indices(dual(fields.tensor_strength, basis, exact))
    a_dual_up = flip_both_indices(dual(fields.tensor_potential, basis, exact))
    # d_mu X^{mu a} -> -i p_mu X^{mu a}; p_mu has lower index, X upper
    def div_upper(x_up):
        return tuple(
            sum((pl[mu] * x_up[mu][al] for mu in range(1, 4)), pl[0] * x_up[0][al])
            for al in range(4)
        )

    dual_div = vec_add(
        vec_scale(-(2 * i * c1), div_upper(f_dual_up)),
        vec_add(vec_scale(-(2 * c2), div_upper(a_up)), vec_scale(m2, psi_up)),
    )
    plain_div = vec_add(
        vec_scale(-(2 * i * c1), div_upper(f_up)),
        vec_add(vec_scale(2 * c2, div_upper(a_dual_up)), vec_scale(m1, psi_up)),
    )
    strength = mat_add(
        mat_add(
            mat_scale(2 * c1 * m1, f_up),
            mat_scale(2 * c1 * (i * m2), f_dual_up),
        ),
        mat_add(
            mat_scale(2 * c2 * m2, a_up),
            mat_scale(2 * c2 * (i * m1), a_dual_up),
        ),
    )
    pu = p.upper
    strength = mat_add(strength, mat_scale(i, wedge(pu, psi_up)))
    psi_div = -(i * minkowski_dot(pu, fields.vector_field, exact))
    return ResidualBundle(
        (
            ("dual_divergence", dual_div),
            ("divergence", plain_div),
            ("strength", strength),
            ("vector_divergence", psi_div),
        )
    )


@dataclass(frozen=True)
class ProportionalityProbe:
    """Where the tensor-divergence constraint vanishes along the family
    F_{mu nu} = i m kappa (dual A)_{mu nu}; realizes the suggested
    dual-strength/potential proportionality."""

    kappa: str | None  # exact value, None when the probe is degenerate
    exact_zero: bool
    residual_at_kappa: float


def proportionality_probe(tensor_potential, p: OnShellMomentum, c: SingleMassCouplings, basis: GammaBasis) -> ProportionalityProbe:
    exact = p.exact
    i = imaginary_unit(exact)
    m = make_scalar(c.mass, exact)
    base = Spin1Fields.zeros(exact).replace(tensor_potential=tensor_potential)
    _, r0 = constraint_residuals(base, p, c, basis)
    step_strength = mat_scale(i * m, dual(tensor_potential, basis, exact))
    stepped = Spin1Fields.zeros(exact).replace(tensor_strength=step_strength)
    _, r1 = constraint_residuals(stepped, p, c, basis)
    pivot = next((mu for mu in range(4) if r1[mu]), None)
    if pivot is None:
        return ProportionalityProbe(None, is_zero(r0), max_magnitude(r0))
    kappa = -(r0[pivot] / r1[pivot])
    at_kappa = vec_add(r0, vec_scale(kappa, r1))
    return ProportionalityProbe(str(kappa), is_zero(at_kappa), max_magnitude(at_kappa))


def classical_solution(p: OnShellMomentum, helicity: Helicity, basis: GammaBasis) -> Spin1Fields:
    """The constructed solution family of the classical reduction:
    A = u(p, h) lowered, F2 = -i (p wedge A).

    For h = +-1 the sqrt(2)-rescaled representative is returned; the
    residuals are linear and homogeneous, so the rescaling is harmless.
    """
    u = u_vector(p, helicity, Normalization.mass())
    a_cov = u.lowered()
    i = imaginary_unit(p.exact)
    f2 = mat_scale(-i, wedge(p.lower, a_cov))
    return Spin1Fields.zeros(p.exact).replace(vector_potential=a_cov, tensor_strength=f2)


def two_mass_solution(p: OnShellMomentum, helicity: Helicity, c: TwoMassCouplings, basis: GammaBasis) -> Spin1Fields:
    """Vector-field solution of the two-mass system with c2 = m2 = 0:
    Psi = u(p, h) lowered, F2 = (-i / (2 c1 m1)) (p wedge Psi)."""
    if c.potential_coupling != 0 or c.pseudoscalar_mass != 0:
        raise ValueError("the constructed solution needs c2 = 0 and m2 = 0")
    if c.strength_coupling == 0 or c.scalar_mass == 0:
        raise ValueError("the constructed solution needs c1 != 0 and m1 > 0")
    u = u_vector(p, helicity, Normalization.mass())
    psi_cov = u.lowered()
    i = imaginary_unit(p.exact)
    front = -i / make_scalar(2 * c.strength_coupling * c.scalar_mass, p.exact)
    f2 = mat_scale(front, wedge(p.lower, psi_cov))
    return Spin1Fields.zeros(p.exact).replace(vector_field=psi_cov, tensor_strength=f2)


def _lower_free_vector(v_upper):
    return flip_index(v_upper)


def transcribed_system(couplings, p: OnShellMomentum, basis: GammaBasis) -> LinearSystem:
    """The printed equations as a linear map over the unit field basis.

    Row names mirror the residual-bundle entries; free indices are lowered
    so rows align index-for-index with the machine-derived slots.
    Identically-zero rows are dropped, as in the derivation.
    """
    columns = field_basis(couplings.variant, exact=p.exact)
    rows: dict[str, list[Scalar]] = {}
    order: list[str] = []

    def add(name, value):
        if name not in rows:
            rows[name] = []
            order.append(name)
        rows[name].append(value)

    for _, fields in columns:
        if couplings.variant == "single_mass":
            bundle = generalized_residuals(fields, p, couplings, basis)
            strength = bundle["strength"]
            for mu in range(4):
                for nu in range(mu + 1, 4):
                    add(f"strength[{mu},{nu}]", strength[mu][nu])
            motion = bundle["motion"]
            for mu in range(4):
                add(f"motion[{mu}]", motion[mu])
            add("vector_divergence", bundle["vector_divergence"])
            tensor_div = bundle["tensor_divergence"]
            for mu in range(4):
                add(f"tensor_divergence[{mu}]", tensor_div[mu])
        else:
            bundle = two_mass_residuals(fields, p, couplings, basis)
            strength = flip_both_indices(bundle["strength"])
            for mu in range(4):
                for nu in range(mu + 1, 4):
                    add(f"strength[{mu},{nu}]", strength[mu][nu])
            for name, key in (("divergence", "divergence"), ("dual_divergence", "dual_divergence")):
                vec = _lower_free_vector(bundle[key])
                for mu in range(4):
                    add(f"{name}[{mu}]", vec[mu])
            add("vector_divergence", bundle["vector_divergence"])

    kind_of = {
        "strength": "dynamics",
        "motion": "dynamics",
        "divergence": "dynamics",
        "dual_divergence": "dynamics",
        "vector_divergence": "constraint",
        "tensor_divergence": "constraint",
    }
    equations = []
    for name in order:
        eq = LinearEquation(kind_of[name.split("[", 1)[0]], name, tuple(rows[name]))
        if not eq.is_zero():
            equations.append(eq)
    return LinearSystem(
        variant=couplings.variant,
        momentum=p,
        column_labels=tuple(label for label, _ in columns),
        equations=tuple(equations),
    )
