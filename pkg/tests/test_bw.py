import random
from fractions import Fraction

import pytest

from notoph.bw import (
    SingleMassCouplings,
    Spin1Fields,
    TwoMassCouplings,
    apply_dirac_operator,
    assemble_multispinor,
    derive_system,
    diff_systems,
    field_basis,
    momentum_slash,
    pair_difference_matrix,
    pair_sum_matrix,
    _clifford_combination,
)
from notoph.clifford import Matrix4
from notoph.exact import ExactScalar, mass_shell_energy
from notoph.proca import classical_solution, transcribed_system
from notoph.polarization import Helicity

GENERIC = (Fraction(1), Fraction(2, 3), Fraction(3, 5), Fraction(1, 2))


def generic_couplings(mass):
    return SingleMassCouplings(*GENERIC, Fraction(mass))


def random_fields(rng, variant="single_mass"):
    def scalar():
        return ExactScalar(
            Fraction(rng.randint(-5, 5), rng.randint(1, 4)),
            Fraction(rng.randint(-5, 5), rng.randint(1, 4)),
        )

    def vec():
        return tuple(scalar() for _ in range(4))

    def antisym():
        grid = [[ExactScalar(0)] * 4 for _ in range(4)]
        for a in range(4):
            for b in range(a + 1, 4):
                v = scalar()
                grid[a][b] = v
                grid[b][a] = -v
        return tuple(tuple(row) for row in grid)

    return Spin1Fields(vec(), vec(), antisym(), antisym(), vec())


class TestAssembly:
    def test_zero_fields_zero_matrix(self, basis, p122):
        c = SingleMassCouplings.classical(p122.m)
        assert assemble_multispinor(c, Spin1Fields.zeros(), basis).is_zero()

    def test_single_term_expansion(self, basis, p122):
        # c_a = 1, m = 1, A = (1, 0, 0, 0): the multispinor is gamma^0 R
        c = SingleMassCouplings(Fraction(1), Fraction(0), Fraction(0), Fraction(0), Fraction(1))
        one = ExactScalar(1)
        zero = ExactScalar(0)
        fields = Spin1Fields.zeros().replace(vector_potential=(one, zero, zero, zero))
        psi = assemble_multispinor(c, fields, basis)
        assert psi == basis.gamma[0] * basis.reflection
        assert psi.is_symmetric()

    def test_symmetric_for_random_fields(self, basis, p122):
        rng = random.Random(5)
        c = generic_couplings(p122.m)
        t = TwoMassCouplings(Fraction(1, 2), Fraction(2, 7), Fraction(4), Fraction(3, 4))
        for _ in range(20):
            fields = random_fields(rng)
            assert assemble_multispinor(c, fields, basis).is_symmetric()
            assert assemble_multispinor(t, fields, basis).is_symmetric()

    def test_antisymmetry_validated(self):
        one = ExactScalar(1)
        bad = tuple(
            tuple(one if (a, b) == (0, 1) else ExactScalar(0) for b in range(4))
            for a in range(4)
        )
        with pytest.raises(ValueError):
            Spin1Fields.zeros().replace(tensor_potential=bad)


class TestDiracOperator:
    def test_zero_in_zero_out(self, basis, p122):
        c = SingleMassCouplings.classical(p122.m)
        for side in ("first_index", "second_index"):
            assert apply_dirac_operator(Matrix4.zeros(), p122, c, side, basis).is_zero()

    def test_rest_frame_example(self, basis):
        # p at rest, Psi = gamma^0 R: (m gamma^0 - m) gamma^0 R = m (1 - gamma^0) R
        p = mass_shell_energy((0, 0, 0), 1)
        c = SingleMassCouplings.classical(1)
        psi = basis.gamma[0] * basis.reflection
        result = apply_dirac_operator(psi, p, c, "first_index", basis)
        expected = (basis.identity - basis.gamma[0]) * basis.reflection
        assert result == expected

    def test_classical_solution_annihilated(self, basis, p122):
        c = SingleMassCouplings.classical(p122.m)
        fields = classical_solution(p122, Helicity.ZERO, basis)
        psi = assemble_multispinor(c, fields, basis)
        assert apply_dirac_operator(psi, p122, c, "first_index", basis).is_zero()
        assert apply_dirac_operator(psi, p122, c, "second_index", basis).is_zero()

    def test_bad_side_rejected(self, basis, p122):
        c = SingleMassCouplings.classical(p122.m)
        with pytest.raises(ValueError):
            apply_dirac_operator(Matrix4.zeros(), p122, c, "both", basis)


class TestRecombination:
    """Direct operator-pair evaluation must equal the commutator and
    anticommutator forms used by the derivation (times the reflection)."""

    @pytest.mark.parametrize("two_mass", [False, True])
    def test_sum_and_difference(self, basis, sample_momenta, two_mass):
        rng = random.Random(17)
        for p in sample_momenta[:4]:
            if two_mass:
                c = TwoMassCouplings(Fraction(1, 2), Fraction(2, 7), Fraction(p.m), Fraction(3, 4))
            else:
                c = generic_couplings(p.m)
            fields = random_fields(rng)
            phi = _clifford_combination(c, fields, basis)
            psi = phi * basis.reflection
            first = apply_dirac_operator(psi, p, c, "first_index", basis)
            second = apply_dirac_operator(psi, p, c, "second_index", basis)
            assert first + second == pair_sum_matrix(c, phi, p, basis) * basis.reflection
            assert first - second == pair_difference_matrix(c, phi, p, basis) * basis.reflection


class TestDerivedSystem:
    def test_zero_couplings_empty_system(self, basis, p122):
        c = SingleMassCouplings(Fraction(0), Fraction(0), Fraction(0), Fraction(0), p122.m)
        derived = derive_system(c, p122, basis)
        assert derived.equations == ()
        target = transcribed_system(c, p122, basis)
        assert diff_systems(derived, target).verdict == "identical"

    def test_column_labels(self, basis, p122):
        c = generic_couplings(p122.m)
        derived = derive_system(c, p122, basis)
        assert len(derived.column_labels) == 20
        assert derived.column_labels[0] == "vector_potential[0]"
        two = TwoMassCouplings(Fraction(1, 2), Fraction(2, 7), Fraction(p122.m), Fraction(3, 4))
        assert len(derive_system(two, p122, basis).column_labels) == 16

    def test_linearity_of_derived_map(self, basis, p122):
        c = generic_couplings(p122.m)
        derived = derive_system(c, p122, basis)
        rng = random.Random(23)
        x, y = random_fields(rng), random_fields(rng)
        alpha, beta = ExactScalar(Fraction(2, 3)), ExactScalar(-3, 1)

        def apply_row(eq, fields):
            flat = _flatten(fields)
            acc = ExactScalar(0)
            for coeff, val in zip(eq.coefficients, flat):
                acc = acc + coeff * val
            return acc

        def _flatten(fields):
            out = list(fields.vector_potential) + list(fields.vector_strength)
            for name in ("tensor_potential", "tensor_strength"):
                grid = getattr(fields, name)
                out.extend(grid[a][b] for a in range(4) for b in range(a + 1, 4))
            return out

        combo = Spin1Fields(
            tuple(alpha * a + beta * b for a, b in zip(x.vector_potential, y.vector_potential)),
            tuple(alpha * a + beta * b for a, b in zip(x.vector_strength, y.vector_strength)),
            tuple(tuple(alpha * x.tensor_potential[i][j] + beta * y.tensor_potential[i][j] for j in range(4)) for i in range(4)),
            tuple(tuple(alpha * x.tensor_strength[i][j] + beta * y.tensor_strength[i][j] for j in range(4)) for i in range(4)),
            tuple(alpha * a + beta * b for a, b in zip(x.vector_field, y.vector_field)),
        )
        for eq in derived.equations:
            assert apply_row(eq, combo) == alpha * apply_row(eq, x) + beta * apply_row(eq, y)

    def test_basis_ordering_independence(self, basis, p122):
        # equations keyed by name are identical however the unit basis is walked
        c = generic_couplings(p122.m)
        derived = derive_system(c, p122, basis)
        labels = list(derived.column_labels)
        perm = list(range(len(labels)))
        random.Random(3).shuffle(perm)
        by_name = derived.by_name()
        for eq in derived.equations:
            permuted = tuple(eq.coefficients[i] for i in perm)
            # reordering columns then undoing it reproduces the equation
            unperm = [None] * len(labels)
            for spot, idx in enumerate(perm):
                unperm[idx] = permuted[spot]
            assert tuple(unperm) == by_name[eq.name].coefficients


class TestDiff:
    def test_classical_proportional(self, basis, sample_momenta):
        for p in sample_momenta:
            c = SingleMassCouplings.classical(p.m)
            report = diff_systems(derive_system(c, p, basis), transcribed_system(c, p, basis))
            assert report.verdict == "proportional"

    def test_generic_proportional_with_constant_scales(self, basis, sample_momenta):
        expected_scales = None
        for p in sample_momenta:
            c = generic_couplings(p.m)
            report = diff_systems(derive_system(c, p, basis), transcribed_system(c, p, basis))
            assert report.verdict == "proportional"
            scales = dict(report.scales)
            if expected_scales is None:
                expected_scales = scales
            assert scales == expected_scales

    def test_epsilon_flip_localizes_mismatch(self, basis, p122):
        from notoph.clifford import build_gamma_basis

        flipped = build_gamma_basis(epsilon_sign=-1)
        c = generic_couplings(p122.m)
        derived = derive_system(c, p122, basis)
        target_flipped = transcribed_system(c, p122, flipped)
        report = diff_systems(derived, target_flipped)
        assert report.verdict == "mismatch"
        bad_columns = {
            col for entry in report.entries for col in entry.mismatched_columns
        }
        # only the eps-carrying terms move: tensor potential in the dynamics
        # rows, tensor strength in the constraint rows
        assert bad_columns
        assert all(col.startswith(("tensor_potential", "tensor_strength")) for col in bad_columns)

    def test_two_mass_reduction_proportional(self, basis, sample_momenta):
        for p in sample_momenta[:6]:
            c = TwoMassCouplings(Fraction(1, 2), Fraction(0), Fraction(p.m), Fraction(0))
            report = diff_systems(derive_system(c, p, basis), transcribed_system(c, p, basis))
            assert report.verdict == "proportional"

    def test_two_mass_printed_mass_term_differs_by_i(self, basis, p122):
        """With both couplings and both masses on, the derivation and the
        printed system disagree in exactly one place: the derived
        dual-divergence equation carries i m2 Psi where the printed one has
        m2 Psi.  Squaring the two-mass operator fixes the mass shell at
        p^2 = m1^2 - m2^2, which only the derived version reproduces, so
        the mismatch is the printed system's typo, reported honestly."""
        c = TwoMassCouplings(Fraction(1, 2), Fraction(2, 7), Fraction(p122.m), Fraction(3, 4))
        derived = derive_system(c, p122, basis)
        target = transcribed_system(c, p122, basis)
        report = diff_systems(derived, target)
        assert report.verdict == "mismatch"
        bad_rows = {e.target_name.split("[")[0] for e in report.entries if e.mismatched_columns}
        assert bad_rows == {"dual_divergence"}
        # multiplying the printed mass term by i reconciles the two systems
        # up to one shared scale across all components and columns
        i = ExactScalar(0, 1)
        derived_eqs = derived.by_name()
        target_eqs = target.by_name()
        scale = None
        for mu in range(4):
            d = derived_eqs[f"axial[{mu}]"].coefficients
            t = target_eqs[f"dual_divergence[{mu}]"].coefficients
            for label, dv, tv in zip(derived.column_labels, d, t):
                fixed = tv * i if label.startswith("vector_field") else tv
                if scale is None and fixed:
                    scale = dv / fixed
                assert dv == (scale * fixed if fixed else dv)
                if not fixed:
                    assert not dv
        assert scale == ExactScalar(0, 2)

    def test_kg_closure_oracle(self, basis, p122):
        # (pslash + m1 - g5 m2)(pslash - m1 - g5 m2) = (p^2 - m1^2 + m2^2) 1
        m1, m2 = ExactScalar(4), ExactScalar(Fraction(3, 4))
        slash = momentum_slash(p122, basis)
        lhs = (slash + m1 * basis.identity - m2 * basis.gamma5) * (
            slash - m1 * basis.identity - m2 * basis.gamma5
        )
        p2 = ExactScalar(p122.p0**2 - p122.p1**2 - p122.p2**2 - p122.p3**2)
        assert lhs == (p2 - m1 * m1 + m2 * m2) * basis.identity


class TestFieldBasis:
    def test_dimensions(self):
        assert len(field_basis("single_mass")) == 20
        assert len(field_basis("two_mass")) == 16

    def test_unknown_variant(self):
        with pytest.raises(ValueError):
            field_basis("three_mass")

    def test_rank_of_classical_system(self, basis, p122):
        derived = derive_system(SingleMassCouplings.classical(p122.m), p122, basis)
        # 6 strength + 4 motion + 1 + 4 constraints as a linear map
        assert len(derived.equations) == 15
        assert derived.rank() == 7
