import math
from fractions import Fraction

import pytest

from notoph.exact import ExactScalar, mass_shell_energy
from notoph.exceptions import MasslessSingular
from notoph.polarization import (
    EnergySign,
    Helicity,
    Normalization,
    TRANSVERSE,
    ast_potential,
    cross_product_diagnostics,
    default_mass_sequence,
    massless_limit_scan,
    negative_energy,
    pairing_table,
    strengths_closed_form,
    strengths_from_u,
    u_vector,
)

N_MASS = Normalization.mass()
N_UNIT = Normalization.unit()


class TestUVector:
    def test_time_mode_components(self, p122):
        u = u_vector(p122, Helicity.TIME, N_MASS)
        assert [c.re for c in u.components] == [5, 1, 2, 2]

    def test_zero_mode_components(self, p122):
        u = u_vector(p122, Helicity.ZERO, N_MASS)
        assert [c.re for c in u.components] == [2, Fraction(2, 9), Fraction(4, 9), Fraction(40, 9)]

    def test_zero_mode_transverse(self, p122):
        # metric-contraction oracle: 5*2 - (2 + 8 + 80)/9 = 0
        u = u_vector(p122, Helicity.ZERO, N_MASS)
        by_hand = 5 * Fraction(2) - (Fraction(2, 9) + 2 * Fraction(4, 9) + 2 * Fraction(40, 9))
        assert by_hand == 0
        assert not u.dot_momentum()

    def test_transversality_all_samples(self, sample_momenta):
        for p in sample_momenta:
            for h in TRANSVERSE:
                assert not u_vector(p, h, N_MASS).dot_momentum()
            u_t = u_vector(p, Helicity.TIME, N_MASS)
            assert u_t.dot_momentum() == ExactScalar(Fraction(p.m) ** 2)

    def test_custom_normalization_scales(self, p122):
        u1 = u_vector(p122, Helicity.ZERO, Normalization.custom(Fraction(3)))
        um = u_vector(p122, Helicity.ZERO, N_MASS)
        scale = ExactScalar(Fraction(3, 4))  # N/m with N = 3, m = 4
        assert all(a == scale * b for a, b in zip(u1.components, um.components))

    def test_massless_requires_mass_normalization(self):
        p0 = mass_shell_energy((0, 0, 3), 0)
        with pytest.raises(MasslessSingular):
            u_vector(p0, Helicity.ZERO, N_UNIT)
        u = u_vector(p0, Helicity.ZERO, N_MASS)
        assert [c.re for c in u.components] == [3, 0, 0, 3]

    def test_plus_minus_sqrt2_bookkeeping(self, p122):
        u = u_vector(p122, Helicity.PLUS, N_MASS)
        assert u.sqrt2_power == 1
        numeric = u.numeric()
        assert math.isclose(abs(numeric[0]), abs(complex(1, 2)) / math.sqrt(2))


class TestAstPotential:
    def test_printed_entries(self, p122):
        grid = ast_potential(p122, N_UNIT)
        assert grid[1][2] == ExactScalar(0, Fraction(41, 36))
        assert grid[0][1] == ExactScalar(0, Fraction(-1, 2))

    def test_antisymmetry_random_momenta(self, sample_momenta):
        for p in sample_momenta[:8]:
            grid = ast_potential(p, N_UNIT)
            assert all(not (grid[a][b] + grid[b][a]) for a in range(4) for b in range(4))

    def test_massless_vanishes_along_oz(self):
        p0 = mass_shell_energy((0, 0, 3), 0)
        grid = ast_potential(p0, N_MASS)
        assert all(not grid[a][b] for a in range(4) for b in range(4))

    def test_massless_needs_mass_normalization(self):
        p0 = mass_shell_energy((0, 0, 3), 0)
        with pytest.raises(MasslessSingular):
            ast_potential(p0, N_UNIT)

    def test_mass_normalization_finite_at_zero_mass_generic_direction(self):
        p0 = mass_shell_energy((2, 3, 6), 0)  # |p| = 7
        grid = ast_potential(p0, N_MASS)
        assert all(not grid[a][b] for a in range(4) for b in range(4))


class TestStrengths:
    def test_zero_mode_closed_form(self, p122):
        s = strengths_closed_form(p122, Helicity.ZERO, N_UNIT)
        # B = (i N / 2m)(p2, -p1, 0) = (i/8)(2, -1, 0)
        assert s.b[0] == ExactScalar(0, Fraction(1, 4))
        assert s.b[1] == ExactScalar(0, Fraction(-1, 8))
        assert not s.b[2]

    def test_zero_mode_e3_along_oz(self):
        p = mass_shell_energy((0, 0, 3), 4)
        s = strengths_closed_form(p, Helicity.ZERO, N_UNIT)
        # E3 = (i/8)(5 - 9/9) = i/2
        assert s.e[2] == ExactScalar(0, Fraction(1, 2))

    def test_generated_equals_closed_all_h(self, sample_momenta):
        for p in sample_momenta:
            for h in TRANSVERSE:
                assert strengths_from_u(p, h, N_MASS) == strengths_closed_form(p, h, N_MASS)
                assert strengths_from_u(p, h, N_UNIT) == strengths_closed_form(p, h, N_UNIT)

    def test_b_vanishes_along_oz_zero_mode(self):
        p = mass_shell_energy((0, 0, 3), 4)
        s = strengths_from_u(p, Helicity.ZERO, N_MASS)
        assert all(not c for c in s.b)

    def test_negative_energy_is_conjugate(self, p122):
        for h in TRANSVERSE:
            pos = strengths_from_u(p122, h, N_UNIT, EnergySign.POSITIVE)
            neg = strengths_from_u(p122, h, N_UNIT, EnergySign.NEGATIVE)
            assert all(a == b.conjugate() for a, b in zip(neg.b, pos.b))
            assert all(a == b.conjugate() for a, b in zip(neg.e, pos.e))

    def test_massless_generated_rejected(self):
        p0 = mass_shell_energy((0, 0, 3), 0)
        with pytest.raises(MasslessSingular):
            strengths_from_u(p0, Helicity.ZERO, N_MASS)


class TestNegativeEnergy:
    def test_real_vector_unchanged(self, p122):
        u = u_vector(p122, Helicity.TIME, N_MASS)
        assert negative_energy(u).components == u.components

    def test_conjugation_keeps_transversality(self, p122):
        u = negative_energy(u_vector(p122, Helicity.PLUS, N_MASS))
        assert not u.dot_momentum()

    def test_involution(self, p122):
        u = u_vector(p122, Helicity.MINUS, N_MASS)
        assert negative_energy(negative_energy(u)).components == u.components


class TestPairingTable:
    # golden data from the metric-contraction oracle: the only nonzero
    # pairings are the diagonal, (-1, -1, -1, +1) in units of N^2
    def test_constant_pattern_across_momenta(self, sample_momenta):
        for p in sample_momenta[:8]:
            n2 = ExactScalar(Fraction(p.m) ** 2)
            table = pairing_table(p, N_MASS)
            for (h, hp), (value, power) in table.items():
                if h is hp:
                    expected = n2 if h is Helicity.TIME else -n2
                    assert value == expected and power == 0
                else:
                    assert not value


class TestMasslessScan:
    def test_mass_normalization_all_convergent(self):
        seq = default_mass_sequence()
        for h in Helicity:
            scan = massless_limit_scan((0, 0, 3), h, N_MASS, seq)
            assert all(c.classification == "convergent" for c in scan.components)
            assert all(c.exact_massless is not None for c in scan.components)

    def test_unit_normalization_divergent_components(self):
        seq = default_mass_sequence()
        scan = massless_limit_scan((0, 0, 3), Helicity.ZERO, N_UNIT, seq)
        by_label = {c.label: c for c in scan.components}
        for label in ("u[0]", "u[3]"):
            comp = by_label[label]
            assert comp.classification == "divergent"
            assert comp.divergence_order == 1
            assert abs(comp.slope + 1.0) <= 0.01
        for label in ("u[1]", "u[2]"):
            assert by_label[label].classification == "convergent"

    def test_ast_scan_mass_normalization_vanishes(self):
        seq = default_mass_sequence()
        scan = massless_limit_scan((0, 0, 3), None, N_MASS, seq, quantity="ast")
        for comp in scan.components:
            assert comp.classification == "convergent"
            assert comp.exact_massless == "0"

    def test_sequence_validation(self):
        with pytest.raises(ValueError):
            massless_limit_scan((0, 0, 3), Helicity.ZERO, N_MASS, (1e-6, 1e-3))
        with pytest.raises(ValueError):
            massless_limit_scan((0, 0, 3), None, N_MASS, default_mass_sequence(), quantity="u")

    def test_default_sequence_shape(self):
        seq = default_mass_sequence()
        assert len(seq) == 13
        assert math.isclose(seq[0], 1e-3) and math.isclose(seq[-1], 1e-6)
        assert all(a > b for a, b in zip(seq, seq[1:]))


class TestCrossProducts:
    def test_transverse_crosses_parallel_to_oz(self):
        p = mass_shell_energy((0, 0, 3), 4)
        records = {
            (r.family, r.left, r.right): r for r in cross_product_diagnostics(p, N_MASS)
        }
        # u(+1) x conj(u(+1)) points along OZ with nothing perpendicular
        rec = records[("u", Helicity.PLUS, Helicity.PLUS)]
        assert rec.perpendicular_zero
        assert rec.parallel_fraction == "1"
        # u(+1) and conj(u(-1)) are collinear along OZ, so the cross vanishes
        rec_pm = records[("u", Helicity.PLUS, Helicity.MINUS)]
        assert rec_pm.perpendicular_zero and rec_pm.parallel_fraction is None

    def test_self_cross_of_zero_mode_vanishes(self, p122):
        records = {
            (r.family, r.left, r.right): r for r in cross_product_diagnostics(p122, N_MASS)
        }
        rec = records[("B", Helicity.ZERO, Helicity.ZERO)]
        assert rec.parallel_fraction is None  # v = 0: B(0) is parallel to conj(B(0))
        assert rec.perpendicular_zero

    def test_conjugation_antisymmetry(self, p122):
        # X x conj(Y) = -conj(Y x conj(X)) componentwise
        from notoph.polarization import _spatial_vectors
        from notoph.tensors import cross3

        vectors = _spatial_vectors(p122, N_MASS, "E")
        for h in TRANSVERSE:
            for hp in TRANSVERSE:
                left = cross3(vectors[h], tuple(c.conjugate() for c in vectors[hp]))
                right = cross3(vectors[hp], tuple(c.conjugate() for c in vectors[h]))
                assert all(a == -(b.conjugate()) for a, b in zip(left, right))

    def test_record_count(self, p122):
        assert len(cross_product_diagnostics(p122, N_MASS)) == 27
