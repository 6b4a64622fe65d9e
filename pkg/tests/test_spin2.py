import random
from fractions import Fraction

import pytest

from notoph.exact import ExactScalar, mass_shell_energy
from notoph.exceptions import OffShellMomentum
from notoph.polarization import Helicity, Normalization, u_vector
from notoph.spin2 import (
    Spin2Coefficients,
    Spin2Fields,
    contract_to_vector,
    random_symmetric_tensor,
    residual_second_order,
    residual_system,
    transversality_equivalence,
    transverse_tensor_from_vector,
)
from notoph.tensors import is_zero

METRIC = (1, -1, -1, -1)


def metric_tensor():
    return tuple(
        tuple(ExactScalar(METRIC[a]) if a == b else ExactScalar(0) for b in range(4))
        for a in range(4)
    )


def scale_fields(fields, factor):
    def scale(x):
        if isinstance(x, tuple):
            return tuple(scale(part) for part in x)
        return factor * x

    return Spin2Fields(
        scale(fields.rank2_sym),
        scale(fields.rank3_last_pair),
        scale(fields.rank3_first_pair),
        scale(fields.rank4),
        scale(fields.rank4_aux),
    )


def random_spin2_fields(rng):
    def scalar():
        return ExactScalar(
            Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
            Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
        )

    g = random_symmetric_tensor(rng)
    t = [[[ExactScalar(0)] * 4 for _ in range(4)] for _ in range(4)]
    f = [[[ExactScalar(0)] * 4 for _ in range(4)] for _ in range(4)]
    for k in range(4):
        for a in range(4):
            for b in range(a + 1, 4):
                v = scalar()
                t[k][a][b] = v
                t[k][b][a] = -v
                w = scalar()
                f[a][b][k] = w
                f[b][a][k] = -w
    r4 = [[[[ExactScalar(0)] * 4 for _ in range(4)] for _ in range(4)] for _ in range(4)]
    d4 = [[[[ExactScalar(0)] * 4 for _ in range(4)] for _ in range(4)] for _ in range(4)]
    for a in range(4):
        for b in range(a + 1, 4):
            for cc in range(4):
                for dd in range(cc + 1, 4):
                    for grid in (r4, d4):
                        v = scalar()
                        grid[a][b][cc][dd] = v
                        grid[b][a][cc][dd] = -v
                        grid[a][b][dd][cc] = -v
                        grid[b][a][dd][cc] = v
    freeze = lambda x: tuple(
        tuple(tuple(tuple(col) for col in row) if isinstance(row[0], list) else tuple(row) for row in plane)
        if isinstance(plane[0], list) else tuple(plane)
        for plane in x
    )

    def freeze3(x):
        return tuple(tuple(tuple(col for col in row) for row in plane) for plane in x)

    def freeze4(x):
        return tuple(
            tuple(tuple(tuple(e for e in col) for col in row) for row in plane) for plane in x
        )

    return Spin2Fields(g, freeze3(t), freeze3(f), freeze4(r4), freeze4(d4))


class TestFirstOrderSystem:
    def test_zero_fields(self, basis, p122):
        bundle = residual_system(Spin2Fields.zeros(), p122, Spin2Coefficients(), p122.m, basis)
        assert bundle.is_zero()
        assert bundle.names() == ("rank2", "rank3_first_pair", "rank3_last_pair", "rank4")

    def test_homogeneous_scaling(self, basis, p122):
        rng = random.Random(61)
        fields = random_spin2_fields(rng)
        lam = ExactScalar(Fraction(3, 2), -1)
        coeffs = Spin2Coefficients()
        base = residual_system(fields, p122, coeffs, p122.m, basis)
        scaled = residual_system(scale_fields(fields, lam), p122, coeffs, p122.m, basis)

        def check(x, y):
            if isinstance(x, tuple):
                return all(check(a, b) for a, b in zip(x, y))
            return y == lam * x

        for name in base.names():
            assert check(base[name], scaled[name])

    def test_single_term_isolation(self, basis, p122):
        # only alpha1 beta1 on: the rank-2 residual reduces to -a1 b1 G_k^mu
        coeffs = Spin2Coefficients(
            alpha2=Fraction(0), alpha3=Fraction(0),
            beta2=Fraction(0), beta3=Fraction(0), beta4=Fraction(0), beta5=Fraction(0),
            beta6=Fraction(0), beta7=Fraction(0), beta8=Fraction(0), beta9=Fraction(0),
        )
        rng = random.Random(62)
        g = random_symmetric_tensor(rng)
        fields = Spin2Fields.zeros().replace(rank2_sym=g)
        bundle = residual_system(fields, p122, coeffs, p122.m, basis)
        rank2 = bundle["rank2"]
        for k in range(4):
            for mu in range(4):
                assert rank2[k][mu] == -(METRIC[mu] * g[k][mu])
        assert not bundle.is_zero()

    def test_mass_guard(self, basis, p122):
        with pytest.raises(ValueError):
            residual_system(Spin2Fields.zeros(), p122, Spin2Coefficients(), 0, basis)

    def test_symmetry_validation(self):
        one = ExactScalar(1)
        bad = tuple(
            tuple(one if (a, b) == (0, 1) else ExactScalar(0) for b in range(4))
            for a in range(4)
        )
        with pytest.raises(ValueError):
            Spin2Fields.zeros().replace(rank2_sym=bad)


class TestSecondOrder:
    def test_transverse_tensor_vanishes(self, basis, p122):
        u = u_vector(p122, Helicity.ZERO, Normalization.mass())
        g = transverse_tensor_from_vector(u.lowered())
        assert is_zero(residual_second_order(g, p122, p122.m))

    def test_momentum_tensor_leaves_minus_g(self, p122):
        # G = p x p on shell: residual = -G (hand contraction oracle)
        g = tuple(tuple(p122.lower[a] * p122.lower[b] for b in range(4)) for a in range(4))
        res = residual_second_order(g, p122, p122.m)
        assert all(res[a][b] == -(g[a][b]) for a in range(4) for b in range(4))

    def test_zero(self, p122):
        zeros = Spin2Fields.zeros().rank2_sym
        assert is_zero(residual_second_order(zeros, p122, p122.m))


class TestContraction:
    def test_transverse_gives_zero_pair(self, basis, p122):
        u = u_vector(p122, Helicity.PLUS, Normalization.mass())
        g = transverse_tensor_from_vector(u.lowered())
        vec, scalar = contract_to_vector(g, p122, p122.m)
        assert is_zero(vec) and not scalar

    def test_metric_tensor(self, p122):
        # G = g: F_k = -i p_k and the scalar settles at -p^2/m^2 = -1
        vec, scalar = contract_to_vector(metric_tensor(), p122, p122.m)
        minus_i = ExactScalar(0, -1)
        assert list(vec) == [minus_i * x for x in p122.lower]
        assert scalar == ExactScalar(-1)

    def test_zero(self, p122):
        zeros = Spin2Fields.zeros().rank2_sym
        vec, scalar = contract_to_vector(zeros, p122, p122.m)
        assert is_zero(vec) and not scalar

    def test_trace_identity_with_second_order(self, sample_momenta):
        # metric trace of the second-order residual reproduces the pair's
        # scalar on shell, exactly, for random symmetric tensors
        rng = random.Random(63)
        for p in sample_momenta[:6]:
            g = random_symmetric_tensor(rng)
            res = residual_second_order(g, p, p.m)
            trace = METRIC[0] * res[0][0]
            for k in range(1, 4):
                trace = trace + METRIC[k] * res[k][k]
            _, scalar = contract_to_vector(g, p, p.m)
            assert trace == scalar


class TestEquivalence:
    def test_transverse_and_momentum_examples(self, p122):
        u = u_vector(p122, Helicity.ZERO, Normalization.mass())
        g_t = transverse_tensor_from_vector(u.lowered())
        assert transversality_equivalence(g_t, p122, p122.m) == (True, True)
        g_p = tuple(tuple(p122.lower[a] * p122.lower[b] for b in range(4)) for a in range(4))
        assert transversality_equivalence(g_p, p122, p122.m) == (False, False)

    def test_mixed_sum_fails_both(self, p122):
        u = u_vector(p122, Helicity.ZERO, Normalization.mass())
        g_t = transverse_tensor_from_vector(u.lowered())
        g_p = tuple(tuple(p122.lower[a] * p122.lower[b] for b in range(4)) for a in range(4))
        mixed = tuple(
            tuple(g_t[a][b] + g_p[a][b] for b in range(4)) for a in range(4)
        )
        assert transversality_equivalence(mixed, p122, p122.m) == (False, False)

    def test_off_shell_rejected(self, p122):
        with pytest.raises(OffShellMomentum):
            transversality_equivalence(metric_tensor(), p122, 3)

    def test_hundred_random_per_momentum(self, sample_momenta):
        rng = random.Random(64)
        for p in sample_momenta[:6]:
            for _ in range(100):
                g = random_symmetric_tensor(rng)
                res_zero, transverse = transversality_equivalence(g, p, p.m)
                assert res_zero == transverse

    def test_forced_transverse_random_tensor(self, sample_momenta):
        # build a genuinely transverse random G: project each row along p
        rng = random.Random(65)
        for p in sample_momenta[:4]:
            g = random_symmetric_tensor(rng)
            pu = p.upper
            pl = p.lower
            m2 = ExactScalar(Fraction(p.m) ** 2)
            # subtract (p_a x_b + x_a p_b) terms to kill p^nu G_{k nu}
            x = [sum((pu[n] * g[k][n] for n in range(1, 4)), pu[0] * g[k][0]) for k in range(4)]
            lam = sum((pu[n] * x[n] for n in range(1, 4)), pu[0] * x[0])
            # G' = G - (p x + x p)/m^2 + p p (p.x)/m^4 is symmetric and transverse
            corrected = []
            for a in range(4):
                row = []
                for b in range(4):
                    val = g[a][b] - (pl[a] * x[b] + x[a] * pl[b]) / m2 + pl[a] * pl[b] * lam / (m2 * m2)
                    row.append(val)
                corrected.append(tuple(row))
            corrected = tuple(corrected)
            assert transversality_equivalence(corrected, p, p.m) == (True, True)


def test_random_tensor_is_symmetric():
    rng = random.Random(66)
    g = random_symmetric_tensor(rng)
    assert all(g[a][b] == g[b][a] for a in range(4) for b in range(4))
