"""Residual evaluators for the spin-2 system: the first-order equations for
the symmetric rank-2 tensor and its companion fields, the second-order
equation, and the contraction pair.

Storage conventions.  All components are covariant; names encode rank and
the declared antisymmetric pair, which is the minimal structure that makes
every printed contraction well defined:

* ``rank2_sym``        g_{kappa mu}, symmetric;
* ``rank3_last_pair``  t_{kappa, mu nu}, antisymmetric in (mu, nu) - the
  curl-like companion of the symmetric tensor;
* ``rank3_first_pair`` f_{kappa tau, mu}, antisymmetric in (kappa, tau);
* ``rank4``            r_{kappa tau, mu nu}, antisymmetric in both pairs;
* ``rank4_aux``        d_{kappa tau, alpha beta}, antisymmetric in both
  pairs (enters only through eps contractions).

Duals act on whichever pair the printed expression marks: the last pair
for the rank-3 curl field and the auxiliary rank-4 field, the first pair
for the rank-3 pair field and the rank-4 strength.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import product

from .clifford import GammaBasis, METRIC
from .exact import OnShellMomentum, Scalar, imaginary_unit, make_scalar, zero_scalar
from .exceptions import OffShellMomentum
from .proca import ResidualBundle
from .tensors import is_zero


@dataclass(frozen=True)
class Spin2Coefficients:
    """The twelve numerical coefficients of the first-order system."""

    alpha1: Fraction = Fraction(1)
    alpha2: Fraction = Fraction(1)
    alpha3: Fraction = Fraction(1)
    beta1: Fraction = Fraction(1)
    beta2: Fraction = Fraction(1)
    beta3: Fraction = Fraction(1)
    beta4: Fraction = Fraction(1)
    beta5: Fraction = Fraction(1)
    beta6: Fraction = Fraction(1)
    beta7: Fraction = Fraction(1)
    beta8: Fraction = Fraction(1)
    beta9: Fraction = Fraction(1)


def _zeros(shape, exact):
    zero = zero_scalar(exact)
    if not shape:
        return zero
    return tuple(_zeros(shape[1:], exact) for _ in range(shape[0]))


def _check_pair_antisymmetry(x, first: bool, rank: int) -> bool:
    idx = range(4)
    if rank == 3 and first:
        return all(not (x[a][b][c] + x[b][a][c]) for a in idx for b in idx for c in idx)
    if rank == 3 and not first:
        return all(not (x[c][a][b] + x[c][b][a]) for a in idx for b in idx for c in idx)
    return True


def _check_rank4_antisymmetry(x) -> bool:
    idx = range(4)
    return all(
        not (x[a][b][c][d] + x[b][a][c][d]) and not (x[a][b][c][d] + x[a][b][d][c])
        for a in idx for b in idx for c in idx for d in idx
    )


@dataclass(frozen=True)
class Spin2Fields:
    """Momentum-space values of the five spin-2 fields (all covariant)."""

    rank2_sym: tuple
    rank3_last_pair: tuple
    rank3_first_pair: tuple
    rank4: tuple
    rank4_aux: tuple

    def __post_init__(self):
        if not all(
            not (self.rank2_sym[a][b] - self.rank2_sym[b][a])
            for a in range(4) for b in range(a + 1, 4)
        ):
            raise ValueError("rank2_sym must be symmetric")
        if not _check_pair_antisymmetry(self.rank3_last_pair, first=False, rank=3):
            raise ValueError("rank3_last_pair must be antisymmetric in its last pair")
        if not _check_pair_antisymmetry(self.rank3_first_pair, first=True, rank=3):
            raise ValueError("rank3_first_pair must be antisymmetric in its first pair")
        for name in ("rank4", "rank4_aux"):
            if not _check_rank4_antisymmetry(getattr(self, name)):
                raise ValueError(f"{name} must be antisymmetric in both pairs")

    @classmethod
    def zeros(cls, exact: bool = True) -> "Spin2Fields":
        return cls(
            _zeros((4, 4), exact),
            _zeros((4, 4, 4), exact),
            _zeros((4, 4, 4), exact),
            _zeros((4, 4, 4, 4), exact),
            _zeros((4, 4, 4, 4), exact),
        )

    def replace(self, **kwargs) -> "Spin2Fields":
        return replace(self, **kwargs)


def _dual_last_pair3(x, basis: GammaBasis, exact: bool):
    """t~_{k, mu nu}: dual on the trailing antisymmetric pair, lowered."""
    out = []
    for k in range(4):
        rows = []
        for a in range(4):
            row = []
            for b in range(4):
                acc = zero_scalar(exact)
                for r in range(4):
                    for s in range(4):
                        e = basis.eps_upper(a, b, r, s)
                        if e:
                            acc = acc + x[k][r][s] if e > 0 else acc - x[k][r][s]
                sign = METRIC[a] * METRIC[b]
                half = acc / 2
                row.append(half if sign > 0 else -half)
            rows.append(tuple(row))
        out.append(tuple(rows))
    return tuple(out)


def _dual_first_pair3(x, basis: GammaBasis, exact: bool):
    """f~_{a b, mu}: dual on the leading antisymmetric pair, lowered."""
    out = []
    for a in range(4):
        rows = []
        for b in range(4):
            row = []
            for mu in range(4):
                acc = zero_scalar(exact)
                for r in range(4):
                    for s in range(4):
                        e = basis.eps_upper(a, b, r, s)
                        if e:
                            acc = acc + x[r][s][mu] if e > 0 else acc - x[r][s][mu]
                sign = METRIC[a] * METRIC[b]
                half = acc / 2
                row.append(half if sign > 0 else -half)
            rows.append(tuple(row))
        out.append(tuple(rows))
    return tuple(out)


def _dual_pair4(x, basis: GammaBasis, exact: bool, first: bool):
    """Dual of a rank-4 field on its first or last pair, lowered."""
    out = [[[[None] * 4 for _ in range(4)] for _ in range(4)] for _ in range(4)]
    for a, b, c, d in product(range(4), repeat=4):
        acc = zero_scalar(exact)
        pair = (a, b) if first else (c, d)
        for r in range(4):
            for s in range(4):
                e = basis.eps_upper(pair[0], pair[1], r, s)
                if e:
                    val = x[r][s][c][d] if first else x[a][b][r][s]
                    acc = acc + val if e > 0 else acc - val
        sign = METRIC[pair[0]] * METRIC[pair[1]]
        half = acc / 2
        out[a][b][c][d] = half if sign > 0 else -half
    return tuple(tuple(tuple(tuple(col) for col in row) for row in plane) for plane in out)


def _raise1(v):
    return tuple(METRIC[a] * v[a] for a in range(4))


def residual_system(fields: Spin2Fields, p: OnShellMomentum, c: Spin2Coefficients, m, basis: GammaBasis) -> ResidualBundle:
    """Literal momentum-space transcription (d -> -i p) of the four
    first-order equations; the bundle is zero iff all of them hold at p.

    Free indices are kept as printed (upper where the printed equation has
    them upper).
    """
    m = Fraction(m)
    if m <= 0:
        raise ValueError("the first-order system needs m > 0")
    exact = p.exact
    i = imaginary_unit(exact)
    zero = zero_scalar(exact)
    pl = p.lower  # p_mu
    pu = p.upper  # p^mu
    g = fields.rank2_sym
    t = fields.rank3_last_pair
    f = fields.rank3_first_pair
    r4 = fields.rank4
    d4 = fields.rank4_aux
    t_dual = _dual_last_pair3(t, basis, exact)
    f_dual = _dual_first_pair3(f, basis, exact)
    r_dual_first = _dual_pair4(r4, basis, exact, first=True)
    d_dual_last = _dual_pair4(d4, basis, exact, first=False)

    minv = Fraction(1, m)

    def up3_last(x, k, a, b):
        # x_{k}{}^{a b} from covariant storage
        return METRIC[a] * METRIC[b] * x[k][a][b]

    # rank-2 equation:
    # (2 a2 b4 / m) d_nu t_k^{mu nu} + (i a3 b7 / m) eps^{mu nu a b} d_nu t~_{k, a b}
    #   = a1 b1 g_k^{mu}
    rank2 = []
    for k in range(4):
        row = []
        for mu in range(4):
            acc = zero
            for nu in range(4):
                term = pl[nu] * up3_last(t, k, mu, nu)
                acc = acc + (-(i * (2 * c.alpha2 * c.beta4 * minv))) * term
            eps_acc = zero
            for nu in range(4):
                for a in range(4):
                    for b in range(4):
                        e = basis.eps_upper(mu, nu, a, b)
                        if e:
                            term = pl[nu] * t_dual[k][a][b]
                            eps_acc = eps_acc + term if e > 0 else eps_acc - term
            # (i a3 b7/m) eps d_nu -> (i)(-i) = 1 times p_nu
            acc = acc + (c.alpha3 * c.beta7 * minv) * eps_acc
            rhs = (c.alpha1 * c.beta1) * (METRIC[mu] * g[k][mu])
            row.append(acc - rhs)
        rank2.append(tuple(row))

    # rank-3 first-pair equation:
    # (2 a2 b5/m) d_nu r_{kt}^{mu nu} + (i a2 b6/m) eps_{a b k t} d_nu r~^{a b, mu nu}
    # + (i a3 b8/m) eps^{mu nu a b} d_nu d~_{kt, a b}
    # - (a3 b9/2) eps^{mu nu a b} eps_{l d k t} d4^{l d}_{a b}
    #   = a1 b2 f_{kt}^{mu} + (i a1 b3 / 2) eps_{a b k t} f~^{a b, mu}
    rank3_first = []
    for k in range(4):
        plane = []
        for tt in range(4):
            row = []
            for mu in range(4):
                acc = zero
                for nu in range(4):
                    # r_{kt}^{mu nu} needs both trailing indices raised
                    term = pl[nu] * (METRIC[mu] * METRIC[nu] * r4[k][tt][mu][nu])
                    acc = acc + (-(i * (2 * c.alpha2 * c.beta5 * minv))) * term
                acc2 = zero
                for a in range(4):
                    for b in range(4):
                        e1 = basis.eps_lower(a, b, k, tt)
                        if not e1:
                            continue
                        for nu in range(4):
                            # r~^{a b, mu nu}: first-pair dual with all four raised
                            val = (
                                METRIC[a] * METRIC[b] * METRIC[mu] * METRIC[nu]
                                * r_dual_first[a][b][mu][nu]
                            )
                            term = pl[nu] * val
                            acc2 = acc2 + term if e1 > 0 else acc2 - term
                acc = acc + (c.alpha2 * c.beta6 * minv) * acc2
                acc3 = zero
                for nu in range(4):
                    for a in range(4):
                        for b in range(4):
                            e = basis.eps_upper(mu, nu, a, b)
                            if e:
                                term = pl[nu] * d_dual_last[k][tt][a][b]
                                acc3 = acc3 + term if e > 0 else acc3 - term
                acc = acc + (c.alpha3 * c.beta8 * minv) * acc3
                # the printed double-eps term leaves nu dangling; it is read
                # as carrying the d_nu every other nu in this equation does
                acc4 = zero
                for nu in range(4):
                    for a in range(4):
                        for b in range(4):
                            e = basis.eps_upper(mu, nu, a, b)
                            if not e:
                                continue
                            inner = zero
                            for l in range(4):
                                for dd in range(4):
                                    e2 = basis.eps_lower(l, dd, k, tt)
                                    if e2:
                                        val = METRIC[l] * METRIC[dd] * d4[l][dd][a][b]
                                        inner = inner + val if e2 > 0 else inner - val
                            term = pl[nu] * inner
                            acc4 = acc4 + term if e > 0 else acc4 - term
                acc = acc - (c.alpha3 * c.beta9 * Fraction(1, 2)) * (-(i)) * acc4
                rhs = (c.alpha1 * c.beta2) * (METRIC[mu] * f[k][tt][mu])
                rhs_eps = zero
                for a in range(4):
                    for b in range(4):
                        e = basis.eps_lower(a, b, k, tt)
                        if e:
                            val = METRIC[a] * METRIC[b] * METRIC[mu] * f_dual[a][b][mu]
                            rhs_eps = rhs_eps + val if e > 0 else rhs_eps - val
                rhs = rhs + (i * (c.alpha1 * c.beta3 * Fraction(1, 2))) * rhs_eps
                row.append(acc - rhs)
            plane.append(tuple(row))
        rank3_first.append(tuple(plane))

    # rank-3 last-pair equation:
    # 2 a2 b4 t_k^{mu nu} + i a3 b7 eps^{a b mu nu} t~_{k, a b}
    #   = (a1 b1 / m)(d^mu g_k^{nu} - d^nu g_k^{mu})
    rank3_last = []
    for k in range(4):
        plane = []
        for mu in range(4):
            row = []
            for nu in range(4):
                acc = (2 * c.alpha2 * c.beta4) * up3_last(t, k, mu, nu)
                eps_acc = zero
                for a in range(4):
                    for b in range(4):
                        e = basis.eps_upper(a, b, mu, nu)
                        if e:
                            eps_acc = eps_acc + t_dual[k][a][b] if e > 0 else eps_acc - t_dual[k][a][b]
                acc = acc + (i * (c.alpha3 * c.beta7)) * eps_acc
                rhs = (-(i * (c.alpha1 * c.beta1 * minv))) * (
                    pu[mu] * (METRIC[nu] * g[k][nu]) - pu[nu] * (METRIC[mu] * g[k][mu])
                )
                row.append(acc - rhs)
            plane.append(tuple(row))
        rank3_last.append(tuple(plane))

    # rank-4 equation:
    # 2 a2 b5 r_{kt}^{mu nu} + i a3 b8 eps^{a b mu nu} d~_{kt, a b}
    # + i a2 b6 eps_{a b k t} r~^{a b, mu nu}
    # - (a3 b9/2) eps^{a b mu nu} eps_{l d k t} d4^{l d}_{a b}
    #   = (a1 b2/m)(d^mu f_{kt}^{nu} - d^nu f_{kt}^{mu})
    #   + (i a1 b3 / 2m) eps_{a b k t} (d^mu f~^{a b, nu} - d^nu f~^{a b, mu})
    rank4 = []
    for k in range(4):
        cube = []
        for tt in range(4):
            plane = []
            for mu in range(4):
                row = []
                for nu in range(4):
                    acc = (2 * c.alpha2 * c.beta5) * (METRIC[mu] * METRIC[nu] * r4[k][tt][mu][nu])
                    acc2 = zero
                    for a in range(4):
                        for b in range(4):
                            e = basis.eps_upper(a, b, mu, nu)
                            if e:
                                acc2 = acc2 + d_dual_last[k][tt][a][b] if e > 0 else acc2 - d_dual_last[k][tt][a][b]
                    acc = acc + (i * (c.alpha3 * c.beta8)) * acc2
                    acc3 = zero
                    for a in range(4):
                        for b in range(4):
                            e = basis.eps_lower(a, b, k, tt)
                            if e:
                                val = (
                                    METRIC[a] * METRIC[b] * METRIC[mu] * METRIC[nu]
                                    * r_dual_first[a][b][mu][nu]
                                )
                                acc3 = acc3 + val if e > 0 else acc3 - val
                    acc = acc + (i * (c.alpha2 * c.beta6)) * acc3
                    acc4 = zero
                    for a in range(4):
                        for b in range(4):
                            e = basis.eps_upper(a, b, mu, nu)
                            if not e:
                                continue
                            inner = zero
                            for l in range(4):
                                for dd in range(4):
                                    e2 = basis.eps_lower(l, dd, k, tt)
                                    if e2:
                                        val = METRIC[l] * METRIC[dd] * d4[l][dd][a][b]
                                        inner = inner + val if e2 > 0 else inner - val
                            acc4 = acc4 + inner if e > 0 else acc4 - inner
                    acc = acc - (c.alpha3 * c.beta9 * Fraction(1, 2)) * acc4
                    rhs = (-(i * (c.alpha1 * c.beta2 * minv))) * (
                        pu[mu] * (METRIC[nu] * f[k][tt][nu])
                        - pu[nu] * (METRIC[mu] * f[k][tt][mu])
                    )
                    rhs_eps = zero
                    for a in range(4):
                        for b in range(4):
                            e = basis.eps_lower(a, b, k, tt)
                            if not e:
                                continue
                            val_nu = METRIC[a] * METRIC[b] * METRIC[nu] * f_dual[a][b][nu]
                            val_mu = METRIC[a] * METRIC[b] * METRIC[mu] * f_dual[a][b][mu]
                            term = pu[mu] * val_nu - pu[nu] * val_mu
                            rhs_eps = rhs_eps + term if e > 0 else rhs_eps - term
                    rhs = rhs + (i * (c.alpha1 * c.beta3 * Fraction(1, 2) * minv)) * (-(i)) * rhs_eps
                    row.append(acc - rhs)
                plane.append(tuple(row))
            cube.append(tuple(plane))
        rank4.append(tuple(cube))

    return ResidualBundle(
        (
            ("rank2", tuple(rank2)),
            ("rank3_first_pair", tuple(rank3_first)),
            ("rank3_last_pair", tuple(rank3_last)),
            ("rank4", tuple(rank4)),
        )
    )


def residual_second_order(g, p: OnShellMomentum, m) -> tuple:
    """Residual of the second-order equation for the symmetric tensor,

        (1/m^2) [d_nu d^mu g_k^{nu} - d_nu d^nu g_k^{mu}] = g_k^{mu},

    stored with both free indices lowered.
    """
    m = Fraction(m)
    if m <= 0:
        raise ValueError("the second-order equation needs m > 0")
    exact = p.exact
    pl = p.lower
    pu = p.upper
    minv2 = Fraction(1, m * m)
    p2 = pu[0] * pl[0] + pu[1] * pl[1] + pu[2] * pl[2] + pu[3] * pl[3]
    rows = []
    for k in range(4):
        # p_nu g_k^{nu} = p^nu g_{k nu}
        pg = pu[0] * g[k][0] + pu[1] * g[k][1] + pu[2] * g[k][2] + pu[3] * g[k][3]
        row = []
        for mu in range(4):
            lead = -(pl[mu] * pg) + p2 * g[k][mu]
            row.append(minv2 * lead - g[k][mu])
        rows.append(tuple(row))
    return tuple(rows)


def contract_to_vector(g, p: OnShellMomentum, m) -> tuple:
    """The contraction pair: F_k = -i p_mu g^{mu}{}_k and the scalar
    (1/m^2)(-i p_k F^k); both returned (vector covariant)."""
    m = Fraction(m)
    if m <= 0:
        raise ValueError("the contraction pair needs m > 0")
    exact = p.exact
    i = imaginary_unit(exact)
    pu = p.upper
    f_vec = tuple(
        -(i * (pu[0] * g[0][k] + pu[1] * g[1][k] + pu[2] * g[2][k] + pu[3] * g[3][k]))
        for k in range(4)
    )
    f_up = _raise1(f_vec)
    pf = p.lower[0] * f_up[0] + p.lower[1] * f_up[1] + p.lower[2] * f_up[2] + p.lower[3] * f_up[3]
    scalar = Fraction(1, m * m) * (-(i * pf))
    return f_vec, scalar


def transversality_equivalence(g, p: OnShellMomentum, m) -> tuple[bool, bool]:
    """On shell, the second-order residual vanishes iff p_nu g_k^{nu} = 0.

    Returns both booleans; they must agree whenever p^2 = m^2, and the
    call refuses an off-shell momentum/mass combination.
    """
    m = Fraction(m)
    pl = p.lower
    pu = p.upper
    p2 = pu[0] * pl[0] + pu[1] * pl[1] + pu[2] * pl[2] + pu[3] * pl[3]
    if p2 != make_scalar(m * m, p.exact):
        raise OffShellMomentum(f"p^2 = {p2} but m^2 = {m * m}")
    residual_zero = is_zero(residual_second_order(g, p, m))
    transverse = all(
        not (pu[0] * g[k][0] + pu[1] * g[k][1] + pu[2] * g[k][2] + pu[3] * g[k][3])
        for k in range(4)
    )
    return residual_zero, transverse


def random_symmetric_tensor(rng, exact: bool = True):
    """Seeded random symmetric rank-2 tensor with small rational entries."""
    entries = {}
    for a in range(4):
        for b in range(a, 4):
            re = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
            im = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
            entries[(a, b)] = make_scalar(re, exact) + imaginary_unit(exact) * make_scalar(im, exact)
    return tuple(
        tuple(entries[(min(a, b), max(a, b))] for b in range(4)) for a in range(4)
    )


def transverse_tensor_from_vector(u_lowered, exact: bool = True):
    """g_{k mu} = u_k u_mu, transverse whenever p.u = 0."""
    return tuple(tuple(u_lowered[a] * u_lowered[b] for b in range(4)) for a in range(4))
