"""Small index-gymnastics helpers shared by the residual evaluators.

All tensors are plain nested tuples of scalars.  Unless a function says
otherwise, stored components are covariant (lower indices) and raising or
lowering is an explicit metric contraction with g = diag(+1, -1, -1, -1).
"""

from __future__ import annotations

from .clifford import METRIC, epsilon4
from .exact import Scalar, zero_scalar

Vec4 = tuple
Mat44 = tuple


def flip_index(v: Vec4) -> Vec4:
    """Raise or lower a four-vector index (the diagonal metric is its own
    inverse)."""
    return (v[0], -v[1], -v[2], -v[3])


def flip_both_indices(x: Mat44) -> Mat44:
    return tuple(
        tuple(METRIC[a] * METRIC[b] * x[a][b] for b in range(4)) for a in range(4)
    )


def vec_add(u: Vec4, v: Vec4) -> Vec4:
    return tuple(a + b for a, b in zip(u, v))

def vec_sub(u: Vec4, v: Vec4) -> Vec4:
    return tuple(a - b for a, b in zip(u, v))

def vec_scale(c, v: Vec4) -> Vec4:
    return tuple(c * a for a in v)


def mat_add(x: Mat44, y: Mat44) -> Mat44:
    return tuple(tuple(a + b for a, b in zip(rx, ry)) for rx, ry in zip(x, y))

def mat_sub(x: Mat44, y: Mat44) -> Mat44:
    return tuple(tuple(a - b for a, b in zip(rx, ry)) for rx, ry in zip(x, y))

def mat_scale(c, x: Mat44) -> Mat44:
    return tuple(tuple(c * a for a in row) for row in x)


def zeros_vec(exact: bool = True) -> Vec4:
    return (zero_scalar(exact),) * 4


def zeros_mat(exact: bool = True) -> Mat44:
    return ((zero_scalar(exact),) * 4,) * 4


def wedge(u: Vec4, v: Vec4) -> Mat44:
    """(u wedge v)_{ab} = u_a v_b - u_b v_a."""
    return tuple(
        tuple(u[a] * v[b] - u[b] * v[a] for b in range(4)) for a in range(4)
    )


def is_antisymmetric(x: Mat44) -> bool:
    return all(not (x[a][b] + x[b][a]) for a in range(4) for b in range(a, 4))


def is_symmetric(x: Mat44) -> bool:
    return all(not (x[a][b] - x[b][a]) for a in range(4) for b in range(a + 1, 4))


def is_zero(tensor) -> bool:
    """True when every scalar in an arbitrarily nested tuple is zero."""
    if isinstance(tensor, tuple):
        return all(is_zero(part) for part in tensor)
    return not tensor


def max_magnitude(tensor) -> float:
    if isinstance(tensor, tuple):
        return max((max_magnitude(part) for part in tensor), default=0.0)
    return abs(tensor)


def dual_cov(x_cov: Mat44, eps_sign: int, exact: bool = True) -> Mat44:
    """Covariant components of the dual of a covariant antisymmetric pair:
    first X~^{ab} = (1/2) eps^{abrs} X_{rs}, then both indices lowered.
    """
    rows = []
    for a in range(4):
        row = []
        for b in range(4):
            acc = zero_scalar(exact)
            for r in range(4):
                for s in range(4):
                    e = epsilon4(a, b, r, s)
                    if e:
                        term = x_cov[r][s]
                        acc = acc + term if e > 0 else acc - term
            sign = METRIC[a] * METRIC[b] * eps_sign
            half = acc / 2
            row.append(half if sign > 0 else -half)
        rows.append(tuple(row))
    return tuple(rows)


def contract_vec(p_upper: Vec4, x_cov: Mat44, slot: int, exact: bool = True) -> Vec4:
    """p^a X_{a b} (slot=0) or p^a X_{b a} (slot=1), result covariant in b."""
    out = []
    for b in range(4):
        acc = zero_scalar(exact)
        for a in range(4):
            acc = acc + p_upper[a] * (x_cov[a][b] if slot == 0 else x_cov[b][a])
        out.append(acc)
    return tuple(out)


def minkowski_dot(u_upper: Vec4, v_cov: Vec4, exact: bool = True) -> Scalar:
    """u^a v_a."""
    acc = zero_scalar(exact)
    for a in range(4):
        acc = acc + u_upper[a] * v_cov[a]
    return acc


def cross3(u, v):
    """Spatial cross product of two 3-tuples of scalars."""
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )
