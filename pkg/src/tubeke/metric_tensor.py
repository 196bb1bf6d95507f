"""Metric tensor of T_p and its complex derivatives to total order four.

The potential is g = F(X) + L with X the orbit coordinate and
L = (K/p) ln(1/(1 - 4p Re z1)).  Both X and L depend on (Re z1, Re z2)
only, so every Wirtinger derivative with respect to z_k or conj(z_k)
equals (1/2) d/d(Re z_k) applied as many times as the index appears:
the value of a mixed derivative depends only on how many indices belong
to the z1 family and how many to the z2 family, never on their bar
pattern or order.  That collapses the 4^4 possible index words of order
four into a small (a, b)-count table with fully closed-form entries, and
makes every metric derivative a short chain-rule combination of
(f, f', f'', f''') at X(z) with the table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .params import TubeParams
from .potential_solver import PotentialSolution
from .tube_geometry import Point, in_domain

__all__ = [
    "XLDerivatives",
    "MetricJet",
    "x_derivatives",
    "metric_jet",
    "einstein_residual",
]

_IDX = (1, 2)


def _counts(indices) -> tuple[int, int]:
    """(number of z1-family indices, number of z2-family indices)."""
    a = sum(1 for i in indices if i == 1)
    return a, len(indices) - a


@dataclass(frozen=True)
class XLDerivatives:
    """Closed-form derivative tables of X and L at a fixed point.

    dX[(a, b)] is the common value of every order-(a+b) Wirtinger
    derivative of X with a indices from {z1, conj(z1)} and b from
    {z2, conj(z2)}; likewise dL for L.  Index helpers look entries up
    from an index word (values 1 or 2; bars are irrelevant).
    """

    x_value: float
    r: float  # 1 - 4p Re(z1)
    dX: dict = field(repr=False)
    dL: dict = field(repr=False)

    def X(self, *indices) -> float:
        return self.dX[_counts(indices)]

    def L(self, *indices) -> float:
        return self.dL[_counts(indices)]


def x_derivatives(params: TubeParams, z: Point, max_total_order: int = 4) -> XLDerivatives:
    """Derivative tables of X and L at z, up to the requested total order.

    With r = 1 - 4p Re(z1), s = 1/(2p) and c_a = prod_{j<a} (1 + 2pj):

        dX[(a, 0)] = c_a X / r^a        dX[(a, 1)] = c_a / (2 r^{s+a})
        dX[(a, b>=2)] = 0
        dL[(0, 0)] = (K/p) ln(1/r)      dL[(a>=1, 0)] = 2K (a-1)! (2p)^{a-1} / r^a
        dL[(a, b>=1)] = 0

    Each z1-type derivative of r^{-q} contributes a factor 2pq/r, which is
    where the rising products c_a come from; X is affine in Re(z2), so two
    z2-type indices annihilate it, and L does not see z2 at all.
    """
    if not 0 <= max_total_order <= 4:
        raise ValueError(f"max_total_order must be in 0..4, got {max_total_order}")
    p = params.p
    r = 1.0 - 4 * p * z.z1.real
    if r <= 0.0:
        raise DomainError(f"derivative tables undefined: Re(4p z1) >= 1 at {z}")
    s = 1.0 / (2 * p)
    t = z.z2.real
    x = t / r**s
    c = [1.0, 1.0]
    for a in range(2, max_total_order + 1):
        c.append(c[-1] * (1.0 + 2 * p * (a - 1)))
    K = params.K_float
    dX, dL = {}, {}
    for a in range(max_total_order + 1):
        for b in range(max_total_order + 1 - a):
            if b == 0:
                dX[(a, b)] = c[a] * x / r**a
            elif b == 1:
                dX[(a, b)] = c[a] / (2.0 * r ** (s + a))
            else:
                dX[(a, b)] = 0.0
            if a == 0 and b == 0:
                dL[(a, b)] = (K / p) * math.log(1.0 / r)
            elif b == 0:
                dL[(a, b)] = 2.0 * K * math.factorial(a - 1) * (2 * p) ** (a - 1) / r**a
            else:
                dL[(a, b)] = 0.0
    return XLDerivatives(x_value=x, r=r, dX=dX, dL=dL)


@dataclass(frozen=True)
class MetricJet:
    """Metric matrix at a point with the derivatives curvature needs.

    All entries are real: the potential depends only on (Re z1, Re z2),
    so g and every complex derivative of it is real.  d3 maps (i, j, k)
    to g_{i jbar k} (derivative of g_{i jbar} by z_k) and d4 maps
    (i, j, k, l) to g_{i jbar k lbar}; both are symmetric in their
    unbarred (i, k) and barred (j, l) slots.
    """

    point: Point
    x_value: float
    metric: np.ndarray = field(repr=False)
    inverse: np.ndarray = field(repr=False)
    det: float = 0.0
    d3: dict = field(repr=False, default_factory=dict)
    d4: dict = field(repr=False, default_factory=dict)


def metric_jet(sol: PotentialSolution, z: Point) -> MetricJet:
    """Evaluate g, its inverse/determinant and third/fourth derivatives.

    Chain rule on g = F(X) + L using the count tables:

        g_{ij}   = f' X_i X_j + f X_{ij} + L_{ij}
        g_{ijk}  = f'' X_i X_j X_k
                   + f' (X_{ij} X_k + X_{ik} X_j + X_{kj} X_i)
                   + f X_{ijk} + L_{ijk}
        g_{ijkl} = f''' X_i X_j X_k X_l
                   + f'' (all six pair-contractions)
                   + f' (four triple-contractions + X_{ij}X_{kl}
                         + X_{ik}X_{jl} + X_{il}X_{kj})
                   + f X_{ijkl} + L_{ijkl}

    with every X/L factor taken from the tables (bars immaterial).

    Parameters
    ----------
    sol : PotentialSolution
        Solved potential for the same p.
    z : Point
        A point of T_p.

    Returns
    -------
    MetricJet
    """
    params = sol.params
    if not in_domain(params, z):
        raise DomainError(f"point {z} is not in T_{params.p}")
    tab = x_derivatives(params, z, 4)
    f, f1, f2, f3 = sol.eval_f_derivs(tab.x_value, 3)
    dX, dL = tab.X, tab.L

    def g2(i, j):
        return f1 * dX(i) * dX(j) + f * dX(i, j) + dL(i, j)

    def g3(i, j, k):
        return (
            f2 * dX(i) * dX(j) * dX(k)
            + f1 * (dX(i, j) * dX(k) + dX(i, k) * dX(j) + dX(k, j) * dX(i))
            + f * dX(i, j, k)
            + dL(i, j, k)
        )

    def g4(i, j, k, l):
        return (
            f3 * dX(i) * dX(j) * dX(k) * dX(l)
            + f2 * (dX(i, j) * dX(k) * dX(l) + dX(i, k) * dX(j) * dX(l)
                    + dX(i, l) * dX(j) * dX(k) + dX(k, j) * dX(i) * dX(l)
                    + dX(k, l) * dX(i) * dX(j) + dX(j, l) * dX(i) * dX(k))
            + f1 * (dX(i, j, k) * dX(l) + dX(i, j, l) * dX(k)
                    + dX(i, k, l) * dX(j) + dX(j, k, l) * dX(i)
                    + dX(i, j) * dX(k, l) + dX(i, k) * dX(j, l) + dX(i, l) * dX(k, j))
            + f * dX(i, j, k, l)
            + dL(i, j, k, l)
        )

    # every value depends only on how many indices are of z1 type, so
    # compute one representative per count class and mirror it — this keeps
    # the tables bit-exactly symmetric under index permutation
    g11, g12, g22 = g2(1, 1), g2(1, 2), g2(2, 2)
    g = np.array([[g11, g12], [g12, g22]])
    det = g11 * g22 - g12 * g12
    inverse = np.array([[g22, -g12], [-g12, g11]]) / det
    val3 = {m: g3(*([1] * m + [2] * (3 - m))) for m in range(4)}
    val4 = {m: g4(*([1] * m + [2] * (4 - m))) for m in range(5)}
    d3 = {(i, j, k): val3[(i, j, k).count(1)]
          for i in _IDX for j in _IDX for k in _IDX}
    d4 = {(i, j, k, l): val4[(i, j, k, l).count(1)]
          for i in _IDX for j in _IDX for k in _IDX for l in _IDX}
    return MetricJet(point=z, x_value=tab.x_value, metric=g, inverse=inverse,
                     det=float(det), d3=d3, d4=d4)


def einstein_residual(sol: PotentialSolution, z: Point) -> float:
    """Relative defect of det[g] = e^{3 g(z)} with g(z) = F(X(z)) + L(z).

    The solver enforces this closure along the axis; evaluating it at an
    arbitrary point exercises the whole chain-rule assembly, so it is the
    cheapest end-to-end consistency probe for the metric path.
    """
    params = sol.params
    if not in_domain(params, z):
        raise DomainError(f"point {z} is not in T_{params.p}")
    tab = x_derivatives(params, z, 2)
    f, f1 = sol.eval_f_derivs(tab.x_value, 1)
    dX, dL = tab.X, tab.L
    g11 = f1 * dX(1) * dX(1) + f * dX(1, 1) + dL(1, 1)
    g12 = f1 * dX(1) * dX(2) + f * dX(1, 2) + dL(1, 2)
    g22 = f1 * dX(2) * dX(2) + f * dX(2, 2) + dL(2, 2)
    det = g11 * g22 - g12 * g12
    potential = sol.eval_F(tab.x_value) + dL()
    rhs = math.exp(3.0 * potential)
    return abs(det - rhs) / rhs
