"""Curvature tensor, bisectional/sectional curvatures and their extremes.

The curvature coefficients at a point follow from the metric jet as

    R_{i jbar k lbar} = -g_{i jbar k lbar}
                        + sum_{a,b} g_{i k abar} g^{abar b} g_{b jbar lbar},

all real, with the symmetries i<->k, j<->l and pair exchange leaving six
independent values.  The bisectional curvature of a vector pair then only
sees each vector through four real features

    u(v) = [|v1|^2, |v2|^2, Re(v1 conj(v2)), Im(v1 conj(v2))],

giving Bis(v, w) = u(v)^T C u(w) / ((u(v).gvec)(u(w).gvec)) for a fixed
4x4 symmetric matrix C built from the six coefficients and
gvec = [g11, g22, 2 g12, 0].  That bilinear form is what the extremal
searches optimize: a coarse tensor-product grid over the angles
(theta_v, theta_w, alpha, beta) evaluated as one matrix product, then
Nelder-Mead refinement from the best cells.  The classical 16-term
curvature sum is kept as an independent cross-check path.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize

from .errors import DomainError
from .params import TubeParams
from .potential_solver import PotentialSolution
from .tube_geometry import Point, in_domain, x_invariant
from .metric_tensor import MetricJet, metric_jet

__all__ = [
    "CurvatureTensor",
    "TangentPair",
    "SearchConfig",
    "BisExtremes",
    "curvature_tensor",
    "tensor_from_jet",
    "bisectional",
    "bisectional_batch",
    "sectional",
    "bis_extremes",
    "bis_extremes_from_jet",
    "sectional_max",
    "sectional_max_from_jet",
    "boundary_limit_bis",
    "origin_closed_forms",
    "OriginValues",
    "extremal_sectional_vector",
]

_IDX = (1, 2)


@dataclass(frozen=True)
class CurvatureTensor:
    """The six independent curvature coefficients at a point.

    Naming follows the index pattern (i, jbar, k, lbar); every other
    coefficient is reached through the symmetries
    R(i,j,k,l) = R(k,j,i,l) = R(i,l,k,j) = R(j,i,l,k).
    """

    R1111: float
    R1112: float
    R1122: float
    R1212: float
    R1222: float
    R2222: float

    def coeff(self, i: int, j: int, k: int, l: int) -> float:
        """Coefficient R_{i jbar k lbar} for arbitrary indices in {1, 2}."""
        ones = (i, j, k, l).count(1)
        if ones == 4:
            return self.R1111
        if ones == 3:
            return self.R1112
        if ones == 1:
            return self.R1222
        if ones == 0:
            return self.R2222
        # two of each: like-slot pairs give R1212, crossed pairs R1122
        return self.R1212 if i == k else self.R1122

    def as_dict(self) -> dict:
        return {
            "R1111": self.R1111, "R1112": self.R1112, "R1122": self.R1122,
            "R1212": self.R1212, "R1222": self.R1222, "R2222": self.R2222,
        }


@dataclass(frozen=True)
class TangentPair:
    """Two nonzero tangent vectors with their feature angles.

    alpha (resp. beta) is an argument of v1*conj(v2) (resp. w1*conj(w2))
    when that product is nonzero, else 0; only the features
    (|v1|, |v2|, alpha) enter any curvature value.
    """

    v: np.ndarray
    w: np.ndarray
    alpha: float = field(init=False)
    beta: float = field(init=False)

    def __post_init__(self):
        v = np.asarray(self.v, dtype=complex).reshape(2)
        w = np.asarray(self.w, dtype=complex).reshape(2)
        if not (np.all(np.isfinite(v.view(float))) and np.all(np.isfinite(w.view(float)))):
            raise ValueError("tangent vectors must be finite")
        if np.all(v == 0) or np.all(w == 0):
            raise ValueError("tangent vectors must be nonzero")
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "alpha", cmath.phase(v[0] * v[1].conjugate()))
        object.__setattr__(self, "beta", cmath.phase(w[0] * w[1].conjugate()))


@dataclass(frozen=True)
class SearchConfig:
    """Budget of the extremal searches.

    The coarse grid is n_theta x n_theta x n_alpha x n_alpha over
    (theta_v, theta_w, alpha, beta) in [0, pi/2]^2 x [0, 2pi]^2; the
    alpha grid contains the multiples of pi/2 where the extremes are
    known to sit, so refinement only polishes.
    """

    n_theta: int = 17
    n_alpha: int = 25
    polish_starts: int = 5
    polish_maxiter: int = 400

    def __post_init__(self):
        if self.n_theta < 3 or self.n_alpha < 5:
            raise ValueError("search grid too coarse")
        if self.polish_starts < 1:
            raise ValueError("polish_starts must be >= 1")


@dataclass(frozen=True)
class BisExtremes:
    min: float
    argmin: TangentPair
    max: float
    argmax: TangentPair


# ---------------------------------------------------------------------------
# tensor assembly
# ---------------------------------------------------------------------------

def tensor_from_jet(jet: MetricJet) -> CurvatureTensor:
    """Curvature coefficients from an already computed metric jet."""
    d3, d4, ginv = jet.d3, jet.d4, jet.inverse

    def R(i, j, k, l):
        s = 0.0
        for a in _IDX:
            for b in _IDX:
                s += d3[(i, a, k)] * ginv[a - 1, b - 1] * d3[(b, j, l)]
        return -d4[(i, j, k, l)] + s

    return CurvatureTensor(
        R1111=R(1, 1, 1, 1), R1112=R(1, 1, 1, 2), R1122=R(1, 1, 2, 2),
        R1212=R(1, 2, 1, 2), R1222=R(1, 2, 2, 2), R2222=R(2, 2, 2, 2),
    )


def curvature_tensor(sol: PotentialSolution, z: Point) -> CurvatureTensor:
    """The six curvature coefficients of the metric at z."""
    return tensor_from_jet(metric_jet(sol, z))


# ---------------------------------------------------------------------------
# bisectional / sectional values
# ---------------------------------------------------------------------------

def _features(v) -> np.ndarray:
    cross = v[0] * np.conjugate(v[1])
    return np.array([abs(v[0]) ** 2, abs(v[1]) ** 2, cross.real, cross.imag])


def _form(jet: MetricJet, tensor: CurvatureTensor) -> tuple[np.ndarray, np.ndarray]:
    """(C, gvec) of the feature bilinear form, conditioned near x = 1.

    Beyond |x| = 0.999 both are pre-scaled by powers of 1/g22 (the same
    magnitude as the 1/f^2 normalization natural near the boundary); the
    Bis ratio is invariant under this joint rescaling but the intermediate
    products stay in comfortable double range.
    """
    g = jet.metric
    sc = 1.0 / g[1, 1] if abs(jet.x_value) > 0.999 else 1.0
    g11, g12, g22 = g[0, 0] * sc, g[0, 1] * sc, g[1, 1] * sc
    sc2 = sc * sc
    R1111 = tensor.R1111 * sc2
    R1112 = tensor.R1112 * sc2
    R1122 = tensor.R1122 * sc2
    R1212 = tensor.R1212 * sc2
    R1222 = tensor.R1222 * sc2
    R2222 = tensor.R2222 * sc2
    C = np.array([
        [R1111,        R1122,        2.0 * R1112,           0.0],
        [R1122,        R2222,        2.0 * R1222,           0.0],
        [2.0 * R1112,  2.0 * R1222,  2.0 * (R1122 + R1212), 0.0],
        [0.0,          0.0,          0.0,                   2.0 * (R1122 - R1212)],
    ])
    gvec = np.array([g11, g22, 2.0 * g12, 0.0])
    return C, gvec


def _bis_from_form(C, gvec, uv, uw) -> float:
    return float(uv @ C @ uw) / (float(uv @ gvec) * float(uw @ gvec))


def _bis_direct(jet: MetricJet, tensor: CurvatureTensor, v, w) -> float:
    """Classical 16-term curvature sum; independent cross-check path."""
    num = 0.0 + 0.0j
    for i in _IDX:
        for j in _IDX:
            for k in _IDX:
                for l in _IDX:
                    num += (tensor.coeff(i, j, k, l)
                            * v[i - 1] * np.conjugate(v[j - 1])
                            * w[k - 1] * np.conjugate(w[l - 1]))
    g = jet.metric

    def sq_norm(u):
        return (g[0, 0] * abs(u[0]) ** 2 + g[1, 1] * abs(u[1]) ** 2
                + 2.0 * (g[0, 1] * u[0] * np.conjugate(u[1])).real)

    return num.real / (sq_norm(v) * sq_norm(w))


def _pull_to_axis(sol: PotentialSolution, z: Point, vectors):
    """Axis representative (0, X(z)) and the push-forwards of the vectors.

    The normalizing automorphism has the diagonal Jacobian
    diag(lam, lam^{1/(2p)}) with lam = 1/(1 - Re(4p z1)); bisectional
    curvature is invariant under it, so evaluating on the axis loses
    nothing and keeps the potential evaluators at their best-conditioned
    abscissa.
    """
    p = sol.params.p
    lam = 1.0 / (1.0 - 4 * p * z.z1.real)
    x = x_invariant(sol.params, z)
    j1, j2 = lam, lam ** (1.0 / (2 * p))
    pushed = [np.array([j1 * u[0], j2 * u[1]]) for u in vectors]
    return Point(0j, complex(x)), pushed


def bisectional(sol: PotentialSolution, z: Point, pair: TangentPair,
                *, normalize: bool = True, formula: str = "tube") -> float:
    """Holomorphic bisectional curvature Bis_z(v, w).

    Parameters
    ----------
    sol, z, pair
        Solved potential, evaluation point in T_p, and the vector pair.
    normalize : bool
        When true (default) the evaluation is moved to the axis
        representative (0, X(z)) with push-forward vectors, which is
        exact by automorphism invariance.  False evaluates the raw jet
        at z itself — useful precisely for testing that invariance.
    formula : {"tube", "direct"}
        "tube" uses the feature bilinear form; "direct" the 16-term
        curvature sum.  They agree to ~1e-10 relative and exist so that
        each can certify the other.

    Returns
    -------
    float
        The curvature value; invariant under nonzero complex rescaling
        of either vector.
    """
    if not in_domain(sol.params, z):
        raise DomainError(f"point {z} is not in T_{sol.params.p}")
    if normalize:
        z, (v, w) = _pull_to_axis(sol, z, (pair.v, pair.w))
    else:
        v, w = pair.v, pair.w
    jet = metric_jet(sol, z)
    tensor = tensor_from_jet(jet)
    if formula == "tube":
        C, gvec = _form(jet, tensor)
        return _bis_from_form(C, gvec, _features(v), _features(w))
    if formula == "direct":
        return _bis_direct(jet, tensor, v, w)
    raise ValueError(f"unknown formula {formula!r} (expected 'tube' or 'direct')")


def bisectional_batch(sol: PotentialSolution, z: Point, vs, ws,
                      *, normalize: bool = True) -> np.ndarray:
    """Bis_z(v_i, w_i) for stacked vector pairs, via the feature form.

    vs, ws : (n, 2) complex arrays of nonzero vectors.
    """
    vs = np.asarray(vs, dtype=complex)
    ws = np.asarray(ws, dtype=complex)
    if not in_domain(sol.params, z):
        raise DomainError(f"point {z} is not in T_{sol.params.p}")
    if normalize:
        z, (vs, ws) = _pull_to_axis(sol, z, (vs.T, ws.T))
        vs, ws = vs.T, ws.T
    jet = metric_jet(sol, z)
    C, gvec = _form(jet, tensor_from_jet(jet))
    cross_v = vs[:, 0] * np.conjugate(vs[:, 1])
    cross_w = ws[:, 0] * np.conjugate(ws[:, 1])
    Uv = np.column_stack([np.abs(vs[:, 0]) ** 2, np.abs(vs[:, 1]) ** 2,
                          cross_v.real, cross_v.imag])
    Uw = np.column_stack([np.abs(ws[:, 0]) ** 2, np.abs(ws[:, 1]) ** 2,
                          cross_w.real, cross_w.imag])
    num = np.einsum("ij,jk,ik->i", Uv, C, Uw)
    return num / ((Uv @ gvec) * (Uw @ gvec))


def sectional(sol: PotentialSolution, z: Point, v) -> float:
    """Holomorphic sectional curvature S_z(v) = Bis_z(v, v)."""
    return bisectional(sol, z, TangentPair(v=v, w=v))


def boundary_limit_bis(jet: MetricJet, pair: TangentPair) -> float:
    """The strictly pseudoconvex boundary limit of Bis for a fixed pair.

    Value -1 - |<v,w>_g|^2 / (|v|_g^2 |w|_g^2), always in [-2, -1]:
    -2 at proportional vectors (Cauchy-Schwarz equality), -1 at
    g-orthogonal ones.
    """
    g = jet.metric
    v, w = pair.v, pair.w
    ip_vw = (g[0, 0] * v[0] * np.conjugate(w[0]) + g[0, 1] * v[0] * np.conjugate(w[1])
             + g[1, 0] * v[1] * np.conjugate(w[0]) + g[1, 1] * v[1] * np.conjugate(w[1]))
    ip_vv = (g[0, 0] * abs(v[0]) ** 2 + g[1, 1] * abs(v[1]) ** 2
             + 2.0 * (g[0, 1] * v[0] * np.conjugate(v[1])).real)
    ip_ww = (g[0, 0] * abs(w[0]) ** 2 + g[1, 1] * abs(w[1]) ** 2
             + 2.0 * (g[0, 1] * w[0] * np.conjugate(w[1])).real)
    return -1.0 - abs(ip_vw) ** 2 / (ip_vv * ip_ww)


# ---------------------------------------------------------------------------
# extremal searches
# ---------------------------------------------------------------------------

def _angle_grid(config: SearchConfig):
    thetas = np.linspace(0.0, math.pi / 2, config.n_theta)
    alphas = np.linspace(0.0, 2.0 * math.pi, config.n_alpha)
    tt, aa = np.meshgrid(thetas, alphas, indexing="ij")
    m = np.cos(tt).ravel()
    n = np.sin(tt).ravel()
    U = np.column_stack([m * m, n * n, m * n * np.cos(aa).ravel(), m * n * np.sin(aa).ravel()])
    return thetas, alphas, U


def _vector_from_angles(theta: float, alpha: float) -> np.ndarray:
    # features of (cos t, sin t e^{-i a}) are [cos^2 t, sin^2 t,
    # cos t sin t cos a, cos t sin t sin a]
    return np.array([math.cos(theta), math.sin(theta) * cmath.exp(-1j * alpha)])


def _u_of(q_theta: float, q_alpha: float) -> np.ndarray:
    m, n = math.cos(q_theta), math.sin(q_theta)
    return np.array([m * m, n * n, m * n * math.cos(q_alpha), m * n * math.sin(q_alpha)])


def bis_extremes_from_jet(jet: MetricJet, tensor: CurvatureTensor,
                          config: SearchConfig | None = None) -> BisExtremes:
    """Extremes of Bis over all nonzero pairs at a fixed point.

    By scale invariance the search space is (theta_v, theta_w, alpha,
    beta); the grid evaluates all pairs at once as U C U^T over the
    feature matrix U, then Nelder-Mead polishes the best cells.
    """
    config = config or SearchConfig()
    thetas, alphas, U = _angle_grid(config)
    C, gvec = _form(jet, tensor)
    den = U @ gvec
    val = (U @ C @ U.T) / np.outer(den, den)

    def objective(q, sign):
        uv = _u_of(q[0], q[2])
        uw = _u_of(q[1], q[3])
        return sign * _bis_from_form(C, gvec, uv, uw)

    n_a = config.n_alpha
    results = {}
    for mode, sign in (("min", 1.0), ("max", -1.0)):
        flat = (sign * val).ravel()
        order = np.argsort(flat)[: config.polish_starts]
        best_val, best_q = math.inf, None
        for idx in order:
            iv, iw = np.unravel_index(idx, val.shape)
            q0 = np.array([thetas[iv // n_a], thetas[iw // n_a],
                           alphas[iv % n_a], alphas[iw % n_a]])
            res = minimize(objective, q0, args=(sign,), method="Nelder-Mead",
                           options=dict(xatol=1e-9, fatol=1e-13,
                                        maxiter=config.polish_maxiter))
            if res.fun < best_val:
                best_val, best_q = res.fun, res.x
        pair = TangentPair(v=_vector_from_angles(best_q[0], best_q[2]),
                           w=_vector_from_angles(best_q[1], best_q[3]))
        results[mode] = (float(sign * best_val), pair)
    return BisExtremes(min=results["min"][0], argmin=results["min"][1],
                       max=results["max"][0], argmax=results["max"][1])


def bis_extremes(sol: PotentialSolution, z: Point,
                 config: SearchConfig | None = None) -> BisExtremes:
    """Extremes of Bis_z over vector pairs; evaluated on the axis orbit."""
    if not in_domain(sol.params, z):
        raise DomainError(f"point {z} is not in T_{sol.params.p}")
    axis = Point(0j, complex(x_invariant(sol.params, z)))
    jet = metric_jet(sol, axis)
    return bis_extremes_from_jet(jet, tensor_from_jet(jet), config)


def sectional_max_from_jet(jet: MetricJet, tensor: CurvatureTensor,
                           config: SearchConfig | None = None) -> tuple[float, np.ndarray]:
    """Maximum of S(v) = Bis(v, v) at a fixed point, with a maximizer."""
    config = config or SearchConfig()
    thetas, alphas, U = _angle_grid(config)
    C, gvec = _form(jet, tensor)
    den = U @ gvec
    val = np.einsum("ij,jk,ik->i", U, C, U) / (den * den)

    def objective(q):
        u = _u_of(q[0], q[1])
        return -_bis_from_form(C, gvec, u, u)

    order = np.argsort(-val)[: config.polish_starts]
    best_val, best_q = math.inf, None
    n_a = config.n_alpha
    for idx in order:
        q0 = np.array([thetas[idx // n_a], alphas[idx % n_a]])
        res = minimize(objective, q0, method="Nelder-Mead",
                       options=dict(xatol=1e-9, fatol=1e-13,
                                    maxiter=config.polish_maxiter))
        if res.fun < best_val:
            best_val, best_q = res.fun, res.x
    return float(-best_val), _vector_from_angles(best_q[0], best_q[1])


def sectional_max(sol: PotentialSolution, z: Point,
                  config: SearchConfig | None = None) -> tuple[float, np.ndarray]:
    """Maximum holomorphic sectional curvature at z, with a maximizer."""
    if not in_domain(sol.params, z):
        raise DomainError(f"point {z} is not in T_{sol.params.p}")
    axis = Point(0j, complex(x_invariant(sol.params, z)))
    jet = metric_jet(sol, axis)
    return sectional_max_from_jet(jet, tensor_from_jet(jet), config)


# ---------------------------------------------------------------------------
# exact center values
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OriginValues:
    """Exact center-point curvature data as rationals.

    R1111, bis_min, bis_max and sect_max are absolute values; R1122 and
    R1212 are the coefficients multiplying f'(0), R2222_coeff the
    coefficient multiplying f'(0)^2, and f3_coeff the coefficient in
    f'''(0) = f3_coeff * f'(0)^2 — the solver-independent shapes of those
    entries.
    """

    bis_min: Fraction
    bis_max: Fraction
    sect_max: Fraction
    R1111: Fraction
    R1122: Fraction
    R1212: Fraction
    R2222_coeff: Fraction
    f3_coeff: Fraction


def origin_closed_forms(params: TubeParams) -> OriginValues:
    """Closed-form center values: pinching bounds and tensor coefficients.

    bis_min = -3 + 3/(2p+1) (attained at v = w along an extremal
    direction), bis_max = -3/(2p+1) (attained at "orthogonal" axis
    vectors), sect_max = -3/2 - 1/(2pK); R1111 = -32 p^3 K,
    R1122 = -p f'(0), R1212 = (p-1) f'(0), R2222 = -3p/(8(2p+1)) f'(0)^2.
    """
    p = params.p
    K = params.K
    return OriginValues(
        bis_min=Fraction(-6 * p, 2 * p + 1),
        bis_max=Fraction(-3, 2 * p + 1),
        sect_max=Fraction(-3, 2) - Fraction(3, 2 * p * (2 * p + 1)),
        R1111=-32 * p**3 * K,
        R1122=Fraction(-p),
        R1212=Fraction(p - 1),
        R2222_coeff=Fraction(-3 * p, 8 * (2 * p + 1)),
        f3_coeff=Fraction(3) - Fraction(3 * (p - 1), p * (2 * p + 1)),
    )


def extremal_sectional_vector(sol: PotentialSolution) -> np.ndarray:
    """A center vector attaining the sectional maximum -3/2 - 1/(2pK).

    The maximizer balances the two metric directions: with
    g = diag(4pK, f'(0)/4) at the center, the components are chosen so
    that g11 |v1|^2 = g22 |v2|^2 = 1, i.e. (1/sqrt(4pK), 2/sqrt(f'(0))).
    """
    p = sol.params.p
    f1_0 = sol.eval_f_derivs(0.0, 1)[1]
    return np.array([1.0 / math.sqrt(4 * p * sol.params.K_float),
                     2.0 / math.sqrt(f1_0)], dtype=complex)
