"""Bundled verification suites with machine-readable reports.

Each suite turns a family of mathematical statements about the computed
metric — asymptotic laws, exact center values, automorphism invariance,
the Monge-Ampère closure, the boundary limit of the bisectional
curvature, and the pinching on the approach regions — into deterministic
threshold checks.  Sampling is seeded (default 0) and sample counts are
fixed, so reports are reproducible and diff-able in CI.

Tolerances fall in two classes: identities that hold to rounding error
get absolute thresholds near 1e-8..1e-12, while limit laws tested at
finite distance from the boundary get empirical thresholds pinned at
roughly 3x the observed residual across p = 1..3 (the underlying
statements are limits without stated rates).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .params import TubeParams
from .potential_solver import PotentialSolution
from . import tube_geometry as geo
from .tube_geometry import Point, RegionClass, BoundaryClass
from .metric_tensor import metric_jet, einstein_residual, x_derivatives
from .curvature import (
    SearchConfig,
    TangentPair,
    bis_extremes_from_jet,
    bisectional,
    bisectional_batch,
    boundary_limit_bis,
    extremal_sectional_vector,
    origin_closed_forms,
    sectional,
    sectional_max_from_jet,
    tensor_from_jet,
)

__all__ = ["CheckResult", "SuiteReport", "SUITE_NAMES", "run_suite"]

SUITE_NAMES = ("asymptotics", "origin", "invariance", "einstein",
               "boundary_limit", "regions")

# empirical residuals of the limit laws at x = 1 - 10^-k, worst over
# p in {1,2,3}, are (k=2) 1.1e-2 / 3.4e-2 / 2.7e-4 / 1.1e-2 and shrink
# tenfold per k; thresholds sit ~3x above, except at k=4 where the looser
# f/Z/derivative numbers are kept aligned with the acceptance criteria
_ASYMPTOTIC_TOLS = {
    # k: (f-law, Z-law rel, derivative laws, F-law)
    2: (3.3e-2, 1.0e-1, 1.0e-3, 3.3e-2),
    3: (3.3e-3, 1.0e-2, 1.0e-5, 3.3e-3),
    4: (1.0e-2, 1.0e-2, 3.0e-2, 1.0e-3),
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    expected: float
    observed: float
    tolerance: float
    passed: bool

    def __post_init__(self):
        # numpy scalars sneak in through comparisons; keep reports JSON-ready
        object.__setattr__(self, "expected", float(self.expected))
        object.__setattr__(self, "observed", float(self.observed))
        object.__setattr__(self, "tolerance", float(self.tolerance))
        object.__setattr__(self, "passed", bool(self.passed))


@dataclass(frozen=True)
class SuiteReport:
    suite_name: str
    p: int
    seed: int
    checks: list = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite_name,
            "p": self.p,
            "seed": self.seed,
            "overall": self.overall,
            "checks": [
                {"name": c.name, "expected": c.expected, "observed": c.observed,
                 "tolerance": c.tolerance, "passed": c.passed}
                for c in self.checks
            ],
        }

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            tag = "PASS" if c.passed else "FAIL"
            out.append(f"[{tag}] {c.name}: expected={c.expected:.6g} "
                       f"observed={c.observed:.6g} tol={c.tolerance:.3g}")
        tag = "PASS" if self.overall else "FAIL"
        out.append(f"[{tag}] suite={self.suite_name} p={self.p} seed={self.seed} "
                   f"({sum(c.passed for c in self.checks)}/{len(self.checks)} checks)")
        return out


def _close(name, expected, observed, tol) -> CheckResult:
    """|observed - expected| <= tol."""
    expected = float(expected)
    observed = float(observed)
    return CheckResult(name, expected, observed, float(tol),
                       abs(observed - expected) <= tol)


def _below(name, observed, tol) -> CheckResult:
    """observed <= tol (defect-style check, expected 0)."""
    observed = float(observed)
    return CheckResult(name, 0.0, observed, float(tol), observed <= tol)


def _flag(name, passed, observed=None) -> CheckResult:
    """Boolean check; observed defaults to 1.0 on pass, 0.0 on failure."""
    if observed is None:
        observed = 1.0 if passed else 0.0
    return CheckResult(name, 1.0, float(observed), 0.0, bool(passed))


def _random_points(params: TubeParams, rng, n, x_cap=0.99):
    """Seeded in-domain points with |X| <= x_cap and varied depth/phase."""
    p = params.p
    pts = []
    for _ in range(n):
        x = rng.uniform(-x_cap, x_cap)
        r = rng.uniform(0.2, 3.0)
        y1, y2 = rng.uniform(-2.0, 2.0, 2)
        z1 = complex((1.0 - r) / (4 * p), y1)
        z2 = complex(x * r ** (1.0 / (2 * p)), y2)
        pts.append(Point(z1, z2))
    return pts


def _random_vectors(rng, n):
    return rng.normal(size=(n, 2)) + 1j * rng.normal(size=(n, 2))


# ---------------------------------------------------------------------------
# individual suites
# ---------------------------------------------------------------------------

def _suite_asymptotics(params, sol, rng):
    p = params.p
    checks = []
    f_near = sol.eval_f_derivs(1.0 - 1e-4, 0)[0]
    checks.append(CheckResult("f(1-1e-4)_exceeds_1e3", 1e3, f_near, 0.0, f_near > 1e3))
    for k, (tf, tz, td, tF) in _ASYMPTOTIC_TOLS.items():
        d = 10.0 ** -k
        x = 1.0 - d
        F = sol.eval_F(x)
        f, f1, f2, f3 = sol.eval_f_derivs(x, 3)
        Z = sol.eval_Z(x, 0)[0]
        target = (2 * p - 1) / 4.0
        checks.append(_below(f"f_law_k{k}", abs(f * d - 1.0), tf))
        checks.append(_below(f"Z_law_k{k}", abs(d**3 * Z - target) / target, tz))
        deriv_defect = max(abs(f1 * d**2 - 1.0), abs(f2 * d**3 / 2.0 - 1.0),
                           abs(f3 * d**4 / 6.0 - 1.0))
        checks.append(_below(f"deriv_laws_k{k}", deriv_defect, td))
        checks.append(_below(f"F_law_k{k}",
                             abs(F - math.log(1.0 / d) - math.log((2 * p - 1) / 4.0) / 3.0), tF))
    grid = np.linspace(0.0, 1.0 - 1e-4, 301)
    f1_grid = sol.eval_f_derivs(grid, 1)[1]
    checks.append(_flag("convexity_f1_positive", bool(np.all(f1_grid > 0.0)),
                        float(f1_grid.min())))
    xs = rng.uniform(0.0, 0.99, 50)
    even_defect = float(np.max(np.abs(sol.eval_F(-xs) - sol.eval_F(xs))))
    odd_defect = float(np.max(np.abs(sol.eval_f_derivs(-xs, 0)[0]
                                     + sol.eval_f_derivs(xs, 0)[0])))
    checks.append(_below("parity_F_even_exact", even_defect, 0.0))
    checks.append(_below("parity_f_odd_exact", odd_defect, 0.0))
    # derivative order k vs centered differences of order k-1
    worst = 0.0
    for x in np.linspace(-0.99, 0.99, 41):
        h = 1e-5
        vals = sol.eval_f_derivs(x, 3)
        for k in (1, 2, 3):
            fd = (sol.eval_f_derivs(x + h, k - 1)[k - 1]
                  - sol.eval_f_derivs(x - h, k - 1)[k - 1]) / (2.0 * h)
            if abs(vals[k]) > 1e-6:
                worst = max(worst, abs(fd - vals[k]) / abs(vals[k]))
    checks.append(_below("derivs_match_finite_differences", worst, 1e-5))
    return checks


def _suite_origin(params, sol, rng):
    p = params.p
    K = params.K_float
    checks = []
    origin = Point(0j, 0j)
    jet = metric_jet(sol, origin)
    f1_0 = sol.eval_f_derivs(0.0, 1)[1]
    f3_0 = sol.eval_f_derivs(0.0, 3)[3]
    closed = origin_closed_forms(params)
    checks.append(_close("g11_is_4pK", 4 * p * K, jet.metric[0, 0], 1e-10))
    checks.append(_close("g22_is_f1_over_4", f1_0 / 4.0, jet.metric[1, 1], 1e-12))
    checks.append(_below("g12_vanishes", abs(jet.metric[0, 1]), 1e-12))
    tensor = tensor_from_jet(jet)
    scale1 = max(1.0, abs(float(closed.R1111)))
    checks.append(_below("R1111_closed_form",
                         abs(tensor.R1111 - float(closed.R1111)) / scale1, 1e-8))
    checks.append(_below("R1122_closed_form",
                         abs(tensor.R1122 - float(closed.R1122) * f1_0), 1e-8 * f1_0))
    checks.append(_below("R1212_closed_form",
                         abs(tensor.R1212 - float(closed.R1212) * f1_0), 1e-8 * f1_0))
    checks.append(_below("R2222_closed_form",
                         abs(tensor.R2222 - float(closed.R2222_coeff) * f1_0**2),
                         1e-8 * f1_0**2))
    checks.append(_below("R1112_vanishes", abs(tensor.R1112), 1e-10))
    checks.append(_below("R1222_vanishes", abs(tensor.R1222), 1e-10))
    checks.append(_below("f3_identity",
                         abs(f3_0 - float(closed.f3_coeff) * f1_0**2) / f1_0**2, 1e-8))
    f0, _, f2_0 = sol.eval_f_derivs(0.0, 2)[:3]
    checks.append(_below("f_vanishes_at_0", abs(f0), 0.0))
    checks.append(_below("f2_vanishes_at_0", abs(f2_0), 0.0))
    ext = bis_extremes_from_jet(jet, tensor)
    checks.append(_close("bis_min_closed_form", float(closed.bis_min), ext.min, 1e-6))
    checks.append(_close("bis_max_closed_form", float(closed.bis_max), ext.max, 1e-6))
    sm, _ = sectional_max_from_jet(jet, tensor)
    checks.append(_close("sect_max_closed_form", float(closed.sect_max), sm, 1e-6))
    e1 = np.array([1.0, 0.0], complex)
    e2 = np.array([0.0, 1.0], complex)
    checks.append(_close("bis_e1_e1", float(closed.bis_min),
                         bisectional(sol, origin, TangentPair(v=e1, w=e1)), 1e-10))
    checks.append(_close("bis_e1_e2", float(closed.bis_max),
                         bisectional(sol, origin, TangentPair(v=e1, w=e2)), 1e-10))
    vstar = extremal_sectional_vector(sol)
    checks.append(_close("sect_at_balanced_vector", float(closed.sect_max),
                         sectional(sol, origin, vstar), 1e-9))
    vs = _random_vectors(rng, 4000)
    values = bisectional_batch(sol, origin, vs[:2000], vs[2000:])
    violation = max(float(closed.bis_min) - values.min(),
                    values.max() - float(closed.bis_max), 0.0)
    checks.append(_below("random_pairs_respect_pinching", violation, 1e-9))
    return checks


def _suite_invariance(params, sol, rng):
    p = params.p
    checks = []
    # orbit invariant under the generators (the axis flip negates X)
    worst = 0.0
    for z in _random_points(params, rng, 334):
        x0 = geo.x_invariant(params, z)
        tau = geo.TubeAutomorphism(params=params, u=tuple(rng.uniform(-3, 3, 2)))
        dil = geo.TubeAutomorphism(params=params, lam=float(rng.uniform(0.2, 5.0)))
        flip = geo.TubeAutomorphism(params=params, flip=True)
        worst = max(worst,
                    abs(geo.x_invariant(params, geo.apply(tau, z)) - x0),
                    abs(geo.x_invariant(params, geo.apply(dil, z)) - x0),
                    abs(geo.x_invariant(params, geo.apply(flip, z)) + x0))
    checks.append(_below("x_invariant_along_orbits", worst, 1e-12))
    # the generators preserve the domain
    ok = True
    for z in _random_points(params, rng, 100):
        for a in (geo.TubeAutomorphism(params=params, u=(1.3, -0.4)),
                  geo.TubeAutomorphism(params=params, lam=0.35),
                  geo.TubeAutomorphism(params=params, lam=2.6),
                  geo.TubeAutomorphism(params=params, flip=True)):
            ok = ok and geo.in_domain(params, geo.apply(a, z))
    checks.append(_flag("generators_preserve_domain", ok))
    worst_norm = worst_jac = worst_pot = 0.0
    for z in _random_points(params, rng, 100):
        psi = geo.normalizing_automorphism(params, z)
        img = geo.apply(psi, z)
        x0 = geo.x_invariant(params, z)
        worst_norm = max(worst_norm, abs(img.z1), abs(img.z2 - x0))
        r = 1.0 - 4 * p * z.z1.real
        worst_jac = max(worst_jac,
                        abs(geo.jacobian_det(psi) - r ** (-(2 * p + 1) / (2 * p))))
        # potential transformation: g = g∘psi + (2/3) ln|det Jac(psi)|
        tab = x_derivatives(params, z, 0)
        g_z = sol.eval_F(tab.x_value) + tab.L()
        g_img = sol.eval_F(x0)
        shift = (2.0 / 3.0) * math.log(abs(geo.jacobian_det(psi)))
        worst_pot = max(worst_pot, abs(g_z - g_img - shift))
    checks.append(_below("normalization_sends_z_to_axis", worst_norm, 1e-12))
    checks.append(_below("jacobian_det_closed_form", worst_jac, 1e-12))
    checks.append(_below("potential_transformation", worst_pot, 1e-12))
    worst_g = 0.0
    for z in _random_points(params, rng, 20):
        psi = geo.normalizing_automorphism(params, z)
        jac = geo.jacobian(psi)
        g_here = metric_jet(sol, z).metric
        g_axis = metric_jet(sol, geo.apply(psi, z)).metric
        pulled = (jac.T @ g_axis @ np.conjugate(jac)).real
        worst_g = max(worst_g, float(np.max(np.abs(pulled - g_here))
                                     / np.max(np.abs(g_here))))
    checks.append(_below("metric_transformation_law", worst_g, 1e-8))
    # jets depend only on (Re z1, Re z2)
    exact = 0.0
    for z in _random_points(params, rng, 20):
        shifted = Point(z.z1 + 1j * rng.uniform(-5, 5), z.z2 + 1j * rng.uniform(-5, 5))
        j1, j2 = metric_jet(sol, z), metric_jet(sol, shifted)
        exact = max(exact, float(np.max(np.abs(j1.metric - j2.metric))),
                    max(abs(j1.d4[k] - j2.d4[k]) for k in j1.d4))
    checks.append(_below("jets_translation_invariant", exact, 0.0))
    worst_bis = worst_scale = worst_formula = 0.0
    for z in _random_points(params, rng, 100):
        v, w = _random_vectors(rng, 2)
        pair = TangentPair(v=v, w=w)
        raw = bisectional(sol, z, pair, normalize=False)
        normalized = bisectional(sol, z, pair, normalize=True)
        worst_bis = max(worst_bis, abs(raw - normalized) / abs(raw))
        c, d = rng.normal(size=2) + 1j * rng.normal(size=2)
        scaled = bisectional(sol, z, TangentPair(v=c * v, w=d * w))
        worst_scale = max(worst_scale, abs(scaled - normalized) / abs(normalized))
        direct = bisectional(sol, z, pair, formula="direct")
        worst_formula = max(worst_formula, abs(direct - normalized) / abs(normalized))
    checks.append(_below("bis_automorphism_invariance_rel", worst_bis, 1e-7))
    checks.append(_below("bis_scale_invariance_rel", worst_scale, 1e-10))
    checks.append(_below("bis_formula_agreement_rel", worst_formula, 1e-10))
    return checks


def _suite_einstein(params, sol, rng):
    checks = []
    worst = max(einstein_residual(sol, z) for z in _random_points(params, rng, 100))
    checks.append(_below("einstein_residual_random_points", worst, 1e-8))
    checks.append(_below("einstein_residual_origin",
                         einstein_residual(sol, Point(0j, 0j)), 1e-12))
    p = params.p
    worst_det = worst_inv = 0.0
    pd_ok = True
    for z in _random_points(params, rng, 100):
        jet = metric_jet(sol, z)
        r = 1.0 - 4 * p * z.z1.real
        det_formula = sol.eval_Z(jet.x_value, 0)[0] / r ** (3.0 * params.K_float / p)
        worst_det = max(worst_det, abs(jet.det - det_formula) / det_formula)
        worst_inv = max(worst_inv, float(np.max(np.abs(
            jet.metric @ jet.inverse - np.eye(2)))))
        pd_ok = pd_ok and jet.metric[0, 0] > 0.0 and jet.det > 0.0
    checks.append(_below("det_matches_Z_over_r_power", worst_det, 1e-8))
    checks.append(_below("metric_inverse_identity", worst_inv, 1e-10))
    checks.append(_flag("metric_positive_definite", pd_ok))
    return checks


def _suite_boundary_limit(params, sol, rng):
    checks = []
    vs = _random_vectors(rng, 2000)
    E = {}
    for x in (0.9, 0.99, 0.999):
        z = Point(0j, complex(x))
        jet = metric_jet(sol, z)
        values = bisectional_batch(sol, z, vs[::2], vs[1::2])
        gap = 0.0
        for i in range(1000):
            pair = TangentPair(v=vs[2 * i], w=vs[2 * i + 1])
            gap = max(gap, abs(values[i] - boundary_limit_bis(jet, pair)))
        E[x] = gap
    checks.append(_below("E(0.9)", E[0.9], 1.0))
    checks.append(_below("E(0.99)", E[0.99], 0.1))
    checks.append(_below("E(0.999)", E[0.999], 0.05))
    # strict decrease toward the boundary; a metric of exactly constant
    # holomorphic curvature (p=1 is the complex ball) makes every E pure
    # rounding noise, in which case decrease is meaningless — accept a
    # uniform 1e-8 noise floor instead
    increase = max(E[0.99] - E[0.9], E[0.999] - E[0.99])
    degenerate = max(E.values()) <= 1e-8
    checks.append(_flag("E_strictly_decreasing_or_noise_floor",
                        (increase < 0.0) or degenerate, increase))
    jet = metric_jet(sol, Point(0j, 0.4 + 0j))
    worst_range = 0.0
    for i in range(200):
        pair = TangentPair(v=vs[2 * i], w=vs[2 * i + 1])
        val = boundary_limit_bis(jet, pair)
        worst_range = max(worst_range, -2.0 - val, val - (-1.0), 0.0)
    checks.append(_below("limit_value_within_[-2,-1]", worst_range, 1e-12))
    v = vs[0]
    checks.append(_close("limit_at_parallel_pair", -2.0,
                         boundary_limit_bis(jet, TangentPair(v=v, w=v)), 1e-12))
    g = jet.metric
    w = np.array([-np.conjugate(v[1]), np.conjugate(v[0])], complex)
    # make w exactly g-orthogonal to v via one Gram-Schmidt step
    def ip_g(a, b):
        return (g[0, 0] * a[0] * np.conjugate(b[0]) + g[0, 1] * a[0] * np.conjugate(b[1])
                + g[1, 0] * a[1] * np.conjugate(b[0]) + g[1, 1] * a[1] * np.conjugate(b[1]))
    w = w - (ip_g(w, v) / ip_g(v, v)) * v
    checks.append(_close("limit_at_orthogonal_pair", -1.0,
                         boundary_limit_bis(jet, TangentPair(v=v, w=w)), 1e-12))
    return checks


def _suite_regions(params, sol, rng):
    p = params.p
    checks = []
    checks.append(_flag("center_is_inner",
                        geo.region(params, Point(0j, 0j), 0.3) is RegionClass.INNER))
    eps = 0.01
    x_out = (1.0 - eps) ** (1.0 / (2 * p))
    checks.append(_flag("near_unit_X_is_outer",
                        geo.region(params, Point(0j, complex(x_out)), 2 * eps)
                        is RegionClass.OUTER))
    checks.append(_flag("vertex_is_weakly_pseudoconvex",
                        geo.classify_boundary(params, Point(1.0 / (4 * p) + 0j, 0j))
                        is BoundaryClass.WEAKLY_PSEUDOCONVEX))
    checks.append(_flag("unit_X_boundary_is_strictly_pseudoconvex",
                        geo.classify_boundary(params, Point(0j, 1.0 + 0j))
                        is BoundaryClass.STRICTLY_PSEUDOCONVEX))
    checks.append(_flag("center_is_not_boundary",
                        geo.classify_boundary(params, Point(0j, 0j))
                        is BoundaryClass.NOT_BOUNDARY))
    checks.append(_flag("axis_points_in_every_cone",
                        all(geo.in_cone(params, Point(complex(t), 0j), 0.05)
                            for t in np.linspace(-2.0, 1.0 / (4 * p) - 1e-9, 20))))
    # sampled cone points close enough to the vertex land in the inner
    # region: the aperture bound gives |X| <= tan(theta) (4p delta)^{1-1/(2p)}/(4p),
    # so delta below the radius solving that against alpha^{1/(2p)} suffices
    theta, alpha = 0.3, 0.2
    tan_t = math.tan(theta)
    radius = (4 * p * alpha ** (1.0 / (2 * p)) / tan_t) ** (2 * p / (2 * p - 1.0)) / (4 * p)
    radius = min(radius, 1.0 / (8 * p))
    all_inner = True
    for _ in range(100):
        delta = rng.uniform(0.0, radius) + 1e-12
        spread = rng.uniform(0.0, tan_t * delta)
        x2_cap = 0.9 * (4 * p * delta) ** (1.0 / (2 * p))
        x2 = min(0.5 * spread, x2_cap)
        rest = math.sqrt(max(spread**2 - x2**2, 0.0))
        phi = rng.uniform(0.0, 2 * math.pi)
        z = Point(complex(1.0 / (4 * p) - delta, rest * math.cos(phi)),
                  complex(x2, rest * math.sin(phi)))
        if not geo.in_cone(params, z, theta):
            continue
        all_inner = all_inner and (geo.region(params, z, alpha) is RegionClass.INNER)
    checks.append(_flag("cone_points_near_vertex_are_inner", all_inner))
    # pinching over a light axis sweep (the full 500-row version lives in
    # the acceptance tests)
    budget = SearchConfig(polish_starts=3)
    worst_min, worst_max = 0.0, -math.inf
    for x in np.linspace(0.0, 1.0 - 1e-4, 100):
        jet = metric_jet(sol, Point(0j, complex(x)))
        tensor = tensor_from_jet(jet)
        ext = bis_extremes_from_jet(jet, tensor, budget)
        worst_min = min(worst_min, ext.min)
        worst_max = max(worst_max, ext.max)
    checks.append(CheckResult("sweep_bis_min_bounded_below", -5.0, worst_min, 0.0,
                              worst_min >= -5.0))
    checks.append(CheckResult("sweep_bis_max_bounded_away_from_0", -0.1, worst_max, 0.0,
                              worst_max <= -0.1))
    return checks


_SUITES = {
    "asymptotics": _suite_asymptotics,
    "origin": _suite_origin,
    "invariance": _suite_invariance,
    "einstein": _suite_einstein,
    "boundary_limit": _suite_boundary_limit,
    "regions": _suite_regions,
}


def run_suite(name: str, params: TubeParams, sol: PotentialSolution,
              seed: int = 0) -> SuiteReport:
    """Run one named verification suite (or "all") against a solution.

    Parameters
    ----------
    name : str
        One of asymptotics, origin, invariance, einstein, boundary_limit,
        regions, or "all" for their concatenation.
    params : TubeParams
        Must agree with sol.params (passed separately so a report is
        explicit about what it certified).
    sol : PotentialSolution
    seed : int
        Seed of the reproducible sampling; recorded in the report.

    Returns
    -------
    SuiteReport
    """
    if params.p != sol.params.p:
        raise ValueError(f"params p={params.p} does not match solution p={sol.params.p}")
    if name == "all":
        checks = []
        for sub in SUITE_NAMES:
            rng = np.random.default_rng(seed)
            for c in _SUITES[sub](params, sol, rng):
                checks.append(CheckResult(f"{sub}/{c.name}", c.expected, c.observed,
                                          c.tolerance, c.passed))
        return SuiteReport(suite_name="all", p=params.p, seed=seed, checks=checks)
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of "
                         f"{', '.join(SUITE_NAMES)} or 'all'")
    rng = np.random.default_rng(seed)
    return SuiteReport(suite_name=name, p=params.p, seed=seed,
                       checks=_SUITES[name](params, sol, rng))
