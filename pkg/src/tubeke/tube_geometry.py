"""Geometry of the tube domains T_p.

Membership, the orbit invariant X, the affine automorphism group
(imaginary translations, dilations fixing the distinguished boundary
point (1/(4p), 0), and the symmetry of the {z2 = 0} axis), boundary-point
classification, and the approach regions/cones used to state curvature
pinching.

Everything here is exact closed-form arithmetic; no solver state is
involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError
from .params import TubeParams

__all__ = [
    "Point",
    "TubeAutomorphism",
    "BoundaryClass",
    "RegionClass",
    "in_domain",
    "x_invariant",
    "normalizing_automorphism",
    "apply",
    "jacobian",
    "jacobian_det",
    "classify_boundary",
    "region",
    "in_cone",
]


@dataclass(frozen=True)
class Point:
    """A point of C^2."""

    z1: complex
    z2: complex

    @classmethod
    def parse(cls, text: str) -> "Point":
        """Parse "re1,im1,re2,im2" (four comma-separated reals)."""
        parts = text.split(",")
        if len(parts) != 4:
            raise ValueError(
                f"expected four comma-separated reals 're1,im1,re2,im2', got {text!r}"
            )
        re1, im1, re2, im2 = (float(s) for s in parts)
        return cls(complex(re1, im1), complex(re2, im2))

    def as_reals(self) -> list[float]:
        return [self.z1.real, self.z1.imag, self.z2.real, self.z2.imag]


class BoundaryClass(Enum):
    STRICTLY_PSEUDOCONVEX = "strictly_pseudoconvex"
    WEAKLY_PSEUDOCONVEX = "weakly_pseudoconvex"
    NOT_BOUNDARY = "not_boundary"


class RegionClass(Enum):
    INNER = "inner"    # ratio <= alpha: orbit-inner region (non-tangential side)
    OUTER = "outer"    # ratio >= 1 - alpha: close to strictly pseudoconvex orbits
    MIDDLE = "middle"


@dataclass(frozen=True)
class TubeAutomorphism:
    """An element tau -> dilation -> optional flip of Aut(T_p).

    The group is generated by imaginary translations
    tau_u(z) = z + iu, dilations
    d_lambda(z1, z2) = ((lambda(4p z1 - 1) + 1)/(4p), lambda^{1/(2p)} z2)
    and the symmetry s(z1, z2) = (z1, -z2).  Every word in the generators
    normalizes to the fixed composition order: translate by iu first, then
    dilate by lam, then flip if requested.
    """

    params: TubeParams
    lam: float = 1.0
    u: tuple[float, float] = (0.0, 0.0)
    flip: bool = False

    def __post_init__(self):
        if not (self.lam > 0.0 and math.isfinite(self.lam)):
            raise ValueError(f"dilation factor must be positive, got {self.lam!r}")
        object.__setattr__(self, "u", (float(self.u[0]), float(self.u[1])))


def in_domain(params: TubeParams, z: Point) -> bool:
    """Whether Re(4p z1) + Re(z2)^{2p} < 1 (strict: open domain)."""
    return z.z2.real ** (2 * params.p) < 1.0 - 4 * params.p * z.z1.real


def x_invariant(params: TubeParams, z: Point) -> float:
    """Orbit coordinate X = Re(z2) / (1 - Re(4p z1))^{1/(2p)}.

    Defined wherever Re(4p z1) < 1; takes values in (-1, 1) exactly on
    T_p and is constant along orbits of translations and dilations (the
    axis flip negates it).
    """
    r = 1.0 - 4 * params.p * z.z1.real
    if r <= 0.0:
        raise DomainError(f"X undefined: Re(4p z1) = {1.0 - r!r} >= 1")
    return z.z2.real / r ** (1.0 / (2 * params.p))


def normalizing_automorphism(params: TubeParams, z: Point) -> TubeAutomorphism:
    """The automorphism sending z to its orbit representative (0, X(z)).

    Composition of the translation killing the imaginary parts with the
    dilation by 1/(1 - Re(4p z1)); no flip.
    """
    if not in_domain(params, z):
        raise DomainError(f"point {z} is not in T_{params.p}")
    r = 1.0 - 4 * params.p * z.z1.real
    return TubeAutomorphism(params=params, lam=1.0 / r, u=(-z.z1.imag, -z.z2.imag))


def apply(a: TubeAutomorphism, z: Point) -> Point:
    """Evaluate the automorphism at a point."""
    p = a.params.p
    w1 = z.z1 + 1j * a.u[0]
    w2 = z.z2 + 1j * a.u[1]
    w1 = (a.lam * (4 * p * w1 - 1.0) + 1.0) / (4 * p)
    w2 = a.lam ** (1.0 / (2 * p)) * w2
    if a.flip:
        w2 = -w2
    return Point(w1, w2)


def jacobian(a: TubeAutomorphism) -> np.ndarray:
    """Complex Jacobian matrix, diag(lam, +-lam^{1/(2p)})."""
    d2 = a.lam ** (1.0 / (2 * a.params.p))
    if a.flip:
        d2 = -d2
    return np.array([[a.lam, 0.0], [0.0, d2]], dtype=complex)


def jacobian_det(a: TubeAutomorphism) -> float:
    """Determinant of the complex Jacobian, lam^{(2p+1)/(2p)} up to flip sign."""
    det = a.lam ** ((2 * a.params.p + 1) / (2 * a.params.p))
    return -det if a.flip else det


def classify_boundary(params: TubeParams, q: Point, tol: float = 1e-9) -> BoundaryClass:
    """Classify q as a boundary point of T_p.

    Within tolerance tol of the defining equation, the point is weakly
    pseudoconvex exactly when Re(q2) = 0 (the distinguished orbit of
    (1/(4p), 0) + iR^2); every other boundary point is strictly
    pseudoconvex.  The Re(q2) comparison uses tol^{1/(2p)} so that the
    two tests resolve the same displacement scale.
    """
    p = params.p
    defect = abs(4 * p * q.z1.real + q.z2.real ** (2 * p) - 1.0)
    if defect > tol:
        return BoundaryClass.NOT_BOUNDARY
    if abs(q.z2.real) <= tol ** (1.0 / (2 * p)):
        return BoundaryClass.WEAKLY_PSEUDOCONVEX
    return BoundaryClass.STRICTLY_PSEUDOCONVEX


def region(params: TubeParams, z: Point, alpha: float) -> RegionClass:
    """Approach-region classification by the ratio Re(z2)^{2p}/(1-Re(4pz1)).

    The ratio equals X(z)^{2p}, so "inner" (ratio <= alpha) is a
    neighborhood of the axis orbit and "outer" (ratio >= 1-alpha) hugs
    the strictly pseudoconvex orbits.  For alpha >= 1/2 the two overlap;
    inner wins.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0,1), got {alpha!r}")
    if not in_domain(params, z):
        raise DomainError(f"point {z} is not in T_{params.p}")
    ratio = z.z2.real ** (2 * params.p) / (1.0 - 4 * params.p * z.z1.real)
    if ratio <= alpha:
        return RegionClass.INNER
    if ratio >= 1.0 - alpha:
        return RegionClass.OUTER
    return RegionClass.MIDDLE


def in_cone(params: TubeParams, z: Point, theta: float) -> bool:
    """Membership in the half cone of vertex (1/(4p), 0), axis R x {0}.

    The cone aperture condition is
    sqrt(Im(z1)^2 + |z2|^2) / (1/(4p) - Re(z1)) <= tan(theta).
    """
    if not 0.0 < theta < math.pi / 2:
        raise ValueError(f"theta must lie in (0, pi/2), got {theta!r}")
    depth = 1.0 / (4 * params.p) - z.z1.real
    if depth <= 0.0:
        raise DomainError(f"cone undefined: Re(z1) = {z.z1.real!r} >= 1/(4p)")
    spread = math.hypot(z.z1.imag, abs(z.z2))
    return spread / depth <= math.tan(theta)
