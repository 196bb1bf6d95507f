"""Domain parameters and solver configuration.

The family of tube domains treated by this package is

    T_p = { z in C^2 : Re(4p z1) + Re(z2)^(2p) < 1 },   p = 1, 2, 3, ...

Everything downstream (potential profile, metric, curvature) is driven by the
single integer p and the derived constant K = (2p+1)/3, which is the exponent
ratio appearing in the complete Kähler-Einstein metric with Ricci curvature -3.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class TubeParams:
    """Parameters of the tube domain T_p.

    Attributes
    ----------
    p : int
        Positive integer exponent of the domain.  Non-integer input is
        rejected (the geometry genuinely needs Re(z2)^(2p) to be a
        polynomial), as is p < 1.
    """

    p: int

    def __post_init__(self):
        try:
            p = operator.index(self.p)
        except TypeError:
            raise ValueError(f"p must be an integer, got {self.p!r}") from None
        if isinstance(self.p, bool) or p < 1:
            raise ValueError(f"p must be a positive integer, got {self.p!r}")
        object.__setattr__(self, "p", p)

    @property
    def K(self) -> Fraction:
        """Exact K = (2p+1)/3."""
        return Fraction(2 * self.p + 1, 3)

    @property
    def K_float(self) -> float:
        return (2 * self.p + 1) / 3.0


@dataclass(frozen=True)
class ShootingConfig:
    """Knobs of the blow-up shooting solver.

    The defaults reproduce every tolerance quoted in the test suite; they are
    deliberately conservative because a single solve is cheap (< 0.1 s).

    Attributes
    ----------
    f_blowup_threshold : float
        The slope f = F' is declared "blown up" once it exceeds this value.
        1e8 puts the recorded blow-up location within ~1e-8 of the true
        singularity (f ~ 1/(1-x) near it).
    c0_bracket : tuple of float
        Initial bisection bracket for the unknown F(0).  Widened
        geometrically if it does not straddle the critical value.
    c0_tolerance : float
        Bisection terminates when the bracket is narrower than this.
    step_tolerance : float
        Local relative error target of the adaptive integrator.
    max_steps : int
        Hard cap on accepted+rejected steps of a single integration.
    """

    f_blowup_threshold: float = 1e8
    c0_bracket: tuple[float, float] = (-5.0, 5.0)
    c0_tolerance: float = 1e-12
    step_tolerance: float = 1e-12
    max_steps: int = 500_000

    def __post_init__(self):
        if not (self.f_blowup_threshold > 1e2):
            raise ValueError("f_blowup_threshold must exceed 1e2")
        lo, hi = self.c0_bracket
        if not lo < hi:
            raise ValueError("c0_bracket must be an increasing pair")
        if not (0 < self.c0_tolerance < 1):
            raise ValueError("c0_tolerance out of range")
        if not (0 < self.step_tolerance <= 1e-6):
            raise ValueError("step_tolerance out of range (want <= 1e-6)")
        if self.max_steps < 1000:
            raise ValueError("max_steps too small to reach a blow-up")
