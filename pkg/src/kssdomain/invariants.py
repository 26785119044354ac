"""Log discrepancy, S- and beta-invariants of hypersurface divisors.

With the linear volume profile ``vol(mH) = C m**n`` the S-invariant of a
prime hypersurface ``E`` of degree ``d`` is

    S(E) = 1/(C s**n) * int_0^{s/d} C (s - t d)**n dt = s / (d (n + 1)),

so A, S and beta are all affine in the coefficient vector.  The functions
here return those affine forms exactly; :func:`s_invariant_numeric` evaluates
the defining integral by quadrature and serves as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Sequence, Union

import numpy as np
from scipy.integrate import simpson

from .model import AffineForm, NonPseudoEffectiveError, PairFamily, level, level_form, q

if TYPE_CHECKING:
    from .polytope import Polytope

__all__ = [
    "Boundary",
    "DivisorRef",
    "External",
    "beta_form",
    "log_discrepancy_form",
    "maeda_gap_constants",
    "mu_value",
    "prime_degree",
    "pseudo_effective_threshold",
    "s_invariant_form",
    "s_invariant_numeric",
]


@dataclass(frozen=True)
class Boundary:
    """The prime hypersurface underlying boundary entry ``index``."""

    index: int


@dataclass(frozen=True)
class External:
    """A general smooth hypersurface of the given degree, not in the boundary."""

    degree: Fraction

    def __post_init__(self):
        object.__setattr__(self, "degree", q(self.degree))
        if self.degree <= 0:
            raise ValueError("external divisor degree must be positive")


DivisorRef = Union[Boundary, External]


def _check_ref(family: PairFamily, E: DivisorRef) -> None:
    if isinstance(E, Boundary):
        if not 0 <= E.index < family.k:
            raise IndexError(f"boundary index {E.index} out of range for k={family.k}")
    elif not isinstance(E, External):
        raise TypeError(f"not a divisor reference: {E!r}")


def prime_degree(family: PairFamily, E: DivisorRef) -> Fraction:
    _check_ref(family, E)
    if isinstance(E, Boundary):
        return family.boundary[E.index].prime_degree
    return E.degree


def log_discrepancy_form(family: PairFamily, E: DivisorRef) -> AffineForm:
    _check_ref(family, E)
    form = AffineForm.const(1, family.k)
    if isinstance(E, Boundary):
        coeffs = list(form.coeffs)
        coeffs[E.index] = -family.boundary[E.index].multiplier
        form = AffineForm(form.constant, tuple(coeffs))
    return form


def s_invariant_form(family: PairFamily, E: DivisorRef) -> AffineForm:
    d = prime_degree(family, E)
    return level_form(family).scale(Fraction(1) / (d * (family.n + 1)))


def beta_form(family: PairFamily, E: DivisorRef) -> AffineForm:
    return log_discrepancy_form(family, E) - s_invariant_form(family, E)


def s_invariant_numeric(family: PairFamily, c: Sequence, E: DivisorRef, subdivisions: int = 10_000) -> float:
    """Composite Simpson quadrature of the S-invariant's defining integral.

    Integrates ``vol(s H - t E) = C (s - t d)**n`` over ``[0, s/d]`` (beyond
    ``s/d`` the class stops being pseudo-effective) and divides by
    ``vol(s H)``.  Works in floating point on purpose.
    """
    if subdivisions < 2:
        raise ValueError("need at least 2 subdivisions")
    s = level(family, c)
    if s < 0:
        raise NonPseudoEffectiveError(f"level {s} < 0")
    if s == 0:
        return 0.0
    d = float(prime_degree(family, E))
    n = family.n
    cm = float(family.ambient.volume_multiplier)
    sf = float(s)
    t = np.linspace(0.0, sf / d, subdivisions + 1)
    vols = cm * np.clip(sf - t * d, 0.0, None) ** n
    return float(simpson(vols, x=t) / (cm * sf**n))


def pseudo_effective_threshold(family: PairFamily, c: Sequence, E: DivisorRef) -> Fraction:
    """Largest ``t`` with ``-K - sum c_i D_i - t E`` pseudo-effective."""
    s = level(family, c)
    if s < 0:
        raise NonPseudoEffectiveError(f"level {s} < 0")
    return s / prime_degree(family, E)


def maeda_gap_constants(d: int) -> tuple[Fraction, Fraction]:
    """``(a_d, eps_d)`` for dimension ``d``.

    ``a_d = 1/(d+1)`` bounds the pseudo-effective threshold of the full
    boundary; ``eps_d = a_d / (2(d+1))`` bounds ``1 - c_i`` away from zero.
    """
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"dimension must be a positive integer, got {d!r}")
    a = Fraction(1, d + 1)
    return a, a / (2 * (d + 1))


def mu_value(domain: "Polytope") -> Fraction:
    """Minimum of ``sum c_i`` over a K-semistable domain polytope."""
    if domain.is_empty:
        raise ValueError("mu is undefined on an empty domain")
    return min(sum(v, Fraction(0)) for v in domain.vertices)
