"""Ambient varieties, boundary divisors and exact affine forms.

Every ambient in this package has Picard rank one with ample generator ``H``
and a volume profile ``vol(m H) = C * m**n``.  A boundary entry is a smooth
prime hypersurface of degree ``d`` (in units of ``H``) carried with a fixed
multiplier ``m``, so coordinate ``c_i`` of the coefficient space puts
``m_i * c_i`` on that prime divisor.  The class ``-K - sum c_i m_i D_i`` is
then ``s(c) H`` with the *level*

    s(c) = kappa - sum_i c_i * m_i * d_i.

All arithmetic is exact (:class:`fractions.Fraction`).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

__all__ = [
    "AffineForm",
    "AmbientKind",
    "AmbientModel",
    "BoundaryEntry",
    "NonPseudoEffectiveError",
    "PairFamily",
    "as_point",
    "level",
    "level_form",
    "make_projective_space",
    "make_quadric",
    "q",
    "volume",
]


class NonPseudoEffectiveError(ValueError):
    """Raised when a quantity needs ``s(c) >= 0`` and the level is negative."""


def q(value) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Accepts ints, Fractions and strings like ``"3/2"``.  Floats are refused:
    they would smuggle rounding into an exact computation.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r}; pass a Fraction or a 'p/q' string")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if any(ch in text for ch in ".eE"):
            raise ValueError(f"malformed rational {value!r}: decimals are not accepted")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def as_point(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(q(v) for v in values)


class AmbientKind(enum.Enum):
    PROJECTIVE_SPACE = "projective_space"
    QUADRIC = "quadric"


@dataclass(frozen=True)
class AmbientModel:
    kind: AmbientKind
    dim: int
    volume_multiplier: Fraction
    anticanonical_level: Fraction

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("ambient dimension must be at least 1")
        if self.kind is AmbientKind.QUADRIC and self.dim < 2:
            raise ValueError("quadric ambients need dimension >= 2")
        if self.volume_multiplier <= 0 or self.anticanonical_level <= 0:
            raise ValueError("volume multiplier and anticanonical level must be positive")

    def volume_of(self, m) -> Fraction:
        """Volume of ``m H``; ``m`` must be non-negative."""
        m = q(m)
        if m < 0:
            raise NonPseudoEffectiveError(f"{m} H is not pseudo-effective")
        return self.volume_multiplier * m**self.dim

    def describe(self) -> str:
        if self.kind is AmbientKind.PROJECTIVE_SPACE:
            return f"P^{self.dim}"
        return f"Q_{self.dim}"


def make_projective_space(n: int) -> AmbientModel:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"projective space needs n >= 1, got {n!r}")
    return AmbientModel(AmbientKind.PROJECTIVE_SPACE, n, Fraction(1), Fraction(n + 1))


def make_quadric(l: int) -> AmbientModel:
    """Smooth quadric ``Q_l`` in ``P^(l+1)``: ``H^l = 2`` and ``-K = l H``."""
    if not isinstance(l, int) or l < 2:
        raise ValueError(f"quadric needs l >= 2, got {l!r}")
    return AmbientModel(AmbientKind.QUADRIC, l, Fraction(2), Fraction(l))


@dataclass(frozen=True)
class BoundaryEntry:
    label: str
    prime_degree: Fraction
    multiplier: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "prime_degree", q(self.prime_degree))
        object.__setattr__(self, "multiplier", q(self.multiplier))
        if self.prime_degree <= 0:
            raise ValueError(f"{self.label}: prime degree must be positive")
        if self.multiplier <= 0:
            raise ValueError(f"{self.label}: multiplier must be positive")

    @property
    def effective_degree(self) -> Fraction:
        return self.multiplier * self.prime_degree


@dataclass(frozen=True)
class PairFamily:
    ambient: AmbientModel
    boundary: tuple[BoundaryEntry, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "boundary", tuple(self.boundary))
        labels = [b.label for b in self.boundary]
        if len(set(labels)) != len(labels):
            raise ValueError(f"boundary labels must be unique: {labels}")

    @property
    def k(self) -> int:
        return len(self.boundary)

    @property
    def n(self) -> int:
        return self.ambient.dim

    def index(self, label: str) -> int:
        for i, entry in enumerate(self.boundary):
            if entry.label == label:
                return i
        raise KeyError(f"no boundary divisor labelled {label!r}")

    def check_point(self, c: Sequence) -> tuple[Fraction, ...]:
        point = as_point(c)
        if len(point) != self.k:
            raise ValueError(f"expected {self.k} coordinates, got {len(point)}")
        return point

    def prime_coefficients(self, c: Sequence) -> tuple[Fraction, ...]:
        """Coefficients ``m_i c_i`` actually placed on each prime divisor."""
        point = self.check_point(c)
        return tuple(b.multiplier * ci for b, ci in zip(self.boundary, point))


@dataclass(frozen=True)
class AffineForm:
    """``constant + sum(coeffs[i] * c[i])`` with rational data."""

    constant: Fraction
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "constant", q(self.constant))
        object.__setattr__(self, "coeffs", as_point(self.coeffs))

    @classmethod
    def const(cls, value, k: int) -> "AffineForm":
        return cls(q(value), (Fraction(0),) * k)

    @classmethod
    def coordinate(cls, i: int, k: int) -> "AffineForm":
        return cls(Fraction(0), tuple(Fraction(int(j == i)) for j in range(k)))

    @property
    def k(self) -> int:
        return len(self.coeffs)

    def __call__(self, c: Sequence) -> Fraction:
        if len(c) != self.k:
            raise ValueError(f"form has {self.k} coordinates, point has {len(c)}")
        return self.constant + sum((a * q(x) for a, x in zip(self.coeffs, c)), Fraction(0))

    evaluate = __call__

    def __add__(self, other: "AffineForm") -> "AffineForm":
        self._same_k(other)
        return AffineForm(
            self.constant + other.constant,
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __sub__(self, other: "AffineForm") -> "AffineForm":
        return self + (-other)

    def __neg__(self) -> "AffineForm":
        return self.scale(-1)

    def scale(self, factor) -> "AffineForm":
        factor = q(factor)
        return AffineForm(self.constant * factor, tuple(a * factor for a in self.coeffs))

    def __mul__(self, factor) -> "AffineForm":
        return self.scale(factor)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.constant == 0 and not any(self.coeffs)

    def is_constant(self) -> bool:
        return not any(self.coeffs)

    def _same_k(self, other: "AffineForm") -> None:
        if self.k != other.k:
            raise ValueError(f"dimension mismatch: {self.k} vs {other.k}")

    def render(self, names: Sequence[str] | None = None) -> str:
        """Human-readable form, e.g. ``1/2 - 2/3·x + 1/6·y``."""
        if names is None:
            names = default_names(self.k)
        terms: list[tuple[Fraction, str | None]] = []
        if self.constant != 0:
            terms.append((self.constant, None))
        terms.extend((a, name) for a, name in zip(self.coeffs, names) if a != 0)
        if not terms:
            return "0"
        out = []
        for pos, (a, name) in enumerate(terms):
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            body = str(mag) if name is None else (name if mag == 1 else f"{mag}·{name}")
            if pos == 0:
                out.append(body if sign == "+" else f"-{body}")
            else:
                out.append(f"{sign} {body}")
        return " ".join(out)

    def __str__(self) -> str:
        return self.render()


def default_names(k: int) -> list[str]:
    if k <= 3:
        return ["x", "y", "z"][:k]
    return [f"c{i + 1}" for i in range(k)]


def level_form(family: PairFamily) -> AffineForm:
    return AffineForm(
        family.ambient.anticanonical_level,
        tuple(-b.effective_degree for b in family.boundary),
    )


def level(family: PairFamily, c: Sequence) -> Fraction:
    return level_form(family)(family.check_point(c))


def volume(family: PairFamily, c: Sequence) -> Fraction:
    """``vol(-K - sum c_i D_i) = C * s(c)**n``."""
    s = level(family, c)
    if s < 0:
        raise NonPseudoEffectiveError(f"level {s} < 0: boundary is not anti-canonically bounded")
    return family.ambient.volume_of(s)
