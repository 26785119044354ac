"""Exact rational polytopes in coefficient space.

Both conversions (half-spaces to vertices, points to half-spaces) go through
one double-description routine, :func:`cone_generators`, applied to the
homogenised cone of the region or to its polar.  Everything stays in
:class:`~fractions.Fraction`; there are no tolerances anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from .invariants import Boundary, beta_form
from .model import AffineForm, PairFamily, as_point, level_form

__all__ = [
    "HalfSpace",
    "Polytope",
    "UnboundedRegionError",
    "cone_generators",
    "contains",
    "convex_hull",
    "enumerate_vertices",
    "equal",
    "is_subset",
    "linear_min",
    "necessary_region",
]

Vector = tuple[Fraction, ...]


class UnboundedRegionError(ValueError):
    pass


@dataclass(frozen=True)
class HalfSpace:
    """The closed half-space ``form(c) >= 0``."""

    form: AffineForm

    sense = ">= 0"

    def contains(self, c: Sequence) -> bool:
        return self.form(c) >= 0

    def render(self, names=None) -> str:
        return f"{self.form.render(names)} >= 0"


def _int_primitive(v: Sequence[Fraction | int]) -> tuple[int, ...]:
    """Positive rescaling of ``v`` to a primitive integer vector."""
    den = reduce(lcm, (Fraction(x).denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(gcd, ints, 0)
    if g <= 1:
        return tuple(ints)
    return tuple(i // g for i in ints)


def _as_fractions(v: Sequence[int]) -> Vector:
    return tuple(Fraction(x) for x in v)


def _idot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def cone_generators(rows: Sequence[Sequence[Fraction]], dim: int) -> tuple[list[Vector], list[Vector]]:
    """Lines and extreme rays of ``{x in Q^dim : a . x >= 0 for a in rows}``.

    Incremental double description starting from the whole space (every
    coordinate axis a line).  A new row either cuts a line, which then turns
    into a ray, or is handled by the usual positive/negative ray pairing with
    the combinatorial adjacency test.  Rows and generators are scaled to
    primitive integer vectors so the inner loops never touch Fractions.
    """
    lines: list[tuple[int, ...]] = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays: list[tuple[int, ...]] = []
    zeros: list[frozenset[int]] = []
    seen: list[int] = []

    for j, a in enumerate(rows):
        a = as_point(a)
        if len(a) != dim:
            raise ValueError(f"row {j} has length {len(a)}, expected {dim}")
        if not any(a):
            continue
        a = _int_primitive(a)

        pivot = next((i for i, l in enumerate(lines) if _idot(a, l) != 0), None)
        if pivot is not None:
            l = lines[pivot]
            al = _idot(a, l)
            if al < 0:
                l, al = tuple(-x for x in l), -al
            # project everything onto the hyperplane a . x = 0 along l
            lines = [
                _int_primitive([al * m_i - _idot(a, m) * l_i for m_i, l_i in zip(m, l)])
                for i, m in enumerate(lines)
                if i != pivot
            ]
            rays = [_int_primitive([al * r_i - _idot(a, r) * l_i for r_i, l_i in zip(r, l)]) for r in rays]
            zeros = [z | {j} for z in zeros]
            rays.append(l)
            zeros.append(frozenset(seen))
            seen.append(j)
            continue

        vals = [_idot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        new_rays: list[tuple[int, ...]] = []
        new_zeros: list[frozenset[int]] = []
        for i, v in enumerate(vals):
            if v > 0:
                new_rays.append(rays[i])
                new_zeros.append(zeros[i])
            elif v == 0:
                new_rays.append(rays[i])
                new_zeros.append(zeros[i] | {j})
        for p in pos:
            for m in neg:
                common = zeros[p] & zeros[m]
                if any(t != p and t != m and common <= zeros[t] for t in range(len(rays))):
                    continue
                vp, vm = vals[p], vals[m]
                new_rays.append(_int_primitive([vp * x - vm * y for x, y in zip(rays[m], rays[p])]))
                new_zeros.append(common | {j})
        rays, zeros = new_rays, new_zeros
        seen.append(j)

    return [_as_fractions(l) for l in lines], [_as_fractions(r) for r in rays]


def enumerate_vertices(hrep: Iterable[HalfSpace], k: int | None = None) -> list[Vector]:
    """Vertices of a bounded intersection of half-spaces, sorted lexicographically.

    An empty intersection gives ``[]``; an unbounded non-empty one raises
    :class:`UnboundedRegionError`.
    """
    hrep = list(hrep)
    if k is None:
        if not hrep:
            raise ValueError("cannot infer the dimension of an empty half-space list")
        k = hrep[0].form.k
    rows = [(Fraction(1),) + (Fraction(0),) * k]
    for h in hrep:
        if h.form.k != k:
            raise ValueError(f"half-space of dimension {h.form.k} in a {k}-dimensional system")
        rows.append((h.form.constant,) + h.form.coeffs)
    lines, rays = cone_generators(rows, k + 1)
    verts = {tuple(x / r[0] for x in r[1:]) for r in rays if r[0] > 0}
    if not verts:
        return []
    if lines or any(r[0] == 0 for r in rays):
        raise UnboundedRegionError("half-space system does not describe a bounded region")
    return sorted(verts)


@dataclass(frozen=True)
class Polytope:
    dim_ambient: int
    hrep: tuple[HalfSpace, ...]
    vrep: tuple[Vector, ...]

    @classmethod
    def from_hrep(cls, halfspaces: Iterable[HalfSpace], k: int) -> "Polytope":
        hrep = tuple(halfspaces)
        return cls(k, hrep, tuple(enumerate_vertices(hrep, k)))

    @classmethod
    def empty(cls, k: int) -> "Polytope":
        return cls(k, (HalfSpace(AffineForm.const(-1, k)),), ())

    @property
    def vertices(self) -> tuple[Vector, ...]:
        return self.vrep

    @property
    def is_empty(self) -> bool:
        return not self.vrep

    def __contains__(self, c) -> bool:
        return contains(self, c)


def convex_hull(points: Iterable[Sequence], k: int | None = None) -> Polytope:
    """Convex hull with an irredundant vertex list and a facet description.

    The facets are the extreme rays ``(b, a)`` of the polar cone
    ``{b + a.p >= 0 for all points p}``; its lines become pairs of opposite
    half-spaces cutting out the affine hull of a lower-dimensional set.
    """
    pts = sorted({as_point(p) for p in points})
    if k is None:
        if not pts:
            raise ValueError("cannot infer the dimension of an empty point set")
        k = len(pts[0])
    if any(len(p) != k for p in pts):
        raise ValueError("points must share the ambient dimension")
    if not pts:
        return Polytope.empty(k)

    lines, rays = cone_generators([(Fraction(1),) + p for p in pts], k + 1)
    hrep: list[HalfSpace] = []
    for r in rays:
        if any(r[1:]):
            hrep.append(HalfSpace(AffineForm(r[0], r[1:])))
    for l in lines:
        form = AffineForm(l[0], l[1:])
        hrep.extend((HalfSpace(form), HalfSpace(-form)))
    vrep = tuple(enumerate_vertices(hrep, k))
    missing = set(vrep) - set(pts)
    assert not missing, f"hull produced non-input vertices {missing}"
    return Polytope(k, tuple(hrep), vrep)


def contains(P: Polytope, c: Sequence) -> bool:
    point = as_point(c)
    if len(point) != P.dim_ambient:
        raise ValueError(f"point has {len(point)} coordinates, polytope lives in dimension {P.dim_ambient}")
    if P.is_empty:
        return False
    return all(h.contains(point) for h in P.hrep)


def is_subset(P: Polytope, Q: Polytope) -> bool:
    if P.dim_ambient != Q.dim_ambient:
        raise ValueError("dimension mismatch")
    return all(contains(Q, v) for v in P.vrep)


def equal(P: Polytope, Q: Polytope) -> bool:
    return is_subset(P, Q) and is_subset(Q, P)


def linear_min(P: Polytope, objective: AffineForm) -> Fraction:
    if P.is_empty:
        raise ValueError("linear_min on an empty polytope")
    return min(objective(v) for v in P.vrep)


def necessary_region(family: PairFamily) -> Polytope:
    """Box, level and boundary-beta constraints; contains the K-semistable domain."""
    k = family.k
    if k < 1:
        raise ValueError("necessary_region needs at least one boundary divisor")
    hrep: list[HalfSpace] = []
    for i in range(k):
        x = AffineForm.coordinate(i, k)
        hrep.append(HalfSpace(x))
        hrep.append(HalfSpace(AffineForm.const(1, k) - x))
    hrep.append(HalfSpace(level_form(family)))
    hrep.extend(HalfSpace(beta_form(family, Boundary(i))) for i in range(k))
    return Polytope.from_hrep(hrep, k)
