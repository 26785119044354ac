"""Sufficiency side: certified K-semistable points and the domain verdict.

The necessary region only rules points out.  To rule points *in*, we collect
anchors, i.e. coefficient points that carry a re-checkable certificate of
K-semistability, and take their convex hull (interpolation holds because
every boundary here is proportional to ``-K`` on a Picard-rank-one ambient).
If the hull equals the necessary region the domain is determined exactly.

Known results that are used without being recomputed are listed as axioms
on each certificate and collected on the verdict.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from .model import (
    AmbientKind,
    BoundaryEntry,
    PairFamily,
    as_point,
    level,
    make_projective_space,
    make_quadric,
    q,
)
from .polytope import Polytope, contains, convex_hull, equal, is_subset, necessary_region

__all__ = [
    "Anchor",
    "Certificate",
    "CertificateKind",
    "CertificationError",
    "ConeTheoremData",
    "Verdict",
    "VerdictStatus",
    "certify_domain",
    "check_certificate",
    "cone_reduction",
    "cone_theorem_data",
    "generate_anchors",
    "lc_calabi_yau_anchor",
    "quadric_fact_interval",
    "verify_cone_theorems",
    "zz_upper_bound",
]

INTERPOLATION = "interpolation: convex combinations of K-semistable boundaries proportional to -K are K-semistable"
CONE_LEMMA = "a polarized log Fano pair is K-semistable iff its projective cone with V_inf coefficient 1 - r/(n+1) is"
LC_CY = "a log Calabi-Yau pair is K-semistable iff it is log canonical"


def _ambient_axiom(family: PairFamily) -> str:
    if family.ambient.kind is AmbientKind.PROJECTIVE_SPACE:
        return f"P^{family.n} is K-semistable"
    return f"the smooth quadric Q_{family.n} is K-semistable"


class CertificationError(RuntimeError):
    """An anchor failed its own certificate or fell outside the necessary region."""


class CertificateKind(enum.Enum):
    KNOWN_INTERVAL = "KnownInterval"
    LC_CALABI_YAU = "LcCalabiYau"
    CONE_REDUCTION = "ConeReduction"
    CONVEX_COMBINATION = "ConvexCombination"
    AXIOM_BARE_FANO = "AxiomBareFano"


@dataclass(frozen=True)
class Certificate:
    kind: CertificateKind
    payload: Mapping[str, Any] = field(default_factory=dict)
    axioms: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class Anchor:
    point: tuple[Fraction, ...]
    certificate: Certificate

    def __post_init__(self):
        object.__setattr__(self, "point", as_point(self.point))


class VerdictStatus(enum.Enum):
    DETERMINED = "Determined"
    GAP = "Gap"


@dataclass(frozen=True)
class Verdict:
    status: VerdictStatus
    necessary: Polytope
    certified: Polytope
    anchors: tuple[Anchor, ...]
    axioms: tuple[str, ...]

    @property
    def determined(self) -> bool:
        return self.status is VerdictStatus.DETERMINED


# -- known intervals ---------------------------------------------------------


def zz_upper_bound(n: int, lam) -> Fraction:
    """Right end of ``Kss(V, S) = [0, 1 - r/n]`` with ``r = 1/lam - 1``.

    ``S ~ -lam K_V`` on an ``n``-dimensional Fano ``V``.  Assumes ``V`` and
    ``S`` are K-semistable; callers record that as an axiom.
    """
    lam = q(lam)
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 < lam < 1:
        raise ValueError(f"lambda must lie in (0, 1), got {lam}")
    r = 1 / lam - 1
    return 1 - r / n


def quadric_fact_interval(which: int, n_or_l: int) -> Fraction:
    """Upper end of the known K-semistable interval for the three quadric facts.

    1. ``(P^n, aQ)``, ``a <= (n+1)/(2n)``
    2. ``(Q_l, a Q_{l-1})``, ``a <= 1/l``
    3. ``(Q_l, a Q'_l|Q_l)``, ``a <= ((l+1)+3)/(2(l+1))``
    """
    if which == 1:
        if n_or_l < 2:
            raise ValueError("fact 1 needs n >= 2")
        return Fraction(n_or_l + 1, 2 * n_or_l)
    if which in (2, 3):
        if n_or_l < 2:
            raise ValueError(f"fact {which} needs l >= 2")
        if which == 2:
            return Fraction(1, n_or_l)
        return Fraction((n_or_l + 1) + 3, 2 * (n_or_l + 1))
    raise ValueError(f"unknown quadric fact {which!r}")


# -- cone reduction ----------------------------------------------------------


def cone_reduction(base: PairFamily, base_c: Sequence, m) -> tuple[Fraction, Fraction]:
    """``(r, 1 - r/(dim+1))`` for the cone over ``base`` polarized by ``m H``.

    ``r`` is fixed by ``m H ~ -(1/r)(K + Delta)``, i.e. ``m r = s_base``.
    """
    m = q(m)
    if m <= 0:
        raise ValueError("polarization degree must be positive")
    s = level(base, base_c)
    if s <= 0:
        raise ValueError(f"base pair is not log Fano (level {s})")
    r = s / m
    if not 0 < r <= base.n + 1:
        raise ValueError(f"r = {r} outside (0, {base.n + 1}]")
    return r, 1 - r / (base.n + 1)


@dataclass(frozen=True)
class ConeTheoremData:
    """One of the two cone theorems on ``P^n`` at a given ``n``.

    ``infinity_coefficient`` lands on the quadric ``Q`` (the section at
    infinity after degenerating), ``base_coefficient`` on the other divisor.
    ``degenerate`` marks the smallest ``n``, where ``r = 0`` and the target
    pair is log Calabi-Yau instead of a cone over a log Fano base.
    """

    theorem: int
    n: int
    other_degree: int
    base_coefficient: Fraction
    r: Fraction
    infinity_coefficient: Fraction
    fact_bound: Fraction | None
    degenerate: bool

    @property
    def stated_r(self) -> Fraction:
        n = self.n
        if self.theorem == 1:
            return (n - 1 - Fraction(1, n - 1)) / 2
        return (n - 1 - Fraction(n + 1, n - 1)) / 2

    @property
    def stated_infinity_coefficient(self) -> Fraction:
        n = self.n
        if self.theorem == 1:
            return Fraction(n, 2 * (n - 1))
        return Fraction(n + 1, 2 * (n - 1))


_THEOREM_MIN_N = {1: 2, 2: 3}


def cone_theorem_data(n: int, theorem: int) -> ConeTheoremData:
    if theorem not in _THEOREM_MIN_N:
        raise ValueError(f"unknown cone theorem {theorem!r}")
    if n < _THEOREM_MIN_N[theorem]:
        raise ValueError(f"cone theorem {theorem} needs n >= {_THEOREM_MIN_N[theorem]}, got {n}")
    l = n - 1
    if theorem == 1:
        other_degree, a = 1, Fraction(1, n - 1)
    else:
        other_degree, a = 2, Fraction(n + 1, 2 * (n - 1))
    base_level = l - other_degree * a
    degenerate = base_level == 0
    if degenerate:
        # the base is log Calabi-Yau; the lemma does not apply but r = s/m still reads 0
        r = base_level / 2
        inf = 1 - r / n
    else:
        base = PairFamily(make_quadric(l), (BoundaryEntry("section", other_degree),))
        r, inf = cone_reduction(base, (a,), 2)
    fact_bound = None
    if l >= 2:
        fact_bound = quadric_fact_interval(2 if theorem == 1 else 3, l)
    return ConeTheoremData(theorem, n, other_degree, a, r, inf, fact_bound, degenerate)


def verify_cone_theorems(n: int, theorem: int | None = None) -> bool:
    """Re-derive the cone-theorem pairs on ``P^n`` and check their hypotheses.

    With ``theorem=None`` every theorem applicable at ``n`` is checked.
    """
    if theorem is None:
        theorems = [t for t, lo in _THEOREM_MIN_N.items() if n >= lo]
        if not theorems:
            raise ValueError(f"no cone theorem applies at n={n}")
    else:
        theorems = [theorem]
    for t in theorems:
        data = cone_theorem_data(n, t)
        if data.r != data.stated_r or data.infinity_coefficient != data.stated_infinity_coefficient:
            return False
        if data.infinity_coefficient != 1 - data.r / n:
            return False
        if data.fact_bound is not None and data.base_coefficient > data.fact_bound:
            return False
        target = PairFamily(
            make_projective_space(n),
            (BoundaryEntry("Q", 2), BoundaryEntry("D", data.other_degree)),
        )
        point = (data.infinity_coefficient, data.base_coefficient)
        if data.degenerate:
            if level(target, point) != 0 or not lc_calabi_yau_anchor(target, point):
                return False
        elif not (0 < data.r <= n and level(target, point) > 0):
            return False
    return True


# -- Calabi-Yau boundary -----------------------------------------------------


def lc_calabi_yau_anchor(family: PairFamily, c: Sequence) -> bool:
    """Log canonicity of a level-zero point (SNC boundary: all prime coefficients <= 1)."""
    s = level(family, c)
    if s != 0:
        raise ValueError(f"point has level {s}, not a Calabi-Yau boundary")
    return all(0 <= a <= 1 for a in family.prime_coefficients(c))


# -- certificate checking ----------------------------------------------------


def _interval_bound(family: PairFamily, payload: Mapping[str, Any]) -> Fraction | None:
    i = int(payload["index"])
    d = family.boundary[i].prime_degree
    n = family.n
    kind = family.ambient.kind
    source = payload["source"]
    if source == "zz":
        lam = q(payload["lambda"])
        if d.denominator != 1:
            return None
        if kind is AmbientKind.PROJECTIVE_SPACE:
            if not (1 <= d <= n and lam == d / (n + 1)):
                return None
        elif lam != d / n:
            return None
        return zz_upper_bound(n, lam)
    if source == "quadric_fact_1":
        if kind is not AmbientKind.PROJECTIVE_SPACE or d != 2:
            return None
        return quadric_fact_interval(1, n)
    if source in ("quadric_fact_2", "quadric_fact_3"):
        which = int(source[-1])
        if kind is not AmbientKind.QUADRIC or d != which - 1:
            return None
        return quadric_fact_interval(which, n)
    return None


def check_certificate(family: PairFamily, anchor: Anchor) -> bool:
    """Re-run the check a certificate stands for; never trusts stored results."""
    try:
        return _check(family, anchor)
    except (KeyError, IndexError, TypeError, ValueError):
        return False


def _check(family: PairFamily, anchor: Anchor) -> bool:
    cert = anchor.certificate
    point = family.check_point(anchor.point)
    payload = cert.payload
    kind = cert.kind

    if kind is CertificateKind.AXIOM_BARE_FANO:
        return not any(point) and payload.get("ambient") == family.ambient.kind.value and int(payload["dim"]) == family.n

    if kind is CertificateKind.KNOWN_INTERVAL:
        i = int(payload["index"])
        if any(x != 0 for j, x in enumerate(point) if j != i):
            return False
        bound = _interval_bound(family, payload)
        if bound is None or q(payload["bound"]) != bound:
            return False
        return 0 <= family.prime_coefficients(point)[i] <= bound

    if kind is CertificateKind.LC_CALABI_YAU:
        return level(family, point) == 0 and lc_calabi_yau_anchor(family, point)

    if kind is CertificateKind.CONE_REDUCTION:
        if family.ambient.kind is not AmbientKind.PROJECTIVE_SPACE or family.k != 2:
            return False
        theorem, n = int(payload["theorem"]), int(payload["n"])
        qi, oi = int(payload["quadric_index"]), int(payload["other_index"])
        if n != family.n or {qi, oi} != {0, 1}:
            return False
        if not verify_cone_theorems(n, theorem):
            return False
        data = cone_theorem_data(n, theorem)
        if data.degenerate or q(payload["r"]) != data.r:
            return False
        if family.boundary[qi].prime_degree != 2 or family.boundary[oi].prime_degree != data.other_degree:
            return False
        prime = family.prime_coefficients(point)
        return prime[qi] == data.infinity_coefficient and prime[oi] == data.base_coefficient

    if kind is CertificateKind.CONVEX_COMBINATION:
        weights = [q(w) for w in payload["weights"]]
        parts = list(payload["anchors"])
        if len(weights) != len(parts) or not parts:
            return False
        if any(w < 0 for w in weights) or sum(weights) != 1:
            return False
        if not all(check_certificate(family, p) for p in parts):
            return False
        combo = tuple(
            sum((w * p.point[j] for w, p in zip(weights, parts)), Fraction(0)) for j in range(family.k)
        )
        return combo == point

    return False


# -- anchor generation -------------------------------------------------------


def _axis_anchor(family: PairFamily, i: int) -> Anchor | None:
    entry = family.boundary[i]
    d = entry.prime_degree
    n = family.n
    kind = family.ambient.kind
    if d.denominator != 1:
        return None
    axioms = [_ambient_axiom(family)]
    if kind is AmbientKind.PROJECTIVE_SPACE:
        if not 1 <= d <= n:
            return None
        if d == 2:
            payload = {"index": i, "source": "quadric_fact_1", "n": n}
            axioms.append(f"the smooth quadric Q_{n - 1} is K-semistable")
            notes = ("the right endpoint (n+1)/(2n) is K-semistable but not K-polystable",)
        else:
            payload = {"index": i, "source": "zz", "n": n, "lambda": d / (n + 1)}
            axioms.append(f"a smooth degree-{d} hypersurface in P^{n} is K-semistable")
            notes = ()
    else:
        lam = d / n
        if not 0 < lam < 1:
            return None
        if d == 1:
            payload = {"index": i, "source": "quadric_fact_2", "n": n}
            axioms.append(f"the smooth quadric Q_{n - 1} is K-semistable")
        else:
            # the degree-two fact as stated overshoots the beta bound for l > 2; use the general interval
            payload = {"index": i, "source": "zz", "n": n, "lambda": lam}
            axioms.append(f"a smooth degree-{d} section of Q_{n} is K-semistable")
        notes = ()
    bound = _interval_bound(family, payload)
    payload["bound"] = bound
    if bound is None or bound <= 0:
        return None
    point = [Fraction(0)] * family.k
    point[i] = min(Fraction(1), bound / entry.multiplier)
    cert = Certificate(CertificateKind.KNOWN_INTERVAL, payload, tuple(axioms), notes)
    return Anchor(tuple(point), cert)


def _cone_anchors(family: PairFamily) -> list[Anchor]:
    if family.ambient.kind is not AmbientKind.PROJECTIVE_SPACE or family.k != 2:
        return []
    n = family.n
    out = []
    degrees = [b.prime_degree for b in family.boundary]
    for qi, oi in ((0, 1), (1, 0)):
        if degrees[qi] != 2 or degrees[oi] not in (1, 2):
            continue
        theorem = 1 if degrees[oi] == 1 else 2
        if n < _THEOREM_MIN_N[theorem]:
            continue
        data = cone_theorem_data(n, theorem)
        if data.degenerate:
            continue
        point = [Fraction(0), Fraction(0)]
        point[qi] = data.infinity_coefficient / family.boundary[qi].multiplier
        point[oi] = data.base_coefficient / family.boundary[oi].multiplier
        if any(x > 1 for x in point):
            continue
        payload = {
            "theorem": theorem,
            "n": n,
            "quadric_index": qi,
            "other_index": oi,
            "r": data.r,
            "infinity_coefficient": data.infinity_coefficient,
            "base_coefficient": data.base_coefficient,
        }
        axioms = (
            _ambient_axiom(family),
            f"(P^{n}, (n+1)/(2n) Q) degenerates to the cone over Q_{n - 1} polarized by O(2)",
            CONE_LEMMA,
            f"the smooth quadric Q_{n - 2} is K-semistable"
            if theorem == 1
            else f"the smooth quadric Q_{n - 1} and its smooth quadric sections are K-semistable",
        )
        out.append(Anchor(tuple(point), Certificate(CertificateKind.CONE_REDUCTION, payload, axioms)))
    return out


def generate_anchors(family: PairFamily, necessary: Polytope | None = None) -> list[Anchor]:
    """Shape-matched anchors: origin, known axis intervals, lc Calabi-Yau vertices, cone points."""
    if necessary is None:
        necessary = necessary_region(family)
    k = family.k
    origin = Certificate(
        CertificateKind.AXIOM_BARE_FANO,
        {"ambient": family.ambient.kind.value, "dim": family.n},
        (_ambient_axiom(family),),
    )
    anchors = [Anchor((Fraction(0),) * k, origin)]
    for i in range(k):
        axis = _axis_anchor(family, i)
        if axis is not None:
            anchors.append(axis)
    for v in necessary.vrep:
        if level(family, v) == 0 and lc_calabi_yau_anchor(family, v):
            anchors.append(Anchor(v, Certificate(CertificateKind.LC_CALABI_YAU, {}, (LC_CY,))))
    anchors.extend(_cone_anchors(family))
    return anchors


def certify_domain(family: PairFamily, extra_anchors: Iterable[Anchor] = ()) -> Verdict:
    necessary = necessary_region(family)
    anchors: dict[tuple[Fraction, ...], Anchor] = {}
    for anchor in [*generate_anchors(family, necessary), *extra_anchors]:
        if not check_certificate(family, anchor):
            raise CertificationError(f"certificate of {anchor.point} does not re-validate")
        if not contains(necessary, anchor.point):
            raise CertificationError(f"anchor {anchor.point} lies outside the necessary region")
        anchors.setdefault(anchor.point, anchor)
    certified = convex_hull(anchors.keys(), family.k)
    if not is_subset(certified, necessary):
        raise CertificationError("certified hull escapes the necessary region")
    status = VerdictStatus.DETERMINED if equal(certified, necessary) else VerdictStatus.GAP
    axioms = {ax for a in anchors.values() for ax in _all_axioms(a.certificate)}
    if len(anchors) > 1:
        axioms.add(INTERPOLATION)
    ordered = tuple(anchors[p] for p in sorted(anchors))
    return Verdict(status, necessary, certified, ordered, tuple(sorted(axioms)))


def _all_axioms(cert: Certificate) -> set[str]:
    out = set(cert.axioms)
    if cert.kind is CertificateKind.CONVEX_COMBINATION:
        out.add(INTERPOLATION)
        for part in cert.payload.get("anchors", ()):
            out |= _all_axioms(part.certificate)
    return out
