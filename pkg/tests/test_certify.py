from fractions import Fraction as F

import pytest

from kssdomain.certify import (
    Anchor,
    Certificate,
    CertificateKind,
    CertificationError,
    VerdictStatus,
    certify_domain,
    check_certificate,
    cone_reduction,
    cone_theorem_data,
    generate_anchors,
    lc_calabi_yau_anchor,
    quadric_fact_interval,
    verify_cone_theorems,
    zz_upper_bound,
)
from kssdomain.model import level
from kssdomain.polytope import is_subset

from .reference_families import (
    PENTAGON,
    conic_line,
    pn,
    quad,
    quadric_hyperplane,
    two_conics,
    two_lines,
    two_quadrics,
)


def test_zz_upper_bound_examples():
    assert zz_upper_bound(2, F(2, 3)) == F(3, 4)
    assert zz_upper_bound(3, F(3, 4)) == F(8, 9)
    for n in range(1, 10):
        assert zz_upper_bound(n, F(1, n + 1)) == 0


@pytest.mark.parametrize("lam", [0, 1, F(3, 2), -1])
def test_zz_rejects_lambda(lam):
    with pytest.raises(ValueError):
        zz_upper_bound(2, lam)


@pytest.mark.parametrize("which, arg, expected", [(1, 3, F(2, 3)), (2, 2, F(1, 2)), (3, 3, F(7, 8))])
def test_quadric_facts(which, arg, expected):
    assert quadric_fact_interval(which, arg) == expected


@pytest.mark.parametrize("which, arg", [(1, 1), (2, 1), (3, 0), (4, 3)])
def test_quadric_facts_reject(which, arg):
    with pytest.raises(ValueError):
        quadric_fact_interval(which, arg)


def test_cone_reduction_examples():
    assert cone_reduction(quad(2, ("H", 1)), (F(1, 2),), 2) == (F(3, 4), F(3, 4))
    assert cone_reduction(quad(3, ("Q", 2)), (F(5, 6),), 2) == (F(2, 3), F(5, 6))
    assert cone_reduction(pn(1), (), 1) == (2, 0)


def test_cone_reduction_rejects():
    with pytest.raises(ValueError):
        cone_reduction(quad(2, ("Q", 2)), (1,), 2)  # log Calabi-Yau base
    with pytest.raises(ValueError):
        cone_reduction(pn(1), (), F(1, 2))  # r = 4 > dim + 1


@pytest.mark.parametrize("n", [3, 5])
def test_verify_cone_theorems(n):
    assert verify_cone_theorems(n)


def test_cone_theorem_n3_values():
    data = cone_theorem_data(3, 1)
    assert (data.r, data.infinity_coefficient) == (F(3, 4), F(3, 4))
    second = cone_theorem_data(3, 2)
    assert second.base_coefficient == second.fact_bound == 1
    assert second.degenerate


def test_second_theorem_needs_n3():
    with pytest.raises(ValueError):
        verify_cone_theorems(2, 2)


def test_cone_identity_m_r_equals_level():
    for l in range(2, 8):
        for a in [F(0), F(1, 7), F(1, 3), F(1, 2)]:
            for m in [1, 2, F(5, 2)]:
                base = quad(l, ("H", 1))
                try:
                    r, _ = cone_reduction(base, (a,), m)
                except ValueError:
                    continue
                assert m * r == level(base, (a,))


def test_lc_calabi_yau_examples():
    assert lc_calabi_yau_anchor(two_conics(), (F(1, 3), F(2, 3)))
    assert lc_calabi_yau_anchor(conic_line(), (F(2, 3), F(1, 3)))
    assert not lc_calabi_yau_anchor(two_lines(), (F(1, 2), F(1, 2)))
    with pytest.raises(ValueError):
        lc_calabi_yau_anchor(two_lines(), (0, 0))


def test_two_lines_verdict():
    verdict = certify_domain(two_lines())
    assert verdict.status is VerdictStatus.DETERMINED
    assert verdict.certified.vrep == ((0, 0),)


def test_pentagon_verdict_and_certificates():
    verdict = certify_domain(two_conics())
    assert verdict.determined
    assert list(verdict.certified.vrep) == PENTAGON
    kinds = {a.point: a.certificate.kind for a in verdict.anchors}
    assert kinds[(0, 0)] is CertificateKind.AXIOM_BARE_FANO
    assert kinds[(F(1, 2), 0)] is CertificateKind.KNOWN_INTERVAL
    assert kinds[(F(1, 3), F(2, 3))] is CertificateKind.LC_CALABI_YAU


def test_quadric_hyperplane_n4():
    verdict = certify_domain(quadric_hyperplane(4))
    assert verdict.determined
    assert verdict.certified.vrep == ((0, 0), (F(5, 8), 0), (F(2, 3), F(1, 3)))
    cone = [a for a in verdict.anchors if a.certificate.kind is CertificateKind.CONE_REDUCTION]
    assert [a.point for a in cone] == [(F(2, 3), F(1, 3))]


def test_two_quadrics_n3():
    verdict = certify_domain(two_quadrics(3))
    assert verdict.determined
    assert verdict.certified.vrep == ((0, 0), (0, F(2, 3)), (F(2, 3), 0), (1, 1))


def test_every_certificate_revalidates():
    for family in [two_lines(), two_conics(), conic_line(), quadric_hyperplane(5), two_quadrics(6)]:
        verdict = certify_domain(family)
        assert is_subset(verdict.certified, verdict.necessary)
        for anchor in verdict.anchors:
            assert check_certificate(family, anchor)


def test_tampered_certificate_rejected():
    family = two_conics()
    good = next(a for a in generate_anchors(family) if a.certificate.kind is CertificateKind.KNOWN_INTERVAL)
    moved = Anchor((F(3, 5), 0), good.certificate)
    assert not check_certificate(family, moved)
    with pytest.raises(CertificationError):
        certify_domain(family, [moved])


def test_convex_combination_certificate():
    family = two_conics()
    anchors = {a.point: a for a in generate_anchors(family)}
    parts = [anchors[(F(1, 2), 0)], anchors[(F(2, 3), F(1, 3))]]
    combo = Anchor(
        (F(7, 12), F(1, 6)),
        Certificate(CertificateKind.CONVEX_COMBINATION, {"weights": [F(1, 2), F(1, 2)], "anchors": parts}),
    )
    assert check_certificate(family, combo)
    bad = Anchor(combo.point, Certificate(CertificateKind.CONVEX_COMBINATION, {"weights": [F(1, 3), F(2, 3)], "anchors": parts}))
    assert not check_certificate(family, bad)
    assert certify_domain(family, [combo]).determined


def test_gap_when_anchors_missing():
    # hyperplane + cubic in P^4: the vertex (2/3, 8/9) has positive level and no known certificate
    family = pn(4, ("L", 1), ("C", 3))
    verdict = certify_domain(family)
    assert verdict.status is VerdictStatus.GAP
    assert verdict.necessary.vrep == ((0, 0), (0, F(5, 6)), (F(2, 3), F(8, 9)))
    assert verdict.certified.vrep == ((0, 0), (0, F(5, 6)))
    assert is_subset(verdict.certified, verdict.necessary)


def test_quadric_ambient_anchors_stay_inside():
    for l in range(2, 7):
        for d in (1, 2):
            verdict = certify_domain(quad(l, ("D", d)))
            assert verdict.determined, (l, d)


@pytest.mark.parametrize("n", range(1, 9))
def test_single_hypersurface_determined(n):
    for d in range(1, n + 1):
        assert certify_domain(pn(n, ("S", d))).determined


def test_axioms_listed():
    verdict = certify_domain(quadric_hyperplane(5))
    assert "P^5 is K-semistable" in verdict.axioms
    assert any("interpolation" in ax for ax in verdict.axioms)
    assert any("cone" in ax for ax in verdict.axioms)
