"""Pair families from the worked examples, shared by the tests."""

from fractions import Fraction as F
from pathlib import Path

from kssdomain.model import BoundaryEntry, PairFamily, make_projective_space, make_quadric

FAMILIES_DIR = Path(__file__).resolve().parents[1] / "src" / "kssdomain" / "families"


def pn(n, *entries):
    return PairFamily(make_projective_space(n), tuple(BoundaryEntry(*e) for e in entries))


def quad(l, *entries):
    return PairFamily(make_quadric(l), tuple(BoundaryEntry(*e) for e in entries))


def two_lines():
    return pn(2, ("L1", 1, 3), ("L2", 1, 3))


def two_conics():
    return pn(2, ("Q1", 2, F(3, 2)), ("Q2", 2, F(3, 2)))


def conic_line():
    return pn(2, ("Q", 2, F(3, 2)), ("L", 1, 3))


def quadric_hyperplane(n):
    return pn(n, ("Q", 2), ("L", 1))


def two_quadrics(n):
    return pn(n, ("Q", 2), ("Qp", 2))


PENTAGON = [(F(0), F(0)), (F(0), F(1, 2)), (F(1, 3), F(2, 3)), (F(1, 2), F(0)), (F(2, 3), F(1, 3))]
