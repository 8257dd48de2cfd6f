from fractions import Fraction

import pytest

from newton_zeta.boxes import CycSum, bbox, box_index, compact_simplex_sum, enumerate_box, psi_residues
from newton_zeta.errors import PreconditionError


def test_cusp_cone_boxes():
    gens = [(3, 0), (0, 2)]
    assert box_index(gens) == 6
    half = enumerate_box(gens)
    assert [pt for pt, _ in half] == [(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1)]
    assert [pt for pt, _ in enumerate_box(gens, "open")] == [(1, 1), (2, 1)]
    plus = dict(enumerate_box(gens, "plus"))
    assert plus[(3, 2)] == (1, 1)
    assert plus[(1, 2)] == (Fraction(1, 3), 1)


def test_box_of_a_non_full_cone():
    pts = enumerate_box([(2, 0, 0), (0, 2, 1)])
    assert len(pts) == 2 and pts[1][0] == (1, 0, 0)
    assert enumerate_box([(2, 0, 0), (0, 2, 1)], "open") == []


def test_dependent_generators_rejected():
    with pytest.raises(PreconditionError):
        box_index([(1, 2), (2, 4)])
    with pytest.raises(PreconditionError):
        enumerate_box([(1, 0)], "closed")


def test_psi_residues_match_simplex_formula():
    # facet of y^2 - x^3: volume 1 at lattice distance 6
    assert psi_residues([(3, 0), (0, 2)], [True, True], False) == compact_simplex_sum(1, 6)
    assert psi_residues([(3, 0), (0, 2)], [True, True], True) == CycSum({Fraction(1, 6): 1, Fraction(5, 6): 1})
    # an unbounded direction does not count towards psi
    assert psi_residues([(2, 0), (0, 1)], [True, False], True) == CycSum({Fraction(1, 2): 1}) - CycSum({Fraction(1, 2): 1})
    assert psi_residues([(2, 0), (0, 1)], [True, False], False) == CycSum({0: 1, Fraction(1, 2): 1})


def test_zero_cone_boxes_hold_the_origin():
    assert psi_residues([], [], True) == CycSum.single(0)
    assert psi_residues([], [], False) == CycSum.single(0)


def test_cycsum_arithmetic_and_text():
    a = CycSum({Fraction(1, 6): 1, Fraction(5, 6): 1})
    b = CycSum({Fraction(-1, 6): 1})  # residues are taken mod 1
    assert b == CycSum({Fraction(5, 6): 1})
    assert str(a - b) == "[1/6]"
    assert str(-a + CycSum.single(0, 2)) == "2 - [1/6] - [5/6]"
    assert (a * 3).total() == 6
    assert a.coefficient(Fraction(7, 6)) == 1
    assert CycSum().is_zero() and str(CycSum()) == "0"
    assert a.to_json() == {"1/6": 1, "5/6": 1}


def test_bbox():
    assert bbox([(3, 0), (0, 2)], (1, 1)) == (Fraction(1, 3), Fraction(1, 2))
    assert bbox([(3, 0), (0, 2)], (4, 5)) == (Fraction(1, 3), Fraction(1, 2))
    assert bbox([(1, 0, 0)], (0, 1, 0)) is None
