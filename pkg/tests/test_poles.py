from fractions import Fraction

import pytest

from conftest import fixture
from newton_zeta.errors import PreconditionError
from newton_zeta.geometry import Polynomial, build_newton
from newton_zeta.poles import (alpha_of, apices, candidate_poles, check_full_partition, is_b1, is_u_pyramid,
                               is_ub1_literal, pyramid_apices, verdict)


def test_cusp_candidates(cusp):
    _, np = cusp
    F = np.face_by_points([(3, 0), (0, 2)])
    assert alpha_of(np, F) == Fraction(-5, 6)
    assert not is_b1(np, F)
    assert candidate_poles(np) == [Fraction(-1), Fraction(-5, 6)]
    v = verdict(np)
    assert v.P_prime == [] and v.retained == [Fraction(-1), Fraction(-5, 6)]
    assert v.certificates[Fraction(-5, 6)][0] == "nearby"
    assert not v.violations


def test_whitney_classification(whitney):
    _, np = whitney
    pts = [(2, 0, 0), (0, 2, 1)]
    F, F1, F2 = np.face_by_points(pts), np.face_by_points(pts, [2]), np.face_by_points(pts, [1])
    assert alpha_of(np, F) is None  # (1, 1, 1) is not in the span of F
    assert alpha_of(np, F1) == -1 and alpha_of(np, F2) == Fraction(-3, 2)
    assert not is_b1(np, F1)
    assert is_ub1_literal(np, F2)
    # the apex (0, 2, 1) of the edge has two base directions, so the literal reading says no
    assert is_b1(np, F) and not is_ub1_literal(np, F)
    v = verdict(np)
    assert v.P == [Fraction(-3, 2), Fraction(-1)]
    assert v.P_prime == [Fraction(-3, 2)]
    assert v.retained == [Fraction(-1)]
    assert v.certificates[Fraction(-1)][0] == "H0"


def test_variants_agree_on_fixtures():
    for name in ("cusp", "whitney", "noncompact_facet"):
        _, np = fixture(name)
        a, b = verdict(np, "literal"), verdict(np, "u-pyramid")
        assert a.P_prime == b.P_prime
    with pytest.raises(PreconditionError):
        verdict(fixture("cusp")[1], "loose")


def test_noncompact_facet_facet_is_not_b1():
    _, np = fixture("noncompact_facet")
    G = np.face_by_points([(1, 0, 1, 0), (0, 1, 1, 0), (0, 1, 0, 5)], [0, 1])
    assert alpha_of(np, G) == Fraction(-6, 5)
    assert apices(np, G) == [] or not is_b1(np, G)
    v = verdict(np)
    assert Fraction(-6, 5) in v.retained


def test_five_vars_candidate_is_integral():
    _, np = fixture("five_vars")
    v = verdict(np)
    assert Fraction(-2) in v.retained
    assert v.certificates[Fraction(-2)][0] == "H0"


def test_pyramid_helpers():
    # cone over e1, e2 + e3 in R^3: only e1 is a pyramid apex
    F = [(1, 0, 0), (0, 1, 1)]
    ap = pyramid_apices(F, [], 3)
    assert ap == {0: frozenset({0}), 1: frozenset({1, 2})}
    assert is_u_pyramid(F, [], 3)
    assert not is_u_pyramid([(2, 1, 0), (0, 1, 1), (1, 0, 1)], [], 3)
    assert check_full_partition([], [], [(1, 0, 0)], [(0, 1, 1)], [frozenset({0})], 3)


def test_noncompact_fixture_has_nearby_certificate_off_the_origin():
    # x^2 is -1 on the Milnor fiber at every point of the y-axis; the alternating sum cancels it
    np = build_newton(Polynomial(2, {(2, 0): 1}))
    v = verdict(np)
    assert not v.violations
    assert v.certificates[Fraction(-1, 2)][0] in {"nearby-subspace", "subspace-eigenvalue"}
