from fractions import Fraction

import pytest

from conftest import fixture
from newton_zeta.boxes import CycSum
from newton_zeta.errors import PreconditionError
from newton_zeta.geometry import Polynomial, build_newton
from newton_zeta.monodromy import (alternating_sum_lhs, etilde_at_subspace, nonneg_rhs, varchenko_etilde,
                                   zeta_factor)
from newton_zeta.oracle import facet_volume_etilde
from newton_zeta.polys import RatFn, UPoly


def test_cusp_eigenvalues(cusp):
    _, np = cusp
    e0 = varchenko_etilde(np)
    # H^1 of the Milnor fiber carries the two primitive sixth roots
    assert e0 == CycSum({Fraction(1, 6): -1, Fraction(5, 6): -1})
    assert alternating_sum_lhs(np) == nonneg_rhs(np).total == -e0
    z = zeta_factor(e0)
    assert str(z) == "(1 - t^2)*(1 - t^3)/(1 - t^6)"
    assert z.to_ratfn() == RatFn(UPoly([1, -1]), UPoly([1, -1, 1]))


def test_whitney_eigenvalues(whitney):
    _, np = whitney
    assert etilde_at_subspace(np, []) == CycSum({Fraction(1, 2): 1})
    assert etilde_at_subspace(np, [1]).is_zero()
    assert etilde_at_subspace(np, [2]) == CycSum.single(0, -1)
    with pytest.raises(PreconditionError):
        etilde_at_subspace(np, [0])
    assert nonneg_rhs(np).total == CycSum({0: 1, Fraction(1, 2): 1})
    assert zeta_factor(varchenko_etilde(np)).to_ratfn() == RatFn(UPoly([1, 0, -1]))


def test_nonnegative_sum_breakdown(whitney):
    _, np = whitney
    rhs = nonneg_rhs(np)
    assert sum((s * l for l, s in rhs.per_cone.values()), CycSum()) == rhs.total
    assert all(l > 0 for l, _ in rhs.per_cone.values())


def test_isolated_singularity_routes_agree():
    for name in ("cusp", "five_vars"):
        f, np = fixture(name)
        assert varchenko_etilde(np) == facet_volume_etilde(f)


def test_brieskorn_milnor_number():
    # x^2 + y^3 + z^5 has Milnor number 1*2*4 = 8 and no eigenvalue 1
    f = Polynomial(3, {(2, 0, 0): 1, (0, 3, 0): 1, (0, 0, 5): 1})
    e = varchenko_etilde(build_newton(f))
    assert e.total() == 8 and e.coefficient(0) == 0


def test_refined_fan_breaks_the_identity():
    _, np = fixture("noncompact_facet")
    with pytest.raises(PreconditionError):
        varchenko_etilde(np)
    lhs, rhs = alternating_sum_lhs(np, refine=True), nonneg_rhs(np, refine=True).total
    assert lhs == CycSum.single(0)
    assert rhs == CycSum({0: 1, Fraction(1, 5): 1, Fraction(2, 5): 1, Fraction(3, 5): 1, Fraction(4, 5): 1})


def test_zeta_factor_rejects_irrational_classes():
    with pytest.raises(PreconditionError):
        zeta_factor(CycSum({Fraction(1, 5): 1}))
