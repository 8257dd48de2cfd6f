from fractions import Fraction

import pytest

from newton_zeta.boxes import enumerate_box
from newton_zeta.errors import PreconditionError
from newton_zeta.geometry import Polynomial, build_newton
from newton_zeta.oracle import brute_box, facet_volume_etilde, padic_poincare_oracle
from newton_zeta.zeta import z_padic


def test_poincare_series_of_a_smooth_germ():
    # x + y: v(f) = m with measure (1 - 1/p) p^-m inside (pZ_p)^2, normalized to mass 1
    ps = padic_poincare_oracle(Polynomial(2, {(1, 0): 1, (0, 1): 1}), 3, 3)
    assert ps.coefficients[0] == 0
    assert ps.coefficients[1:] == [Fraction(2, 3) * Fraction(1, 3) ** (m - 1) for m in (1, 2, 3)]


def test_poincare_series_matches_cusp_zeta(cusp):
    f, np = cusp
    z = z_padic(np, f, 5)
    assert padic_poincare_oracle(f, 5, 3).matches(z)
    assert not padic_poincare_oracle(Polynomial(2, {(0, 2): 1, (5, 0): -1}), 5, 3).matches(z)


def test_poincare_budget():
    with pytest.raises(PreconditionError):
        padic_poincare_oracle(Polynomial(3, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1}), 101, 4)
    with pytest.raises(PreconditionError):
        padic_poincare_oracle(Polynomial(2, {(1, 0): 1, (0, 1): 1}), 4, 2)


@pytest.mark.parametrize("gens", [[(3, 0), (0, 2)], [(2, 0, 0), (0, 2, 1)], [(1, 2, 0), (0, 1, 3), (2, 0, 1)]])
@pytest.mark.parametrize("mode", ["open", "halfopen", "plus"])
def test_brute_box_agrees_with_enumeration(gens, mode):
    assert brute_box(gens, mode) == enumerate_box(gens, mode)


def test_brute_box_rejects_bad_modes():
    with pytest.raises(PreconditionError):
        brute_box([(1, 0)], "closed")


def test_facet_volume_route_needs_convenience(whitney):
    f, _ = whitney
    with pytest.raises(PreconditionError):
        facet_volume_etilde(f)
    g = Polynomial(2, {(0, 2): 1, (3, 0): 1})
    e = facet_volume_etilde(g)
    assert e.total() == -2 and e.coefficient(0) == 0
    assert build_newton(g).is_convenient
