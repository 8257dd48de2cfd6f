import pytest

from conftest import fixture
from newton_zeta.errors import PreconditionError
from newton_zeta.fan import simplicial_fan, triangulate_cone
from newton_zeta.localh import IntPoly, local_h, local_h_at_one
from newton_zeta.monodromy import _fan


def test_cusp_local_h(cusp):
    _, np = cusp
    delta = _fan(np)
    F = np.face_by_points([(3, 0), (0, 2)])
    cF = delta.cone_of_face(F)
    for c in delta.cones:
        h = local_h(delta, c)
        assert h == (IntPoly([1]) if c.key == cF.key else IntPoly())


def test_whitney_local_h(whitney):
    _, np = whitney
    delta = _fan(np)
    pts = [(2, 0, 0), (0, 2, 1)]
    assert local_h(delta, delta.cone_of_face(np.face_by_points(pts))) == IntPoly([1, 1])
    assert local_h(delta, delta.cone_of_face(np.face_by_points(pts, [2]))) == IntPoly([1])
    assert local_h(delta, delta.cone_of_face(np.face_by_points(pts, [1]))) == IntPoly([1])
    # expanding the defining sum over the supercones of the ray through (2, 0, 0) gives t
    v = delta.cone_of_face(np.face_by_points([(2, 0, 0)]))
    assert local_h(delta, v) == IntPoly([0, 1])
    others = [c for c in delta.cones if c.dim <= 1 and c.key != v.key]
    assert all(local_h(delta, c).is_zero() for c in others)


def test_value_at_one_agrees_on_fixtures():
    for name in ("cusp", "whitney", "five_vars"):
        _, np = fixture(name)
        delta = _fan(np)
        for c in delta.cones:
            assert local_h(delta, c)(1) == local_h_at_one(delta, c)


def test_non_simplicial_fan_needs_refinement():
    _, np = fixture("noncompact_facet")
    delta = _fan(np)
    assert not delta.is_simplicial
    with pytest.raises(PreconditionError):
        local_h(delta, delta.cones[0])
    refined = simplicial_fan(delta, refine=True)
    assert refined.is_simplicial
    assert all(min(local_h(refined, c).coeffs, default=0) >= 0 for c in refined.cones)


def test_triangulate_square_cone():
    rays = [(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)]
    cells = triangulate_cone(rays)
    assert len(cells) == 2
    assert all(len(c) == 3 for c in cells)
    other = triangulate_cone(rays, order=[3, 2, 1, 0])
    assert len(other) == 2


def test_intpoly_algebra():
    a = IntPoly([1, 1])
    assert a * a == IntPoly([1, 2, 1])
    assert a.reversed_to(1) == a
    assert IntPoly([0, 1]).reversed_to(2) == IntPoly([0, 1])
    assert str(IntPoly([1, 0, 3])) in {"1 + 3*t^2", "3*t^2 + 1"}
