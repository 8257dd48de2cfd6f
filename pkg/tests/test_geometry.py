from fractions import Fraction

import pytest

from newton_zeta.errors import PreconditionError
from newton_zeta.geometry import NewtonPolyhedron, Polynomial, build_newton


def test_cusp_polyhedron(cusp):
    _, np = cusp
    assert sorted(np.vertices) == [(0, 2), (3, 0)]
    assert np.is_convenient and np.is_simplicial
    F = np.face_by_points([(3, 0), (0, 2)])
    m = np.metrics(F)
    assert m.psi == (Fraction(1, 3), Fraction(1, 2))
    assert m.rho == 6 and m.vol == 1
    assert np.coordinate_subspaces() == [frozenset()]


def test_whitney_faces(whitney):
    _, np = whitney
    assert not np.is_convenient
    F = np.face_by_points([(2, 0, 0), (0, 2, 1)])
    F1 = np.face_by_points([(2, 0, 0), (0, 2, 1)], [2])
    F2 = np.face_by_points([(2, 0, 0), (0, 2, 1)], [1])
    assert F.compact and not F1.compact and not F2.compact
    assert np.is_subface(F, F1) and np.is_subface(F, F2)
    assert np.metrics(F1).psi == (Fraction(1, 2), Fraction(1, 2), 0)
    assert np.metrics(F2).psi == (Fraction(1, 2), 0, Fraction(1))
    assert sorted(sorted(I) for I in np.coordinate_subspaces()) == [[], [1], [2]]


def test_psi_needs_origin_off_the_span(whitney):
    # the face x = 2 with both unbounded directions is interior; psi still exists
    _, np = whitney
    for G in np.gamma:
        assert np.metrics(G).rho >= 1


def test_normalized_volume_of_a_triangle():
    np = NewtonPolyhedron([(2, 0, 0), (0, 2, 0), (0, 0, 2)])
    F = np.face_by_points([(2, 0, 0), (0, 2, 0), (0, 0, 2)])
    assert np.normalized_volume(F) == 4
    assert np.metrics(F).rho == 2


def test_projection(whitney):
    _, np = whitney
    P = np.project([0, 2])  # forget y: the y-axis lies in the hypersurface
    assert sorted(P.vertices) == [(0, 1), (2, 0)]
    with pytest.raises(PreconditionError):
        np.project([1, 2])  # the x-axis does not


def test_polynomial_validation():
    with pytest.raises(PreconditionError):
        Polynomial(2, {(0, 0): 1, (1, 0): 1})
    with pytest.raises(PreconditionError):
        Polynomial(2, {(1, 0): 1, (1, 0, 0): 1})
    with pytest.raises(PreconditionError):
        Polynomial(2, {(1, 0): 0})
    f = Polynomial(2, {(0, 2): 1, (3, 0): -1})
    assert f.evaluate((2, 3)) == 1
    assert build_newton(f).n == 2


def test_dual_rays_span_the_normal_cone(cusp):
    _, np = cusp
    v = np.face_by_points([(3, 0)])
    rays = sorted(np.dual_rays(v))
    assert rays == [(0, 1), (2, 3)]
