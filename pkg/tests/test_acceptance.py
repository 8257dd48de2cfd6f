"""Acceptance criteria on the shipped fixtures, one printed PASS/FAIL line per criterion.

Every comparison is exact. Run with `pytest tests/test_acceptance.py -s` to see the lines.
"""

import time
from fractions import Fraction

import pytest

from conftest import fixture
from newton_zeta.boxes import CycSum
from newton_zeta.localh import IntPoly, local_h
from newton_zeta.monodromy import (_fan, alternating_sum_lhs, etilde_at_subspace, nonneg_rhs,
                                   varchenko_etilde, zeta_factor)
from newton_zeta.oracle import padic_poincare_oracle
from newton_zeta.poles import alpha_of, candidate_poles_and_contrib, is_b1, verdict
from newton_zeta.polys import RatFn, UPoly
from newton_zeta.zeta import LaurentLT, RationalLT, formal_zeta, z_padic, z_top

import test_properties as props

LIMIT = 60.0


def cyc(*pairs, const=0):
    out = CycSum.single(0, const) if const else CycSum()
    for q, m in pairs:
        out = out + CycSum.single(Fraction(q), m)
    return out


def s_poly(coeffs):
    """Polynomial in s from ascending coefficients."""
    return UPoly([Fraction(c) for c in coeffs])


def from_s_form(p, num_terms, den_factors, scale=1):
    """scale * sum(c p^(a s + b)) / prod(sum(c p^(a s + b))) rewritten in t = p^-s.

    Each p^(a s + b) becomes p^b t^-a; numerator and denominator are then
    multiplied by the power of t that clears the negative exponents.
    """
    def poly(terms):
        lo = min(-a for _, a, _ in terms)
        c = {}
        for coef, a, b in terms:
            c[-a] = c.get(-a, 0) + Fraction(coef) * Fraction(p) ** b
        return lo, c

    def to_upoly(shift, c):
        deg = max(k - shift for k in c)
        out = [Fraction(0)] * (deg + 1)
        for k, v in c.items():
            out[k - shift] += v
        return UPoly(out)

    n_lo, n_c = poly(num_terms)
    num = to_upoly(n_lo, n_c) * scale
    den, e = UPoly([1]), n_lo
    for terms in den_factors:
        d_lo, d_c = poly(terms)
        den = den * to_upoly(d_lo, d_c)
        e -= d_lo
    # the factored-out powers of t leave t^e overall
    if e >= 0:
        num = num * UPoly.monomial(e)
    else:
        den = den * UPoly.monomial(-e)
    return RatFn(num, den)


def face_with(np, vertices, dirs=()):
    return np.face_by_points(vertices, dirs)


def cone_of(np, F):
    return _fan(np).cone_of_face(F)


# ------------------------------------------------------------------ criteria


def crit_cusp():
    f, np = fixture("cusp")
    out = []
    out.append(("vertices", sorted(np.vertices) == [(0, 2), (3, 0)]))
    compact = [F for F in np.compact_faces if F.dim == 1]
    out.append(("one compact facet", len(compact) == 1
                and {np.vertices[i] for i in compact[0].vertices} == {(3, 0), (0, 2)}))
    F = compact[0]
    out.append(("alpha_F = -5/6", alpha_of(np, F) == Fraction(-5, 6)))
    delta = _fan(np)
    cF = cone_of(np, F)
    lh = {c.key: local_h(delta, c) for c in delta.cones}
    out.append(("local h 1 at C_F, 0 elsewhere",
                lh[cF.key] == IntPoly([1]) and all(h.is_zero() for k, h in lh.items() if k != cF.key)))
    e0 = varchenko_etilde(np)
    out.append((f"E~(origin) = [1/6] + [5/6] (computed {e0})", e0 == cyc((Fraction(1, 6), 1), (Fraction(5, 6), 1))))
    zeta0 = zeta_factor(e0).to_ratfn()
    out.append(("zeta_0 = (1 - t)/(1 - t + t^2)", zeta0 == RatFn(UPoly([1, -1]), UPoly([1, -1, 1]))))
    out.append(("formal zeta as printed (T^4 in the last term)", _cusp_formal_matches(np)))
    out.append(("Z_top = (4s + 5)/((s + 1)(6s + 5))",
                z_top(np) == RatFn(s_poly([5, 4]), s_poly([1, 1]) * s_poly([5, 6]))))
    for p in (5, 7):
        printed = from_s_form(p, [(1, 5, 5), (-1, 2, 2), (1, 1, 2), (-1, 0, 0)],
                              [[(1, 1, 1), (-1, 0, 0)], [(1, 6, 5), (-1, 0, 0)]], scale=p - 1)
        out.append((f"p-adic zeta at p = {p}", z_padic(np, f, p) == printed))
    z5 = z_padic(np, f, 5)
    out.append(("solution counts mod 5^m match to depth 4", padic_poincare_oracle(f, 5, 4).matches(z5)))
    return out


def _cusp_formal_matches(np):
    z = formal_zeta(np)
    by_pts = {frozenset(np.vertices[i] for i in np.face_from_key(k).vertices): v for k, v in z.terms.items()}
    L1 = LaurentLT({(1, 0): 1, (0, 0): -1})  # L - 1
    den = {(5, 6): 1}

    def coef(terms):
        return RationalLT(L1 * LaurentLT(terms), den)

    expect = {
        frozenset({(3, 0), (0, 2)}): coef({(-5, 6): 1}),
        frozenset({(3, 0)}): coef({(-2, 3): 1, (-5, 6): 1}),
        frozenset({(0, 2)}): coef({(-1, 2): 1, (-3, 4): 1, (-5, 6): 1}),
    }
    return set(by_pts) == set(expect) and all(by_pts[k] == v for k, v in expect.items()) and z.const.is_zero()


def crit_whitney():
    f, np = fixture("whitney")
    out = []
    F = face_with(np, [(2, 0, 0), (0, 2, 1)])
    F1 = face_with(np, [(2, 0, 0), (0, 2, 1)], dirs=[2])
    F2 = face_with(np, [(2, 0, 0), (0, 2, 1)], dirs=[1])
    delta = _fan(np)
    out.append(("local h: 1 + t at C_F, 1 at C_F1 and C_F2",
                local_h(delta, cone_of(np, F)) == IntPoly([1, 1])
                and local_h(delta, cone_of(np, F1)) == IntPoly([1])
                and local_h(delta, cone_of(np, F2)) == IntPoly([1])))
    e = {tuple(sorted(I)): etilde_at_subspace(np, I) for I in np.coordinate_subspaces()}
    out.append(("E~ = [1/2], 0, -1 at the origin, x_2 and x_3",
                set(e) == {(), (1,), (2,)} and e[()] == cyc((Fraction(1, 2), 1))
                and e[(1,)].is_zero() and e[(2,)] == cyc(const=-1)))
    lhs, rhs = alternating_sum_lhs(np), nonneg_rhs(np).total
    target = cyc((Fraction(1, 2), 1), const=1)
    out.append(("alternating sum = 1 + [1/2] = nonnegative sum", lhs == target and rhs == target))
    v = verdict(np)
    c2 = v.classifications[F2.index]
    witnesses = [np.vertices[i] for i, bases in c2.apices if len(bases) == 1 and np.vertices[i][bases[0]] == 1]
    out.append(("F2 is UB1 with apex (0,2,1)", c2.is_ub1 and witnesses == [(0, 2, 1)]))
    out.append(("P minus P' = {-1}", v.retained == [Fraction(-1)]))
    out.append(("Z_top = (s + 2)/(2(s + 1)^2)", z_top(np) == RatFn(s_poly([2, 1]), s_poly([2, 4, 2]))))
    for p in (3, 5):
        printed = from_s_form(p, [(1, 1, 2), (-1, 0, 0)],
                              [[(1, 1, 1), (-1, 0, 0)], [(1, 1, 1), (-1, 0, 0)], [(1, 1, 1), (1, 0, 0)]],
                              scale=p - 1)
        out.append((f"p-adic zeta at p = {p}", z_padic(np, f, p) == printed))
    return out


def crit_six_vars():
    f, np = fixture("six_vars")
    out = []
    facets = [F for F in np.compact_faces if F.dim == np.n - 1]
    out.append((f"10 vertices, 16 compact facets ({len(np.vertices)}, {len(facets)})",
                len(np.vertices) == 10 and len(facets) == 16))
    a = Fraction(-69, 40)
    contrib = [G for G in candidate_poles_and_contrib(np).get(a, []) if G.dim == np.n - 1]
    out.append(("five facets contribute -69/40, all B1",
                len(contrib) == 5 and all(G.compact and is_b1(np, G) for G in contrib)))
    num = s_poly([-115234075, -93769198, -2948088, 6142656]) * -1
    den = s_poly([17]) * s_poly([1, 1]) * s_poly([157, 104]) ** 2 * s_poly([275, 168])
    out.append(("Z_top as printed", z_top(np) == RatFn(num, den)))
    v = verdict(np)
    out.append(("verdict removes -69/40", a in v.P and a in v.P_prime and a not in v.retained))
    e0 = varchenko_etilde(np)
    out.append((f"total reduced multiplicity -1912 (computed {e0.total()}, {len(e0.terms)} distinct eigenvalues)",
                e0.total() == -1912))
    out.append(("coefficient of [11/40] is 0", e0.coefficient(Fraction(11, 40)) == 0))
    return out


def crit_five_vars():
    f, np = fixture("five_vars")
    out = []
    num = s_poly([96, 45, 7])
    den = s_poly([24]) * s_poly([1, 1]) * s_poly([2, 1]) ** 2
    out.append(("Z_top = (7s^2 + 45s + 96)/(24(s + 1)(s + 2)^2)", z_top(np) == RatFn(num, den)))
    facets = [F for F in np.compact_faces if F.dim == np.n - 1]
    out.append(("every compact facet contributes -2", bool(facets) and all(alpha_of(np, F) == -2 for F in facets)))
    v = verdict(np)
    out.append(("-2 retained and a pole of Z_top",
                Fraction(-2) in v.retained and Fraction(-2) in z_top(np).poles()))
    return out


def crit_noncompact_facet():
    f, np = fixture("noncompact_facet")
    out = []
    out.append(("Z_top = 6/((s + 1)(5s + 6))", z_top(np) == RatFn(s_poly([6]), s_poly([1, 1]) * s_poly([6, 5]))))
    G = face_with(np, [(1, 0, 1, 0), (0, 1, 1, 0), (0, 1, 0, 5)], dirs=[0, 1])
    out.append(("facet with unbounded directions e1, e2 is not B1", not is_b1(np, G)))
    rhs = nonneg_rhs(np, refine=True).total
    out.append((f"nonnegative sum has [4/5] with positive coefficient ({rhs.coefficient(Fraction(4, 5))})",
                rhs.coefficient(Fraction(4, 5)) > 0))
    return out


PROPERTIES = [
    ("alternating sum equals nonnegative sum", props.test_eigenvalue_sums_agree),
    ("local h nonnegative and palindromic", props.test_local_h_nonnegative_and_palindromic),
    ("vanishing local h at the essential face forces UB1", props.test_vanishing_local_h_forces_ub1),
    ("box size equals lattice index", props.test_box_size_is_lattice_index),
    ("box enumeration equals scan", props.test_box_matches_scan),
    ("p-adic zeta equals 1 at t = 1", props.test_padic_zeta_has_unit_mass),
    ("topological poles inside P and outside P'", props.test_topological_poles_inside_verdict),
    ("cone generating function independent of triangulation", props.test_cone_genfun_ignores_triangulation),
]


def crit_properties():
    out = []
    for name, fn in PROPERTIES:
        t = time.perf_counter()
        try:
            fn()
            ok = True
        except AssertionError as exc:
            ok = False
            name = f"{name}: {str(exc).splitlines()[0] if str(exc) else 'counterexample found'}"
        out.append((f"{name} ({time.perf_counter() - t:.1f}s)", ok))
    return out


CRITERIA = [
    (1, "cusp", crit_cusp),
    (2, "Whitney umbrella", crit_whitney),
    (3, "six variables, candidate -69/40", crit_six_vars),
    (4, "five variables, candidate -2", crit_five_vars),
    (5, "four variables, non-compact facet", crit_noncompact_facet),
    (6, "randomized invariants (n <= 4, 100 cases each)", crit_properties),
]


@pytest.mark.parametrize("num,label,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, label, fn):
    t = time.perf_counter()
    parts = fn()
    elapsed = time.perf_counter() - t
    ok = all(good for _, good in parts) and elapsed < LIMIT
    print(f"\n{'PASS' if ok else 'FAIL'} criterion {num} ({label}) in {elapsed:.1f}s")
    for name, good in parts:
        print(f"    {'ok ' if good else 'BAD'} {name}")
    failed = [name for name, good in parts if not good]
    assert not failed, f"criterion {num}: " + "; ".join(failed)
    assert elapsed < LIMIT, f"criterion {num} took {elapsed:.1f}s"
