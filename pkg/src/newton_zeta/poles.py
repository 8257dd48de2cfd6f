"""Candidate poles, face classification and the candidate-pole verdict."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import exact
from .boxes import CycSum
from .errors import PreconditionError, VerificationError
from .fan import DeltaFan
from .geometry import Face, NewtonPolyhedron
from .localh import IntPoly, local_h
from .monodromy import _fan, nonneg_rhs

UB1_VARIANTS = ("literal", "u-pyramid")

ONE = Fraction(1)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _support(gens) -> frozenset:
    return frozenset(k for g in gens for k, x in enumerate(g) if x)


def alpha_of(np: NewtonPolyhedron, G: Face) -> Optional[Fraction]:
    """-psi_G(1) when 1 lies in Span(G), else None."""
    if not G.in_gamma:
        return None
    gens = np.generators(G)
    if exact.express(gens, [1] * np.n) is None and exact.rank(gens + [tuple([1] * np.n)]) > exact.rank(gens):
        return None
    return -sum(np.psi(G))


def candidate_poles_and_contrib(np: NewtonPolyhedron) -> dict:
    """alpha -> Contrib(alpha), sorted by alpha; faces of every dimension."""
    out: dict[Fraction, list[Face]] = {}
    for G in np.gamma:
        a = alpha_of(np, G)
        if a is not None:
            out.setdefault(a, []).append(G)
    return dict(sorted(out.items()))


def candidate_poles(np: NewtonPolyhedron) -> list[Fraction]:
    return sorted(set(candidate_poles_and_contrib(np)) | {Fraction(-1)})


# ------------------------------------------------------------------ apices


def apices(np: NewtonPolyhedron, G: Face) -> list[tuple[int, tuple]]:
    """(vertex index, base directions) for every apex of G, checked against gens(C_G)."""
    gens = np.generators(G)
    out = []
    for k, i in enumerate(G.vertices):
        A = np.vertices[i]
        others = gens[:k] + gens[k + 1:]
        bases = tuple(l for l in range(np.n) if A[l] > 0 and all(w[l] == 0 for w in others))
        if bases:
            out.append((i, bases))
    return out


def is_b1(np: NewtonPolyhedron, G: Face) -> bool:
    return any(np.vertices[i][l] == 1 for i, bases in apices(np, G) for l in bases)


def is_ub1_literal(np: NewtonPolyhedron, G: Face) -> bool:
    """Some apex has exactly one base direction and pairs to 1 with it."""
    return any(len(bases) == 1 and np.vertices[i][bases[0]] == 1 for i, bases in apices(np, G))


# ------------------------------------------------------------------ pyramids in a link


def pyramid_apices(F: list, E: list, n: int) -> dict[int, frozenset]:
    """Positions A in F with F+E interior and F+E-A not interior, mapped to V_A."""
    full = frozenset(range(n))
    if _support(F + E) != full:
        return {}
    out = {}
    for k in range(len(F)):
        rest = _support(F[:k] + F[k + 1:] + E)
        if rest != full:
            out[k] = full - rest
    return out


def is_u_pyramid(F: list, E: list, n: int) -> bool:
    return any(len(v) == 1 for v in pyramid_apices(F, E, n).values())


def check_full_partition(F1: list, F2: list, A: list, E: list, V: list, n: int) -> bool:
    full = frozenset(range(n))
    cover = frozenset().union(*V) if V else frozenset()
    return _support(F1 + A + E) == full and _support(F2 + E) == full - cover


# ------------------------------------------------------------------ classification


@dataclass
class FaceClassification:
    face: int
    alpha: Optional[Fraction]
    apices: list
    is_b1: bool
    is_ub1: bool
    is_ub1_literal: bool
    variant: str
    lambdas: Optional[tuple] = None  # coordinates of 1 in gens(C_G)
    essential: Optional[tuple] = None  # (vertex indices, dirs) of E(G)
    is_u_pyramid: Optional[bool] = None
    full_partition: Optional[dict] = None
    local_h_essential: Optional[IntPoly] = None
    notes: list = field(default_factory=list)


def _lambdas(np: NewtonPolyhedron, G: Face) -> Optional[tuple]:
    gens = np.generators(G)
    if exact.rank(gens) != len(gens):
        return None
    lam = exact.express(gens, [1] * np.n)
    return tuple(lam) if lam is not None else None


def essential_face(np: NewtonPolyhedron, G: Face) -> Optional[tuple]:
    """Key (vertices, dirs) of the face whose generators carry non-integral coefficients of 1."""
    lam = _lambdas(np, G)
    if lam is None:
        return None
    k = len(G.vertices)
    V = tuple(i for i, x in zip(G.vertices, lam[:k]) if x.denominator != 1)
    D = tuple(j for j, x in zip(G.dirs, lam[k:]) if x.denominator != 1)
    return V, D


def bbox_one(np: NewtonPolyhedron, G: Face) -> Optional[tuple]:
    """bbox_{C_G}(1) as a lattice point."""
    lam = _lambdas(np, G)
    if lam is None:
        return None
    gens = np.generators(G)
    pt = [sum(exact.frac_part(l) * g[i] for l, g in zip(lam, gens)) for i in range(np.n)]
    assert all(x.denominator == 1 for x in pt)
    return tuple(int(x) for x in pt)


def _compact_upyramid(np: NewtonPolyhedron, G: Face, E_key: tuple) -> bool:
    Ev, Ed = E_key
    E = [np.vertices[i] for i in Ev] + [np.unit(j) for j in Ed]
    F = [np.vertices[i] for i in G.vertices if i not in Ev] + [np.unit(j) for j in G.dirs if j not in Ed]
    return is_u_pyramid(F, E, np.n)


def _projected_ub1(np: NewtonPolyhedron, G: Face) -> tuple[Optional[bool], str]:
    """U-pyramid test for a non-compact face after forgetting its unbounded coordinates."""
    I = set(G.dirs)
    J = [j for j in range(np.n) if j not in I]
    try:
        P = np.project(J)
    except PreconditionError:
        return None, "projection unavailable"
    pts = {tuple(np.vertices[i][j] for j in J) for i in G.vertices}
    idx = frozenset(k for k, v in enumerate(P.vertices) if v in pts)
    H = next((F for F in P.faces if F.compact and frozenset(F.vertices) == idx), None)
    if H is None:
        return None, "projected face not found"
    key = essential_face(P, H)
    if key is None:
        return None, "projected cone is not simplicial"
    return _compact_upyramid(P, H, key), ""


def classify_face(np: NewtonPolyhedron, G: Face, alpha: Optional[Fraction] = None,
                  variant: str = "literal", delta: Optional[DeltaFan] = None) -> FaceClassification:
    if variant not in UB1_VARIANTS:
        raise PreconditionError(f"unknown UB1 variant {variant!r}")
    if alpha is None:
        alpha = alpha_of(np, G)
    ap = apices(np, G)
    lit = is_ub1_literal(np, G)
    out = FaceClassification(G.index, alpha, ap, is_b1(np, G), lit, lit, variant)
    simplicial = exact.rank(np.generators(G)) == len(np.generators(G))
    if alpha is not None and simplicial:
        lam = _lambdas(np, G)
        out.lambdas = lam
        out.essential = essential_face(np, G)
        Ev, Ed = out.essential
        # [alpha] = [-psi(bbox(1))]
        k = len(G.vertices)
        psi_box = sum(exact.frac_part(x) for x in lam[:k])
        if exact.frac_part(alpha + psi_box) != 0:
            raise VerificationError("essential-face residue does not match the candidate pole")
        if delta is None:
            delta = _fan(np)
        Ekey = (frozenset(Ev), frozenset(Ed))
        if delta.is_simplicial and delta.has(Ekey):
            out.local_h_essential = local_h(delta, delta.cone(Ekey))
        if G.compact:
            out.is_u_pyramid = _compact_upyramid(np, G, out.essential)
            out.full_partition = full_partition(np, G, lam, out.essential)
    # u-pyramid reading of UB1
    if variant == "u-pyramid":
        if G.compact and out.is_u_pyramid is not None:
            out.is_ub1 = out.is_u_pyramid
        elif G.compact:
            out.is_ub1 = is_u_pyramid(np.generators(G), [], np.n)
            out.notes.append("no essential face; pyramid test with empty base face")
        elif not np.is_simplicial:
            # the projection reduction is only available for simplicial polyhedra
            out.notes.append("Newton polyhedron not simplicial; literal reading used")
        else:
            val, why = _projected_ub1(np, G)
            if val is None:
                out.notes.append(f"{why}; literal reading used")
            else:
                out.is_ub1 = val
    if alpha is not None and simplicial and delta is not None and delta.is_simplicial and out.is_ub1 != lit:
        raise VerificationError("UB1 readings disagree on a contributing face")
    return out


def full_partition(np: NewtonPolyhedron, G: Face, lam: tuple, E_key: tuple) -> dict:
    """Partition of gens(C_G) minus gens(C_E) into apices, C1 and C2, validated."""
    Ev, _ = E_key
    rest = [(i, l) for i, l in zip(G.vertices, lam) if i not in Ev]
    F = [np.vertices[i] for i, _ in rest]
    E = [np.vertices[i] for i in Ev]
    pyr = pyramid_apices(F, E, np.n)
    face_ap = {i for i, _ in apices(np, G)} - set(Ev)
    if {rest[k][0] for k in pyr} != face_ap:
        raise VerificationError("pyramid apices differ from face apices")
    A = [rest[k][0] for k in sorted(pyr)]
    C1 = [i for i, l in rest if i not in A and l.denominator == 1 and l > 0]
    C2 = [i for i, l in rest if l.denominator == 1 and l <= 0]
    if any(l != 1 for i, l in rest if i in A):
        raise VerificationError("apex coefficient differs from 1")
    ok = check_full_partition([np.vertices[i] for i in C1], [np.vertices[i] for i in C2],
                              [np.vertices[i] for i in A], E, list(pyr.values()), np.n)
    if not ok:
        raise VerificationError("proposed full partition fails its covering conditions")
    return {"apices": A, "C1": C1, "C2": C2, "V": [sorted(v) for _, v in sorted(pyr.items())]}


# ------------------------------------------------------------------ verdict


def is_alpha_simplicial(np: NewtonPolyhedron, contrib: list[Face]) -> bool:
    keys = [G.key for G in contrib]
    minimal = [G for G in contrib
               if not any(k != G.key and k[0] <= G.key[0] and k[1] <= G.key[1] for k in keys)]
    for M in minimal:
        gm = np.generators(M)
        rm = exact.rank(gm)
        for F in np.faces:
            if F.index == M.index or not np.is_subface(M, F):
                continue
            extra = [g for g in np.generators(F) if g not in gm]
            if exact.rank(gm + extra) != rm + len(extra):
                return False
    return True


@dataclass
class Verdict:
    P: list
    P_prime: list
    contrib: dict  # alpha -> list of face indices
    classifications: dict  # face index -> FaceClassification
    alpha_simplicial: dict
    certificates: dict  # alpha -> (kind, data)
    nearby: dict  # alpha -> coefficient of [alpha] in the nonnegative formula
    variant: str
    violations: list = field(default_factory=list)

    @property
    def retained(self) -> list:
        return [a for a in self.P if a not in self.P_prime]


def _subspace_certificate(np: NewtonPolyhedron, a: Fraction) -> Optional[tuple]:
    """Look for exp(2 pi i a) at general points of the coordinate subspaces in the hypersurface.

    Contributions from different subspaces can cancel in the alternating sum,
    so each subspace is tried on its own: first the nonnegative formula of the
    projected polyhedron, then the eigenvalue multiplicities themselves.
    """
    from .monodromy import etilde_at_subspace

    for I in np.coordinate_subspaces():
        if not I:
            continue
        J = [j for j in range(np.n) if j not in I]
        proj = np.project(J)
        label = [i + 1 for i in sorted(I)]
        if _fan(proj).is_simplicial:
            c = nonneg_rhs(proj).total.coefficient(a)
            if c > 0:
                return ("nearby-subspace", f"coefficient {c} along coordinates {label}")
        c = etilde_at_subspace(np, I).coefficient(a)
        if c:
            return ("subspace-eigenvalue", f"multiplicity {c} along coordinates {label}")
    return None


def verdict(np: NewtonPolyhedron, variant: str = "literal") -> Verdict:
    contrib = candidate_poles_and_contrib(np)
    delta = _fan(np)
    classes: dict[int, FaceClassification] = {}
    simp: dict[Fraction, bool] = {}
    P = sorted(set(contrib) | {Fraction(-1)})
    P_prime = []
    for a, faces in contrib.items():
        for G in faces:
            classes[G.index] = classify_face(np, G, a, variant, delta)
        simp[a] = is_alpha_simplicial(np, faces)
        neg_int = a.denominator == 1 and a < 0
        if not neg_int and simp[a] and all(classes[G.index].is_ub1 for G in faces):
            P_prime.append(a)
    certs: dict = {}
    nearby: dict = {}
    violations: list = []
    if delta.is_simplicial:
        rhs = nonneg_rhs(np).total
        for a in P:
            nearby[a] = rhs.coefficient(a)
        for a in P:
            if a in P_prime:
                continue
            if a.denominator == 1:
                certs[a] = ("H0", "eigenvalue 1 acts on H^0 of the Milnor fiber")
            elif nearby[a] > 0:
                certs[a] = ("nearby", nearby[a])
            else:
                found = _subspace_certificate(np, a)
                if found:
                    certs[a] = found
                else:
                    violations.append(f"no nearby eigenvalue found for retained candidate pole {a}")
        # vanishing local h at the essential face forces UB1
        for G_idx, c in classes.items():
            G = np.faces[G_idx]
            if G.compact and c.local_h_essential is not None and c.local_h_essential.is_zero() and not c.is_ub1_literal:
                violations.append(f"face {G_idx}: local h vanishes at the essential face but the face is not UB1")
    else:
        for a in P:
            if a not in P_prime and a.denominator == 1:
                certs[a] = ("H0", "eigenvalue 1 acts on H^0 of the Milnor fiber")
    return Verdict(P, sorted(P_prime), {a: [G.index for G in fs] for a, fs in contrib.items()},
                   classes, simp, certs, nearby, variant, violations)
