"""Command-line interface: input parsing, dispatch and JSON/text reports.

Exit status 0 on success, 2 on precondition faults (bad input, unsupported
case), 3 when a verification check disagrees.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from importlib import resources
from typing import Any, Optional

from .errors import PreconditionError, VerificationError
from .geometry import NewtonPolyhedron, Polynomial, build_newton, nondegeneracy_note

FIXTURES = ("cusp", "whitney", "six_vars", "five_vars", "noncompact_facet")
LETTERS = "xyzw"


class ParseError(PreconditionError):
    def __init__(self, msg: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line, self.column = line, col


# ------------------------------------------------------------------ input


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[a-z]\d*)|(?P<op>[-+*/^]))")


def parse_text(text: str) -> Polynomial:
    """Parse sums of monomials such as "y^2 - x^3" or "x1*x3 + 2/3*x2^4".

    Variables are x, y, z, w (in that order) or x1..xn; the two styles cannot be mixed.
    """
    toks = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m or m.end() == pos:
            pos += len(stripped[pos:]) - len(stripped[pos:].lstrip())
            raise ParseError(f"unexpected character {stripped[pos]!r}", text, pos)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("end", "", len(stripped)))

    terms: list[tuple[dict, Fraction]] = []
    names: dict[str, int] = {}
    i = 0

    def peek():
        return toks[i]

    def take(kind=None, val=None):
        nonlocal i
        k, v, p = toks[i]
        if (kind and k != kind) or (val and v != val):
            want = val or {"num": "an integer", "var": "a variable"}.get(kind, kind)
            raise ParseError(f"expected {want}, found {v or 'end of input'!r}", text, p)
        i += 1
        return v, p

    def integer() -> int:
        v, _ = take("num")
        return int(v)

    sign = Fraction(1)
    if peek()[1] in "+-" and peek()[0] == "op":
        sign = Fraction(-1) if take()[0] == "-" else Fraction(1)
    while True:
        coef, mono = sign, {}
        while True:
            k, v, p = peek()
            if k == "num":
                a = Fraction(integer())
                if peek()[1] == "/":
                    take()
                    b = integer()
                    if b == 0:
                        raise ParseError("division by zero", text, p)
                    a /= b
                coef *= a
            elif k == "var":
                take()
                names.setdefault(v, p)
                e = 1
                if peek()[1] == "^":
                    take()
                    e = integer()
                mono[v] = mono.get(v, 0) + e
            else:
                raise ParseError(f"expected a number or variable, found {v or 'end of input'!r}", text, p)
            if peek()[1] == "*":
                take()
                continue
            if peek()[0] in ("num", "var"):
                continue  # juxtaposition
            break
        terms.append((mono, coef))
        k, v, p = peek()
        if k == "end":
            break
        if v not in "+-" or k != "op":
            raise ParseError(f"expected + or -, found {v!r}", text, p)
        take()
        sign = Fraction(-1) if v == "-" else Fraction(1)

    if not names:
        raise ParseError("no variables", text, 0)
    indexed = {v for v in names if len(v) > 1}
    if indexed and len(indexed) != len(names):
        raise ParseError("mixed variable styles", text, min(names.values()))
    if indexed:
        bad = [v for v in names if v[0] != "x" or int(v[1:]) < 1]
        if bad:
            raise ParseError(f"unknown variable {bad[0]!r}", text, names[bad[0]])
        index = {v: int(v[1:]) - 1 for v in names}
    else:
        bad = [v for v in names if v not in LETTERS]
        if bad:
            raise ParseError(f"unknown variable {bad[0]!r}", text, names[bad[0]])
        index = {v: LETTERS.index(v) for v in names}
    n = max(index.values()) + 1
    out: dict[tuple, Fraction] = {}
    for mono, c in terms:
        e = [0] * n
        for v, k in mono.items():
            e[index[v]] += k
        out[tuple(e)] = out.get(tuple(e), Fraction(0)) + c
    return Polynomial(n, out)


def polynomial_from_json(obj: Any) -> Polynomial:
    try:
        n = int(obj["n"])
        terms = {}
        for t in obj["terms"]:
            e = tuple(int(x) for x in t["e"])
            terms[e] = terms.get(e, Fraction(0)) + Fraction(str(t["c"]))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise PreconditionError(f"malformed polynomial JSON: {exc}") from None
    return Polynomial(n, terms)


def polynomial_to_json(f: Polynomial) -> dict:
    return {"n": f.n, "terms": [{"e": list(e), "c": q(c)} for e, c in f.terms.items()]}


def load_fixture(name: str) -> tuple[Polynomial, dict]:
    if name not in FIXTURES:
        raise PreconditionError(f"unknown fixture {name!r}")
    raw = resources.files("newton_zeta").joinpath("data", f"{name}.json").read_text()
    obj = json.loads(raw)
    return polynomial_from_json(obj), obj


def load_input(source: Optional[str], expr: Optional[str] = None) -> tuple[Polynomial, dict]:
    """Polynomial plus metadata from a fixture name, a JSON or text file, or an expression."""
    if expr is not None:
        return parse_text(expr), {"source": "expr", "text": expr}
    if source is None:
        raise PreconditionError("no input given")
    if source in FIXTURES and not os.path.exists(source):
        f, obj = load_fixture(source)
        return f, {"source": f"fixture:{source}", "notes": obj.get("notes", [])}
    if not os.path.exists(source):
        raise PreconditionError(f"no such file or fixture: {source}")
    with open(source) as fh:
        text = fh.read()
    if source.endswith(".json") or text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise PreconditionError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        return polynomial_from_json(obj), {"source": source, "notes": obj.get("notes", [])}
    return parse_text(text), {"source": source}


# ------------------------------------------------------------------ serialization


def q(x) -> str:
    return str(Fraction(x))


def _face(np: NewtonPolyhedron, idx: int) -> dict:
    F = np.faces[idx]
    d = np.describe_face(F)
    d["dim"] = F.dim
    return d


def _cone(c) -> dict:
    return {"gens": [list(g) for g in c.gens], "vertices": list(c.vertices), "axes": [i + 1 for i in c.dirs]}


def polyhedron_summary(np: NewtonPolyhedron) -> dict:
    from .monodromy import _fan

    delta = _fan(np)
    return {
        "n": np.n,
        "vertices": [list(v) for v in np.vertices],
        "facets": [{"normal": list(f.normal), "offset": f.offset,
                    "vertices": sorted(f.vertices)} for f in np.facets],
        "gamma": [np.describe_face(F) for F in np.gamma],
        "compact_faces": len(np.compact_faces),
        "convenient": np.is_convenient,
        "newton_simplicial": np.is_simplicial,
        "fan_simplicial": delta.is_simplicial,
        "fan_cones": len(delta.cones),
    }


def _cyc(e) -> dict:
    return {"terms": e.to_json(), "text": str(e), "total": e.total()}


def classification_json(np: NewtonPolyhedron, c) -> dict:
    out = {
        "face": _face(np, c.face),
        "alpha": q(c.alpha) if c.alpha is not None else None,
        "apices": [{"vertex": list(np.vertices[i]), "base_directions": [l + 1 for l in bases]}
                   for i, bases in c.apices],
        "B1": c.is_b1,
        "UB1": c.is_ub1,
        "UB1_literal": c.is_ub1_literal,
        "variant": c.variant,
        "notes": list(c.notes),
    }
    if c.lambdas is not None:
        out["lambdas"] = [q(x) for x in c.lambdas]
    if c.essential is not None:
        Ev, Ed = c.essential
        out["essential_face"] = {"vertices": [list(np.vertices[i]) for i in Ev], "directions": [i + 1 for i in Ed]}
    if c.local_h_essential is not None:
        out["local_h_essential"] = str(c.local_h_essential)
    if c.is_u_pyramid is not None:
        out["u_pyramid"] = c.is_u_pyramid
    if c.full_partition is not None:
        fp = c.full_partition
        out["full_partition"] = {
            "apices": [list(np.vertices[i]) for i in fp["apices"]],
            "C1": [list(np.vertices[i]) for i in fp["C1"]],
            "C2": [list(np.vertices[i]) for i in fp["C2"]],
            "V": [[list(x) for x in v] if v and isinstance(v[0], tuple) else list(v) for v in fp["V"]],
        }
    return out


# ------------------------------------------------------------------ commands


def cmd_analyze(f, np, args, rep):
    rep["polyhedron"] = polyhedron_summary(np)
    return rep["polyhedron"]["vertices"]


def cmd_local_h(f, np, args, rep):
    from .fan import simplicial_fan
    from .localh import local_h
    from .monodromy import _fan

    delta = simplicial_fan(_fan(np), args.refine)
    rows = []
    for c in delta.cones:
        h = local_h(delta, c)
        if args.all or not h.is_zero():
            rows.append({"cone": _cone(c), "local_h": str(h), "coefficients": list(h.coeffs)})
    rep["local_h"] = rows
    return "\n".join(f"{r['cone']['gens']}: {r['local_h']}" for r in rows)


def cmd_monodromy(f, np, args, rep):
    from .monodromy import alternating_sum_lhs, etilde_at_subspace, nonneg_rhs, varchenko_etilde, zeta_factor

    e0 = varchenko_etilde(np, args.refine)
    subs = []
    for I in np.coordinate_subspaces():
        e = etilde_at_subspace(np, I, args.refine)
        subs.append({"coordinates": sorted(i + 1 for i in I), "etilde": _cyc(e)})
    lhs = alternating_sum_lhs(np, args.refine)
    rhs = nonneg_rhs(np, args.refine)
    out = {"etilde_origin": _cyc(e0), "subspaces": subs, "alternating_sum": _cyc(lhs),
           "nonnegative_sum": _cyc(rhs.total), "sums_agree": lhs == rhs.total}
    try:
        z = zeta_factor(e0)
        out["zeta_origin"] = {"factored": str(z), "exponents": z.to_json(), "rational": z.to_ratfn().factored_str("t")}
    except PreconditionError as exc:
        out["zeta_origin"] = None
        rep["warnings"].append(str(exc))
    rep["monodromy"] = out
    lines = [f"E~(origin) = {e0}", f"zeta(origin) = {out['zeta_origin']['factored'] if out['zeta_origin'] else 'n/a'}",
             f"alternating sum = {lhs}", f"nonnegative sum = {rhs.total}", f"sums agree: {out['sums_agree']}"]
    return "\n".join(lines)


def cmd_poles(f, np, args, rep):
    from .poles import verdict

    v = verdict(np, args.ub1_variant)
    rep["warnings"].append(f"UB1 variant: {v.variant}")
    out = {
        "P": [q(a) for a in v.P],
        "P_prime": [q(a) for a in v.P_prime],
        "retained": [q(a) for a in v.retained],
        "contributing_faces": {q(a): [_face(np, i) for i in idx] for a, idx in sorted(v.contrib.items())},
        "alpha_simplicial": {q(a): s for a, s in sorted(v.alpha_simplicial.items())},
        "classifications": [classification_json(np, c) for _, c in sorted(v.classifications.items())],
        "certificates": {q(a): {"kind": k, "data": d if isinstance(d, str) else int(d)}
                         for a, (k, d) in sorted(v.certificates.items())},
        "nearby_coefficients": {q(a): c for a, c in sorted(v.nearby.items())},
        "violations": list(v.violations),
    }
    rep["poles"] = out
    if v.violations:
        raise VerificationError("; ".join(v.violations))
    lines = [f"P = {{{', '.join(out['P'])}}}", f"P' = {{{', '.join(out['P_prime'])}}}",
             f"P \\ P' = {{{', '.join(out['retained'])}}}"]
    for a, (k, d) in sorted(v.certificates.items()):
        lines.append(f"  {q(a)}: {k} ({d})")
    return "\n".join(lines)


def cmd_zeta_top(f, np, args, rep):
    from .zeta import z_top

    z = z_top(np)
    s = z.factored_str("s")
    rep["zeta_top"] = {"factored": s, "numerator": [q(c) for c in z.num.c], "denominator": [q(c) for c in z.den.c],
                       "poles": {q(a): m for a, m in sorted(z.poles().items())}}
    return s


def cmd_zeta_padic(f, np, args, rep):
    from .ffcount import good_reduction_check
    from .zeta import z_padic

    if args.p is None:
        raise PreconditionError("--p is required")
    check = good_reduction_check(f, args.p, k_max=args.k_max, np=np)
    rep["good_reduction"] = check.to_json()
    if not check.passed:
        raise PreconditionError(f"no good reduction at p = {args.p}: " + "; ".join(check.failures))
    z = z_padic(np, f, args.p, check=False)
    s = z.factored_str("t")
    rep["zeta_padic"] = {"p": args.p, "variable": "t = p^(-s)", "factored": s,
                         "numerator": [q(c) for c in z.num.c], "denominator": [q(c) for c in z.den.c],
                         "value_at_t_1": q(z(1))}
    return s


def cmd_zeta_formal(f, np, args, rep):
    from .zeta import formal_zeta, relations

    z = formal_zeta(np)
    rel = relations(np)
    rep["zeta_formal"] = {
        "text": z.to_str(),
        "terms": [{"face": np.describe_face(np.face_from_key(k)), "coefficient": str(v)} for k, v in z.terms.items()],
        "relation_classes": [[np.describe_face(np.face_from_key(k)) for k in cls] for cls in rel.classes],
        "pinned": [np.describe_face(np.face_from_key(k)) for _, k in sorted(rel.pinned.items())],
    }
    return z.to_str()


def cmd_verify(f, np, args, rep):
    from .verify import run_checks

    checks = run_checks(f, np, p=args.p, depth=args.depth, variant=args.ub1_variant, refine=args.refine)
    rep["checks"] = checks
    failed = [c["name"] for c in checks if c["status"] == "fail"]
    text = "\n".join(f"{c['status'].upper():5} {c['name']}" + (f"  ({c['detail']})" if c.get("detail") else "")
                     for c in checks)
    if failed:
        rep["failed"] = failed
        raise VerificationError(f"failed checks: {', '.join(failed)}")
    return text


COMMANDS = {
    "analyze": cmd_analyze,
    "local-h": cmd_local_h,
    "monodromy": cmd_monodromy,
    "poles": cmd_poles,
    "zeta-top": cmd_zeta_top,
    "zeta-padic": cmd_zeta_padic,
    "zeta-formal": cmd_zeta_formal,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="newton-zeta", description="Exact invariants of a polynomial's Newton polyhedron.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("input", nargs="?", help="JSON or text file, or a fixture name: " + ", ".join(FIXTURES))
        sp.add_argument("-e", "--expr", help="polynomial given inline, e.g. 'y^2 - x^3'")
        sp.add_argument("--format", choices=("json", "text"), default="text")
        sp.add_argument("--ub1-variant", choices=("literal", "u-pyramid"), default="literal")
        sp.add_argument("--refine", action="store_true", help="refine a non-simplicial fan without new rays")
        if name in ("zeta-padic", "verify"):
            sp.add_argument("--p", type=int, default=None)
            sp.add_argument("--k-max", type=int, default=2, help="extension degree for the reduction search")
        if name == "verify":
            sp.add_argument("--depth", type=int, default=3)
        if name == "local-h":
            sp.add_argument("--all", action="store_true", help="include cones with zero local h")
    return ap


def execute(args: argparse.Namespace) -> tuple[int, dict, str]:
    rep: dict = {"command": args.command, "warnings": []}
    try:
        f, meta = load_input(args.input, args.expr)
        rep["input"] = {"source": meta["source"], **polynomial_to_json(f)}
        rep["warnings"].extend(meta.get("notes", []))
        np = build_newton(f)
        note = nondegeneracy_note(f, np)
        if note:
            rep["warnings"].append(note)
        if args.refine:
            rep["warnings"].append("non-simplicial fans are replaced by a refinement on the same rays")
        text = COMMANDS[args.command](f, np, args, rep)
        rep["status"] = "ok"
        return 0, rep, str(text)
    except VerificationError as exc:
        rep["status"] = "verification-failed"
        rep["error"] = str(exc)
        return 3, rep, f"verification failed: {exc}"
    except PreconditionError as exc:
        rep["status"] = "precondition-failed"
        rep["error"] = str(exc)
        return 2, rep, f"error: {exc}"


def run(argv: Optional[list] = None) -> tuple[int, dict, str, str]:
    """Exit status, report, text rendering and requested format."""
    args = build_parser().parse_args(argv)
    code, rep, text = execute(args)
    return code, rep, text, args.format


def main(argv: Optional[list] = None) -> int:
    code, rep, text, fmt = run(argv)
    if fmt == "json":
        sys.stdout.write(json.dumps(rep, indent=2, sort_keys=True) + "\n")
        return code
    if code == 0:
        for w in rep.get("warnings", []):
            sys.stderr.write(f"warning: {w}\n")
        if rep.get("checks") is None or text:
            sys.stdout.write(text + "\n")
    else:
        if rep.get("checks"):
            sys.stdout.write("\n".join(f"{c['status'].upper():5} {c['name']}" for c in rep["checks"]) + "\n")
        sys.stderr.write(text + "\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
