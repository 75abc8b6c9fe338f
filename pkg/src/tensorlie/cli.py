"""Command-line front end: ``tensorlie <command> ...``.

Exit codes: 0 success, 1 input error, 2 identity check (or report row) failed.
Algebra and module arguments are file paths, inline JSON, or catalog
references of the form ``catalog:name`` / ``catalog:name,key=value,...``.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path

from tensorlie import constructors as C
from tensorlie import repcoh as R
from tensorlie import solvers as S
from tensorlie.algebra_core import Algebra, Flavor, Identity, check_identity, derived_subalgebra
from tensorlie.errors import (
    BadParams,
    DegreeCapExceeded,
    DimCapExceeded,
    FlavorCertificationError,
    FlavorMismatch,
    ParseError,
    TensorLieError,
)
from tensorlie.exactfield import QQ, GF, Field, parse_field

SUITES = ("poisson_classical", "homlie_current", "centroid_current", "lemma_hom", "novikov_jacobi",
          "kac_moody_analog")


class InputError(Exception):
    pass


# ---------------------------------------------------------------- input parsing

def _load_json(arg: str):
    s = arg.strip()
    if s.startswith("{") or s.startswith("["):
        try:
            return json.loads(s)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad inline JSON: {exc}") from exc
    p = Path(arg)
    if not p.exists():
        raise InputError(f"no such file: {arg}")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{arg}: bad JSON: {exc}") from exc


def _coerce(v: str):
    try:
        return int(v)
    except ValueError:
        return v


def _catalog_ref(ref: str, field: Field | None) -> Algebra:
    name, *kv = ref.split(",")
    params = {}
    for item in kv:
        if "=" not in item:
            raise ParseError(f"bad catalog parameter {item!r}")
        k, v = item.split("=", 1)
        params[k.strip()] = parse_field(v) if k.strip() == "field" else _coerce(v.strip())
    if field is not None and "field" not in params and name not in ("kac_moody_analog", "affinization_vi"):
        params["field"] = field
    return C.catalog(name.strip(), **params)


def load_algebra(arg: str, field: Field | None = None, certify: bool = True) -> Algebra:
    if arg.startswith("catalog:"):
        return _catalog_ref(arg[len("catalog:"):], field)
    return Algebra.from_json(_load_json(arg), field=field, certify=certify)


def load_module(arg: str, field: Field | None = None):
    d = _load_json(arg)
    if isinstance(d.get("algebra"), str) and d["algebra"].startswith("catalog:"):
        d = dict(d, algebra=load_algebra(d["algebra"], field).to_json())
    return R.module_from_json(d, field)


# ---------------------------------------------------------------- output

def _emit(obj, out: str | None):
    text = obj if isinstance(obj, str) else json.dumps(obj, indent=2, sort_keys=False)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def format_table(rows: list[dict]) -> str:
    cols = ["instance", "expected", "computed", "pass"]
    cells = [[str(r["instance"]), str(r["expected"]), str(r["computed"]), "PASS" if r["pass"] else "FAIL"]
             for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) if cells else len(c) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for row in cells:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)))
    return "\n".join(lines)


def _row(instance, expected, computed, passed=None, **extra) -> dict:
    d = {"instance": instance, "expected": expected, "computed": computed,
         "pass": (expected == computed) if passed is None else bool(passed)}
    d.update(extra)
    return d


# ---------------------------------------------------------------- report suites

def suite_poisson_classical() -> list[dict]:
    rows = []
    for n in (2, 3):
        r = S.poisson_space(C.sl_n(n, QQ))
        rows.append(_row(f"P(sl_{n}) over Q", n - 2, r.quotient_dim, poisson_dim=r.dim))
    for p in (101, 103):
        F = GF(p)
        L = C.current_algebra(C.sl_n(3, F), C.dual_numbers(F))
        r = S.poisson_space(L)
        rows.append(_row(f"P(sl_3 (x) K[e]/(e^2)) over F_{p}", 2, r.quotient_dim, poisson_dim=r.dim))
    return rows


def homlie_formula(L: Algebra, A: Algebra) -> dict:
    """Both sides of the Hom-Lie dimension formula, from separate solver runs."""
    lhs = S.homlie_space(C.current_algebra(L, A)).dim
    h = S.homlie_space(L).dim
    t = annihilated_by_derived(L).dim
    m = A.dim
    return {"lhs": lhs, "homlie_L": h, "T_L": t, "formula": h * m + t * m * m}


def annihilated_by_derived(L: Algebra):
    """``{phi in End(L) : [[L, L], phi(L)] = 0}``."""
    from tensorlie.linalg import SubspaceBasis

    n = L.dim
    F = L.field
    D = derived_subalgebra(L).sparse_vectors()
    ker_ad = []  # vectors w with [u, w] = 0 for all u in [L, L]
    rows = []
    for u in D:
        for k in range(n):
            row = {}
            for m in range(n):
                c = L.mul(u, {m: F.one}).get(k)
                if c:
                    row[m] = c
            if row:
                rows.append(row)
    C0 = SubspaceBasis.span(F, n, rows).annihilator() if rows else SubspaceBasis.full(F, n)
    ker_ad = C0.sparse_vectors()
    # phi(e_i) may be any element of the centralizer of [L, L]
    gens = []
    for i in range(n):
        for w in ker_ad:
            gens.append({i * n + k: c for k, c in w.items()})
    return SubspaceBasis.span(F, n * n, gens)


def suite_homlie_current() -> list[dict]:
    rows = []
    for F in (QQ, GF(101)):
        for Lname, L in (("sl_2", C.sl_n(2, F)), ("aff2", C.nonabelian2(F))):
            for Aname, A in (("K[e]/(e^2)", C.dual_numbers(F)), ("K[t]/(t^3)", C.truncated_poly(3, F))):
                f = homlie_formula(L, A)
                rows.append(_row(f"HomLie({Lname} (x) {Aname}) over {F!r}", f["formula"], f["lhs"],
                                 homlie_L=f["homlie_L"], T_L=f["T_L"]))
    return rows


def centroid_lemma_rhs(L: Algebra, A: Algebra) -> dict:
    from tensorlie.algebra_core import center

    cent = S.centroid(L).dim
    D = derived_subalgebra(L)
    Z = center(L)
    top = L.dim - D.dim
    bottom = (Z + D).dim - D.dim
    m = A.dim
    return {"cent_L": cent, "hom": top * bottom, "rhs": cent * m + top * bottom * m * m}


def suite_centroid_current() -> list[dict]:
    rows = []
    for Aname, mk in (("K", C.base_field), ("K[e]/(e^2)", C.dual_numbers), ("K[t]/(t^3)", lambda f: C.truncated_poly(3, f))):
        A = mk(QQ)
        d = S.centroid(C.current_algebra(C.sl_n(3, QQ), A)).dim
        rows.append(_row(f"Cent(sl_3 (x) {Aname})", A.dim, d))
    L, A = C.nonabelian2(QQ), C.dual_numbers(QQ)
    f = centroid_lemma_rhs(L, A)
    rows.append(_row("Cent(aff2 (x) K[e]/(e^2))", f["rhs"], S.centroid(C.current_algebra(L, A)).dim,
                     cent_L=f["cent_L"], hom=f["hom"]))
    return rows


def lemma_hom_cases(field: Field = GF(5)) -> list[tuple]:
    """(label, M, V1, V2) cases for the hom-space lemma."""
    F = field
    sl2 = C.sl_n(2, F)
    aff2 = C.nonabelian2(F)
    ab1 = C.abelian(1, F)
    D, L3 = C.dual_numbers(F), C.local3(F)
    cases = []
    mods = [("ad sl_2", R.adjoint_module(sl2)), ("K_chi aff2", R.character_module(aff2, [1, 0])),
            ("K ab1", R.trivial_module(ab1)), ("ad aff2", R.adjoint_module(aff2))]
    regD = R.regular_module(D)
    vts = [R.v_t_module(L3, t) for t in range(F.p or 3)][:3]
    pairs = [("D,D", regD, regD), ("D,D/rad", regD, R.residue_module(D))]
    pairs += [(f"V_{a},V_{b}", vts[a], vts[b]) for a, b in itertools.product(range(len(vts)), repeat=2)]
    pairs += [("local3,V_1", R.regular_module(L3), vts[1])]
    for (mn, M), (vn, V1, V2) in itertools.product(mods, pairs):
        cases.append((f"{mn} | {vn}", M, V1, V2))
    return cases


def suite_lemma_hom() -> list[dict]:
    rows = []
    for label, M, V1, V2 in lemma_hom_cases():
        LA = C.current_algebra(M.algebra, V1.algebra)
        lhs = R.module_hom_space(R.tensor_module(M, V1, LA), R.tensor_module(M, V2, LA)).dim
        rows.append(_row(label, R.lemma_hom_rhs(M, V1, V2), lhs))
    return rows


def novikov_jacobi_grid(p: int = 5) -> list[dict]:
    F = GF(p)
    out = []
    for Nname, N in (("(vi)", C.novikov_vi(F)), ("(vii)", C.novikov_vii(F))):
        for Gname, G in (("trivial", C.trivial_group()), ("Z/2", C.cyclic_group(2)), ("Z/3", C.cyclic_group(3))):
            agree = total = qc = 0
            first_bad = None
            for vals in itertools.product(range(p), repeat=G.order):
                alg = C.n_chi_bracket(N, G, vals)
                jac = bool(check_identity(alg, Identity.JACOBI)) and bool(check_identity(alg, Identity.ANTICOMMUTATIVE))
                is_qc = C.quasicharacter_witness(G, vals) is None
                total += 1
                qc += is_qc
                if jac == is_qc:
                    agree += 1
                elif first_bad is None:
                    first_bad = list(vals)
            out.append({"N": Nname, "G": Gname, "maps": total, "quasi_characters": qc, "agree": agree,
                        "first_disagreement": first_bad})
    return out


def suite_novikov_jacobi() -> list[dict]:
    return [_row(f"N={g['N']} G={g['G']} ({g['quasi_characters']} quasi-characters)", g["maps"], g["agree"],
                 first_disagreement=g["first_disagreement"]) for g in novikov_jacobi_grid()]


def suite_kac_moody_analog() -> list[dict]:
    K = C.kac_moody_analog()
    rows = []
    for kind in ("iii", "iv", "v"):
        res = S.poisson_residual(K, S.extended_current_structure(K, kind))
        rows.append(_row(f"structure ({kind}) bare", "residual 0",
                         "residual 0" if res is None else f"fails at {list(res)}"))
    for kind in ("iii", "iv"):
        res = S.poisson_residual(K, S.extended_current_structure(K, kind, corrected=True))
        rows.append(_row(f"structure ({kind}) with central term", "residual 0",
                         "residual 0" if res is None else f"fails at {list(res)}"))
    r = S.poisson_space(K, force=True)
    rows.append(_row("Poisson quotient of mod-7 analog (reference, not gated)", "recorded", r.quotient_dim,
                     passed=True, poisson_dim=r.dim))
    return rows


SUITE_FUNCS = {
    "poisson_classical": suite_poisson_classical,
    "homlie_current": suite_homlie_current,
    "centroid_current": suite_centroid_current,
    "lemma_hom": suite_lemma_hom,
    "novikov_jacobi": suite_novikov_jacobi,
    "kac_moody_analog": suite_kac_moody_analog,
}


def report_suite(name: str) -> list[dict]:
    if name not in SUITE_FUNCS:
        raise InputError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITE_FUNCS[name]()


# ---------------------------------------------------------------- commands

def cmd_check(args) -> int:
    alg = load_algebra(args.algebra, args.field, certify=False)
    names = [i.value for i in Identity] if args.identity == "all" else [args.identity]
    results = []
    failed = False
    for name in names:
        try:
            res = check_identity(alg, name)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        results.append(res.to_json(alg.field))
        failed |= not res.holds
    _emit({"algebra": alg.name, "results": results} if len(results) > 1 else results[0], args.out)
    return 2 if failed and args.identity != "all" else 0


def _params(items) -> dict:
    out = {}
    for item in items or ():
        if "=" not in item:
            raise ParseError(f"bad --param {item!r}, expected key=value")
        k, v = item.split("=", 1)
        out[k] = parse_field(v) if k == "field" else _coerce(v)
    return out


def cmd_construct(args) -> int:
    params = _params(args.param)
    F = args.field
    ins = [load_algebra(a, F) for a in args.inputs]
    name = args.name
    if name == "current":
        alg = C.current_algebra(*ins)
    elif name == "dual_operad":
        alg = C.dual_operad_bracket(*ins)
    elif name == "sl_n_A":
        alg = C.sl_n_A(ins[0], int(params.get("n", 3)))
    elif name == "skew":
        from tensorlie.algebra_core import skew_symmetrize

        alg = skew_symmetrize(ins[0])
    elif name == "affinization":
        alg = C.affinization(ins[0], int(params["p"]))
    else:
        if F is not None and "field" not in params and name not in ("kac_moody_analog", "affinization_vi"):
            params["field"] = F
        alg = C.catalog(name, **params)
    _emit(alg.to_json(), args.out)
    return 0


def cmd_solve(args) -> int:
    alg = load_algebra(args.algebra, args.field)
    if args.kind not in S.SOLVERS:
        raise InputError(f"unknown solver {args.kind!r}; choose from {', '.join(S.SOLVERS)}")
    rep = S.SOLVERS[args.kind](alg, force=args.force)
    _emit(rep.to_json(include_basis=not args.no_basis), args.out)
    return 0


def cmd_cohomology(args) -> int:
    alg = load_algebra(args.algebra, args.field)
    mod = load_module(args.module, args.field) if args.module else R.trivial_module(alg)
    if not mod.algebra.same_table(alg):
        raise InputError("module is defined over a different algebra")
    mod.algebra = alg
    d = R.cohomology_dim(alg, mod, args.degree)
    _emit({"algebra": alg.name, "module": mod.name, "degree": args.degree, "dim": d}, args.out)
    return 0


def cmd_homspace(args) -> int:
    m1, m2 = load_module(args.m1, args.field), load_module(args.m2, args.field)
    H = R.module_hom_space(m1, m2)
    _emit({"dim": H.dim, "basis": H.to_json()}, args.out)
    return 0


def cmd_isomorphic(args) -> int:
    m1, m2 = load_module(args.m1, args.field), load_module(args.m2, args.field)
    res = R.modules_isomorphic(m1, m2, detail=True)
    _emit({"isomorphic": res.isomorphic, "hom_dim": res.hom_dim, "method": res.method,
           "witness": res.witness}, args.out)
    return 0


def cmd_probe7(args) -> int:
    out = {}
    if args.paper_matrices:
        out["reference_matrices"] = S.seven_matrix_probe(S.REFERENCE_X, S.REFERENCE_Y, S.REFERENCE_Z).to_json()
    if args.matrices:
        X, Y, Z = _load_json(args.matrices)
        try:
            out["matrices"] = S.seven_matrix_probe(X, Y, Z).to_json()
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    if args.samples:
        out["sampling"] = S.seven_matrix_sampling(args.samples, args.seed)
    if not out:
        raise InputError("probe7 needs --reference-matrices, --matrices or --samples")
    _emit(out, args.out)
    return 0


def cmd_report(args) -> int:
    rows = report_suite(args.suite)
    if args.json:
        _emit({"suite": args.suite, "rows": rows}, args.out)
    else:
        _emit(f"suite: {args.suite}\n" + format_table(rows), args.out)
    return 0 if all(r["pass"] for r in rows) else 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tensorlie", description="Exact structure computations on tensor-product algebras.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=parse_field, default=None, help="Q or Fp:<p>; overrides the input field")
    common.add_argument("--out", default=None, help="write output to this path")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="check an identity on all basis tuples")
    p.add_argument("identity", choices=[i.value for i in Identity] + ["all"])
    p.add_argument("algebra")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("construct", parents=[common], help="build a catalog or derived algebra")
    p.add_argument("name", help="catalog name, or current | dual_operad | sl_n_A | skew | affinization")
    p.add_argument("inputs", nargs="*", help="input algebras for derived constructions")
    p.add_argument("--param", action="append", help="key=value parameter (repeatable)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("solve", parents=[common], help="solve for a structure space")
    p.add_argument("kind", choices=sorted(S.SOLVERS))
    p.add_argument("algebra")
    p.add_argument("--force", action="store_true", help="ignore the dimension caps")
    p.add_argument("--no-basis", action="store_true", help="omit basis vectors from the report")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("cohomology", parents=[common], help="Chevalley-Eilenberg cohomology dimension")
    p.add_argument("algebra")
    p.add_argument("module", nargs="?", help="module JSON; default is the trivial 1-dim module")
    p.add_argument("--degree", type=int, default=1)
    p.set_defaults(func=cmd_cohomology)

    for name, func, helptext in (("homspace", cmd_homspace, "intertwiner space"),
                                 ("isomorphic", cmd_isomorphic, "exact isomorphism test")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("m1")
        p.add_argument("m2")
        p.set_defaults(func=func)

    p = sub.add_parser("probe7", parents=[common], help="seven-matrix independence probe")
    p.add_argument("--paper-matrices", "--reference-matrices", dest="paper_matrices", action="store_true",
                   help="probe the fixed reference triple X, Y, Z")
    p.add_argument("--matrices", help="JSON [X, Y, Z] of traceless 3x3 integer matrices")
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_probe7)

    p = sub.add_parser("report", parents=[common], help="run a verification suite")
    p.add_argument("suite", help=" | ".join(SUITES))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except (FlavorCertificationError,) as exc:
        print(json.dumps({"error": str(exc), "counterexample": _jsonable(exc.counterexample)}))
        return 2
    except (InputError, ParseError, BadParams, FlavorMismatch, DimCapExceeded, DegreeCapExceeded,
            TensorLieError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, str)) or x is None:
        return x
    return str(x)


if __name__ == "__main__":
    sys.exit(main())
