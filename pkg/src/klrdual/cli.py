"""klrdual command line.

JSON report on stdout (or --out), one-line summary on stderr.
Exit status: 0 ok, 1 validation failure, 2 bad input."""
import argparse
import json
import sys

from . import io
from .fields import field_from_spec

VERBS = ["check-relations", "qchar", "convolve", "rmatrix", "check-affinization", "check-datum",
         "derive-cartan", "build-delta", "apply-functor", "run-example"]


class InputError(Exception):
    pass


def _module(args, path, params=None):
    return io.module_from_json(io.load(path), params=params, field=args.field_obj)


def _datum(args, check=False):
    if not args.datum:
        raise InputError("--datum is required")
    return io.datum_from_json(io.load(args.datum), args.field_obj, check=check)


def _modules(args, count):
    if not args.module or len(args.module) != count:
        raise InputError("expected %d --module argument(s)" % count)
    return [_module(args, p) for p in args.module]


def _gamma(spec):
    try:
        if spec.strip().startswith("{"):
            return {io._label(k): int(v) for k, v in json.loads(spec).items()}
        out = {}
        for a in spec.split(","):
            a = io._label(a.strip())
            out[a] = out.get(a, 0) + 1
        return out
    except (ValueError, AttributeError) as e:
        raise InputError("bad --gamma %r: %s" % (spec, e))


# ---------------------------------------------------------------- verbs

def cmd_check_relations(args):
    from .modules import check_relations
    (M,) = _modules(args, 1)
    rep = check_relations(M)
    return {"ok": rep["ok"], "failures": rep["failures"], "dim": M.dim}, rep["ok"]


def cmd_qchar(args):
    from .modules import format_qchar, q_character
    (M,) = _modules(args, 1)
    return {"qchar": format_qchar(q_character(M)), "dim": M.dim}, True


def cmd_convolve(args):
    from .modules import convolve
    if not args.module or len(args.module) < 2:
        raise InputError("convolve needs at least two --module arguments")
    mods = _modules(args, len(args.module))
    return io.module_to_json(convolve(*mods)), True


def cmd_rmatrix(args):
    from .affinization import (Affinization, composition_polynomial, rmatrix_pair,
                               rmatrix_normalized)
    M, N = _modules(args, 2)
    A = Affinization(M)
    if N.ring:
        B = Affinization(N)
        if A.z == B.z:
            B = B.renamed(A.z + "_2")
        R12 = rmatrix_pair(A, B)
        R21 = rmatrix_pair(B, A)
        f = composition_polynomial(R12, R21)
        ok = bool(f.set_zero([B.z])) and bool(f.set_zero([A.z]))
        return {"deg2": R12.degree, "deg2_reverse": R21.degree, "content": repr(R12.content),
                "composition": repr(f), "ok": ok}, ok
    nr = rmatrix_normalized(A, N)
    r = nr.specialize()
    return {"deg2": nr.degree, "raw_deg2": nr.raw_degree, "removed": repr(nr.content),
            "r_nonzero": not r.is_zero()}, not r.is_zero()


def cmd_check_affinization(args):
    from .affinization import Affinization, check_affinization
    (M,) = _modules(args, 1)
    rep = check_affinization(Affinization(M), args.seed)
    return rep, rep["valid"]


def cmd_check_datum(args):
    from .duality import check_axioms
    d = _datum(args)
    rep = check_axioms(d)
    return {"datum": d.to_json(), "axioms": rep}, all(r["ok"] for r in rep)


def cmd_derive_cartan(args):
    from .duality import derive_cartan
    d = _datum(args)
    form, A, finite = derive_cartan(d)
    return {"J": d.J, "form": form, "cartan": A, "finite_type": finite}, True


def cmd_build_delta(args):
    from .duality import build_delta
    d = _datum(args)
    if not args.gamma:
        raise InputError("--gamma is required")
    gamma = _gamma(args.gamma)
    bad = [j for j in gamma if j not in d.J]
    if bad:
        raise InputError("--gamma uses indices outside J: %s" % bad)
    B = build_delta(d, gamma)
    ok = not B.report["right_relations"] and not B.report["bicommute"]
    return {"gamma": {str(j): m for j, m in gamma.items()},
            "components": {",".join(map(str, mu)): {"rank": D.dim, "vars": D.ring_names()}
                           for mu, D in B.components.items()},
            "checks": B.report, "ok": ok}, ok


def cmd_apply_functor(args):
    from .duality import apply_functor
    d = _datum(args)
    if not args.module or len(args.module) != 1:
        raise InputError("apply-functor needs one --module")
    doc = io.load(args.module[0])
    params = None if "params" in doc else d.paramsD
    L = io.module_from_json(doc, params=params, field=args.field_obj)
    F = apply_functor(d, L)
    out = io.module_to_json(F)
    out["dim"] = F.dim
    return out, True


def cmd_run_example(args):
    from .catalog import duality_datum, expected_cartan
    from .duality import apply_functor, check_axioms, derive_cartan, one_dim_D
    from .modules import format_qchar, isomorphic_up_to_shift, q_character
    name = args.name
    if name not in ("D", "C", "B1", "B2"):
        raise InputError("unknown example %r (expected D, C, B1 or B2)" % name)
    try:
        d = duality_datum(name, args.ell, args.field_obj, check=False)
    except ValueError as e:
        raise InputError(str(e))
    checks = set(args.check.split(",")) if args.check else {"cartan"}
    if "all" in checks:
        checks = {"cartan", "axioms", "functor"}
    form, A, finite = derive_cartan(d)
    rep = {"example": name, "ell": args.ell, "J": d.J,
           "beta": {str(j): {str(i): m for i, m in d.betas[j].items()} for j in d.J},
           "deg2_z": {str(j): d.d2[j] for j in d.J},
           "deg2_R": {"%s,%s" % jk: d.deg2_R(*jk) for jk in sorted(d.R)},
           "composition": {"%s,%s" % jk: repr(f) for jk, f in sorted(d.comp_poly.items())},
           "cartan": A, "finite_type": finite,
           "truncation": "not needed: coefficients are exact polynomials"}
    ok = True
    if "cartan" in checks:
        rep["cartan_expected"] = expected_cartan(name, args.ell)
        rep["cartan_ok"] = A == rep["cartan_expected"]
        ok &= rep["cartan_ok"]
    if "axioms" in checks:
        rep["axioms"] = check_axioms(d)
        ok &= all(r["ok"] for r in rep["axioms"])
    figs = []
    if "functor" in checks or args.figures:
        images = {}
        fun = []
        for j in d.J:
            F = apply_functor(d, one_dim_D(d, (j,)))
            iso = isomorphic_up_to_shift(F, d.affs[j].quotient(), args.seed)
            images["L%d" % j] = F
            fun.append({"module": "LD(%d)" % j, "dim": F.dim, "qchar": format_qchar(q_character(F)),
                        "iso_to_quotient": iso is not None and iso[0] == 0})
            ok &= iso is not None and iso[0] == 0
        if name == "D" and len(d.J) >= 3:
            for w in [(1, 3), (1, 3, 2)]:
                F = apply_functor(d, one_dim_D(d, w))
                images["L" + "".join(map(str, w))] = F
                fun.append({"module": "LD(%s)" % ",".join(map(str, w)), "dim": F.dim,
                            "qchar": format_qchar(q_character(F))})
        rep["functor"] = fun
        if args.figures:
            from .report import example_figures
            figs = example_figures(d, args.figures, sorted(images.items()))
            rep["figures"] = figs
    rep["ok"] = bool(ok)
    return rep, bool(ok)


COMMANDS = {
    "check-relations": cmd_check_relations, "qchar": cmd_qchar, "convolve": cmd_convolve,
    "rmatrix": cmd_rmatrix, "check-affinization": cmd_check_affinization,
    "check-datum": cmd_check_datum, "derive-cartan": cmd_derive_cartan,
    "build-delta": cmd_build_delta, "apply-functor": cmd_apply_functor,
    "run-example": cmd_run_example,
}


def build_parser():
    p = argparse.ArgumentParser(prog="klrdual", description=__doc__.splitlines()[0])
    p.add_argument("verb", choices=VERBS)
    p.add_argument("name", nargs="?", help="example name for run-example (D, C, B1, B2)")
    p.add_argument("--module", action="append", help="module JSON (repeatable)")
    p.add_argument("--datum", help="duality datum JSON")
    p.add_argument("--gamma", help="weight in J, e.g. '1,3' or '{\"1\": 2}'")
    p.add_argument("--ell", type=int, default=4)
    p.add_argument("--check", default=None, help="run-example checks: cartan,axioms,functor or all")
    p.add_argument("--field", default="rational", help="rational | fp:<p>")
    p.add_argument("--trunc", type=int, default=None,
                   help="accepted for compatibility; coefficients are never truncated")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--figures", help="directory for matplotlib figures (run-example)")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.field_obj = field_from_spec(args.field)
    except ValueError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    if args.verb == "run-example" and not args.name:
        print("error: run-example needs an example name", file=sys.stderr)
        return 2
    try:
        report, ok = COMMANDS[args.verb](args)
    except (io.SchemaError, InputError, FileNotFoundError, IsADirectoryError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    text = io.dumps(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    print("%s: %s" % (args.verb, "ok" if ok else "FAILED"), file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
