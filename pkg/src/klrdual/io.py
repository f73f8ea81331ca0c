"""JSON import/export (schema version 1) for algebra parameters, modules,
affinizations and duality data.

Module document:
    {"format": 1, "kind": "module", "params": {...}, "beta": {"1": 1, ...},
     "basis": [{"word": [1, 2], "deg2": 0}, ...],
     "x": [[[row, col, coeff], ...] per k], "tau": [...],
     "ring": {"vars": [{"name": "z", "deg2": 4}]}}
A coeff is a rational string "p/q" (or int) or, with ring variables, a
polynomial {"[e1,...]": "p/q"} with exponents in ring-variable order.
"""
import json

from .cartan import CartanDatum, KLRParams, QPolynomialSet, SkewForm
from .fields import QQ
from .modules import GradedModule
from .poly import Poly

FORMAT = 1


class SchemaError(ValueError):
    """Malformed input document; .path names the offending field."""

    def __init__(self, path, msg):
        super().__init__("%s: %s" % (path, msg))
        self.path = path


def _need(obj, key, path, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(path, "missing field %r" % key)
    v = obj[key]
    if kind is not None and not isinstance(v, kind):
        raise SchemaError("%s.%s" % (path, key), "expected %s" % getattr(kind, "__name__", kind))
    return v


def _check_format(doc, path="$"):
    if not isinstance(doc, dict):
        raise SchemaError(path, "expected an object")
    f = doc.get("format", FORMAT)
    if f != FORMAT:
        raise SchemaError(path + ".format", "unsupported format %r" % f)


def _label(s):
    """Index-set labels: ints stay ints, numeric strings become ints."""
    if isinstance(s, str) and s.lstrip("-").isdigit():
        return int(s)
    return s


# ---------------------------------------------------------------- parameters

def params_to_json(params):
    out = params.to_json()
    out["format"] = FORMAT
    return out


def params_from_json(doc, field=QQ, path="$"):
    _check_format(doc, path)
    I = [_label(i) for i in _need(doc, "index_set", path, list)]
    form = _need(doc, "form", path, list)
    if len(form) != len(I) or any(not isinstance(r, list) or len(r) != len(I) for r in form):
        raise SchemaError(path + ".form", "expected a %dx%d matrix" % (len(I), len(I)))
    datum = CartanDatum(I, form)
    table = {}
    for a, ent in enumerate(doc.get("qpoly", [])):
        p = "%s.qpoly[%d]" % (path, a)
        i, j = _label(_need(ent, "i", p)), _label(_need(ent, "j", p))
        if i not in datum.pos or j not in datum.pos:
            raise SchemaError(p, "unknown index")
        terms = {}
        for b, t in enumerate(_need(ent, "terms", p, list)):
            pt = "%s.terms[%d]" % (p, b)
            try:
                terms[int(_need(t, "p", pt)), int(_need(t, "q", pt))] = field(_need(t, "coeff", pt))
            except (TypeError, ValueError, ZeroDivisionError) as e:
                raise SchemaError(pt, str(e))
        table[i, j] = terms
    twist = None
    if doc.get("twist"):
        vals = {}
        for a, t in enumerate(doc["twist"]):
            if not isinstance(t, list) or len(t) != 3:
                raise SchemaError("%s.twist[%d]" % (path, a), "expected [i, j, value]")
            from fractions import Fraction
            v = Fraction(str(t[2]))
            vals[_label(t[0]), _label(t[1])] = int(v) if v.denominator == 1 else v
        twist = SkewForm(vals)
    return KLRParams(datum, QPolynomialSet(datum, table, field), field, twist)


# ---------------------------------------------------------------- modules

def _coeff_to_json(p, order, fmt):
    if not order:
        return fmt(p.const_term())
    return p.to_json(order, fmt)


def module_to_json(M, include_params=True):
    order = M.ring_names()
    fmt = M.field.fmt

    def mats(ms):
        return [[[i, j, _coeff_to_json(p, order, fmt)] for j, col in enumerate(m)
                 for i, p in sorted(col.items())] for m in ms]

    out = {"format": FORMAT, "kind": "module", "name": M.name, "n": M.n,
           "beta": {str(i): m for i, m in M.beta().items()},
           "basis": [{"word": list(w), "deg2": d} for w, d in M.basis],
           "x": mats(M.x), "tau": mats(M.tau)}
    if M.ring:
        out["ring"] = {"vars": [{"name": v, "deg2": d} for v, d in M.ring]}
    if include_params:
        out["params"] = params_to_json(M.params)
    return out


def module_from_json(doc, params=None, field=QQ, path="$"):
    _check_format(doc, path)
    if params is None:
        params = params_from_json(_need(doc, "params", path, dict), field, path + ".params")
    field = params.field
    basis = []
    for a, b in enumerate(_need(doc, "basis", path, list)):
        p = "%s.basis[%d]" % (path, a)
        w = [_label(x) for x in _need(b, "word", p, list)]
        for x in w:
            if x not in params.datum.pos:
                raise SchemaError(p + ".word", "unknown index %r" % (x,))
        basis.append((tuple(w), int(_need(b, "deg2", p))))
    n = doc.get("n")
    if n is None:
        if not basis:
            raise SchemaError(path, "empty basis needs an explicit 'n'")
        n = len(basis[0][0])
    ring = ()
    if "ring" in doc:
        vs = _need(doc["ring"], "vars", path + ".ring", list)
        ring = tuple((_need(v, "name", path + ".ring.vars"), int(_need(v, "deg2", path + ".ring.vars")))
                     for v in vs)
    order = [v for v, _ in ring]
    dim = len(basis)

    def mats(key, count):
        raw = doc.get(key)
        if raw is None:
            if dim == 0 or count == 0:
                return [[{} for _ in range(dim)] for _ in range(count)]
            raise SchemaError(path, "missing field %r" % key)
        if not isinstance(raw, list) or len(raw) != count:
            raise SchemaError("%s.%s" % (path, key), "expected %d matrices" % count)
        out = []
        for k, trip in enumerate(raw):
            cols = [dict() for _ in range(dim)]
            for e, t in enumerate(trip):
                pt = "%s.%s[%d][%d]" % (path, key, k, e)
                if not isinstance(t, list) or len(t) != 3:
                    raise SchemaError(pt, "expected [row, col, coeff]")
                i, j, c = t
                if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < dim and 0 <= j < dim):
                    raise SchemaError(pt, "row/col out of range")
                try:
                    poly = Poly.from_json(c, order, field)
                except (ValueError, TypeError, ZeroDivisionError) as err:
                    raise SchemaError(pt, str(err))
                if poly:
                    cols[j][i] = cols[j].get(i, Poly()) + poly
            out.append(cols)
        return out

    x, tau = mats("x", n), mats("tau", max(n - 1, 0))
    try:
        return GradedModule(params, n, basis, x, tau, ring,
                            name=doc.get("name"))
    except ValueError as e:
        raise SchemaError(path, str(e))


# ---------------------------------------------------------------- duality data

def datum_to_json(d):
    """A datum document: the ambient params plus the list of (beta_j, M^_j)."""
    return {"format": FORMAT, "kind": "datum", "name": d.name,
            "params": params_to_json(d.params),
            "entries": [{"beta": {str(i): m for i, m in d.betas[j].items()},
                         "module": module_to_json(d.affs[j].module, include_params=False)}
                        for j in d.J]}


def datum_from_json(doc, field=QQ, check=True, path="$"):
    """Either {"example": "D", "ell": 4} or an explicit entries document."""
    from .affinization import Affinization
    from .catalog import duality_datum
    from .duality import datum_from_affinizations
    _check_format(doc, path)
    if "example" in doc:
        try:
            return duality_datum(doc["example"], int(_need(doc, "ell", path)), field, check)
        except ValueError as e:
            raise SchemaError(path, str(e))
    params = params_from_json(_need(doc, "params", path, dict), field, path + ".params")
    entries = []
    for a, ent in enumerate(_need(doc, "entries", path, list)):
        p = "%s.entries[%d]" % (path, a)
        beta = {_label(i): int(m) for i, m in _need(ent, "beta", p, dict).items()}
        M = module_from_json(_need(ent, "module", p, dict), params, path=p + ".module")
        try:
            entries.append((beta, Affinization(M)))
        except ValueError as e:
            raise SchemaError(p + ".module", str(e))
    d = datum_from_affinizations(params, entries, check=check)
    d.name = doc.get("name")
    return d


def load(path):
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as e:
            raise SchemaError(path, "invalid JSON: %s" % e)


def dumps(obj):
    return json.dumps(obj, indent=1, sort_keys=True, default=str)
