"""Sparse multivariate polynomials with named variables and exact coefficients.

A monomial is a tuple of (name, exponent) pairs sorted by name; the empty
tuple is the constant monomial.  Coefficients are field elements (mpq/Fraction
or Fp); plain ints are accepted on input.
"""
import json


def mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i][0] == b[j][0]:
            out.append((a[i][0], a[i][1] + b[j][1]))
            i += 1
            j += 1
        elif a[i][0] < b[j][0]:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_div(a, b):
    """a / b if b divides a, else None."""
    da = dict(a)
    for v, e in b:
        if da.get(v, 0) < e:
            return None
        da[v] -= e
    return tuple(sorted((v, e) for v, e in da.items() if e))


def mono_from_dict(d):
    return tuple(sorted((v, e) for v, e in d.items() if e))


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {} if terms is None else terms

    # construction
    @staticmethod
    def const(c):
        return Poly({(): c}) if c else Poly()

    @staticmethod
    def var(name, exp=1, coeff=1):
        return Poly({((name, exp),): coeff}) if exp else Poly({(): coeff})

    @staticmethod
    def from_mono(mono, coeff):
        return Poly({mono: coeff}) if coeff else Poly()

    # basic protocol
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_const(self):
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def const_term(self):
        return self.terms.get((), 0)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def copy(self):
        return Poly(dict(self.terms))

    def variables(self):
        return sorted({v for m in self.terms for v, _ in m})

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m, 0) + c
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return Poly(t)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if not other:
                return Poly()
            return Poly({m: c * other for m, c in self.terms.items()})
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = t.get(m, 0) + c1 * c2
                if s:
                    t[m] = s
                else:
                    t.pop(m, None)
        return Poly(t)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = Poly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def add_scaled(self, other, c):
        """In-place self += c*other (returns self)."""
        t = self.terms
        for m, v in other.terms.items():
            s = t.get(m, 0) + c * v
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return self

    # degrees
    def degree_in(self, name):
        return max((dict(m).get(name, 0) for m in self.terms), default=-1)

    def valuation(self, name):
        """Largest s with name^s dividing self; None for the zero polynomial."""
        if not self.terms:
            return None
        return min(dict(m).get(name, 0) for m in self.terms)

    def weighted_degrees(self, weights):
        return {sum(weights[v] * e for v, e in m) for m in self.terms}

    def total_degree(self):
        return max((sum(e for _, e in m) for m in self.terms), default=-1)

    # substitutions
    def subs(self, mapping):
        """Substitute variables by polynomials (or scalars)."""
        out = Poly()
        for m, c in self.terms.items():
            term = Poly({(): c})
            rest = []
            for v, e in m:
                if v in mapping:
                    val = mapping[v]
                    if not isinstance(val, Poly):
                        val = Poly.const(val)
                    term = term * (val ** e)
                else:
                    rest.append((v, e))
            if rest:
                term = term * Poly({tuple(rest): 1})
            out.add_scaled(term, 1)
        return out

    def rename(self, mapping):
        t = {}
        for m, c in self.terms.items():
            d = {}
            for v, e in m:
                w = mapping.get(v, v)
                d[w] = d.get(w, 0) + e
            mm = mono_from_dict(d)
            s = t.get(mm, 0) + c
            if s:
                t[mm] = s
            else:
                t.pop(mm, None)
        return Poly(t)

    def set_zero(self, names):
        """Specialize the given variables to 0."""
        names = set(names)
        return Poly({m: c for m, c in self.terms.items() if not any(v in names for v, _ in m)})

    def shift_var(self, name, s):
        """Multiply by name^s (s may be negative when exact)."""
        t = {}
        for m, c in self.terms.items():
            d = dict(m)
            d[name] = d.get(name, 0) + s
            if d[name] < 0:
                raise ArithmeticError("negative exponent in shift_var")
            t[mono_from_dict(d)] = c
        return Poly(t)

    def map_coeffs(self, f):
        t = {}
        for m, c in self.terms.items():
            c2 = f(c)
            if c2:
                t[m] = c2
        return Poly(t)

    # division
    def _lex_key(self, order):
        def key(m):
            d = dict(m)
            return tuple(d.get(v, 0) for v in order)
        return key

    def leading(self, order=None):
        if order is None:
            order = self.variables()
        key = self._lex_key(order)
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def divmod(self, d):
        """Lex-order division by a single polynomial: self = q*d + r."""
        if d.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        order = sorted(set(self.variables()) | set(d.variables()))
        key = self._lex_key(order)
        lm, lc = d.leading(order)
        q = Poly()
        r = Poly()
        p = self.copy()
        while p.terms:
            m = max(p.terms, key=key)
            c = p.terms[m]
            qm = mono_div(m, lm)
            if qm is None:
                r.terms[m] = c
                del p.terms[m]
                continue
            f = c / lc
            q.terms[qm] = q.terms.get(qm, 0) + f
            p.add_scaled(Poly({qm: 1}) * d, -f)
        return q, r

    def div_exact(self, d):
        q, r = self.divmod(d)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    # output
    def to_json(self, order, fmt):
        """{"[e1,e2,...]": "coeff"} with exponents listed in `order`."""
        out = {}
        for m, c in sorted(self.terms.items(), key=lambda mc: self._lex_key(order)(mc[0])):
            d = dict(m)
            extra = set(d) - set(order)
            if extra:
                raise ValueError("variables %s not in ring" % sorted(extra))
            out[json.dumps([d.get(v, 0) for v in order]).replace(" ", "")] = fmt(c)
        return out

    @staticmethod
    def from_json(obj, order, field):
        if isinstance(obj, (str, int)):
            return Poly.const(field(obj))
        t = {}
        for k, c in obj.items():
            exps = json.loads(k)
            if len(exps) != len(order):
                raise ValueError("monomial %s does not match ring variables %s" % (k, order))
            c = field(c)
            if c:
                t[mono_from_dict(dict(zip(order, exps)))] = c
        return Poly(t)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda mc: [(-e, v) for v, e in mc[0]]):
            mono = "*".join(v if e == 1 else "%s^%d" % (v, e) for v, e in m)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append("%s*%s" % (c, mono))
        return " + ".join(parts).replace("+ -", "- ")


def poly_gcd(polys, field):
    """Monic gcd of a list of polynomials (lex order by variable name).

    Uses sympy for the multivariate gcd over QQ or GF(p)."""
    import sympy
    polys = [p for p in polys if p]
    if not polys:
        return Poly()
    names = sorted({v for p in polys for v in p.variables()})
    if not names:
        return Poly.const(field.one)
    syms = sympy.symbols(names)
    sym_of = dict(zip(names, syms))
    if field.characteristic:
        dom = sympy.GF(field.characteristic)
        conv = lambda c: int(field(c).v)
    else:
        dom = sympy.QQ
        conv = lambda c: sympy.Rational(int(c.numerator), int(c.denominator)) if hasattr(c, "numerator") else sympy.Rational(c)

    def to_sym(p):
        expr = 0
        for m, c in p.terms.items():
            term = conv(c)
            for v, e in m:
                term = term * sym_of[v] ** e
            expr += term
        return sympy.Poly(expr, *syms, domain=dom)

    g = to_sym(polys[0])
    for p in polys[1:]:
        g = sympy.gcd(g, to_sym(p))
        if g.is_ground:
            break
    g = g.monic()
    out = Poly()
    for exps, c in g.terms():
        if dom == sympy.QQ:
            from fractions import Fraction
            c = field(Fraction(int(c.p), int(c.q)))
        else:
            c = field(int(c))
        out.terms[mono_from_dict(dict(zip(names, exps)))] = c
    return out
