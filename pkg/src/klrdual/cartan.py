"""Cartan data, parameter polynomials Q_{i,j}, symmetric-group combinatorics and
degree bookkeeping.

Degrees are stored doubled ("deg2") so that half-integer shifts coming from a
skew-symmetric twist stay integral.  Permutations are tuples `p` with
`p[k]` the image of position k (0-based); words in simple transpositions use
1-based letters, so letter i is s_i swapping positions i-1 and i.
"""
import itertools
from fractions import Fraction
from math import comb

from .fields import QQ


class CartanDatum:
    def __init__(self, index_set, form):
        self.index_set = tuple(index_set)
        self.pos = {i: k for k, i in enumerate(self.index_set)}
        if isinstance(form, dict):
            self._form = {(i, j): form[i, j] if (i, j) in form else form[j, i]
                          for i in self.index_set for j in self.index_set}
        else:
            self._form = {(i, j): form[a][b] for a, i in enumerate(self.index_set)
                          for b, j in enumerate(self.index_set)}

    def form(self, i, j):
        return self._form[i, j]

    def form_matrix(self):
        return [[self._form[i, j] for j in self.index_set] for i in self.index_set]

    def a(self, i, j):
        """<h_i, alpha_j> = 2(alpha_i, alpha_j)/(alpha_i, alpha_i) (a Fraction if not integral)."""
        v = Fraction(2 * self._form[i, j], self._form[i, i]) if self._form[i, i] else None
        if v is not None and v.denominator == 1:
            return int(v)
        return v

    def gcm(self):
        return [[self.a(i, j) for j in self.index_set] for i in self.index_set]

    def pair(self, beta, gamma):
        """Bilinear form on root-lattice vectors given as {i: mult}."""
        return sum(m * n * self._form[i, j] for i, m in beta.items() for j, n in gamma.items())

    def __eq__(self, other):
        return isinstance(other, CartanDatum) and self.index_set == other.index_set and self._form == other._form

    def __hash__(self):
        return hash((self.index_set, tuple(sorted(self._form.items()))))

    def to_json(self):
        return {"index_set": list(self.index_set), "form": self.form_matrix()}


def validate_cartan(datum):
    """List of violated Cartan-datum conditions; empty iff valid.

    The weight lattice is realized as the span of simple roots and fundamental
    weights, so linear independence and existence of fundamental weights hold
    by construction; only conditions on the form and matrix are testable."""
    out = []
    I = datum.index_set
    for i in I:
        for j in I:
            if datum.form(i, j) != datum.form(j, i):
                out.append({"condition": "symmetric", "i": i, "j": j})
    for i in I:
        d = datum.form(i, i)
        if not isinstance(d, int) or d <= 0 or d % 2:
            out.append({"condition": "(1)", "i": i, "detail": "(a_i,a_i)=%s not in 2Z>0" % d})
    for i in I:
        if datum.form(i, i) <= 0:
            continue
        for j in I:
            a = datum.a(i, j)
            if not isinstance(a, int):
                out.append({"condition": "(2)", "i": i, "j": j, "detail": "2(a_i,a_j)/(a_i,a_i) not an integer"})
            elif i == j and a != 2:
                out.append({"condition": "(3)", "i": i, "j": j})
            elif i != j and a > 0:
                out.append({"condition": "(3)", "i": i, "j": j, "detail": "positive off-diagonal entry"})
    return out


def root_height(beta):
    return sum(beta.values())


def word_weight(word):
    beta = {}
    for i in word:
        beta[i] = beta.get(i, 0) + 1
    return beta


def words_of_weight(beta, order):
    """All words nu in I^beta, in lexicographic order relative to `order`."""
    letters = []
    for i in order:
        letters.extend([i] * beta.get(i, 0))
    seen = sorted(set(itertools.permutations(letters)), key=lambda w: [order.index(a) for a in w])
    return seen


class QPolynomialSet:
    """Coefficient tables t_{i,j;p,q} of Q_{i,j}(u,v) = sum t u^p v^q."""

    def __init__(self, datum, table, field=QQ):
        self.datum = datum
        self.field = field
        self.table = {}
        for i in datum.index_set:
            for j in datum.index_set:
                if i == j:
                    self.table[i, j] = {}
        for (i, j), terms in table.items():
            self.table[i, j] = {pq: field(c) for pq, c in terms.items() if c}
            if (j, i) not in table:
                self.table[j, i] = {(q, p): field(c) for (p, q), c in terms.items() if c}
        for i in datum.index_set:
            for j in datum.index_set:
                self.table.setdefault((i, j), {(0, 0): field.one})

    def Q(self, i, j):
        return self.table[i, j]

    def eval(self, i, j, u, v):
        return sum(c * u ** p * v ** q for (p, q), c in self.table[i, j].items())

    def qbar(self, i, j):
        """Q-bar as {(a, b, c): coeff} for u^a v^b w^c, by exact division."""
        out = {}
        for (p, q), t in self.table[i, j].items():
            for s in range(p):
                key = (s, q, p - 1 - s)
                out[key] = out.get(key, 0) + t
        return {k: c for k, c in out.items() if c}

    def qbar_eval(self, i, j, u, v, w):
        return sum(c * u ** a * v ** b * w ** e for (a, b, e), c in self.qbar(i, j).items())

    def is_symmetric_on(self, letters):
        """Q_{i,j}(u,v) is a polynomial in u - v for i, j in letters."""
        for i in letters:
            for j in letters:
                if i == j:
                    continue
                t = self.table[i, j]
                # a polynomial in u-v is killed by d/du + d/dv
                der = {}
                for (p, q), c in t.items():
                    if p:
                        der[p - 1, q] = der.get((p - 1, q), 0) + p * c
                    if q:
                        der[p, q - 1] = der.get((p, q - 1), 0) + q * c
                if any(der.values()):
                    return False
        return True

    def __eq__(self, other):
        return isinstance(other, QPolynomialSet) and self.datum == other.datum and self.table == other.table

    def __hash__(self):
        return hash(self.datum)

    def to_json(self):
        out = []
        I = self.datum.index_set
        for a, i in enumerate(I):
            for j in I[a + 1:]:
                out.append({"i": i, "j": j, "terms": [
                    {"p": p, "q": q, "coeff": self.field.fmt(c)} for (p, q), c in sorted(self.table[i, j].items())]})
        return out


def validate_qpolys(Q, datum=None):
    datum = datum or Q.datum
    out = []
    I = datum.index_set
    for i in I:
        if Q.table[i, i]:
            out.append({"condition": "Q_ii=0", "i": i})
        for j in I:
            if i == j:
                continue
            t = Q.table[i, j]
            back = Q.table[j, i]
            if {(q, p): c for (p, q), c in t.items()} != back:
                out.append({"condition": "symmetry", "i": i, "j": j})
            for (p, q) in t:
                if 2 * datum.form(i, j) + p * datum.form(i, i) + q * datum.form(j, j) != 0:
                    out.append({"condition": "support", "i": i, "j": j, "p": p, "q": q})
            lead = t.get((-datum.a(i, j), 0)) if isinstance(datum.a(i, j), int) else None
            if not lead:
                out.append({"condition": "leading", "i": i, "j": j})
    return out


class SkewForm:
    """Integer skew-symmetric form c on the root lattice (mathematical units)."""

    def __init__(self, values=None):
        self.values = {}
        for (i, j), v in (values or {}).items():
            self.values[i, j] = v
            self.values[j, i] = -v

    def c(self, i, j):
        return self.values.get((i, j), 0)

    def on(self, beta, gamma):
        return sum(m * n * self.c(i, j) for i, m in beta.items() for j, n in gamma.items())

    def __neg__(self):
        return SkewForm({k: -v for k, v in self.values.items()})

    def __add__(self, other):
        out = {}
        for i, j in set(self.values) | set(other.values):
            if (j, i) not in out:
                out[i, j] = self.c(i, j) + other.c(i, j)
        return SkewForm(out)

    def is_zero(self):
        return not any(self.values.values())

    def __eq__(self, other):
        return isinstance(other, SkewForm) and {k: v for k, v in self.values.items() if v} == \
            {k: v for k, v in other.values.items() if v}

    def __hash__(self):
        return hash(tuple(sorted((k, v) for k, v in self.values.items() if v)))


def H2(nu, c):
    """Doubled H(nu) = sum_{a<b} c(alpha_{nu_a}, alpha_{nu_b})."""
    return sum(c.c(nu[a], nu[b]) for a in range(len(nu)) for b in range(a + 1, len(nu)))


class KLRParams:
    """Everything needed to define R(beta): Cartan datum, Q-table, field, twist."""

    def __init__(self, datum, Q, field=None, twist=None):
        self.datum = datum
        self.Q = Q
        self.field = field or Q.field
        self.twist = twist or SkewForm()
        self._qbar = {}

    def qbar(self, i, j):
        key = (i, j)
        if key not in self._qbar:
            self._qbar[key] = self.Q.qbar(i, j)
        return self._qbar[key]

    def deg2_x(self, i):
        return 2 * self.datum.form(i, i)

    def deg2_tau(self, i, j):
        return 2 * (-self.datum.form(i, j) - self.twist.c(i, j))

    def with_twist(self, c):
        return KLRParams(self.datum, self.Q, self.field, self.twist + c)

    def same_algebra(self, other):
        return self.datum == other.datum and self.Q == other.Q and self.twist == other.twist

    def to_json(self):
        out = {"index_set": list(self.datum.index_set), "form": self.datum.form_matrix(),
               "qpoly": self.Q.to_json()}
        if not self.twist.is_zero():
            out["twist"] = [[i, j, v] for (i, j), v in sorted(self.twist.values.items()) if v and
                            self.datum.pos.get(i, 0) < self.datum.pos.get(j, 0)]
        return out


def generator_degree(params, tag, nu, k=None):
    """Doubled degree of e(nu) ('e'), x_k e(nu) ('x') or tau_k e(nu) ('tau'); k is 1-based."""
    if tag == "e":
        return 0
    n = len(nu)
    if tag == "x":
        if not 1 <= k <= n:
            raise IndexError("x_%s out of range for height %d" % (k, n))
        return params.deg2_x(nu[k - 1])
    if tag == "tau":
        if not 1 <= k < n:
            raise IndexError("tau_%s out of range for height %d" % (k, n))
        return params.deg2_tau(nu[k - 1], nu[k])
    raise ValueError("unknown generator tag %r" % tag)


def parity(nu, datum):
    """S(nu) = sum over a<b with nu_a before nu_b in the order of I of (a_{nu_a}, a_{nu_b}), mod 2."""
    pos = datum.pos
    s = 0
    for a in range(len(nu)):
        for b in range(a + 1, len(nu)):
            if pos[nu[a]] < pos[nu[b]]:
                s += datum.form(nu[a], nu[b])
    return s % 2


# ---------------------------------------------------------------- permutations

def identity(n):
    return tuple(range(n))


def perm_from_word(word, n):
    p = list(range(n))
    for i in word:
        p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def left_mul(i, p):
    """s_i o p."""
    out = list(p)
    for k, v in enumerate(p):
        if v == i - 1:
            out[k] = i
        elif v == i:
            out[k] = i - 1
    return tuple(out)


def perm_inverse(p):
    out = [0] * len(p)
    for k, v in enumerate(p):
        out[v] = k
    return tuple(out)


def compose(p, q):
    """p o q."""
    return tuple(p[q[k]] for k in range(len(q)))


def length(p):
    n = len(p)
    return sum(1 for a in range(n) for b in range(a + 1, n) if p[a] > p[b])


def is_left_descent(i, p):
    inv = perm_inverse(p)
    return inv[i - 1] > inv[i]


def lex_word(p):
    """Lexicographically smallest reduced word of p."""
    word = []
    p = tuple(p)
    inv = list(perm_inverse(p))
    while True:
        for i in range(1, len(p)):
            if inv[i - 1] > inv[i]:
                break
        else:
            return tuple(word)
        word.append(i)
        inv[i - 1], inv[i] = inv[i], inv[i - 1]


def act_on_word(p, nu):
    """(p.nu)_{p(k)} = nu_k."""
    out = [None] * len(nu)
    for k, v in enumerate(nu):
        out[p[k]] = v
    return tuple(out)


def blocks(comp):
    out = []
    s = 0
    for m in comp:
        out.append(range(s, s + m))
        s += m
    return out


def is_min_coset_rep(p, comp):
    for b in blocks(comp):
        for k in list(b)[:-1]:
            if p[k] > p[k + 1]:
                return False
    return True


def coset_reps(comp):
    """Minimal-length representatives of S_n / (S_{n_1} x ... x S_{n_m}),
    each with its lexicographically smallest reduced word, ordered by (length, word)."""
    n = sum(comp)
    out = []

    def rec(bi, free, images):
        if bi == len(comp):
            p = [0] * n
            for b, imgs in zip(blocks(comp), images):
                for k, v in zip(b, imgs):
                    p[k] = v
            out.append(tuple(p))
            return
        for sub in itertools.combinations(sorted(free), comp[bi]):
            rec(bi + 1, free - set(sub), images + [sub])

    rec(0, set(range(n)), [])
    res = [(p, lex_word(p)) for p in out]
    res.sort(key=lambda pw: (len(pw[1]), pw[1]))
    return res


def minimal_coset_reps(m, n):
    return coset_reps((m, n))


def split_coset(p, comp):
    """p = w o y with w a minimal coset rep and y in the Young subgroup."""
    n = len(p)
    w = [0] * n
    for b in blocks(comp):
        imgs = sorted(p[k] for k in b)
        for k, v in zip(b, imgs):
            w[k] = v
    w = tuple(w)
    y = compose(perm_inverse(w), p)
    return w, y


def canonical_word(p, comp):
    """c(w) followed by c(y) for p = w y (the basis word used for tau_p)."""
    w, y = split_coset(p, comp)
    return lex_word(w) + lex_word(y)


def longest_shuffle(m, n):
    """w[m,n]: k -> k+n for k <= m, k -> k-m otherwise (1-based); with its lex reduced word."""
    p = tuple([k + n for k in range(m)] + [k - m for k in range(m, m + n)])
    return p, lex_word(p)


def binomial_count(m, n):
    return comb(m + n, m)
