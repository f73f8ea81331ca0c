"""Affinizations, intertwiners and R-matrices.

An affinization is stored as a GradedModule over k[z] (a single ring variable
of positive degree), free of finite rank.  All R-matrix computations are done
over the polynomial ring itself, so no truncation order is ever needed: the
entries of R_{M,N} are honest polynomials in the affinization parameters.
"""
import itertools

from .cartan import identity, lex_word, longest_shuffle, word_weight
from .linalg import Echelon
from .modules import (GradedHom, GradedModule, central_poly_action, compose, convolve,
                      check_relations, hom_space, induced_map, is_simple, isomorphic_up_to_shift,
                      pvec_add, rename_ring, shift, specialize_zero, substitute_ring, truncate,
                      _poly_in_x, _vec_sub)
from .poly import Poly, mono_from_dict, poly_gcd


class HypothesisError(ValueError):
    """A structural hypothesis (realness, scalar composition, ...) failed."""


class Affinization:
    """(M^, z): a module free over k[z] with z of positive doubled degree d2."""

    def __init__(self, module, name=None):
        if len(module.ring) != 1:
            raise ValueError("an affinization needs exactly one ring variable")
        self.module = module
        self.z, self.d2 = module.ring[0]
        if self.d2 <= 0:
            raise ValueError("z must have positive degree")
        self.name = name or module.name
        self._quot = None

    @property
    def params(self):
        return self.module.params

    @property
    def n(self):
        return self.module.n

    @property
    def rank(self):
        return self.module.dim

    def quotient(self):
        """M^/zM^ (same basis indices)."""
        if self._quot is None:
            self._quot = specialize_zero(self.module, name=(self.name or "") + "/z")
        return self._quot

    def projection(self):
        """p_M: M^ -> M^/zM^ as a GradedHom (basis vector j -> j, z -> 0)."""
        one = Poly.const(self.params.field.one)
        return GradedHom(self.module, self.quotient(), [{j: one} for j in range(self.rank)], 0)

    def z_hom(self):
        zp = Poly.var(self.z, 1, self.params.field.one)
        return GradedHom(self.module, self.module, [{j: zp} for j in range(self.rank)], self.d2)

    def renamed(self, z):
        if z == self.z:
            return self
        return Affinization(rename_ring(self.module, {self.z: z}), self.name)

    def truncated(self, order):
        return truncate(self.module, {self.z: order})

    def __repr__(self):
        return "<Affinization %s rank=%d z=%s deg2=%d>" % (self.name or "", self.rank, self.z, self.d2)


# ---------------------------------------------------------------- constructions

def symmetric_affinization(M, z="z", name=None):
    """M_z: x_k acts by x_k + z, e and tau unchanged."""
    if M.ring:
        raise ValueError("symmetric affinization needs a finite-dimensional module")
    params = M.params
    supp = sorted({a for w, _ in M.basis for a in w}, key=params.datum.pos.get)
    if not params.Q.is_symmetric_on(supp):
        raise ValueError("parameters are not symmetric on the support %s" % supp)
    degs = {params.datum.form(i, i) for i in supp}
    if len(degs) != 1:
        raise ValueError("(a_i, a_i) is not constant on the support; z has no common degree")
    d2 = 2 * degs.pop()
    zp = Poly.var(z, 1, params.field.one)
    x = []
    for cols in M.x:
        new = []
        for j, col in enumerate(cols):
            c = dict(col)
            pvec_add(c, {j: zp})
            new.append(c)
        x.append(new)
    mod = GradedModule(params, M.n, M.basis, x, M.tau, ((z, d2),),
                       name=name or ((M.name or "M") + "_" + z))
    return Affinization(mod)


def _artin_exponents(n):
    return list(itertools.product(*[range(k + 1) for k in range(n)]))


def _elementary(n, k, names):
    out = Poly()
    for sub in itertools.combinations(range(n), k):
        out = out + Poly({mono_from_dict({names[a]: 1 for a in sub}): 1})
    return out


def build_K(params, i, n, z="z", name=None):
    """K(i^n) = P(i^n)/(e_1, ..., e_{n-1}) with z = e_n.

    P(i^n) = k[x_1..x_n] with tau_k acting by f -> (f - s_k f)/(x_{k+1} - x_k).
    The quotient is free over k[e_n] with Artin basis x^a, a_k <= k - 1."""
    F = params.field
    names = ["x%d" % (k + 1) for k in range(n)]
    artin = _artin_exponents(n)
    aidx = {a: k for k, a in enumerate(artin)}
    elem = [_elementary(n, k, names) for k in range(n + 1)]
    e_deg = list(range(n + 1))
    cache = {}

    def expansion_basis(D):
        """Echelon of all e^lam x^a of x-degree D, tagged by markers."""
        if D in cache:
            return cache[D]
        ech = Echelon()
        for a in artin:
            r = D - sum(a)
            if r < 0:
                continue
            for lam in _partitions_weighted(r, n):
                p = Poly({mono_from_dict({names[k]: a[k] for k in range(n)}): F.one})
                for k, m in enumerate(lam):
                    for _ in range(m):
                        p = p * elem[k + 1]
                vec = {(0, m): c for m, c in p.terms.items()}
                vec[(1, lam, a)] = F.one
                ech.insert(vec)
        cache[D] = ech
        return ech

    def reduce_poly(p):
        """Coordinates of p in the quotient: {artin index: Poly in z}."""
        out = {}
        by_deg = {}
        for m, c in p.terms.items():
            by_deg.setdefault(sum(e for _, e in m), {})[(0, m)] = c
        for D, vec in by_deg.items():
            ech = expansion_basis(D)
            r = ech.reduce(vec)
            if any(k[0] == 0 for k in r):
                raise RuntimeError("Artin expansion failed")
            for (_, lam, a), c in r.items():
                if any(lam[:-1]):
                    continue
                pvec_add(out, {aidx[a]: Poly.var(z, lam[-1], -c)})
        return out

    def mono(a):
        return Poly({mono_from_dict({names[k]: a[k] for k in range(n)}): F.one})

    xs = []
    for k in range(n):
        xs.append([reduce_poly(mono(a) * Poly.var(names[k], 1, F.one)) for a in artin])
    taus = []
    for k in range(n - 1):
        cols = []
        for a in artin:
            f = mono(a)
            sf = f.rename({names[k]: names[k + 1], names[k + 1]: names[k]})
            num = f - sf
            q = num.div_exact(Poly.var(names[k + 1], 1, F.one) - Poly.var(names[k], 1, F.one)) \
                if num else Poly()
            cols.append(reduce_poly(q) if q else {})
        taus.append(cols)
    aii = params.datum.form(i, i)
    u2 = -aii * n * (n - 1)
    basis = [(tuple([i] * n), u2 + 2 * aii * sum(a)) for a in artin]
    mod = GradedModule(params, n, basis, xs, taus, ((z, 2 * n * aii),),
                       name=name or "K(%s^%d)" % (i, n))
    return Affinization(mod)


def _partitions_weighted(r, n):
    """Exponent vectors lam (for e_1..e_n) with sum (k+1) lam_k = r."""
    out = []

    def rec(k, rem, cur):
        if k == n:
            if rem == 0:
                out.append(tuple(cur))
            return
        w = k + 1
        for m in range(rem // w + 1):
            rec(k + 1, rem - m * w, cur + [m])

    rec(0, r, [])
    return out


def fuse_affinizations(Mh, Nh, d2, z="z", name=None, seed=0):
    """Affinization of M o N from M^ o N^ with z_M = z^{d_M/d}, z_N = z^{d_N/d}."""
    if Mh.d2 % d2 or Nh.d2 % d2:
        raise ValueError("d must divide both z-degrees")
    Mb, Nb = Mh.quotient(), Nh.quotient()
    if isomorphic_up_to_shift(convolve(Mb, Nb), convolve(Nb, Mb), seed) is None:
        raise HypothesisError("M o N and N o M are not isomorphic")
    if Mh.z == Nh.z:
        Nh = Nh.renamed(Nh.z + "_")
    P = convolve(Mh.module, Nh.module)
    zp = Poly.var(z, 1, Mh.params.field.one)
    sub = {Mh.z: zp ** (Mh.d2 // d2), Nh.z: zp ** (Nh.d2 // d2)}
    mod = substitute_ring(P, sub, ((z, d2),),
                          name=name or "(%s o %s)_%s" % (Mh.name, Nh.name, z))
    return Affinization(mod)


# ---------------------------------------------------------------- intertwiners

def phi_apply(M, k, vec):
    """phi_k on a vector: tau_k x_k - x_k tau_k on equal colors, tau_k otherwise."""
    eq, ne = {}, {}
    for j, c in vec.items():
        w = M.basis[j][0]
        (eq if w[k - 1] == w[k] else ne)[j] = c
    out = M.act(("t", k), ne) if ne else {}
    if eq:
        pvec_add(out, M.act(("t", k), M.act(("x", k), eq)))
        pvec_add(out, M.act(("x", k), M.act(("t", k), eq)), -1)
    return out


def phi_word_apply(M, word, vec):
    """phi_{i_1} ... phi_{i_l} applied to vec (rightmost first)."""
    for letter in reversed(word):
        vec = phi_apply(M, letter, vec)
    return vec


def phi_action(k, M):
    one = Poly.const(M.field.one)
    return [phi_apply(M, k, {j: one}) for j in range(M.dim)]


def _qdelta(M, a, b, vec):
    """(Q_{nu_a,nu_b}(x_a, x_b) + delta_{nu_a,nu_b}) on a vector inside one e(nu)."""
    out = {}
    for j, c in vec.items():
        nu = M.basis[j][0]
        terms = dict(M.params.Q.Q(nu[a - 1], nu[b - 1]))
        if nu[a - 1] == nu[b - 1]:
            terms[0, 0] = terms.get((0, 0), 0) + M.field.one
        pvec_add(out, _poly_in_x(M, terms, (a, b), {j: c}))
    return out


def intertwiner_failures(M):
    """Check phi_k^2 e(nu) = (Q(x_k, x_{k+1}) + delta) e(nu) and
    phi_{w^-1} phi_w e(nu) = prod over inversions (a < b, w(a) > w(b)) of the
    same factor, for every k, every w in S_n and every basis vector."""
    one = Poly.const(M.field.one)
    fails = []
    for j in range(M.dim):
        e = {j: one}
        for k in range(1, M.n):
            lhs = phi_apply(M, k, phi_apply(M, k, e))
            if _vec_sub(lhs, _qdelta(M, k, k + 1, e)):
                fails.append({"identity": "square", "k": k, "basis": j})
        for w in itertools.permutations(range(M.n)):
            word = lex_word(w)
            lhs = phi_word_apply(M, tuple(reversed(word)) + word, e)
            rhs = e
            for a in range(M.n):
                for b in range(a + 1, M.n):
                    if w[a] > w[b]:
                        rhs = _qdelta(M, a + 1, b + 1, rhs)
            if _vec_sub(lhs, rhs):
                fails.append({"identity": "inverse-product", "w": w, "basis": j})
    return fails


def rmatrix_raw(M, N, check=False):
    """R_{M,N}: M o N -> N o M, u (x) v -> phi_{w[n,m]} (v (x) u)."""
    P = convolve(M, N)
    T = convolve(N, M)
    m, n = M.n, N.n
    _, word = longest_shuffle(n, m)
    tinfo = T.meta["conv"]
    e = identity(m + n)
    one = Poly.const(M.field.one)

    def gen_image(t):
        iu, iv = t
        return phi_word_apply(T, word, {tinfo.index[e, (iv, iu)]: one})

    cols = induced_map(P, T, gen_image)
    return GradedHom(P, T, cols, check=check)


# ---------------------------------------------------------------- normalization

def z_valuation(h, var):
    """Largest s with every entry of h divisible by var^s."""
    vals = [p.valuation(var) for c in h.cols for p in c.values()]
    if not vals:
        raise ValueError("z_valuation of the zero map")
    return min(vals)


def specialize_hom(h, name=None):
    """Set every ring variable to zero in source, target and entries."""
    S, T = specialize_zero(h.source), specialize_zero(h.target)
    names = set(h.source.ring_names()) | set(h.target.ring_names())
    cols = [{i: p.set_zero(names) for i, p in c.items()} for c in h.cols]
    cols = [{i: p for i, p in c.items() if p} for c in cols]
    return GradedHom(S, T, cols, h.degree)


class NormalizedRMatrix:
    """R^ = R / content, together with the content removed and the scalar used."""

    def __init__(self, hom, content, scalar, raw_degree):
        self.hom = hom
        self.content = content          # Poly divided out (z^s in the one-variable case)
        self.scalar = scalar            # R^ = scalar * R / content
        self.raw_degree = raw_degree
        self._spec = None

    @property
    def degree(self):
        return self.hom.degree

    def specialize(self):
        """r: the map at all parameters = 0 (never zero)."""
        if self._spec is None:
            self._spec = specialize_hom(self.hom)
        return self._spec

    def __repr__(self):
        return "<NormalizedRMatrix deg2=%s content=%s>" % (self.degree, self.content)


def rmatrix_normalized(Mh, N):
    """R^_{M^,N} = z^{-s} R_{M^,N} with s maximal."""
    R = rmatrix_raw(Mh.module, N)
    if N.dim == 0 or R.is_zero():
        return NormalizedRMatrix(R, Poly(), Mh.params.field.one, R.degree)
    s = z_valuation(R, Mh.z)
    Rh = R.map_entries(lambda p: p.shift_var(Mh.z, -s))
    Rh.degree = R.degree - s * Mh.d2
    out = NormalizedRMatrix(Rh, Poly.var(Mh.z, s, Mh.params.field.one), Mh.params.field.one,
                            R.degree)
    if out.specialize().is_zero():
        raise RuntimeError("normalized R-matrix specializes to zero")
    return out


def specialize_r(nr):
    return nr.specialize()


def first_nonzero(h):
    """First nonzero scalar entry of h in (column, row) order."""
    for c in h.cols:
        for i in sorted(c):
            v = c[i].const_term()
            if v:
                return v
    return None


def rmatrix_pair(Mh, Nh, same=False):
    """Generator of HOM(M^ o N^, N^ o M^) over k[z_M, z_N]: raw R divided by
    the gcd of its entries; scaled so that its zero-specialization has first
    entry 1 (or is the identity when same=True)."""
    if Mh.z == Nh.z:
        raise ValueError("affinization parameters must have distinct names")
    R = rmatrix_raw(Mh.module, Nh.module)
    F = Mh.params.field
    entries = [p for c in R.cols for p in c.values()]
    g = poly_gcd(entries, F)
    cols = [{i: p.div_exact(g) for i, p in c.items()} for c in R.cols]
    w = {Mh.z: Mh.d2, Nh.z: Nh.d2}
    gdeg = g.weighted_degrees(w).pop()
    Rh = GradedHom(R.source, R.target, cols, R.degree - gdeg)
    spec = specialize_hom(Rh)
    if spec.is_zero():
        raise HypothesisError("R-matrix divided by its content vanishes at zero")
    if same:
        c = None
        for j, col in enumerate(spec.cols):
            if set(col) != {j} or (c is not None and col[j] != c):
                raise HypothesisError("zero-specialization of R^_{M,M} is not a scalar")
            c = col[j].const_term() if c is None else c
    else:
        c = first_nonzero(spec)
    inv = F.one / c
    Rh = Rh.map_entries(lambda p: p * inv)
    return NormalizedRMatrix(Rh, g, inv, R.degree)


def composition_polynomial(R1, R2):
    """f with R2 o R1 = f * id (R1: M o N -> N o M, R2: N o M -> M o N)."""
    C = compose(R2.hom if isinstance(R2, NormalizedRMatrix) else R2,
                R1.hom if isinstance(R1, NormalizedRMatrix) else R1)
    f = None
    for j, col in enumerate(C.cols):
        if set(col) - {j}:
            raise HypothesisError("composition is not scalar")
        v = col.get(j, Poly())
        if f is None:
            f = v
        elif v != f:
            raise HypothesisError("composition is not scalar")
    return f if f is not None else Poly()


def r_endomorphism(Rself, a, b):
    """r = (z o 1 - 1 o z)^{-1} (R^_{M,M} - id) on M^ o M^.

    Rself maps conv(M[a], M[b]) -> conv(M[b], M[a]); renaming a <-> b in the
    target identifies both with M^ o M^ (a = z o 1, b = 1 o z).  The result is
    not k[a,b]-linear: r(p b) = s(p) r(b) + (s p - p)/(a - b) b."""
    h = Rself.hom if isinstance(Rself, NormalizedRMatrix) else Rself
    F = h.source.field
    den = Poly.var(a, 1, F.one) - Poly.var(b, 1, F.one)
    one = Poly.const(F.one)
    cols = []
    for s, col in enumerate(h.cols):
        c = {t: p.rename({a: b, b: a}) for t, p in col.items()}
        pvec_add(c, {s: one}, -1)
        try:
            cols.append({t: p.div_exact(den) for t, p in c.items()})
        except ArithmeticError:
            raise HypothesisError("R^_{M,M} - id is not divisible by z o 1 - 1 o z")
    d = {a: dict(h.source.ring)[a], b: dict(h.source.ring)[b]}
    return GradedHom(h.source, h.source, cols, h.degree - d[a])


# ---------------------------------------------------------------- validation

def central_constants(A):
    """For i in supp(beta): (c_i, d_i) with a_i acting as c_i z^{d_i}, or None."""
    out = {}
    beta = A.module.beta()
    for i in sorted(beta, key=A.params.datum.pos.get):
        cols = central_poly_action(i, A.module, check=False)
        val = None
        ok = True
        for j, col in enumerate(cols):
            if set(col) != {j} or len(col[j].terms) != 1:
                ok = False
                break
            (m, c), = col[j].terms.items()
            md = dict(m)
            if set(md) - {A.z}:
                ok = False
                break
            cur = (c, md.get(A.z, 0))
            if val is not None and cur != val:
                ok = False
                break
            val = cur
        out[i] = val if ok else None
    return out


def is_strong(A, seed=0):
    """z M^/z^2 M^ is the only proper submodule of M^/z^2 M^: every homogeneous
    map from (a shift of) M = M^/zM^ into M^/z^2 M^ lands in z M^/z^2 M^."""
    T2 = A.truncated(2)
    Mb = A.quotient()
    index = T2.meta["trunc"]["index"]
    top = {index[(0,), j] for j in range(A.rank)}
    shifts = set()
    for (w, d) in Mb.basis:
        for (w2, d2) in T2.basis:
            if w2 == w:
                shifts.add(d2 - d)
    for s in sorted(shifts):
        for f in hom_space(Mb, T2, s):
            for col in f:
                if any(i in top for i in col):
                    return False
    return True


def check_affinization(A, seed=0, strong=True):
    """Report on conditions (a) free/positive degree, (b) a_i M^ != 0,
    quotient simplicity, strongness and evenness."""
    rel = check_relations(A.module)
    quot_simple = is_simple(A.quotient(), seed) if A.rank else False
    consts = central_constants(A)
    cond_b = True
    for i in consts:
        if not any(central_poly_action(i, A.module, check=False)):
            cond_b = False
    rep = {
        "relations": rel["ok"],
        "free": True,
        "positive_degree": A.d2 > 0,
        "condition_b": cond_b,
        "central": {str(i): (None if v is None else {"coeff": A.params.field.fmt(v[0]), "power": v[1]})
                    for i, v in consts.items()},
        "quotient_simple": quot_simple,
        "even": A.d2 % 4 == 0,
    }
    rep["valid"] = rep["relations"] and rep["positive_degree"] and cond_b and quot_simple
    if strong:
        rep["strong"] = rep["valid"] and is_strong(A, seed)
    if not rel["ok"]:
        rep["relation_failures"] = rel["failures"]
    return rep
