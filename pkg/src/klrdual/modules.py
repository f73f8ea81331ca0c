"""Graded modules over quiver Hecke algebras.

A GradedModule is free of finite rank over a coefficient ring k[ring vars]
(possibly no variables, i.e. a finite-dimensional k-module).  Basis vectors
carry a word nu and a doubled degree; x_k and tau_k act by column-stored
sparse matrices whose entries are Poly objects in the ring variables.  The
ring variables are central and of positive degree.
"""
import itertools
import random

from .cartan import (H2, act_on_word, coset_reps, generator_degree, lex_word, parity,
                     perm_from_word, split_coset, word_weight)
from .klr import Rewriter
from .linalg import Echelon, mat_apply, nullspace, row_space
from .poly import Poly


class RelationError(ValueError):
    pass


def pvec_add(out, vec, c=None):
    """out += c*vec for vectors {index: Poly}; c a Poly or scalar (None = 1)."""
    for k, v in vec.items():
        term = v if c is None else v * c
        cur = out.get(k)
        s = term if cur is None else cur + term
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def papply(cols, vec):
    out = {}
    for j, c in vec.items():
        col = cols[j]
        for i, v in col.items():
            term = v * c
            cur = out.get(i)
            s = term if cur is None else cur + term
            if s:
                out[i] = s
            else:
                out.pop(i, None)
    return out


class GradedModule:
    def __init__(self, params, n, basis, x, tau, ring=(), name=None, check_shape=True):
        self.params = params
        self.n = n
        self.basis = [(tuple(w), d) for w, d in basis]
        self.x = x
        self.tau = tau
        self.ring = tuple(ring)     # ((name, deg2), ...)
        self.name = name
        self.meta = {}
        self._scalar = {}
        if check_shape:
            if len(x) != n or len(tau) != max(n - 1, 0):
                raise ValueError("expected %d x-matrices and %d tau-matrices" % (n, max(n - 1, 0)))
            for w, _ in self.basis:
                if len(w) != n:
                    raise ValueError("basis word %s has length != %d" % (w, n))
            for mats in (x, tau):
                for m in mats:
                    if len(m) != len(self.basis):
                        raise ValueError("action matrix has wrong number of columns")
                    if isinstance(m, list) and any(not 0 <= i < len(self.basis)
                                                   for col in m for i in col):
                        raise ValueError("action matrix has a row index out of range")

    # ------------------------------------------------------------ basics
    @property
    def dim(self):
        return len(self.basis)

    @property
    def field(self):
        return self.params.field

    def ring_names(self):
        return [v for v, _ in self.ring]

    def ring_weights(self):
        return dict(self.ring)

    def beta(self):
        if not self.basis:
            return {}
        return word_weight(self.basis[0][0])

    def words(self):
        return sorted({w for w, _ in self.basis})

    def gens(self):
        return [("x", k) for k in range(1, self.n + 1)] + [("t", k) for k in range(1, self.n)]

    def mat(self, g):
        tag, k = g
        return self.x[k - 1] if tag == "x" else self.tau[k - 1]

    def act(self, g, vec):
        return papply(self.mat(g), vec)

    def scalar_mat(self, g):
        """Generator matrix with constant entries (finite-dimensional modules)."""
        if g not in self._scalar:
            if self.ring:
                raise ValueError("scalar matrices need a module without ring variables")
            self._scalar[g] = [{i: p.const_term() for i, p in col.items()} for col in self.mat(g)]
        return self._scalar[g]

    def blocks(self):
        out = {}
        for j, (w, d) in enumerate(self.basis):
            out.setdefault((w, d), []).append(j)
        return out

    def __repr__(self):
        return "<GradedModule %s n=%d rank=%d ring=%s>" % (self.name or "", self.n, self.dim,
                                                         self.ring_names())


def module_from_scalars(params, n, basis, x, tau, ring=(), name=None):
    """Build a module from matrices given as {(row, col): value} dicts (values scalars or Poly)."""
    dim = len(basis)

    def conv(m):
        cols = [dict() for _ in range(dim)]
        for (i, j), v in m.items():
            p = v if isinstance(v, Poly) else Poly.const(params.field(v))
            if p:
                cols[j][i] = p
        return cols

    return GradedModule(params, n, basis, [conv(m) for m in x], [conv(m) for m in tau], ring, name)


def zero_module(params, n, ring=()):
    return GradedModule(params, n, [], [[] for _ in range(n)], [[] for _ in range(max(n - 1, 0))], ring)


def trivial_module(params):
    """The module k over R(0)."""
    return GradedModule(params, 0, [((), 0)], [], [], name="1")


# ---------------------------------------------------------------- relations

def _poly_in_x(M, poly_terms, positions, vec):
    """Apply sum c * x_{p1}^{e1} x_{p2}^{e2} ... to vec; poly_terms {(e1, e2, ..): c}."""
    out = {}
    for exps, c in poly_terms.items():
        cur = vec
        for pos, e in zip(positions, exps):
            for _ in range(e):
                cur = M.act(("x", pos), cur)
        pvec_add(out, cur, c)
    return out


def _vec_sub(a, b):
    out = dict(a)
    for k, v in b.items():
        cur = out.get(k)
        s = -v if cur is None else cur - v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def check_relations(M):
    """Verify every defining relation on every basis vector; report the first
    failing instance per relation class."""
    failures = {}
    params = M.params
    weights = M.ring_weights()

    def fail(cls, **info):
        if cls not in failures:
            failures[cls] = info

    n = M.n
    for j, (nu, d) in enumerate(M.basis):
        e_j = {j: Poly.const(params.field.one)}
        # idempotents and grading
        for g in M.gens():
            tag, k = g
            if tag == "x":
                target, dg = nu, generator_degree(params, "x", nu, k)
            else:
                target = nu[:k - 1] + (nu[k], nu[k - 1]) + nu[k + 1:]
                dg = generator_degree(params, "tau", nu, k)
            for i, p in M.mat(g)[j].items():
                wi, di = M.basis[i]
                if wi != target:
                    fail("idempotent", generator=g, basis=j, row=i)
                for wd in p.weighted_degrees(weights):
                    if di + wd != d + dg:
                        fail("grading", generator=g, basis=j, row=i)
        xv = {k: M.act(("x", k), e_j) for k in range(1, n + 1)}
        tv = {k: M.act(("t", k), e_j) for k in range(1, n)}
        for k in range(1, n + 1):
            for l in range(k + 1, n + 1):
                if _vec_sub(M.act(("x", k), xv[l]), M.act(("x", l), xv[k])):
                    fail("x-commute", k=k, l=l, basis=j)
        for k in range(1, n):
            for l in range(k + 2, n):
                if _vec_sub(M.act(("t", k), tv[l]), M.act(("t", l), tv[k])):
                    fail("tau-commute", k=k, l=l, basis=j)
        for k in range(1, n):
            lhs = M.act(("t", k), tv[k])
            rhs = _poly_in_x(M, params.Q.Q(nu[k - 1], nu[k]), (k, k + 1), e_j)
            if _vec_sub(lhs, rhs):
                fail("tau-square", k=k, basis=j, word=list(nu))
            for l in range(1, n + 1):
                sl = k + 1 if l == k else (k if l == k + 1 else l)
                lhs = _vec_sub(M.act(("t", k), xv[l]), M.act(("x", sl), tv[k]))
                rhs = {}
                if nu[k - 1] == nu[k]:
                    if l == k:
                        rhs = {j: Poly.const(-params.field.one)}
                    elif l == k + 1:
                        rhs = {j: Poly.const(params.field.one)}
                if _vec_sub(lhs, rhs):
                    fail("tau-x", k=k, l=l, basis=j, word=list(nu))
        for k in range(1, n - 1):
            a = M.act(("t", k + 1), M.act(("t", k), tv[k + 1]))
            b = M.act(("t", k), M.act(("t", k + 1), tv[k]))
            rhs = {}
            if nu[k - 1] == nu[k + 1]:
                rhs = _poly_in_x(M, params.qbar(nu[k - 1], nu[k]), (k, k + 1, k + 2), e_j)
            if _vec_sub(_vec_sub(a, b), rhs):
                fail("braid", k=k, basis=j, word=list(nu))
    report = {"ok": not failures, "failures": [dict(relation=c, **v) for c, v in failures.items()]}
    return report


# ---------------------------------------------------------------- q-characters

def q_character(M):
    """{word: {deg2: multiplicity}} of a module without ring variables."""
    if M.ring:
        raise ValueError("q_character needs a finite-dimensional module; truncate first")
    out = {}
    for w, d in M.basis:
        out.setdefault(w, {})
        out[w][d] = out[w].get(d, 0) + 1
    return out


def qchar_shift(ch, s):
    return {w: {d + s: m for d, m in dd.items()} for w, dd in ch.items()}


def format_laurent(dd):
    """Doubled-exponent Laurent polynomial as a string in q."""
    parts = []
    for d in sorted(dd, reverse=True):
        m = dd[d]
        if not m:
            continue
        if d == 0:
            mono = ""
        elif d == 2:
            mono = "q"
        elif d % 2 == 0:
            mono = "q^%d" % (d // 2)
        else:
            mono = "q^(%d/2)" % d
        if not mono:
            parts.append(str(m))
        elif m == 1:
            parts.append(mono)
        else:
            parts.append("%d*%s" % (m, mono))
    return " + ".join(parts) if parts else "0"


def format_qchar(ch):
    return {"(" + ",".join(str(a) for a in w) + ")": format_laurent(dd)
            for w, dd in sorted(ch.items()) if any(dd.values())}


def ungraded_character(M):
    out = {}
    for w, _ in M.basis:
        out[w] = out.get(w, 0) + 1
    return out


def shuffle_product(ch1, ch2):
    """Shuffle product of ungraded characters {word: mult}."""
    out = {}
    for w1, m1 in ch1.items():
        for w2, m2 in ch2.items():
            n1, n2 = len(w1), len(w2)
            for pos in itertools.combinations(range(n1 + n2), n1):
                s = set(pos)
                w = []
                a = b = 0
                for k in range(n1 + n2):
                    if k in s:
                        w.append(w1[a])
                        a += 1
                    else:
                        w.append(w2[b])
                        b += 1
                w = tuple(w)
                out[w] = out.get(w, 0) + m1 * m2
    return out


# ---------------------------------------------------------------- convolution

_REWRITERS = {}


def rewriter(params, comp):
    key = (id(params), tuple(comp))
    rw = _REWRITERS.get(key)
    if rw is None or rw.params is not params:
        rw = Rewriter(params, comp)
        _REWRITERS[key] = rw
    return rw


def tau_word_degree(params, word, nu):
    """Doubled degree of tau_word e(nu)."""
    d = 0
    mu = list(nu)
    for i in reversed(word):
        d += params.deg2_tau(mu[i - 1], mu[i])
        mu[i - 1], mu[i] = mu[i], mu[i - 1]
    return d


class LazyColumns:
    """Matrix columns computed on first access (large convolution products)."""

    def __init__(self, dim, fn):
        self._cols = [None] * dim
        self._fn = fn

    def __len__(self):
        return len(self._cols)

    def __getitem__(self, j):
        c = self._cols[j]
        if c is None:
            c = self._cols[j] = self._fn(j)
        return c

    def __iter__(self):
        return (self[j] for j in range(len(self._cols)))


class ConvInfo:
    """Bookkeeping for a convolution product: factors, coset reps, index map."""

    def __init__(self, factors, comp, reps, index, tensors):
        self.factors = factors
        self.comp = comp
        self.reps = reps            # list of (perm, word)
        self.index = index          # (perm, tensor) -> basis index
        self.tensors = tensors      # list of tensor index tuples
        self.starts = [sum(comp[:b]) for b in range(len(comp))]


def convolve(*mods, name=None):
    """Convolution product M_1 o ... o M_m (an induced module)."""
    if not mods:
        raise ValueError("need at least one module")
    params = mods[0].params
    for M in mods[1:]:
        if not M.params.same_algebra(params):
            raise ValueError("convolution factors live over different algebras")
        params = M.params if M.params is params else params
    names = [v for M in mods for v in M.ring_names()]
    if len(names) != len(set(names)):
        raise ValueError("coefficient variables of factors must be disjoint: %s" % names)
    ring = tuple(r for M in mods for r in M.ring)
    comp = tuple(M.n for M in mods)
    n = sum(comp)
    reps = coset_reps(comp)
    tensors = list(itertools.product(*[range(M.dim) for M in mods]))
    basis = []
    index = {}
    for p, word in reps:
        for t in tensors:
            nu = tuple(a for M, i in zip(mods, t) for a in M.basis[i][0])
            d = sum(M.basis[i][1] for M, i in zip(mods, t)) + tau_word_degree(params, word, nu)
            index[p, t] = len(basis)
            basis.append((act_on_word(p, nu), d))
    info = ConvInfo(mods, comp, reps, index, tensors)
    rw = rewriter(params, comp)
    dim = len(basis)
    one = Poly.const(params.field.one)
    factor_cache = {}

    def factor_vec(b, t_b, a_b, yword):
        key = (b, t_b, a_b, yword)
        if key in factor_cache:
            return factor_cache[key]
        M = mods[b]
        vec = {t_b: one}
        for pos, e in enumerate(a_b):
            for _ in range(e):
                vec = M.act(("x", pos + 1), vec)
        for letter in reversed(yword):
            vec = M.act(("t", letter), vec)
        factor_cache[key] = vec
        return vec

    starts = info.starts

    split_cache = {}

    def realize(elem, t):
        """Vector in the convolution for sum c tau_sigma x^a (1 (x) v_t)."""
        out = {}
        for (sigma, a), c in elem.items():
            sp = split_cache.get(sigma)
            if sp is None:
                w, y = split_coset(sigma, comp)
                sp = split_cache[sigma] = (w, lex_word(y))
            w, yw = sp
            vecs = []
            for b, M in enumerate(mods):
                s0, m = starts[b], comp[b]
                local = tuple(l - s0 for l in yw if s0 < l < s0 + m)
                vecs.append(factor_vec(b, t[b], a[s0:s0 + m], local))
            for combo in itertools.product(*[list(v.items()) for v in vecs]):
                idx = tuple(i for i, _ in combo)
                coeff = Poly.const(c)
                for _, pv in combo:
                    coeff = coeff * pv
                if coeff:
                    pvec_add(out, {index[w, idx]: coeff})
        return out

    keys = [None] * dim
    for (p, t), j in index.items():
        keys[j] = (p, t, tuple(a for M, i in zip(mods, t) for a in M.basis[i][0]))

    def x_col(k):
        def col(j):
            p, t, nu = keys[j]
            return realize(rw.left_x(k, p, nu), t)
        return col

    def tau_col(i):
        def col(j):
            p, t, nu = keys[j]
            return realize(rw.left_tau(i, p, nu), t)
        return col

    x = [LazyColumns(dim, x_col(k)) for k in range(n)]
    tau = [LazyColumns(dim, tau_col(i)) for i in range(1, n)]
    out = GradedModule(params, n, basis, x, tau, ring, name=name)
    out.meta["conv"] = info
    return out


def induced_map(P, target, gen_image):
    """Module map out of a convolution P determined by images of the generators.

    gen_image(t) returns the image (vector in `target`) of 1 (x) v_t; the value
    on tau_w (x) v_t is tau_{c(w)} applied to it in the target."""
    info = P.meta["conv"]
    cols = [None] * P.dim
    for p, word in info.reps:
        for t in info.tensors:
            vec = gen_image(t)
            for letter in reversed(word):
                vec = target.act(("t", letter), vec)
            cols[info.index[p, t]] = vec
    return cols


# ---------------------------------------------------------------- ring operations

def truncate(M, orders, name=None):
    """k-module M / (v^{T_v}) for ring variables v (T_v = 1 sets v = 0).

    Basis vectors are v^a * b with a_v < T_v; meta['trunc'] records the layout."""
    names = M.ring_names()
    w8 = M.ring_weights()
    T = [orders.get(v, 1) for v in names]
    exps = list(itertools.product(*[range(t) for t in T]))
    index = {}
    basis = []
    for a in exps:
        for j, (w, d) in enumerate(M.basis):
            index[a, j] = len(basis)
            basis.append((w, d + sum(e * w8[v] for e, v in zip(a, names))))
    dim = len(basis)

    def conv(cols):
        new = [dict() for _ in range(dim)]
        for a in exps:
            for j, col in enumerate(cols):
                tgt = new[index[a, j]]
                for i, p in col.items():
                    for m, c in p.terms.items():
                        md = dict(m)
                        a2 = tuple(e + md.get(v, 0) for e, v in zip(a, names))
                        if all(e < t for e, t in zip(a2, T)):
                            k = index[a2, i]
                            s = tgt.get(k, 0) + c
                            if s:
                                tgt[k] = s
                            else:
                                tgt.pop(k, None)
        return [{i: Poly.const(c) for i, c in col.items()} for col in new]

    out = GradedModule(M.params, M.n, basis, [conv(c) for c in M.x], [conv(c) for c in M.tau], (),
                       name=name)
    out.meta["trunc"] = {"vars": names, "orders": T, "index": index, "source": M}
    return out


def ring_mult_matrix(Mt, var):
    """On a truncation, the matrix of multiplication by a ring variable."""
    info = Mt.meta["trunc"]
    names, T, index = info["vars"], info["orders"], info["index"]
    v = names.index(var)
    cols = [dict() for _ in range(Mt.dim)]
    for (a, j), k in index.items():
        a2 = list(a)
        a2[v] += 1
        if a2[v] < T[v]:
            cols[k][index[tuple(a2), j]] = Mt.params.field.one
    return cols


def truncate_vector(Mt, vec):
    """Image of a ring-coefficient vector of the source module in a truncation."""
    info = Mt.meta["trunc"]
    names, T, index = info["vars"], info["orders"], info["index"]
    out = {}
    for j, p in vec.items():
        for m, c in p.terms.items():
            md = dict(m)
            a = tuple(md.get(v, 0) for v in names)
            if all(e < t for e, t in zip(a, T)):
                k = index[a, j]
                out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c}


def map_ring(M, fn, ring, name=None):
    """Apply fn: Poly -> Poly to every matrix entry, with a new ring."""
    def conv(cols):
        out = []
        for col in cols:
            new = {}
            for i, p in col.items():
                q = fn(p)
                if q:
                    new[i] = q
            out.append(new)
        return out

    out = GradedModule(M.params, M.n, M.basis, [conv(c) for c in M.x], [conv(c) for c in M.tau],
                       ring, name=name or M.name)
    return out


def rename_ring(M, mapping, name=None):
    ring = tuple((mapping.get(v, v), d) for v, d in M.ring)
    out = map_ring(M, lambda p: p.rename(mapping), ring, name)
    for k, v in M.meta.items():
        if k != "conv":
            out.meta[k] = v
    return out


def substitute_ring(M, mapping, ring, name=None):
    return map_ring(M, lambda p: p.subs(mapping), ring, name)


def specialize_zero(M, names=None, name=None):
    """Set the given ring variables (default: all) to zero."""
    names = M.ring_names() if names is None else list(names)
    ring = tuple(r for r in M.ring if r[0] not in names)
    return map_ring(M, lambda p: p.set_zero(names), ring, name)


def shift(M, s2, name=None):
    """q^{s} M in doubled units: every degree raised by s2."""
    out = GradedModule(M.params, M.n, [(w, d + s2) for w, d in M.basis], M.x, M.tau, M.ring,
                       name=name or M.name)
    return out


def direct_sum(*mods, name=None):
    params = mods[0].params
    n = mods[0].n
    basis = []
    offs = []
    for M in mods:
        offs.append(len(basis))
        basis.extend(M.basis)
    x = [[] for _ in range(n)]
    tau = [[] for _ in range(max(n - 1, 0))]
    for M, o in zip(mods, offs):
        for k in range(n):
            x[k].extend({i + o: p for i, p in col.items()} for col in M.x[k])
        for k in range(n - 1):
            tau[k].extend({i + o: p for i, p in col.items()} for col in M.tau[k])
    return GradedModule(params, n, basis, x, tau, mods[0].ring, name=name)


# ---------------------------------------------------------------- submodules

def homogeneous_parts(M, vec):
    parts = {}
    for i, c in vec.items():
        parts.setdefault(M.basis[i], {})[i] = c
    return list(parts.values())


def _spin_raw(mats, seeds):
    """Echelon basis of the smallest subspace containing seeds, closed under mats."""
    ech = Echelon()
    queue = []
    for s in seeds:
        r = ech.reduce(s)
        if r:
            ech.insert(r)
            queue.append(r)
    while queue:
        v = queue.pop()
        for m in mats:
            w = mat_apply(m, v)
            if not w:
                continue
            r = ech.reduce(w)
            if r:
                ech.insert(r)
                queue.append(r)
    return ech


def _transpose(cols, dim):
    out = [dict() for _ in range(dim)]
    for j, col in enumerate(cols):
        for i, v in col.items():
            out[i][j] = v
    return out


def module_from_echelon(M, ech, name=None):
    """The submodule spanned by an invariant echelon basis, with induced actions."""
    pivots = sorted(ech.rows)
    pos = {p: k for k, p in enumerate(pivots)}
    basis = [M.basis[p] for p in pivots]
    rows = [ech.rows[p] for p in pivots]

    def induced(g):
        cols = []
        m = M.scalar_mat(g)
        for r in rows:
            img = mat_apply(m, r)
            red = ech.reduce(img)
            if red:
                raise ValueError("subspace is not invariant under %s" % (g,))
            cols.append({pos[p]: Poly.const(c) for p, c in img.items() if p in pos})
        return cols

    S = GradedModule(M.params, M.n, basis, [induced(("x", k)) for k in range(1, M.n + 1)],
                     [induced(("t", k)) for k in range(1, M.n)], name=name)
    S.meta["inclusion"] = rows
    return S


def spin(M, seeds, name=None):
    """Submodule generated by the homogeneous components of the seed vectors.

    Returns (S, inclusion columns)."""
    hs = [h for s in seeds for h in homogeneous_parts(M, s)]
    ech = _spin_raw([M.scalar_mat(g) for g in M.gens()], hs)
    S = module_from_echelon(M, ech, name)
    return S, S.meta["inclusion"]


def quotient(M, sub_vectors, name=None):
    """M / span(sub_vectors) (must be invariant).  Returns (Q, projection function)."""
    ech = row_space([h for s in sub_vectors for h in homogeneous_parts(M, s)])
    comp = [i for i in range(M.dim) if i not in ech.rows]
    pos = {i: k for k, i in enumerate(comp)}

    def project(vec):
        r = ech.reduce(vec)
        return {pos[i]: c for i, c in r.items()}

    def induced(g):
        m = M.scalar_mat(g)
        out = []
        for i in comp:
            img = project(m[i])
            out.append({k: Poly.const(c) for k, c in img.items()})
        return out

    for g in M.gens():
        m = M.scalar_mat(g)
        for r in ech.basis():
            if ech.reduce(mat_apply(m, r)):
                raise ValueError("quotient by a non-invariant subspace")
    Q = GradedModule(M.params, M.n, [M.basis[i] for i in comp],
                     [induced(("x", k)) for k in range(1, M.n + 1)],
                     [induced(("t", k)) for k in range(1, M.n)], name=name)
    return Q, project


def short_exact_sequence(M, sub_vectors):
    """0 -> S -f-> M -g-> M/S -> 0 for the submodule S spanned by sub_vectors
    (must be invariant); f and g as scalar columns."""
    S = module_from_echelon(M, row_space([h for s in sub_vectors for h in homogeneous_parts(M, s)]))
    Q, project = quotient(M, sub_vectors)
    one = M.field.one
    return S, Q, S.meta["inclusion"], [project({j: one}) for j in range(M.dim)]


def image_submodule(M, cols, name=None):
    """Image of a map given by columns into M, as a submodule."""
    return spin(M, [c for c in cols if c], name)


# ---------------------------------------------------------------- simplicity

def _local_algebra_dim(M, B):
    """dim of e_B R e_B acting on block B (spanned by restrictions of algebra elements)."""
    mats = [M.scalar_mat(g) for g in M.gens()]
    start = [{(b, k): 1 for k, b in enumerate(B)}]   # inclusion of B, keyed (row, col)
    ech = Echelon()
    queue = []
    for s in start:
        ech.insert(s)
        queue.append(s)
    while queue:
        f = queue.pop()
        cols = {}
        for (i, k), v in f.items():
            cols.setdefault(k, {})[i] = v
        for m in mats:
            new = {}
            for k, col in cols.items():
                for i2, v2 in mat_apply(m, col).items():
                    new[i2, k] = v2
            if not new:
                continue
            r = ech.reduce(new)
            if r:
                ech.insert(r)
                queue.append(r)
    Bset = set(B)
    proj = [{key: v for key, v in f.items() if key[0] in Bset} for f in ech.basis()]
    return row_space([p for p in proj if p]), ech


def find_proper_submodule(M, seed=0):
    """A proper nonzero submodule (as a list of vectors) or None if M is simple.

    Certificate: for a smallest graded block B, M is simple iff B generates M,
    the dual of B generates the dual of M, and the local algebra acting on B is
    all of End(B); otherwise the failing step yields a proper submodule (the
    seed drives the search for an invariant subspace of B)."""
    if M.dim == 0:
        raise ValueError("is_simple: zero module")
    mats = [M.scalar_mat(g) for g in M.gens()]
    blocks = M.blocks()
    rng = random.Random(seed)
    keys = sorted(blocks)
    key = min(keys, key=lambda k: (len(blocks[k]), k))
    B = blocks[key]
    one = M.field.one
    ech = _spin_raw(mats, [{b: one} for b in B])
    if len(ech) < M.dim:
        return ech.basis()
    tmats = [_transpose(m, M.dim) for m in mats]
    dech = _spin_raw(tmats, [{b: one} for b in B])
    if len(dech) < M.dim:
        # annihilator of the dual submodule is a proper submodule
        return nullspace(dech.basis(), range(M.dim))
    AB, _ = _local_algebra_dim(M, B)
    if len(AB) == len(B) ** 2:
        return None
    U = _invariant_subspace(AB.basis(), B, M.field, rng)
    if U is None:
        raise RuntimeError("could not split a non-absolutely-simple block")
    ech = _spin_raw(mats, U)
    return ech.basis()


def _invariant_subspace(alg_basis, B, field, rng):
    """Proper nonzero subspace of span(B) invariant under the given matrices."""
    import sympy
    idx = {b: k for k, b in enumerate(B)}
    d = len(B)
    mats = []
    for f in alg_basis:
        m = [[0] * d for _ in range(d)]
        for (i, k), v in f.items():
            m[idx[i]][k] = v
        mats.append(m)
    for _ in range(20):
        coeffs = [rng.randint(-9, 9) for _ in mats]
        theta = sympy.zeros(d, d)
        for c, m in zip(coeffs, mats):
            theta += c * sympy.Matrix([[_to_sym(v) for v in row] for row in m])
        lam = sympy.Symbol("lam")
        cp = theta.charpoly(lam)
        for fac, _ in sympy.factor_list(cp.as_expr())[1]:
            fm = sympy.Poly(fac, lam)
            val = sympy.zeros(d, d)
            for (e,), c in fm.terms():
                val += c * theta ** e
            ker = val.nullspace()
            if not ker:
                continue
            v = ker[0]
            vec = {B[r]: field(_from_sym(v[r])) for r in range(d) if v[r] != 0}
            # span under the local algebra
            span = _spin_raw([_mat_to_cols(m, B, field) for m in mats], [vec])
            if 0 < len(span) < d:
                return span.basis()
    return None


def _to_sym(v):
    import sympy
    if hasattr(v, "numerator"):
        return sympy.Rational(int(v.numerator), int(v.denominator))
    if hasattr(v, "v"):
        return sympy.Integer(v.v)
    return sympy.Integer(v)


def _from_sym(v):
    from fractions import Fraction
    v = v.as_numer_denom()
    return Fraction(int(v[0]), int(v[1]))


def _mat_to_cols(m, B, field):
    d = len(B)
    cols = {}
    for k in range(d):
        cols[B[k]] = {B[r]: field(m[r][k]) for r in range(d) if m[r][k]}
    return cols


def is_simple(M, seed=0):
    return find_proper_submodule(M, seed) is None


def composition_factors(M, seed=0):
    """Composition factors of a finite-dimensional module (as modules)."""
    if M.dim == 0:
        return []
    W = find_proper_submodule(M, seed)
    if W is None:
        return [M]
    S = module_from_echelon(M, row_space(W))
    Q, _ = quotient(M, W)
    return composition_factors(S, seed) + composition_factors(Q, seed)


# ---------------------------------------------------------------- homs

def hom_space(M, N, deg2=0):
    """Basis of degree-deg2 module maps M -> N, each as a list of columns."""
    if M.n != N.n:
        return []
    unknowns = []
    uidx = {}
    nblocks = N.blocks()
    for j, (w, d) in enumerate(M.basis):
        for i in nblocks.get((w, d + deg2), []):
            uidx[i, j] = len(unknowns)
            unknowns.append((i, j))
    if not unknowns:
        return []
    rows = []
    for g in M.gens():
        gm = M.scalar_mat(g)
        for j in range(M.dim):
            # (f g_M e_j)[r] - (g_N f e_j)[r]
            acc = {}
            for j2, c in gm[j].items():
                for (i, jj) in _unknowns_in_col(uidx, j2, nblocks, N, M, deg2):
                    acc.setdefault(i, {})
                    k = uidx[i, jj]
                    acc[i][k] = acc[i].get(k, 0) + c
            for i in _rows_of_col(uidx, j, nblocks, N, M, deg2):
                for r, c in N.scalar_mat(g)[i].items():
                    acc.setdefault(r, {})
                    k = uidx[i, j]
                    acc[r][k] = acc[r].get(k, 0) - c
            for r, row in acc.items():
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    sols = nullspace(rows, range(len(unknowns)))
    out = []
    for s in sols:
        cols = [dict() for _ in range(M.dim)]
        for k, v in s.items():
            i, j = unknowns[k]
            cols[j][i] = v
        out.append(cols)
    return out


def _unknowns_in_col(uidx, j, nblocks, N, M, deg2):
    w, d = M.basis[j]
    return [(i, j) for i in nblocks.get((w, d + deg2), [])]


def _rows_of_col(uidx, j, nblocks, N, M, deg2):
    w, d = M.basis[j]
    return nblocks.get((w, d + deg2), [])


def is_hom(M, N, cols):
    for g in M.gens():
        gm, gn = M.scalar_mat(g), N.scalar_mat(g)
        for j in range(M.dim):
            a = mat_apply(cols, gm[j])
            b = mat_apply(gn, cols[j])
            for k in set(a) | set(b):
                if a.get(k, 0) != b.get(k, 0):
                    return False
    return True


def is_isomorphic(M, N, seed=0):
    """A degree-0 isomorphism M -> N (list of columns) or None."""
    if M.dim != N.dim or q_character(M) != q_character(N):
        return None
    if M.dim == 0:
        return []
    homs = hom_space(M, N, 0)
    if not homs:
        return None
    rng = random.Random(seed)
    cands = [homs[0]] if len(homs) == 1 else []
    for _ in range(6):
        coeffs = [rng.randint(-20, 20) for _ in homs]
        f = [dict() for _ in range(M.dim)]
        for c, h in zip(coeffs, homs):
            if not c:
                continue
            for j, col in enumerate(h):
                for i, v in col.items():
                    s = f[j].get(i, 0) + c * v
                    if s:
                        f[j][i] = s
                    else:
                        f[j].pop(i, None)
        cands.append(f)
    for f in cands:
        if len(row_space(f)) == M.dim:
            return f
    return None


def shift_between(M, N):
    """Doubled s with q-character of N equal to that of q^s M, or None."""
    a, b = q_character(M), q_character(N)
    if set(a) != set(b):
        return None
    if not a:
        return 0
    w = min(a)
    s = min(b[w]) - min(a[w])
    return s if qchar_shift(a, s) == b else None


def isomorphic_up_to_shift(M, N, seed=0):
    """(shift, isomorphism q^shift M -> N) or None."""
    s = shift_between(M, N)
    if s is None:
        return None
    f = is_isomorphic(shift(M, s), N, seed)
    return None if f is None else (s, f)


# ---------------------------------------------------------------- parity & twist

def parity_map(words, datum):
    return {w: parity(w, datum) for w in words}


def parity_split(M):
    """(M^0, M^1): M^eps spanned by e(nu)M_k with k = S(nu) + eps mod 2."""
    datum = M.params.datum
    parts = ([], [])
    for j, (w, d) in enumerate(M.basis):
        if d % 2:
            raise ValueError("parity split needs integral degrees")
        eps = (d // 2 - parity(w, datum)) % 2
        parts[eps].append(j)
    return tuple(restrict_to_basis(M, idx) for idx in parts)


def restrict_to_basis(M, idx):
    """Submodule spanned by a generator-invariant subset of basis vectors."""
    pos = {j: k for k, j in enumerate(idx)}

    def conv(cols):
        out = []
        for j in idx:
            col = cols[j]
            if any(i not in pos for i in col):
                raise ValueError("basis subset is not invariant")
            out.append({pos[i]: p for i, p in col.items()})
        return out

    return GradedModule(M.params, M.n, [M.basis[j] for j in idx], [conv(c) for c in M.x],
                        [conv(c) for c in M.tau], M.ring)


def twist_grading(M, c):
    """K_c(M): the same space with degrees raised by H(nu), over R_c."""
    params = M.params.with_twist(c)
    basis = [(w, d + H2(w, c)) for w, d in M.basis]
    return GradedModule(params, M.n, basis, M.x, M.tau, M.ring, name=M.name)


# ---------------------------------------------------------------- central elements

def central_poly_action(i, M, check=True):
    """Matrix of a_{i,beta} = sum_nu prod_{nu_a = i} x_a e(nu)."""
    cols = []
    one = Poly.const(M.field.one)
    for j, (w, _) in enumerate(M.basis):
        vec = {j: one}
        for a, letter in enumerate(w):
            if letter == i:
                vec = M.act(("x", a + 1), vec)
        cols.append(vec)
    if check:
        for g in M.gens():
            for j in range(M.dim):
                e = {j: one}
                if _vec_sub(papply(cols, M.act(g, e)), M.act(g, cols[j])):
                    raise AssertionError("a_%s does not commute with %s" % (i, g))
    return cols


# ---------------------------------------------------------------- graded homs

class GradedHom:
    """Module map given by columns of Poly entries (k[ring]-linear)."""

    def __init__(self, source, target, cols, degree=None, check=False):
        self.source = source
        self.target = target
        self.cols = [{i: (v if isinstance(v, Poly) else Poly.const(v)) for i, v in c.items() if v}
                     for c in cols]
        if degree is None:
            degs = hom_degrees(source, target, self.cols)
            if len(degs) > 1:
                raise ValueError("map is not homogeneous: degrees %s" % sorted(degs))
            degree = degs.pop() if degs else 0
        self.degree = degree
        if check and not self.commutes():
            raise ValueError("map does not commute with the generators")

    def is_zero(self):
        return not any(self.cols)

    def apply(self, vec):
        return papply(self.cols, vec)

    def commutes(self):
        S, T = self.source, self.target
        one = Poly.const(S.field.one)
        for g in S.gens():
            for j in range(S.dim):
                a = self.apply(S.act(g, {j: one}))
                b = T.act(g, self.cols[j])
                if _vec_sub(a, b):
                    return False
        return True

    def map_entries(self, fn, source=None, target=None):
        cols = [{i: fn(p) for i, p in c.items()} for c in self.cols]
        return GradedHom(source or self.source, target or self.target,
                         [{i: p for i, p in c.items() if p} for c in cols], self.degree)

    def scalar_cols(self):
        return [{i: p.const_term() for i, p in c.items()} for c in self.cols]

    def __repr__(self):
        return "<GradedHom deg2=%s %dx%d>" % (self.degree, self.target.dim, self.source.dim)


def hom_degrees(source, target, cols):
    w = dict(source.ring)
    w.update(dict(target.ring))
    degs = set()
    for j, c in enumerate(cols):
        for i, p in c.items():
            for wd in p.weighted_degrees(w):
                degs.add(target.basis[i][1] + wd - source.basis[j][1])
    return degs


def compose(h2, h1):
    """h2 o h1."""
    return GradedHom(h1.source, h2.target, [h2.apply(c) for c in h1.cols], h1.degree + h2.degree)


def identity_hom(M):
    one = Poly.const(M.field.one)
    return GradedHom(M, M, [{j: one} for j in range(M.dim)], 0)


def scalar_hom(M, N, cols, degree=None):
    return GradedHom(M, N, [{i: Poly.const(v) for i, v in c.items() if v} for c in cols], degree)
