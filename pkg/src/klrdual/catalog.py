"""Named constructions: ambient algebras, small simple modules, affinizations
and the duality data of the worked examples (types D, C, B1, B2)."""
from .affinization import Affinization, build_K, symmetric_affinization
from .cartan import CartanDatum, KLRParams, QPolynomialSet
from .fields import QQ
from .modules import GradedModule, check_relations
from .poly import Poly

MAX_ELL = 5


def _ambient(form_fn, q_fn, ell, field):
    I = list(range(1, ell + 1))
    d = CartanDatum(I, {(i, j): form_fn(i, j) for i in I for j in I})
    tab = {}
    for i in I:
        for j in I:
            if i < j:
                t = q_fn(i, j)
                if t is not None:
                    tab[i, j] = t
    return KLRParams(d, QPolynomialSet(d, tab, field), field)


def ambient_A(ell, field=QQ):
    """Type A_ell, Q_{i,i+1}(u, v) = u - v, Q_{i,j} = 1 for |i - j| > 1."""
    if ell < 1:
        raise ValueError("ell must be positive")

    def form(i, j):
        return 2 if i == j else (-1 if abs(i - j) == 1 else 0)

    def q(i, j):
        return {(1, 0): 1, (0, 1): -1} if j == i + 1 else None

    return _ambient(form, q, ell, field)


def ambient_B(ell, field=QQ):
    """Type B_ell with (a_1,a_1) = 2, (a_i,a_i) = 4 otherwise;
    Q_{1,2} = u^2 - v, Q_{i,i+1} = u - v for i > 1."""
    if ell < 2:
        raise ValueError("type B needs ell >= 2")

    def form(i, j):
        if i == j:
            return 2 if i == 1 else 4
        return -2 if abs(i - j) == 1 else 0

    def q(i, j):
        if j != i + 1:
            return None
        return {(2, 0): 1, (0, 1): -1} if i == 1 else {(1, 0): 1, (0, 1): -1}

    return _ambient(form, q, ell, field)


def one_dim_module(params, word, deg2=0, name=None, check=True):
    """The module k v with e(word) v = v and all x_k, tau_k acting by 0."""
    n = len(word)
    M = GradedModule(params, n, [(tuple(word), deg2)], [[{}] for _ in range(n)],
                     [[{}] for _ in range(max(n - 1, 0))],
                     name=name or "L(%s)" % ",".join(map(str, word)))
    if check:
        rep = check_relations(M)
        if not rep["ok"]:
            raise ValueError("zero actions violate the relations for word %s: %s"
                             % (tuple(word), sorted(rep["failures"])))
    return M


def L(params, *word):
    return one_dim_module(params, word)


def L_z(params, i, z="z"):
    """L(i)_z: k[z] v with x_1 acting by z."""
    F = params.field
    M = GradedModule(params, 1, [((i,), 0)], [[{0: Poly.var(z, 1, F.one)}]], [],
                     ((z, params.deg2_x(i)),), name="L(%s)_%s" % (i, z))
    return Affinization(M)


def affinization_L12(params, z="z1"):
    """Symmetric affinization of the one-dimensional L(1,2) (x_1 = x_2 = z)."""
    return symmetric_affinization(L(params, 1, 2), z, name="L(1,2)_" + z)


def affinization_B1(params, z="z1"):
    """k[z] v over R(a_1 + a_2) in type B: x_j v = z^{(a_j,a_j)/2} v, tau_1 v = 0."""
    F = params.field
    form = params.datum.form
    x = [[{0: Poly.var(z, form(i, i) // 2, F.one)}] for i in (1, 2)]
    M = GradedModule(params, 2, [((1, 2), 0)], x, [[{}]], ((z, 4),), name="L(1,2)_" + z)
    return Affinization(M)


def module_B2(params, z="z1"):
    """Rank-2 module L(1,1,2)_z over k[z] in type B (basis u, v; deg u = 1, deg v = -1)."""
    F = params.field
    one = F.one
    zp = Poly.var(z, 1, one)
    c = Poly.const(one)
    # columns: index 0 = u, 1 = v
    x1 = [{1: -zp}, {0: -c}]
    x2 = [{1: zp}, {0: c}]
    x3 = [{0: zp}, {1: zp}]
    t1 = [{1: c}, {}]
    t2 = [{}, {}]
    basis = [((1, 1, 2), 2), ((1, 1, 2), -2)]
    M = GradedModule(params, 3, basis, [x1, x2, x3], [t1, t2], ((z, 8),),
                     name="L(1,1,2)_" + z)
    return Affinization(M)


def K_module(params, i, n, z="z"):
    return build_K(params, i, n, z)


# ---------------------------------------------------------------- the examples

def example_entries(name, ell, field=QQ):
    """(ambient params, [(beta_j, affinization M^_j)]) for the named example.

    Affinization parameters are named z1, z2, ..."""
    if name == "D":
        P = ambient_A(ell, field)
        ents = [({1: 1, 2: 1}, affinization_L12(P, "z1"))]
        ents += [({j: 1}, L_z(P, j, "z%d" % j)) for j in range(2, ell + 1)]
    elif name == "C":
        P = ambient_A(ell, field)
        ents = [({1: 2}, build_K(P, 1, 2, "z1"))]
        ents += [({j: 1}, L_z(P, j, "z%d" % j)) for j in range(2, ell + 1)]
    elif name == "B1":
        P = ambient_B(ell, field)
        ents = [({1: 1, 2: 1}, affinization_B1(P, "z1"))]
        ents += [({j + 1: 1}, L_z(P, j + 1, "z%d" % j)) for j in range(2, ell)]
    elif name == "B2":
        P = ambient_B(ell, field)
        ents = [({1: 2, 2: 1}, module_B2(P, "z1"))]
        ents += [({j + 1: 1}, L_z(P, j + 1, "z%d" % j)) for j in range(2, ell)]
    else:
        raise ValueError("unknown example %r (expected D, C, B1 or B2)" % name)
    return P, ents


def duality_datum(name, ell, field=QQ, check=True):
    """Assemble the duality datum of the named example from its affinizations."""
    from .duality import datum_from_affinizations
    if not 2 <= ell <= MAX_ELL:
        raise ValueError("ell must lie in [2, %d]" % MAX_ELL)
    if name in ("B1", "B2") and ell < 3:
        raise ValueError("examples B1/B2 need ell >= 3")
    P, ents = example_entries(name, ell, field)
    d = datum_from_affinizations(P, ents, check=check)
    d.name = "%s%d" % (name, ell)
    return d


def expected_cartan(name, ell):
    """The Cartan matrix A^D displayed for each example (rows/cols over J)."""
    if name == "D":
        n = ell
        A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for a, b in [(0, 2), (1, 2)] + [(k, k + 1) for k in range(2, n - 1)]:
            if b < n:
                A[a][b] = A[b][a] = -1
        return A
    if name == "C":
        n = ell
        A = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]
        A[1][0] = -2
        return A
    if name == "B1":
        n = ell - 1
        A = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]
        A[0][1] = -2
        return A
    if name == "B2":
        n = ell - 1
        return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]
    raise ValueError(name)
