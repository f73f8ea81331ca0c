"""Sparse exact linear algebra on dict vectors {index: scalar}.

Matrices are stored column-wise: a list (or dict) mapping column j to the
sparse image vector of basis vector j.
"""
from fractions import Fraction


def _inv(x):
    return Fraction(1, x) if isinstance(x, int) else 1 / x


def vec_add(a, b, c=1):
    """Return a + c*b as a new vector."""
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + c * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vec_iadd(a, b, c=1):
    for k, v in b.items():
        s = a.get(k, 0) + c * v
        if s:
            a[k] = s
        else:
            a.pop(k, None)
    return a


def vec_scale(a, c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def mat_apply(cols, vec):
    out = {}
    for j, c in vec.items():
        col = cols[j]
        for i, v in col.items():
            s = out.get(i, 0) + v * c
            if s:
                out[i] = s
            else:
                out.pop(i, None)
    return out


def mat_mul(a, b, ncols):
    """Columns of a∘b where b has ncols columns."""
    return [mat_apply(a, b[j]) for j in range(ncols)]


class Echelon:
    """Incrementally maintained reduced row-echelon basis of a subspace.

    Every stored row has a 1 at its pivot and 0 at all other pivots, so
    reduction is a single pass and coordinates are read off at pivots."""

    def __init__(self):
        self.rows = {}      # pivot -> vector
        self.where = {}     # column -> set of pivots whose row touches it
        self.order = []     # pivots in insertion order

    def __len__(self):
        return len(self.rows)

    def reduce(self, v):
        out = dict(v)
        for p in [k for k in v if k in self.rows]:
            c = v[p]
            vec_iadd(out, self.rows[p], -c)
        return out

    def coords(self, v):
        """Coordinates of v (assumed in the span) w.r.t. stored rows."""
        return {p: c for p, c in v.items() if p in self.rows}

    def contains(self, v):
        return not self.reduce(v)

    def _touch(self, p, row, add):
        for k in row:
            if add:
                self.where.setdefault(k, set()).add(p)
            else:
                s = self.where.get(k)
                if s is not None:
                    s.discard(p)

    def insert(self, v):
        """Add v; returns the new pivot or None if v was already in the span."""
        r = self.reduce(v)
        if not r:
            return None
        p = min(r)
        inv = _inv(r[p])
        r = {k: x * inv for k, x in r.items()}
        for q in list(self.where.get(p, ())):
            if q == p:
                continue
            row = self.rows[q]
            c = row.get(p)
            if not c:
                continue
            self._touch(q, row, False)
            vec_iadd(row, r, -c)
            self._touch(q, row, True)
        self.rows[p] = r
        self._touch(p, r, True)
        self.order.append(p)
        return p

    def basis(self):
        return [self.rows[p] for p in self.order]


def row_space(vectors):
    e = Echelon()
    for v in vectors:
        e.insert(v)
    return e


def rank(vectors):
    return len(row_space(vectors))


def nullspace(rows, unknowns):
    """Basis of {f : <row, f> = 0 for all rows}, f indexed by `unknowns`."""
    e = row_space(rows)
    out = []
    pivots = e.rows
    for j in unknowns:
        if j in pivots:
            continue
        f = {j: 1}
        for p in e.where.get(j, ()):
            c = pivots[p].get(j)
            if c:
                f[p] = -c
        out.append(f)
    return out


def complement_indices(echelon, indices):
    """Indices (in given order) that are not pivots: a basis of the quotient."""
    return [i for i in indices if i not in echelon.rows]
