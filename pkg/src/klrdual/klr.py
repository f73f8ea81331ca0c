"""Normal forms in the quiver Hecke algebra R(beta) e(nu).

An algebra element with right idempotent e(nu) is a dict
{(perm, exps): coeff} standing for sum coeff * tau_{hat perm} x^exps e(nu),
where hat perm is the canonical word of perm relative to a fixed composition
(lex-smallest word of the minimal coset representative followed by the
lex-smallest word of the Young-subgroup part).  Products g * (normal form) are
rewritten with the defining relations; every rewriting step strictly lowers
the crossing length of the correction terms, which guarantees termination.
"""
from .cartan import (act_on_word, canonical_word, identity, is_left_descent, left_mul,
                     perm_from_word)


def _add(out, key, c):
    s = out.get(key, 0) + c
    if s:
        out[key] = s
    else:
        out.pop(key, None)


def _iadd(out, elem, c=1):
    for k, v in elem.items():
        _add(out, k, c * v)
    return out


def _shift(elem, a):
    if not any(a):
        return elem
    return {(p, tuple(x + y for x, y in zip(e, a))): c for (p, e), c in elem.items()}


class Rewriter:
    def __init__(self, params, comp):
        self.params = params
        self.comp = tuple(comp)
        self.n = sum(comp)
        self.zero_exp = (0,) * self.n
        self._cw = {}
        self._tau = {}
        self._x = {}
        self._red = {}
        self._front = {}
        self.one = params.field.one

    # ------------------------------------------------------------ words
    def cw(self, p):
        w = self._cw.get(p)
        if w is None:
            w = canonical_word(p, self.comp)
            self._cw[p] = w
        return w

    def make_front(self, word, c):
        """Rewrite a reduced word (with c a left descent) to start with c.

        Returns (new word, list of (word before a 3-term braid move, position))."""
        key = (word, c)
        if key in self._front:
            return self._front[key]
        a = word[0]
        if a == c:
            res = (word, [])
        elif abs(a - c) > 1:
            t2, mv = self.make_front(word[1:], c)
            res = ((c, a) + t2[1:], [((a,) + b, p + 1) for b, p in mv])
        else:
            t2, mv1 = self.make_front(word[1:], c)
            mv1 = [((a,) + b, p + 1) for b, p in mv1]
            r2, mv2 = self.make_front(t2[1:], a)
            mv2 = [((a, c) + b, p + 2) for b, p in mv2]
            before = (a, c) + r2
            res = ((c, a, c) + r2[1:], mv1 + mv2 + [(before, 0)])
        self._front[key] = res
        return res

    def to_target(self, word, target):
        moves = []
        prefix = ()
        while word:
            w2, mv = self.make_front(word, target[0])
            moves += [(prefix + b, p + len(prefix)) for b, p in mv]
            prefix = prefix + (target[0],)
            word, target = w2[1:], target[1:]
        return moves

    # ------------------------------------------------------------ corrections
    def _move_correction(self, before, p, nu):
        """Normal form of tau_before - tau_after for the braid move at position p."""
        a, b = before[p], before[p + 1]
        k = min(a, b)
        post = before[p + 3:]
        mu = act_on_word(perm_from_word(post, self.n), nu)
        if mu[k - 1] != mu[k + 1]:
            return {}
        sign = 1 if a == k + 1 else -1
        poly = {}
        for (e1, e2, e3), c in self.params.qbar(mu[k - 1], mu[k]).items():
            ex = [0] * self.n
            ex[k - 1] += e1
            ex[k] += e2
            ex[k + 1] += e3
            _add(poly, tuple(ex), sign * c)
        if not poly:
            return {}
        elem = self.left_poly(poly, self.reduced_nf(post, nu), nu)
        for letter in reversed(before[:p]):
            elem = self.left_tau_elem(letter, elem, nu)
        return elem

    def reduced_nf(self, word, nu):
        """Normal form of tau_word e(nu) for a reduced word."""
        key = (word, nu)
        if key in self._red:
            return self._red[key]
        p = perm_from_word(word, self.n)
        target = self.cw(p)
        out = {(p, self.zero_exp): self.one}
        if word != target:
            for before, pos in self.to_target(word, target):
                _iadd(out, self._move_correction(before, pos, nu))
        self._red[key] = out
        return out

    # ------------------------------------------------------------ generators
    def left_tau(self, i, p, nu):
        key = (i, p, nu)
        if key in self._tau:
            return self._tau[key]
        if not is_left_descent(i, p):
            out = dict(self.reduced_nf((i,) + self.cw(p), nu))
        else:
            word, moves = self.make_front(self.cw(p), i)
            rest = word[1:]
            mu = act_on_word(perm_from_word(rest, self.n), nu)
            poly = {}
            for (a, b), c in self.params.Q.Q(mu[i - 1], mu[i]).items():
                ex = [0] * self.n
                ex[i - 1] += a
                ex[i] += b
                _add(poly, tuple(ex), c)
            out = self.left_poly(poly, self.reduced_nf(rest, nu), nu) if poly else {}
            for before, pos in moves:
                corr = self._move_correction(before, pos, nu)
                if corr:
                    _iadd(out, self.left_tau_elem(i, corr, nu))
        self._tau[key] = out
        return out

    def left_x(self, k, p, nu):
        """Normal form of x_{k+1} tau_{hat p} e(nu) (k is 0-based)."""
        key = (k, p, nu)
        if key in self._x:
            return self._x[key]
        word = self.cw(p)
        if not word:
            ex = [0] * self.n
            ex[k] = 1
            out = {(p, tuple(ex)): self.one}
        else:
            i = word[0]
            p2 = left_mul(i, p)
            k2 = i if k == i - 1 else (i - 1 if k == i else k)
            out = self.left_tau_elem(i, self.left_x(k2, p2, nu), nu)
            mu = act_on_word(p2, nu)
            if mu[i - 1] == mu[i]:
                if k == i - 1:
                    _add(out, (p2, self.zero_exp), -self.one)
                elif k == i:
                    _add(out, (p2, self.zero_exp), self.one)
        self._x[key] = out
        return out

    # ------------------------------------------------------------ on elements
    def left_tau_elem(self, i, elem, nu):
        out = {}
        for (p, a), c in elem.items():
            _iadd(out, _shift(self.left_tau(i, p, nu), a), c)
        return out

    def left_x_elem(self, k, elem, nu):
        out = {}
        for (p, a), c in elem.items():
            _iadd(out, _shift(self.left_x(k, p, nu), a), c)
        return out

    def left_poly(self, poly, elem, nu):
        out = {}
        for ex, c in poly.items():
            cur = elem
            for k, e in enumerate(ex):
                for _ in range(e):
                    cur = self.left_x_elem(k, cur, nu)
            _iadd(out, cur, c)
        return out

    def word_nf(self, word, nu):
        """Normal form of tau_word e(nu) for an arbitrary (possibly non-reduced) word."""
        nu = tuple(nu)
        elem = {(identity(self.n), self.zero_exp): self.one}
        for letter in reversed(word):
            elem = self.left_tau_elem(letter, elem, nu)
        return elem
