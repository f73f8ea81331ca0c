"""Exact scalar fields: rationals (gmpy2.mpq, else fractions.Fraction) and prime fields GF(p)."""
from fractions import Fraction

try:
    from gmpy2 import mpq as _rational
except ImportError:     # pragma: no cover
    _rational = Fraction


class Rationals:
    name = "rational"
    characteristic = 0

    def __init__(self):
        self.zero = _rational(0)
        self.one = _rational(1)

    def __call__(self, x):
        if isinstance(x, _rational):
            return x
        if isinstance(x, str):
            return _rational(Fraction(x.strip()))
        if isinstance(x, Fraction):
            return _rational(x.numerator, x.denominator)
        return _rational(x)

    def fmt(self, x):
        x = self(x)
        n, d = int(x.numerator), int(x.denominator)
        return str(n) if d == 1 else "%d/%d" % (n, d)

    def inv(self, x):
        return 1 / self(x)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class Fp:
    """Element of GF(p).  Mixed arithmetic with plain ints is allowed."""
    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _c(self, o):
        if isinstance(o, Fp):
            return o.v
        if isinstance(o, int):
            return o
        if isinstance(o, Fraction):
            return o.numerator * pow(o.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, o):
        o = self._c(o)
        return NotImplemented if o is NotImplemented else Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._c(o)
        return NotImplemented if o is NotImplemented else Fp(self.v - o, self.p)

    def __rsub__(self, o):
        o = self._c(o)
        return NotImplemented if o is NotImplemented else Fp(o - self.v, self.p)

    def __mul__(self, o):
        o = self._c(o)
        return NotImplemented if o is NotImplemented else Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._c(o)
        if o is NotImplemented:
            return NotImplemented
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, o):
        o = self._c(o)
        return Fp(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e):
        return Fp(pow(self.v, e, self.p), self.p)

    def __eq__(self, o):
        o = self._c(o)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "%d" % self.v


class PrimeField:
    characteristic = None

    def __init__(self, p):
        p = int(p)
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError("fp:%d is not a prime field" % p)
        self.p = p
        self.characteristic = p
        self.name = "fp:%d" % p
        self.zero = Fp(0, p)
        self.one = Fp(1, p)

    def __call__(self, x):
        if isinstance(x, Fp):
            return x
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            return Fp(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return Fp(int(x), self.p)

    def fmt(self, x):
        return str(self(x).v)

    def inv(self, x):
        return self.one / self(x)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return "GF(%d)" % self.p


QQ = Rationals()


def field_from_spec(spec):
    """Parse the --field option: 'rational' or 'fp:<p>'."""
    if spec is None or spec in ("rational", "QQ", "Q"):
        return QQ
    if spec.startswith("fp:"):
        return PrimeField(spec[3:])
    raise ValueError("unknown field %r (expected rational or fp:<p>)" % spec)
