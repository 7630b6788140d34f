"""Exact field and polynomial arithmetic.

Two base fields are supported:

* ``QQ``  -- the rationals, elements are ``int`` or ``fractions.Fraction``;
* ``QQT`` -- the rational function field Q(T), elements are ``RationalFunction``.

``Polynomial`` is a dense univariate polynomial over either field.  Values are
immutable; every operation returns a new object.  Combining polynomials over
different fields raises ``FieldMismatchError``.

``BivariateLaurent`` holds Laurent polynomials in a spectral parameter ``z``
whose coefficients are polynomials in ``x``; it only exists to build Lax
matrices literally and to take their determinants as an oracle.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

NEG_INF = float("-inf")


class FieldMismatchError(TypeError):
    """Raised when values over two different base fields are combined."""


# ---------------------------------------------------------------------------
# base fields
# ---------------------------------------------------------------------------

class RationalField:
    """The field Q.  Elements are kept as ``int`` when integral."""

    name = "Q"
    zero = 0
    one = 1

    def coerce(self, a):
        if isinstance(a, bool):
            return int(a)
        if isinstance(a, int):
            return a
        if isinstance(a, Fraction):
            return a.numerator if a.denominator == 1 else a
        if isinstance(a, Rational):
            return self.coerce(Fraction(a.numerator, a.denominator))
        raise FieldMismatchError(f"cannot interpret {a!r} as an element of Q")

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in Q")
        q = Fraction(a) / b
        return q.numerator if q.denominator == 1 else q

    def accepts(self, a):
        return isinstance(a, (int, Fraction)) and not isinstance(a, bool)

    def __repr__(self):
        return "QQ"


class RationalFunctionField:
    """The field Q(T).  Integers and rationals embed as constants."""

    name = "Q(T)"

    @property
    def zero(self):
        return RationalFunction.constant(0)

    @property
    def one(self):
        return RationalFunction.constant(1)

    def coerce(self, a):
        if isinstance(a, RationalFunction):
            return a
        if isinstance(a, (int, Fraction)) and not isinstance(a, bool):
            return RationalFunction.constant(a)
        raise FieldMismatchError(f"cannot interpret {a!r} as an element of Q(T)")

    def div(self, a, b):
        return a / b

    def accepts(self, a):
        return isinstance(a, RationalFunction)

    def __repr__(self):
        return "QQT"


QQ = RationalField()
QQT = RationalFunctionField()

FIELDS = {"Q": QQ, "Q(T)": QQT, "QT": QQT}


def field_of(a):
    """Field tag of a scalar; plain ints/Fractions report ``QQ``."""
    if isinstance(a, RationalFunction):
        return QQT
    if isinstance(a, (int, Fraction)):
        return QQ
    if isinstance(a, Polynomial):
        return a.field
    raise FieldMismatchError(f"{a!r} is not a field scalar")


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

def _trim(coeffs, zero):
    n = len(coeffs)
    while n and coeffs[n - 1] == zero:
        n -= 1
    return tuple(coeffs[:n])


class Polynomial:
    """Dense univariate polynomial, coefficients in ascending degree.

    The zero polynomial has an empty coefficient tuple and degree ``-inf``.
    ``var`` is only used for printing.
    """

    __slots__ = ("coeffs", "field", "var", "_hash")

    def __init__(self, coeffs=(), field=QQ, var="x", _raw=False):
        if not _raw:
            coeffs = [field.coerce(c) for c in coeffs]
            coeffs = _trim(coeffs, 0)
        self.coeffs = coeffs
        self.field = field
        self.var = var
        self._hash = None

    # construction helpers -------------------------------------------------

    @classmethod
    def _make(cls, coeffs, field, var):
        return cls(_trim(coeffs, 0), field, var, _raw=True)

    @classmethod
    def constant(cls, c, field=QQ, var="x"):
        return cls((c,), field, var)

    @classmethod
    def gen(cls, field=QQ, var="x"):
        return cls((0, 1), field, var)

    @classmethod
    def monomial(cls, k, c=1, field=QQ, var="x"):
        return cls((0,) * k + (c,), field, var)

    def _like(self, coeffs):
        return Polynomial._make(coeffs, self.field, self.var)

    def _lift(self, other):
        if isinstance(other, Polynomial):
            if other.field is not self.field:
                raise FieldMismatchError(
                    f"polynomials over {self.field!r} and {other.field!r} cannot be combined")
            return other
        try:
            c = self.field.coerce(other)
        except FieldMismatchError:
            return NotImplemented
        return Polynomial._make((c,), self.field, self.var)

    # basic queries --------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field.zero

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, x):
        acc = self.field.zero if not isinstance(x, Polynomial) else x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self):
        if not self.coeffs:
            raise ZeroDivisionError("the zero polynomial has no monic associate")
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        inv = self.field.div(1, lc)
        return self._like([c * inv for c in self.coeffs])

    def scale(self, c):
        c = self.field.coerce(c)
        if c == 0:
            return self._like(())
        return self._like([a * c for a in self.coeffs])

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._make(tuple(-c for c in self.coeffs), self.field, self.var)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self._like(())
        if len(b) == 1:
            c = b[0]
            return self._like([x * c for x in a])
        if len(a) == 1:
            c = a[0]
            return self._like([c * y for y in b])
        out = [self.field.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a non-negative integer exponent")
        result = self._like((self.field.one,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return poly_divrem(self, other)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, other):
        """Exact division; raises ``ArithmeticError`` on a nonzero remainder."""
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return exact_div(self, other)

    # comparison -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field is other.field and self.coeffs == other.coeffs
        try:
            c = self.field.coerce(other)
        except FieldMismatchError:
            return NotImplemented
        return self.coeffs == ((c,) if c != 0 else ())

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.name, self.coeffs))
        return self._hash

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if isinstance(c, RationalFunction) and not c.is_constant():
                cs = f"({c})"
            else:
                cs = str(c)
                if "/" in cs or (" " in cs):
                    cs = f"({cs})"
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            if mono and cs == "1":
                term = mono
            elif mono and cs == "-1":
                term = "-" + mono
            elif mono:
                term = f"{cs}*{mono}"
            else:
                term = cs
            terms.append(term)
        s = " + ".join(terms)
        return s.replace("+ -", "- ")


def _check_same_field(*polys):
    f = polys[0].field
    for p in polys[1:]:
        if p.field is not f:
            raise FieldMismatchError("polynomials over different fields")
    return f


def poly_divrem(a, b):
    """Quotient and remainder of ``a`` by ``b`` (``b`` nonzero)."""
    field = _check_same_field(a, b)
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if a.degree < b.degree:
        return a._like(()), a
    r = list(a.coeffs)
    db = len(b.coeffs) - 1
    bc = b.coeffs
    inv = field.div(1, bc[-1])
    q = [field.zero] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db]
        if c == 0:
            continue
        c = c * inv if inv != 1 else c
        q[k] = c
        for j in range(db):
            r[k + j] = r[k + j] - c * bc[j]
        r[k + db] = field.zero
    return a._like(q), a._like(r[:db])


def exact_div(a, b):
    q, r = poly_divrem(a, b)
    if not r.is_zero():
        raise ArithmeticError(f"inexact polynomial division: remainder {r}")
    return q


def divides(a, b):
    """True when ``a`` divides ``b`` (``a`` nonzero)."""
    return poly_divrem(b, a)[1].is_zero()


def xgcd2(a, b):
    """Extended Euclid: ``(g, c1, c2)`` with ``g`` monic and ``g = c1*a + c2*b``."""
    _check_same_field(a, b)
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    zero, one = a._like(()), a._like((a.field.one,))
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while not r1.is_zero():
        q, r = poly_divrem(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = a.field.div(1, r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def xgcd3(a, b, c):
    """``(s, f1, f2, f3)`` with ``s = gcd(a, b, c) = f1*a + f2*b + f3*c``, ``s`` monic."""
    _check_same_field(a, b, c)
    if a.is_zero() and b.is_zero() and c.is_zero():
        raise ValueError("gcd of three zero polynomials is undefined")
    zero = a._like(())
    if a.is_zero() and b.is_zero():
        g, _, e = xgcd2(zero, c)
        return g, zero, zero, e
    d, e1, e2 = xgcd2(a, b)
    s, c1, c2 = xgcd2(d, c)
    return s, c1 * e1, c1 * e2, c2


def poly_gcd(a, b):
    if a.is_zero() and b.is_zero():
        return a
    return xgcd2(a, b)[0] if not b.is_zero() else a.monic()


# ---------------------------------------------------------------------------
# Q[T] helpers used by RationalFunction
# ---------------------------------------------------------------------------
# Numerators and denominators are kept as tuples of Python ints / Fractions.
# The gcd is computed on primitive integer polynomials with a pseudo-remainder
# sequence, which keeps coefficient growth far below the naive rational Euclid.

def _content_int(coeffs):
    g = 0
    for c in coeffs:
        g = math.gcd(g, c)
    return g


def _to_primitive_int(coeffs):
    """Scale a rational coefficient tuple to a primitive integer tuple."""
    den = 1
    for c in coeffs:
        if isinstance(c, Fraction):
            den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = _content_int(ints)
    if ints and ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def _int_prem(a, b):
    """Pseudo-remainder of integer polynomials (lists, ascending)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [c * lb for c in a]
        for j, c in enumerate(b):
            a[shift + j] -= la * c
        while a and a[-1] == 0:
            a.pop()
    return a


@lru_cache(maxsize=65536)
def _int_poly_gcd(a, b):
    """Monic-normalised-to-primitive gcd of two integer polynomials (tuples)."""
    a, b = list(a), list(b)
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return tuple(_to_primitive_int(a)) if a else ()
    a = _to_primitive_int(a)
    b = _to_primitive_int(b)
    while b:
        if len(b) == 1:
            return (1,)
        r = _int_prem(a, b)
        a, b = b, (_to_primitive_int(r) if r else [])
    return tuple(a)


def _qpoly_gcd(a, b):
    """Monic gcd over Q of two coefficient tuples."""
    if not a and not b:
        return ()
    if len(a) == 1 and a[0] != 0 or len(b) == 1 and b[0] != 0:
        return (1,)
    g = _int_poly_gcd(tuple(_to_primitive_int(a)) if a else (),
                      tuple(_to_primitive_int(b)) if b else ())
    lc = g[-1]
    return tuple(QQ.div(c, lc) for c in g)


def _qpoly(coeffs):
    return Polynomial._make(coeffs, QQ, "T")


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RationalFunction:
    """Element ``num/den`` of Q(T), reduced with a monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _reduced=False):
        if not isinstance(num, Polynomial):
            num = Polynomial(num if isinstance(num, (list, tuple)) else (num,), QQ, "T")
        if den is None:
            den = _qpoly((1,))
        elif not isinstance(den, Polynomial):
            den = Polynomial(den if isinstance(den, (list, tuple)) else (den,), QQ, "T")
        if num.field is not QQ or den.field is not QQ:
            raise FieldMismatchError("numerator and denominator must be polynomials over Q")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = _qpoly((1,))
            else:
                if den.degree > 0:
                    g = _qpoly_gcd(num.coeffs, den.coeffs)
                    if len(g) > 1:
                        gp = _qpoly(g)
                        num = exact_div(num, gp)
                        den = exact_div(den, gp)
                lc = den.lc
                if lc != 1:
                    inv = QQ.div(1, lc)
                    num = num.scale(inv)
                    den = den.scale(inv)
        self.num = Polynomial._make(num.coeffs, QQ, "T")
        self.den = Polynomial._make(den.coeffs, QQ, "T")
        self._hash = None

    @classmethod
    def constant(cls, c):
        c = QQ.coerce(c)
        return cls(_qpoly((c,) if c != 0 else ()), _qpoly((1,)), _reduced=True)

    @classmethod
    def T(cls, k=1):
        """The monomial ``T**k`` (``k`` may be negative)."""
        if k >= 0:
            return cls(_qpoly((0,) * k + (1,)), _qpoly((1,)), _reduced=True)
        return cls(_qpoly((1,)), _qpoly((0,) * (-k) + (1,)), _reduced=True)

    def is_constant(self):
        return self.num.degree <= 0 and self.den.degree == 0

    def __bool__(self):
        return not self.num.is_zero()

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return RationalFunction.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return RationalFunction.constant(0)
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        # cross-cancel so the product is already reduced
        if d2.degree > 0 and n1.degree > 0:
            g = _qpoly_gcd(n1.coeffs, d2.coeffs)
            if len(g) > 1:
                gp = _qpoly(g)
                n1, d2 = exact_div(n1, gp), exact_div(d2, gp)
        if d1.degree > 0 and n2.degree > 0:
            g = _qpoly_gcd(n2.coeffs, d1.coeffs)
            if len(g) > 1:
                gp = _qpoly(g)
                n2, d1 = exact_div(n2, gp), exact_div(d1, gp)
        num, den = n1 * n2, d1 * d2
        lc = den.lc
        if lc != 1:
            inv = QQ.div(1, lc)
            num, den = num.scale(inv), den.scale(inv)
        return RationalFunction(num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero in Q(T)")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.num ** k, self.den ** k, _reduced=True)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num.coeffs == other.num.coeffs and self.den.coeffs == other.den.coeffs
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.num.is_zero()
            return self.den.coeffs == (1,) and self.num.coeffs == (other,)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.num[0])
            else:
                self._hash = hash((self.num.coeffs, self.den.coeffs))
        return self._hash

    def __call__(self, t):
        """Evaluate at a rational ``t``."""
        return QQ.div(self.num(t), self.den(t))

    def __repr__(self):
        if self.den.coeffs == (1,):
            return repr(self.num)
        return f"({self.num})/({self.den})"


def t_adic_valuation(r):
    """Order of vanishing at ``T = 0``; ``math.inf`` for zero."""
    if isinstance(r, (int, Fraction)):
        return math.inf if r == 0 else 0
    if r.num.is_zero():
        return math.inf
    return _low_order(r.num.coeffs) - _low_order(r.den.coeffs)


def _low_order(coeffs):
    for k, c in enumerate(coeffs):
        if c != 0:
            return k
    raise ValueError("zero polynomial has no lowest term")


# ---------------------------------------------------------------------------
# Laurent polynomials in z with coefficients in F[x]
# ---------------------------------------------------------------------------

class BivariateLaurent:
    """Finite sum  sum_k p_k(x) z**k  with ``k`` any integer."""

    __slots__ = ("terms", "field")

    def __init__(self, terms=None, field=QQ):
        clean = {}
        for k, p in (terms or {}).items():
            if not isinstance(p, Polynomial):
                p = Polynomial.constant(p, field)
            elif p.field is not field:
                raise FieldMismatchError("Laurent coefficient over the wrong field")
            if not p.is_zero():
                clean[int(k)] = p
        self.terms = clean
        self.field = field

    @classmethod
    def from_poly(cls, p):
        return cls({0: p}, p.field)

    @classmethod
    def z(cls, k=1, coeff=1, field=QQ):
        return cls({k: Polynomial.constant(coeff, field)}, field)

    def _coerce(self, other):
        if isinstance(other, BivariateLaurent):
            if other.field is not self.field:
                raise FieldMismatchError("Laurent polynomials over different fields")
            return other
        if isinstance(other, Polynomial):
            return BivariateLaurent.from_poly(other)
        try:
            return BivariateLaurent({0: Polynomial.constant(other, self.field)}, self.field)
        except FieldMismatchError:
            return NotImplemented

    def __getitem__(self, k):
        p = self.terms.get(k)
        return p if p is not None else Polynomial((), self.field)

    def is_zero(self):
        return not self.terms

    def z_support(self):
        return sorted(self.terms)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, p in other.terms.items():
            out[k] = out[k] + p if k in out else p
        return BivariateLaurent(out, self.field)

    __radd__ = __add__

    def __neg__(self):
        return BivariateLaurent({k: -p for k, p in self.terms.items()}, self.field)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for i, p in self.terms.items():
            for j, q in other.terms.items():
                pq = p * q
                out[i + j] = out[i + j] + pq if (i + j) in out else pq
        return BivariateLaurent(out, self.field)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            zk = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            parts.append(f"({self.terms[k]})" + (f"*{zk}" if zk else ""))
        return " + ".join(parts)


def laurent_det(m):
    """Determinant of a square matrix of ``BivariateLaurent`` by Laplace expansion.

    Expansion runs along rows with the minors memoised on the set of remaining
    columns, so the cost is ``O(n * 2**n)`` products instead of ``n!``.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("laurent_det needs a square matrix")
    if n == 0:
        return BivariateLaurent({0: 1})
    field = next((e.field for row in m for e in row if isinstance(e, BivariateLaurent)), QQ)
    rows = [[e if isinstance(e, BivariateLaurent) else BivariateLaurent({0: e}, field)
             for e in row] for row in m]

    @lru_cache(maxsize=None)
    def minor(r, cols):
        if r == n:
            return BivariateLaurent({0: Polynomial.constant(1, field)}, field)
        acc = BivariateLaurent({}, field)
        for pos, c in enumerate(cols):
            e = rows[r][c]
            if e.is_zero():
                continue
            sub = minor(r + 1, cols[:pos] + cols[pos + 1:])
            term = e * sub
            acc = acc - term if pos % 2 else acc + term
        return acc

    return minor(0, tuple(range(n)))
