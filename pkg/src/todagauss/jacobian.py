"""Mumford representation of the Jacobian of  z^2 + h(x) z - f = 0.

The curves handled here have ``deg h = g + 1`` and constant ``f != 0`` (the
spectral curves of the periodic Toda flow).  They are *real* hyperelliptic:
there are two points at infinity,

* ``inf+`` where ``z ~ -h(x)`` (``z`` has a pole of order ``g + 1``),
* ``inf-`` where ``z ~ -f/h(x)`` (``z`` has a zero of order ``g + 1``).

An element ``([P, Q], d)`` stands for the degree-zero class

    A(P, Q) - (d/2) inf+ - (deg P - d/2) inf-

where ``A(P, Q)`` is the affine effective divisor cut out by ``P(x) = 0`` and
``z = Q(x)``.  The weight ``d`` is always even.  Every class has exactly one
*canonical* representative: ``P`` monic, ``deg P <= g``, ``deg Q < deg P``,
``P | Q^2 + hQ - f`` and ``d/2`` inside ``[deg P - floor(g/2), ceil(g/2)]``.
All group operations return canonical representatives, so ``==`` on
``MumfordDivisor`` is equality in the Jacobian.

With this normalisation the zero is ``([1,0],0)``, the class ``([1,0],2)`` is
``inf- - inf+`` (of order dividing ``g + 1`` because ``div(z) = (g+1)(inf- - inf+)``),
and the eigenvector divisor of a Toda state carries ``d = 2*ceil(g/2)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Polynomial, exact_div, poly_divrem, xgcd3

__all__ = [
    "SpectralCurve", "StandardFormCurve", "MumfordDivisor", "Membership",
    "JacobianError", "validate_membership", "compose", "reduce", "add", "neg",
    "sub", "scalar_mul", "zero", "torsion_generator", "equal_mod_Cn",
    "divisor_D", "divisor_D_tilde", "to_standard_form", "standard_form",
]


class JacobianError(ArithmeticError):
    """An operation produced something outside the Jacobian (an arithmetic bug)."""


# ---------------------------------------------------------------------------
# curves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralCurve:
    """The curve  z^2 + h(x) z - f = 0  with constant ``f``; genus ``deg h - 1``."""

    h: Polynomial
    f: object
    n: int

    @property
    def field(self):
        return self.h.field

    @property
    def genus(self):
        return self.h.degree - 1

    @property
    def h_poly(self):
        return self.h

    @property
    def f_poly(self):
        return Polynomial.constant(self.f, self.field)

    @property
    def weighted(self):
        """Whether the weight ``d`` is tracked (needs the two infinities above)."""
        return True

    def norm(self, Q):
        return Q * Q + self.h * Q - self.f


@dataclass(frozen=True)
class StandardFormCurve:
    """The model  y^2 = F(x)  with ``F = h^2 + 4f`` of degree ``2g + 2``."""

    F: Polynomial
    genus: int

    @property
    def field(self):
        return self.F.field

    @property
    def h_poly(self):
        return Polynomial((), self.field)

    @property
    def f_poly(self):
        return self.F

    @property
    def weighted(self):
        return False

    def norm(self, Q):
        return Q * Q - self.F


def standard_form(curve):
    h = curve.h_poly
    return StandardFormCurve(h * h + curve.f_poly * 4, curve.genus)


# ---------------------------------------------------------------------------
# divisors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MumfordDivisor:
    P: Polynomial
    Q: Polynomial
    d: int
    curve: object

    @property
    def pq(self):
        return (self.P, self.Q)

    def same_pq(self, other):
        return self.P == other.P and self.Q == other.Q

    def __repr__(self):
        return f"([{self.P}, {self.Q}], {self.d})"


class Membership:
    """Outcome of ``validate_membership``; truthy iff valid."""

    __slots__ = ("ok", "reason")

    def __init__(self, ok, reason="ok"):
        self.ok = ok
        self.reason = reason

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"Membership({self.ok}, {self.reason!r})"


def _window(deg_p, g):
    """Admissible range of ``d/2`` for a canonical divisor with ``deg P = deg_p``."""
    return deg_p - g // 2, (g + 1) // 2


def validate_membership(e):
    """Check the Mumford conditions and the weight window of ``e``."""
    P, Q, d, curve = e.P, e.Q, e.d, e.curve
    g = curve.genus
    if P.is_zero() or P.lc != 1:
        return Membership(False, "P-not-monic")
    if P.field is not curve.field or Q.field is not curve.field:
        return Membership(False, "field-mismatch")
    if P.degree > g:
        return Membership(False, "deg-P-exceeds-genus")
    if not Q.degree < P.degree:
        return Membership(False, "deg-Q-not-below-deg-P")
    N = curve.norm(Q)
    if not poly_divrem(N, P)[1].is_zero():
        return Membership(False, "P-does-not-divide-norm")
    if not curve.weighted:
        # weights are not tracked on the standard model
        return Membership(True, "ok-unweighted")
    if not isinstance(d, int) or d % 2:
        return Membership(False, "weight-not-even")
    lo, hi = _window(P.degree, g)
    if not lo <= d // 2 <= hi:
        return Membership(False, "weight-outside-window")
    if not N.is_zero() and N.degree > 2 * g + 2 - d + P.degree:
        return Membership(False, "norm-degree-bound")
    return Membership(True)


def _require_valid(e):
    m = validate_membership(e)
    if not m:
        raise JacobianError(f"{e!r} is not a valid Jacobian element ({m.reason})")
    return e


def zero(curve):
    F = curve.field
    return MumfordDivisor(Polynomial((1,), F), Polynomial((), F), 0, curve)


def torsion_generator(curve):
    """The class ``([1,0],2)``, i.e. ``inf- - inf+``."""
    F = curve.field
    return MumfordDivisor(Polynomial((1,), F), Polynomial((), F), 2, curve)


# ---------------------------------------------------------------------------
# composition and reduction
# ---------------------------------------------------------------------------

def _same_curve(a, b):
    if a.curve != b.curve:
        raise ValueError("divisors live on different curves")
    return a.curve


def _compose_raw(P1, Q1, P2, Q2, curve):
    h, f = curve.h_poly, curve.f_poly
    s, f1, f2, f3 = xgcd3(P1, P2, Q1 + Q2 + h)
    P1P2 = P1 * P2
    Pt, r = poly_divrem(P1P2, s * s)
    if not r.is_zero():
        raise JacobianError("s^2 does not divide P1*P2")
    Pt = Pt.monic()
    Qt = exact_div(f1 * P1 * Q2 + f2 * P2 * Q1 + f3 * (Q1 * Q2 + f), s)
    Qt = poly_divrem(Qt, Pt)[1]
    return Pt, Qt, s.degree


def compose(a, b):
    """Composition step: returns ``(P~, Q~)`` with ``P~ | Q~^2 + hQ~ - f``."""
    curve = _same_curve(a, b)
    Pt, Qt, _ = _compose_raw(a.P, a.Q, b.P, b.Q, curve)
    return Pt, Qt


def _pole_at_minus(Q, g):
    # -ord of (z - Q) at inf-, where z itself vanishes to order g + 1
    return Q.degree if not Q.is_zero() else -(g + 1)


def _reduction_step(P, Q, w, curve):
    """One reduction step on ``(P, Q)`` with half-weight ``w``."""
    g = curve.genus
    N = curve.norm(Q)
    Pn = exact_div(N, P).monic()
    Qn = poly_divrem(-(Q + curve.h_poly), Pn)[1]
    return Pn, Qn, w - P.degree + _pole_at_minus(Q, g)


def _negate_raw(P, Q, w, curve):
    return P, poly_divrem(-(Q + curve.h_poly), P)[1], P.degree - w


def _canonical(P, Q, w, curve):
    g = curve.genus
    # each reduction step strictly lowers deg P while it exceeds g; the window
    # adjustment then needs at most g + 1 further steps
    budget = 4 * (g + 2) + 2 * P.degree
    while P.degree > g:
        P, Q, w = _reduction_step(P, Q, w, curve)
        budget -= 1
    while True:
        lo, hi = _window(P.degree, g)
        if w > hi:
            P, Q, w = _reduction_step(P, Q, w, curve)
        elif w < lo:
            P, Q, w = _negate_raw(P, Q, w, curve)
            P, Q, w = _reduction_step(P, Q, w, curve)
            P, Q, w = _negate_raw(P, Q, w, curve)
        else:
            break
        budget -= 1
        if budget < 0:
            raise JacobianError("weight normalisation did not terminate")
    return MumfordDivisor(P, Q, 2 * w, curve)


def _check_weighted(curve):
    if not curve.weighted:
        raise NotImplementedError(
            "the group law is implemented for curves z^2 + h z - f with constant f")


def reduce(Pt, Qt, curve, d=None):
    """Reduction step(s) on a composed pair.

    With ``d`` given (the weight carried by the composition) the result is the
    canonical representative of that class.  Without it only the pair is
    reduced, looping while ``deg P > g``, and the smallest admissible weight is
    attached; such output is only meaningful in ``[P, Q]``-equality.
    """
    if not poly_divrem(curve.norm(Qt), Pt)[1].is_zero():
        raise JacobianError("P~ does not divide Q~^2 + hQ~ - f")
    if d is not None:
        _check_weighted(curve)
        return _canonical(Pt.monic(), poly_divrem(Qt, Pt)[1], d // 2, curve)
    P, Q = Pt.monic(), poly_divrem(Qt, Pt)[1]
    while P.degree > curve.genus:
        N = curve.norm(Q)
        P = exact_div(N, P).monic()
        Q = poly_divrem(-(Q + curve.h_poly), P)[1]
    lo, _ = _window(P.degree, curve.genus)
    w = max(lo, (P.degree + 1) // 2)
    return MumfordDivisor(P, Q, 2 * w, curve)


def add(a, b):
    curve = _same_curve(a, b)
    _check_weighted(curve)
    Pt, Qt, ds = _compose_raw(a.P, a.Q, b.P, b.Q, curve)
    w = a.d // 2 + b.d // 2 - ds
    return _canonical(Pt, Qt, w, curve)


def neg(a):
    """Inverse element ``[P, -(h+Q) mod P]`` with the weight mirrored."""
    P, Q, w = _negate_raw(a.P, a.Q, a.d // 2, a.curve)
    if not a.curve.weighted:
        return MumfordDivisor(P, Q, 2 * w, a.curve)
    return _canonical(P, Q, w, a.curve)


def sub(a, b):
    return add(a, neg(b))


def scalar_mul(k, a):
    """``k`` times ``a`` by double-and-add; negative ``k`` uses ``neg``."""
    if k < 0:
        return scalar_mul(-k, neg(a))
    result = zero(a.curve)
    base = a
    while k:
        if k & 1:
            result = add(result, base)
        k >>= 1
        if k:
            base = add(base, base)
    return result


def equal_mod_Cn(a, b):
    """Smallest ``k`` in ``0..n-1`` with ``a - k*G == b``, else ``(False, -1)``."""
    curve = _same_curve(a, b)
    G = torsion_generator(curve)
    c = a
    for k in range(curve.n):
        if c == b:
            return True, k
        c = sub(c, G)
    return False, -1


# ---------------------------------------------------------------------------
# distinguished divisors and the standard model
# ---------------------------------------------------------------------------

def _prod(values, one):
    out = one
    for v in values:
        out = out * v
    return out


def divisor_D(s):
    """The translation divisor ``([x, (-1)^n I_1...I_n], 2)`` of a Toda state."""
    from .toda import spectral_curve
    curve = spectral_curve(s)
    F = curve.field
    q = (-1) ** s.n * _prod(s.I, F.one)
    return _require_valid(MumfordDivisor(Polynomial.gen(F), Polynomial.constant(q, F), 2, curve))


def divisor_D_tilde(s):
    """Standard-model curve and ``([x, (-1)^n (prod I - prod V)], 2)`` on it."""
    from .toda import spectral_curve
    curve = standard_form(spectral_curve(s))
    F = curve.field
    q = (-1) ** s.n * (_prod(s.I, F.one) - _prod(s.V, F.one))
    return curve, _require_valid(
        MumfordDivisor(Polynomial.gen(F), Polynomial.constant(q, F), 2, curve))


def to_standard_form(a):
    """Transport along  (x, z) -> (x, 2z + h(x)): ``[P, (2Q + h) mod P]``."""
    curve = standard_form(a.curve)
    Q = poly_divrem(a.Q * 2 + a.curve.h_poly, a.P)[1]
    return MumfordDivisor(a.P, Q, a.d, curve)
