"""JSON encodings for scalars, polynomials, states, curves and divisors.

* rational: ``"p/q"`` (or ``"p"`` when ``q = 1``)
* rational function: ``{"num": [...], "den": [...]}`` with rational coefficients
* polynomial: list of scalar encodings, ascending degree
* Toda state: ``{"field": "Q" | "Q(T)", "n": 3, "I": [...], "V": [...]}``
* spectral curve: ``{"h": [...], "f": ..., "n": 3}``
* divisor: ``{"P": [...], "Q": [...], "d": 2}``
* tropical state: ``{"n": 2, "Q": [2, 1], "W": [1, 6]}``
* box-ball state: a ``"0101..."`` string
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import FIELDS, QQ, QQT, Polynomial, RationalFunction
from .boxball import BoxBallState, TropicalState
from .jacobian import MumfordDivisor, SpectralCurve, StandardFormCurve
from .toda import TodaState


def encode_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def decode_rational(obj):
    if isinstance(obj, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(obj, int):
        return obj
    if isinstance(obj, str):
        return QQ.coerce(Fraction(obj.strip()))
    raise ValueError(f"cannot decode rational from {obj!r}")


def encode_scalar(c):
    if isinstance(c, RationalFunction):
        return {"num": [encode_rational(a) for a in c.num.coeffs],
                "den": [encode_rational(a) for a in c.den.coeffs]}
    return encode_rational(c)


def decode_scalar(obj, field=QQ):
    if isinstance(obj, dict):
        if field is not QQT:
            raise ValueError("rational function given for a field other than Q(T)")
        num = Polynomial([decode_rational(a) for a in obj["num"]], QQ, "T")
        den = Polynomial([decode_rational(a) for a in obj.get("den", ["1"])], QQ, "T")
        return RationalFunction(num, den)
    return field.coerce(decode_rational(obj))


def encode_poly(p):
    return [encode_scalar(c) for c in p.coeffs]


def decode_poly(obj, field=QQ):
    return Polynomial([decode_scalar(c, field) for c in obj], field)


def decode_field(name):
    try:
        return FIELDS[name]
    except KeyError:
        raise ValueError(f"unknown field {name!r}; use 'Q' or 'Q(T)'") from None


def encode_state(s):
    return {"field": s.field.name, "n": s.n,
            "I": [encode_scalar(c) for c in s.I],
            "V": [encode_scalar(c) for c in s.V]}


def decode_state(obj):
    field = decode_field(obj.get("field", "Q"))
    I = [decode_scalar(c, field) for c in obj["I"]]
    V = [decode_scalar(c, field) for c in obj["V"]]
    n = obj.get("n", len(I))
    if n != len(I):
        raise ValueError("'n' does not match the length of 'I'")
    return TodaState(n, tuple(I), tuple(V), field)


def encode_curve(c):
    if isinstance(c, StandardFormCurve):
        return {"F": encode_poly(c.F), "genus": c.genus}
    return {"h": encode_poly(c.h), "f": encode_scalar(c.f), "n": c.n}


def decode_curve(obj, field=QQ):
    if "F" in obj:
        return StandardFormCurve(decode_poly(obj["F"], field), int(obj["genus"]))
    return SpectralCurve(decode_poly(obj["h"], field), decode_scalar(obj["f"], field),
                         int(obj["n"]))


def encode_divisor(e):
    return {"P": encode_poly(e.P), "Q": encode_poly(e.Q), "d": e.d}


def decode_divisor(obj, curve):
    F = curve.field
    return MumfordDivisor(decode_poly(obj["P"], F), decode_poly(obj["Q"], F),
                          int(obj["d"]), curve)


def encode_tropical(s):
    return {"n": s.n, "Q": list(s.Q), "W": list(s.W)}


def decode_tropical(obj):
    return TropicalState.of(obj["Q"], obj["W"])


def encode_boxball(s):
    return str(s)


def decode_boxball(obj):
    if isinstance(obj, dict):
        obj = obj["cells"]
    return BoxBallState.parse(obj)
