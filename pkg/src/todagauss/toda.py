"""Discrete periodic Toda flow, Lax matrices, minors and the eigenvector map.

Indices follow the usual 1-based cyclic convention: ``state.I_(i)`` is
``I_i`` with ``i`` read modulo ``n``.  The characteristic matrices are

* ``MR``: ``L_t(z) - x E`` with ``L_t = M_t R_t``  (diagonal ``I_i + V_{i-1}``),
* ``RM``: ``L_{t+1}(z) - x E`` with ``L_{t+1} = R_t M_t``  (diagonal ``I_i + V_i``).

Trimming the first ``k`` and last ``l`` rows/columns (``k + l >= 1``) removes
both corner entries, so every trimmed minor is tridiagonal and free of ``z``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .algebra import (QQ, QQT, BivariateLaurent, Polynomial,
                      field_of, laurent_det, poly_divrem)
from .jacobian import MumfordDivisor, SpectralCurve, validate_membership, JacobianError

__all__ = [
    "TodaState", "MinorSpec", "EigenvectorData", "LaxMatrices", "SpectralCurve",
    "FlowDomainError", "ZeroEntryError", "VanishingDenominatorError", "DomainExitError",
    "toda_step", "toda_flow", "toda_step_recursive_check", "lax_matrices",
    "characteristic_matrix", "trimmed_matrix", "minor_det", "spectral_curve", "uvw",
    "eigenvector_map", "eigenvector_components", "cyclic_shift", "identity_checks",
]


class FlowDomainError(ArithmeticError):
    """The flow is undefined at this state."""

    def __init__(self, msg, index=None):
        super().__init__(msg)
        self.index = index


class ZeroEntryError(FlowDomainError):
    pass


class VanishingDenominatorError(FlowDomainError):
    pass


class DomainExitError(FlowDomainError):
    """Some ``I_i^{t+1}`` is zero, so the next step would divide by zero."""


@dataclass(frozen=True)
class TodaState:
    n: int
    I: tuple
    V: tuple
    field: object = QQ

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("a Toda state needs n >= 2")
        if len(self.I) != self.n or len(self.V) != self.n:
            raise ValueError("I and V must both have length n")
        object.__setattr__(self, "I", tuple(self.field.coerce(c) for c in self.I))
        object.__setattr__(self, "V", tuple(self.field.coerce(c) for c in self.V))

    @classmethod
    def of(cls, I, V, field=None):
        """Build a state, inferring the field from the entries when not given."""
        if field is None:
            field = QQT if any(field_of(c) is QQT for c in (*I, *V)) else QQ
        return cls(len(I), tuple(I), tuple(V), field)

    def I_(self, i):
        return self.I[(i - 1) % self.n]

    def V_(self, i):
        return self.V[(i - 1) % self.n]


def _prod(values, one):
    out = one
    for v in values:
        out = out * v
    return out


# ---------------------------------------------------------------------------
# the flow
# ---------------------------------------------------------------------------

def toda_step(s):
    """One step of the flow, via the explicit closed form."""
    F, n = s.field, s.n
    for i in range(1, n + 1):
        if s.I_(i) == 0:
            raise ZeroEntryError(f"I_{i} is zero", i)
    ratio = F.div(_prod(s.V, F.one), _prod(s.I, F.one))
    I_new = []
    for i in range(1, n + 1):
        den, term = F.one, F.one
        for l in range(1, n):
            term = term * F.div(s.V_(i - l), s.I_(i - l))
            den = den + term
        if den == 0:
            raise VanishingDenominatorError(f"closed-form denominator vanishes at i={i}", i)
        Ii = s.V_(i) + F.div(s.I_(i) * (1 - ratio), den)
        if Ii == 0:
            raise DomainExitError(f"I_{i} vanishes after the step", i)
        I_new.append(Ii)
    V_new = [F.div(s.I_(i + 1) * s.V_(i), I_new[i - 1]) for i in range(1, n + 1)]
    return TodaState(n, tuple(I_new), tuple(V_new), F)


def toda_flow(s, steps):
    """States ``s, T(s), ..., T^steps(s)``."""
    out = [s]
    for _ in range(steps):
        out.append(toda_step(out[-1]))
    return out


def toda_step_recursive_check(s, s_next):
    """Do ``s -> s_next`` satisfy both update rules for every ``i``?"""
    if s.n != s_next.n:
        raise ValueError("states have different sizes")
    n = s.n
    for i in range(1, n + 1):
        if s_next.I_(i) != s.I_(i) + s.V_(i) - s_next.V_(i - 1):
            return False
        if s_next.V_(i) * s_next.I_(i) != s.I_(i + 1) * s.V_(i):
            return False
    return True


def cyclic_shift(s, k=1):
    """``sigma^k``: ``(I_i, V_i) -> (I_{i+k}, V_{i+k})``."""
    k %= s.n
    return TodaState(s.n, s.I[k:] + s.I[:k], s.V[k:] + s.V[:k], s.field)


# ---------------------------------------------------------------------------
# Lax matrices
# ---------------------------------------------------------------------------

class LaxMatrices(NamedTuple):
    M: list
    R: list
    L_MR: list
    L_RM: list


def _matmul(A, B):
    n = len(A)
    return [[sum((A[i][k] * B[k][j] for k in range(n)), A[0][0] * 0) for j in range(n)]
            for i in range(n)]


def _need_n3(s):
    if s.n < 3:
        raise ValueError("the matrix/curve pipeline needs n >= 3")


def lax_matrices(s):
    """``M(z)``, ``R(z)`` and the two products ``L = MR`` and ``L' = RM``."""
    _need_n3(s)
    F, n = s.field, s.n

    def c(v):
        return BivariateLaurent({0: Polynomial.constant(v, F)}, F)

    zero = BivariateLaurent({}, F)
    M = [[zero] * n for _ in range(n)]
    R = [[zero] * n for _ in range(n)]
    for i in range(n):
        M[i][i] = c(1)
        R[i][i] = c(s.I[i])
        if i + 1 < n:
            M[i + 1][i] = c(s.V[i])
            R[i][i + 1] = c(1)
    M[0][n - 1] = BivariateLaurent({-1: Polynomial.constant(s.V[n - 1], F)}, F)
    R[n - 1][0] = BivariateLaurent({1: Polynomial.constant(1, F)}, F)
    return LaxMatrices(M, R, _matmul(M, R), _matmul(R, M))


def characteristic_matrix(L):
    """``L - x E``."""
    F = L[0][0].field
    x = BivariateLaurent({0: Polynomial.gen(F)}, F)
    return [[e - x if i == j else e for j, e in enumerate(row)] for i, row in enumerate(L)]


@dataclass(frozen=True)
class MinorSpec:
    """Which trimmed minor: drop ``k`` leading and ``l`` trailing rows/columns.

    ``variant`` is ``"MR"`` or ``"RM"``; ``shift`` applies ``sigma^shift`` to
    the state first (``shift=-1`` gives the ``sigma^{-1}(MR)`` minors).
    """

    k: int
    l: int
    variant: str = "MR"
    shift: int = 0


def _tridiagonal(s, variant):
    """Diagonal entries and off-diagonal products of the characteristic matrix."""
    n = s.n
    if variant == "MR":
        diag = [s.I_(i) + s.V_(i - 1) for i in range(1, n + 1)]
        offd = [s.I_(i) * s.V_(i) for i in range(1, n + 1)]
    elif variant == "RM":
        diag = [s.I_(i) + s.V_(i) for i in range(1, n + 1)]
        offd = [s.I_(i + 1) * s.V_(i) for i in range(1, n + 1)]
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return diag, offd


def _check_spec(s, spec):
    if spec.k < 0 or spec.l < 0 or spec.k + spec.l < 1 or spec.k + spec.l > s.n:
        raise ValueError(f"invalid minor (k={spec.k}, l={spec.l}) for n={s.n}")


def minor_det(s, spec):
    """Determinant of the trimmed characteristic matrix, by the three-term recurrence.

    ``|^k L_l| = (d_{k+1} - x) |^{k+1} L_l| - p_{k+1} |^{k+2} L_l|`` with the
    empty minor equal to 1.
    """
    _check_spec(s, spec)
    if spec.shift:
        s = cyclic_shift(s, spec.shift)
    F = s.field
    diag, offd = _tridiagonal(s, spec.variant)
    x = Polynomial.gen(F)
    last = s.n - spec.l          # rows k+1 .. last (1-based) survive
    below = Polynomial((), F)    # |^{j+2}|
    cur = Polynomial((1,), F)    # |^{j+1}|
    for j in range(last, spec.k, -1):
        nxt = (diag[j - 1] - x) * cur
        if j + 1 <= last:
            nxt = nxt - below * offd[j - 1]
        below, cur = cur, nxt
    return cur


def trimmed_matrix(s, spec):
    """The literal trimmed characteristic matrix, built from ``lax_matrices``."""
    _check_spec(s, spec)
    if spec.shift:
        s = cyclic_shift(s, spec.shift)
    lax = lax_matrices(s)
    L = lax.L_MR if spec.variant == "MR" else lax.L_RM
    C = characteristic_matrix(L)
    rows = range(spec.k, s.n - spec.l)
    return [[C[i][j] for j in rows] for i in rows]


def _md(s, k, l, variant="MR", shift=0):
    return minor_det(s, MinorSpec(k, l, variant, shift))


# ---------------------------------------------------------------------------
# spectral curve and eigenvector data
# ---------------------------------------------------------------------------

def spectral_curve(s):
    """``(h, f)`` with ``(-1)^{n-1} z det(L(z) - xE) = z^2 + h z - f``."""
    _need_n3(s)
    F, n = s.field, s.n
    x = Polynomial.gen(F)
    f = -_prod((a * b for a, b in zip(s.I, s.V)), F.one)
    sign = (-1) ** (n - 1)
    h = ((s.I_(n) + s.V_(n - 1) - x) * _md(s, 0, 1)
         - _md(s, 1, 1) * (s.I_(n) * s.V_(n))
         - _md(s, 0, 2) * (s.I_(n - 1) * s.V_(n - 1))) * sign
    return SpectralCurve(h, f, n)


@dataclass(frozen=True)
class EigenvectorData:
    u: Polynomial
    v: Polynomial
    w: Polynomial
    u_next: Polynomial
    v_next: Polynomial
    w_next: Polynomial
    curve: SpectralCurve


def uvw(s):
    _need_n3(s)
    n = s.n
    sign = (-1) ** (n - 1)
    u = _md(s, 0, 1) * sign
    v = _md(s, 1, 1) * (sign * s.I_(n) * s.V_(n))
    w = _md(s, 0, 2) * (sign * s.I_(n - 1) * s.V_(n - 1))
    u_ = _md(s, 0, 1, "RM") * sign
    v_ = _md(s, 1, 1, "RM") * (sign * s.I_(1) * s.V_(n))
    w_ = _md(s, 0, 2, "RM") * (sign * s.I_(n) * s.V_(n - 1))
    return EigenvectorData(u, v, w, u_, v_, w_, spectral_curve(s))


def eigenvector_weight(n):
    """``n`` for odd genus, ``n - 1`` for even genus (genus is ``n - 1``)."""
    return n if (n - 1) % 2 else n - 1


def eigenvector_map(s):
    """Psi: the state's eigenvector divisor ``([u, v mod u], d)``."""
    data = uvw(s)
    u = data.u
    if u.lc != 1:
        raise JacobianError("u is expected to be monic")
    v = poly_divrem(data.v, u)[1]
    e = MumfordDivisor(u, v, eigenvector_weight(s.n), data.curve)
    m = validate_membership(e)
    if not m:
        raise JacobianError(f"eigenvector divisor fails membership: {m.reason}")
    return e


def eigenvector_components(s):
    """``phi_i = (-1)^{i-1} |L with row n and column i removed|`` for i = 1..n."""
    _need_n3(s)
    n = s.n
    C = characteristic_matrix(lax_matrices(s).L_MR)
    phis = []
    for i in range(n):
        sub = [[C[r][c] for c in range(n) if c != i] for r in range(n - 1)]
        d = laurent_det(sub)
        phis.append(d if i % 2 == 0 else -d)
    return phis



# ---------------------------------------------------------------------------
# identity checks
# ---------------------------------------------------------------------------

def _divides_to(num, den, expected):
    q, r = poly_divrem(num, den)
    return r == 0 and q == expected


def identity_checks(s):
    """Evaluate the polynomial identities tying the minors, ``h``, ``f`` and ``u, v, w``.

    Returns an ordered mapping from a stable identifier to a boolean.  Where a
    sign depends on the parity of ``n`` it is written out explicitly.
    """
    _need_n3(s)
    n = s.n
    sign = (-1) ** (n - 1)
    e = uvw(s)
    h, f = e.curve.h, e.curve.f
    u, v, w, u_, v_, w_ = e.u, e.v, e.w, e.u_next, e.v_next, e.w_next
    x = Polynomial.gen(s.field)
    In, Vn = s.I_(n), s.V_(n)
    out = {}
    out["h.decomposition"] = h == (In + s.V_(n - 1) - x) * u - v - w
    out["h.decomposition.rm"] = h == (In + Vn - x) * u_ - v_ - w_
    out["lemma5"] = poly_divrem(w * w + h * w - f, u)[1] == 0
    out["lemma7"] = poly_divrem(w_ * w_ + h * w_ - f, u_)[1] == 0
    for l in range(1, n - 1):
        lhs = (s.V_(1) - x) * _md(s, 1, l, "RM") - _md(s, 2, l, "RM") * (s.I_(2) * s.V_(1))
        rhs = ((s.V_(n - l) - x) * _md(s, 1, l)
               - _md(s, 1, l + 1) * (s.I_(n - l) * s.V_(n - l)))
        out[f"lemma8.l{l}"] = lhs == rhs
    out["lemma9"] = (v * w + f
                     == u * _md(s, 1, 2) * (sign * s.I_(n - 1) * s.V_(n - 1) * In * Vn))
    out["lemma10"] = _divides_to(v * v + h * v - f, u * In, u_ * Vn - (v_ - v))
    u0 = u(0)
    if u0 != 0:
        prod_i = _prod(s.I, s.field.one)
        out["lemma10p"] = s.field.div((-1) ** n * prod_i - v(0), u0) == -In
    out["lemma11"] = _divides_to(w * w + h * w - f, u * (s.I_(n - 1) * s.V_(n - 1)),
                                 _md(s, 0, 1, "MR", -1) * sign)
    out["key_relation"] = v - u * In == w_ - u_ * In
    return out
