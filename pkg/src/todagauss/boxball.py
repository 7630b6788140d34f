"""Periodic box-ball system, tropical periodic Toda, and the T-lift to Q(T).

A box-ball state is a cyclic 0/1 string; ``1`` is a ball.  A tropical state is
a pair of integer vectors ``(Q, W)``: soliton lengths and the gaps after them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import QQT, RationalFunction, t_adic_valuation
from .toda import TodaState

__all__ = [
    "BoxBallState", "TropicalState", "CyclicClass", "DensityError",
    "bbs_step", "bbs_step_sequential", "eta", "tropical_step", "t_lift",
    "tropicalize", "cyclic_canonicalize", "equal_mod_sigma", "rotate",
    "soliton_count",
]


class DensityError(ValueError):
    """The periodic flow needs fewer balls than half the number of boxes."""


@dataclass(frozen=True)
class BoxBallState:
    cells: tuple

    def __post_init__(self):
        cells = tuple(int(c) for c in self.cells)
        if any(c not in (0, 1) for c in cells):
            raise ValueError("cells must be 0 or 1")
        object.__setattr__(self, "cells", cells)

    @classmethod
    def parse(cls, text):
        return cls(tuple(int(ch) for ch in text.strip()))

    @property
    def N(self):
        return len(self.cells)

    @property
    def balls(self):
        return sum(self.cells)

    def __str__(self):
        return "".join(map(str, self.cells))


@dataclass(frozen=True)
class TropicalState:
    n: int
    Q: tuple
    W: tuple

    def __post_init__(self):
        if len(self.Q) != self.n or len(self.W) != self.n:
            raise ValueError("Q and W must both have length n")
        object.__setattr__(self, "Q", tuple(int(q) for q in self.Q))
        object.__setattr__(self, "W", tuple(int(w) for w in self.W))

    @classmethod
    def of(cls, Q, W):
        return cls(len(Q), tuple(Q), tuple(W))

    def interleaved(self):
        return tuple(v for pair in zip(self.Q, self.W) for v in pair)


@dataclass(frozen=True)
class CyclicClass:
    """Rotation class of a tropical state; ``representative`` is canonical."""

    representative: TropicalState


def _check_density(s):
    if 2 * s.balls >= s.N:
        raise DensityError(f"{s.balls} balls in {s.N} boxes: need balls < N/2")


def bbs_step(s):
    """One time step by 10-elimination.

    Each round pairs every ball that is cyclically followed (among the cells not
    yet paired) by an empty box, then removes the pairs.  Once all balls are
    paired, each ball jumps to its partner box.
    """
    _check_density(s)
    N = s.N
    alive = list(range(N))
    target = {}
    while any(s.cells[i] for i in alive):
        m = len(alive)
        pairs = [(alive[j], alive[(j + 1) % m]) for j in range(m)
                 if s.cells[alive[j]] == 1 and s.cells[alive[(j + 1) % m]] == 0]
        for ball, box in pairs:
            target[ball] = box
        gone = {c for pair in pairs for c in pair}
        alive = [i for i in alive if i not in gone]
    out = [0] * N
    for box in target.values():
        out[box] = 1
    return BoxBallState(tuple(out))


def _quiet_start(cells):
    # a cut point with an empty carrier: every cyclic run of cells ending just
    # before it holds more empty boxes than balls
    N = len(cells)
    for p in range(N):
        run, ok = 0, True
        for k in range(1, N + 1):
            run += 1 if cells[(p - k) % N] else -1
            if run >= 0:
                ok = False
                break
        if ok:
            return p
    raise DensityError("no quiet starting point")


def bbs_step_sequential(s):
    """Reference rule: move each ball once, leftmost unmoved ball first.

    Reading starts at a cell where the carrier is empty, so no ball is pushed
    across the cut.  Used as an independent check of ``bbs_step``.
    """
    _check_density(s)
    N = s.N
    if not s.balls:
        return s
    p = _quiet_start(s.cells)
    cells = list(s.cells[p:] + s.cells[:p])
    moved = [False] * N
    for i in range(N):
        if cells[i] == 1 and not moved[i]:
            j = (i + 1) % N
            while cells[j] == 1:
                j = (j + 1) % N
            cells[i], cells[j] = 0, 1
            moved[j] = True
    out = cells[N - p:] + cells[:N - p] if p else cells
    return BoxBallState(tuple(out))


def soliton_count(s):
    N = s.N
    return sum(1 for i in range(N) if s.cells[i] == 1 and s.cells[i - 1] == 0)


def eta(s):
    """Soliton lengths and gaps, read cyclically, as a rotation class."""
    if s.balls == 0 or s.balls == s.N:
        raise ValueError("eta needs at least one ball and one empty box")
    N = s.N
    start = next(i for i in range(N) if s.cells[i] == 1 and s.cells[i - 1] == 0)
    word = s.cells[start:] + s.cells[:start]
    Q, W = [], []
    i = 0
    while i < N:
        j = i
        while j < N and word[j] == 1:
            j += 1
        k = j
        while k < N and word[k] == 0:
            k += 1
        Q.append(j - i)
        W.append(k - j)
        i = k
    return cyclic_canonicalize(TropicalState.of(Q, W))


def tropical_step(s):
    """Ultradiscrete update ``Q_i <- min(W_i, Q_i + X_i)``,  ``W_i <- Q_{i+1} + W_i - Q_i'``."""
    n, Q, W = s.n, s.Q, s.W
    Qn = []
    for i in range(n):
        best, run = 0, 0
        for l in range(1, n):
            run += Q[(i - l) % n] - W[(i - l) % n]
            best = max(best, run)
        Qn.append(min(W[i], Q[i] + best))
    Wn = [Q[(i + 1) % n] + W[i] - Qn[i] for i in range(n)]
    return TropicalState(n, tuple(Qn), tuple(Wn))


def t_lift(s):
    """``I_i = T^{Q_i}``, ``V_i = T^{W_i}`` over Q(T)."""
    return TodaState(s.n, tuple(RationalFunction.T(q) for q in s.Q),
                     tuple(RationalFunction.T(w) for w in s.W), QQT)


def tropicalize(s):
    """Componentwise T-adic valuation of a Q(T) state."""
    vals = []
    for c in (*s.I, *s.V):
        v = t_adic_valuation(c)
        if v == math.inf:
            raise ValueError("cannot tropicalize a zero entry")
        vals.append(v)
    return TropicalState(s.n, tuple(vals[:s.n]), tuple(vals[s.n:]))


def rotate(s, k):
    """``sigma^k`` on a tropical state."""
    k %= s.n
    return TropicalState(s.n, s.Q[k:] + s.Q[:k], s.W[k:] + s.W[:k])


def cyclic_canonicalize(s):
    best = min((rotate(s, k) for k in range(s.n)), key=TropicalState.interleaved)
    return CyclicClass(best)


def equal_mod_sigma(a, b):
    """``(True, k)`` with ``rotate(a, k) == b`` for the smallest such ``k``."""
    if a.n != b.n:
        return False, -1
    for k in range(a.n):
        if rotate(a, k) == b:
            return True, k
    return False, -1
