"""Verification drivers, seeded instance generation and JSON trace records.

Every driver returns a :class:`TraceRecord`.  A record's ``status`` is one of

* ``"pass"``: every check held,
* ``"domain-exit"``: the flow left its domain; this is not a failed identity,
* ``"violation"``: some identity failed, which means a bug.

Drivers only call public operations of the other modules.
"""

from __future__ import annotations

import json
import os
import random
import tempfile
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .algebra import QQ, QQT, RationalFunction
from .boxball import (BoxBallState, DensityError, bbs_step, bbs_step_sequential,
                      cyclic_canonicalize, equal_mod_sigma, eta, soliton_count,
                      t_lift, tropical_step, tropicalize)
from .jacobian import (add, divisor_D, divisor_D_tilde, equal_mod_Cn, scalar_mul,
                       sub, to_standard_form, torsion_generator, validate_membership,
                       zero)
from .jsonio import (encode_boxball, encode_curve, encode_divisor, encode_state,
                     encode_tropical)
from .toda import (FlowDomainError, TodaState, cyclic_shift, eigenvector_map,
                   identity_checks, spectral_curve, toda_step,
                   toda_step_recursive_check)

SCHEMA = "toda-gauss/1"
MODES = ("toda-run", "bbs-run", "jac-add", "verify-theorem1", "verify-torsion",
         "verify-bbs-diagram", "gen-random")
BBS_MODES = ("bbs-run", "verify-bbs-diagram")
RESAMPLE_BUDGET = 1000

EXIT_PASS, EXIT_DOMAIN, EXIT_VIOLATION, EXIT_BAD_INPUT = 0, 1, 2, 3


class ResampleBudgetError(RuntimeError):
    """No admissible random instance was found within the resample budget."""


@dataclass(frozen=True)
class ExperimentConfig:
    mode: str = "gen-random"
    steps: int = 0
    seed: int = 0
    field: str = "Q"
    n: int = 3
    N: int = 14
    balls: int | None = None
    solitons: int | None = None
    height: int = 16
    kind: str | None = None     # "toda" or "bbs"; derived from mode when None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.steps < 0:
            raise ValueError("steps must be >= 0")
        if self.field not in ("Q", "QT", "Q(T)"):
            raise ValueError(f"unknown field {self.field!r}")
        if self.height < 1 or self.n < 2 or self.N < 1:
            raise ValueError("size bounds must be positive (n >= 2)")

    @property
    def instance_kind(self):
        if self.kind is not None:
            return self.kind
        return "bbs" if self.mode in BBS_MODES else "toda"

    def to_dict(self):
        return asdict(self)


@dataclass
class TraceRecord:
    mode: str
    params: dict = field(default_factory=dict)
    curve: dict | None = None
    snapshots: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    status: str = "pass"
    domain_exit: dict | None = None

    def check(self, ident, ok, reason=None, **detail):
        ok = bool(ok)
        entry = {"id": ident, "ok": ok, "reason": reason or ("ok" if ok else "mismatch")}
        if detail:
            entry["detail"] = detail
        self.checks.append(entry)
        if not ok:
            self.status = "violation"
        return ok

    def exit_domain(self, step, exc):
        self.domain_exit = {"step": step, "error": type(exc).__name__,
                            "index": getattr(exc, "index", None), "message": str(exc)}
        if self.status == "pass":
            self.status = "domain-exit"

    @property
    def passed(self):
        return self.status == "pass"

    def failed_checks(self):
        return [c["id"] for c in self.checks if not c["ok"]]

    @property
    def exit_code(self):
        return {"pass": EXIT_PASS, "domain-exit": EXIT_DOMAIN}.get(self.status, EXIT_VIOLATION)

    def to_dict(self):
        return {"schema": SCHEMA, "mode": self.mode, "params": self.params,
                "curve": self.curve, "snapshots": self.snapshots, "checks": self.checks,
                "status": self.status, "domain_exit": self.domain_exit}

    def dumps(self):
        return dumps(self.to_dict())


def dumps(obj):
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".trace-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# drivers
# ---------------------------------------------------------------------------

def _require_n3(s):
    if s.n < 3:
        raise ValueError("verification needs n >= 3")


def verify_theorem1(s, steps):
    """Check ``Psi(T^t s) = Psi(s) + t*D`` for ``t = 1..steps``, plus its standard-model image."""
    _require_n3(s)
    rec = TraceRecord("verify-theorem1", {"steps": steps})
    curve = spectral_curve(s)
    rec.curve = encode_curve(curve)
    psi0 = eigenvector_map(s)
    D = divisor_D(s)
    _, D_std = divisor_D_tilde(s)
    rec.check("thm1.dtilde", to_standard_form(D) == D_std)
    rec.snapshots.append({"step": 0, "state": encode_state(s), "psi": encode_divisor(psi0),
                          "D": encode_divisor(D), "D_tilde": encode_divisor(D_std)})
    state = s
    for t in range(1, steps + 1):
        try:
            nxt = toda_step(state)
        except FlowDomainError as exc:
            rec.exit_domain(t, exc)
            return rec
        rec.check(f"flow.step{t}", toda_step_recursive_check(state, nxt))
        rec.check(f"curve.step{t}", spectral_curve(nxt) == curve)
        psi = eigenvector_map(nxt)
        expected = add(psi0, scalar_mul(t, D))
        rec.check(f"thm1.step{t}", psi == expected)
        lhs, rhs = to_standard_form(psi), to_standard_form(expected)
        rec.check(f"thm1.std.step{t}", lhs == rhs and validate_membership(lhs))
        rec.snapshots.append({"step": t, "state": encode_state(nxt),
                              "psi": encode_divisor(psi), "expected": encode_divisor(expected),
                              "psi_std": encode_divisor(lhs)})
        state = nxt
    return rec


def verify_torsion(s):
    """Check ``Psi(sigma^k s) - Psi(s) = k*G`` for ``k = 0..n`` and ``n*G = 0``."""
    _require_n3(s)
    n = s.n
    rec = TraceRecord("verify-torsion", {"n": n})
    curve = spectral_curve(s)
    rec.curve = encode_curve(curve)
    G = torsion_generator(curve)
    psi = eigenvector_map(s)
    rec.snapshots.append({"k": 0, "state": encode_state(s), "psi": encode_divisor(psi)})
    for k in range(n + 1):
        shifted = cyclic_shift(s, k)
        psi_k = eigenvector_map(shifted)
        diff = sub(psi_k, psi)
        rec.check(f"prop3.k{k}", diff == scalar_mul(k, G))
        if k:
            rec.snapshots.append({"k": k, "state": encode_state(shifted),
                                  "psi": encode_divisor(psi_k), "difference": encode_divisor(diff)})
    rec.check("prop3.order", scalar_mul(n, G) == zero(curve))
    rec.check("prop3.order_exact", all(scalar_mul(k, G) != zero(curve) for k in range(1, n)))
    rec.check("lemma11", identity_checks(s)["lemma11"])
    rec.check("lemma11.group", add(eigenvector_map(cyclic_shift(s, -1)), G) == psi)
    return rec


def verify_bbs_diagram(b, steps):
    """Check the three squares linking the box-ball flow to the Toda flow over Q(T).

    (i) ``eta(B s) = T_trop(eta s)`` as rotation classes;  (ii) valuations of the
    lifted step agree with the tropical step;  (iii) the lifted Toda step moves
    the eigenvector divisor by ``D`` up to the cyclic group generated by ``G``.
    The lifted state is re-aligned to the canonical rotation after every step;
    that rotation ``j`` is recorded next to the witness ``k`` of square (iii).
    """
    if 2 * b.balls >= b.N:
        raise DensityError(f"{b.balls} balls in {b.N} boxes: need balls < N/2")
    if soliton_count(b) < 3:
        raise ValueError("the box-ball diagram needs at least 3 solitons")
    rec = TraceRecord("verify-bbs-diagram", {"steps": steps})
    x = eta(b).representative
    y = t_lift(x)
    rec.curve = encode_curve(spectral_curve(y))
    rec.snapshots.append({"step": 0, "boxes": encode_boxball(b), "tropical": encode_tropical(x),
                          "psi": encode_divisor(eigenvector_map(y))})
    for t in range(1, steps + 1):
        b_next = bbs_step(b)
        cls_next = eta(b_next)
        trop = tropical_step(x)
        rec.check(f"thm2.square1.step{t}", cyclic_canonicalize(trop) == cls_next)
        try:
            y_raw = toda_step(y)
        except FlowDomainError as exc:
            rec.exit_domain(t, exc)
            return rec
        val = tropicalize(y_raw)
        aligned, j = equal_mod_sigma(val, cls_next.representative)
        rec.check(f"thm2.square2.step{t}", val == trop and aligned)
        if not aligned:
            return rec
        y_next = cyclic_shift(y_raw, j)
        psi_next = eigenvector_map(y_next)
        ok, k = equal_mod_Cn(psi_next, add(eigenvector_map(y), divisor_D(y)))
        rec.check(f"thm2.square3.step{t}", ok, witness=k, rotation=j)
        rec.snapshots.append({"step": t, "boxes": encode_boxball(b_next),
                              "tropical": encode_tropical(cls_next.representative),
                              "psi": encode_divisor(psi_next), "witness": k, "rotation": j})
        b, x, y = b_next, cls_next.representative, y_next
    return rec


# ---------------------------------------------------------------------------
# random instances
# ---------------------------------------------------------------------------

def _random_rational(rng, height):
    return Fraction(rng.choice((-1, 1)) * rng.randint(1, height), rng.randint(1, height))


def _random_entry(rng, cfg):
    c = _random_rational(rng, cfg.height)
    if cfg.field == "Q":
        return c
    return RationalFunction.constant(c) * RationalFunction.T(rng.randint(0, 3))


def _stays_in_domain(s, steps):
    try:
        for _ in range(steps):
            s = toda_step(s)
    except FlowDomainError:
        return False
    return True


def _random_toda(rng, cfg):
    F = QQ if cfg.field == "Q" else QQT
    for _ in range(RESAMPLE_BUDGET):
        I = tuple(_random_entry(rng, cfg) for _ in range(cfg.n))
        V = tuple(_random_entry(rng, cfg) for _ in range(cfg.n))
        s = TodaState(cfg.n, I, V, F)
        if _stays_in_domain(s, max(cfg.steps, 1)):
            return s
    raise ResampleBudgetError(f"no state stayed in the flow domain after {RESAMPLE_BUDGET} draws")


def _random_bbs(rng, cfg):
    N = cfg.N
    if cfg.balls is not None and 2 * cfg.balls >= N:
        raise DensityError(f"{cfg.balls} balls in {N} boxes: need balls < N/2")
    top = (N - 1) // 2
    low = max(1, cfg.solitons or 1)
    if cfg.balls is None and low > top:
        raise ValueError(f"{cfg.solitons} solitons do not fit in {N} boxes")
    for _ in range(RESAMPLE_BUDGET):
        balls = cfg.balls if cfg.balls is not None else rng.randint(low, top)
        cells = [0] * N
        for i in rng.sample(range(N), balls):
            cells[i] = 1
        b = BoxBallState(tuple(cells))
        if cfg.solitons is None or soliton_count(b) == cfg.solitons:
            return b
    raise ResampleBudgetError(f"no box-ball state with {cfg.solitons} solitons "
                              f"after {RESAMPLE_BUDGET} draws")


def gen_random_instance(cfg):
    """Seeded random Toda or box-ball state; the seed alone fixes the result."""
    rng = random.Random(cfg.seed)
    if cfg.instance_kind == "bbs":
        return _random_bbs(rng, cfg)
    return _random_toda(rng, cfg)
