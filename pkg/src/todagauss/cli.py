"""``toda-gauss`` command line.

Exit codes: 0 all checks pass, 1 flow left its domain, 2 identity violated,
3 bad input.  Traces are canonical JSON so identical runs give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from . import harness
from .boxball import DensityError, bbs_step, bbs_step_sequential, eta, soliton_count
from .harness import (EXIT_BAD_INPUT, EXIT_DOMAIN, MODES, ExperimentConfig, TraceRecord,
                      ResampleBudgetError, gen_random_instance)
from .jacobian import add, divisor_D, validate_membership
from .jsonio import (decode_boxball, decode_curve, decode_divisor, decode_field,
                     decode_state, encode_boxball, encode_curve, encode_divisor,
                     encode_state, encode_tropical)
from .toda import (FlowDomainError, TodaState, eigenvector_map, spectral_curve, toda_step,
                   toda_step_recursive_check)


class BadInput(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors count as bad input; argparse would otherwise exit with 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_BAD_INPUT, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _Parser(prog="toda-gauss",
                description="Discrete periodic Toda flow, box-ball system "
                            "and Jacobian verification runs.")
    p.add_argument("mode", choices=MODES)
    p.add_argument("--in", dest="input", metavar="PATH",
                   help="input JSON; a random instance is generated when omitted")
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", choices=("Q", "QT"), default=None,
                   help="field for random instances (default Q)")
    p.add_argument("--out", metavar="PATH", help="trace file (default: stdout)")
    p.add_argument("--n", type=int, default=3, help="Toda size for random instances")
    p.add_argument("--N", type=int, default=14, help="number of boxes for random instances")
    p.add_argument("--balls", type=int, default=None)
    p.add_argument("--solitons", type=int, default=None)
    p.add_argument("--height", type=int, default=16,
                   help="bound on numerators and denominators of random rationals")
    p.add_argument("--kind", choices=("toda", "bbs"), default=None,
                   help="instance type for gen-random")
    return p


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise BadInput(f"cannot read {path}: {exc}") from exc


def _toda_input(args, cfg):
    if args.input is None:
        return gen_random_instance(cfg)
    obj = _load(args.input)
    s = decode_state(obj.get("state", obj))
    if args.field is not None and s.field is not decode_field(args.field):
        raise BadInput(f"--field {args.field} does not match the input state")
    return s


def _bbs_input(args, cfg):
    if args.input is None:
        return gen_random_instance(cfg)
    obj = _load(args.input)
    if isinstance(obj, dict) and "state" in obj:
        obj = obj["state"]
    return decode_boxball(obj)


def run_toda(s, steps):
    rec = TraceRecord("toda-run", {"steps": steps})
    curve = spectral_curve(s) if s.n >= 3 else None
    rec.curve = encode_curve(curve) if curve else None
    rec.snapshots.append({"step": 0, "state": encode_state(s)})
    for t in range(1, steps + 1):
        try:
            nxt = toda_step(s)
        except FlowDomainError as exc:
            rec.exit_domain(t, exc)
            break
        rec.check(f"flow.step{t}", toda_step_recursive_check(s, nxt))
        if curve is not None:
            rec.check(f"curve.step{t}", spectral_curve(nxt) == curve)
        rec.snapshots.append({"step": t, "state": encode_state(nxt)})
        s = nxt
    return rec


def run_bbs(b, steps):
    rec = TraceRecord("bbs-run", {"steps": steps})

    def snap(t, state):
        entry = {"step": t, "boxes": encode_boxball(state), "solitons": soliton_count(state)}
        if 0 < state.balls < state.N:
            entry["tropical"] = encode_tropical(eta(state).representative)
        return entry

    rec.snapshots.append(snap(0, b))
    for t in range(1, steps + 1):
        nxt = bbs_step(b)
        rec.check(f"bbs.oracle.step{t}", nxt == bbs_step_sequential(b))
        rec.snapshots.append(snap(t, nxt))
        b = nxt
    return rec


def run_jac_add(args, cfg):
    if args.input is None:
        s = gen_random_instance(cfg)
        a, b = eigenvector_map(s), divisor_D(s)
        curve = a.curve
    else:
        obj = _load(args.input)
        if "state" in obj or "I" in obj:
            s = decode_state(obj.get("state", obj))
            a, b = eigenvector_map(s), divisor_D(s)
            curve = a.curve
        else:
            field = decode_field(obj.get("field", "Q"))
            curve = decode_curve(obj["curve"], field)
            a, b = decode_divisor(obj["a"], curve), decode_divisor(obj["b"], curve)
    for name, e in (("a", a), ("b", b)):
        m = validate_membership(e)
        if not m:
            raise BadInput(f"divisor {name} is not valid: {m.reason}")
    rec = TraceRecord("jac-add", {})
    rec.curve = encode_curve(curve)
    total = add(a, b)
    m = validate_membership(total)
    rec.check("jac.closure", m, reason=m.reason)
    rec.snapshots.append({"a": encode_divisor(a), "b": encode_divisor(b),
                          "sum": encode_divisor(total)})
    return rec


def _config(args):
    field = "QT" if args.field == "QT" else "Q"
    return ExperimentConfig(mode=args.mode, steps=args.steps, seed=args.seed, field=field,
                            n=args.n, N=args.N, balls=args.balls, solitons=args.solitons,
                            height=args.height, kind=args.kind)


def execute(args):
    """Run one mode; returns ``(exit_code, trace_dict)``."""
    cfg = _config(args)
    mode = args.mode
    if mode == "gen-random":
        inst = gen_random_instance(cfg)
        enc = encode_state(inst) if isinstance(inst, TodaState) else encode_boxball(inst)
        return 0, {"schema": harness.SCHEMA, "mode": mode, "config": cfg.to_dict(),
                   "instance": enc, "status": "pass"}
    if mode == "toda-run":
        rec = run_toda(_toda_input(args, cfg), args.steps)
    elif mode == "bbs-run":
        rec = run_bbs(_bbs_input(args, cfg), args.steps)
    elif mode == "jac-add":
        rec = run_jac_add(args, replace(cfg, steps=0))
    elif mode == "verify-theorem1":
        rec = harness.verify_theorem1(_toda_input(args, cfg), args.steps)
    elif mode == "verify-torsion":
        rec = harness.verify_torsion(_toda_input(args, cfg))
    else:
        rec = harness.verify_bbs_diagram(_bbs_input(args, cfg), args.steps)
    out = rec.to_dict()
    if args.input is None:
        out["config"] = cfg.to_dict()
    return rec.exit_code, out


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        code, trace = execute(args)
    except (BadInput, DensityError, ValueError, KeyError, TypeError, AttributeError) as exc:
        print(f"toda-gauss: bad input: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except FlowDomainError as exc:
        print(f"toda-gauss: flow left its domain: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ResampleBudgetError as exc:
        print(f"toda-gauss: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    text = harness.dumps(trace)
    if args.out:
        harness.write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
