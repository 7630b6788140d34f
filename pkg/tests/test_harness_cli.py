import json
import subprocess
import sys

import pytest

from todagauss import (BoxBallState, DensityError, ExperimentConfig, ResampleBudgetError,
                       TodaState, gen_random_instance, toda_step, verify_bbs_diagram,
                       verify_theorem1, verify_torsion)
from todagauss import cli
from todagauss.harness import SCHEMA

WORKED = TodaState.of([1, 2, 3], [4, 5, 6])


# --- drivers ----------------------------------------------------------------

def test_theorem1_worked():
    rec = verify_theorem1(WORKED, 3)
    assert rec.passed and rec.exit_code == 0
    ids = [c["id"] for c in rec.checks]
    assert {"thm1.step1", "thm1.step3", "thm1.std.step2", "thm1.dtilde"} <= set(ids)
    assert len(rec.snapshots) == 4


def test_theorem1_zero_steps():
    rec = verify_theorem1(WORKED, 0)
    assert rec.passed and [c["id"] for c in rec.checks] == ["thm1.dtilde"]


def test_theorem1_random_n4():
    s = gen_random_instance(ExperimentConfig(n=4, steps=5, seed=4))
    assert verify_theorem1(s, 5).passed


def test_theorem1_reports_domain_exit():
    # one step succeeds, the second hits a vanishing denominator
    s = TodaState.of([1, 1, 2], [2, -1, -2])
    rec = verify_theorem1(s, 4)
    assert rec.status == "domain-exit" and rec.exit_code == 1
    assert rec.domain_exit["step"] == 2
    assert rec.domain_exit["error"] == "VanishingDenominatorError"
    assert not rec.failed_checks()


def test_torsion_worked_and_random():
    rec = verify_torsion(WORKED)
    assert rec.passed
    assert {"prop3.k0", "prop3.k3", "prop3.order", "lemma11", "lemma11.group"} <= \
        {c["id"] for c in rec.checks}
    s = gen_random_instance(ExperimentConfig(n=5, seed=9))
    assert verify_torsion(s).passed


def test_drivers_need_n3():
    with pytest.raises(ValueError):
        verify_torsion(TodaState.of([1, 2], [3, 4]))


def test_bbs_diagram_acceptance_state():
    rec = verify_bbs_diagram(BoxBallState.parse("11010010000000"), 2)
    assert rec.passed
    witnesses = [c["detail"]["witness"] for c in rec.checks if "square3" in c["id"]]
    assert len(witnesses) == 2 and all(0 <= k <= 2 for k in witnesses)


def test_bbs_diagram_zero_steps():
    assert verify_bbs_diagram(BoxBallState.parse("11010010000000"), 0).passed


def test_bbs_diagram_preconditions():
    with pytest.raises(DensityError):
        verify_bbs_diagram(BoxBallState.parse("1101101000"), 1)
    with pytest.raises(ValueError):
        verify_bbs_diagram(BoxBallState.parse("1100100000"), 1)


# --- random instances -------------------------------------------------------

def test_generation_is_deterministic():
    cfg = ExperimentConfig(n=4, seed=123, steps=2)
    assert gen_random_instance(cfg) == gen_random_instance(cfg)
    bcfg = ExperimentConfig(mode="bbs-run", N=20, solitons=3, seed=5)
    assert gen_random_instance(bcfg) == gen_random_instance(bcfg)


def test_generation_bounds():
    s = gen_random_instance(ExperimentConfig(seed=1, n=3, height=9))
    for c in s.I + s.V:
        assert c != 0 and abs(c.numerator) <= 9 and c.denominator <= 9
    toda_step(s)


def test_generation_qt():
    s = gen_random_instance(ExperimentConfig(seed=2, n=3, field="QT"))
    assert s.field.name == "Q(T)"


def test_generation_box_ball():
    b = gen_random_instance(ExperimentConfig(kind="bbs", N=20, solitons=3, seed=3))
    assert b.N == 20 and 2 * b.balls < 20
    with pytest.raises(DensityError):
        gen_random_instance(ExperimentConfig(kind="bbs", N=10, balls=6))


def test_generation_budget():
    with pytest.raises(ResampleBudgetError):
        gen_random_instance(ExperimentConfig(kind="bbs", N=6, balls=2, solitons=3))


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(mode="nope")
    with pytest.raises(ValueError):
        ExperimentConfig(steps=-1)


# --- command line -----------------------------------------------------------

@pytest.fixture
def state_file(tmp_path):
    p = tmp_path / "state.json"
    p.write_text(json.dumps({"field": "Q", "n": 3, "I": ["1", "2", "3"], "V": ["4", "5", "6"]}))
    return p


def _run(argv):
    return cli.main([str(a) for a in argv])


@pytest.mark.parametrize("mode", ["toda-run", "verify-theorem1", "verify-torsion", "jac-add"])
def test_cli_modes_pass(mode, state_file, tmp_path):
    out = tmp_path / "trace.json"
    assert _run([mode, "--in", state_file, "--steps", 2, "--out", out]) == 0
    trace = json.loads(out.read_text())
    assert trace["schema"] == SCHEMA and trace["status"] == "pass"


def test_cli_replay_is_byte_identical(state_file, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        assert _run(["verify-theorem1", "--in", state_file, "--steps", 3, "--out", out]) == 0
    assert a.read_bytes() == b.read_bytes()
    c, d = tmp_path / "c.json", tmp_path / "d.json"
    for out in (c, d):
        assert _run(["verify-torsion", "--seed", 77, "--n", 4, "--out", out]) == 0
    assert c.read_bytes() == d.read_bytes()


def test_cli_jac_add_worked(state_file, capsys):
    assert _run(["jac-add", "--in", state_file]) == 0
    trace = json.loads(capsys.readouterr().out)
    assert trace["snapshots"][0]["sum"] == {"P": ["27", "-12", "1"], "Q": ["42", "-6"], "d": 2}


def test_cli_jac_add_explicit_divisors(tmp_path, capsys):
    p = tmp_path / "jac.json"
    curve = {"h": ["126", "-114", "21", "-1"], "f": "-720", "n": 3}
    p.write_text(json.dumps({"curve": curve, "a": {"P": ["0", "1"], "Q": ["-6"], "d": 2},
                             "b": {"P": ["0", "1"], "Q": ["-6"], "d": 2}}))
    assert _run(["jac-add", "--in", p]) == 0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"curve": curve, "a": {"P": ["0", "1"], "Q": ["1"], "d": 2},
                               "b": {"P": ["0", "1"], "Q": ["-6"], "d": 2}}))
    assert _run(["jac-add", "--in", bad]) == 3


def test_cli_bbs(tmp_path, capsys):
    p = tmp_path / "bbs.json"
    p.write_text(json.dumps("11010010000000"))
    assert _run(["verify-bbs-diagram", "--in", p, "--steps", 2]) == 0
    trace = json.loads(capsys.readouterr().out)
    assert all(c["ok"] for c in trace["checks"])
    assert _run(["bbs-run", "--in", p, "--steps", 3]) == 0


def test_cli_domain_exit(tmp_path):
    p = tmp_path / "z.json"
    p.write_text(json.dumps({"field": "Q", "n": 3, "I": ["0", "1", "1"], "V": ["1", "1", "1"]}))
    assert _run(["toda-run", "--in", p, "--steps", 2]) == 1


def test_cli_violation_exit_code(tmp_path, monkeypatch):
    p = tmp_path / "bbs.json"
    p.write_text(json.dumps("1101000000"))
    monkeypatch.setattr(cli, "bbs_step_sequential", lambda s: s)
    assert _run(["bbs-run", "--in", p, "--steps", 1]) == 2


@pytest.mark.parametrize("content", ["not json", '{"field": "Q", "I": ["1"]}', '"1111100000"',
                                     '{"field": "R", "I": ["1", "2", "3"], "V": ["1", "2", "3"]}'])
def test_cli_bad_input(tmp_path, content):
    p = tmp_path / "bad.json"
    p.write_text(content)
    mode = "bbs-run" if content.startswith('"') else "toda-run"
    assert _run([mode, "--in", p]) == 3


def test_cli_usage_errors_are_bad_input():
    with pytest.raises(SystemExit) as info:
        _run(["no-such-mode"])
    assert info.value.code == 3
    assert _run(["toda-run", "--in", "/nonexistent/state.json"]) == 3


def test_cli_gen_random(capsys):
    assert _run(["gen-random", "--seed", 1, "--n", 3, "--height", 9]) == 0
    first = capsys.readouterr().out
    assert _run(["gen-random", "--seed", 1, "--n", 3, "--height", 9]) == 0
    assert capsys.readouterr().out == first
    assert json.loads(first)["instance"]["n"] == 3
    assert _run(["gen-random", "--kind", "bbs", "--N", 10, "--balls", 6]) == 3


def test_cli_field_mismatch(state_file):
    assert _run(["toda-run", "--in", state_file, "--field", "QT"]) == 3


def test_module_entry_point(state_file):
    proc = subprocess.run([sys.executable, "-m", "todagauss", "verify-torsion",
                           "--in", str(state_file)], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["schema"] == SCHEMA
