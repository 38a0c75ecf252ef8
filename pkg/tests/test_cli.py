"""CLI behaviour and byte-stable golden output.

Regenerate golden files with ``MFL_REGEN_GOLDEN=1 pytest tests/test_cli.py``
after an intentional output change, then review the diff.
"""
import json
import os
from pathlib import Path

import pytest

from mfl.cli import main

GOLDEN = Path(__file__).parent / "golden"

CASES = {
    "check_6_0_full.json": "check --g 6 --n 0 --T full --json",
    "check_3_1_full.json": "check --g 3 --n 1 --T full --json",
    "check_2_0_irr.json": "check --g 2 --n 0 --T irr --json",
    "picard_3_1_ps.json": "picard --g 3 --n 1 --space ps --json",
    "picard_7_0_tplus.json": "picard --g 7 --n 0 --space tplus --T full --json",
    "face_5_0_full.json": "face --g 5 --n 0 --T full --json",
    "lattice_3_1.json": "lattice --g 3 --n 1 --json",
    "classes_2_2.json": "classes --g 2 --n 2 --json",
}


def run(capsys, argv):
    rc = main(argv.split())
    out, err = capsys.readouterr()
    return rc, out, err


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_json(capsys, name):
    rc, out, _ = run(capsys, CASES[name])
    assert rc == 0
    json.loads(out)
    path = GOLDEN / name
    if os.environ.get("MFL_REGEN_GOLDEN"):
        path.write_text(out)
    assert out == path.read_text()


def test_json_repeatable(capsys):
    a = run(capsys, CASES["check_3_1_full.json"])[1]
    b = run(capsys, CASES["check_3_1_full.json"])[1]
    assert a == b


def test_examples(capsys):
    assert run(capsys, "pair --g 5 --n 0 --curve C:irr --divisor K+psi")[1].strip() == "-7"
    rc, out, _ = run(capsys, "check --g 6 --n 0 --T full --json")
    assert json.loads(out)["qfact_MTplus"]["verdict"] == "Yes"
    assert run(capsys, "hk --alpha 4/5")[1].strip() == "PS"


def test_pair_curve_kinds(capsys):
    assert run(capsys, "pair --g 5 --n 0 --curve D:irr --divisor K+psi")[1].strip() == "7"
    assert run(capsys, "pair --g 4 --n 0 --curve C:irr --divisor lambda")[1].strip() == "1"
    out = run(capsys, "pair --g 6 --n 1 --curve R:2:{1} --divisor K+psi")[1].strip()
    assert out == "0"


def test_rationals_are_lowest_terms(capsys):
    out = run(capsys, "pair --g 4 --n 0 --curve C:irr --divisor 1/3*delta_irr")[1].strip()
    assert out == "10/3"
    out = run(capsys, "pair --g 4 --n 0 --curve C:irr --divisor=-1/4*delta_irr")[1].strip()
    assert out == "-5/2"
    assert run(capsys, "hk --alpha 14/20")[1].strip() == "TFull"


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "classes --g 3")[0] == 2
    assert run(capsys, "nosuchcommand")[0] == 2
    assert run(capsys, "hk --alpha x/y")[0] == 2
    assert run(capsys, "picard --g 3 --n 0 --space nope")[0] == 2


@pytest.mark.parametrize("argv, err", [
    ("hk --alpha 2", "OutOfRange"),
    ("classes --g 0 --n 2", "NotHyperbolic"),
    ("pair --g 3 --n 0 --curve Q:1 --divisor K", "InvalidCurveType"),
    ("check --g 2 --n 0 --T 7:{}", "OutOfRange"),
])
def test_domain_errors_exit_3(capsys, argv, err):
    rc, _, stderr = run(capsys, argv)
    assert rc == 3
    assert stderr.startswith(err + ":")


def test_lattice_dot_file(capsys, tmp_path):
    out = tmp_path / "l.dot"
    rc, _, _ = run(capsys, f"lattice --g 2 --n 2 --dot {out}")
    assert rc == 0
    text = out.read_text()
    assert text.startswith("digraph") and "->" in text
    path = GOLDEN / "lattice_2_2.dot"
    if os.environ.get("MFL_REGEN_GOLDEN"):
        path.write_text(text)
    assert text == path.read_text()


def test_lattice_cap_exceeded(capsys):
    rc, _, err = run(capsys, "lattice --g 4 --n 3 --cap 16")
    assert rc == 3 and err.startswith("CapExceeded")


def test_verify_small_config(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"g_max": 4, "n_max": 2, "typeset_mode": "FullOnly"}))
    rc, out, _ = run(capsys, f"verify --config {cfg} --json")
    assert rc == 0
    js = json.loads(out)
    assert js["schema"] == "verify/1" and js["failures"] == []
    assert any(f["check"] == "rank_tplus_minus_t_count" for f in js["findings"])
    rc, text, _ = run(capsys, f"verify --config {cfg}")
    assert rc == 0 and "findings" in text.lower()
