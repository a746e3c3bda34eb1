from __future__ import annotations

import json

import pytest

from wittkit.cli import main, parse_gens, parse_gens_n
from wittkit.errors import MalformedInput

KEYS = {"command", "inputs", "options", "result", "certificates", "escalations", "timing"}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


def test_classify_worked_instance(capsys):
    code, doc, err = run_json(capsys, "classify", "--gens", "t^3, t^5")
    assert code == 0 and KEYS <= set(doc)
    r = doc["result"]
    assert (r["f"], r["g_min"], r["codim"], r["d"]) == ("t^2", "t^3", 1, 2)
    assert doc["certificates"]["degree_bound"] == 40
    assert "exit 0" in err


@pytest.mark.parametrize("argv,code", [
    (["classify", "--gens", "t, t^2"], 4),
    (["classify", "--gens", "t^^3"], 3),
    (["classify"], 3),
    (["hensel", "--poly", "2t^2+1"], 3),
    (["hensel", "--poly", "5"], 3),
    (["classify", "--gens", "t^3+t"], 4),
    (["veronese-check", "--gens", "t^3", "--d", "0"], 3),
    (["wn-filtration", "--full-wn", "2", "--i", "1", "--j", "5"], 3),
    (["frobnicate"], 3),
])
def test_exit_codes(capsys, argv, code):
    with_exit = None
    try:
        got = main(argv)
    except SystemExit as exc:
        got = with_exit = exc.code
    capsys.readouterr()
    assert got == code, with_exit


def test_error_documents(capsys):
    code, doc, _ = run_json(capsys, "classify", "--gens", "t, t^2")
    assert code == 4 and doc["result"] is None
    assert doc["error"] == {"type": "DegenerateInput", "message": "finite-dimensional subalgebra"}


LF_T3_PLUS_T = ("t^4+5/3*t^2+4/9, t^7+8/3*t^5+19/9*t^3+4/9*t, "
                "t^10+11/3*t^8+43/9*t^6+23/9*t^4+4/9*t^2")


def test_escalation_exhaustion_exit(capsys):
    code, doc, _ = run_json(capsys, "classify", "--gens", LF_T3_PLUS_T, "--bound", "40", "--steps", "1",
                            "--max-bound", "40", "--max-steps", "1")
    assert code == 2
    assert doc["error"] == {"type": "BoundExhausted", "message": "bound exhausted"}


def test_escalations_are_reported(capsys):
    code, doc, _ = run_json(capsys, "classify", "--gens", LF_T3_PLUS_T, "--steps", "1")
    assert code == 0 and doc["result"]["f"] == "t^3+t"
    assert doc["escalations"] and {"bound", "steps", "next_bound", "next_steps", "reason"} <= set(doc["escalations"][0])


def test_hensel_output(capsys):
    code, doc, _ = run_json(capsys, "hensel", "--poly", "t^2+1", "--steps", "6")
    assert code == 0
    r = doc["result"]
    assert r["s"]["-1"] == "1/3" and r["s"]["-3"] == "-4/45"
    assert r["known_down_to_exponent"] == -5
    assert r["residual"]["verified"] is True
    assert doc["certificates"]["residual_order"] == 2 - 6 - 1


def test_veronese_check(capsys):
    code, doc, _ = run_json(capsys, "veronese-check", "--gens", "(t+1)^3, (t+1)^5", "--d", "2")
    assert code == 0
    assert all(m["member"] for m in doc["result"]["members"])
    law = doc["result"]["coefficient_law"][0]
    assert (law["k"], law["alpha"], law["beta"], law["law_holds"]) == (1, "3", "5", True)
    code, doc, _ = run_json(capsys, "veronese-check", "--gens", "t^3+t^2", "--d", "2", "--poly", "t^2")
    assert doc["result"]["members"][0]["member"] is False


def test_wn_commands(capsys):
    code, doc, _ = run_json(capsys, "wn-growth", "--gens", "[1]", "--steps", "5")
    assert code == 0 and doc["result"]["dims"] == [1] * 6 and doc["result"]["verdict"] == "bounded"
    code, doc, _ = run_json(capsys, "wn-filtration", "--full-wn", "2", "--schedule", "4,6,8",
                            "--abelianisation", "--samples", "20")
    assert code == 0
    assert doc["result"]["d_ij"] == [[4, 4], [6, 6], [8, 8]]
    assert doc["result"]["verdict"] == "growing"
    assert doc["certificates"]["derived_inclusion"] is True
    assert doc["result"]["abelianisation"]["codims"] == [[4, 0], [6, 0], [8, 0]]
    code, doc, _ = run_json(capsys, "wn-filtration", "--gens", "x1^2,0", "--i", "2", "--schedule", "4,6")
    assert doc["result"]["d_ij"] == [[4, 1], [6, 1]]


def test_selftest(capsys):
    code, doc, _ = run_json(capsys, "selftest")
    assert code == 0 and doc["certificates"]["all_passed"]


def test_text_format(capsys):
    code, out, _ = run(capsys, "classify", "--gens", "t^3, t^5", "--format", "text")
    assert code == 0 and out.startswith("command: classify") and "g_min: t^3" in out


def test_byte_identical_repeats(capsys):
    argv = ["wn-filtration", "--full-wn", "3", "--schedule", "3,4", "--samples", "15", "--seed", "9"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_batch_and_jobs(tmp_path, capsys):
    batch = tmp_path / "in.txt"
    batch.write_text("# comment\nt^3, t^5\nt, t^2\n\n(t+1)^3, (t+1)^5\n")
    code1, serial, _ = run(capsys, "classify", "--batch", str(batch))
    code2, parallel, _ = run(capsys, "classify", "--batch", str(batch), "--jobs", "2")
    assert code1 == code2 == 4
    assert serial == parallel
    res = json.loads(serial)["result"]
    assert [r["exit_code"] for r in res] == [0, 4, 0]
    assert res[2]["result"]["f"] == "t^2+2*t"


def test_missing_batch_file(capsys, tmp_path):
    code, doc, _ = run_json(capsys, "classify", "--batch", str(tmp_path / "none.txt"))
    assert code == 3 and doc["error"]["type"] == "MalformedInput"


def test_parsers():
    assert len(parse_gens("t^3, (t+1)^2, 1")) == 3
    gens = parse_gens_n("[1, 0]; x1^2, x2")
    assert len(gens) == 2 and gens[1].nvars == 2
    with pytest.raises(MalformedInput):
        parse_gens_n("1, 0; 1")
