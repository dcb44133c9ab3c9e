import json
import random
import subprocess
import sys
from fractions import Fraction

import pytest

from areasig import (
    TensorElem,
    evaluate_text,
    format_expression,
    parse_expression,
    word_elem,
)
from areasig.cli import main
from areasig.errors import ExpressionSyntaxError


def test_parse_basic_nodes():
    assert parse_expression("area(1,2)") == (
        "call",
        "area",
        (("word", (1,)), ("word", (2,))),
    )
    assert parse_expression("w(112)") == ("word", (1, 1, 2))
    assert parse_expression("3/4*w(12)") == ("scaled", Fraction(3, 4), ("word", (1, 2)))


def test_parse_reports_offset():
    with pytest.raises(ExpressionSyntaxError) as err:
        parse_expression("area(1,")
    assert err.value.position == 7
    with pytest.raises(ExpressionSyntaxError):
        parse_expression("area(1)")  # arity
    with pytest.raises(ExpressionSyntaxError):
        parse_expression("frob(1,2)")


def test_eval_identity_from_halves():
    assert evaluate_text("1/2*sh(1,2) + 1/2*area(1,2)", 2) == word_elem("12", 2)


def _random_term(rng, depth):
    # terms are words, scaled atoms, or calls; sums only nest inside calls
    if depth == 0 or rng.random() < 0.4:
        word = tuple(rng.randint(1, 2) for _ in range(rng.randint(1, 3)))
        return ("word", word)
    if rng.random() < 0.3:
        return (
            "scaled",
            Fraction(rng.randint(-5, 5), rng.randint(1, 5)),
            ("word", (rng.randint(1, 2),)),
        )
    name = rng.choice(["sh", "hs", "cc", "area", "lie", "r", "rho", "D", "pi1T", "arealb"])
    arity = {"sh": 2, "hs": 2, "cc": 2, "area": 2, "lie": 2}.get(name, 1)
    return (
        "call",
        name,
        tuple(_random_expression(rng, depth - 1) for _ in range(arity)),
    )


def _random_expression(rng, depth):
    terms = [(1, _random_term(rng, depth))]
    while rng.random() < 0.4:
        terms.append((rng.choice((1, -1)), _random_term(rng, depth)))
    if len(terms) == 1:
        return terms[0][1]
    return ("sum", tuple(terms))


def test_round_trip_random_expressions():
    rng = random.Random(77)
    for _ in range(200):
        node = _random_expression(rng, 2)
        assert parse_expression(format_expression(node)) == node


def run_cli(*argv):
    from io import StringIO
    import contextlib

    out = StringIO()
    with contextlib.redirect_stdout(out):
        code = main(list(argv))
    return code, out.getvalue()


def test_cli_eval():
    code, out = run_cli("eval", "1/2*sh(1,2) + 1/2*area(1,2)")
    assert code == 0
    assert out.strip() == "12"


def test_cli_eval_json():
    code, out = run_cli("eval", "area(1,2)", "--format", "json")
    assert code == 0
    assert json.loads(out) == [
        {"word": "12", "num": "1", "den": "1"},
        {"word": "21", "num": "-1", "den": "1"},
    ]


def test_cli_tables_deterministic():
    code1, out1 = run_cli("tables", "--basis", "lyndon", "--d", "2", "--level", "4")
    code2, out2 = run_cli("tables", "--basis", "lyndon", "--d", "2", "--level", "4")
    assert code1 == code2 == 0
    assert out1 == out2
    assert "1122" in out1


def test_cli_rho_table():
    code, out = run_cli("rho-table", "--d", "2", "--level", "3", "--format", "json")
    assert code == 0
    rows = {row["hall_word"]: row["rho"] for row in json.loads(out)}
    assert rows["112"] == [
        {"word": "112", "num": "1", "den": "1"},
        {"word": "121", "num": "-1", "den": "1"},
    ]


def test_cli_verify_ok():
    code, out = run_cli("verify", "--suite", "core", "--level", "3")
    assert code == 0
    assert "all checks passed" in out


def test_cli_span_check():
    code, out = run_cli("span-check", "areas", "--d", "2", "--level", "3")
    assert code == 0
    assert json.loads(out)["full_rank"] is True


def test_cli_discrete_area(tmp_path):
    csv = tmp_path / "square.csv"
    csv.write_text("0,0\n1,0\n1,1\n0,1\n0,0\n")
    code, out = run_cli("discrete-area", "--csv", str(csv), "--tree", "a(1,2)")
    assert code == 0
    assert "final: 2" in out


def test_cli_signature(tmp_path):
    csv = tmp_path / "L.csv"
    csv.write_text("1,0\n1,1\n")
    code, out = run_cli("signature", "--csv", str(csv), "--level", "2", "--format", "json")
    assert code == 0
    elem = TensorElem.from_json_obj(json.loads(out), 2)
    assert elem.coeff((1, 2)) == 1 and elem.coeff((2, 1)) == 0


def test_cli_usage_error_exit_code():
    assert main(["eval", "area(1,"]) == 2


def test_cli_term_budget_abort():
    code = main(["--term-budget", "5", "tables", "--d", "2", "--level", "4"])
    assert code == 1


def test_budget_env_override(monkeypatch):
    from areasig import guard

    monkeypatch.setenv("AREASIG_TERM_BUDGET", "123456")
    previous = guard.get_term_budget()
    try:
        assert guard.budget_from_env() == 123456
    finally:
        guard.set_term_budget(previous)


def test_console_script_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "areasig.cli", "eval", "area(1,2)"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "12 - 21"


def test_cli_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2
