"""Command-line interface: parsing, exit codes, output formats, determinism."""

import json

import pytest

from hornkit import cli
from hornkit.strings import StepString, string_to_partition
from hornkit.tangent import hat_X, hat_Y, render_pattern
from hornkit.witness import GenericityExhausted

MID = "0,3,3/3x4 ; 1,3,3/3x4"
PRINTED = "0,1,3,3/4x5 ; 3,3,3,5/4x5"


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- exit codes ---------------------------------------------------------------


def test_check_nonzero_exits_zero(capsys):
    code, out, _ = run(capsys, ["check", "2,2/2x2 ; 2,2/2x2"])
    assert code == 0
    assert json.loads(out)["nonzero"] is True


def test_check_zero_exits_ten(capsys):
    code, out, _ = run(capsys, ["check", "0,1/2x2 ; 0,1/2x2 ; 0,1/2x2"])
    assert code == 10
    assert json.loads(out)["nonzero"] is False


def test_parse_error_reports_class_position(capsys):
    code, _, err = run(capsys, ["check", "0,3/2x2"])
    assert code == 2 and "class 1" in err
    code, _, err = run(capsys, ["check", "0,1/2x2 ; 0,1/2x3"])
    assert code == 2 and "class 2" in err and "expected 2x2" in err
    code, _, err = run(capsys, ["check", ""])
    assert code == 2 and "no classes" in err


def test_witness_on_nonzero_product_exits_three(capsys):
    code, _, err = run(capsys, ["witness", "2,2/2x2 ; 2,2/2x2"])
    assert code == 3 and err.startswith("error:")


def test_witness_genericity_exhaustion_exits_four(capsys, monkeypatch):
    def always_exhausted(*a, **k):
        raise GenericityExhausted("forced for the exit-code test")

    monkeypatch.setattr(cli, "find_witness", always_exhausted)
    code, _, err = run(capsys, ["witness", MID])
    assert code == 4 and "error:" in err


def test_method_disagreement_exits_one(capsys, monkeypatch):
    monkeypatch.setattr(cli, "lr_oracle", lambda *a, **k: True)
    code, _, err = run(capsys, ["check", "0,1/2x2 ; 0,1/2x2 ; 0,1/2x2"])
    assert code == 1 and "methods disagree" in err


def test_argparse_failures_exit_two(capsys):
    assert run(capsys, ["check", MID, "--method", "bogus"])[0] == 2
    assert run(capsys, ["frobnicate"])[0] == 2
    assert run(capsys, [])[0] == 2


def test_bad_config_exits_two(capsys):
    code, _, err = run(capsys, ["check", MID, "--prime", "10"])
    assert code == 2 and "prime" in err
    assert run(capsys, ["check", MID, "--prime", "4"])[0] == 2
    code, _, err = run(capsys, ["check", MID, "--trials", "0"])
    assert code == 2 and "trials" in err


# --- check --------------------------------------------------------------------


def test_check_json_document(capsys):
    code, out, _ = run(capsys, ["check", MID])
    assert code == 10
    doc = json.loads(out)
    assert doc["classes"] == ["0,3,3/3x4", "1,3,3/3x4"]
    assert (doc["r"], doc["n"], doc["s"]) == (3, 7, 2)
    assert set(doc["methods"]) == {"horn", "lr", "numeric"}
    assert doc["nonzero"] is False
    horn = doc["methods"]["horn"]
    assert horn["violated"] == {
        "d": 1,
        "cap": 2,
        "mus": [[0], [2]],
        "indices": [[1], [3]],
        "rhs": 4,
        "slack": -1,
    }
    numeric = doc["methods"]["numeric"]
    assert numeric["achieved_dim"] == 2 and numeric["expected_dim"] == 1
    assert doc["methods"]["lr"]["violated"] is None


def test_check_single_method(capsys):
    code, out, _ = run(capsys, ["check", MID, "--method", "lr"])
    assert code == 10
    assert list(json.loads(out)["methods"]) == ["lr"]


def test_check_small_prime_numeric(capsys):
    code, out, _ = run(capsys, ["check", MID, "--method", "numeric", "--prime", "97"])
    assert code == 10
    assert json.loads(out)["methods"]["numeric"]["nonzero"] is False


def test_check_text_format(capsys):
    _, out, _ = run(capsys, ["check", PRINTED, "--format", "text"])
    assert out.splitlines() == [
        "classes: 0,1,3,3/4x5 ; 3,3,3,5/4x5 (s=2 on Gr(4,9))",
        "horn: zero (violated d=1 indices {2} {3} rhs 5 slack -1)",
        "lr: zero",
        "numeric: zero (achieved 2, expected 1)",
        "verdict: zero",
    ]


def test_check_diagram_format(capsys):
    _, out, _ = run(capsys, ["check", MID, "--format", "diagram"])
    lines = out.splitlines()
    assert lines[:4] == [".**", "+#*", "+#*", "+++"]
    assert lines[4] == ""
    assert lines[5].startswith("classes:")


# --- inequalities ---------------------------------------------------------------


def test_inequalities_ndjson_exact(capsys):
    code, out, _ = run(capsys, ["inequalities", "2", "4", "2"])
    assert code == 0
    assert out.splitlines() == [
        '{"d":1,"cap":1,"mus":[[0],[1]],"indices":[[1],[2]],"rhs":2}',
        '{"d":1,"cap":1,"mus":[[1],[0]],"indices":[[2],[1]],"rhs":2}',
        '{"d":1,"cap":1,"mus":[[1],[1]],"indices":[[2],[2]],"rhs":2}',
        '{"d":2,"cap":0,"mus":[[0,0],[0,0]],"indices":[[1,2],[1,2]],"rhs":4}',
    ]


def test_inequalities_smallest(capsys):
    _, out, _ = run(capsys, ["inequalities", "1", "2", "2"])
    assert out.splitlines() == [
        '{"d":1,"cap":0,"mus":[[0],[0]],"indices":[[1],[1]],"rhs":1}'
    ]


def test_inequalities_limit_and_text(capsys):
    _, out, _ = run(capsys, ["inequalities", "3", "7", "2", "--limit", "5"])
    assert len(out.splitlines()) == 5
    _, out, _ = run(capsys, ["inequalities", "2", "4", "2", "--format", "text"])
    assert out.splitlines()[0] == "d=1 rhs=2 indices {1} {2}"


def test_inequalities_bad_shape(capsys):
    code, _, err = run(capsys, ["inequalities", "3", "3", "2"])
    assert code == 2 and err.startswith("error:")


# --- witness --------------------------------------------------------------------


def test_witness_json_document(capsys):
    code, out, _ = run(capsys, ["witness", MID])
    assert code == 10
    doc = json.loads(out)
    assert doc["classes"] == ["0,3,3/3x4", "1,3,3/3x4"]
    assert doc["certificates"] == ["202", "202"]
    assert doc["final"]["indices"] == [[1, 3], [1, 3]]
    assert doc["final"]["rhs"] == 8
    assert doc["slack"] == -1
    assert [lvl["r"] for lvl in doc["levels"]] == [3, 2]
    assert doc["levels"][0]["kernel_positions"] == ["101", "101"]


def test_witness_deterministic_bytes(capsys):
    _, first, _ = run(capsys, ["witness", MID])
    _, second, _ = run(capsys, ["witness", MID])
    assert first == second


def test_witness_text_format(capsys):
    _, out, _ = run(capsys, ["witness", MID, "--format", "text"])
    assert out.splitlines() == [
        "classes: 0,3,3/3x4 ; 1,3,3/3x4 (s=2 on Gr(3,7))",
        "level 1: Gr(3,7) (rank 1, nullity 2)",
        "  kernel positions: 101 ; 101",
        "  lifted: 2000120 ; 0200120",
        "level 2: Gr(2,6) terminal (rank 0, nullity 2)",
        "  kernel positions: 11 ; 11",
        "  lifted: 200020 ; 020020",
        "certificates: 202 ; 202",
        "final: d=2 rhs=8 indices {1,3} {1,3}",
        "slack: -1",
    ]


def test_witness_diagram_format(capsys):
    _, out, _ = run(capsys, ["witness", MID, "--format", "diagram"])
    assert out.splitlines() == [
        "level 1: Gr(3,7)",
        "*.*",
        "#+*",
        "#+*",
        "+++",
        " +*",
        "",
        "level 2: Gr(2,6) terminal",
        ".*",
        "+*",
        "+*",
        "++",
        "",
        "final: d=2 rhs=8 indices {1,3} {1,3} slack -1",
    ]


# --- diagram --------------------------------------------------------------------


def test_diagram_partition(capsys):
    _, out, _ = run(capsys, ["diagram", "0,1,3,3/4x5"])
    assert out == ".***\n..**\n..**\n....\n....\n"


def test_diagram_zero_partition(capsys):
    _, out, _ = run(capsys, ["diagram", "0,0/2x2"])
    assert out == "..\n..\n"


def test_diagram_01_word_matches_partition_form(capsys):
    _, from_word, _ = run(capsys, ["diagram", "1000110"])
    _, from_parts, _ = run(capsys, ["diagram", "0,3,3/3x4"])
    assert from_word == from_parts
    lam = string_to_partition(StepString("1000110", 1))
    assert from_word == render_pattern(hat_X(lam)) + "\n"


def test_diagram_012_word_with_blocks(capsys):
    code, out, _ = run(capsys, ["diagram", "021010201"])
    assert code == 0
    lines = out.splitlines()
    assert lines[:7] == [
        "*****",
        ".**.*",
        "..*.*",
        "..*..",
        "   .*",
        "   .*",
        "   ..",
    ]
    model = hat_Y(StepString("021010201", 2), 2, 5, 9)
    expected_blocks = "".join(
        f"\n{name}:\n{render_pattern(block)}\n"
        for name, block in zip(("01", "02", "12"), model.blocks)
    )
    assert out == "\n".join(lines[:7]) + "\n" + expected_blocks


def test_diagram_shape_validation(capsys):
    assert run(capsys, ["diagram", "021010201", "--shape", "2,5,9"])[0] == 0
    assert run(capsys, ["diagram", "021010201", "--shape", "3,5,9"])[0] == 2
    assert run(capsys, ["diagram", "021010201", "--shape", "2,5"])[0] == 2
    assert run(capsys, ["diagram", "021010201", "--shape", "a,b,c"])[0] == 2


def test_diagram_rejects_garbage(capsys):
    assert run(capsys, ["diagram", "abc"])[0] == 2
    assert run(capsys, ["diagram", ""])[0] == 2
    assert run(capsys, ["diagram", "0,3/1x2x3"])[0] == 2


# --- flag plumbing ----------------------------------------------------------------


def test_flags_accepted_before_and_after_subcommand(capsys):
    code_a, out_a, _ = run(capsys, ["--seed", "3", "witness", MID])
    code_b, out_b, _ = run(capsys, ["witness", MID, "--seed", "3"])
    assert (code_a, out_a) == (code_b, out_b)
    code_c, out_c, _ = run(capsys, ["--format", "text", "inequalities", "2", "4", "2"])
    code_d, out_d, _ = run(capsys, ["inequalities", "2", "4", "2", "--format", "text"])
    assert (code_c, out_c) == (code_d, out_d)


def test_seed_env_variable(capsys, monkeypatch):
    monkeypatch.setenv("HORNKIT_SEED", "5")
    code, out_env, _ = run(capsys, ["witness", MID])
    assert code == 10
    code, out_flag, _ = run(capsys, ["witness", MID, "--seed", "5"])
    assert out_env == out_flag


def test_bad_seed_env_exits_two_only_when_used(capsys, monkeypatch):
    monkeypatch.setenv("HORNKIT_SEED", "not-a-number")
    code, _, err = run(capsys, ["witness", MID])
    assert code == 2 and "HORNKIT_SEED" in err
    # an explicit --seed means the environment is never consulted
    code, _, _ = run(capsys, ["witness", MID, "--seed", "0"])
    assert code == 10


def test_run_config_validation():
    with pytest.raises(cli.CLIError):
        cli.RunConfig(prime=9)
    with pytest.raises(cli.CLIError):
        cli.RunConfig(trials=0)
    with pytest.raises(cli.CLIError):
        cli.RunConfig(fmt="yaml")
    cfg = cli.RunConfig()
    assert cfg.prime == 2147483647 and cfg.seed == 0 and cfg.trials == 3


def test_is_prime_spot_checks():
    assert cli._is_prime(2) and cli._is_prime(97) and cli._is_prime(2147483647)
    assert not cli._is_prime(1) and not cli._is_prime(561) and not cli._is_prime(2**31)
    # a strong pseudoprime to several small bases, caught by the full base set
    assert not cli._is_prime(3215031751)
