import json

from ordlp.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_model_rabbit_text(fixtures, capsys):
    code, out, _ = run(capsys, "model", str(fixtures / "rabbit.lp"), "--depth", "1")
    assert code == 0
    assert "grey(bugs) = T(0)" in out
    assert "white(roger) = T(1)" in out
    assert "delta_P = 2" in out


def test_model_json_deterministic(fixtures, capsys):
    args = ("model", str(fixtures / "example1.lp"), "--depth", "3", "--format", "json")
    code, first, _ = run(capsys, *args)
    assert code == 0
    code, second, _ = run(capsys, *args)
    assert first == second
    payload = json.loads(first)
    assert payload["atoms"]["q"] == {"sign": "T", "degree": "6"}
    assert payload["delta"] == "8"
    assert payload["truncated_heads"] == 1


def test_model_trace(fixtures, capsys):
    code, out, _ = run(
        capsys, "model", str(fixtures / "rabbit.lp"), "--depth", "0",
        "--format", "json", "--trace",
    )
    payload = json.loads(out)
    assert [t["level"] for t in payload["trace"]] == [0, 1, 2, 3]
    assert payload["trace"][0]["true_slice_size"] == 1


def test_malformed_file_exits_one(tmp_path, capsys):
    bad = tmp_path / "bad.lp"
    bad.write_text("p :- & q.")
    code, _, err = run(capsys, "model", str(bad))
    assert code == 1
    assert "line 1" in err


def test_missing_file_exits_one(capsys):
    code, _, err = run(capsys, "model", "no-such-file.lp")
    assert code == 1
    assert "cannot read" in err


def test_body_truncation_exits_one(tmp_path, capsys):
    deep = tmp_path / "deep.lp"
    deep.write_text("b(X) :- ~a(s(X)). a(c).\n")
    code, _, err = run(capsys, "model", str(deep), "--depth", "1")
    assert code == 1
    assert "depth bound" in err


def test_collapse_negneg(fixtures, capsys):
    code, out, _ = run(capsys, "collapse", str(fixtures / "negneg.lp"))
    assert code == 0
    assert "p1 = 0" in out
    assert "3-valued model: yes" in out


def test_collapse_rabbit(fixtures, capsys):
    code, out, _ = run(capsys, "collapse", str(fixtures / "rabbit.lp"))
    assert code == 0
    assert "grey(bugs) = T" in out
    assert "grey(roger) = F" in out
    assert "white(roger) = T" in out


def test_sweep_rabbit_all_stable(fixtures, capsys):
    code, out, _ = run(
        capsys, "sweep", str(fixtures / "rabbit.lp"), "--depths", "1..3"
    )
    assert code == 0
    rows = [line for line in out.splitlines()[1:] if line.strip()]
    assert rows and all(line.endswith("STABLE") for line in rows)


def test_sweep_chain_divergent_probe(fixtures, capsys):
    code, out, _ = run(
        capsys, "sweep", str(fixtures / "example1.lp"), "--depths", "2..5",
        "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    by_atom = {row["atom"]: row for row in payload["atoms"]}
    assert by_atom["q"]["status"] == "DIVERGENT"
    assert [by_atom["q"]["values"][str(d)] for d in range(2, 6)] == [
        "T(4)", "T(6)", "T(8)", "T(10)",
    ]
    assert by_atom["p(c)"]["status"] == "STABLE"
    assert by_atom["p(c)"]["values"]["2"] == "T(0)"


def test_sweep_bad_range(fixtures, capsys):
    code, _, err = run(capsys, "sweep", str(fixtures / "rabbit.lp"), "--depths", "5..2")
    assert code == 1
    assert "range" in err


def test_check_self_negation(fixtures, capsys):
    code, out, _ = run(capsys, "check", str(fixtures / "aneg.lp"))
    assert code == 0
    assert "model: yes" in out
    assert "fixpoint: yes" in out
    assert "least: yes" in out


def test_check_budget_exceeded(fixtures, capsys):
    code, _, err = run(
        capsys, "check", str(fixtures / "rabbit.lp"), "--budget", "5"
    )
    assert code == 3
    assert "budget" in err.lower()


def test_wfs_match(fixtures, capsys):
    code, out, _ = run(capsys, "wfs", str(fixtures / "rabbit.lp"))
    assert code == 0
    assert out.strip().endswith("MATCH")


def test_wfs_rejects_non_normal(fixtures, capsys):
    code, _, err = run(capsys, "wfs", str(fixtures / "negneg.lp"))
    assert code == 1
    assert "normal" in err


def test_oracle_random_small(capsys):
    code, out, _ = run(
        capsys, "oracle", "--random", "--suite", "wfs", "--seed", "7",
        "--count", "20",
    )
    assert code == 0
    assert "wfs-differential: 20/20 pass" in out


def test_oracle_on_file(fixtures, capsys):
    code, out, _ = run(capsys, "oracle", str(fixtures / "negneg.lp"))
    assert code == 0  # violated hypothesis is reported, not a failure
    assert "hypothesis" in out and "violated" in out
    assert "p1 :- ~~p1." in out
    assert "{'p1': 'F'}" in out


def test_oracle_needs_input(capsys):
    code, _, err = run(capsys, "oracle")
    assert code == 1
    assert "file or --random" in err


def test_json_outputs_parse(fixtures, capsys):
    for command in ("model", "collapse", "wfs"):
        code, out, _ = run(
            capsys, command, str(fixtures / "rabbit.lp"), "--format", "json"
        )
        assert code == 0
        json.loads(out)
