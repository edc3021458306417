import json

import pytest

from abfib.cli import build_parser, main


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_classify_all(capsys):
    code, out, err = run(["classify", "all"], capsys)
    assert code == 0 and not err
    assert "classify/admissible-set" in out
    assert out.count("DOCUMENTED-RULE") >= 5


def test_classify_case_insensitive(capsys):
    code, out, _ = run(["classify", "SU2xSU2"], capsys)
    assert code == 0
    assert "classify/su2xsu2/(0,2,0)" in out
    assert "classify/su2xsu2/(0,0,0)" in out


def test_classify_bogus_exits_2(capsys):
    code, out, err = run(["classify", "bogus"], capsys)
    assert code == 2 and not out
    assert "unknown holonomy class" in err


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main([])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["report", "everything"])
    assert e.value.code == 2
    capsys.readouterr()


def test_torus_bundled_and_missing(capsys):
    code, out, _ = run(["torus", "bielliptic.scn"], capsys)
    assert code == 0
    assert "torus/bielliptic/hodge" in out
    code, _, err = run(["torus", "no-such.scn"], capsys)
    assert code == 2 and "no scenario file" in err


def test_torus_malformed_exits_2_with_line(tmp_path, capsys):
    f = tmp_path / "broken.scn"
    f.write_text("version 1\nname broken\nfactor torus e1\ngenerator z2\n")
    code, out, err = run(["torus", str(f)], capsys)
    assert code == 2 and not out
    assert "line 4" in err


def test_weierstrass_rejects_bad_primes(capsys):
    for p in ("2", "3", "263", "91"):
        code, _, err = run(["weierstrass", "--p", p, "--trials", "1"], capsys)
        assert code == 2, p
        assert "abfib: error" in err
    code, _, _ = run(["weierstrass", "--trials", "0"], capsys)
    assert code == 2


def test_weierstrass_small_run(capsys):
    code, out, _ = run(
        ["weierstrass", "--l", "1", "--p", "101", "--trials", "3", "--seed", "0"],
        capsys,
    )
    assert code == 0
    assert "weierstrass/smoothness" in out


def test_jacfib_via_cli(capsys):
    code, out, _ = run(["jacfib", "--format", "json"], capsys)
    assert code == 0
    tree = json.loads(out)
    checks = [r["check"] for r in tree["records"]]
    assert "jacfib/admissible-set" in checks


def test_formats_share_one_tree(capsys):
    code, as_json, _ = run(["classify", "su3", "--format", "json"], capsys)
    assert code == 0
    code, as_text, _ = run(["classify", "su3", "--format", "text"], capsys)
    assert code == 0
    tree = json.loads(as_json)
    for record in tree["records"]:
        assert record["check"] in as_text
        assert record["status"] in as_text
        assert record["citation"] in as_text


def test_seed_resolution(monkeypatch, capsys):
    code, out, _ = run(["jacfib", "--seed", "5", "--format", "json"], capsys)
    assert json.loads(out)["invocation"]["seed"] == 5
    monkeypatch.setenv("ABFIB_SEED", "9")
    code, out, _ = run(["jacfib", "--format", "json"], capsys)
    assert json.loads(out)["invocation"]["seed"] == 9
    code, out, _ = run(["jacfib", "--seed", "4", "--format", "json"], capsys)
    assert json.loads(out)["invocation"]["seed"] == 4
    monkeypatch.setenv("ABFIB_SEED", "not-a-number")
    code, _, err = run(["jacfib"], capsys)
    assert code == 2 and "ABFIB_SEED" in err


def test_byte_identical_repeat_runs(capsys):
    argv = ["weierstrass", "--trials", "3", "--seed", "2", "--format", "json"]
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    assert first == second


def test_parser_window_flag(capsys):
    code, out, _ = run(
        ["classify", "su4", "--window", "-10", "-3", "--format", "json"], capsys
    )
    assert code == 0
    tree = json.loads(out)
    assert tree["invocation"]["arguments"]["window"] == [-10, -3]


def test_parser_prog_name():
    assert build_parser().prog == "abfib"
