from t1kit.cli import run


def _run(*argv):
    lines = []
    code = run(list(argv), out=lines.append)
    return code, lines


def test_eval_and_len():
    assert _run("eval", "-e", "(succ x)", "x=10") == (0, ["011"])
    assert _run("len", "-e", "(pow x)", "x=5") == (0, ["8"])


def test_taut():
    assert _run("taut", "-f", "(= (cat eps x) x)", "x=3") == (0, ["tautology"])
    code, lines = _run("taut", "-f", "(= (succ x) x)", "x=1")
    assert code == 1 and lines[0].startswith("falsified:")


def test_t1_check_corpus():
    code, lines = _run("t1-check", "corpus/eps_cat.t1p", "--falsify", "3")
    assert code == 0
    assert lines[0].startswith("accepted:")


def test_frege_emit():
    code, lines = _run("frege-emit", "--axiom", "2", "--len", "x=2")
    assert code == 0 and lines[-1].endswith("checked OK")


def test_encode_decode():
    code, lines = _run("encode", "(p1 -> p2)")
    assert code == 0
    bits = lines[0].split()
    assert _run("decode", *bits, "--ell", "3") == (0, ["(p1 -> p2)"])
    assert _run("decode", "0100", "--ell", "2") == (1, ["invalid encoding"])


def test_bsvp(tmp_path):
    f = tmp_path / "s.txt"
    f.write_text("((1 -> 0) -> 0)")
    code, lines = _run("bsvp", "--play", str(f))
    assert code == 0 and lines[-1] == "value T"
    f.write_text("(1 -> 0)")
    assert _run("bsvp", "--play", str(f))[0] == 1


def test_usage_errors():
    assert _run("bogus")[0] == 2
    assert _run("verify")[0] == 2
    assert _run("eval", "-e", "x", "x=12")[0] == 2


def test_verify_small_suite():
    code, lines = _run("verify", "triplets")
    assert code == 0 and lines[-1] == "0 failures"
