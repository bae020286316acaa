"""Command-line front end.

Exit codes: 0 success or verified, 1 rejected or falsified, 2 usage error.
"""

import argparse
import os
import sys
from importlib import resources

from . import bsvp, fregemin
from .suites import SUITES, run_suite

EXIT_OK, EXIT_REJECT, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def data_path(path):
    """``path`` itself if it exists, else the copy shipped under the package data."""
    if os.path.exists(path):
        return path
    shipped = resources.files("t1kit") / "data" / path
    if shipped.is_file():
        return str(shipped)
    shipped = resources.files("t1kit") / "data" / os.path.basename(path)
    if shipped.is_file():
        return str(shipped)
    raise UsageError(f"no such file: {path}")


def _read(path):
    with open(data_path(path)) as fh:
        return fh.read()


def _defs(path):
    from .evaluator import load_defs_text, load_stdlib, stdlib_text
    if path is None or os.path.basename(path) == "stdlib.defs":
        return load_stdlib()
    # user definitions build on the standard library
    return load_defs_text(stdlib_text() + "\n" + _read(path))


def _assignments(items, kind):
    out = {}
    for item in items or []:
        name, sep, val = item.partition("=")
        if not sep or not name:
            raise UsageError(f"expected {kind} as name=value, got {item!r}")
        out[name] = val
    return out


def _lengths(items):
    try:
        return {k: int(v) for k, v in _assignments(items, "length").items()}
    except ValueError:
        raise UsageError("lengths must be integers") from None


def _env(items):
    env = _assignments(items, "binding")
    for k, v in env.items():
        if set(v) - {"0", "1"}:
            raise UsageError(f"{k} must be a bit string")
    return env


# ------------------------------------------------------------ commands

def cmd_eval(a, out):
    from .evaluator import eval_term
    out(eval_term(a.expr, _env(a.env), _defs(a.defs)))
    return EXIT_OK


def cmd_len(a, out):
    from .lengths import tlen
    out(str(tlen(a.expr, _lengths(a.lengths), _defs(a.defs))))
    return EXIT_OK


def _formula(a):
    from .propc import translate
    return translate(a.formula, _lengths(a.lengths), _defs(a.defs))


def cmd_translate(a, out):
    from .propc import to_str
    out(to_str(_formula(a), limit=a.limit))
    return EXIT_OK


def cmd_taut(a, out):
    from .propc import atom_name, find_falsifier
    bad = find_falsifier(_formula(a), a.max_atoms)
    if bad is None:
        out("tautology")
        return EXIT_OK
    out("falsified: " + " ".join(f"{atom_name(k)}={int(v)}" for k, v in bad.items()))
    return EXIT_REJECT


def cmd_dimacs(a, out):
    from .propc import export_dimacs
    text = export_dimacs(_formula(a), a.output)
    if a.output is None:
        out(text.rstrip("\n"))
    else:
        out(f"wrote {a.output}")
    return EXIT_OK


def cmd_t1_check(a, out):
    from .t1check import check_proof, falsify, load
    from .termlang import print_formula
    defs = _defs(a.defs)
    proof = load(data_path(a.proof), defs)
    err = check_proof(proof, defs)
    if err:
        out(f"rejected: line {err[0]}: {err[1]}")
        return EXIT_REJECT
    out(f"accepted: {print_formula(proof.theorem)} ({len(proof.lines)} lines)")
    if a.falsify is not None:
        cex = falsify(proof.theorem, a.falsify, defs)
        if cex is not None:
            out(f"counterexample: {cex}")
            return EXIT_REJECT
        out(f"no counterexample up to length {a.falsify}")
    return EXIT_OK


def cmd_frege_emit(a, out):
    from .hilbert import check_rich
    defs = _defs(a.defs)
    lv = _lengths(a.lengths)
    if a.t1:
        from .fregesim import translate_t1_proof
        from .t1check import load
        p = translate_t1_proof(load(data_path(a.t1), defs), lv, defs)
    elif a.axiom:
        from .fregesim import emit_axiom_proof
        p = emit_axiom_proof(a.axiom, _assignments(a.inst, "instance"), lv, defs)
    else:
        raise UsageError("frege-emit needs --t1 <proof> or --axiom <group>")
    err = check_rich(p)
    if a.output:
        with open(a.output, "w") as fh:
            fh.write(p.dump() + "\n")
    elif a.dump:
        out(p.dump())
    if err:
        out(f"rejected: line {err[0]}: {err[1]}")
        return EXIT_REJECT
    out(f"emitted {len(p)} lines; checked OK")
    return EXIT_OK


def cmd_frege_check(a, out):
    text = _read(a.artifact)
    if a.proof:
        p = fregemin.parse_proof(text)
        err = fregemin.check_min(p)
        if err:
            out(f"rejected: {err}")
            return EXIT_REJECT
        out(f"accepted: {fregemin.show(p.theorem)} ({len(p.lines)} lines)")
        return EXIT_OK
    x, y, ell, k = fregemin.load_artifact(text)
    p = fregemin.decode_proof(x, y, ell, k)
    result = fregemin.F(x, y, ell, k)
    if p is None or fregemin.check_min(p) is not None:
        reason = "malformed encoding" if p is None else fregemin.check_min(p)
        out(f"rejected: {reason}")
        out(f"F = {fregemin.group_blocks(result, ell)}")
        return EXIT_REJECT
    out(f"accepted: {fregemin.show(p.theorem)} ({k} lines)")
    out(f"F = {fregemin.group_blocks(result, ell)}")
    return EXIT_OK


def cmd_encode(a, out):
    if a.proof:
        p = fregemin.parse_proof(_read(a.proof))
        if not p.lines:
            raise UsageError("empty proof")
        ell = a.ell or max(fregemin.min_ell(f) for f, _ in p.lines)
        x, y = fregemin.encode_proof(p, ell)
        out(fregemin.dump_artifact(x, y, ell, len(p.lines)).rstrip("\n"))
        return EXIT_OK
    if not a.formula:
        raise UsageError("encode needs a formula or --proof <file>")
    f = fregemin.parse_min(a.formula)
    ell = a.ell or fregemin.min_ell(f)
    out(fregemin.group_blocks(fregemin.encode(f, ell), ell))
    return EXIT_OK


def cmd_decode(a, out):
    bits = "".join(a.bits)
    if not fregemin.formula_valid(bits, a.ell):
        out("invalid encoding")
        return EXIT_REJECT
    out(fregemin.show(fregemin.decode(bits, a.ell)))
    return EXIT_OK


def cmd_bsvp(a, out):
    s = bsvp.parse_sentence(_read(a.play))
    padded, d, mask = bsvp.pad_sentence(s)
    res = bsvp.play_game(padded)
    if a.trace:
        for line in res.trace:
            out(line)
    out(f"leaves {s.leaves()} padded to {padded.leaves()} (d = {d}, mask {mask[0]}-{mask[1]})")
    out(f"winner {res.winner} after {res.rounds} rounds: {res.mistakes[0][1]}")
    out(f"value {'T' if res.winner == bsvp.PEBBLER else 'F'}")
    return EXIT_OK if res.winner == bsvp.PEBBLER else EXIT_REJECT


def cmd_verify(a, out):
    names = [a.suite or a.suite_pos]
    if names == [None]:
        raise UsageError(f"verify needs a suite: {', '.join(SUITES)} or all")
    if names == ["all"]:
        names = list(SUITES)
    bad = 0
    for name in names:
        if name not in SUITES:
            raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
        bounds = {}
        if a.maxlen is not None and name in ("axioms", "lengths", "translation", "stdlib-oracles"):
            bounds["maxlen"] = a.maxlen
        rep = run_suite(name, a.seed, **bounds)
        out(rep.text())
        bad += len(rep.failures)
    out(f"{bad} failures")
    return EXIT_OK if bad == 0 else EXIT_REJECT


# ------------------------------------------------------------ parser

def build_parser():
    p = argparse.ArgumentParser(prog="t1kit", description=__doc__.split("\n")[0])
    p.add_argument("--seed", type=int, default=0, help="seed for every random choice")
    sub = p.add_subparsers(dest="cmd", metavar="COMMAND")

    def add(name, fn, help_):
        q = sub.add_parser(name, help=help_)
        q.set_defaults(fn=fn)
        q.add_argument("-d", "--defs", help="definition file (default: the standard library)")
        return q

    q = add("eval", cmd_eval, "evaluate a term")
    q.add_argument("-e", "--expr", required=True)
    q.add_argument("env", nargs="*", help="bindings name=bits")

    q = add("len", cmd_len, "exact output length of a term")
    q.add_argument("-e", "--expr", required=True)
    q.add_argument("lengths", nargs="*", help="lengths name=n")

    for name, fn, help_ in (("translate", cmd_translate, "propositional translation"),
                            ("taut", cmd_taut, "tautology check of a translation"),
                            ("dimacs", cmd_dimacs, "DIMACS CNF of the negated translation")):
        q = add(name, fn, help_)
        q.add_argument("-f", "--formula", required=True)
        q.add_argument("lengths", nargs="*", help="lengths name=n")
        if name == "translate":
            q.add_argument("--limit", type=int, default=2000, help="truncate printed output")
        if name == "taut":
            q.add_argument("--max-atoms", type=int, default=24)
        if name == "dimacs":
            q.add_argument("-o", "--output")

    q = add("t1-check", cmd_t1_check, "check a T1 proof file")
    q.add_argument("proof")
    q.add_argument("--falsify", type=int, metavar="MAXLEN",
                   help="also search for a counterexample up to this length")

    q = add("frege-emit", cmd_frege_emit, "emit a Frege proof of a translation")
    q.add_argument("--t1", help="T1 proof file")
    q.add_argument("--axiom", help="axiom group id")
    q.add_argument("--inst", nargs="*", help="axiom instance meta=text")
    q.add_argument("--len", dest="lengths", nargs="*", default=[], help="lengths name=n")
    q.add_argument("-o", "--output")
    q.add_argument("--dump", action="store_true", help="print the proof")

    q = add("frege-check", cmd_frege_check, "check a minimal Frege proof")
    q.add_argument("artifact", help="encoded artifact (or text proof with --proof)")
    q.add_argument("--proof", action="store_true", help="input is a text proof")

    q = add("encode", cmd_encode, "Gödel-encode a formula or proof")
    q.add_argument("formula", nargs="?")
    q.add_argument("--ell", type=int)
    q.add_argument("--proof", help="text proof file")

    q = add("decode", cmd_decode, "decode an encoded formula")
    q.add_argument("bits", nargs="+")
    q.add_argument("--ell", type=int, required=True)

    q = add("bsvp", cmd_bsvp, "play the sentence-value game")
    q.add_argument("--play", required=True, help="sentence file")
    q.add_argument("--trace", action="store_true")

    q = add("verify", cmd_verify, "run an invariant suite")
    q.add_argument("suite_pos", nargs="?", metavar="SUITE")
    q.add_argument("--suite")
    q.add_argument("--maxlen", type=int)
    q.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    return p


def run(argv=None, out=print):
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if not getattr(a, "fn", None):
        parser.print_help()
        return EXIT_USAGE
    try:
        return a.fn(a, out)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError, OSError) as e:
        # parse errors and malformed inputs are rejections of the input
        print(f"error: {e}", file=sys.stderr)
        return EXIT_REJECT


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
