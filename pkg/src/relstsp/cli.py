"""Command line: evaluate words, run verification suites, decompose unipotent elements.

Exit codes: 0 all checks pass, 1 at least one failure, 2 configuration or parse error.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .catalog import catalog_names, match_filter, section_of, verify_identity_catalog
from .generators import PreconditionError
from .parsing import ParseError, parse_abs_word, parse_matrix, parse_rel_word, parse_vdk_gen, parse_vdk_word
from .relative import (
    NotUnipotent,
    check_rel_gen,
    eval_rel_word,
    rebuild_unipotent,
    recognize_unipotent_matrix,
    verify_kl_relations,
)
from .report import Report
from .ring import Ring, RingMismatch, parse_form_ideal, validate_form_ideal
from .space import check_rank
from .vdk import (
    verify_kl_for_vdk,
    verify_round_trips,
    verify_t_relations,
    vdk_eval,
    vdk_unipotent_decompose,
)
from .words import verify_steinberg_relations

SUITES = ("steinberg", "kl", "catalog", "t", "kl-vdk", "roundtrip", "form-ideal")
OK, FAILED, CONFIG = 0, 1, 2


class ConfigError(Exception):
    pass


def _common(p: argparse.ArgumentParser):
    p.add_argument("--ring", default="z", help="z or zmod:<m>")
    p.add_argument("--l", type=int, default=3, help="rank (>= 3)")
    p.add_argument("--ideal", default="1", help="comma-separated generators of I")
    p.add_argument("--gamma", default="max", help="max, min or comma-separated generators")
    p.add_argument("--output", default="-", help="output path, '-' for stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="relstsp", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="print the image matrix of a word")
    _common(ev)
    ev.add_argument("--dialect", choices=("abs", "rel", "vdk"), default="abs")
    ev.add_argument("word", nargs="?", default="")

    ve = sub.add_parser("verify", help="run a verification suite, one JSON record per line")
    _common(ve)
    ve.add_argument("suite", choices=SUITES)
    ve.add_argument("--trials", type=int, default=50)
    ve.add_argument("--seed", type=int, default=0)
    ve.add_argument("--lemma", action="append", default=[], help="catalog entry filter (repeatable, comma lists ok)")
    ve.add_argument("--exhaustive", action="store_true", help="steinberg: sweep all parameters for one index tuple")
    ve.add_argument("--via", choices=("esd", "z"), default="z", help="t: evaluate generators through Z-words or closed form")

    de = sub.add_parser("decompose", help="normal form of a unipotent matrix or a vdK generator")
    _common(de)
    de.add_argument("kind", choices=("unipotent", "vdk"))
    de.add_argument("input", help="JSON matrix rows (unipotent) or a vdK generator")
    de.add_argument("--pivot", type=int, default=1, help="unipotent: the radical U_i to test")
    return ap


def _config(args):
    try:
        ring = Ring.parse(args.ring)
        check_rank(args.l)
        F = parse_form_ideal(ring, args.ideal, args.gamma)
        _ = F.gamma_level
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return ring, F


def _open(path: str):
    return sys.stdout if path == "-" else open(path, "w", encoding="utf-8")


def _print_matrix(M, out):
    for row in M.rows:
        out.write(" ".join(str(x) for x in row) + "\n")


def cmd_eval(args) -> int:
    ring, F = _config(args)
    l = args.l
    if args.dialect == "abs":
        M = parse_abs_word(args.word, ring, l).eval()
    elif args.dialect == "rel":
        w = parse_rel_word(args.word, ring, l)
        for at in w.atoms:
            try:
                check_rel_gen(at.x, F)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        M = eval_rel_word(w)
    else:
        M = vdk_eval(parse_vdk_word(args.word, ring, l))
    out = _open(args.output)
    try:
        _print_matrix(M, out)
        out.write("gram_check: %s\n" % ("pass" if M.is_symplectic() else "fail"))
    finally:
        if out is not sys.stdout:
            out.close()
    return OK if M.is_symplectic() else FAILED


def _lemmas(raw: List[str]) -> Optional[List[str]]:
    items = [x.strip() for r in raw for x in r.split(",") if x.strip()]
    return items or None


def run_suite(args) -> Report:
    ring, F = _config(args)
    if args.trials < 1:
        raise ConfigError("trials must be >= 1")
    l, n, seed = args.l, args.trials, args.seed
    suite = args.suite
    if suite in ("t", "kl-vdk", "roundtrip") and not F.is_maximal:
        raise ConfigError("suite %s needs Gamma = I (got %s)" % (suite, F.describe()))
    if suite == "steinberg":
        if args.exhaustive and not ring.is_finite:
            raise ConfigError("--exhaustive needs a finite ring")
        return verify_steinberg_relations(ring, l, n, seed, exhaustive=args.exhaustive)
    if suite == "kl":
        return verify_kl_relations(ring, F, l, n, seed)
    if suite == "catalog":
        lemmas = _lemmas(args.lemma)
        try:
            names = match_filter(catalog_names(), lemmas)
        except KeyError as exc:
            raise ConfigError(exc.args[0]) from None
        if lemmas and not F.is_maximal:
            needs_max = [x for x in names if section_of(x) == 3]
            if needs_max:
                raise ConfigError("entries %s need Gamma = I" % ", ".join(needs_max))
        return verify_identity_catalog(ring, F, l, n, seed, lemmas)
    if suite == "t":
        return verify_t_relations(ring, F, l, n, seed, via=args.via)
    if suite == "kl-vdk":
        return verify_kl_for_vdk(ring, F, l, n, seed)
    if suite == "roundtrip":
        return verify_round_trips(ring, F, l, n, seed)
    rep = validate_form_ideal(F, samples=n, seed=seed)
    report = Report("form-ideal")
    for axiom in ("subset", "a", "b", "c"):
        bad = [v for v in rep.violations if v["axiom"] == axiom]
        report.add(axiom, {"form_ideal": F.describe(), "exhaustive": rep.exhaustive, "violations": bad[:5]}, not bad)
    return report


def cmd_verify(args) -> int:
    report = run_suite(args)
    out = _open(args.output)
    try:
        for line in report.lines():
            out.write(line + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    summary = report.summary()
    for entry, counts in summary.items():
        sys.stderr.write("%-24s pass %d fail %d skip %d\n" % (entry, counts["pass"], counts["fail"], counts["skip"]))
    return OK if report.ok else FAILED


def cmd_decompose(args) -> int:
    ring, F = _config(args)
    l = args.l
    out = _open(args.output)
    try:
        if args.kind == "unipotent":
            M = parse_matrix(args.input, ring, l)
            i = args.pivot
            if i == 0 or abs(i) > l:
                raise ConfigError("pivot %d out of range" % i)
            try:
                alpha, coeffs = recognize_unipotent_matrix(i, M, F)
            except NotUnipotent as exc:
                out.write("not recognized (%s): %s\n" % (exc.kind, exc))
                return FAILED
            out.write("pivot %d\n" % i)
            out.write("alpha %d\n" % alpha)
            for j, a in coeffs.items():
                out.write("a[%d] %d\n" % (j, a))
            same = eval_rel_word(rebuild_unipotent(i, alpha, coeffs, ring, l)) == M
            out.write("normal form %s\n" % rebuild_unipotent(i, alpha, coeffs, ring, l))
            out.write("rebuild: %s\n" % ("equal" if same else "MISMATCH"))
            return OK if same else FAILED
        g = parse_vdk_gen(args.input, ring, l)
        if not F.is_maximal:
            raise ConfigError("vdK generators need Gamma = I")
        try:
            g.check(F)
            w = vdk_unipotent_decompose(g)
        except PreconditionError as exc:
            out.write("cannot decompose: %s\n" % exc)
            return FAILED
        for x in w.gens:
            out.write(str(x) + "\n")
        same = vdk_eval(w) == vdk_eval(parse_vdk_word(args.input, ring, l))
        out.write("image: %s\n" % ("equal" if same else "MISMATCH"))
        return OK if same else FAILED
    finally:
        if out is not sys.stdout:
            out.close()


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return CONFIG if exc.code else OK
    handlers = {"eval": cmd_eval, "verify": cmd_verify, "decompose": cmd_decompose}
    try:
        return handlers[args.command](args)
    except (ConfigError, ParseError, RingMismatch, PreconditionError, ValueError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return CONFIG


if __name__ == "__main__":
    sys.exit(main())
