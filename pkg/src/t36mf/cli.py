"""Command-line front end.

Exit codes: 0 success, 1 verification or computation failure, 2 usage or
parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence, Tuple

from .canon import build_P, to_latex as P_latex, to_text as P_text, truncate_P
from .curve import BadLambda, CurveData, factored, make_curve
from .factor import NotFactorization, build_Q, complement
from .matrixio import MatrixFormatError, dumps_matrix, read_matrix
from .pencil import EigenvalueNotInField, PencilFormatError, decompose, load_pencil
from .poly import PolyMatrix
from .present import minimal_presentation
from .verify import branch_invariants, collision_table, is_mf, report_dict
from .words import UnsupportedBlock, Word, WordSyntaxError, blocks_to_words, enumerate_words, parse_word, word_text

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- rendering -----------------------------------------------------------------------

def render_text(m: PolyMatrix, labels: Sequence[str], curve: CurveData,
                row_labels: Optional[Sequence[str]] = None) -> str:
    cells = [[factored(e, curve) for e in m.row(i)] for i in range(m.rows)]
    labs = list(labels) or [""] * m.cols
    rlabs = list(row_labels) if row_labels is not None else list(labels) or [""] * m.rows
    w = max([len(c) for r in cells for c in r] + [len(l) for l in labs] + [1])
    lw = max([len(l) for l in rlabs] + [1])
    out = [" " * (lw + 3) + "  ".join(l.rjust(w) for l in labs)]
    for lab, r in zip(rlabs, cells):
        out.append(lab.ljust(lw) + " | " + "  ".join(c.rjust(w) for c in r))
    return "\n".join(out)


def render_latex(m: PolyMatrix, curve: CurveData) -> str:
    lines = [r"\left(\begin{array}{" + "c" * m.cols + "}"]
    for i in range(m.rows):
        lines.append(" & ".join(factored(e, curve, latex=True) for e in m.row(i)) + r" \\")
    lines.append(r"\end{array}\right)")
    return "\n".join(lines)


# -- helpers -------------------------------------------------------------------------

def _curve(args) -> CurveData:
    mode = args.lam if args.lam is not None else os.environ.get("T36_LAMBDA")
    try:
        return make_curve(mode)
    except BadLambda as exc:
        raise UsageError(str(exc)) from exc


def _word(text: str) -> Word:
    try:
        return parse_word(text)
    except WordSyntaxError as exc:
        raise UsageError(str(exc)) from exc


def _max_n(args) -> int:
    if args.max_n < 1:
        raise UsageError("--max-n must be at least 1")
    return args.max_n


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# -- commands ------------------------------------------------------------------------

def cmd_words(args) -> int:
    ws = enumerate_words(_max_n(args))
    if args.format == "json":
        data = [{"word": w.cli(), "family": w.family, "n": w.n, "left_cut": w.left_cut,
                 "right_cut": w.right_cut, "letters": word_text(w)} for w in ws]
        _emit(json.dumps(data, ensure_ascii=False, indent=1))
    else:
        _emit("\n".join(f"{w.cli():<10} {word_text(w)}" for w in ws))
    return EXIT_OK


def cmd_build(args) -> int:
    curve = _curve(args)
    w = _word(args.word)
    q = build_Q(w, curve)
    psi = None
    if args.with_complement:
        try:
            psi = complement(q, curve)
        except NotFactorization as exc:
            print(f"error: {w.cli()}: {exc}", file=sys.stderr)
            return EXIT_FAIL
    if args.format == "json":
        extra = {"word": w.cli(), "labels": list(q.labels)}
        if psi is not None:
            extra["complement"] = [[str(e) for e in psi.row(i)] for i in range(psi.rows)]
        _emit(dumps_matrix(q.Q, curve.lambda_mode, **extra))
    elif args.format == "latex":
        _emit(render_latex(q.Q, curve))
        if psi is not None:
            _emit("% complement\n" + render_latex(psi, curve))
    else:
        _emit(f"Q[{w.cli()}]  {word_text(w)}  ({q.size}x{q.size}, lambda {curve.lambda_mode})")
        _emit(render_text(q.Q, q.labels, curve))
        if psi is not None:
            _emit("\ncomplement psi = F * Q^-1")
            _emit(render_text(psi, q.labels, curve))
    return EXIT_OK


def cmd_canon(args) -> int:
    w = _word(args.word)
    P = build_P(w.untruncated)
    if w.cuts:
        P = truncate_P(P, w)
    _emit(P_latex(P) if args.format == "latex" else P_text(P))
    return EXIT_OK


def cmd_present(args) -> int:
    curve = _curve(args)
    w = _word(args.word)
    P = build_P(w.untruncated)
    if w.cuts:
        P = truncate_P(P, w)
    rng = random.Random(args.seed) if args.seed is not None else None
    mp = minimal_presentation(P, curve, rng)
    if args.format == "json":
        _emit(dumps_matrix(mp.Q, curve.lambda_mode, word=w.cli(), labels=list(mp.labels),
                           row_tags=[f"{k}:{l}" for k, l in mp.row_tags]))
    elif args.format == "latex":
        _emit(render_latex(mp.Q, curve))
    else:
        _emit(render_text(mp.Q, mp.labels, curve, [f"{k}:{l}" for k, l in mp.row_tags]))
    return EXIT_OK


def _verify_word(job: Tuple[str, Optional[str]]) -> dict:
    text, mode = job
    curve = make_curve(mode)
    w = parse_word(text)
    Q = build_Q(w, curve).Q
    rep = is_mf(Q, curve)
    inv = branch_invariants(Q, curve)
    return report_dict(w.cli(), rep, inv, curve.lambda_mode)


def _run_jobs(jobs: List[Tuple[str, Optional[str]]], n_jobs: int) -> List[dict]:
    if n_jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as ex:
            return list(ex.map(_verify_word, jobs))
    return [_verify_word(j) for j in jobs]


def _print_reports(reports: List[dict], fmt: str) -> None:
    if fmt == "json":
        _emit(json.dumps(reports if len(reports) != 1 else reports[0], ensure_ascii=False))
        return
    for r in reports:
        status = "PASS" if r["ok"] and r["minimal"] else "FAIL"
        det = "x^{}*z^{}*z'^{}".format(*r["det_exponents"]) if r["det_exponents"] else "?"
        line = f"{status} {r['word'] or '<matrix>':<10} size {r['size']:<3} ok={r['ok']} minimal={r['minimal']} det~{det}"
        if r.get("detail"):
            line += f"  ({r['detail']})"
        _emit(line)


def cmd_verify(args) -> int:
    curve = _curve(args)
    if sum(x is not None and x is not False for x in (args.word, args.matrix, args.all or None)) != 1:
        raise UsageError("give exactly one of --word, --matrix, --all")
    if args.matrix:
        try:
            Q, lam, meta = read_matrix(args.matrix)
        except (OSError, MatrixFormatError) as exc:
            raise UsageError(f"{args.matrix}: {exc}") from exc
        if lam != "symbolic" and args.lam is None:
            try:
                curve = make_curve(lam)
            except BadLambda as exc:
                raise UsageError(str(exc)) from exc
        rep = is_mf(Q, curve)
        inv = branch_invariants(Q, curve) if rep.ok else None
        reports = [report_dict(meta.get("word"), rep, inv, curve.lambda_mode)]
    else:
        words = [_word(args.word)] if args.word else enumerate_words(_max_n(args))
        jobs = [(w.cli(), None if curve.symbolic else str(curve.lam)) for w in sorted(words, key=Word.sort_key)]
        reports = _run_jobs(jobs, args.jobs)
    _print_reports(reports, args.format)
    return EXIT_OK if all(r["ok"] and r["minimal"] for r in reports) else EXIT_FAIL


def cmd_pencil(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            p = load_pencil(fh.read())
    except (OSError, PencilFormatError) as exc:
        raise UsageError(f"{args.file}: {exc}") from exc
    try:
        blocks = decompose(p)
    except EigenvalueNotInField as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    try:
        words = [w.cli() for w in blocks_to_words(blocks)]
    except UnsupportedBlock:
        words = None
    if args.format == "json":
        _emit(json.dumps({"blocks": [str(b) for b in blocks], "words": words}, ensure_ascii=False))
    else:
        _emit(", ".join(str(b) for b in blocks))
        if words is not None:
            _emit("words: " + ", ".join(words))
    return EXIT_OK


def cmd_invariants(args) -> int:
    curve = _curve(args)
    if bool(args.word) == bool(args.all):
        raise UsageError("give exactly one of --word, --all")
    words = [_word(args.word)] if args.word else enumerate_words(_max_n(args))
    lam0 = None
    if args.branch_lambda is not None:
        try:
            lam0 = make_curve(args.branch_lambda).lam
        except BadLambda as exc:
            raise UsageError(str(exc)) from exc
    rows = [(w.cli(), branch_invariants(build_Q(w, curve).Q, curve, lam0)) for w in words]
    clashes = collision_table(rows) if len(rows) > 1 else []
    if args.format == "json":
        _emit(json.dumps({
            "lambda_mode": curve.lambda_mode,
            "invariants": {w: inv.as_json() for w, inv in rows},
            "collisions": [ws for _, ws in clashes],
        }, ensure_ascii=False))
    else:
        for w, inv in rows:
            _emit(f"{w:<10} " + "  ".join("{" + ",".join(map(str, vs)) + "}" for vs in inv.as_json()))
        if len(rows) > 1:
            _emit(f"\n{len(clashes)} collision group(s)")
            for key, ws in clashes:
                _emit(f"  {key}: {' '.join(ws)}")
    return EXIT_OK


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lambda", dest="lam", default=None,
                        help="'symbolic' or a rational p/q not in {0, 1} (default: $T36_LAMBDA or symbolic)")
    common.add_argument("--format", choices=("text", "json", "latex"), default="text")

    ap = argparse.ArgumentParser(prog="t36", description="Matrix factorizations for the T36 curve x(x-y^2)(x-l*y^2).")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("words", parents=[common], help="list word types")
    p.add_argument("--max-n", type=int, default=1)
    p.set_defaults(func=cmd_words)

    mf = sub.add_parser("mf", help="build and verify matrix factorizations")
    mfs = mf.add_subparsers(dest="mf_command", required=True)

    p = mfs.add_parser("build", parents=[common], help="print Q for a word")
    p.add_argument("--word", required=True)
    p.add_argument("--with-complement", action="store_true")
    p.set_defaults(func=cmd_build)

    p = mfs.add_parser("verify", parents=[common], help="check the MF property")
    p.add_argument("--word")
    p.add_argument("--matrix", help="matrix JSON file")
    p.add_argument("--all", action="store_true")
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = mfs.add_parser("canon", parents=[common], help="print the canonical P-matrix of a word")
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_canon)

    p = mfs.add_parser("present", parents=[common], help="minimal presentation computed from P")
    p.add_argument("--word", required=True)
    p.add_argument("--seed", type=int, default=None, help="random pivot order")
    p.set_defaults(func=cmd_present)

    pen = sub.add_parser("pencil", help="Kronecker decomposition")
    pens = pen.add_subparsers(dest="pencil_command", required=True)
    p = pens.add_parser("decompose", parents=[common])
    p.add_argument("file")
    p.set_defaults(func=cmd_pencil)

    p = sub.add_parser("invariants", parents=[common], help="branch Smith-form invariants")
    p.add_argument("--word")
    p.add_argument("--all", action="store_true")
    p.add_argument("--max-n", type=int, default=2)
    p.add_argument("--branch-lambda", default=None, help="lambda used on branch 3 in symbolic mode (default 2)")
    p.set_defaults(func=cmd_invariants)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{ap.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
