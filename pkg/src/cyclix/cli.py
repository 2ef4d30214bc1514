"""Command-line front end.

    cyclix verify  --input s2
    cyclix ch      --input directed3 --max-len 8
    cyclix axioms  --input s2 --max-len 5 --format csv

``--input`` takes a document path or the name of a built-in fixture. The
report goes to stdout, diagnostics to stderr. Exit codes: 0 success,
2 unreadable input, 3 a structural invariant fails, 4 an axiom or
comparison fails, 5 a requested degree is not reliable or the word count
guard tripped.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from cyclix.ainfty import AInftyData, DegreeMismatch, NotComposable, UnknownMorphism, bar_apply, bar_apply_combo, verify_ainfty
from cyclix.calabi_yau import DegeneratePairing, verify_cy
from cyclix.cyclic import connes_homology
from cyclix.document import CategoryDocument, ParseError, parse
from cyclix.exactlin import Field, NotAComplex
from cyclix.hochschild import ExplosionGuard, b_apply_combo, enumerate_words, hochschild_homology
from cyclix.liebialg import CyclicLieBialgebra, axiom_suite
from cyclix.modelzoo import BUILTIN, fixture
from cyclix.ncsymp import MultiObjectUnsupported, quillen_compare
from cyclix.report import VerificationReport

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_AXIOM = 4
EXIT_TRUNCATION = 5

DEFAULT_MAX_LEN = {
    "verify": 5,
    "hh": 6,
    "ch": 6,
    "bracket": 3,
    "cobracket": 4,
    "axioms": 4,
    "ncsymp-compare": 4,
}


class CommandFailed(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def fmt_scalar(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def emit(headers: Sequence[str], rows: Sequence[Sequence], fmt: str, out) -> None:
    cells = [[str(x) for x in r] for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(headers)
        w.writerows(cells)
        out.write(buf.getvalue())
        return
    widths = [len(h) for h in headers]
    for r in cells:
        widths = [max(w, len(x)) for w, x in zip(widths, r)]
    line = lambda r: "  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip()
    out.write(line(headers) + "\n")
    out.write("  ".join("-" * w for w in widths) + "\n")
    for r in cells:
        out.write(line(r) + "\n")


def read_input(spec: str) -> CategoryDocument:
    path = Path(spec)
    if path.is_file():
        return parse(path.read_text(encoding="utf-8"))
    if spec in BUILTIN:
        return CategoryDocument(fixture(spec))
    raise ParseError(f"{spec!r} is neither a readable file nor a fixture ({', '.join(sorted(BUILTIN))})")


def parse_word(data: AInftyData, text: str) -> tuple[int, ...]:
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    if not body:
        raise ParseError(f"empty word {text!r}", field="word")
    return tuple(data.letter(tok.strip()) for tok in body.split("|"))


def report_rows(report: VerificationReport) -> list[tuple]:
    return [
        (name, tuples, fmt_scalar(res), "ok" if report.checks[name].passed else "FAIL")
        for name, tuples, res in report.rows()
    ]


REPORT_HEADERS = ("check", "tuples", "max_residual", "status")


def _to_internal(lo: int | None, hi: int | None, convention: str) -> tuple[int, int] | None:
    """Reported degree window to an internal h window. chain: r = h - 1, cochain: r = 1 - h."""
    if lo is None and hi is None:
        return None
    big = 10**6
    lo = -big if lo is None else lo
    hi = big if hi is None else hi
    if convention == "chain":
        return lo + 1, hi + 1
    return 1 - hi, 1 - lo


def _reported(h: int, convention: str) -> int:
    return h - 1 if convention == "chain" else 1 - h


# -- commands -------------------------------------------------------------------


def cmd_verify(doc, args, out) -> int:
    data = doc.data
    report = VerificationReport("verify")
    report.merge(verify_ainfty(data, 2 * data.max_arity - 1), "A-infinity ")
    b2 = report.check("b squared")
    space = enumerate_words(data, args.max_len)
    for w in space:
        b2.record(w, b_apply_combo(data, b_apply_combo(data, {w: Fraction(1)})))
    bb = report.check("bar differential squared")
    for k in range(1, args.max_len + 1):
        for w in data.composable_tuples(k):
            bb.record(w, bar_apply_combo(data, bar_apply(data, w)))
    if data.pairing is not None:
        report.merge(verify_cy(data), "Calabi-Yau ")
    emit(REPORT_HEADERS, report_rows(report), args.format, out)
    return EXIT_OK if report.passed else EXIT_INVARIANT


def _homology(doc, args, out, cyclic: bool) -> int:
    field = Field.parse(args.field) if args.field else doc.field
    window = _to_internal(args.degree_min, args.degree_max, args.convention)
    fn = connes_homology if cyclic else hochschild_homology
    # one extra degree on each side so the ends of the requested range can be exact
    wide = None if window is None else (window[0] - 1, window[1] + 1)
    table = fn(doc.data, args.max_len, wide, field=field)
    shown = [h for h in table.dims if window is None or window[0] <= h <= window[1]]
    rows = []
    for h in sorted(shown, key=lambda h: _reported(h, args.convention)):
        rows.append((_reported(h, args.convention), table.dims[h], "yes" if table.reliable[h] else "no", table.sizes[h]))
    emit(("degree", "dim", "reliable", "chains"), rows, args.format, out)
    if window is not None:
        bad = [h for h in shown if not table.reliable[h]]
    else:
        # no window requested: fail only if nothing at all is certified
        bad = [] if any(table.reliable.values()) else shown
    if bad:
        print(f"unreliable degrees: {sorted(_reported(h, args.convention) for h in bad)}", file=sys.stderr)
        return EXIT_TRUNCATION
    return EXIT_OK


def cmd_hh(doc, args, out) -> int:
    return _homology(doc, args, out, cyclic=False)


def cmd_ch(doc, args, out) -> int:
    return _homology(doc, args, out, cyclic=True)


def _algebra(doc) -> CyclicLieBialgebra:
    if doc.data.pairing is None:
        raise CommandFailed(EXIT_INVARIANT, "this command needs a pairing")
    return CyclicLieBialgebra(doc.data)


def _class_of(L: CyclicLieBialgebra, text: str) -> dict:
    w = parse_word(L.data, text)
    L.data.check_composable(w, cyclic=True)
    return L.cls(w)


def _fmt_class(data: AInftyData, w) -> str:
    return data.format_word(w) if w else "[]"


def cmd_bracket(doc, args, out) -> int:
    L = _algebra(doc)
    data = doc.data
    if (args.left is None) != (args.right is None):
        raise ParseError("--left and --right go together", field="word")
    if args.left is not None:
        pairs = [(_class_of(L, args.left), _class_of(L, args.right))]
    else:
        basis = [w for w in L.basis(args.max_len) if w]
        pairs = [({a: Fraction(1)}, {b: Fraction(1)}) for a in basis for b in basis]
    rows = []
    for alpha, beta in pairs:
        res = L.bracket(alpha, beta)
        la = " + ".join(f"{fmt_scalar(c)}{_fmt_class(data, w)}" for w, c in alpha.items()) or "0"
        lb = " + ".join(f"{fmt_scalar(c)}{_fmt_class(data, w)}" for w, c in beta.items()) or "0"
        for w in sorted(res, key=lambda w: (len(w), w)):
            rows.append((la, lb, _fmt_class(data, w), fmt_scalar(res[w])))
    emit(("left", "right", "term", "coefficient"), rows, args.format, out)
    return EXIT_OK


def cmd_cobracket(doc, args, out) -> int:
    L = _algebra(doc)
    data = doc.data
    if args.cls is not None:
        inputs = [_class_of(L, args.cls)]
    else:
        inputs = [{a: Fraction(1)} for a in L.basis(args.max_len) if a]
    rows = []
    for alpha in inputs:
        res = L.cobracket(alpha)
        la = " + ".join(f"{fmt_scalar(c)}{_fmt_class(data, w)}" for w, c in alpha.items()) or "0"
        for u, w in sorted(res, key=lambda t: (len(t[0]), t[0], len(t[1]), t[1])):
            rows.append((la, _fmt_class(data, u), _fmt_class(data, w), fmt_scalar(res[(u, w)])))
    emit(("input", "left", "right", "coefficient"), rows, args.format, out)
    return EXIT_OK


def cmd_axioms(doc, args, out) -> int:
    data = doc.data
    if data.pairing is None:
        raise CommandFailed(EXIT_INVARIANT, "this command needs a pairing")
    cy = verify_cy(data)
    if not cy.passed:
        emit(REPORT_HEADERS, report_rows(cy), args.format, out)
        return EXIT_INVARIANT
    report = axiom_suite(data, max_length=args.max_len)
    emit(REPORT_HEADERS, report_rows(report), args.format, out)
    return EXIT_OK if report.passed else EXIT_AXIOM


def cmd_ncsymp(doc, args, out) -> int:
    try:
        report = quillen_compare(doc.data, args.max_len)
    except MultiObjectUnsupported as e:
        raise CommandFailed(EXIT_INVARIANT, str(e)) from None
    emit(REPORT_HEADERS, report_rows(report), args.format, out)
    return EXIT_OK if report.passed else EXIT_AXIOM


COMMANDS = {
    "verify": cmd_verify,
    "hh": cmd_hh,
    "ch": cmd_ch,
    "bracket": cmd_bracket,
    "cobracket": cmd_cobracket,
    "axioms": cmd_axioms,
    "ncsymp-compare": cmd_ncsymp,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cyclix", description="Exact cyclic homology and string-topology operations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", required=True, help="document path or fixture name")
        p.add_argument("--max-len", type=int, default=None, help="longest word considered")
        p.add_argument("--format", choices=("table", "csv"), default="table")
        if name in ("hh", "ch"):
            p.add_argument("--degree-min", type=int, default=None)
            p.add_argument("--degree-max", type=int, default=None)
            p.add_argument("--field", default=None, help="q or fp:P (default: the document's field)")
            p.add_argument("--convention", choices=("chain", "cochain"), default="chain")
        if name == "bracket":
            p.add_argument("--left", default=None, help="word such as '1|v'")
            p.add_argument("--right", default=None)
        if name == "cobracket":
            p.add_argument("--class", dest="cls", default=None, help="word such as 'v|v'")
    return parser


def run(argv: Sequence[str], out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(list(argv))
    if args.max_len is None:
        args.max_len = DEFAULT_MAX_LEN[args.command]
    if args.max_len < 1:
        print("error: --max-len must be positive", file=sys.stderr)
        return EXIT_PARSE
    try:
        doc = read_input(args.input)
        return COMMANDS[args.command](doc, args, out)
    except (ParseError, UnknownMorphism, DegreeMismatch, NotComposable, ValueError) as e:
        if isinstance(e, (DegeneratePairing, NotAComplex)):
            print(f"error: {e}", file=sys.stderr)
            return EXIT_INVARIANT
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except ExplosionGuard as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_TRUNCATION
    except CommandFailed as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code


def main(argv: Sequence[str] | None = None) -> int:
    try:
        return run(sys.argv[1:] if argv is None else argv)
    except SystemExit as e:
        return int(e.code or 0)


if __name__ == "__main__":
    raise SystemExit(main())
