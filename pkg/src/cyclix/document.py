"""The line-based category document format.

Example::

    cyclix-category 1
    field q
    object A
    max-arity 2
    hom A A 1=0 v=2
    op bar 1,1 -> 1 -1
    op raw 1,v -> v 1
    pairing 2
    pair 1 v 1
    provenance sphere 2
    end

The grammar is in the README. ``save`` writes the canonical form: suspended
coefficients only, every pairing entry spelled out, fixed ordering.
"""

from __future__ import annotations

import shlex
from dataclasses import dataclass
from fractions import Fraction

from cyclix.ainfty import AInftyData, DegreeMismatch, NotComposable, UnknownMorphism
from cyclix.calabi_yau import PairingData
from cyclix.exactlin import QQ, Field

MAGIC = "cyclix-category"
VERSION = 1


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        where = f"line {line}" if line is not None else "document"
        if field:
            where += f", {field}"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.field = field


@dataclass(frozen=True)
class CategoryDocument:
    data: AInftyData
    field: Field = QQ


def _scalar(tok: str, line: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad exact scalar {tok!r}", line, "coefficient") from None


def _int(tok: str, line: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", line, what) from None


def parse(text: str) -> CategoryDocument:
    lines = text.splitlines()
    objects: list[str] = []
    homs: dict[tuple[str, str], list[tuple[str, int]]] = {}
    ops_bar: list[tuple[tuple[str, ...], str, Fraction, int]] = []
    ops_raw: list[tuple[tuple[str, ...], str, Fraction, int]] = []
    pairs: list[tuple[str, str, Fraction, int]] = []
    pairing_degree = None
    max_arity = None
    provenance = None
    field = QQ
    seen_header = False
    ended = False
    for no, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ended:
            raise ParseError("content after 'end'", no)
        if not seen_header:
            parts = line.split()
            if len(parts) != 2 or parts[0] != MAGIC:
                raise ParseError(f"expected '{MAGIC} {VERSION}' header", no, "header")
            if _int(parts[1], no, "version") != VERSION:
                raise ParseError(f"unsupported version {parts[1]}", no, "version")
            seen_header = True
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "end":
            ended = True
        elif key == "field":
            try:
                field = Field.parse(rest)
            except ValueError as e:
                raise ParseError(str(e), no, "field") from None
        elif key == "object":
            if not rest or " " in rest:
                raise ParseError("object needs exactly one name", no, "object")
            if rest in objects:
                raise ParseError(f"duplicate object {rest!r}", no, "object")
            objects.append(rest)
        elif key == "max-arity":
            max_arity = _int(rest, no, "max-arity")
        elif key == "hom":
            parts = rest.split()
            if len(parts) < 2:
                raise ParseError("hom needs a source and a target", no, "hom")
            src, tgt = parts[0], parts[1]
            if (src, tgt) in homs:
                raise ParseError(f"Hom({src}, {tgt}) given twice", no, "hom")
            els = []
            for tok in parts[2:]:
                name, eq, deg = tok.partition("=")
                if not eq or not name:
                    raise ParseError(f"expected name=degree, got {tok!r}", no, "hom")
                els.append((name, _int(deg, no, "degree")))
            homs[(src, tgt)] = els
        elif key == "op":
            parts = rest.split()
            if len(parts) != 5 or parts[2] != "->" or parts[0] not in ("bar", "raw"):
                raise ParseError("expected 'op bar|raw IN,IN,.. -> OUT COEFF'", no, "op")
            ins = tuple(parts[1].split(","))
            if any(not t for t in ins):
                raise ParseError("empty input reference", no, "op")
            entry = (ins, parts[3], _scalar(parts[4], no), no)
            (ops_bar if parts[0] == "bar" else ops_raw).append(entry)
        elif key == "pairing":
            pairing_degree = _int(rest, no, "pairing")
        elif key == "pair":
            parts = rest.split()
            if len(parts) != 3:
                raise ParseError("expected 'pair REF REF COEFF'", no, "pair")
            pairs.append((parts[0], parts[1], _scalar(parts[2], no), no))
        elif key == "provenance":
            provenance = shlex.split(rest)[0] if rest.startswith('"') else rest
        else:
            raise ParseError(f"unknown keyword {key!r}", no)
    if not seen_header:
        raise ParseError("empty document", None, "header")
    if not ended:
        raise ParseError("missing 'end' (truncated document?)", len(lines), "end")
    if pairs and pairing_degree is None:
        raise ParseError("pair entries without a 'pairing' line", pairs[0][3], "pairing")
    for (s, t) in homs:
        for o in (s, t):
            if o not in objects:
                raise ParseError(f"Hom({s}, {t}) uses undeclared object {o!r}", None, "hom")

    try:
        shell = AInftyData.build(objects, homs, [], max_arity=max_arity or 1)
    except ValueError as e:
        raise ParseError(str(e), None, "hom") from None
    # raw coefficients are checked and converted one by one so errors keep their line
    entries = []
    for ins, out, c, no in ops_raw:
        try:
            tmp = AInftyData.build(objects, homs, [(ins, out, c)], suspended=False, max_arity=max(len(ins), 1))
        except (DegreeMismatch, NotComposable) as e:
            raise type(e)(f"line {no}: {e}") from None
        except UnknownMorphism as e:
            raise ParseError(str(e), no, "op") from None
        (k, v), = tmp.ops.items() if tmp.ops else ((None, None),)
        if k is not None:
            for o, cc in v.items():
                entries.append((k, o, cc, no))
    for ins, out, c, no in ops_bar:
        try:
            k = tuple(shell.letter(r) for r in ins)
            o = shell.letter(out)
        except UnknownMorphism as e:
            raise ParseError(str(e), no, "op") from None
        entries.append((k, o, c, no))
    arity = max((len(k) for k, *_ in entries), default=1)
    if max_arity is None:
        max_arity = arity
    elif arity > max_arity:
        raise ParseError(f"operation of arity {arity} exceeds max-arity {max_arity}", None, "max-arity")
    coeffs: dict = {}
    for k, o, c, no in entries:
        slot = coeffs.setdefault(k, {})
        slot[o] = slot.get(o, Fraction(0)) + c
        try:
            shell.replace(ops={k: {o: c}}, max_arity=max_arity)
        except (DegreeMismatch, NotComposable) as e:
            raise type(e)(f"line {no}: {e}") from None
    data = shell.replace(ops=coeffs, max_arity=max_arity, provenance=provenance)
    if pairing_degree is not None:
        try:
            pairing = PairingData.build(data, pairing_degree, [(a, b, c) for a, b, c, _ in pairs])
        except UnknownMorphism as e:
            raise ParseError(str(e), None, "pair") from None
        data = data.replace(pairing=pairing)
    return CategoryDocument(data, field)


def load(text: str) -> AInftyData:
    return parse(text).data


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def save(data: AInftyData, field: Field = QQ) -> str:
    out = [f"{MAGIC} {VERSION}", f"field {field}"]
    for o in data.objects:
        out.append(f"object {o}")
    out.append(f"max-arity {data.max_arity}")
    seen = []
    for L in data.letters:
        if (L.source, L.target) not in seen:
            seen.append((L.source, L.target))
    for s, t in seen:
        els = " ".join(f"{data.letters[i].name}={data.letters[i].degree}" for i in data.hom(s, t))
        out.append(f"hom {s} {t} {els}")
    for ins, outs in data.ops.items():
        for o, c in outs.items():
            out.append(f"op bar {','.join(data.letter_name(i) for i in ins)} -> {data.letter_name(o)} {_fmt(c)}")
    if data.pairing is not None:
        out.append(f"pairing {data.pairing.degree}")
        for (a, b), v in data.pairing.entries.items():
            out.append(f"pair {data.letter_name(a)} {data.letter_name(b)} {_fmt(v)}")
    if data.provenance:
        out.append(f"provenance {data.provenance}")
    out.append("end")
    return "\n".join(out) + "\n"


__all__ = ["CategoryDocument", "ParseError", "load", "parse", "save"]
