"""Finite A∞ categories in suspended (bar) form.

Every morphism basis element is a *letter*. Degrees are stored unsuspended
(``degree``) and the suspended degree is ``sdeg = degree - 1``. The
structure maps are stored only as the suspended operations m̄_i, whose
relations carry nothing but Koszul signs:

    Σ_{p,k} (-1)^{sdeg(a_1..a_p)} m̄(a_1..a_p, m̄_k(a_{p+1}..a_{p+k}), ..) = 0

With ``sdeg`` as the grading, m̄ raises degree by one:
``sdeg(out) = Σ sdeg(in) + 1``. Signs only ever see parities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

from cyclix.report import VerificationReport


class DegreeMismatch(ValueError):
    pass


class NotComposable(ValueError):
    pass


class UnknownMorphism(KeyError):
    pass


@dataclass(frozen=True)
class Letter:
    name: str
    source: str
    target: str
    degree: int

    @property
    def sdeg(self) -> int:
        return self.degree - 1

    @property
    def parity(self) -> int:
        return self.sdeg & 1

    @property
    def ref(self) -> str:
        return f"{self.source}>{self.target}.{self.name}"


@dataclass(frozen=True)
class GradedMorphismBasis:
    source: str
    target: str
    elements: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple((str(n), int(d)) for n, d in self.elements))
        names = [n for n, _ in self.elements]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate basis names in Hom({self.source}, {self.target})")


Word = tuple[int, ...]
Ops = Mapping[Word, Mapping[int, Fraction]]


def _freeze_ops(ops: Mapping[Word, Mapping[int, object]]) -> Mapping[Word, Mapping[int, Fraction]]:
    out = {}
    for ins, outs in ops.items():
        clean = {o: Fraction(c) for o, c in outs.items() if Fraction(c)}
        if clean:
            out[tuple(ins)] = MappingProxyType(dict(sorted(clean.items())))
    return MappingProxyType(dict(sorted(out.items(), key=lambda kv: (len(kv[0]), kv[0]))))


@dataclass(frozen=True, eq=False)
class AInftyData:
    """A finite A∞ category over Q.

    ``ops[(i_1, .., i_k)] = {out: coeff}`` are the coefficients of m̄_k on
    letter indices. Use :meth:`build` rather than the raw constructor.
    """

    objects: tuple[str, ...]
    letters: tuple[Letter, ...]
    ops: Ops
    max_arity: int
    pairing: object = None
    provenance: str | None = None
    _index: Mapping[str, int] = field(default=None, repr=False)

    def __post_init__(self):
        if self.max_arity < 1:
            raise ValueError("max_arity must be at least 1")
        object.__setattr__(self, "ops", _freeze_ops(self.ops))
        index = {}
        for i, L in enumerate(self.letters):
            index[L.ref] = i
        object.__setattr__(self, "_index", MappingProxyType(index))
        objs = set(self.objects)
        for L in self.letters:
            if L.source not in objs or L.target not in objs:
                raise ValueError(f"letter {L.ref} uses an unknown object")
        for ins, outs in self.ops.items():
            self._check_op(ins, outs)

    # -- construction ---------------------------------------------------------

    @classmethod
    def build(
        cls,
        objects: Sequence[str],
        homs: Mapping[tuple[str, str], Sequence[tuple[str, int]]] | Iterable[GradedMorphismBasis],
        ops: Iterable[tuple[Sequence, object, object]] = (),
        *,
        max_arity: int | None = None,
        suspended: bool = True,
        pairing=None,
        provenance: str | None = None,
    ) -> "AInftyData":
        """Assemble data from names.

        ``homs`` maps ``(source, target)`` to ``[(name, degree), ..]``.
        ``ops`` lists ``(inputs, output, coefficient)`` with morphisms given by
        reference (a bare name when unique, else ``"A>B.name"``). With
        ``suspended=False`` the coefficients are those of the raw m_i and are
        converted by :func:`desuspend_convert`.
        """
        objects = tuple(str(o) for o in objects)
        order = {o: i for i, o in enumerate(objects)}
        if len(order) != len(objects):
            raise ValueError("duplicate object names")
        if isinstance(homs, Mapping):
            bases = [GradedMorphismBasis(s, t, tuple(els)) for (s, t), els in homs.items()]
        else:
            bases = list(homs)
        for b in bases:
            if b.source not in order or b.target not in order:
                raise ValueError(f"Hom({b.source}, {b.target}) uses an unknown object")
        bases.sort(key=lambda b: (order[b.source], order[b.target]))
        letters = tuple(Letter(n, b.source, b.target, d) for b in bases for n, d in b.elements)
        resolver = _Resolver(letters)
        coeffs: dict[Word, dict[int, Fraction]] = {}
        for ins, out, c in ops:
            key = tuple(resolver(r) for r in ins)
            o = resolver(out)
            c = Fraction(c)
            slot = coeffs.setdefault(key, {})
            slot[o] = slot.get(o, Fraction(0)) + c
        arity = max((len(k) for k in coeffs), default=1)
        if max_arity is None:
            max_arity = arity
        elif arity > max_arity:
            raise ValueError(f"operation of arity {arity} exceeds max_arity {max_arity}")
        if not suspended:
            tmp = cls(objects, letters, {}, max_arity)
            for ins, outs in coeffs.items():
                tmp._check_raw(ins, outs)
            coeffs = desuspend_convert(letters, coeffs)
        return cls(objects, letters, coeffs, max_arity, pairing, provenance)

    def replace(self, **changes) -> "AInftyData":
        kw = dict(
            objects=self.objects,
            letters=self.letters,
            ops=self.ops,
            max_arity=self.max_arity,
            pairing=self.pairing,
            provenance=self.provenance,
        )
        kw.update(changes)
        return AInftyData(**kw)

    def __eq__(self, other):
        if not isinstance(other, AInftyData):
            return NotImplemented
        mine = {k: dict(v) for k, v in self.ops.items()}
        theirs = {k: dict(v) for k, v in other.ops.items()}
        return (
            self.objects == other.objects
            and self.letters == other.letters
            and mine == theirs
            and self.max_arity == other.max_arity
            and self.pairing == other.pairing
            and self.provenance == other.provenance
        )

    __hash__ = None

    # -- validation -----------------------------------------------------------

    def check_composable(self, word: Sequence[int], cyclic: bool = False) -> None:
        L = self.letters
        for a, b in zip(word, word[1:]):
            if L[a].target != L[b].source:
                raise NotComposable(f"{L[a].ref} followed by {L[b].ref}")
        if cyclic and word and L[word[-1]].target != L[word[0]].source:
            raise NotComposable(f"{L[word[-1]].ref} does not close up to {L[word[0]].ref}")

    def _check_shape(self, ins: Word, outs: Mapping[int, Fraction]) -> None:
        if not ins:
            raise ValueError("operations need at least one input")
        if len(ins) > self.max_arity:
            raise ValueError(f"arity {len(ins)} exceeds max_arity {self.max_arity}")
        self.check_composable(ins)
        L = self.letters
        for o in outs:
            if L[o].source != L[ins[0]].source or L[o].target != L[ins[-1]].target:
                raise NotComposable(
                    f"output {L[o].ref} is not in Hom({L[ins[0]].source}, {L[ins[-1]].target})"
                )

    def _check_op(self, ins: Word, outs: Mapping[int, Fraction]) -> None:
        self._check_shape(ins, outs)
        L = self.letters
        want = sum(L[i].sdeg for i in ins) + 1
        for o in outs:
            if L[o].sdeg != want:
                raise DegreeMismatch(
                    f"m̄_{len(ins)}({', '.join(L[i].ref for i in ins)}) -> {L[o].ref}: "
                    f"suspended degree {L[o].sdeg}, expected {want}"
                )

    def _check_raw(self, ins: Word, outs: Mapping[int, Fraction]) -> None:
        self._check_shape(ins, outs)
        L = self.letters
        want = sum(L[i].degree for i in ins) + 2 - len(ins)
        for o in outs:
            if L[o].degree != want:
                raise DegreeMismatch(
                    f"m_{len(ins)}({', '.join(L[i].ref for i in ins)}) -> {L[o].ref}: "
                    f"degree {L[o].degree}, expected {want}"
                )

    # -- lookup ---------------------------------------------------------------

    def letter(self, ref: str) -> int:
        return _Resolver(self.letters, self._index)(ref)

    def letter_name(self, i: int) -> str:
        """Shortest unambiguous reference for letter ``i``."""
        name = self.letters[i].name
        if sum(1 for L in self.letters if L.name == name) == 1:
            return name
        return self.letters[i].ref

    @property
    def parities(self) -> tuple[int, ...]:
        return tuple(L.parity for L in self.letters)

    def hom(self, source: str, target: str) -> tuple[int, ...]:
        return tuple(i for i, L in enumerate(self.letters) if L.source == source and L.target == target)

    def m_bar(self, inputs: Sequence[int]) -> Mapping[int, Fraction]:
        return self.ops.get(tuple(inputs), _EMPTY)

    def composable_tuples(self, length: int) -> Iterator[Word]:
        """All linearly composable letter tuples of the given length, in lexicographic order."""
        by_source: dict[str, list[int]] = {}
        for i, L in enumerate(self.letters):
            by_source.setdefault(L.source, []).append(i)

        def grow(prefix: list[int]):
            if len(prefix) == length:
                yield tuple(prefix)
                return
            nxt = range(len(self.letters)) if not prefix else by_source.get(self.letters[prefix[-1]].target, ())
            for i in nxt:
                prefix.append(i)
                yield from grow(prefix)
                prefix.pop()

        if length >= 1:
            yield from grow([])

    def format_word(self, word: Sequence[int]) -> str:
        return "[" + "|".join(self.letter_name(i) for i in word) + "]"


_EMPTY: Mapping[int, Fraction] = MappingProxyType({})


class _Resolver:
    def __init__(self, letters: Sequence[Letter], index: Mapping[str, int] | None = None):
        self.letters = letters
        self.index = index if index is not None else {L.ref: i for i, L in enumerate(letters)}
        by_name: dict[str, list[int]] = {}
        for i, L in enumerate(letters):
            by_name.setdefault(L.name, []).append(i)
        self.by_name = by_name

    def __call__(self, ref) -> int:
        if isinstance(ref, int):
            if not 0 <= ref < len(self.letters):
                raise UnknownMorphism(ref)
            return ref
        if isinstance(ref, tuple):
            ref = f"{ref[0]}>{ref[1]}.{ref[2]}"
        ref = str(ref)
        if ref in self.index:
            return self.index[ref]
        hits = self.by_name.get(ref, [])
        if len(hits) == 1:
            return hits[0]
        if hits:
            raise UnknownMorphism(f"{ref!r} is ambiguous; qualify it as Source>Target.{ref}")
        raise UnknownMorphism(f"no morphism named {ref!r}")


# ---------------------------------------------------------------------------
# suspension


def desuspension_sign(sdegs: Sequence[int]) -> int:
    """(-1)^{(i-1)s_1 + (i-2)s_2 + .. + s_{i-1}} relating m_i and m̄_i."""
    i = len(sdegs)
    e = sum((i - 1 - j) * s for j, s in enumerate(sdegs))
    return -1 if e & 1 else 1


def desuspend_convert(
    letters: Sequence[Letter], coefficients: Mapping[Word, Mapping[int, object]], *, inverse: bool = False
) -> dict[Word, dict[int, Fraction]]:
    """Convert raw m_i coefficients to m̄_i (or back with ``inverse=True``).

    The sign depends only on the inputs and squares to one, so both
    directions use the same formula.
    """
    del inverse  # the sign is its own inverse
    out: dict[Word, dict[int, Fraction]] = {}
    for ins, outs in coefficients.items():
        sgn = desuspension_sign([letters[i].sdeg for i in ins])
        out[tuple(ins)] = {o: sgn * Fraction(c) for o, c in outs.items()}
    return out


def raw_ops(data: AInftyData) -> dict[Word, dict[int, Fraction]]:
    """The unsuspended m_i coefficients of ``data``."""
    return desuspend_convert(data.letters, data.ops, inverse=True)


# ---------------------------------------------------------------------------
# bar construction


def _add(acc: dict, key, c) -> None:
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def bar_apply(data: AInftyData, word: Sequence[int]) -> dict[Word, Fraction]:
    """The coderivation m̄ on a linearly composable word of T(ΣV)."""
    word = tuple(word)
    data.check_composable(word)
    L = data.letters
    n = len(word)
    out: dict[Word, Fraction] = {}
    passed = 0
    for p in range(n):
        sign = -1 if passed & 1 else 1
        for k in range(1, min(data.max_arity, n - p) + 1):
            for o, c in data.m_bar(word[p : p + k]).items():
                _add(out, word[:p] + (o,) + word[p + k :], sign * c)
        passed += L[word[p]].sdeg
    return out


def bar_apply_combo(data: AInftyData, combo: Mapping[Word, Fraction]) -> dict[Word, Fraction]:
    out: dict[Word, Fraction] = {}
    for w, c in combo.items():
        for w2, c2 in bar_apply(data, w).items():
            _add(out, w2, c * c2)
    return out


def relation_residual(data: AInftyData, word: Sequence[int]) -> dict[int, Fraction]:
    """Output-letter component of m̄∘m̄ on a composable tuple."""
    word = tuple(word)
    L = data.letters
    n = len(word)
    res: dict[int, Fraction] = {}
    passed = 0
    for p in range(n):
        sign = -1 if passed & 1 else 1
        for k in range(1, min(data.max_arity, n - p) + 1):
            rest = n - k + 1
            if rest > data.max_arity:
                continue
            for o, c in data.m_bar(word[p : p + k]).items():
                for o2, c2 in data.m_bar(word[:p] + (o,) + word[p + k :]).items():
                    _add(res, o2, sign * c * c2)
        passed += L[word[p]].sdeg
    return res


def verify_ainfty(data: AInftyData, max_word_arity: int) -> VerificationReport:
    """Check the suspended A∞ relations on every composable tuple up to the given length.

    Relations of arity above ``2 * max_arity - 1`` have no nonzero terms and
    are skipped.
    """
    report = VerificationReport("A-infinity relations")
    top = min(max_word_arity, 2 * data.max_arity - 1)
    for i in range(1, top + 1):
        check = report.check(f"arity {i}")
        for word in data.composable_tuples(i):
            check.record(word, relation_residual(data, word))
    return report


def unsuspended_relation_residual(data: AInftyData, word: Sequence[int]) -> dict[int, Fraction]:
    """The relation in raw form, with explicit ε signs.

    Σ (-1)^{|a_1|+..+|a_p| + p + ε_{i-k+1} + ε_k} m_{i-k+1}(a_1..a_p, m_k(..), ..)

    where ε_j for inputs b_1..b_j is (j-1)|b_1| + .. + |b_{j-1}| + j(j-1)/2.
    Used to cross-check the suspended form, not by the engine itself.
    """
    word = tuple(word)
    L = data.letters
    raw = raw_ops(data)
    n = len(word)

    def eps(degs):
        j = len(degs)
        return sum((j - 1 - t) * d for t, d in enumerate(degs)) + j * (j - 1) // 2

    res: dict[int, Fraction] = {}
    for p in range(n):
        for k in range(1, n - p + 1):
            block = word[p : p + k]
            for o, c in raw.get(block, {}).items():
                outer = word[:p] + (o,) + word[p + k :]
                for o2, c2 in raw.get(outer, {}).items():
                    degs = [L[a].degree for a in word]
                    inner_deg = sum(degs[p : p + k]) + k - 2
                    e = sum(degs[:p]) + p + eps(degs[p : p + k])
                    e += eps(degs[:p] + [inner_deg] + degs[p + k :])
                    _add(res, o2, (-1 if e & 1 else 1) * c * c2)
    return res


def check_strict_units(data: AInftyData, units: Mapping[str, str | int]) -> VerificationReport:
    """Check that the given letters are strict units.

    In suspended form this means m̄_2(1̄, ā) = -ā, m̄_2(ā, 1̄) = (-1)^{sdeg(a)} ā
    and every other operation with a unit among its inputs vanishes.
    """
    report = VerificationReport("strict unitality")
    unit = {o: data.letter(u) for o, u in units.items()}
    unit_set = set(unit.values())
    check = report.check("unit laws")
    for i, L in enumerate(data.letters):
        left = dict(data.m_bar((unit[L.source], i))) if L.source in unit else None
        if left is not None:
            _add(left, i, 1)
            check.record(("left", i), left)
        if L.target in unit:
            right = dict(data.m_bar((i, unit[L.target])))
            _add(right, i, 1 if L.parity else -1)
            check.record(("right", i), right)
    other = report.check("higher operations")
    for ins, outs in data.ops.items():
        if len(ins) != 2 and unit_set & set(ins):
            other.record(ins, dict(outs))
    return report


__all__ = [
    "AInftyData",
    "DegreeMismatch",
    "GradedMorphismBasis",
    "Letter",
    "NotComposable",
    "UnknownMorphism",
    "bar_apply",
    "bar_apply_combo",
    "check_strict_units",
    "desuspend_convert",
    "desuspension_sign",
    "raw_ops",
    "relation_residual",
    "unsuspended_relation_residual",
    "verify_ainfty",
]
