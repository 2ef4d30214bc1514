"""Hochschild chains on cyclically composable words and the differential b.

Words are tuples of letter indices. The homological degree of a word is
``h(w) = -Σ sdeg``; b lowers it by one. Every table this module returns is
indexed by h. Reporting conventions are applied by the caller.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Mapping, Sequence

from cyclix.ainfty import AInftyData, _add
from cyclix.exactlin import QQ, ChainComplexSlice, Field, NotAComplex, SparseMatrix, homology_dims


class ExplosionGuard(RuntimeError):
    pass


DEFAULT_WORD_CAP = 400_000

Word = tuple[int, ...]


def word_degree(data: AInftyData, word: Sequence[int]) -> int:
    L = data.letters
    return -sum(L[i].sdeg for i in word)


def identification_sign(degrees: Sequence[int]) -> int:
    """Sign of the identification (a_0, .., a_n) -> (ā_0, .., ā_n).

    (-1)^{n|a_0| + (n-1)|a_1| + .. + |a_{n-1}|} on unsuspended degrees.
    """
    n = len(degrees) - 1
    e = sum((n - j) * d for j, d in enumerate(degrees))
    return -1 if e & 1 else 1


@dataclass(frozen=True)
class WordSpace:
    words_by_degree: Mapping[int, tuple[Word, ...]]
    max_length: int
    window: tuple[int, int] | None
    complete: Callable[[int], bool] = field(repr=False, compare=False, default=None)

    @property
    def degrees(self) -> list[int]:
        if self.window is not None:
            return list(range(self.window[0], self.window[1] + 1))
        if not self.words_by_degree:
            return []
        return list(range(min(self.words_by_degree), max(self.words_by_degree) + 1))

    def words(self, degree: int) -> tuple[Word, ...]:
        return self.words_by_degree.get(degree, ())

    def in_window(self, degree: int) -> bool:
        return self.window is None or self.window[0] <= degree <= self.window[1]

    def __len__(self) -> int:
        return sum(len(v) for v in self.words_by_degree.values())

    def __iter__(self) -> Iterator[Word]:
        for d in sorted(self.words_by_degree):
            yield from self.words_by_degree[d]

    @property
    def truncated(self) -> bool:
        return not all(self.complete(d) for d in self.degrees)

    def reliable(self, degree: int) -> bool:
        """H in this degree is exact: the words of degrees d and d + 1 are all
        enumerated and the target degree d - 1 is inside the window."""
        return self.in_window(degree - 1) and self.complete(degree) and self.complete(degree + 1)


def _cycle_letters(data: AInftyData) -> list[int]:
    """Letters that can occur in some cyclic word: Hom(A, B) with a path B -> A."""
    objs = data.objects
    reach = {o: {o} for o in objs}
    changed = True
    edges = {(L.source, L.target) for L in data.letters}
    while changed:
        changed = False
        for a, b in edges:
            for o in objs:
                if a in reach[o] and b not in reach[o]:
                    reach[o].add(b)
                    changed = True
    return [i for i, L in enumerate(data.letters) if L.source in reach[L.target]]


def completeness(data: AInftyData, max_length: int, window: tuple[int, int] | None) -> Callable[[int], bool]:
    """Predicate: are all words of degree h of length at most ``max_length``?

    If every letter on a cycle has sdeg <= -1 then a word of degree h has
    length at most h / min|sdeg|, and symmetrically for sdeg >= 1. Mixed
    signs or degree-0 suspended letters give no bound and nothing is
    certified.
    """
    cyc = _cycle_letters(data)
    if not cyc:
        return lambda h: window is None or window[0] <= h <= window[1]
    s = [data.letters[i].sdeg for i in cyc]
    lo, hi = min(s), max(s)

    def inside(h):
        return window is None or window[0] <= h <= window[1]

    if hi < 0:
        step = -hi
        return lambda h: inside(h) and (h < 0 or h // step <= max_length)
    if lo > 0:
        step = lo
        return lambda h: inside(h) and (h > 0 or (-h) // step <= max_length)
    return lambda h: False


def enumerate_words(
    data: AInftyData,
    max_length: int,
    window: tuple[int, int] | None = None,
    *,
    cap: int = DEFAULT_WORD_CAP,
) -> WordSpace:
    """All cyclically composable words up to ``max_length`` with degree in ``window``.

    Order: by degree, then length, then lexicographically on letter indices.
    """
    if max_length < 1:
        raise ValueError("max_length must be at least 1")
    L = data.letters
    by_source: dict[str, list[int]] = {}
    for i, let in enumerate(L):
        by_source.setdefault(let.source, []).append(i)
    # back[r] = objects from which the start object is reachable in exactly r steps
    objs = data.objects
    step_to = {o: {L[i].target for i in by_source.get(o, ())} for o in objs}

    found: dict[int, list[Word]] = {}
    count = 0
    for start in objs:
        back = [{start}]
        for _ in range(max_length):
            back.append({o for o in objs if step_to[o] & back[-1]})
        stack: list[tuple[Word, str]] = [((), start)]
        while stack:
            word, at = stack.pop()
            if word and at == start:
                h = word_degree(data, word)
                if window is None or window[0] <= h <= window[1]:
                    found.setdefault(h, []).append(word)
                    count += 1
                    if count > cap:
                        raise ExplosionGuard(
                            f"more than {cap} words up to length {max_length}; lower --max-len or narrow the window"
                        )
            left = max_length - len(word)
            if left == 0:
                continue
            for i in reversed(by_source.get(at, ())):
                nxt = L[i].target
                if any(nxt in back[r] for r in range(left)):
                    stack.append((word + (i,), nxt))
    words = {h: tuple(sorted(ws, key=lambda w: (len(w), w))) for h, ws in sorted(found.items())}
    return WordSpace(words, max_length, window, completeness(data, max_length, window))


def b_apply(data: AInftyData, word: Sequence[int]) -> dict[Word, Fraction]:
    """The Hochschild differential on one cyclic word.

    Interior blocks carry the Koszul sign of the letters in front of them.
    A block containing the first letter or wrapping past the end is first
    rotated to the front, with the Koszul sign of that rotation.
    """
    word = tuple(word)
    L = data.letters
    n = len(word)
    s = [L[i].sdeg for i in word]
    pref = [0]
    for x in s:
        pref.append(pref[-1] + x)
    total = pref[-1]
    out: dict[Word, Fraction] = {}
    for p in range(n):
        for k in range(1, min(data.max_arity, n) + 1):
            if p >= 1 and p + k <= n:
                ops = data.m_bar(word[p : p + k])
                if ops:
                    sign = -1 if pref[p] & 1 else 1
                    for o, c in ops.items():
                        _add(out, word[:p] + (o,) + word[p + k :], sign * c)
            else:
                u = word[p:] + word[:p]
                ops = data.m_bar(u[:k])
                if ops:
                    sign = -1 if (pref[p] * (total - pref[p])) & 1 else 1
                    for o, c in ops.items():
                        _add(out, (o,) + u[k:], sign * c)
    return out


def b_apply_combo(data: AInftyData, combo: Mapping[Word, Fraction]) -> dict[Word, Fraction]:
    out: dict[Word, Fraction] = {}
    for w, c in combo.items():
        for w2, c2 in b_apply(data, w).items():
            _add(out, w2, c * c2)
    return out


@dataclass(frozen=True)
class HomologyTable:
    """Dimensions per homological degree h with reliability flags."""

    dims: Mapping[int, int]
    reliable: Mapping[int, bool]
    sizes: Mapping[int, int]
    escaped: int = 0

    def reliable_dims(self) -> dict[int, int]:
        return {d: n for d, n in self.dims.items() if self.reliable[d]}


def assemble(
    degrees: Sequence[int],
    bases: Mapping[int, Sequence],
    image: Callable[[object], Mapping],
    field: Field = QQ,
) -> tuple[ChainComplexSlice, int]:
    """Matrices of a degree -1 map between the given bases.

    ``image(x)`` returns ``{basis element: coeff}`` in degree d - 1. Terms
    whose target degree is outside ``degrees`` are counted, not dropped
    silently; the count is returned with the slice.
    """
    lo, hi = degrees[0], degrees[-1]
    index = {d: {x: i for i, x in enumerate(bases.get(d, ()))} for d in range(lo - 1, hi + 1)}
    diffs = {}
    escaped = 0
    for d in range(lo, hi + 1):
        tgt = index.get(d - 1, {})
        entries: dict[tuple[int, int], Fraction] = {}
        inside = lo <= d - 1
        for j, x in enumerate(bases.get(d, ())):
            for y, c in image(x).items():
                if not inside:
                    escaped += 1
                    continue
                i = tgt.get(y)
                if i is None:
                    raise KeyError(f"image term {y} missing from the degree {d - 1} basis")
                entries[(i, j)] = entries.get((i, j), 0) + c
        if inside:
            diffs[d] = SparseMatrix(len(tgt), len(bases.get(d, ())), entries, field)
    sizes = {d: len(bases.get(d, ())) for d in range(lo, hi + 1)}
    return ChainComplexSlice((lo, hi), sizes, diffs, closed=True, field=field), escaped


def homology_table(space: WordSpace, C: ChainComplexSlice, escaped: int) -> HomologyTable:
    res = homology_dims(C)
    return HomologyTable(
        dict(res.dims),
        {d: space.reliable(d) for d in res.dims},
        dict(C.basis_sizes),
        escaped,
    )


def hochschild_complex(
    data: AInftyData,
    max_length: int,
    window: tuple[int, int] | None = None,
    *,
    field: Field = QQ,
    cap: int = DEFAULT_WORD_CAP,
) -> tuple[WordSpace, ChainComplexSlice, int]:
    field.check_word_length(max_length)
    space = enumerate_words(data, max_length, window, cap=cap)
    degrees = space.degrees
    if not degrees:
        return space, None, 0
    C, escaped = assemble(degrees, space.words_by_degree, lambda w: b_apply(data, w), field)
    return space, C, escaped


def hochschild_homology(
    data: AInftyData,
    max_length: int,
    window: tuple[int, int] | None = None,
    *,
    field: Field = QQ,
    cap: int = DEFAULT_WORD_CAP,
) -> HomologyTable:
    space, C, escaped = hochschild_complex(data, max_length, window, field=field, cap=cap)
    if C is None:
        return HomologyTable({}, {}, {})
    return homology_table(space, C, escaped)


__all__ = [
    "DEFAULT_WORD_CAP",
    "ExplosionGuard",
    "HomologyTable",
    "NotAComplex",
    "WordSpace",
    "assemble",
    "b_apply",
    "b_apply_combo",
    "completeness",
    "enumerate_words",
    "hochschild_complex",
    "hochschild_homology",
    "identification_sign",
    "word_degree",
]
