"""The cyclic operator, necklace classes and the Connes complex.

t̄ moves the last letter to the front with the Koszul sign of passing it
over the rest. Classes live in the coinvariants of t̄: a class is named by
its lexicographically least rotation plus the sign relating the word to
it, and a word that some rotation sends to minus itself is zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from cyclix import kernels
from cyclix.ainfty import AInftyData, _add
from cyclix.exactlin import QQ, ChainComplexSlice, Field, SparseMatrix, rank
from cyclix.hochschild import (
    DEFAULT_WORD_CAP,
    HomologyTable,
    WordSpace,
    assemble,
    b_apply,
    enumerate_words,
    homology_table,
)


class NotWellDefinedOnClasses(ValueError):
    pass


Word = tuple[int, ...]


def t_bar(word: Sequence[int], parities: Sequence[int]) -> tuple[Word, int]:
    word = tuple(word)
    if len(word) <= 1:
        return word, 1
    last = parities[word[-1]]
    rest = sum(parities[i] for i in word[:-1])
    return (word[-1],) + word[:-1], (-1 if last & rest & 1 else 1)


def unsuspended_t(degrees: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Permutation and sign of t on unsuspended words.

    t(a_0, .., a_n) = (-1)^{n + |a_n|(|a_0| + .. + |a_{n-1}|)} (a_n, a_0, .., a_{n-1}).
    Returns the index order of the output and the sign.
    """
    n = len(degrees) - 1
    e = n + degrees[-1] * sum(degrees[:-1])
    return (n,) + tuple(range(n)), (-1 if e & 1 else 1)


def norm_N(word: Sequence[int], parities: Sequence[int]) -> dict[Word, int]:
    """N = 1 + t̄ + .. + t̄^{n-1}, after cancellation."""
    out: dict[Word, int] = {}
    w, sign = tuple(word), 1
    for _ in range(max(len(w), 1)):
        _add(out, w, sign)
        w, s = t_bar(w, parities)
        sign *= s
    return out


@dataclass(frozen=True)
class CyclicClass:
    representative: Word
    sign: int
    vanishes: bool

    def format(self, data: AInftyData) -> str:
        if self.vanishes:
            return "0"
        return ("-" if self.sign < 0 else "") + data.format_word(self.representative)


def canonicalize(word: Sequence[int], parities: Sequence[int]) -> CyclicClass:
    word = tuple(word)
    n = len(word)
    if n <= 1:
        return CyclicClass(word, 1, False)
    par = [parities[i] & 1 for i in word]
    pref = [0]
    for p in par:
        pref.append(pref[-1] + p)
    total = pref[-1]
    best, best_r = word, 0
    vanish = False
    for r in range(1, n):
        rot = word[r:] + word[:r]
        if rot < best:
            best, best_r = rot, r
        if rot == word and pref[r] & 1 and (total - pref[r]) & 1:
            vanish = True
    sign = -1 if pref[best_r] & 1 and (total - pref[best_r]) & 1 else 1
    return CyclicClass(best, sign, vanish)


class Necklaces:
    """Memoized canonicalization for one parity assignment."""

    def __init__(self, parities: Sequence[int]):
        self.parities = tuple(int(p) & 1 for p in parities)
        self._cache: dict[Word, CyclicClass] = {}

    def __call__(self, word: Sequence[int]) -> CyclicClass:
        word = tuple(word)
        hit = self._cache.get(word)
        if hit is None:
            hit = canonicalize(word, self.parities)
            self._cache[word] = hit
        return hit

    def batch(self, words: Sequence[Word]) -> list[CyclicClass]:
        """Canonicalize many words at once through the numeric kernel."""
        out: list[CyclicClass | None] = [None] * len(words)
        by_len: dict[int, list[int]] = {}
        for i, w in enumerate(words):
            if w in self._cache:
                out[i] = self._cache[w]
            else:
                by_len.setdefault(len(w), []).append(i)
        par = np.array(self.parities or (0,), dtype=np.int8)
        for n, idx in by_len.items():
            if n <= 1:
                for i in idx:
                    out[i] = self(words[i])
                continue
            arr = np.array([words[i] for i in idx], dtype=np.int32)
            shift, sign, vanish = kernels.min_rotations(arr, par)
            for row, i in enumerate(idx):
                w = words[i]
                r = int(shift[row])
                cls = CyclicClass(w[r:] + w[:r], int(sign[row]), bool(vanish[row]))
                self._cache[w] = cls
                out[i] = cls
        return out

    def project(self, combo: Mapping[Word, object]) -> dict[Word, object]:
        """Image of a linear combination of words in the coinvariants."""
        out: dict[Word, object] = {}
        for w, c in combo.items():
            cls = self(w)
            if not cls.vanishes:
                _add(out, cls.representative, cls.sign * c)
        return out


@dataclass(frozen=True)
class ConnesComplex:
    classes_by_degree: Mapping[int, tuple[Word, ...]]
    slice: ChainComplexSlice | None
    space: WordSpace
    escaped: int


def class_basis(space: WordSpace, neck: Necklaces) -> dict[int, tuple[Word, ...]]:
    out = {}
    for d, words in space.words_by_degree.items():
        reps = {c.representative for c in neck.batch(words) if not c.vanishes}
        out[d] = tuple(sorted(reps, key=lambda w: (len(w), w)))
    return out


def check_well_defined(data: AInftyData, neck: Necklaces, classes: Mapping[int, Sequence[Word]]) -> None:
    """b of every rotation of a representative must give the same class."""
    for reps in classes.values():
        for w in reps:
            ref = neck.project(b_apply(data, w))
            u, sign = w, 1
            for _ in range(len(w) - 1):
                u, s = t_bar(u, neck.parities)
                sign *= s
                got = neck.project(b_apply(data, u))
                want = {k: sign * v for k, v in ref.items()}
                if got != want:
                    raise NotWellDefinedOnClasses(
                        f"b on the rotation {data.format_word(u)} of {data.format_word(w)} disagrees"
                    )


def connes_complex(
    data: AInftyData,
    max_length: int,
    window: tuple[int, int] | None = None,
    *,
    field: Field = QQ,
    cap: int = DEFAULT_WORD_CAP,
    check: bool = True,
) -> ConnesComplex:
    field.check_word_length(max_length)
    space = enumerate_words(data, max_length, window, cap=cap)
    neck = Necklaces(data.parities)
    classes = class_basis(space, neck)
    if check:
        check_well_defined(data, neck, classes)
    degrees = space.degrees
    if not degrees:
        return ConnesComplex(classes, None, space, 0)
    C, escaped = assemble(degrees, classes, lambda w: neck.project(b_apply(data, w)), field)
    return ConnesComplex(classes, C, space, escaped)


def connes_homology(
    data: AInftyData,
    max_length: int,
    window: tuple[int, int] | None = None,
    *,
    field: Field = QQ,
    cap: int = DEFAULT_WORD_CAP,
    check: bool = True,
) -> HomologyTable:
    cc = connes_complex(data, max_length, window, field=field, cap=cap, check=check)
    if cc.slice is None:
        return HomologyTable({}, {}, {})
    return homology_table(cc.space, cc.slice, cc.escaped)


def cochain_is_cyclic(
    f: Mapping[Word, object] | Callable[[Word], object], space: WordSpace, parities: Sequence[int]
) -> bool:
    """Is f(w) = sign · f(w') for every enumerated w, where t̄ w = sign · w'?"""
    value = f if callable(f) else (lambda w: f.get(w, 0))
    for w in space:
        u, sign = t_bar(w, parities)
        if value(w) != sign * value(u):
            return False
    return True


def symmetrize(f: Mapping[Word, object], parities: Sequence[int]) -> dict[Word, object]:
    """The functional g = f∘N, g(w) = Σ_k σ_k f(w_k) where t̄^k w = σ_k w_k.

    g is supported on the rotations of the support of f and is t̄-invariant.
    """
    orbit = set()
    for w in f:
        u = tuple(w)
        for _ in range(max(len(u), 1)):
            orbit.add(u)
            u, _s = t_bar(u, parities)
    out: dict[Word, object] = {}
    for w in sorted(orbit):
        for u, c in norm_N(w, parities).items():
            if u in f:
                _add(out, w, c * f[u])
    return out


def invariant_dimension(words: Sequence[Word], parities: Sequence[int], field: Field = QQ) -> int:
    """dim ker(1 - t̄) on the span of a rotation-closed set of words.

    Computed by elimination, independently of the necklace classes, so it
    can be compared with the number of non-vanishing classes.
    """
    words = sorted(set(map(tuple, words)))
    index = {w: i for i, w in enumerate(words)}
    entries: dict[tuple[int, int], int] = {}
    for j, w in enumerate(words):
        u, sign = t_bar(w, parities)
        if u not in index:
            raise ValueError(f"word set is not closed under rotation: {u} missing")
        entries[(j, j)] = entries.get((j, j), 0) + 1
        entries[(index[u], j)] = entries.get((index[u], j), 0) - sign
    M = SparseMatrix(len(words), len(words), entries, field)
    return len(words) - rank(M)


__all__ = [
    "ConnesComplex",
    "CyclicClass",
    "Necklaces",
    "NotWellDefinedOnClasses",
    "canonicalize",
    "class_basis",
    "cochain_is_cyclic",
    "connes_complex",
    "connes_homology",
    "invariant_dimension",
    "norm_N",
    "symmetrize",
    "t_bar",
    "unsuspended_t",
]
