"""Exact scalars and sparse linear algebra over Q or a prime field F_p.

Matrices are stored as ``{(row, col): value}`` with zeros absent. Rank over Q
uses fraction-free integer elimination (rows are kept primitive by removing
their content after every update); rank over F_p goes through the dense
modular kernel in :mod:`cyclix.kernels` when the matrix is small enough to
materialize.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from cyclix import kernels


class SingularMatrix(ValueError):
    pass


class NotAComplex(ValueError):
    pass


class FieldMismatch(ValueError):
    pass


class SmallCharacteristicWarning(UserWarning):
    pass


# ---------------------------------------------------------------------------
# fields


class Field:
    """Either Q (``p is None``) or F_p. Elements are Fractions or ints in [0, p)."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            if p < 2 or any(p % q == 0 for q in range(2, math.isqrt(p) + 1)):
                raise ValueError(f"{p} is not prime")
            if p > kernels.MAX_PRIME:
                raise ValueError(f"prime {p} exceeds {kernels.MAX_PRIME}")
        self.p = p

    @classmethod
    def parse(cls, spec: str) -> "Field":
        spec = spec.strip().lower()
        if spec in ("q", "qq"):
            return cls()
        if spec.startswith("fp:"):
            return cls(int(spec[3:]))
        raise ValueError(f"unknown field {spec!r}; expected 'q' or 'fp:P'")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    def __str__(self):
        return "q" if self.p is None else f"fp:{self.p}"

    def __call__(self, x) -> Fraction | int:
        if self.p is None:
            return Fraction(x)
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
        return x.numerator * pow(x.denominator, -1, self.p) % self.p

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("division by zero in exact field")
        return 1 / Fraction(a) if self.p is None else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def check_word_length(self, max_length: int) -> None:
        """Warn when p is too small for the norm operator to be invertible."""
        if self.p is not None and self.p <= max_length + 1:
            warnings.warn(
                f"GF({self.p}) with words up to length {max_length}: cyclic coinvariants "
                "need invertible word lengths, results may differ from characteristic 0",
                SmallCharacteristicWarning,
                stacklevel=2,
            )


QQ = Field()


# ---------------------------------------------------------------------------
# sparse matrices


@dataclass(frozen=True)
class SparseMatrix:
    rows: int
    cols: int
    entries: Mapping[tuple[int, int], object]
    field: Field = QQ

    def __post_init__(self):
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            v = self.field(v)
            if v:
                clean[(i, j)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], field: Field = QQ) -> "SparseMatrix":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged dense matrix")
        return cls(nrows, ncols, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v}, field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "SparseMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)}, field)

    @classmethod
    def zero(cls, rows: int, cols: int, field: Field = QQ) -> "SparseMatrix":
        return cls(rows, cols, {}, field)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def to_dense(self) -> list[list]:
        out = [[self.field.zero] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def row_dicts(self) -> list[dict[int, object]]:
        rows: list[dict[int, object]] = [{} for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()}, self.field)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        F = self.field
        right = other.row_dicts()
        acc: dict[tuple[int, int], object] = {}
        for (i, k), a in self.entries.items():
            for j, b in right[k].items():
                key = (i, j)
                acc[key] = F.add(acc.get(key, F.zero), F.mul(a, b))
        return SparseMatrix(self.rows, other.cols, acc, F)

    def apply(self, vec: Sequence) -> list:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        F = self.field
        out = [F.zero] * self.rows
        for (i, j), v in self.entries.items():
            if vec[j]:
                out[i] = F.add(out[i], F.mul(v, F(vec[j])))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and self.shape == other.shape
            and self.field == other.field
            and self.entries == other.entries
        )

    def __hash__(self):  # pragma: no cover - frozen dataclass wants one
        return hash((self.rows, self.cols, frozenset(self.entries.items()), self.field))


# ---------------------------------------------------------------------------
# elimination


def _rref_rows(rows: list[dict[int, object]], F: Field) -> tuple[list[dict[int, object]], list[int]]:
    """Sparse reduced row echelon form. Pivot: lowest column, then lowest row."""
    pending = [r for r in (dict(r) for r in rows) if r]
    reduced: list[dict[int, object]] = []
    pivots: list[int] = []
    by_pivot: dict[int, dict[int, object]] = {}
    for row in pending:
        # reduce the incoming row against existing pivots
        while True:
            hit = next((c for c in sorted(row) if c in by_pivot), None)
            if hit is None:
                break
            f = row[hit]
            for c, v in by_pivot[hit].items():
                nv = F.sub(row.get(c, F.zero), F.mul(f, v))
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        if not row:
            continue
        c0 = min(row)
        inv = F.inv(row[c0])
        row = {c: F.mul(v, inv) for c, v in row.items()}
        # back-substitute into earlier pivot rows
        for prow in by_pivot.values():
            f = prow.get(c0)
            if f:
                for c, v in row.items():
                    nv = F.sub(prow.get(c, F.zero), F.mul(f, v))
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
        by_pivot[c0] = row
    pivots = sorted(by_pivot)
    reduced = [by_pivot[c] for c in pivots]
    return reduced, pivots


def _content(row: dict[int, int]) -> int:
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
        if g == 1:
            break
    return g


def _rank_rational(M: SparseMatrix) -> int:
    """Fraction-free elimination: integer rows, content removed after each update."""
    rows: list[dict[int, int]] = []
    for r in M.row_dicts():
        if not r:
            continue
        den = 1
        for v in r.values():
            den = den * v.denominator // math.gcd(den, v.denominator)
        ir = {c: int(v * den) for c, v in r.items()}
        g = _content(ir)
        rows.append({c: v // g for c, v in ir.items()})
    pivot_rows: dict[int, dict[int, int]] = {}
    for row in rows:
        while row:
            c0 = min(row)
            prow = pivot_rows.get(c0)
            if prow is None:
                pivot_rows[c0] = row
                break
            a, b = prow[c0], row[c0]
            new = {}
            for c in set(row) | set(prow):
                v = a * row.get(c, 0) - b * prow.get(c, 0)
                if v:
                    new[c] = v
            if new:
                g = _content(new)
                if g > 1:
                    new = {c: v // g for c, v in new.items()}
            row = new
    return len(pivot_rows)


# dense modular path is used up to this many matrix entries
DENSE_MODULAR_LIMIT = 4_000_000


def _dense_mod_p(M: SparseMatrix) -> np.ndarray:
    arr = np.zeros(M.shape, dtype=np.int64)
    for (i, j), v in M.entries.items():
        arr[i, j] = v
    return arr


def rank(M: SparseMatrix) -> int:
    if M.is_zero():
        return 0
    F = M.field
    if F.is_rational:
        return _rank_rational(M)
    if M.rows * M.cols <= DENSE_MODULAR_LIMIT:
        return kernels.rank_mod_p(_dense_mod_p(M), F.p)
    return len(_rref_rows(M.row_dicts(), F)[1])


def rank_and_kernel(M: SparseMatrix) -> tuple[int, list[list]]:
    """Rank of ``M`` and a basis of its right kernel (column vectors as lists).

    The kernel basis is the standard one read off the reduced row echelon
    form: one vector per free column, with a 1 in that column.
    """
    F = M.field
    if not F.is_rational and M.rows * M.cols <= DENSE_MODULAR_LIMIT and not M.is_zero():
        red, piv, r = kernels.rref_mod_p(_dense_mod_p(M), F.p)
        reduced = [{c: int(v) for c, v in enumerate(red[i]) if v} for i in range(r)]
        pivots = [int(c) for c in piv]
    else:
        reduced, pivots = _rref_rows(M.row_dicts(), F)
    pivot_set = set(pivots)
    basis = []
    for free in range(M.cols):
        if free in pivot_set:
            continue
        vec = [F.zero] * M.cols
        vec[free] = F.one
        for prow, pc in zip(reduced, pivots):
            v = prow.get(free)
            if v:
                vec[pc] = F.neg(v)
        basis.append(vec)
    return len(pivots), basis


def invert(M: SparseMatrix) -> SparseMatrix:
    if M.rows != M.cols:
        raise ValueError(f"cannot invert a non-square {M.rows}x{M.cols} matrix")
    n = M.rows
    F = M.field
    aug = M.row_dicts()
    for i in range(n):
        aug[i][n + i] = F.one
    reduced, pivots = _rref_rows(aug, F)
    if pivots != list(range(n)):
        raise SingularMatrix(f"matrix has rank {sum(1 for p in pivots if p < n)} < {n}")
    out = {}
    for i, row in enumerate(reduced):
        for c, v in row.items():
            if c >= n:
                out[(i, c - n)] = v
    return SparseMatrix(n, n, out, F)


# ---------------------------------------------------------------------------
# chain complexes


@dataclass(frozen=True)
class ChainComplexSlice:
    """A window ``lo..hi`` of a chain complex.

    ``differentials[d]`` maps degree ``d`` to ``d - 1`` (shape
    ``basis_sizes[d-1] x basis_sizes[d]``). A missing differential is zero.
    When ``closed`` is true the complex vanishes outside the window, so the
    boundary degrees are exact rather than truncation artefacts.
    """

    degrees: tuple[int, int]
    basis_sizes: Mapping[int, int]
    differentials: Mapping[int, SparseMatrix] = field(default_factory=dict)
    closed: bool = False
    field: Field = QQ

    def __post_init__(self):
        lo, hi = self.degrees
        if lo > hi:
            raise ValueError("empty degree window")
        for d, M in self.differentials.items():
            if not lo <= d <= hi:
                raise ValueError(f"differential in degree {d} outside window")
            src = self.basis_sizes.get(d, 0)
            tgt = self.basis_sizes.get(d - 1, 0)
            if M.shape != (tgt, src):
                raise ValueError(f"differential d_{d} has shape {M.shape}, expected {(tgt, src)}")

    def size(self, d: int) -> int:
        return self.basis_sizes.get(d, 0)

    def differential(self, d: int) -> SparseMatrix:
        M = self.differentials.get(d)
        if M is None:
            return SparseMatrix.zero(self.size(d - 1), self.size(d), self.field)
        return M


@dataclass(frozen=True)
class HomologyResult:
    dims: dict[int, int]
    unreliable: frozenset[int]

    def reliable(self) -> dict[int, int]:
        return {d: n for d, n in self.dims.items() if d not in self.unreliable}


def check_complex(C: ChainComplexSlice) -> None:
    lo, hi = C.degrees
    for d in range(lo + 1, hi + 1):
        if d in C.differentials and d - 1 in C.differentials:
            if not (C.differentials[d - 1] @ C.differentials[d]).is_zero():
                raise NotAComplex(f"d_{d - 1} o d_{d} != 0")


def homology_dims(C: ChainComplexSlice) -> HomologyResult:
    check_complex(C)
    lo, hi = C.degrees
    ranks = {d: rank(C.differential(d)) for d in range(lo, hi + 1)}
    dims = {}
    for d in range(lo, hi + 1):
        dims[d] = C.size(d) - ranks.get(d, 0) - ranks.get(d + 1, 0)
    unreliable = set()
    if not C.closed:
        # nothing is known about the maps leaving the window
        if lo not in C.differentials:
            unreliable.add(lo)
        unreliable.add(hi)
    return HomologyResult(dims, frozenset(unreliable))


def euler_characteristic(values: Mapping[int, int]) -> int:
    return sum((-1) ** (d % 2) * n for d, n in values.items())


def vectors_independent(vectors: Iterable[Sequence], field: Field = QQ) -> bool:
    vectors = [list(v) for v in vectors]
    if not vectors:
        return True
    M = SparseMatrix.from_dense(vectors, field)
    return rank(M) == len(vectors)
