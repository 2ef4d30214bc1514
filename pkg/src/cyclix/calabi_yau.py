"""Calabi-Yau pairings, the induced symplectic form and the CY verifier.

A pairing of degree n pairs Hom(B, A) with Hom(A, B) and is nonzero only
when the unsuspended degrees add up to n. On suspended letters it induces

    ω(ā, b̄) = (-1)^{sdeg(a)} <a, b>

which is graded antisymmetric of degree n - 2. The blocks of ω and their
inverses are kept per ordered object pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from cyclix.ainfty import AInftyData, NotComposable, _Resolver
from cyclix.exactlin import SingularMatrix, SparseMatrix, invert, rank_and_kernel
from cyclix.report import VerificationReport


class DegeneratePairing(ValueError):
    def __init__(self, message: str, null_vector: dict | None = None):
        super().__init__(message)
        self.null_vector = null_vector or {}


@dataclass(frozen=True)
class PairingData:
    """``entries[(a, b)] = <a, b>`` on letter indices, a in Hom(B, A), b in Hom(A, B)."""

    degree: int
    entries: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {k: Fraction(v) for k, v in sorted(self.entries.items()) if Fraction(v)}
        object.__setattr__(self, "entries", MappingProxyType(clean))

    @classmethod
    def build(
        cls,
        data: AInftyData,
        degree: int,
        entries: Iterable[tuple[object, object, object]],
        *,
        symmetrize: bool = True,
    ) -> "PairingData":
        """Pairing from ``(ref_a, ref_b, value)`` triples.

        With ``symmetrize`` the partner entry <b, a> = (-1)^{|a||b|} <a, b> is
        filled in when it is not given explicitly.
        """
        res = _Resolver(data.letters)
        L = data.letters
        out: dict[tuple[int, int], Fraction] = {}
        for ra, rb, v in entries:
            a, b = res(ra), res(rb)
            if L[a].source != L[b].target or L[a].target != L[b].source:
                raise NotComposable(f"cannot pair {L[a].ref} with {L[b].ref}")
            out[(a, b)] = out.get((a, b), Fraction(0)) + Fraction(v)
        if symmetrize:
            for (a, b), v in list(out.items()):
                if (b, a) not in out:
                    sgn = -1 if (L[a].degree * L[b].degree) & 1 else 1
                    out[(b, a)] = sgn * v
        return cls(degree, out)

    def __eq__(self, other):
        if not isinstance(other, PairingData):
            return NotImplemented
        return self.degree == other.degree and dict(self.entries) == dict(other.entries)

    __hash__ = None

    def value(self, a: int, b: int) -> Fraction:
        return self.entries.get((a, b), Fraction(0))

    def scaled(self, a: int, b: int, factor) -> "PairingData":
        entries = dict(self.entries)
        entries[(a, b)] = entries.get((a, b), Fraction(0)) * Fraction(factor)
        return PairingData(self.degree, entries)


@dataclass(frozen=True)
class SymplecticForm:
    """ω on suspended letters with blockwise inverses.

    ``blocks[(A, B)] = (rows, cols, M)`` with ``rows`` the letters of
    Hom(A, B), ``cols`` those of Hom(B, A) and ``M[p, q] = ω(e_p, f_q)``.
    ``inverse_blocks[(A, B)]`` is ``M⁻¹``, indexed ``[q, p]``.
    """

    degree: int
    omega: Mapping[tuple[int, int], Fraction]
    blocks: Mapping[tuple[str, str], tuple[tuple[int, ...], tuple[int, ...], SparseMatrix]]
    inverse_blocks: Mapping[tuple[str, str], SparseMatrix]

    def __call__(self, a: int, b: int) -> Fraction:
        return self.omega.get((a, b), Fraction(0))

    @property
    def nu(self) -> int:
        """Parity of ω, equal to n mod 2."""
        return self.degree & 1

    def inverse_entry(self, f: int, e: int) -> Fraction:
        """(M⁻¹)[q, p] for f = f_q in Hom(B, A) and e = e_p in Hom(A, B)."""
        for (A, B), (rows, cols, _) in self.blocks.items():
            if e in rows and f in cols:
                return self.inverse_blocks[(A, B)].entries.get((cols.index(f), rows.index(e)), Fraction(0))
        return Fraction(0)

    def inverse_pairs(self) -> dict[tuple[int, int], Fraction]:
        """All nonzero ``(f, e) -> (M⁻¹)[f, e]``."""
        out = {}
        for key, (rows, cols, _) in self.blocks.items():
            W = self.inverse_blocks[key]
            for (q, p), v in W.entries.items():
                out[(cols[q], rows[p])] = v
        return out


def omega_entries(data: AInftyData, pairing: PairingData) -> dict[tuple[int, int], Fraction]:
    L = data.letters
    return {(a, b): (-1 if L[a].sdeg & 1 else 1) * v for (a, b), v in pairing.entries.items()}


def _blocks(data: AInftyData, omega: Mapping[tuple[int, int], Fraction]):
    out = {}
    for A in data.objects:
        for B in data.objects:
            rows, cols = data.hom(A, B), data.hom(B, A)
            if not rows and not cols:
                continue
            M = SparseMatrix(
                len(rows),
                len(cols),
                {(p, q): omega[(e, f)] for p, e in enumerate(rows) for q, f in enumerate(cols) if (e, f) in omega},
            )
            out[(A, B)] = (rows, cols, M)
    return out


def _null_vector(data: AInftyData, rows, cols, M: SparseMatrix) -> dict[str, Fraction]:
    # a row vector killed by M, else a column vector; named by letter
    r, ker = rank_and_kernel(M.transpose())
    if ker and rows:
        return {data.letter_name(rows[p]): v for p, v in enumerate(ker[0]) if v}
    r, ker = rank_and_kernel(M)
    if ker and cols:
        return {data.letter_name(cols[q]): v for q, v in enumerate(ker[0]) if v}
    return {}


def induced_omega(data: AInftyData, pairing: PairingData | None = None) -> SymplecticForm:
    pairing = pairing if pairing is not None else data.pairing
    if pairing is None:
        raise DegeneratePairing("category carries no pairing")
    omega = omega_entries(data, pairing)
    blocks = _blocks(data, omega)
    inv = {}
    for key, (rows, cols, M) in blocks.items():
        try:
            if M.rows != M.cols:
                raise SingularMatrix("non-square block")
            inv[key] = invert(M)
        except SingularMatrix:
            null = _null_vector(data, rows, cols, M)
            raise DegeneratePairing(
                f"pairing Hom({key[0]}, {key[1]}) x Hom({key[1]}, {key[0]}) is degenerate; "
                f"null vector {null}",
                null,
            ) from None
    return SymplecticForm(pairing.degree, MappingProxyType(omega), MappingProxyType(blocks), MappingProxyType(inv))


def _cyclic_tuples(data: AInftyData, length: int):
    for w in data.composable_tuples(length):
        if data.letters[w[-1]].target == data.letters[w[0]].source:
            yield w


def cyclic_functional(data: AInftyData, omega: Mapping[tuple[int, int], Fraction], word: Sequence[int]) -> Fraction:
    """ω(m̄_k(ā_0, .., ā_{k-1}), ā_k).

    With the operation in the left slot the rotation sign is the plain Koszul
    sign for every n. Putting it on the right instead costs an extra
    (-1)^{n·sdeg} when n is odd.
    """
    total = Fraction(0)
    for o, c in data.m_bar(tuple(word[:-1])).items():
        total += c * omega.get((o, word[-1]), 0)
    return total


def verify_cy(data: AInftyData, pairing: PairingData | None = None, max_arity: int | None = None) -> VerificationReport:
    pairing = pairing if pairing is not None else data.pairing
    report = VerificationReport("Calabi-Yau structure")
    L = data.letters
    n = pairing.degree
    sym = report.check("graded symmetry")
    sup = report.check("degree support")
    for (a, b), v in pairing.entries.items():
        sgn = -1 if (L[a].degree * L[b].degree) & 1 else 1
        sym.record((a, b), pairing.value(b, a) - sgn * v)
        sup.record((a, b), v if L[a].degree + L[b].degree != n else 0)
    nd = report.check("nondegeneracy")
    omega = omega_entries(data, pairing)
    for key, (rows, cols, M) in _blocks(data, omega).items():
        ok = M.rows == M.cols
        if ok:
            try:
                invert(M)
            except SingularMatrix:
                ok = False
        nd.record((key, _null_vector(data, rows, cols, M) if not ok else {}), 0 if ok else 1)
    top = data.max_arity if max_arity is None else max_arity
    for k in range(1, top + 1):
        check = report.check(f"cyclic invariance arity {k}")
        for w in _cyclic_tuples(data, k + 1):
            head = sum(L[a].sdeg for a in w[:-1])
            sgn = -1 if (head * L[w[-1]].sdeg) & 1 else 1
            rot = (w[-1],) + w[:-1]
            check.record(w, cyclic_functional(data, omega, w) - sgn * cyclic_functional(data, omega, rot))
    return report


__all__ = [
    "DegeneratePairing",
    "PairingData",
    "SymplecticForm",
    "cyclic_functional",
    "induced_omega",
    "omega_entries",
    "verify_cy",
]
