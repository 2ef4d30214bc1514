"""Noncommutative differential forms on a free graded algebra.

Ω• of the free algebra on generators x_g is again free, on the letters
x_g and dx_g, so a form is a combination of words in those letters and the
bimodule relations hold automatically (d(xy) = dx·y + x·dy is just the
Leibniz rule for d on words). A letter is encoded as ``2*g + mark`` with
mark 1 for dx_g. Its total parity is deg(x_g) + mark.

DR• is Ω• modulo graded commutators, which is the space of cyclic words
with the Koszul sign of the total parity. DR⁰ carries the Poisson bracket
and cobracket of a constant symplectic form. They are computed here from
cyclic derivatives and a pairing read off the 2-form by contraction. This
is a route independent of :mod:`cyclix.liebialg`, so the two can be
compared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from cyclix.ainfty import AInftyData, _add
from cyclix.calabi_yau import induced_omega
from cyclix.cyclic import Necklaces
from cyclix.exactlin import SparseMatrix, invert, rank
from cyclix.liebialg import CyclicLieBialgebra
from cyclix.report import VerificationReport


class NonConstantForm(ValueError):
    pass


class MultiObjectUnsupported(ValueError):
    pass


Word = tuple[int, ...]


def plain(g: int) -> int:
    return 2 * g


def diff(g: int) -> int:
    return 2 * g + 1


def _acc(acc: dict, d: Mapping, c=1) -> None:
    for k, v in d.items():
        _add(acc, k, c * v)


@dataclass(frozen=True)
class FormAlgebra:
    """Generators with integer degrees; letters are plain or differential."""

    names: tuple[str, ...]
    degrees: tuple[int, ...]
    neck: Necklaces = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise ValueError("one degree per generator")
        par = [(self.degrees[c // 2] + (c & 1)) & 1 for c in range(2 * len(self.names))]
        object.__setattr__(self, "neck", Necklaces(par))

    @property
    def size(self) -> int:
        return len(self.names)

    def parity(self, word: Sequence[int]) -> int:
        return sum(self.neck.parities[c] for c in word) & 1

    def form_degree(self, word: Sequence[int]) -> int:
        return sum(c & 1 for c in word)

    def internal_degree(self, word: Sequence[int]) -> int:
        return sum(self.degrees[c // 2] for c in word)

    def format(self, word: Sequence[int]) -> str:
        if not word:
            return "1"
        return " ".join(("d" if c & 1 else "") + self.names[c // 2] for c in word)

    def generator(self, g: int) -> dict:
        return {(plain(g),): Fraction(1)}


@dataclass(frozen=True)
class VectorField:
    """ξ on generators, ``values[g] = {word of letter codes: coeff}``."""

    values: Mapping[int, Mapping[Word, Fraction]]
    degree: int


def partial(A: FormAlgebra, g: int) -> VectorField:
    """The constant field ∂/∂x_g."""
    return VectorField({g: {(): Fraction(1)}}, -A.degrees[g])


def d_apply(A: FormAlgebra, form: Mapping[Word, object]) -> dict:
    """The de Rham differential, a derivation of odd total degree."""
    out: dict = {}
    for w, c in form.items():
        passed = 0
        for k, x in enumerate(w):
            if not x & 1:
                _add(out, w[:k] + (x + 1,) + w[k + 1 :], (-1 if passed else 1) * c)
            passed ^= A.neck.parities[x]
    return out


def _derivation(A: FormAlgebra, form: Mapping[Word, object], degree: int, on_letter) -> dict:
    out: dict = {}
    for w, c in form.items():
        passed = 0
        for k, x in enumerate(w):
            img = on_letter(x)
            if img:
                sign = -1 if (degree & 1) and passed else 1
                for u, cu in img.items():
                    _add(out, w[:k] + u + w[k + 1 :], sign * c * cu)
            passed ^= A.neck.parities[x]
    return out


def lie_derivative(A: FormAlgebra, xi: VectorField, form: Mapping[Word, object]) -> dict:
    """L_ξ(x) = ξ(x), L_ξ(dx) = (-1)^{|ξ|} d(ξ(x)), extended as a derivation of degree |ξ|."""

    def on_letter(x):
        val = xi.values.get(x // 2)
        if not val:
            return None
        img = dict(val)
        if not x & 1:
            return img
        s = -1 if xi.degree & 1 else 1
        return {u: s * c for u, c in d_apply(A, img).items()}

    return _derivation(A, form, xi.degree, on_letter)


def contraction(A: FormAlgebra, xi: VectorField, form: Mapping[Word, object]) -> dict:
    """ι_ξ(x) = 0, ι_ξ(dx) = ξ(x), extended as a derivation of degree |ξ| - 1."""

    def on_letter(x):
        if not x & 1:
            return None
        return dict(xi.values.get(x // 2, {}))

    return _derivation(A, form, xi.degree - 1, on_letter)


def dr_project(A: FormAlgebra, form: Mapping[Word, object]) -> dict:
    """Class in DR• = Ω• / [Ω•, Ω•]; the empty word is kept as the constant."""
    out: dict = {}
    for w, c in form.items():
        if not w:
            _add(out, (), c)
            continue
        cl = A.neck(w)
        if not cl.vanishes:
            _add(out, cl.representative, cl.sign * c)
    return out


def commutator(A: FormAlgebra, u: Word, v: Word) -> dict:
    """Graded commutator uv - (-1)^{|u||v|} vu of two words."""
    out: dict = {}
    _add(out, u + v, 1)
    _add(out, v + u, 1 if A.parity(u) & A.parity(v) else -1)
    return out


# ---------------------------------------------------------------------------
# symplectic forms


def pairing_matrix(A: FormAlgebra, omega_form: Mapping[Word, object]) -> SparseMatrix:
    """P[x, y] = ι_{∂y} ι_{∂x} ω, a constant for constant 2-forms."""
    entries = {}
    for x in range(A.size):
        first = contraction(A, partial(A, x), omega_form)
        for y in range(A.size):
            val = dr_project(A, contraction(A, partial(A, y), first))
            entries[(x, y)] = val.get((), 0)
    return SparseMatrix(A.size, A.size, entries)


def is_constant_two_form(form: Mapping[Word, object]) -> bool:
    return all(len(w) == 2 and all(c & 1 for c in w) for w in form)


@dataclass(frozen=True)
class SymplecticCertificate:
    closed: bool
    constant: bool
    rank: int | None
    size: int
    reason: str


def is_symplectic(
    A: FormAlgebra, omega_form: Mapping[Word, object], *, require_constant: bool = True
) -> tuple[bool, SymplecticCertificate]:
    """Closed, and (for constant forms) ξ ↦ ι_ξ ω bijective on constant fields."""
    cls = dr_project(A, omega_form)
    closed = not dr_project(A, d_apply(A, cls))
    constant = is_constant_two_form(cls)
    if not closed:
        return False, SymplecticCertificate(False, constant, None, A.size, "dω ≠ 0")
    if not constant:
        if require_constant:
            raise NonConstantForm("bijectivity is only decided for constant 2-forms")
        return False, SymplecticCertificate(True, False, None, A.size, "not constant")
    r = rank(pairing_matrix(A, cls))
    ok = r == A.size
    return ok, SymplecticCertificate(True, True, r, A.size, "ok" if ok else f"pairing rank {r} < {A.size}")


def poisson_pairing(A: FormAlgebra, omega_form: Mapping[Word, object]) -> dict[tuple[int, int], Fraction]:
    """π on generators: the inverse of the contraction pairing matrix.

    P is symmetric in the grading of the differentials dx; the entry for
    (x, y) is twisted by (-1)^{|y|} so that π is graded antisymmetric for
    the parity of the generators themselves.
    """
    W = invert(pairing_matrix(A, omega_form))
    return {(plain(x), plain(y)): (-1 if A.degrees[y] & 1 else 1) * v for (x, y), v in W.entries.items()}


# ---------------------------------------------------------------------------
# the Poisson bialgebra on DR⁰


def cyclic_derivatives(A: FormAlgebra, u: Word):
    """Yield (x, ε, rest, side): u ≡ ε·(rest x) for side 'R', ε·(x rest) for side 'L'."""
    for i, x in enumerate(u):
        head, tail = u[: i + 1], u[i + 1 :]
        s = -1 if A.parity(head) & A.parity(tail) else 1
        yield x, s, tail + u[:i], "R"
        head, tail = u[:i], u[i:]
        s = -1 if A.parity(head) & A.parity(tail) else 1
        yield x, s, u[i + 1 :] + head, "L"


def poisson_bracket(A: FormAlgebra, u: Mapping[Word, object], v: Mapping[Word, object], pi) -> dict:
    """{u, v} = Σ π(x, y) [∂^R_x u · ∂^L_y v]."""
    out: dict = {}
    for a, ca in u.items():
        right: dict[int, list] = {}
        for x, s, rest, side in cyclic_derivatives(A, a):
            if side == "R":
                right.setdefault(x, []).append((s, rest))
        for b, cb in v.items():
            for y, t, rest_b, side in cyclic_derivatives(A, b):
                if side != "L":
                    continue
                for x, lst in right.items():
                    c = pi.get((x, y))
                    if not c:
                        continue
                    for s, rest_a in lst:
                        w = rest_a + rest_b
                        if w:
                            _acc(out, dr_project(A, {w: 1}), ca * cb * s * t * c)
    return out


def delta_dr0(A: FormAlgebra, u: Mapping[Word, object], pi, nu: int) -> dict:
    """Δ u = ½ Σ_{i≠j} ± π(a_i, a_j)([arc j→i] ⊗ [arc i→j] - flip).

    Summed over ordered pairs with the ½ weight: every unordered pair is met
    twice, once from each end. Each term is computed on the rotation that
    brings a_i to the front.
    """
    out: dict = {}
    half = Fraction(1, 2)
    for a, ca in u.items():
        n = len(a)
        for i in range(n):
            # [a] = s0 · [a_i R]
            X, Y = a[:i], a[i:]
            s0 = -1 if A.parity(X) & A.parity(Y) else 1
            R = a[i + 1 :] + X
            for k, y in enumerate(R):
                c = pi.get((a[i], y))
                if not c:
                    continue
                B, C = R[:k], R[k + 1 :]
                e = A.neck.parities[y] * A.parity(B) + A.parity(B) * A.parity(C)
                e += nu * A.neck.parities[a[i]]
                sign = s0 * (-1 if e & 1 else 1)
                for cu, uu in _classes(A, C):
                    for cw, ww in _classes(A, B):
                        coeff = half * ca * c * sign * cu * cw
                        _add(out, (uu, ww), coeff)
                        flip = -1 if ((A.parity(uu) + nu) & (A.parity(ww) + nu) & 1) else 1
                        _add(out, (ww, uu), -flip * coeff)
    return out


def _classes(A: FormAlgebra, w: Word):
    if not w:
        return []
    cl = A.neck(w)
    return [] if cl.vanishes else [(cl.sign, cl.representative)]


# ---------------------------------------------------------------------------
# comparison with the cyclic cochain bialgebra


def symplectic_form_of(data: AInftyData) -> tuple[FormAlgebra, dict]:
    """Generators x_e for the letters of a one-object CY category and the
    constant 2-form ½ Σ <e, f> dx_e dx_f built from the pairing."""
    if len(data.objects) != 1:
        raise MultiObjectUnsupported("the comparison is only defined for one object")
    A = FormAlgebra(tuple(L.name for L in data.letters), tuple(-L.sdeg for L in data.letters))
    form: dict = {}
    half = Fraction(1, 2)
    for (e, f), v in data.pairing.entries.items():
        _add(form, (diff(e), diff(f)), half * v)
    return A, dr_project(A, form)


def quillen_compare(data: AInftyData, max_length: int = 4, *, dr_pairing=None) -> VerificationReport:
    """Compare (Cycl, [,], δ) with (DR⁰, {,}, Δ) class by class.

    A cyclic word of letters corresponds to the 0-form class of the same
    word in the generators; both sides use the same canonical rotation, so
    the dictionary is the identity on representatives. ``dr_pairing``
    replaces the pairing on the form side only (for mutation tests).
    """
    A, form = symplectic_form_of(data if dr_pairing is None else data.replace(pairing=dr_pairing))
    ok, cert = is_symplectic(A, form)
    report = VerificationReport(f"Quillen comparison (max length {max_length})")
    report.check("DR form is symplectic").record(cert.reason, 0 if ok else 1)
    if not ok:
        return report
    pi = poisson_pairing(A, form)
    L = CyclicLieBialgebra(data, induced_omega(data))
    nu = L.nu
    basis = [w for w in L.basis(max_length) if w]
    to_form = {w: tuple(plain(i) for i in w) for w in basis}

    def from_form(d: Mapping) -> dict:
        out = {}
        for w, c in d.items():
            out[tuple(x // 2 for x in w)] = c
        return out

    def from_tensor(d: Mapping) -> dict:
        return {(tuple(x // 2 for x in u), tuple(x // 2 for x in w)): c for (u, w), c in d.items()}

    classes = report.check("class dictionary")
    for w in basis:
        classes.record(w, 0 if dr_project(A, {to_form[w]: 1}) == {to_form[w]: 1} else 1)
    br = report.check("bracket vs Poisson bracket")
    for a in basis:
        for b in basis:
            lhs = L._bracket_words(a, b)
            rhs = from_form(poisson_bracket(A, {to_form[a]: 1}, {to_form[b]: 1}, pi))
            res = dict(lhs)
            _acc(res, rhs, -1)
            br.record((a, b), res)
    cob = report.check("cobracket vs Δ")
    for a in basis:
        lhs = L._cobracket_word(a)
        rhs = from_tensor(delta_dr0(A, {to_form[a]: 1}, pi, nu))
        res = dict(lhs)
        _acc(res, rhs, -1)
        cob.record(a, res)
    return report


def poisson_axioms(data: AInftyData, max_length: int = 4) -> VerificationReport:
    """Run the shared axiom engine on (DR⁰, {,}, Δ)."""
    from cyclix.liebialg import axiom_suite

    A, form = symplectic_form_of(data)
    pi = poisson_pairing(A, form)
    nu = data.pairing.degree & 1

    class _DR0(CyclicLieBialgebra):
        def _bracket_words(self, a, b):
            key = (a, b)
            hit = self._bracket_cache.get(key)
            if hit is None:
                raw = poisson_bracket(A, {tuple(plain(i) for i in a): 1}, {tuple(plain(i) for i in b): 1}, pi)
                hit = {tuple(x // 2 for x in w): c for w, c in raw.items()}
                self._bracket_cache[key] = hit
            return hit

        def _cobracket_word(self, a):
            hit = self._cobracket_cache.get(a)
            if hit is None:
                raw = delta_dr0(A, {tuple(plain(i) for i in a): 1}, pi, nu)
                hit = {(tuple(x // 2 for x in u), tuple(x // 2 for x in w)): c for (u, w), c in raw.items()}
                self._cobracket_cache[a] = hit
            return hit

    return axiom_suite(data, max_length=max_length, algebra=_DR0(data))


__all__ = [
    "FormAlgebra",
    "MultiObjectUnsupported",
    "NonConstantForm",
    "SymplecticCertificate",
    "VectorField",
    "commutator",
    "contraction",
    "cyclic_derivatives",
    "d_apply",
    "delta_dr0",
    "diff",
    "dr_project",
    "is_constant_two_form",
    "is_symplectic",
    "lie_derivative",
    "pairing_matrix",
    "partial",
    "plain",
    "poisson_axioms",
    "poisson_bracket",
    "poisson_pairing",
    "quillen_compare",
    "symplectic_form_of",
]
