"""The Lie bracket and cobracket on cyclic cochains, and their axiom checks.

Cochains are kept in the coinvariant model: a cochain is a finite
combination of non-vanishing necklace classes (canonical words). For a
Calabi-Yau category of dimension n, π is the inverse of the suspended
form ω, a pairing of parity ν = n mod 2.

    [α, β] = Σ_{i,j} ± π(a_i, b_j) [A b-rest]      (contract a_i with b_j)
    δ(α)   = Σ_{i<j} ± π(a_i, a_j) ([outer] ⊗ [inner] - flip)

Both operations are even for the shifted parity p'(α) = p(α) + ν, where
p(α) is the parity of the suspended degree of a word. The cochain degree
is D = -Σ sdeg and both operations add n - 2 to it.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Mapping, Sequence

from cyclix.ainfty import AInftyData, _add
from cyclix.calabi_yau import SymplecticForm, induced_omega
from cyclix.cyclic import Necklaces
from cyclix.hochschild import enumerate_words
from cyclix.report import VerificationReport


class MixedDegrees(ValueError):
    pass


Word = tuple[int, ...]
Cochain = dict  # Word -> Fraction
Tensor = dict  # (Word, Word) -> Fraction


def _accumulate(acc: dict, d: Mapping, c=1) -> None:
    for k, v in d.items():
        _add(acc, k, c * v)


class CyclicLieBialgebra:
    """Bracket, cobracket and differential on the cyclic cochains of ``data``.

    ``unit`` adjoins the empty word as a class instead of sending it to 0.
    """

    def __init__(
        self,
        data: AInftyData,
        omega: SymplecticForm | None = None,
        *,
        unit: bool = False,
        dual: Mapping[tuple[int, int], Fraction] | None = None,
    ):
        self.data = data
        self.omega = omega if omega is not None else induced_omega(data)
        self.n = self.omega.degree
        self.nu = self.n & 1
        self.unit = unit
        self.neck = Necklaces(data.parities)
        self.parity = self.neck.parities
        self.sdeg = tuple(L.sdeg for L in data.letters)
        self.pi = dict(dual) if dual is not None else dual_pairing(self.omega)
        self._pi_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (x, y), v in self.pi.items():
            self._pi_row.setdefault(x, []).append((y, v))
        self._q: dict[int, list[tuple[Word, Fraction]]] = {}
        for ins, outs in data.ops.items():
            for o, c in outs.items():
                self._q.setdefault(o, []).append((ins, c))
        self._bracket_cache: dict[tuple[Word, Word], Cochain] = {}
        self._cobracket_cache: dict[Word, Tensor] = {}
        self._diff_cache: dict[Word, Cochain] = {}

    # -- degrees --------------------------------------------------------------

    def degree(self, word: Sequence[int]) -> int:
        return -sum(self.sdeg[i] for i in word)

    def p(self, word: Sequence[int]) -> int:
        return sum(self.parity[i] for i in word) & 1

    def shifted(self, word: Sequence[int]) -> int:
        return (self.p(word) + self.nu) & 1

    def homogeneous_degree(self, alpha: Mapping[Word, object]) -> int | None:
        degs = {self.degree(w) for w in alpha}
        if len(degs) > 1:
            raise MixedDegrees(f"cochain mixes degrees {sorted(degs)}")
        return degs.pop() if degs else None

    # -- classes --------------------------------------------------------------

    def cls(self, word: Sequence[int]) -> Cochain:
        """The class of a word as a cochain (possibly zero)."""
        word = tuple(word)
        if not word:
            return {(): Fraction(1)} if self.unit else {}
        c = self.neck(word)
        return {} if c.vanishes else {c.representative: Fraction(c.sign)}

    def basis(self, max_length: int) -> list[Word]:
        space = enumerate_words(self.data, max_length)
        reps = {c.representative for c in self.neck.batch(list(space)) if not c.vanishes}
        out = sorted(reps, key=lambda w: (len(w), w))
        if self.unit:
            out.insert(0, ())
        return out

    # -- rotations ------------------------------------------------------------

    def _split(self, X: Word, Y: Word) -> int:
        return -1 if self.p(X) & self.p(Y) else 1

    # -- bracket --------------------------------------------------------------

    def _bracket_words(self, a: Word, b: Word) -> Cochain:
        key = (a, b)
        hit = self._bracket_cache.get(key)
        if hit is not None:
            return hit
        out: Cochain = {}
        for i, x in enumerate(a):
            row = self._pi_row.get(x)
            if not row:
                continue
            # a = ε_a · (A x) with x moved to the end
            A = a[i + 1 :] + a[:i]
            eps_a = self._split(a[: i + 1], a[i + 1 :])
            for j, y in enumerate(b):
                for yy, v in row:
                    if yy != y:
                        continue
                    # b = ε_b · (y B) with y moved to the front
                    B = b[j + 1 :] + b[:j]
                    eps_b = self._split(b[:j], b[j:])
                    _accumulate(out, self.cls(A + B), eps_a * eps_b * v)
        self._bracket_cache[key] = out
        return out

    def bracket(self, alpha: Mapping[Word, object], beta: Mapping[Word, object]) -> Cochain:
        out: Cochain = {}
        for a, ca in alpha.items():
            if not a:
                continue
            for b, cb in beta.items():
                if b:
                    _accumulate(out, self._bracket_words(a, b), ca * cb)
        return out

    # -- cobracket ------------------------------------------------------------

    def _cobracket_word(self, a: Word) -> Tensor:
        hit = self._cobracket_cache.get(a)
        if hit is not None:
            return hit
        out: Tensor = {}
        nu = self.nu
        n = len(a)
        for i in range(n):
            row = self._pi_row.get(a[i])
            if not row:
                continue
            for j in range(i + 1, n):
                for yy, v in row:
                    if yy != a[j]:
                        continue
                    X, B, C = a[:i], a[i + 1 : j], a[j + 1 :]
                    # a_i moves next to a_j, then B and C swap; for odd n
                    # the pairing also passes X and a_i
                    e = self.parity[a[i]] * self.p(B) + self.p(B) * self.p(C)
                    e += nu * (self.p(X) + self.parity[a[i]])
                    sign = -1 if e & 1 else 1
                    outer, inner = self.cls(X + C), self.cls(B)
                    for u, cu in outer.items():
                        for w, cw in inner.items():
                            c = sign * v * cu * cw
                            _add(out, (u, w), c)
                            _add(out, (w, u), -self.flip_sign(u, w) * c)
        self._cobracket_cache[a] = out
        return out

    def flip_sign(self, u: Word, w: Word) -> int:
        return -1 if self.shifted(u) & self.shifted(w) else 1

    def cobracket(self, alpha: Mapping[Word, object]) -> Tensor:
        out: Tensor = {}
        for a, c in alpha.items():
            if a:
                _accumulate(out, self._cobracket_word(a), c)
        return out

    # -- differential ---------------------------------------------------------

    def _diff_word(self, a: Word) -> Cochain:
        hit = self._diff_cache.get(a)
        if hit is not None:
            return hit
        out: Cochain = {}
        passed = 0
        for i, x in enumerate(a):
            sign = -1 if passed else 1
            for ins, c in self._q.get(x, ()):
                _accumulate(out, self.cls(a[:i] + ins + a[i + 1 :]), sign * c)
            passed ^= self.parity[x]
        self._diff_cache[a] = out
        return out

    def differential(self, alpha: Mapping[Word, object]) -> Cochain:
        """The cochain differential: dual of b, a derivation on letters."""
        out: Cochain = {}
        for a, c in alpha.items():
            if a:
                _accumulate(out, self._diff_word(a), c)
        return out

    # -- tensor helpers -------------------------------------------------------

    def bracket_tensor(self, t: Mapping[tuple[Word, Word], object]) -> Cochain:
        out: Cochain = {}
        for (u, w), c in t.items():
            if u and w:
                _accumulate(out, self._bracket_words(u, w), c)
        return out


def dual_pairing(omega: SymplecticForm) -> dict[tuple[int, int], Fraction]:
    """π(x, y) = (M⁻¹)[x, y] with M the block matrix of ω."""
    return dict(omega.inverse_pairs())


# ---------------------------------------------------------------------------
# axiom checks


def _tensor_flip(L: CyclicLieBialgebra, t: Mapping) -> dict:
    out = {}
    for (u, w), c in t.items():
        _add(out, (w, u), L.flip_sign(u, w) * c)
    return out


def _act(L: CyclicLieBialgebra, x: Word, t: Mapping) -> dict:
    """x·(y⊗z) = [x, y]⊗z + (-1)^{p'x p'y} y⊗[x, z]."""
    out = {}
    px = L.shifted(x) if x else L.nu
    for (y, z), c in t.items():
        if y:
            for y2, c2 in L._bracket_words(x, y).items():
                _add(out, (y2, z), c * c2)
        if z:
            py = L.shifted(y) if y else L.nu
            s = -1 if px & py else 1
            for z2, c2 in L._bracket_words(x, z).items():
                _add(out, (y, z2), s * c * c2)
    return out


def _sh(L: CyclicLieBialgebra, w: Word) -> int:
    return L.shifted(w) if w else L.nu


def check_degree_law(L: CyclicLieBialgebra, report: VerificationReport, inputs: tuple, out: Mapping) -> None:
    check = report.check("degree law")
    total = sum(L.degree(w) for w in inputs) + L.n - 2
    bad = {}
    for key, c in out.items():
        words = key if isinstance(key[0] if key else None, tuple) else (key,)
        if sum(L.degree(w) for w in words) != total:
            bad[key] = c
    check.record(inputs, bad)


def axiom_suite(
    data: AInftyData,
    omega: SymplecticForm | None = None,
    max_length: int = 4,
    *,
    unit: bool = False,
    jacobi_length: int | None = None,
    algebra: CyclicLieBialgebra | None = None,
) -> VerificationReport:
    """Exhaustive check of the involutive Lie bialgebra axioms on basis classes.

    Pairs and triples range over all basis classes with word length up to
    ``max_length``. Jacobi and Drinfeld are checked on unordered tuples only:
    the Jacobi sum is invariant under cyclic permutation and antisymmetry is
    checked separately on every ordered pair, so this loses nothing.
    ``jacobi_length`` can bound the triple search separately.
    """
    L = algebra if algebra is not None else CyclicLieBialgebra(data, omega, unit=unit)
    basis = [w for w in L.basis(max_length) if w]
    report = VerificationReport(f"Lie bialgebra axioms (n={L.n}, max length {max_length})")
    anti = report.check("antisymmetry")
    drin = report.check("Drinfeld compatibility")
    chain_b = report.check("bracket chain compatibility")
    for i, a in enumerate(basis):
        for b in basis[i:]:
            ab = L._bracket_words(a, b)
            ba = L._bracket_words(b, a)
            s = -1 if _sh(L, a) & _sh(L, b) else 1
            res = dict(ab)
            _accumulate(res, ba, s)
            anti.record((a, b), res)
            check_degree_law(L, report, (a, b), ab)
            # δ[a,b] = a·δb - (-1)^{p'a p'b} b·δa
            lhs = L.cobracket(ab)
            rhs = _act(L, a, L._cobracket_word(b))
            _accumulate(rhs, _act(L, b, L._cobracket_word(a)), -s)
            _accumulate(lhs, rhs, -1)
            drin.record((a, b), lhs)
            # Q[a,b] = [Qa,b] + (-1)^{p'a}[a,Qb]
            res = L.differential(ab)
            _accumulate(res, L.bracket(L._diff_word(a), {b: 1}), -1)
            _accumulate(res, L.bracket({a: 1}, L._diff_word(b)), 1 if _sh(L, a) else -1)
            chain_b.record((a, b), res)
    jac = report.check("Jacobi")
    jl = max_length if jacobi_length is None else jacobi_length
    jbasis = [w for w in basis if len(w) <= jl]
    for a, b, c in combinations_with_replacement(jbasis, 3):
        pa, pb, pc = _sh(L, a), _sh(L, b), _sh(L, c)
        res: dict = {}
        _accumulate(res, L.bracket({a: 1}, L._bracket_words(b, c)), -1 if pa & pc else 1)
        _accumulate(res, L.bracket({b: 1}, L._bracket_words(c, a)), -1 if pb & pa else 1)
        _accumulate(res, L.bracket({c: 1}, L._bracket_words(a, b)), -1 if pc & pb else 1)
        jac.record((a, b, c), res)
    coanti = report.check("cobracket antisymmetry")
    cojac = report.check("co-Jacobi")
    inv = report.check("involutivity")
    chain_d = report.check("cobracket chain compatibility")
    dsq = report.check("differential squares to zero")
    for a in basis:
        d = L._cobracket_word(a)
        check_degree_law(L, report, (a,), d)
        res = dict(d)
        _accumulate(res, _tensor_flip(L, d), 1)
        coanti.record(a, res)
        # (1 + τ + τ²)(id⊗δ)δ
        triple: dict = {}
        for (u, w), c in d.items():
            if not w:
                continue
            for (w1, w2), c2 in L._cobracket_word(w).items():
                _add(triple, (u, w1, w2), c * c2)
        res = {}
        for (x, y, z), c in triple.items():
            _add(res, (x, y, z), c)
            s1 = -1 if _sh(L, z) & (_sh(L, x) ^ _sh(L, y)) else 1
            _add(res, (z, x, y), s1 * c)
            s2 = -1 if _sh(L, x) & (_sh(L, y) ^ _sh(L, z)) else 1
            _add(res, (y, z, x), s2 * c)
        cojac.record(a, res)
        inv.record(a, L.bracket_tensor(d))
        # δQ = (Q⊗1 + 1⊗Q)δ
        qa = L._diff_word(a)
        lhs = L.cobracket(qa)
        for (u, w), c in d.items():
            if u:
                for u2, c2 in L._diff_word(u).items():
                    _add(lhs, (u2, w), -c * c2)
            if w:
                s = -1 if _sh(L, u) else 1
                for w2, c2 in L._diff_word(w).items():
                    _add(lhs, (u, w2), -s * c * c2)
        chain_d.record(a, lhs)
        dsq.record(a, L.differential(qa))
    return report


__all__ = [
    "CyclicLieBialgebra",
    "MixedDegrees",
    "axiom_suite",
    "check_degree_law",
    "dual_pairing",
]
