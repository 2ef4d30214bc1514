"""Independent reference computations.

Nothing here calls the elimination, necklace or differential code of the
package. Dense textbook elimination (and sympy) stand in for the sparse
engine; homology of ungraded algebras is recomputed from the unsuspended
formulas.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

import sympy


def sympy_rank(rows) -> int:
    if not rows or not rows[0]:
        return 0
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else x for x in r] for r in rows]).rank()


def dense_rank(rows) -> int:
    """Textbook row reduction over Fractions on a dense copy."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m or not m[0]:
        return 0
    r = 0
    for c in range(len(m[0])):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            if m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def dense_rank_mod_p(rows, p: int) -> int:
    # plain Gaussian elimination over GF(p) on python ints
    m = [[int(x) % p for x in r] for r in rows]
    if not m:
        return 0
    r = 0
    cols = len(m[0])
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        r += 1
    return r


def rotate_once(word, parities):
    """Move the last letter to the front; returns (word, sign)."""
    if len(word) <= 1:
        return tuple(word), 1
    e = parities[word[-1]] * sum(parities[x] for x in word[:-1])
    return (word[-1],) + tuple(word[:-1]), (-1) ** e


def brute_canonical(word, parities):
    """Least rotation, sign relating the word to it, and whether it is zero."""
    word = tuple(word)
    seen = {}
    u, sign = word, 1
    vanish = False
    for _ in range(len(word)):
        if u in seen and seen[u] != sign:
            vanish = True
        seen.setdefault(u, sign)
        u, s = rotate_once(u, parities)
        sign *= s
    if u == word and sign == -1:
        vanish = True
    best = min(seen)
    # word = sign_r^{-1} rot_r(word), and the signs are ±1
    return best, seen[best], vanish


def _ungraded_words(n_letters, length):
    return list(product(range(n_letters), repeat=length))


def ungraded_tables(mult, n_letters, max_length, cyclic):
    """Hochschild or Connes homology of an ungraded algebra, dense.

    ``mult[(a, b)] = {c: coeff}``. Chains of length n + 1 sit in degree n,
    b(a_0..a_n) = Σ_{i<n} (-1)^i (.., a_i a_{i+1}, ..) + (-1)^n (a_n a_0, a_1, .., a_{n-1})
    and t(a_0..a_n) = (-1)^n (a_n, a_0, .., a_{n-1}). The cyclic complex is
    C / im(1 - t); the induced map has rank rank[B | T] - rank[T].
    Returns {degree: dim} for degrees 0..max_length - 1 (the top one is
    not exact).
    """
    words = {n: _ungraded_words(n_letters, n + 1) for n in range(max_length)}
    index = {n: {w: i for i, w in enumerate(ws)} for n, ws in words.items()}

    def b_matrix(n):
        rows = [[0] * len(words[n]) for _ in words[n - 1]]
        for j, w in enumerate(words[n]):
            for i in range(n):
                for c, v in mult.get((w[i], w[i + 1]), {}).items():
                    u = w[:i] + (c,) + w[i + 2 :]
                    rows[index[n - 1][u]][j] += (-1) ** i * v
            for c, v in mult.get((w[n], w[0]), {}).items():
                u = (c,) + w[1:n]
                rows[index[n - 1][u]][j] += (-1) ** n * v
        return rows

    def t_matrix(n):
        size = len(words[n])
        rows = [[0] * size for _ in range(size)]
        for j, w in enumerate(words[n]):
            rows[j][j] += 1
            u = (w[-1],) + w[:-1]
            rows[index[n][u]][j] -= (-1) ** n
        return rows

    dims = {}
    for n in range(max_length):
        size = len(words[n])
        rank_in = 0
        if n + 1 < max_length:
            B = b_matrix(n + 1)
            if cyclic:
                T = t_matrix(n)
                rank_in = dense_rank([rb + rt for rb, rt in zip(B, T)]) - dense_rank(T)
            else:
                rank_in = dense_rank(B)
        rank_out = 0
        if n >= 1:
            B = b_matrix(n)
            if cyclic:
                T = t_matrix(n - 1)
                rank_out = dense_rank([rb + rt for rb, rt in zip(B, T)]) - dense_rank(T)
            else:
                rank_out = dense_rank(B)
        quotient = size - (dense_rank(t_matrix(n)) if cyclic else 0)
        dims[n] = quotient - rank_in - rank_out
    return dims


def dr_pairing_rank(degrees, coeffs) -> int:
    """Rank of the coefficient matrix of a constant 2-form Σ c_ef dx_e dx_f in DR².

    In DR, dx_e dx_f = (-1)^{p_e p_f} dx_f dx_e with p = deg + 1, so the
    class is recorded by Q[e][f] = c_ef + (-1)^{p_e p_f} c_fe.
    """
    n = len(degrees)
    par = [(d + 1) & 1 for d in degrees]
    Q = [[0] * n for _ in range(n)]
    for e in range(n):
        for f in range(n):
            Q[e][f] = coeffs.get((e, f), 0) + (-1) ** (par[e] * par[f]) * coeffs.get((f, e), 0)
    return dense_rank(Q)
