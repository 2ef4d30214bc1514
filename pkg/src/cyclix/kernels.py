"""Hot numeric kernels: modular row reduction and batch necklace canonicalization.

Each kernel has a loop implementation compiled with numba and a vectorized
numpy implementation. ``USE_NUMBA`` (see ``cyclix._jit``) picks the path used
by the public wrappers; both paths are importable for benchmarking.
"""

from __future__ import annotations

import numpy as np

from cyclix._jit import USE_NUMBA, maybe_njit

# entries are reduced mod p before every product, so p**2 must fit in int64
MAX_PRIME = 2**31 - 1


# ---------------------------------------------------------------------------
# modular reduced row echelon form


def _inv_mod(a, p):
    t, new_t = 0, 1
    r, new_r = p, a % p
    while new_r != 0:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    if t < 0:
        t += p
    return t


_inv_mod_kernel = maybe_njit(_inv_mod) or _inv_mod


def _rref_mod_p_loops(mat, p):
    m = mat.copy()
    nrows, ncols = m.shape
    pivots = np.empty(min(nrows, ncols), dtype=np.int64)
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for r in range(rank, nrows):
            if m[r, c] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(ncols):
                tmp = m[piv, j]
                m[piv, j] = m[rank, j]
                m[rank, j] = tmp
        inv = _inv_mod_kernel(m[rank, c], p)
        for j in range(c, ncols):
            m[rank, j] = (m[rank, j] * inv) % p
        for r in range(nrows):
            if r != rank:
                f = m[r, c]
                if f != 0:
                    for j in range(c, ncols):
                        m[r, j] = (m[r, j] - f * m[rank, j]) % p
        pivots[rank] = c
        rank += 1
    return m, pivots[:rank].copy(), rank


def _rref_mod_p_numpy(mat, p):
    m = np.array(mat, dtype=np.int64) % p
    nrows, ncols = m.shape
    pivots = []
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        nz = np.flatnonzero(m[rank:, c])
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        inv = pow(int(m[rank, c]), -1, p)
        m[rank, c:] = (m[rank, c:] * inv) % p
        col = m[:, c].copy()
        col[rank] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            m[np.ix_(rows, np.arange(c, ncols))] = (
                m[np.ix_(rows, np.arange(c, ncols))] - np.outer(col[rows], m[rank, c:])
            ) % p
        pivots.append(c)
        rank += 1
    return m, np.array(pivots, dtype=np.int64), rank


_rref_mod_p_numba = maybe_njit(_rref_mod_p_loops)


def rref_mod_p(mat: np.ndarray, p: int, *, use_numba: bool | None = None):
    """Reduced row echelon form of an integer matrix over F_p.

    Returns ``(rref, pivot_columns, rank)``. Pivots are chosen as the first
    nonzero entry at or below the current row, scanning columns left to right.
    """
    if not 2 <= p <= MAX_PRIME:
        raise ValueError(f"prime {p} outside supported range [2, {MAX_PRIME}]")
    arr = np.ascontiguousarray(np.asarray(mat, dtype=np.int64) % p)
    if arr.ndim != 2:
        raise ValueError("expected a 2-d array")
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba and _rref_mod_p_numba is not None:
        r, piv, rank = _rref_mod_p_numba(arr, np.int64(p))
        return r, piv, int(rank)
    return _rref_mod_p_numpy(arr, p)


def rank_mod_p(mat: np.ndarray, p: int, *, use_numba: bool | None = None) -> int:
    return rref_mod_p(mat, p, use_numba=use_numba)[2]


# ---------------------------------------------------------------------------
# necklace canonicalization


def _min_rotation_loops(words, parity):
    n, length = words.shape
    shift = np.zeros(n, dtype=np.int32)
    sign = np.ones(n, dtype=np.int8)
    vanish = np.zeros(n, dtype=np.bool_)
    pref = np.zeros(length + 1, dtype=np.int64)
    for w in range(n):
        for i in range(length):
            pref[i + 1] = pref[i] + parity[words[w, i]]
        total = pref[length]
        best = 0
        for r in range(1, length):
            cmp = 0
            for k in range(length):
                a = words[w, (r + k) % length]
                b = words[w, (best + k) % length]
                if a != b:
                    cmp = -1 if a < b else 1
                    break
            if cmp < 0:
                best = r
            fixed = True
            for k in range(length):
                if words[w, (r + k) % length] != words[w, k]:
                    fixed = False
                    break
            # a fixing rotation with odd-odd split sends the word to minus itself
            if fixed and (pref[r] & 1) and ((total - pref[r]) & 1):
                vanish[w] = True
        head = pref[best] & 1
        tail = (total - pref[best]) & 1
        shift[w] = best
        sign[w] = -1 if (head & tail) else 1
    return shift, sign, vanish


def _min_rotation_numpy(words, parity):
    n, length = words.shape
    par = parity[words].astype(np.int64)
    pref = np.concatenate([np.zeros((n, 1), dtype=np.int64), np.cumsum(par, axis=1)], axis=1)
    total = pref[:, length]
    best = words.copy()
    best_r = np.zeros(n, dtype=np.int32)
    vanish = np.zeros(n, dtype=bool)
    rows = np.arange(n)
    for r in range(1, length):
        cand = np.roll(words, -r, axis=1)
        diff = cand != best
        has = diff.any(axis=1)
        first = diff.argmax(axis=1)
        less = has & (cand[rows, first] < best[rows, first])
        best[less] = cand[less]
        best_r[less] = r
        fixed = ~(cand != words).any(axis=1)
        odd = (pref[:, r] & 1) & ((total - pref[:, r]) & 1)
        vanish |= fixed & (odd == 1)
    odd = (pref[rows, best_r] & 1) & ((total - pref[rows, best_r]) & 1)
    sign = np.where(odd == 1, -1, 1).astype(np.int8)
    return best_r, sign, vanish


_min_rotation_numba = maybe_njit(_min_rotation_loops)


def min_rotations(words: np.ndarray, parity: np.ndarray, *, use_numba: bool | None = None):
    """Canonical rotation of every row of ``words`` (all rows share one length).

    ``parity[letter]`` is the Koszul parity of a letter. Returns arrays
    ``(shift, sign, vanish)``: the canonical representative of row ``w`` is
    ``w[shift:] + w[:shift]``, the class of ``w`` equals ``sign`` times the
    class of the representative, and ``vanish`` marks rows that some rotation
    sends to minus themselves.
    """
    words = np.ascontiguousarray(words, dtype=np.int32)
    parity = np.ascontiguousarray(parity, dtype=np.int8) & 1
    if words.ndim != 2:
        raise ValueError("expected a 2-d array of words")
    if words.shape[0] == 0 or words.shape[1] == 0:
        n = words.shape[0]
        return np.zeros(n, np.int32), np.ones(n, np.int8), np.zeros(n, bool)
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba and _min_rotation_numba is not None:
        return _min_rotation_numba(words, parity)
    return _min_rotation_numpy(words, parity)
