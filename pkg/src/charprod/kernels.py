"""Hot inner loops.

Every kernel exists twice: a loop-style body that numba compiles, and a
vectorised numpy body used when numba is switched off (``CHARPROD_NUMBA=0``).
Both must return identical arrays; ``tests/test_kernels.py`` holds them to it
and ``benchmarks/bench_kernels.py`` times one against the other.

Conventions: Cayley tables are ``int32`` arrays with ``T[g, h] = g*h`` and the
identity at index 0. Modular routines take ``int64`` arrays already reduced
into ``[0, p)``.
"""

from __future__ import annotations

import numpy as np

from ._accel import USE_NUMBA, njit

__all__ = [
    "USE_NUMBA",
    "KERNELS",
    "associativity_violation",
    "element_orders",
    "conjugacy_labels",
    "class_constants",
    "closure",
    "rref_mod_p",
    "charpoly_mod_p",
    "gram_poly",
]


# ---------------------------------------------------------------------------
# group tables


def _associativity_violation_loop(T):
    n = T.shape[0]
    for a in range(n):
        for b in range(n):
            ab = T[a, b]
            for c in range(n):
                if T[ab, c] != T[a, T[b, c]]:
                    return np.array([a, b, c], dtype=np.int64)
    return np.array([-1, -1, -1], dtype=np.int64)


def _associativity_violation_numpy(T):
    n = T.shape[0]
    for a in range(n):
        lhs = T[T[a]]  # row b, column c: (ab)c
        rhs = T[a][T]  # a(bc)
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            b, c = bad[0]
            return np.array([a, b, c], dtype=np.int64)
    return np.array([-1, -1, -1], dtype=np.int64)


def _element_orders_loop(T):
    n = T.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for g in range(n):
        x = g
        o = 1
        while x != 0:
            x = T[x, g]
            o += 1
            if o > n:
                return -np.ones(n, dtype=np.int64)
        out[g] = o
    return out


def _element_orders_numpy(T):
    n = T.shape[0]
    ar = np.arange(n)
    out = np.zeros(n, dtype=np.int64)
    cur = ar.copy()
    for step in range(1, n + 1):
        hit = (cur == 0) & (out == 0)
        out[hit] = step
        if out.all():
            return out
        cur = T[cur, ar]
    return -np.ones(n, dtype=np.int64)


def _conjugacy_labels_loop(T, inv):
    n = T.shape[0]
    label = -np.ones(n, dtype=np.int64)
    for g in range(n):
        if label[g] >= 0:
            continue
        for x in range(n):
            label[T[T[inv[x], g], x]] = g
    return label


def _conjugacy_labels_numpy(T, inv):
    n = T.shape[0]
    ar = np.arange(n)
    label = -np.ones(n, dtype=np.int64)
    for g in range(n):
        if label[g] < 0:
            label[T[T[inv, g], ar]] = g
    return label


def _class_constants_loop(T, inv, class_of, reps, k):
    # c[j, r, s] = #{x in C_j : x^-1 z_s in C_r}, z_s = reps[s]
    n = T.shape[0]
    c = np.zeros((k, k, k), dtype=np.int64)
    for s in range(k):
        z = reps[s]
        for x in range(n):
            c[class_of[x], class_of[T[inv[x], z]], s] += 1
    return c


def _class_constants_numpy(T, inv, class_of, reps, k):
    c = np.zeros((k, k, k), dtype=np.int64)
    for s in range(k):
        r = class_of[T[inv, reps[s]]]
        np.add.at(c[:, :, s], (class_of, r), 1)
    return c


def _closure_loop(T, seed):
    n = T.shape[0]
    gens = np.nonzero(seed)[0]
    inside = np.zeros(n, dtype=np.bool_)
    queue = np.empty(n, dtype=np.int64)
    inside[0] = True
    queue[0] = 0
    head = 0
    tail = 1
    while head < tail:
        m = queue[head]
        head += 1
        for g in gens:
            y = T[m, g]
            if not inside[y]:
                inside[y] = True
                queue[tail] = y
                tail += 1
    return inside


def _closure_numpy(T, seed):
    gens = np.nonzero(seed)[0]
    inside = np.zeros(T.shape[0], dtype=np.bool_)
    inside[0] = True
    if gens.size == 0:
        return inside
    frontier = np.array([0])
    while frontier.size:
        nxt = np.unique(T[np.ix_(frontier, gens)])
        nxt = nxt[~inside[nxt]]
        inside[nxt] = True
        frontier = nxt
    return inside


# ---------------------------------------------------------------------------
# linear algebra over GF(p)


def _modinv_loop(a, p):
    t, newt = 0, 1
    r, newr = p, a % p
    while newr != 0:
        q = r // newr
        t, newt = newt, t - q * newt
        r, newr = newr, r - q * newr
    if t < 0:
        t += p
    return t


def _rref_mod_p_loop(M, p):
    R = M.copy() % p
    rows, cols = R.shape
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        piv = -1
        for i in range(rank, rows):
            if R[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(cols):
                tmp = R[piv, j]
                R[piv, j] = R[rank, j]
                R[rank, j] = tmp
        inv = _modinv_loop(R[rank, col], p)
        for j in range(cols):
            R[rank, j] = (R[rank, j] * inv) % p
        for i in range(rows):
            if i != rank:
                f = R[i, col]
                if f != 0:
                    for j in range(cols):
                        R[i, j] = (R[i, j] - f * R[rank, j]) % p
        pivots[rank] = col
        rank += 1
    return R, pivots[:rank].copy()


def _rref_mod_p_numpy(M, p):
    R = M.copy() % p
    rows, cols = R.shape
    pivots = []
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(R[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            R[[rank, piv]] = R[[piv, rank]]
        R[rank] = (R[rank] * pow(int(R[rank, col]), -1, p)) % p
        f = R[:, col].copy()
        f[rank] = 0
        R -= np.outer(f, R[rank])
        R %= p
        pivots.append(col)
        rank += 1
    return R, np.array(pivots, dtype=np.int64)


def _charpoly_mod_p_loop(A, p):
    # Hessenberg reduction by similarity, then the standard recurrence.
    H = A.copy() % p
    n = H.shape[0]
    for j in range(n - 2):
        piv = -1
        for i in range(j + 1, n):
            if H[i, j] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != j + 1:
            for c in range(n):
                tmp = H[piv, c]
                H[piv, c] = H[j + 1, c]
                H[j + 1, c] = tmp
            for r in range(n):
                tmp = H[r, piv]
                H[r, piv] = H[r, j + 1]
                H[r, j + 1] = tmp
        inv = _modinv_loop(H[j + 1, j], p)
        for i in range(j + 2, n):
            u = (H[i, j] * inv) % p
            if u == 0:
                continue
            for c in range(n):
                H[i, c] = (H[i, c] - u * H[j + 1, c]) % p
            for r in range(n):
                H[r, j + 1] = (H[r, j + 1] + u * H[r, i]) % p
    # P[m] holds the characteristic polynomial of the leading m x m block,
    # coefficients low degree first.
    P = np.zeros((n + 1, n + 1), dtype=np.int64)
    P[0, 0] = 1
    for m in range(1, n + 1):
        h = H[m - 1, m - 1]
        for d in range(m):
            P[m, d + 1] = (P[m, d + 1] + P[m - 1, d]) % p
            P[m, d] = (P[m, d] - h * P[m - 1, d]) % p
        prod = 1
        for i in range(1, m):
            prod = (prod * H[m - i, m - i - 1]) % p
            f = (H[m - i - 1, m - 1] * prod) % p
            if f != 0:
                for d in range(m - i):
                    P[m, d] = (P[m, d] - f * P[m - i - 1, d]) % p
    return P[n].copy()


def _charpoly_mod_p_numpy(A, p):
    H = A.copy() % p
    n = H.shape[0]
    for j in range(n - 2):
        nz = np.nonzero(H[j + 1:, j])[0]
        if nz.size == 0:
            continue
        piv = j + 1 + nz[0]
        if piv != j + 1:
            H[[piv, j + 1]] = H[[j + 1, piv]]
            H[:, [piv, j + 1]] = H[:, [j + 1, piv]]
        inv = pow(int(H[j + 1, j]), -1, p)
        for i in range(j + 2, n):
            u = (H[i, j] * inv) % p
            if u:
                H[i] = (H[i] - u * H[j + 1]) % p
                H[:, j + 1] = (H[:, j + 1] + u * H[:, i]) % p
    P = np.zeros((n + 1, n + 1), dtype=np.int64)
    P[0, 0] = 1
    for m in range(1, n + 1):
        P[m, 1:m + 1] = P[m - 1, :m]
        P[m, :m] -= H[m - 1, m - 1] * P[m - 1, :m]
        P[m] %= p
        prod = 1
        for i in range(1, m):
            prod = (prod * H[m - i, m - i - 1]) % p
            f = (H[m - i - 1, m - 1] * prod) % p
            if f:
                P[m, :m - i] = (P[m, :m - i] - f * P[m - i - 1, :m - i]) % p
    return P[n].copy()


# ---------------------------------------------------------------------------
# exact cyclotomic inner products


def _gram_poly_loop(A, B, w, e):
    # out[a, b, t] = sum_c w[c] * sum_{j - l = t mod e} A[a, c, j] * B[b, c, l]
    ra, k, _ = A.shape
    rb = B.shape[0]
    ma = 1
    for a in range(ra):
        for c in range(k):
            cnt = 0
            for j in range(e):
                if A[a, c, j] != 0:
                    cnt += 1
            ma = max(ma, cnt)
    mb = 1
    for b in range(rb):
        for c in range(k):
            cnt = 0
            for j in range(e):
                if B[b, c, j] != 0:
                    cnt += 1
            mb = max(mb, cnt)
    ia = np.zeros((ra, k, ma), dtype=np.int64)
    va = np.zeros((ra, k, ma), dtype=np.int64)
    na = np.zeros((ra, k), dtype=np.int64)
    for a in range(ra):
        for c in range(k):
            for j in range(e):
                if A[a, c, j] != 0:
                    ia[a, c, na[a, c]] = j
                    va[a, c, na[a, c]] = A[a, c, j]
                    na[a, c] += 1
    ib = np.zeros((rb, k, mb), dtype=np.int64)
    vb = np.zeros((rb, k, mb), dtype=np.int64)
    nb = np.zeros((rb, k), dtype=np.int64)
    for b in range(rb):
        for c in range(k):
            for j in range(e):
                if B[b, c, j] != 0:
                    ib[b, c, nb[b, c]] = j
                    vb[b, c, nb[b, c]] = B[b, c, j]
                    nb[b, c] += 1
    out = np.zeros((ra, rb, e), dtype=np.int64)
    for a in range(ra):
        for b in range(rb):
            for c in range(k):
                wc = w[c]
                if wc == 0:
                    continue
                for s in range(na[a, c]):
                    j = ia[a, c, s]
                    x = va[a, c, s] * wc
                    for t in range(nb[b, c]):
                        out[a, b, (j - ib[b, c, t] + e) % e] += x * vb[b, c, t]
    return out


_FLOAT_EXACT = 2 ** 52


def _gram_poly_numpy(A, B, w, e):
    Aw = A * w[None, :, None]
    bound = int(np.abs(Aw).sum(axis=(1, 2)).max(initial=0)) * int(np.abs(B).max(initial=0))
    exact_in_float = bound < _FLOAT_EXACT
    if exact_in_float:
        Aw = Aw.astype(np.float64)
        Bf = B.astype(np.float64)
    else:
        Bf = B
    out = np.zeros((A.shape[0], B.shape[0], e), dtype=np.int64)
    for t in range(e):
        prod = np.tensordot(np.roll(Aw, -t, axis=2), Bf, axes=([1, 2], [1, 2]))
        out[:, :, t] = np.rint(prod).astype(np.int64) if exact_in_float else prod
    return out


# ---------------------------------------------------------------------------
# dispatch

_PAIRS = {
    "associativity_violation": (_associativity_violation_loop, _associativity_violation_numpy),
    "element_orders": (_element_orders_loop, _element_orders_numpy),
    "conjugacy_labels": (_conjugacy_labels_loop, _conjugacy_labels_numpy),
    "class_constants": (_class_constants_loop, _class_constants_numpy),
    "closure": (_closure_loop, _closure_numpy),
    "rref_mod_p": (_rref_mod_p_loop, _rref_mod_p_numpy),
    "charpoly_mod_p": (_charpoly_mod_p_loop, _charpoly_mod_p_numpy),
    "gram_poly": (_gram_poly_loop, _gram_poly_numpy),
}

_modinv_loop = njit(_modinv_loop)

#: name -> (compiled loop version, numpy version); both always importable.
KERNELS = {name: (njit(loop), vec) for name, (loop, vec) in _PAIRS.items()}

_active = {name: pair[0] if USE_NUMBA else pair[1] for name, pair in KERNELS.items()}

associativity_violation = _active["associativity_violation"]
element_orders = _active["element_orders"]
conjugacy_labels = _active["conjugacy_labels"]
class_constants = _active["class_constants"]
closure = _active["closure"]
rref_mod_p = _active["rref_mod_p"]
charpoly_mod_p = _active["charpoly_mod_p"]
gram_poly = _active["gram_poly"]
