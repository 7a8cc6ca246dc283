"""Compiled inner loops for the exhaustive criterion count and the modular
Ryser permanent."""

import numpy as np
from numba import njit


@njit(cache=True)
def count_criterion_shard(add, contrib, first):
    """Count permutations with sigma(0) == first whose weighted sum vanishes.

    ``contrib[c, s]`` is the field product c*s and ``add`` the addition table.
    Depth-first over positions 1..q-1 in lexicographic order of images,
    carrying the partial sum; the last position is forced.
    """
    q = add.shape[0]
    used = np.zeros(q, np.bool_)
    used[first] = True
    partial = np.zeros(q + 1, np.int64)
    partial[1] = contrib[0, first]
    nxt = np.zeros(q + 1, np.int64)
    assigned = np.full(q + 1, -1, np.int64)
    count = 0
    pos = 1
    while pos >= 1:
        if pos == q - 1:
            s = 0
            while used[s]:
                s += 1
            if add[partial[pos], contrib[pos, s]] == 0:
                count += 1
            pos -= 1
            continue
        if assigned[pos] >= 0:
            used[assigned[pos]] = False
            assigned[pos] = -1
        s = nxt[pos]
        while s < q and used[s]:
            s += 1
        if s == q:
            nxt[pos] = 0
            pos -= 1
            continue
        used[s] = True
        assigned[pos] = s
        nxt[pos] = s + 1
        partial[pos + 1] = add[partial[pos], contrib[pos, s]]
        pos += 1
    return count


@njit(cache=True)
def ryser_mod(vals, ell):
    """Ryser permanent of each ``vals[e]`` modulo ``ell`` (< 2**31).

    Columns are toggled in binary-reflected Gray code order, so each step
    costs one column update plus one row-sum product per matrix.
    """
    n_emb = vals.shape[0]
    n = vals.shape[1]
    rs = np.zeros((n_emb, n), np.int64)
    total = np.zeros(n_emb, np.int64)
    in_set = np.zeros(n, np.bool_)
    size = 0
    for k in range(1, 1 << n):
        j = 0
        t = k
        while (t & 1) == 0:
            t >>= 1
            j += 1
        if in_set[j]:
            in_set[j] = False
            size -= 1
            for e in range(n_emb):
                for i in range(n):
                    rs[e, i] = (rs[e, i] - vals[e, i, j]) % ell
        else:
            in_set[j] = True
            size += 1
            for e in range(n_emb):
                for i in range(n):
                    rs[e, i] = (rs[e, i] + vals[e, i, j]) % ell
        odd = (n - size) & 1
        for e in range(n_emb):
            prod = 1
            for i in range(n):
                prod = prod * rs[e, i] % ell
                if prod == 0:
                    break
            if odd:
                total[e] = (total[e] - prod) % ell
            else:
                total[e] = (total[e] + prod) % ell
    return total
