# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels. Same signatures and results as ``splitcode._pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t
from math import comb

cnp.import_array()

cdef enum:
    MAXT = 16


def _binom_table(int v, int t):
    tab = np.zeros((t, v), dtype=np.int64)
    for i in range(t):
        for x in range(v):
            tab[i, x] = comb(x, i + 1)
    return tab


cdef inline bint _qualifies(int64_t* pts, int t, const int64_t[::1] grp,
                            int ngroups, bint candelabra) noexcept nogil:
    cdef int i, j, distinct = 0
    cdef int64_t g, first = -1
    if not candelabra:
        for i in range(t):
            for j in range(i):
                if grp[pts[i]] == grp[pts[j]]:
                    return False
        return True
    if ngroups == 0:
        return True
    for i in range(t):
        g = grp[pts[i]]
        if g < 0:
            continue
        if first < 0:
            first = g
        elif g != first:
            return True
    return False


def coverage_counts(blocks, int v, int t, group_of=None, int ngroups=0, bint candelabra=False):
    cdef const int64_t[:, :, ::1] B = np.ascontiguousarray(blocks, dtype=np.int64)
    cdef int nb = B.shape[0], k = B.shape[1], c = B.shape[2]
    if t > MAXT or t > k:
        raise ValueError("t out of range for compiled kernel")
    counts_arr = np.zeros(comb(v, t), dtype=np.int64)
    cdef int64_t[::1] counts = counts_arr
    cdef const int64_t[:, ::1] tab = _binom_table(v, t)
    cdef bint check = group_of is not None
    grp_arr = np.ascontiguousarray(group_of if check else np.zeros(1), dtype=np.int64)
    cdef const int64_t[::1] grp = grp_arr
    cdef int rowsel[MAXT]
    cdef int colsel[MAXT]
    cdef int64_t pts[MAXT]
    cdef int b, i, j, pos
    cdef int64_t x, r
    cdef long long bad_hits = 0
    cdef long long bad_block = -1, bad_rank = -1
    with nogil:
        for b in range(nb):
            for i in range(t):
                rowsel[i] = i
            while True:
                for i in range(t):
                    colsel[i] = 0
                while True:
                    for i in range(t):
                        pts[i] = B[b, rowsel[i], colsel[i]]
                    # insertion sort, t is tiny
                    for i in range(1, t):
                        x = pts[i]
                        j = i - 1
                        while j >= 0 and pts[j] > x:
                            pts[j + 1] = pts[j]
                            j -= 1
                        pts[j + 1] = x
                    r = 0
                    for i in range(t):
                        r += tab[i, pts[i]]
                    counts[r] += 1
                    if check and not _qualifies(pts, t, grp, ngroups, candelabra):
                        bad_hits += 1
                        if bad_block < 0:
                            bad_block = b
                            bad_rank = r
                    # next column tuple
                    pos = t - 1
                    while pos >= 0:
                        colsel[pos] += 1
                        if colsel[pos] < c:
                            break
                        colsel[pos] = 0
                        pos -= 1
                    if pos < 0:
                        break
                # next row combination
                pos = t - 1
                while pos >= 0 and rowsel[pos] == k - t + pos:
                    pos -= 1
                if pos < 0:
                    break
                rowsel[pos] += 1
                for i in range(pos + 1, t):
                    rowsel[i] = rowsel[i - 1] + 1
    return counts_arr, int(bad_hits), int(bad_block), int(bad_rank)


cdef inline uint64_t _xorshift(uint64_t s) noexcept nogil:
    s ^= s << 13
    s ^= s >> 7
    s ^= s << 17
    return s


def seed_state(seed):
    cdef uint64_t s = (<uint64_t>seed) * 2654435761ULL + 88172645463325252ULL
    return s if s else 1


def diff_hill_climb(int v, int k, int c, int nb, seed, long long budget):
    cdef int n = k * c
    arr = np.zeros((nb, n), dtype=np.int64)
    cdef int64_t[:, ::1] P = arr
    cnt_arr = np.zeros(v, dtype=np.int64)
    cdef int64_t[::1] cnt = cnt_arr
    cdef uint64_t s = seed_state(seed)
    cdef int b, i, j, pos, ok
    cdef int64_t x, y, d, old, new, delta, cost = 0
    cdef long long it, used = budget
    cdef bint found = False
    with nogil:
        for b in range(nb):
            i = 0
            while i < n:
                s = _xorshift(s)
                x = <int64_t>(s % <uint64_t>v)
                ok = 1
                for j in range(i):
                    if P[b, j] == x:
                        ok = 0
                if ok:
                    P[b, i] = x
                    i += 1
        for b in range(nb):
            for i in range(n):
                for j in range(n):
                    if i // c != j // c:
                        cnt[(P[b, i] - P[b, j] + v) % v] += 1
        for d in range(1, v):
            if cnt[d] > 1:
                cost += cnt[d] - 1
        for it in range(budget):
            if cost == 0:
                used = it
                found = True
                break
            s = _xorshift(s)
            b = <int>(s % <uint64_t>nb)
            s = _xorshift(s)
            pos = <int>(s % <uint64_t>n)
            s = _xorshift(s)
            new = <int64_t>(s % <uint64_t>v)
            old = P[b, pos]
            ok = 1
            for j in range(n):
                if P[b, j] == new:
                    ok = 0
            if not ok:
                continue
            delta = 0
            for j in range(n):
                if j // c != pos // c:
                    y = P[b, j]
                    d = (old - y + v) % v
                    cnt[d] -= 1
                    if cnt[d] >= 1:
                        delta -= 1
                    d = (y - old + v) % v
                    cnt[d] -= 1
                    if cnt[d] >= 1:
                        delta -= 1
            for j in range(n):
                if j // c != pos // c:
                    y = P[b, j]
                    d = (new - y + v) % v
                    if cnt[d] >= 1:
                        delta += 1
                    cnt[d] += 1
                    d = (y - new + v) % v
                    if cnt[d] >= 1:
                        delta += 1
                    cnt[d] += 1
            if delta <= 0:
                P[b, pos] = new
                cost += delta
            else:
                for j in range(n):
                    if j // c != pos // c:
                        y = P[b, j]
                        cnt[(new - y + v) % v] -= 1
                        cnt[(y - new + v) % v] -= 1
                        cnt[(old - y + v) % v] += 1
                        cnt[(y - old + v) % v] += 1
        if not found and cost == 0:
            found = True
    if found:
        return arr, int(used)
    return None, int(budget)
