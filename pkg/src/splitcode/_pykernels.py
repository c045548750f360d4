"""Pure-Python kernels; the reference behaviour for ``_ckernels.pyx``.

Both modules expose the same functions with identical results (the search
kernel uses the same xorshift64 stream), so the backend never changes output.
"""
from __future__ import annotations

from itertools import combinations, product
from math import comb

import numpy as np

MASK64 = (1 << 64) - 1


def _binom_table(v, t):
    return [[comb(x, i + 1) for x in range(v)] for i in range(t)]


def coverage_counts(blocks, v, t, group_of=None, ngroups=0, candelabra=False):
    """Tally how often each t-subset occurs in t distinct rows of some block.

    ``blocks`` is an int array of shape (b, k, c).  Returns
    ``(counts, nonqualifying_hits, first_bad_block, first_bad_rank)`` where counts
    is indexed by colex rank and the "bad" fields locate the first covered subset
    that the kind's definition excludes (-1 when none).
    """
    blocks = np.asarray(blocks, dtype=np.int64)
    counts = [0] * comb(v, t)
    table = _binom_table(v, t)
    grp = None if group_of is None else [int(g) for g in np.asarray(group_of)]
    bad_hits, bad_block, bad_rank = 0, -1, -1
    for bi, blk in enumerate(blocks.tolist()):
        for rows in combinations(blk, t):
            for pts in product(*rows):
                pts = sorted(pts)
                r = 0
                for i, x in enumerate(pts):
                    r += table[i][x]
                counts[r] += 1
                if grp is not None and not _qualifies(pts, grp, ngroups, candelabra):
                    bad_hits += 1
                    if bad_block < 0:
                        bad_block, bad_rank = bi, r
    return np.array(counts, dtype=np.int64), bad_hits, bad_block, bad_rank


def _qualifies(pts, grp, ngroups, candelabra):
    gs = [grp[x] for x in pts]
    if not candelabra:
        return len(set(gs)) == len(gs)
    if ngroups == 0:
        return True
    return len({g for g in gs if g >= 0}) >= 2


def _xorshift(s):
    s ^= (s << 13) & MASK64
    s ^= s >> 7
    s ^= (s << 17) & MASK64
    return s


def seed_state(seed):
    s = (seed * 2654435761 + 88172645463325252) & MASK64
    return s or 1


def diff_hill_climb(v, k, c, nb, seed, budget):
    """Local search for nb base blocks over Z_v whose cross-row differences cover Z_v^* once.

    Moves replace one entry of one base block by a random residue and are kept
    when the number of repeated differences does not grow.  Returns
    ``(base, moves)`` with ``base`` an (nb, k*c) array, or ``(None, budget)``.
    """
    n = k * c
    s = seed_state(seed)
    P = [[0] * n for _ in range(nb)]
    for b in range(nb):
        i = 0
        while i < n:
            s = _xorshift(s)
            x = s % v
            if x not in P[b][:i]:
                P[b][i] = x
                i += 1
    cnt = [0] * v
    for b in range(nb):
        for i in range(n):
            for j in range(n):
                if i // c != j // c:
                    cnt[(P[b][i] - P[b][j]) % v] += 1
    cost = sum(x - 1 for x in cnt[1:] if x > 1)
    for it in range(budget):
        if cost == 0:
            return np.array(P, dtype=np.int64), it
        s = _xorshift(s)
        b = s % nb
        s = _xorshift(s)
        pos = s % n
        s = _xorshift(s)
        new = s % v
        row = P[b]
        old = row[pos]
        if new in row:
            continue
        others = [row[j] for j in range(n) if j // c != pos // c]
        delta = 0
        for y in others:
            for d in ((old - y) % v, (y - old) % v):
                cnt[d] -= 1
                if cnt[d] >= 1:
                    delta -= 1
        for y in others:
            for d in ((new - y) % v, (y - new) % v):
                if cnt[d] >= 1:
                    delta += 1
                cnt[d] += 1
        if delta <= 0:
            row[pos] = new
            cost += delta
        else:
            for y in others:
                cnt[(new - y) % v] -= 1
                cnt[(y - new) % v] -= 1
                cnt[(old - y) % v] += 1
                cnt[(y - old) % v] += 1
    if cost == 0:
        return np.array(P, dtype=np.int64), budget
    return None, budget
