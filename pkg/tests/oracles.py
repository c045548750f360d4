"""Brute-force reference implementations, written independently of the library.

They share no code with splitcode beyond plain Python: every count is obtained by
enumerating all subsets directly.
"""
from collections import Counter
from fractions import Fraction
from itertools import combinations, product
from math import comb


def rows_hold(block, subset):
    """True if the points of ``subset`` all appear in ``block`` in pairwise distinct rows."""
    where = {}
    for r, row in enumerate(block):
        for x in row:
            where[x] = r
    rows = [where.get(x) for x in subset]
    return None not in rows and len(set(rows)) == len(rows)


def coverage(blocks, v, t):
    return Counter(s for s in combinations(range(v), t) for b in blocks if rows_hold(b, s))


def is_splitting_design(blocks, v, t, lam=1):
    for b in blocks:
        pts = [x for r in b for x in r]
        if len(pts) != len(set(pts)) or any(not 0 <= x < v for x in pts):
            return False
    cnt = coverage(blocks, v, t)
    return all(cnt[s] == lam for s in combinations(range(v), t))


def qualifies(subset, groups, stem, candelabra):
    if not groups:
        return True
    gof = {x: i for i, G in enumerate(groups) for x in G}
    if candelabra:
        nonstem = {gof[x] for x in subset if x not in stem}
        return len(nonstem) > 1
    return len({gof[x] for x in subset}) == len(subset)


def is_valid(blocks, v, t, groups=(), stem=(), candelabra=False, lam=1):
    """Every qualifying t-subset lam times, every other t-subset never."""
    for b in blocks:
        pts = [x for r in b for x in r]
        if len(pts) != len(set(pts)) or any(not 0 <= x < v for x in pts):
            return False
    cnt = coverage(blocks, v, t)
    for s in combinations(range(v), t):
        want = lam if qualifies(s, groups, set(stem), candelabra) else 0
        if cnt[s] != want:
            return False
    return True


def pair_partition_ok(blocks, v):
    """The cross-row pairs of all blocks partition the edges of K_v."""
    edges = Counter()
    for b in blocks:
        for r1, r2 in combinations(b, 2):
            for x, y in product(r1, r2):
                edges[frozenset((x, y))] += 1
    return len(edges) == comb(v, 2) and set(edges.values()) == {1}


def deception(rules, v, i):
    """P_di by explicit Bayes: for each observation, the posterior mass of each candidate message.

    ``rules`` are lists of per-source message tuples.  The opponent wins with m'
    when m' encodes, under the active rule, a source not among the observed ones.
    """
    k = len(rules[0])
    c = len(rules[0][0])
    joint = {}  # observation -> list of (probability, rule, observed sources)
    for rule in rules:
        for srcs in combinations(range(k), i):
            for msgs in product(*(rule[s] for s in srcs)):
                p = Fraction(1, len(rules)) / comb(k, i) / Fraction(c) ** i
                joint.setdefault(frozenset(msgs), []).append((p, rule, srcs))
    total = Fraction(0)
    for obs, entries in joint.items():
        best = Fraction(0)
        for m in range(v):
            if m in obs:
                continue
            win = sum(p for p, rule, srcs in entries
                      if any(m in rule[s] for s in range(k) if s not in srcs))
            best = max(best, win)
        total += best
    return total
