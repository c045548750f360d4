"""Seeded searches for ingredients nobody writes down explicitly.

* :func:`hill_climb_gdd` -- Stinson-style hill-climbing for GDD(2, 3, v) of a given type.
* :func:`search_cyclic_splitting_design` -- splitting designs over Z_v, by a
  multiplier-orbit depth-first search, a difference hill-climb (compiled kernel),
  or, for t >= 3, a randomized exact cover of all t-subsets.

Everything is deterministic for fixed (seed, budget).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Optional

import numpy as np

from .. import kernels
from ..admissibility import divisibility_ok, known_nonexistent
from ..checks import checked
from ..design import (BaseBlockSystem, Gdd, GroupType, SplittingDesign, consecutive_groups,
                      develop_base_blocks)
from ..errors import BudgetExhausted, Inadmissible, UnsupportedClass
from ..trace import ConstructionTrace
from .classical import check_gdd_admissible
from .fields import is_prime

DEFAULT_BUDGET = 10 ** 7
DEFAULT_RESTARTS = 32


@dataclass
class SearchOutcome:
    design: Optional[object] = None
    stats: dict = field(default_factory=dict)
    base: Optional[BaseBlockSystem] = None

    def __bool__(self):
        return self.design is not None


def _restart_rng(seed: int, restart: int) -> random.Random:
    return random.Random(seed * 1_000_003 + restart)


class _IndexedSet:
    """Set with O(1) add, discard and uniform random choice."""

    __slots__ = ("items", "pos")

    def __init__(self, items=()):
        self.items = list(items)
        self.pos = {x: i for i, x in enumerate(self.items)}

    def add(self, x):
        if x not in self.pos:
            self.pos[x] = len(self.items)
            self.items.append(x)

    def discard(self, x):
        i = self.pos.pop(x, None)
        if i is None:
            return
        last = self.items.pop()
        if i < len(self.items):
            self.items[i] = last
            self.pos[last] = i

    def __contains__(self, x):
        return x in self.pos

    def __len__(self):
        return len(self.items)

    def choice(self, rng):
        return self.items[rng.randrange(len(self.items))]


def _climb_once(group_of, target, rng, max_moves, patience):
    v = len(group_of)
    live = [_IndexedSet(y for y in range(v) if group_of[y] != group_of[x]) for x in range(v)]
    live_pts = _IndexedSet(x for x in range(v) if len(live[x]))
    third = {}
    nblocks = best = 0
    since = 0

    def cover(a, b, cc):
        third[a, b] = third[b, a] = cc
        live[a].discard(b)
        live[b].discard(a)
        for p in (a, b):
            if not len(live[p]):
                live_pts.discard(p)

    def uncover(a, b):
        del third[a, b], third[b, a]
        live[a].add(b)
        live[b].add(a)
        live_pts.add(a)
        live_pts.add(b)

    moves = 0
    while moves < max_moves:
        if nblocks == target:
            return third, moves
        moves += 1
        since += 1
        if since > patience:
            break
        x = live_pts.choice(rng)
        if len(live[x]) < 2:
            continue
        y = live[x].choice(rng)
        z = live[x].choice(rng)
        if y == z or group_of[y] == group_of[z]:
            continue
        if z in live[y]:
            nblocks += 1
        else:
            w = third[y, z]
            uncover(y, z)
            uncover(y, w)
            uncover(z, w)
        cover(x, y, z)
        cover(x, z, y)
        cover(y, z, x)
        if nblocks > best:
            best, since = nblocks, 0
    return None, moves


def hill_climb_gdd(t: int, k: int, gtype, seed: int = 0, budget: int = DEFAULT_BUDGET,
                   restarts: int = DEFAULT_RESTARTS) -> SearchOutcome:
    """Hill-climb a GDD(2, 3, v) with the given group type.

    Restart r uses its own RNG stream; a restart is abandoned after
    10 * (expected block count) moves without progress.  ``budget`` caps the total
    number of moves over all restarts.
    """
    if (t, k) != (2, 3):
        raise UnsupportedClass("hill-climbing is implemented for t=2, k=3 only")
    gtype = gtype if isinstance(gtype, GroupType) else GroupType.parse(str(gtype))
    check_gdd_admissible(k, gtype)
    groups = consecutive_groups(gtype.sizes)
    group_of = [gi for gi, G in enumerate(groups) for _ in G]
    v = len(group_of)
    target = (v * v - sum(len(G) ** 2 for G in groups)) // 6
    patience = 10 * max(target, 1)
    used = 0
    for r in range(restarts):
        if used >= budget:
            break
        rng = _restart_rng(seed, r)
        third, moves = _climb_once(group_of, target, rng, budget - used, patience)
        used += moves
        if third is not None:
            blocks = sorted({tuple(sorted((a, b, cc))) for (a, b), cc in third.items()})
            stats = {"restart": r, "moves": used, "seed": seed, "budget": budget}
            trace = ConstructionTrace("hill-climbed GDD", {"type": str(gtype), **stats})
            gdd = checked(Gdd(2, 3, groups, blocks, provenance=trace.to_dict()))
            return SearchOutcome(gdd, stats)
    return SearchOutcome(None, {"restarts": r + 1, "moves": used, "seed": seed,
                                "budget": budget, "target_blocks": target})


# -- exact cover ------------------------------------------------------------

def exact_cover(rows: list[tuple], node_budget: int) -> tuple[Optional[list[int]], int]:
    """Algorithm X over ``rows`` (each a tuple of column keys); every column covered once.

    Columns are branched on in order of fewest candidates, rows in list order.
    Returns (chosen row indices or None, nodes visited).
    """
    cols: dict = {}
    for i, r in enumerate(rows):
        for col in r:
            cols.setdefault(col, set()).add(i)
    solution: list[int] = []
    nodes = 0

    def select(i):
        removed = []
        for col in rows[i]:
            for j in cols[col]:
                for other in rows[j]:
                    if other != col:
                        cols[other].discard(j)
            removed.append(cols.pop(col))
        return removed

    def deselect(i, removed):
        for col in reversed(rows[i]):
            cols[col] = removed.pop()
            for j in cols[col]:
                for other in rows[j]:
                    if other != col:
                        cols[other].add(j)

    def solve():
        nonlocal nodes
        if not cols:
            return True
        if nodes >= node_budget:
            return False
        nodes += 1
        col = min(cols, key=lambda key: len(cols[key]))
        for i in sorted(cols[col]):
            solution.append(i)
            removed = select(i)
            if solve():
                return True
            deselect(i, removed)
            solution.pop()
        return False

    return (list(solution) if solve() else None), nodes


def _row_partitions(points, k, c):
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    for mates in combinations(rest, c - 1):
        row = (first,) + mates
        remaining = [p for p in rest if p not in mates]
        for tail in _row_partitions(remaining, k - 1, c):
            yield (row,) + tail


def _covered_subsets(block, t):
    out = []
    for rows in combinations(block, t):
        stack = [()]
        for row in rows:
            stack = [s + (x,) for s in stack for x in row]
        out.extend(tuple(sorted(s)) for s in stack)
    return tuple(out)


MAX_EXACT_COVER_CANDIDATES = 200_000


def _exact_cover_design(t, v, k, c, rng, budget):
    n_candidates = comb(v, k * c) * _partition_count(k, c)
    if n_candidates > MAX_EXACT_COVER_CANDIDATES:
        raise UnsupportedClass(f"{n_candidates} candidate blocks is too many for exact cover")
    cands = [blk for pts in combinations(range(v), k * c) for blk in _row_partitions(pts, k, c)]
    rng.shuffle(cands)
    chosen, nodes = exact_cover([_covered_subsets(b, t) for b in cands], budget)
    blocks = None if chosen is None else [cands[i] for i in chosen]
    return blocks, nodes


def _partition_count(k, c):
    n = 1
    for i in range(k):
        n *= comb((k - i) * c - 1, c - 1)
    return n


# -- cyclic t = 2 -----------------------------------------------------------

def _primitive_root(p):
    phi = p - 1
    factors = {f for f in range(2, phi + 1) if phi % f == 0 and is_prime(f)}
    return next(g for g in range(2, p) if all(pow(g, phi // f, p) != 1 for f in factors))


def _multiplier_dfs(v, k, c, nb, rng, budget):
    """One base block B with B, w B, ..., w^(nb-1) B as the base blocks, w of order 2nb.

    The cross-row differences of the family cover Z_v^* once iff the C(k,2)c^2
    unordered cross-row differences of B fall in distinct cosets of the order-2nb
    subgroup K (which contains -1).  B is normalised to have 0 in row 0 and 1 in row 1.
    """
    g = _primitive_root(v)
    ncos = (v - 1) // (2 * nb)
    log = {pow(g, e, v): e for e in range(v - 1)}
    coset = [-1] + [log[d] % ncos for d in range(1, v)]
    rows = [[0], [1]] + [[] for _ in range(k - 2)]
    slots = [r for r in range(k) for _ in range(c - len(rows[r]))]
    used = set()
    order = list(range(2, v))
    rng.shuffle(order)
    nodes = 0

    def place(si):
        nonlocal nodes
        if si == len(slots):
            return True
        if nodes >= budget:
            return False
        nodes += 1
        r = slots[si]
        placed = {p for R in rows for p in R}
        for x in order:
            if x in placed:
                continue
            if rows[r] and x < rows[r][-1]:
                continue
            if r >= 3 and not rows[r] and rows[r - 1] and x < rows[r - 1][0]:
                continue
            new = []
            ok = True
            for j, R in enumerate(rows):
                if j == r:
                    continue
                for y in R:
                    ci = coset[(x - y) % v]
                    if ci in used or ci in new:
                        ok = False
                        break
                    new.append(ci)
                if not ok:
                    break
            if not ok:
                continue
            rows[r].append(x)
            used.update(new)
            if place(si + 1):
                return True
            rows[r].pop()
            used.difference_update(new)
        return False

    # differences between the two fixed points
    used.add(coset[1])
    if not place(0):
        return None, nodes
    w = pow(g, (v - 1) // (2 * nb), v)
    base = [[[x * pow(w, i, v) % v for x in R] for R in rows] for i in range(nb)]
    return base, nodes


def _hill_climb_differences(v, k, c, nb, seed, budget, restarts):
    per = max(budget // restarts, 1)
    used = 0
    for r in range(restarts):
        P, moves = kernels.diff_hill_climb(v, k, c, nb, seed * 1_000_003 + r, per)
        used += moves
        if P is not None:
            base = [[[int(x) for x in row[i * c:(i + 1) * c]] for i in range(k)] for row in P]
            return base, used
    return None, used


STRATEGIES = ("auto", "multiplier", "hill-climb", "exact-cover")


def search_cyclic_splitting_design(t: int, v: int, k: int, c: int, seed: int = 0,
                                   budget: int = DEFAULT_BUDGET, lam: int = 1,
                                   strategy: str = "auto",
                                   restarts: int = DEFAULT_RESTARTS) -> SearchOutcome:
    """Search for a splitting t-(v, k x c, 1) design; raises BudgetExhausted on failure.

    On success ``outcome.base`` holds the base blocks (increment 1 for the cyclic
    strategies, increment v -- every block its own base block -- for exact cover)
    and ``outcome.design`` the verified development.
    """
    if lam != 1:
        raise UnsupportedClass("searches construct lambda = 1 only")
    if not (t <= k and k * c <= v):
        raise Inadmissible(f"need t <= k and kc <= v, got t={t} k={k} c={c} v={v}")
    div = divisibility_ok(t, v, k, c, lam)
    if not div:
        raise Inadmissible(f"divisibility fails at s={div.failing_s} for 2-({v},{k}x{c},1)"
                           if t == 2 else f"divisibility fails at s={div.failing_s}")
    reason = known_nonexistent(t, v, k, c, lam)
    if reason:
        raise Inadmissible(reason)
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy == "auto":
        if t == 2 and is_prime(v) and k >= 2:
            strategy = "multiplier"
        elif t == 2:
            strategy = "hill-climb"
        else:
            strategy = "exact-cover"

    nb = None
    if strategy in ("multiplier", "hill-climb"):
        if t != 2:
            raise UnsupportedClass(f"strategy {strategy} needs t = 2")
        per_block = c * c * k * (k - 1)
        if (v - 1) % per_block:
            raise UnsupportedClass(f"{per_block} does not divide v-1: no full-orbit base blocks")
        nb = (v - 1) // per_block
    if strategy == "multiplier" and not is_prime(v):
        raise UnsupportedClass("the multiplier search needs v prime")

    rng = _restart_rng(seed, 0)
    if strategy == "multiplier":
        base, work = _multiplier_dfs(v, k, c, nb, rng, budget)
        system = None if base is None else BaseBlockSystem(v, base, 1)
    elif strategy == "hill-climb":
        base, work = _hill_climb_differences(v, k, c, nb, seed, budget, restarts)
        system = None if base is None else BaseBlockSystem(v, base, 1)
    else:
        blocks, work = _exact_cover_design(t, v, k, c, rng, budget)
        system = None if blocks is None else BaseBlockSystem(v, blocks, v)
    stats = {"strategy": strategy, "seed": seed, "budget": budget, "work": work}
    if system is None:
        raise BudgetExhausted(f"no splitting {t}-({v},{k}x{c},1) design within budget {budget}",
                              stats)
    trace = ConstructionTrace("searched splitting design",
                              {"t": t, "v": v, "k": k, "c": c, **stats,
                               "base_blocks": [[list(r) for r in b] for b in system.blocks],
                               "increment": system.d})
    design = checked(SplittingDesign(t, v, k, c, develop_base_blocks(system),
                                     provenance=trace.to_dict()))
    return SearchOutcome(design, stats, system)
