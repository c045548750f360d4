"""Exhaustive verifiers for every design kind.

A single pass over the blocks tallies, for each t-subset (indexed by colex
rank), the number of blocks holding it in t distinct rows.  The tally is then
compared against the kind's definition: qualifying subsets exactly ``lam``
times, excluded subsets never.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Optional

import numpy as np

from . import kernels
from .admissibility import qualifying_count, unrank_subset
from .design import SplittingDesign, _BlockDesign
from .errors import MalformedPartition


@dataclass(frozen=True)
class VerifyReport:
    valid: bool
    witness: Optional[dict] = None
    qualifying: int = 0
    covered: int = 0
    num_blocks: int = 0
    stats: dict = field(default_factory=dict, compare=False)

    def __bool__(self):
        return self.valid

    def describe(self) -> str:
        if self.valid:
            return (f"valid: {self.num_blocks} blocks, {self.qualifying} qualifying subsets "
                    f"each covered as required")
        w = self.witness
        kind = w["type"]
        if kind == "malformed_block":
            return f"invalid: block {w['block']} is malformed ({w['reason']})"
        if kind == "block_meets_group":
            return f"invalid: block {w['block']} meets group {w['group']} more than once"
        return f"invalid: {kind.replace('_', ' ')} subset {w['subset']} (count {w['count']})"


def _group_index(d: _BlockDesign) -> np.ndarray:
    """Per-point group id (-1 for stem points); raises MalformedPartition."""
    v = d.v
    gid = np.full(v, -2, dtype=np.int64)
    parts = [(-1, d.stem)] + list(enumerate(d.groups))
    for g, part in parts:
        if g >= 0 and not part:
            raise MalformedPartition(f"group {g} is empty")
        for x in part:
            if not 0 <= x < v:
                raise MalformedPartition(f"point {x} outside 0..{v - 1}")
            if gid[x] != -2:
                raise MalformedPartition(f"point {x} lies in two parts")
            gid[x] = g
    missing = np.flatnonzero(gid == -2)
    if len(missing):
        raise MalformedPartition(f"point {int(missing[0])} is in no group")
    return gid


def _malformed(d: _BlockDesign, blocks) -> Optional[dict]:
    k, c, v = d.k, d.c, d.v
    for i, blk in enumerate(blocks):
        if len(blk) != k or any(len(r) != c for r in blk):
            return {"type": "malformed_block", "block": i, "reason": f"shape is not {k}x{c}"}
        flat = [x for r in blk for x in r]
        if any(not 0 <= x < v for x in flat):
            return {"type": "malformed_block", "block": i, "reason": "label out of range"}
        if len(set(flat)) != len(flat):
            return {"type": "malformed_block", "block": i, "reason": "repeated point"}
    return None


def _count(arr, v, t, gid, ngroups, candelabra, threads):
    if threads <= 1 or len(arr) < 2 * threads:
        return kernels.coverage_counts(arr, v, t, gid, ngroups, candelabra)
    chunks = np.array_split(arr, threads)
    offsets = np.cumsum([0] + [len(ch) for ch in chunks[:-1]])
    with ThreadPoolExecutor(threads) as pool:
        parts = list(pool.map(
            lambda ch: kernels.coverage_counts(ch, v, t, gid, ngroups, candelabra), chunks))
    counts = parts[0][0].copy()
    for p in parts[1:]:
        counts += p[0]
    hits = sum(p[1] for p in parts)
    first = next(((int(off) + p[2], p[3]) for off, p in zip(offsets, parts) if p[2] >= 0), (-1, -1))
    return counts, hits, first[0], first[1]


def _qualifies(subset, gid, ngroups, candelabra) -> bool:
    gs = [int(gid[x]) for x in subset]
    if not candelabra:
        return len(set(gs)) == len(gs)
    if ngroups == 0:
        return True
    return len({g for g in gs if g >= 0}) >= 2


def _verify(d: _BlockDesign, candelabra: bool, threads: int = 1) -> VerifyReport:
    t, v, lam = d.t, d.v, d.lam
    if not 1 <= t <= d.k:
        raise ValueError(f"t={t} must satisfy 1 <= t <= k={d.k}")
    if d.kind == "splitting_design" and d.k * d.c > v:
        raise ValueError(f"block of {d.k}x{d.c} points does not fit in {v} points")
    has_parts = bool(d.groups) or bool(d.stem) or d.kind != "splitting_design"
    gid = _group_index(d) if has_parts else None
    ngroups = len(d.groups)
    blocks = d.split_blocks()
    Q = qualifying_count(t, v, d.groups, d.stem, candelabra) if has_parts else comb(v, t)
    base = dict(qualifying=Q, num_blocks=len(blocks))

    bad = _malformed(d, blocks)
    if bad:
        return VerifyReport(False, bad, **base)
    if d.kind == "gdd":
        for i, blk in enumerate(d.blocks):
            gs = [int(gid[x]) for x in blk]
            if len(set(gs)) != len(gs):
                g = next(g for g in gs if gs.count(g) > 1)
                return VerifyReport(False, {"type": "block_meets_group", "block": i, "group": g},
                                    **base)

    arr = np.array(blocks, dtype=np.int64).reshape(len(blocks), d.k, d.c)
    if len(blocks) == 0:
        counts, hits, bad_block, bad_rank = np.zeros(comb(v, t), dtype=np.int64), 0, -1, -1
    else:
        counts, hits, bad_block, bad_rank = _count(arr, v, t, gid, ngroups, candelabra, threads)
    covered = int(counts.sum()) - hits
    base["covered"] = covered

    over = np.flatnonzero(counts > lam)
    if len(over):
        r = int(over[0])
        return VerifyReport(False, {"type": "over_covered", "subset": list(unrank_subset(r, t, v)),
                                    "count": int(counts[r])}, **base)
    if hits:
        return VerifyReport(False, {"type": "excluded_covered",
                                    "subset": list(unrank_subset(bad_rank, t, v)),
                                    "count": int(counts[bad_rank]), "block": bad_block}, **base)
    if covered == lam * Q:
        return VerifyReport(True, None, **base)
    for r in np.flatnonzero(counts < lam):
        sub = unrank_subset(int(r), t, v)
        if gid is None or _qualifies(sub, gid, ngroups, candelabra):
            return VerifyReport(False, {"type": "under_covered", "subset": list(sub),
                                        "count": int(counts[r])}, **base)
    raise AssertionError("coverage total disagrees with per-subset tally")  # unreachable


def verify_splitting_design(d, threads: int = 1) -> VerifyReport:
    return _verify(d, candelabra=False, threads=threads)


def verify_gdd(g, threads: int = 1) -> VerifyReport:
    return _verify(g, candelabra=False, threads=threads)


def verify_splitting_gdd(g, threads: int = 1) -> VerifyReport:
    return _verify(g, candelabra=False, threads=threads)


def verify_candelabra(cs, threads: int = 1) -> VerifyReport:
    return _verify(cs, candelabra=True, threads=threads)


def verify_splitting_candelabra(scs, threads: int = 1) -> VerifyReport:
    return _verify(scs, candelabra=True, threads=threads)


_DISPATCH = {
    "splitting_design": verify_splitting_design,
    "gdd": verify_gdd,
    "splitting_gdd": verify_splitting_gdd,
    "candelabra": verify_candelabra,
    "splitting_candelabra": verify_splitting_candelabra,
}


def verify(design, threads: int = 1) -> VerifyReport:
    """Dispatch on ``design.kind``."""
    return _DISPATCH[design.kind](design, threads=threads)


def verify_edge_partition(d: SplittingDesign) -> VerifyReport:
    """Check that the blocks, read as complete k-partite graphs, partition the edges of K_v.

    Independent of the subset tally above: it fills a v x v adjacency count.
    """
    if d.t != 2 or d.lam != 1:
        raise ValueError("edge-partition check needs t=2 and lambda=1")
    v = d.v
    base = dict(qualifying=comb(v, 2), num_blocks=len(d.blocks))
    bad = _malformed(d, d.split_blocks())
    if bad:
        return VerifyReport(False, bad, **base)
    M = np.zeros((v, v), dtype=np.int32)
    for blk in d.blocks:
        for i in range(len(blk)):
            for j in range(i + 1, len(blk)):
                M[np.ix_(blk[i], blk[j])] += 1
    M = M + M.T
    iu = np.triu_indices(v, 1)
    edges = M[iu]
    base["covered"] = int(edges.sum())
    wrong = np.flatnonzero(edges > 1)
    if not len(wrong):
        wrong = np.flatnonzero(edges != 1)
    if len(wrong):
        w = int(wrong[0])
        x, y = int(iu[0][w]), int(iu[1][w])
        kind = "over_covered" if edges[w] > 1 else "under_covered"
        return VerifyReport(False, {"type": kind, "subset": [x, y], "count": int(edges[w])}, **base)
    return VerifyReport(True, None, **base)
