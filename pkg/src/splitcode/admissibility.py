"""Parameter-level tests: divisibility conditions, known nonexistence, counting identities."""
from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, NamedTuple, Optional


class Divisibility(NamedTuple):
    ok: bool
    failing_s: Optional[int] = None

    def __bool__(self):
        return self.ok


def divisibility_terms(t: int, v: int, k: int, c: int, lam: int = 1):
    """Yield ``(s, numerator, modulus)`` for s = 0..t."""
    for s in range(t + 1):
        yield s, lam * comb(v - s, t - s), c ** (t - s) * comb(k - s, t - s)


def divisibility_ok(t: int, v: int, k: int, c: int, lam: int = 1) -> Divisibility:
    for s, num, mod in divisibility_terms(t, v, k, c, lam):
        if num % mod:
            return Divisibility(False, s)
    return Divisibility(True)


def known_nonexistent(t: int, v: int, k: int, c: int, lam: int = 1) -> Optional[str]:
    """Reason string when a splitting 2-((k-1)c^2+1, k x c, 1) design is asked for."""
    if (t, lam) == (2, 1) and k >= 2 and c >= 2 and v == (k - 1) * c * c + 1:
        return (f"no splitting 2-({v},{k}x{c},1) design: it would partition K_{v} into "
                f"{v // k} complete {k}-partite graphs, fewer than the ceil((v-1)/(k-1)) = {c * c} "
                "required by Huang's bound")
    return None


def block_count(t: int, v: int, k: int, c: int, lam: int = 1) -> Fraction:
    """lambda * C(v,t) / (c^t C(k,t)): the block count of any splitting t-(v,k x c,lambda) design."""
    return Fraction(lam * comb(v, t), c ** t * comb(k, t))


def subsets_per_block(t: int, k: int, c: int) -> int:
    """t-subsets a k x c block covers with the points in t distinct rows."""
    return c ** t * comb(k, t)


def elementary_symmetric(values: Iterable[int], t: int) -> int:
    e = [1] + [0] * t
    for x in values:
        for j in range(t, 0, -1):
            e[j] += e[j - 1] * x
    return e[t]


def qualifying_count(t: int, v: int, groups=(), stem=(), candelabra: bool = False) -> int:
    """Number of t-subsets a design of the given kind must cover.

    Designs: every t-subset.  GDDs: transversal t-subsets.  Candelabra systems:
    t-subsets not contained in any ``stem | G_i``.
    """
    if candelabra:
        if not groups:
            return comb(v, t)
        s = len(stem)
        inside = sum(comb(s + len(g), t) for g in groups) - (len(groups) - 1) * comb(s, t)
        return comb(v, t) - inside
    if not groups:
        return comb(v, t)
    return elementary_symmetric((len(g) for g in groups), t)


def rank_subset(sorted_points: Iterable[int]) -> int:
    """Colexicographic rank of a sorted subset (combinatorial number system)."""
    return sum(comb(x, i + 1) for i, x in enumerate(sorted_points))


@lru_cache(maxsize=32)
def _comb_columns(v: int, t: int) -> tuple[list[int], ...]:
    return tuple([comb(x, i) for x in range(v)] for i in range(t + 1))


def unrank_subset(rank: int, t: int, v: Optional[int] = None) -> tuple[int, ...]:
    """Inverse of :func:`rank_subset`; pass ``v`` to use cached bisection tables."""
    out = []
    if v is not None:
        cols = _comb_columns(v, t)
        for i in range(t, 0, -1):
            x = bisect_right(cols[i], rank) - 1
            out.append(x)
            rank -= cols[i][x]
        return tuple(reversed(out))
    for i in range(t, 0, -1):
        x = i - 1
        while comb(x + 1, i) <= rank:
            x += 1
        out.append(x)
        rank -= comb(x, i)
    return tuple(reversed(out))
