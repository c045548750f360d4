"""Classical ingredients: transversal designs, Steiner triple systems, uniform GDDs."""
from __future__ import annotations

from itertools import combinations

from ..checks import checked
from ..design import Gdd, GroupType, consecutive_groups
from ..errors import Inadmissible, InadmissibleOrder
from ..trace import ConstructionTrace
from .mols import mols_ladder


def td(k: int, n: int) -> Gdd:
    """Transversal design TD(k, n) as a GDD(2, k, kn) of type n^k; point (i, x) -> i*n + x."""
    if k < 2 or n < 1:
        raise ValueError("TD(k, n) needs k >= 2 and n >= 1")
    mols, ladder = mols_ladder(n, k - 2)
    blocks = []
    for r in range(n):
        for col in range(n):
            blk = [r, n + col] + [(2 + j) * n + int(sq[r, col]) for j, sq in enumerate(mols.squares)]
            blocks.append(blk)
    trace = ConstructionTrace("transversal design from MOLS", {"k": k, "n": n, "mols": ladder})
    return checked(Gdd(2, k, consecutive_groups([n] * k), blocks, provenance=trace.to_dict()))


def _bose(n):
    q = n // 3
    half = (q + 1) // 2

    def pt(x, i):
        return x + q * i

    def op(x, y):  # idempotent commutative quasigroup of odd order q
        return (x + y) * half % q

    blocks = [[pt(x, 0), pt(x, 1), pt(x, 2)] for x in range(q)]
    for x, y in combinations(range(q), 2):
        for i in range(3):
            blocks.append([pt(x, i), pt(y, i), pt(op(x, y), (i + 1) % 3)])
    return blocks


def _skolem(n):
    m = (n - 1) // 6
    q = 2 * m
    inf = 3 * q

    def pt(x, i):
        return x + q * i

    def op(x, y):  # half-idempotent commutative quasigroup of order 2m
        s = (x + y) % q
        return s // 2 if s % 2 == 0 else m + s // 2

    blocks = [[pt(x, 0), pt(x, 1), pt(x, 2)] for x in range(m)]
    for x in range(m):
        for i in range(3):
            blocks.append([inf, pt(x + m, i), pt(x, (i + 1) % 3)])
    for x, y in combinations(range(q), 2):
        for i in range(3):
            blocks.append([pt(x, i), pt(y, i), pt(op(x, y), (i + 1) % 3)])
    return blocks


def sts(n: int) -> Gdd:
    """Steiner triple system of order n (Bose for n = 3 mod 6, Skolem for n = 1 mod 6)."""
    if n < 1 or n % 6 not in (1, 3):
        raise InadmissibleOrder(f"STS({n}) needs n = 1 or 3 mod 6")
    blocks = _bose(n) if n % 6 == 3 else _skolem(n)
    method = "Bose" if n % 6 == 3 else "Skolem"
    trace = ConstructionTrace(f"{method} Steiner triple system", {"n": n})
    return checked(Gdd(2, 3, [(x,) for x in range(n)], blocks, provenance=trace.to_dict()))


def weight_gdd(master: Gdd, g: int) -> Gdd:
    """Give every point weight g, replacing each block by a TD(k, g).

    Point (x, j) -> x*g + j; groups G x Z_g.
    """
    ingredient = td(master.k, g)
    ingredient_groups = ingredient.groups
    blocks = []
    for A in master.blocks:
        where = {}
        for x, grp in zip(A, ingredient_groups):
            for j, p in enumerate(grp):
                where[p] = x * g + j
        blocks.extend([where[p] for p in blk] for blk in ingredient.blocks)
    groups = [[x * g + j for x in G for j in range(g)] for G in master.groups]
    trace = ConstructionTrace(
        "uniform weighting", {"weight": g},
        children=[master.provenance or {}, ingredient.provenance],
        labels="(x, j) -> x*weight + j")
    return checked(Gdd(master.t, master.k, groups, blocks, provenance=trace.to_dict()))


def gdd_admissible(k: int, gtype: GroupType) -> tuple[bool, str]:
    """Existence criteria for uniform GDD(2, k, gn) of type g^n, k in {3, 4}."""
    if not gtype.is_uniform():
        return _generic_conditions(k, gtype)
    (g, n), = gtype.counts.items()
    if k == 3:
        ok = n >= 3 and (n - 1) * g % 2 == 0 and n * (n - 1) * g * g % 6 == 0
        return ok, "needs n >= 3, (n-1)g even and n(n-1)g^2 = 0 mod 6"
    if k == 4:
        ok = (n >= 4 and (n - 1) * g % 3 == 0 and n * (n - 1) * g * g % 12 == 0
              and (g, n) not in {(2, 4), (6, 4)})
        return ok, "needs n >= 4, (n-1)g = 0 mod 3, n(n-1)g^2 = 0 mod 12, (g,n) not (2,4),(6,4)"
    return _generic_conditions(k, gtype)


def _generic_conditions(k, gtype):
    v = gtype.total
    sizes = gtype.sizes
    if any((v - g) % (k - 1) for g in sizes):
        return False, "each point's cross-group degree must be divisible by k-1"
    pairs = (v * v - sum(g * g for g in sizes)) // 2
    if pairs % (k * (k - 1) // 2):
        return False, "cross-group pair count must be divisible by C(k,2)"
    if len(sizes) < k and pairs:
        return False, "fewer than k groups"
    return True, "necessary counting conditions"


def check_gdd_admissible(k: int, gtype: GroupType) -> None:
    ok, why = gdd_admissible(k, gtype)
    if not ok:
        raise Inadmissible(f"no GDD(2,{k},{gtype.total}) of type {gtype}: {why}")
