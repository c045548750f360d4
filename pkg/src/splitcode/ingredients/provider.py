"""Requests for ingredients and the ladders that satisfy them."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..design import GroupType
from ..errors import AdmissibleButNotFound, Inadmissible
from .cache import IngredientCache, ingredient_key
from .classical import check_gdd_admissible, sts, td, weight_gdd
from .search import DEFAULT_BUDGET, DEFAULT_RESTARTS, hill_climb_gdd, search_cyclic_splitting_design

KINDS = ("gdd", "splitting_gdd", "td", "sts", "splitting_design", "splitting_candelabra")


@dataclass(frozen=True)
class IngredientRequest:
    kind: str
    t: int = 2
    k: int = 3
    c: int = 1
    lam: int = 1
    gtype: str = ""
    stem: int = 0
    v: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown ingredient kind {self.kind!r}")
        if self.gtype:
            object.__setattr__(self, "gtype", str(GroupType.parse(self.gtype)))
            if not self.v:
                object.__setattr__(self, "v", GroupType.parse(self.gtype).total + self.stem)

    @classmethod
    def gdd(cls, k: int, gtype, t: int = 2) -> "IngredientRequest":
        return cls("gdd", t=t, k=k, gtype=str(gtype))

    @classmethod
    def splitting_design(cls, t: int, v: int, k: int, c: int, lam: int = 1) -> "IngredientRequest":
        return cls("splitting_design", t=t, k=k, c=c, lam=lam, v=v)

    @property
    def group_type(self) -> GroupType:
        return GroupType.parse(self.gtype)

    def key(self) -> str:
        return ingredient_key(self.kind, self.t, self.v, self.k, self.c, self.lam,
                              self.gtype, self.stem)


def gdd_provider(req: IngredientRequest, cache: Optional[IngredientCache] = None,
                 seed: int = 0, budget: int = DEFAULT_BUDGET,
                 restarts: int = DEFAULT_RESTARTS):
    """GDD(2, k, v) of uniform type g^n.

    Ladder: (a) n = k gives td(k, g); (b) k = 3 and n = 1, 3 mod 6 gives STS(n)
    weighted by g; (c) cache; (d) hill-climbing, whose result is cached.
    """
    if req.kind != "gdd" or req.t != 2:
        raise ValueError("gdd_provider serves classical GDD(2, k, v) requests")
    gtype = req.group_type
    if not gtype.is_uniform():
        raise Inadmissible("only uniform group types are supported")
    check_gdd_admissible(req.k, gtype)
    (g, n), = gtype.counts.items()
    if n == req.k:
        return td(req.k, g)
    if req.k == 3 and n % 6 in (1, 3):
        return weight_gdd(sts(n), g)
    key = req.key()
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return hit
    outcome = hill_climb_gdd(2, req.k, gtype, seed=seed, budget=budget, restarts=restarts)
    if not outcome:
        raise AdmissibleButNotFound(f"no GDD of type {gtype} found within budget {budget} "
                                    f"(seed {seed}; {outcome.stats})")
    if cache is not None:
        cache.put(key, outcome.design)
    return outcome.design


def splitting_design_provider(req: IngredientRequest, cache: Optional[IngredientCache] = None,
                              seed: int = 0, budget: int = DEFAULT_BUDGET):
    """Splitting design by cache, shipped fixture, then seeded search (cached on success)."""
    if req.kind != "splitting_design":
        raise ValueError("splitting_design_provider serves splitting_design requests")
    key = req.key()
    cache = cache if cache is not None else IngredientCache()
    hit = cache.get(key)
    if hit is not None:
        return hit
    outcome = search_cyclic_splitting_design(req.t, req.v, req.k, req.c, seed=seed,
                                             budget=budget, lam=req.lam)
    cache.put(key, outcome.design)
    return outcome.design
