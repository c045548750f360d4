"""Explicit objects, recursive constructions, and the three family builders.

Every builder returns a verified design.  Relabelings are explicit: each
construction records in its ConstructionTrace how ingredient labels map into
the output point set.
"""
from __future__ import annotations

from itertools import combinations, product
from math import comb
from typing import Callable, Mapping, Optional, Union

from .checks import checked
from .design import (BaseBlockSystem, CandelabraSystem, Gdd, SplittingCandelabra, SplittingDesign,
                     SplittingGdd, consecutive_groups, develop_base_blocks)
from .errors import (EmptyStem, IngredientShapeMismatch, MissingFiller, NotAdmissible,
                     StemTooLarge)
from .ingredients.cache import IngredientCache
from .ingredients.provider import IngredientRequest, gdd_provider, splitting_design_provider
from .ingredients.search import DEFAULT_BUDGET
from .trace import ConstructionTrace, provenance_of

# -- explicit objects --------------------------------------------------------

EXAMPLE_151_BASE = ((0, 1, 2, 3, 4), (5, 13, 59, 105, 118), (28, 67, 73, 112, 134))

LEMMA_CS_BASE = (
    ((0, 4), (6, 9), (7, 11)),
    ((0, 14), (1, 4), (11, 13)),
    ((0, 5), (8, 10), (13, 15)),
    ((0, 2), (4, 1), (7, 15)),
    ((0, 13), (1, 15), (2, 12)),
    ((0, 13), (1, 9), (4, 6)),
    ((0, 6), (9, 7), (14, 15)),
)


def trivial_splitting_gdd(t: int, k: int, c: int) -> SplittingGdd:
    """One block whose rows are the k groups of size c."""
    if t > k:
        raise ValueError("need t <= k")
    groups = consecutive_groups([c] * k)
    trace = ConstructionTrace("trivial splitting GDD", {"t": t, "k": k, "c": c})
    return checked(SplittingGdd(t, k, c, groups, [groups], provenance=trace.to_dict()))


def complete_transversal_gdd(k: int, g: int) -> Gdd:
    """GDD(k, k, kg) of type g^k whose blocks are all g^k transversals."""
    groups = consecutive_groups([g] * k)
    trace = ConstructionTrace("complete transversal GDD", {"k": k, "g": g})
    return checked(Gdd(k, k, groups, list(product(*groups)), provenance=trace.to_dict()))


def candelabra_1m1(m: int) -> CandelabraSystem:
    """(3,3)-CS(1^m : 1): points 0..m-1 as singleton groups, stem {m}, all triples."""
    if m < 2:
        raise ValueError("need m >= 2")
    trace = ConstructionTrace("all triples as a candelabra system", {"m": m})
    return checked(CandelabraSystem(3, 3, [m], [(x,) for x in range(m)],
                                    combinations(range(m + 1), 3), provenance=trace.to_dict()))


def example_151() -> BaseBlockSystem:
    return BaseBlockSystem(151, (EXAMPLE_151_BASE,), 1)


def example_151_design() -> SplittingDesign:
    """Development of the 3 x 5 base block over Z_151."""
    trace = ConstructionTrace("developed base block", {"v": 151, "increment": 1,
                                                       "base_blocks": [list(map(list, EXAMPLE_151_BASE))]})
    return checked(SplittingDesign(2, 151, 3, 5, develop_base_blocks(example_151()),
                                   provenance=trace.to_dict()))


def _lemma_blocks():
    return develop_base_blocks(BaseBlockSystem(16, LEMMA_CS_BASE, 2))


_LEMMA_GROUPS = (tuple(range(0, 16, 2)), tuple(range(1, 16, 2)))


def lemma_cs_8_2_0() -> SplittingCandelabra:
    """Splitting (3, 3x2)-CS(8^2 : 0): seven base blocks developed by +2 mod 16."""
    trace = ConstructionTrace("developed base blocks", {"v": 16, "increment": 2,
                                                        "base_blocks": [list(map(list, b)) for b in LEMMA_CS_BASE]})
    return checked(SplittingCandelabra(3, 3, 2, (), _LEMMA_GROUPS, _lemma_blocks(),
                                       provenance=trace.to_dict()))


def lemma_cs_8_2_2() -> SplittingCandelabra:
    """Splitting (3, 3x2)-CS(8^2 : 2): stem {16, 17} plus 16 stem blocks."""
    x, y = 16, 17
    stem_blocks = [((x, y), (2 * i, 2 * i + 2), (2 * j + 1, 2 * j + 3))
                   for i in (0, 2, 4, 6) for j in (0, 2, 4, 6)]
    trace = ConstructionTrace("developed base blocks with stem blocks",
                              {"v": 16, "increment": 2, "stem": [x, y],
                               "base_blocks": [list(map(list, b)) for b in LEMMA_CS_BASE]})
    return checked(SplittingCandelabra(3, 3, 2, (x, y), _LEMMA_GROUPS,
                                       _lemma_blocks() + stem_blocks, provenance=trace.to_dict()))


# -- recursive constructions -----------------------------------------------

def _relabel(blocks, mapping):
    return [tuple(tuple(mapping[p] for p in row) for row in b) for b in blocks]


def _group_map(ingredient, targets, c):
    """Map the i-th ingredient group (in canonical order) onto target point x_i: j-th point -> x_i*c + j."""
    return {p: x * c + j for G, x in zip(ingredient.groups, targets) for j, p in enumerate(G)}


def fundamental_construction(master: Gdd, ingredient_supplier: Callable, c: int) -> SplittingGdd:
    """Splitting GDD on X x Z_c, point (x, j) -> x*c + j, groups G x Z_c.

    ``ingredient_supplier(A)`` returns a splitting GDD(t, k' x c, kc) of type c^k
    for the master block A; its groups, in canonical order, are laid onto the
    points of A in increasing order.
    """
    blocks, kprime, children = [], None, []
    for A in master.blocks:
        ing = ingredient_supplier(A)
        sizes = sorted(len(G) for G in ing.groups)
        if (ing.kind != "splitting_gdd" or ing.t != master.t or ing.c != c
                or sizes != [c] * len(A) or (kprime is not None and ing.k != kprime)):
            raise IngredientShapeMismatch(
                f"block {A}: need a splitting GDD({master.t}, k' x {c}) of type {c}^{len(A)}, "
                f"got {ing.kind} t={ing.t} c={ing.c} type {ing.group_type}")
        kprime = ing.k
        blocks.extend(_relabel(ing.blocks, _group_map(ing, A, c)))
        if not children or provenance_of(ing) != children[-1]:
            children.append(provenance_of(ing))
    groups = [[x * c + j for x in G for j in range(c)] for G in master.groups]
    trace = ConstructionTrace("fundamental construction", {"c": c, "master_blocks": master.num_blocks},
                              children=[provenance_of(master)] + children,
                              labels="(x, j) -> x*c + j; ingredient group i -> i-th point of A")
    return checked(SplittingGdd(master.t, kprime if kprime is not None else master.k, c, groups,
                                blocks, v=master.v * c, provenance=trace.to_dict()))


def multiply_by_c(master: Gdd, c: int) -> SplittingGdd:
    """Fundamental construction with the one-block trivial ingredient everywhere."""
    trivial = trivial_splitting_gdd(master.t, master.k, c)
    out = fundamental_construction(master, lambda A: trivial, c)
    trace = ConstructionTrace("multiply by c", {"c": c}, children=[provenance_of(master)],
                              labels="(x, j) -> x*c + j")
    return out.with_provenance(trace.to_dict())


Fillers = Union[Mapping[int, SplittingDesign], Callable[[int], SplittingDesign]]


def _filler(fillers: Fillers, size: int):
    if callable(fillers):
        return fillers(size)
    if size not in fillers:
        raise MissingFiller(size)
    return fillers[size]


def fill_groups_2(sg: SplittingGdd, fillers: Fillers, threads: int = 1) -> SplittingDesign:
    """Add a point inf = v; place a filler 2-(|G|+1) design on each G + {inf}.

    Filler labels 0..|G|-1 go to the points of G in increasing order, label |G| to inf.
    """
    if sg.t != 2:
        raise ValueError("fill_groups_2 needs t = 2")
    inf = sg.v
    blocks = list(sg.blocks)
    maps, children = [], [provenance_of(sg)]
    for G in sg.groups:
        f = _filler(fillers, len(G))
        if (f.kind != "splitting_design" or f.t != 2 or f.v != len(G) + 1
                or (f.k, f.c) != (sg.k, sg.c)):
            raise IngredientShapeMismatch(
                f"filler for group size {len(G)} must be a splitting 2-({len(G) + 1},"
                f"{sg.k}x{sg.c},1) design")
        targets = list(G) + [inf]
        blocks.extend(_relabel(f.blocks, targets))
        maps.append(targets)
        if provenance_of(f) not in children:
            children.append(provenance_of(f))
    trace = ConstructionTrace("fill groups with a new point", {"new_point": inf},
                              children=children, labels={"filler_label_i_to": maps})
    return checked(SplittingDesign(2, sg.v + 1, sg.k, sg.c, blocks, provenance=trace.to_dict()),
                   threads=threads)


def fc3(master: CandelabraSystem, scs: SplittingCandelabra, sgdd: SplittingGdd,
        threads: int = 1) -> SplittingCandelabra:
    """Inflate a (3,k)-CS(... : s) by m, giving a splitting CS with stem m(s-1) + a.

    inf is the smallest stem point.  Non-inf points x of the master, in increasing
    order with index r, become r*m + j; inf x Z_a becomes the last a labels.
    Blocks through inf get a copy of ``scs``, the rest a copy of ``sgdd``.
    """
    if not master.stem:
        raise EmptyStem("the master candelabra system needs a nonempty stem")
    k = master.k
    m = len(scs.groups[0]) if scs.groups else 0
    a = len(scs.stem)
    if (scs.kind != "splitting_candelabra" or scs.t != 3 or len(scs.groups) != k - 1
            or any(len(G) != m for G in scs.groups)):
        raise IngredientShapeMismatch(f"need a splitting (3, k' x c)-CS(m^{k - 1} : a)")
    if (sgdd.kind != "splitting_gdd" or sgdd.t != 3 or len(sgdd.groups) != k
            or any(len(G) != m for G in sgdd.groups) or (sgdd.k, sgdd.c) != (scs.k, scs.c)):
        raise IngredientShapeMismatch(f"need a splitting GDD(3, {scs.k}x{scs.c}) of type {m}^{k}")
    inf = master.stem[0]
    others = [x for x in range(master.v) if x != inf]
    index = {x: r for r, x in enumerate(others)}
    base_inf = len(others) * m

    def lab(x, j):
        return base_inf + j if x == inf else index[x] * m + j

    blocks = []
    for A in master.blocks:
        if inf in A:
            rest = [x for x in A if x != inf]
            mapping = {p: lab(x, j) for G, x in zip(scs.groups, rest) for j, p in enumerate(G)}
            mapping.update({p: lab(inf, j) for j, p in enumerate(scs.stem)})
            blocks.extend(_relabel(scs.blocks, mapping))
        else:
            mapping = {p: lab(x, j) for G, x in zip(sgdd.groups, A) for j, p in enumerate(G)}
            blocks.extend(_relabel(sgdd.blocks, mapping))
    stem = [lab(x, j) for x in master.stem if x != inf for j in range(m)]
    stem += [lab(inf, j) for j in range(a)]
    groups = [[lab(x, j) for x in G for j in range(m)] for G in master.groups]
    trace = ConstructionTrace(
        "candelabra inflation", {"m": m, "a": a, "inf": inf, "stem_size": len(stem)},
        children=[provenance_of(master), provenance_of(scs), provenance_of(sgdd)],
        labels="non-inf point of rank r, j -> r*m + j; (inf, j) -> (#non-inf)*m + j; "
               "ingredient group i -> i-th point of the block (inf removed)")
    return checked(SplittingCandelabra(3, scs.k, scs.c, stem, groups, blocks,
                                       v=len(others) * m + a, provenance=trace.to_dict()),
                   threads=threads)


def fill_groups_3(scs: SplittingCandelabra, fillers: Fillers, threads: int = 1) -> SplittingDesign:
    """Place a filler 3-(|G|+s) design on each G + S (s <= 2).

    Filler labels 0..|G|-1 go to G in increasing order, the last s labels to S.
    """
    s = len(scs.stem)
    if s > 2:
        raise StemTooLarge(f"stem of size {s} exceeds 2")
    blocks = list(scs.blocks)
    maps, children = [], [provenance_of(scs)]
    for G in scs.groups:
        f = _filler(fillers, len(G))
        if (f.kind != "splitting_design" or f.t != 3 or f.v != len(G) + s
                or (f.k, f.c) != (scs.k, scs.c)):
            raise IngredientShapeMismatch(
                f"filler for group size {len(G)} must be a splitting 3-({len(G) + s},"
                f"{scs.k}x{scs.c},1) design")
        targets = list(G) + list(scs.stem)
        blocks.extend(_relabel(f.blocks, targets))
        maps.append(targets)
        if provenance_of(f) not in children:
            children.append(provenance_of(f))
    trace = ConstructionTrace("fill groups through the stem", {"stem_size": s},
                              children=children, labels={"filler_label_i_to": maps})
    return checked(SplittingDesign(3, scs.v, scs.k, scs.c, blocks, provenance=trace.to_dict()),
                   threads=threads)


# -- families --------------------------------------------------------------

FAMILIES = ("2-3x5", "2-385", "3-3x2")


def family_2_3x5(v: int, cache: Optional[IngredientCache] = None, seed: int = 0,
                 budget: int = DEFAULT_BUDGET, threads: int = 1) -> SplittingDesign:
    """Splitting 2-(v, 3x5, 1) for v = 1 mod 150, v != 301."""
    if v % 150 != 1 or v < 151:
        raise NotAdmissible(f"2-(v,3x5,1) is constructed for v = 1 mod 150 only, not {v}")
    if v == 301:
        raise NotAdmissible("v = 301 is the open case of the 3x5 family; not constructed")
    filler = example_151_design()
    if v == 151:
        return filler
    m = (v - 1) // 150
    gdd = gdd_provider(IngredientRequest.gdd(3, f"30^{m}"), cache, seed=seed, budget=budget)
    return fill_groups_2(multiply_by_c(gdd, 5), {150: filler}, threads=threads)


def family_2_385(cache: Optional[IngredientCache] = None, seed: int = 0,
                 budget: int = DEFAULT_BUDGET, threads: int = 1) -> SplittingDesign:
    """Splitting 2-(385, 4x2, 1) from TD(4, 48), doubled, filled with a 2-(97, 4x2, 1) design."""
    gdd = gdd_provider(IngredientRequest.gdd(4, "48^4"), cache, seed=seed, budget=budget)
    filler = splitting_design_provider(IngredientRequest.splitting_design(2, 97, 4, 2), cache,
                                       seed=seed, budget=budget)
    return fill_groups_2(multiply_by_c(gdd, 2), {96: filler}, threads=threads)


def family_3_3x2(v: int, cache: Optional[IngredientCache] = None, seed: int = 0,
                 budget: int = DEFAULT_BUDGET, threads: int = 1) -> SplittingDesign:
    """Splitting 3-(v, 3x2, 1) for every v = 2 mod 8."""
    if v % 8 != 2 or v < 10:
        raise NotAdmissible(f"a splitting 3-(v,3x2,1) design exists iff v = 2 mod 8; {v} fails")
    filler = splitting_design_provider(IngredientRequest.splitting_design(3, 10, 3, 2), cache,
                                       seed=seed, budget=budget)
    if v == 10:
        return filler
    m = (v - 2) // 8
    sgdd = multiply_by_c(complete_transversal_gdd(3, 4), 2)
    scs = fc3(candelabra_1m1(m), lemma_cs_8_2_2(), sgdd, threads=threads)
    return fill_groups_3(scs, {8: filler}, threads=threads)


def construct(family: str, v: Optional[int] = None, **kwargs) -> SplittingDesign:
    if family == "2-3x5":
        if v is None:
            raise NotAdmissible("family 2-3x5 needs --v")
        return family_2_3x5(v, **kwargs)
    if family == "2-385":
        if v not in (None, 385):
            raise NotAdmissible("family 2-385 has the single member v = 385")
        return family_2_385(**kwargs)
    if family == "3-3x2":
        if v is None:
            raise NotAdmissible("family 3-3x2 needs --v")
        return family_3_3x2(v, **kwargs)
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def expected_blocks(t: int, v: int, k: int, c: int) -> int:
    return comb(v, t) // (c ** t * comb(k, t))
