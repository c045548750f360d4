"""Design objects, canonical block form, base-block development and the JSON file format.

Points are always the dense labels ``0..v-1``. A split block is stored as a
tuple of rows, each row a sorted tuple, with rows ordered lexicographically;
classical (non-splitting) blocks are sorted tuples of points.
"""
from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

Row = tuple[int, ...]
SplitBlock = tuple[Row, ...]

KINDS = ("splitting_design", "gdd", "splitting_gdd", "candelabra", "splitting_candelabra")


def split_block(rows: Iterable[Iterable[int]]) -> SplitBlock:
    """Canonical form of a k x c array given as an iterable of rows.

    Raises ``ValueError`` when a point repeats or rows differ in length.
    """
    canon = tuple(sorted(tuple(sorted(int(x) for x in row)) for row in rows))
    if not canon or not canon[0]:
        raise ValueError("a split block needs k >= 1 rows of c >= 1 points")
    c = len(canon[0])
    if any(len(r) != c for r in canon):
        raise ValueError(f"ragged rows in block {canon}")
    flat = [x for r in canon for x in r]
    if len(set(flat)) != len(flat):
        raise ValueError(f"repeated point in block {canon}")
    return canon


def block_shape(block: SplitBlock) -> tuple[int, int]:
    return len(block), len(block[0])


def block_points(block: SplitBlock) -> list[int]:
    return [x for row in block for x in row]


def relabel_block(block: Sequence[Sequence[int]], mapping) -> SplitBlock:
    return tuple(sorted(tuple(sorted(mapping[x] for x in row)) for row in block))


class GroupType:
    """Multiset of group sizes, written in exponential notation ``g1^n1 g2^n2``."""

    _TOKEN = re.compile(r"^(\d+)(?:\^(\d+))?$")

    def __init__(self, sizes: Iterable[int]):
        sizes = [int(s) for s in sizes]
        if any(s <= 0 for s in sizes):
            raise ValueError("group sizes must be positive")
        self.counts = dict(sorted(Counter(sizes).items()))

    @classmethod
    def parse(cls, text: str) -> "GroupType":
        sizes = []
        for tok in text.replace(",", " ").split():
            m = cls._TOKEN.match(tok)
            if not m:
                raise ValueError(f"bad group-type token {tok!r}")
            sizes += [int(m.group(1))] * int(m.group(2) or 1)
        return cls(sizes)

    @classmethod
    def uniform(cls, g: int, n: int) -> "GroupType":
        return cls([g] * n)

    @classmethod
    def of(cls, groups: Iterable[Sequence[int]]) -> "GroupType":
        return cls(len(g) for g in groups)

    @property
    def sizes(self) -> list[int]:
        return [g for g, n in self.counts.items() for _ in range(n)]

    @property
    def total(self) -> int:
        return sum(g * n for g, n in self.counts.items())

    @property
    def num_groups(self) -> int:
        return sum(self.counts.values())

    def is_uniform(self) -> bool:
        return len(self.counts) == 1

    def __str__(self):
        return " ".join(f"{g}^{n}" for g, n in self.counts.items())

    def __repr__(self):
        return f"GroupType({str(self)!r})"

    def __eq__(self, other):
        return isinstance(other, GroupType) and self.counts == other.counts

    def __hash__(self):
        return hash(tuple(self.counts.items()))


def consecutive_groups(sizes: Iterable[int], start: int = 0) -> tuple[Row, ...]:
    out, x = [], start
    for g in sizes:
        out.append(tuple(range(x, x + g)))
        x += g
    return tuple(out)


def _canon_groups(groups) -> tuple[Row, ...]:
    return tuple(sorted(tuple(sorted(int(x) for x in g)) for g in groups))


@dataclass(frozen=True)
class _BlockDesign:
    """Fields common to every design kind; blocks are canonicalised on construction."""

    t: int
    v: int
    k: int
    blocks: tuple
    c: int = 1
    lam: int = 1
    groups: tuple[Row, ...] = ()
    stem: Row = ()
    provenance: Any = field(default=None, compare=False, repr=False)

    kind = "abstract"
    splitting = True

    def __post_init__(self):
        canon = tuple(sorted(self._canon(b) for b in self.blocks))
        object.__setattr__(self, "blocks", canon)
        object.__setattr__(self, "groups", _canon_groups(self.groups))
        object.__setattr__(self, "stem", tuple(sorted(int(x) for x in self.stem)))

    def _canon(self, b):
        if self.splitting:
            return tuple(sorted(tuple(sorted(int(x) for x in r)) for r in b))
        return tuple(sorted(int(x) for x in b))

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    @property
    def group_type(self) -> GroupType:
        return GroupType.of(self.groups)

    def split_blocks(self) -> list[SplitBlock]:
        """Blocks as k x c arrays (classical blocks become k rows of one point)."""
        if self.splitting:
            return list(self.blocks)
        return [tuple((x,) for x in b) for b in self.blocks]

    def with_provenance(self, provenance):
        return type(self)(**{**self._fields(), "provenance": provenance})

    def _fields(self):
        return dict(t=self.t, v=self.v, k=self.k, blocks=self.blocks, c=self.c, lam=self.lam,
                    groups=self.groups, stem=self.stem, provenance=self.provenance)

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "t": self.t,
            "v": self.v,
            "k": self.k,
            "c": self.c,
            "lambda": self.lam,
            "stem": list(self.stem),
            "groups": [list(g) for g in self.groups],
            "blocks": [[list(r) for r in b] for b in self.split_blocks()],
            "provenance": self.provenance if self.provenance is not None else {},
        }


class SplittingDesign(_BlockDesign):
    kind = "splitting_design"

    def __init__(self, t, v, k, c, blocks, lam=1, provenance=None, groups=(), stem=()):
        super().__init__(t=t, v=v, k=k, blocks=blocks, c=c, lam=lam, provenance=provenance)

    def _fields(self):
        return dict(t=self.t, v=self.v, k=self.k, c=self.c, blocks=self.blocks, lam=self.lam,
                    provenance=self.provenance)


class Gdd(_BlockDesign):
    kind = "gdd"
    splitting = False

    def __init__(self, t, k, groups, blocks, v=None, provenance=None, c=1, lam=1, stem=()):
        groups = _canon_groups(groups)
        if v is None:
            v = sum(len(g) for g in groups)
        super().__init__(t=t, v=v, k=k, blocks=blocks, groups=groups, provenance=provenance)

    def _fields(self):
        return dict(t=self.t, k=self.k, groups=self.groups, blocks=self.blocks, v=self.v,
                    provenance=self.provenance)


class SplittingGdd(_BlockDesign):
    kind = "splitting_gdd"

    def __init__(self, t, k, c, groups, blocks, v=None, provenance=None, lam=1, stem=()):
        groups = _canon_groups(groups)
        if v is None:
            v = sum(len(g) for g in groups)
        super().__init__(t=t, v=v, k=k, blocks=blocks, c=c, groups=groups, provenance=provenance)

    def _fields(self):
        return dict(t=self.t, k=self.k, c=self.c, groups=self.groups, blocks=self.blocks,
                    v=self.v, provenance=self.provenance)


class CandelabraSystem(_BlockDesign):
    kind = "candelabra"
    splitting = False

    def __init__(self, t, k, stem, groups, blocks, v=None, provenance=None, c=1, lam=1):
        groups = _canon_groups(groups)
        if v is None:
            v = len(stem) + sum(len(g) for g in groups)
        super().__init__(t=t, v=v, k=k, blocks=blocks, groups=groups, stem=stem,
                         provenance=provenance)

    def _fields(self):
        return dict(t=self.t, k=self.k, stem=self.stem, groups=self.groups, blocks=self.blocks,
                    v=self.v, provenance=self.provenance)


class SplittingCandelabra(_BlockDesign):
    kind = "splitting_candelabra"

    def __init__(self, t, k, c, stem, groups, blocks, v=None, provenance=None, lam=1):
        groups = _canon_groups(groups)
        if v is None:
            v = len(stem) + sum(len(g) for g in groups)
        super().__init__(t=t, v=v, k=k, blocks=blocks, c=c, groups=groups, stem=stem,
                         provenance=provenance)

    def _fields(self):
        return dict(t=self.t, k=self.k, c=self.c, stem=self.stem, groups=self.groups,
                    blocks=self.blocks, v=self.v, provenance=self.provenance)


@dataclass(frozen=True)
class BaseBlockSystem:
    """Base blocks over Z_v, developed by the translates ``B + j*d``."""

    v: int
    blocks: tuple[SplitBlock, ...]
    d: int = 1

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(
            tuple(tuple(int(x) % self.v for x in row) for row in b) for b in self.blocks))


def develop_base_blocks(b: BaseBlockSystem) -> list[SplitBlock]:
    if b.d <= 0 or b.v % b.d:
        raise ValueError(f"increment {b.d} does not divide {b.v}")
    seen: set[SplitBlock] = set()
    out: list[SplitBlock] = []
    for base in b.blocks:
        for j in range(b.v // b.d):
            shift = j * b.d
            blk = split_block(((x + shift) % b.v for x in row) for row in base)
            # short orbits: keep each translate once
            if blk not in seen:
                seen.add(blk)
                out.append(blk)
    return out


# -- JSON -----------------------------------------------------------------

_CLASSES = {
    "splitting_design": SplittingDesign,
    "gdd": Gdd,
    "splitting_gdd": SplittingGdd,
    "candelabra": CandelabraSystem,
    "splitting_candelabra": SplittingCandelabra,
}


def dumps(design: _BlockDesign) -> str:
    """Byte-stable serialisation: sorted keys, compact separators, trailing newline."""
    return json.dumps(design.to_json_dict(), sort_keys=True, separators=(",", ":")) + "\n"


def from_json_dict(data: dict) -> _BlockDesign:
    try:
        kind = data["kind"]
        cls = _CLASSES[kind]
        t, v, k, c = (int(data[x]) for x in ("t", "v", "k", "c"))
        lam = int(data.get("lambda", 1))
        raw_blocks = data["blocks"]
        groups = data.get("groups", [])
        stem = data.get("stem", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"not a design file: {exc}") from exc
    prov = data.get("provenance") or None
    if cls.splitting:
        blocks = [[list(r) for r in b] for b in raw_blocks]
    else:
        blocks = [[x for r in b for x in (r if isinstance(r, list) else [r])] for b in raw_blocks]
    if kind == "splitting_design":
        return SplittingDesign(t, v, k, c, blocks, lam=lam, provenance=prov)
    if kind == "gdd":
        return Gdd(t, k, groups, blocks, v=v, provenance=prov)
    if kind == "splitting_gdd":
        return SplittingGdd(t, k, c, groups, blocks, v=v, provenance=prov)
    if kind == "candelabra":
        return CandelabraSystem(t, k, stem, groups, blocks, v=v, provenance=prov)
    return SplittingCandelabra(t, k, c, stem, groups, blocks, v=v, provenance=prov)


def loads(text: str) -> _BlockDesign:
    return from_json_dict(json.loads(text))


def save(design: _BlockDesign, path) -> None:
    from pathlib import Path

    Path(path).write_text(dumps(design))


def load(path) -> _BlockDesign:
    from pathlib import Path

    return loads(Path(path).read_text())
