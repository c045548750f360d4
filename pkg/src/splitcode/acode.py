"""Splitting authentication codes: bounds, the design correspondence, exact spoofing odds.

All probabilities are exact ``Fraction`` values.

The attack model is fixed: sources are equiprobable, the rule is uniform over E,
and each sent message is uniform over its source's c-set.  An opponent who has
seen i distinct messages (from i distinct sources) substitutes a fresh message m'
and wins if m' is valid for the active rule.  By default "valid" means m' encodes
a source not already observed (``model="new-source"``); ``model="any"`` accepts
any message in the rule's image.
"""
from __future__ import annotations

import csv
import io
import json
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Optional, Sequence

from .design import SplittingDesign
from .errors import InvalidDesign, NonUniformSplitting, TooLargeForExact
from .verify import verify

MODELS = ("new-source", "any")

# largest v evaluated exactly, by attack order (orders beyond the table use the last entry)
DEFAULT_GUARD = {0: 160, 1: 160, 2: 32, 3: 16}


def huber_pd_bound(i: int, k: int, c: int, v: int) -> Fraction:
    if i < 0 or i > k or i >= v:
        raise ValueError(f"need 0 <= i <= k and i < v, got i={i} k={k} v={v}")
    return Fraction(c * (k - i), v - i)


def huber_rule_bound(t: int, v: int, k: int, c: int) -> Fraction:
    if not 0 <= t <= k <= v:
        raise ValueError(f"need t <= k <= v, got t={t} k={k} v={v}")
    return Fraction(comb(v, t), c ** t * comb(k, t))


@dataclass(frozen=True)
class ACode:
    """Rules as tuples of per-source message sets (sorted tuples)."""

    messages: int
    rules: tuple
    sources: tuple = ()

    def __post_init__(self):
        rules = tuple(tuple(tuple(sorted(int(m) for m in img)) for img in r) for r in self.rules)
        object.__setattr__(self, "rules", rules)
        k = len(rules[0]) if rules else len(self.sources)
        if not self.sources:
            object.__setattr__(self, "sources", tuple(f"s{j}" for j in range(k)))
        for n, r in enumerate(rules):
            if len(r) != len(self.sources):
                raise InvalidDesign(f"rule {n} encodes {len(r)} sources, expected {len(self.sources)}")
            seen = [m for img in r for m in img]
            if len(seen) != len(set(seen)):
                raise InvalidDesign(f"rule {n}: images of distinct sources overlap")
            if any(not 0 <= m < self.messages for m in seen):
                raise InvalidDesign(f"rule {n}: message outside 0..{self.messages - 1}")

    @property
    def k(self) -> int:
        return len(self.sources)

    def splitting(self) -> Optional[int]:
        """Common image size c, or None if images differ in size."""
        sizes = {len(img) for r in self.rules for img in r}
        return sizes.pop() if len(sizes) == 1 else None

    def to_json_dict(self) -> dict:
        return {"messages": self.messages, "sources": list(self.sources),
                "rules": [[list(img) for img in r] for r in self.rules]}

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def loads(cls, text: str) -> "ACode":
        data = json.loads(text)
        return cls(int(data["messages"]), data["rules"], tuple(data.get("sources", ())))

    def to_csv(self) -> str:
        """|E| rows by |S| columns; each cell lists the messages, space separated."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for r in self.rules:
            writer.writerow([" ".join(map(str, img)) for img in r])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, messages: int) -> "ACode":
        rows = [row for row in csv.reader(io.StringIO(text)) if row]
        return cls(messages, [[cell.split() for cell in row] for row in rows])


def design_to_acode(d: SplittingDesign, check: bool = True) -> ACode:
    """One rule per block; source j encodes to row j of the canonical block."""
    if d.kind != "splitting_design":
        raise InvalidDesign(f"expected a splitting design, got {d.kind}")
    if check:
        report = verify(d)
        if not report:
            raise InvalidDesign(f"design fails verification: {report.describe()}")
    return ACode(d.v, d.blocks)


def acode_to_design(ac: ACode, t: int) -> SplittingDesign:
    c = ac.splitting()
    if c is None:
        raise NonUniformSplitting("encoding images do not all have the same size")
    return SplittingDesign(t, ac.messages, ac.k, c, ac.rules)


def is_optimal(d: SplittingDesign, check: bool = True) -> bool:
    """True iff the rule count meets the lower bound with equality."""
    if d.lam != 1:
        raise InvalidDesign("optimality is defined for lambda = 1")
    if check and not verify(d):
        raise InvalidDesign("design fails verification")
    return d.num_blocks == huber_rule_bound(d.t, d.v, d.k, d.c)


@dataclass(frozen=True)
class DeceptionReport:
    order: int
    probability: Fraction
    bound: Fraction
    model: str = "new-source"

    @property
    def tight(self) -> bool:
        return self.probability == self.bound

    def describe(self) -> str:
        verdict = "tight" if self.tight else "not tight"
        return f"P_d{self.order} = {self.probability} (bound {self.bound}, {verdict})"


def _guard_limit(i: int, guard) -> int:
    table = guard or DEFAULT_GUARD
    return table.get(i, table[max(table)])


def evaluate_deception(ac: ACode, i: int, model: str = "new-source",
                       guard: Optional[dict] = None) -> DeceptionReport:
    """Exact P_di: expectation over observations of the best substitution's success odds."""
    if model not in MODELS:
        raise ValueError(f"model must be one of {MODELS}")
    k, v = ac.k, ac.messages
    if not 0 <= i < k:
        raise ValueError(f"attack order must satisfy 0 <= i < k = {k}")
    if v > _guard_limit(i, guard):
        raise TooLargeForExact(f"v = {v} exceeds the exact-evaluation limit "
                               f"{_guard_limit(i, guard)} for order {i}")
    c = ac.splitting()
    if c is None:
        raise NonUniformSplitting("the attack model needs a uniform splitting")
    # weight of each (rule, source subset, message choice) is 1 / (|E| C(k,i) c^i)
    wins: dict = defaultdict(lambda: defaultdict(int))
    for rule in ac.rules:
        image = [m for img in rule for m in img]
        for srcs in combinations(range(k), i):
            if model == "any":
                valid = image
            else:
                valid = [m for j, img in enumerate(rule) if j not in srcs for m in img]
            for seen in product(*(rule[j] for j in srcs)):
                tally = wins[tuple(sorted(seen))]
                for m in valid:
                    if m not in seen:
                        tally[m] += 1
    total = sum(max(tally.values(), default=0) for tally in wins.values())
    prob = Fraction(total, len(ac.rules) * comb(k, i) * c ** i)
    return DeceptionReport(i, prob, huber_pd_bound(i, k, c, v), model)
