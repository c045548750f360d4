"""Mutually orthogonal Latin squares: the field construction and the direct product."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ..errors import CannotSupplyMols, UnsupportedOrder
from .fields import MAX_ORDER, gf, prime_power


def is_latin(square: np.ndarray) -> bool:
    n = square.shape[0]
    target = np.arange(n)
    return all((np.sort(square[i]) == target).all() and (np.sort(square[:, i]) == target).all()
               for i in range(n))


def are_orthogonal(a: np.ndarray, b: np.ndarray) -> bool:
    n = a.shape[0]
    return len(np.unique(a * n + b)) == n * n


@dataclass(frozen=True, eq=False)
class MolsSet:
    order: int
    squares: tuple

    def __len__(self):
        return len(self.squares)

    def check(self) -> None:
        """Exhaustive Latin and pairwise orthogonality check; raises ValueError."""
        for i, sq in enumerate(self.squares):
            if sq.shape != (self.order, self.order) or not is_latin(sq):
                raise ValueError(f"square {i} is not Latin of order {self.order}")
        for i, j in combinations(range(len(self.squares)), 2):
            if not are_orthogonal(self.squares[i], self.squares[j]):
                raise ValueError(f"squares {i} and {j} are not orthogonal")


def trivial_mols(count: int) -> MolsSet:
    """Any number of 'orthogonal' squares of order 1."""
    return MolsSet(1, tuple(np.zeros((1, 1), dtype=np.int64) for _ in range(count)))


def mols_from_field(q: int) -> MolsSet:
    pe = prime_power(q)
    if pe is None or q > MAX_ORDER:
        raise UnsupportedOrder(f"{q} is not a supported prime power")
    F = gf(*pe)
    # L_a(x, y) = a*x + y for nonzero a
    squares = tuple(F.add[F.mul[a][:, None], np.arange(q)[None, :]] for a in range(1, q))
    m = MolsSet(q, squares)
    m.check()
    return m


def mols_product(A: MolsSet, B: MolsSet) -> MolsSet:
    if not len(A) or not len(B):
        raise ValueError("both MOLS sets must be nonempty")
    m, n = A.order, B.order
    squares = []
    for a, b in zip(A.squares, B.squares):
        # cell ((i1,i2),(j1,j2)) -> (a[i1,j1], b[i2,j2]), pairs flattened as x*n + y
        sq = (a[:, None, :, None] * n + b[None, :, None, :]).reshape(m * n, m * n)
        squares.append(sq)
    out = MolsSet(m * n, tuple(squares))
    out.check()
    return out


def factor_prime_powers(n: int) -> list[int]:
    out, f = [], 2
    while n > 1:
        if n % f == 0:
            q = 1
            while n % f == 0:
                n //= f
                q *= f
            out.append(q)
        f += 1
    return out


def mols_ladder(n: int, count: int) -> tuple[MolsSet, list[str]]:
    """``count`` MOLS of order n via fields and direct products; returns (set, trace)."""
    trace = []
    if count == 0:
        trace.append("no squares needed")
        return MolsSet(n, ()), trace
    if n == 1:
        return trivial_mols(count), ["order 1"]
    result = None
    for q in factor_prime_powers(n):
        if q > MAX_ORDER:
            trace.append(f"GF({q}) unsupported")
            raise CannotSupplyMols(f"cannot build MOLS of order {n}", trace)
        if q - 1 < count:
            trace.append(f"GF({q}) gives only {q - 1} squares")
            raise CannotSupplyMols(f"cannot build {count} MOLS of order {n}", trace)
        part = mols_from_field(q)
        trace.append(f"GF({q}): {len(part)} squares")
        result = part if result is None else mols_product(result, part)
    trace.append(f"product: {len(result)} squares of order {n}")
    return MolsSet(n, result.squares[:count]), trace
