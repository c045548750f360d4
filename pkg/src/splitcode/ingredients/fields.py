"""Small finite fields GF(p^e), p^e <= 64, as dense operation tables.

Elements are integers 0..q-1 encoding coefficient vectors in base p
(constant term least significant).
"""
from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from ..errors import NoIrreducibleFound, NotPrime, UnsupportedOrder

MAX_ORDER = 64

# monic irreducible polynomials, coefficients listed from the constant term up
IRREDUCIBLE = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (7, 2): (3, 6, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def prime_power(q: int):
    """Return (p, e) with q = p^e, or None."""
    if q < 2:
        return None
    p = next(f for f in range(2, q + 1) if q % f == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    return (p, e) if r == 1 else None


def _poly_mod(a, m, p):
    """Remainder of a modulo m over Z_p, trailing zeros stripped (zero -> [])."""
    a = [x % p for x in a]
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    for i in range(len(a) - 1, dm - 1, -1):
        coef = a[i] * inv % p
        if coef:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - coef * m[j]) % p
    r = a[:dm]
    while r and r[-1] == 0:
        r.pop()
    return r


def is_irreducible(poly, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for code in range(p ** d):
            divisor = [(code // p ** i) % p for i in range(d)] + [1]
            if not _poly_mod(poly, divisor, p):
                return False
    return True


@dataclass(frozen=True, eq=False)
class FiniteField:
    p: int
    e: int
    modulus: tuple
    add: np.ndarray
    mul: np.ndarray

    @property
    def order(self) -> int:
        return self.p ** self.e

    def inverse(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(np.flatnonzero(self.mul[x] == 1)[0])

    def power(self, x: int, n: int) -> int:
        r = 1
        for _ in range(n):
            r = int(self.mul[r, x])
        return r

    def __repr__(self):
        return f"GF({self.p}^{self.e})"


def _vec(x, p, e):
    return [(x // p ** i) % p for i in range(e)]


def _int(vec, p):
    return sum(int(c) * p ** i for i, c in enumerate(vec))


def gf(p: int, e: int = 1, check_samples: int = 200, seed: int = 0) -> FiniteField:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise UnsupportedOrder("degree must be >= 1")
    q = p ** e
    if q > MAX_ORDER:
        raise UnsupportedOrder(f"field order {q} exceeds {MAX_ORDER}")
    modulus = (0, 1) if e == 1 else IRREDUCIBLE.get((p, e))
    if modulus is None or not is_irreducible(modulus, p):
        raise NoIrreducibleFound(f"no verified irreducible polynomial for GF({p}^{e})")
    add = np.zeros((q, q), dtype=np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        va = _vec(a, p, e)
        for b in range(q):
            vb = _vec(b, p, e)
            add[a, b] = _int([(x + y) % p for x, y in zip(va, vb)], p)
            prod = [0] * (2 * e - 1)
            for i, x in enumerate(va):
                for j, y in enumerate(vb):
                    prod[i + j] = (prod[i + j] + x * y) % p
            rem = _poly_mod(prod, modulus, p) if e > 1 else [prod[0]]
            mul[a, b] = _int(rem + [0] * (e - len(rem)), p)
    field = FiniteField(p, e, tuple(modulus), add, mul)
    _spot_check(field, check_samples, seed)
    return field


def _spot_check(F: FiniteField, samples: int, seed: int) -> None:
    q = F.order
    add, mul = F.add, F.mul
    for x in range(1, q):
        if not (mul[x] == 1).any():
            raise NoIrreducibleFound(f"{x} has no inverse in {F!r}")
    rng = random.Random(seed)
    for _ in range(samples):
        a, b, c = (rng.randrange(q) for _ in range(3))
        if mul[mul[a, b], c] != mul[a, mul[b, c]] or add[add[a, b], c] != add[a, add[b, c]]:
            raise NoIrreducibleFound(f"associativity fails in {F!r}")
        if mul[a, add[b, c]] != add[mul[a, b], mul[a, c]]:
            raise NoIrreducibleFound(f"distributivity fails in {F!r}")
