"""Small finite fields GF(p^k) with table arithmetic.

Elements are ints 0..q-1 read as base-p digit vectors of a polynomial in the
generator modulo a fixed monic irreducible polynomial. Only meant for the
q <= a few thousand range used by exhaustive searches.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import List, Sequence, Tuple

from .field import is_prime


def _poly_mod(a: List[int], m: List[int], p: int) -> List[int]:
    a = a[:]
    dm = len(m) - 1
    while len(a) - 1 >= dm and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        coef = a[-1]
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * c) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _is_irreducible(m: List[int], p: int) -> bool:
    k = len(m) - 1
    for d in range(1, k // 2 + 1):
        for tail in product(range(p), repeat=d):
            f = list(tail) + [1]
            if not _poly_mod(m, f, p):
                return False
    return True


@lru_cache(maxsize=None)
def conway_like_modulus(p: int, k: int) -> Tuple[int, ...]:
    """Lexicographically first monic irreducible polynomial of degree k (low degree first)."""
    if k == 1:
        return (0, 1)
    for tail in product(range(p), repeat=k):
        m = list(tail) + [1]
        if m[0] and _is_irreducible(m, p):
            return tuple(m)
    raise ValueError(f"no irreducible polynomial of degree {k} over GF({p})")


class GaloisField:
    """GF(p^k) with exp/log tables for multiplication."""

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p) or k < 1:
            raise ValueError(f"invalid field GF({p}^{k})")
        self.p, self.k = p, k
        self.q = q = p ** k
        self.modulus = conway_like_modulus(p, k)
        self._digits = [self._to_digits(x) for x in range(q)]
        mul = self._slow_mul
        gen = None
        for g in range(2 if q > 2 else 1, q):
            x, order = g, 1
            while x != 1:
                x = mul(x, g)
                order += 1
            if order == q - 1:
                gen = g
                break
        if gen is None:
            gen = 1
        exp = [1] * (2 * q)
        for i in range(1, 2 * q):
            exp[i] = mul(exp[i - 1], gen)
        log = [0] * q
        for i in range(q - 1):
            log[exp[i]] = i
        self._exp, self._log = exp, log

    def _to_digits(self, x: int) -> List[int]:
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return out

    def _from_digits(self, d: Sequence[int]) -> int:
        x = 0
        for c in reversed(d):
            x = x * self.p + c
        return x

    def _slow_mul(self, a: int, b: int) -> int:
        da, db = self._to_digits(a), self._to_digits(b)
        prod = [0] * (2 * self.k)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        r = _poly_mod(prod, list(self.modulus), self.p)
        return self._from_digits(r + [0] * (self.k - len(r)))

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        da, db = self._digits[a], self._digits[b]
        return self._from_digits([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self._from_digits([(-x) % self.p for x in self._digits[a]])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def embed(self, x: int) -> int:
        """Image of an element of the prime field."""
        return x % self.p

    def elements(self) -> range:
        return range(self.q)

    def null_space(self, rows: Sequence[Sequence[int]], ncols: int) -> List[List[int]]:
        """Dense right null space basis (reduced echelon construction)."""
        mat = [list(r) for r in rows]
        pivots = []
        r = 0
        for c in range(ncols):
            piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
            if piv is None:
                continue
            mat[r], mat[piv] = mat[piv], mat[r]
            inv = self.inv(mat[r][c])
            mat[r] = [self.mul(inv, x) for x in mat[r]]
            for i in range(len(mat)):
                if i != r and mat[i][c]:
                    f = mat[i][c]
                    mat[i] = [self.sub(x, self.mul(f, y)) for x, y in zip(mat[i], mat[r])]
            pivots.append(c)
            r += 1
        out = []
        for f in range(ncols):
            if f in pivots:
                continue
            v = [0] * ncols
            v[f] = 1
            for i, pc in enumerate(pivots):
                v[pc] = self.neg(mat[i][f])
            out.append(v)
        return out
