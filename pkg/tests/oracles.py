"""Brute-force reference implementations, independent of the package code."""

from __future__ import annotations

from fractions import Fraction
from itertools import product

import numpy as np


def squarefree_range(bound: int) -> list[int]:
    out = []
    for m in range(1, bound + 1):
        if all(m % (d * d) for d in range(2, int(m**0.5) + 1)):
            out += [m, -m]
    return sorted(out)


def _vals(modulus: int, ell: int, K: int) -> np.ndarray:
    """v_ell(x) for x = 0..modulus-1, with v(0) = K."""
    x = np.arange(modulus)
    out = np.zeros(modulus, dtype=np.int64)
    for k in range(1, K + 1):
        out += (x % ell**k == 0)
    return out


class HilbertOracle:
    """Is a X^2 + b Y^2 = Z^2 solvable nontrivially over Q_ell?

    Searches primitive residues mod ell^K with one coordinate scaled to 1 and
    accepts when F = 0 mod ell^K with 2*delta + 1 <= K, delta the least
    valuation of a partial derivative (Hensel).  K = 3 for odd ell and K = 5 at
    2 bound delta for squarefree a, b.
    """

    def __init__(self, ell: int):
        self.ell = ell
        self.K = 5 if ell == 2 else 3
        self.m = ell**self.K
        self.v = _vals(self.m, ell, self.K)
        self.v2 = 1 if ell == 2 else 0
        self.r = np.arange(self.m, dtype=np.int64)
        self.sq = (self.r * self.r) % self.m
        self._minval: dict[int, np.ndarray] = {}

    def _min_root_val(self, c: int) -> np.ndarray:
        """arr[t] = least v(Y) over Y with c Y^2 = t mod ell^K (K+1 if none)."""
        c %= self.m
        if c not in self._minval:
            arr = np.full(self.m, self.K + 1, dtype=np.int64)
            np.minimum.at(arr, (c * self.sq) % self.m, self.v)
            self._minval[c] = arr
        return self._minval[c]

    def _vc(self, c: int) -> int:
        c %= self.m
        return int(self.v[c])

    def solvable(self, a: int, b: int) -> bool:
        m, K, v, v2 = self.m, self.K, self.v, self.v2
        va, vb = self._vc(a), self._vc(b)
        X = self.r
        one = self._min_root_val(1)
        ok = lambda delta, found: bool(np.any(found & (2 * delta + 1 <= K)))  # noqa: E731
        # Z = 1: b Y^2 = 1 - a X^2
        vy = self._min_root_val(b)[(1 - a * self.sq) % m]
        d = np.minimum(np.minimum(v2 + va + v[X], v2 + vb + vy), v2)
        if ok(d, vy <= K):
            return True
        # Y = 1: Z^2 = a X^2 + b
        vz = one[(a * self.sq + b) % m]
        d = np.minimum(np.minimum(v2 + va + v[X], v2 + vb), v2 + vz)
        if ok(d, vz <= K):
            return True
        # X = 1: Z^2 = a + b Y^2
        vz = one[(a + b * self.sq) % m]
        d = np.minimum(np.minimum(v2 + va, v2 + vb + v[X]), v2 + vz)
        return ok(d, vz <= K)


def real_solvable(a: int, b: int) -> bool:
    """Sign pattern of a X^2 + b Y^2 - Z^2 on a small grid."""
    vals = [a * x * x + b * y * y - z * z for x, y, z in product((-1, 0, 1, 2), repeat=3) if (x, y, z) != (0, 0, 0)]
    return any(t == 0 for t in vals) or (any(t > 0 for t in vals) and any(t < 0 for t in vals))


def legendre_brute(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if any(x * x % p == a for x in range(1, p)) else -1


def det_fraction(mat: list[list[int]]) -> Fraction:
    m = [[Fraction(x) for x in row] for row in mat]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            for k in range(c, n):
                m[r][k] -= f * m[c][k]
    return det


def sylvester_resultant(f: list[int], g: list[int]) -> int:
    """Res(f, g) from the Sylvester matrix (ascending coefficient lists)."""
    m, n = len(f) - 1, len(g) - 1
    F, G = f[::-1], g[::-1]
    rows = [[0] * i + F + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + G + [0] * (m - 1 - i) for i in range(m)]
    return int(det_fraction(rows))


def sumset_brute(sets) -> set[int]:
    out = set()
    for combo in product(*[sorted(s) for s in sets]):
        acc = 0
        for x in combo:
            acc ^= x
        out.add(acc)
    return out


def rank_brute(vectors) -> int:
    """Size of the span, as log2, by closure."""
    span = {0}
    for v in vectors:
        span |= {x ^ v for x in span}
    return len(span).bit_length() - 1


def subspaces_brute(n: int) -> list[frozenset[int]]:
    """All subspaces of F_2^n as element sets (closure of every subset of generators)."""
    seen = {frozenset([0])}
    frontier = [frozenset([0])]
    while frontier:
        nxt = []
        for H in frontier:
            for v in range(1, 1 << n):
                if v not in H:
                    K = frozenset(H | {x ^ v for x in H})
                    if K not in seen:
                        seen.add(K)
                        nxt.append(K)
        frontier = nxt
    return sorted(seen, key=lambda H: (len(H), sorted(H)))
