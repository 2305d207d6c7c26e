"""Subsets of F_2^n: sumsets, obstruction dictionary, independent transversals.

Vectors are ints; coordinate i (1-based) is bit i-1, so e_i == 1 << (i-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

MAX_VERDICT_DIM = 8


@dataclass(frozen=True)
class F2Subset:
    n: int
    members: frozenset[int]

    def __init__(self, n: int, members: Iterable[int]):
        ms = frozenset(int(m) for m in members)
        if n < 0:
            raise ValueError("dimension must be nonnegative")
        if any(m < 0 or m >> n for m in ms):
            raise ValueError(f"vector outside F_2^{n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "members", ms)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, v: int) -> bool:
        return v in self.members

    def sorted(self) -> list[int]:
        return sorted(self.members)

    def translate(self, v: int) -> "F2Subset":
        return F2Subset(self.n, (m ^ v for m in self.members))


def e(i: int) -> int:
    """Standard basis vector e_i (1-based)."""
    return 1 << (i - 1)


def bitstring(v: int, n: int) -> str:
    """Coordinates 1..n left to right."""
    return "".join("1" if v >> i & 1 else "0" for i in range(n))


def full_space(n: int) -> F2Subset:
    return F2Subset(n, range(1 << n))


def complement_of_point(n: int, v: int) -> F2Subset:
    return F2Subset(n, (w for w in range(1 << n) if w != v))


def minkowski_sum(sets: Sequence[F2Subset], n: Optional[int] = None) -> F2Subset:
    """{s_1 + ... + s_t}; the empty sum is {0} (n must then be given)."""
    if not sets:
        if n is None:
            raise ValueError("dimension needed for an empty sum")
        return F2Subset(n, [0])
    dims = {s.n for s in sets}
    if len(dims) != 1 or (n is not None and dims != {n}):
        raise ValueError(f"dimension mismatch: {sorted(dims)}")
    n = dims.pop()
    if n <= 24:
        acc = np.zeros(1 << n, dtype=bool)
        acc[0] = True
        for s in sets:
            idx = np.flatnonzero(acc)
            nxt = np.zeros_like(acc)
            for m in s.members:
                nxt[idx ^ m] = True
            acc = nxt
        return F2Subset(n, np.flatnonzero(acc).tolist())
    cur = {0}
    for s in sets:
        cur = {a ^ b for a in cur for b in s.members}
    return F2Subset(n, cur)


def reduce_basis(vectors: Iterable[int]) -> list[int]:
    """Reduced row echelon basis of the span, pivots (highest bits) descending."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis = [min(b, b ^ v) for b in basis]
            basis.append(v)
            basis.sort(reverse=True)
    return basis


def rank(vectors: Iterable[int]) -> int:
    return len(reduce_basis(vectors))


def span(basis: Sequence[int]) -> list[int]:
    out = [0]
    for b in basis:
        out += [x ^ b for x in out]
    return out


def is_subspace(s: F2Subset) -> bool:
    return 0 in s.members and len(s) == 1 << rank(s.members)


@dataclass(frozen=True)
class ObstructionReport:
    n: int
    obstructed: bool
    disjoint_subspaces: tuple[tuple[int, ...], ...]  # RREF bases of nontrivial H with H ∩ S = ∅
    full_group_required: bool
    min_generators: Optional[int]


def subspaces_avoiding(n: int, forbidden: frozenset[int]) -> list[tuple[int, ...]]:
    """All nontrivial subspaces H of F_2^n with H ∩ forbidden = ∅, as RREF bases."""
    if 0 in forbidden:
        return []
    allowed = [v for v in range(1, 1 << n) if v not in forbidden]
    found: dict[tuple[int, ...], list[int]] = {}
    level = {(): [0]}
    while level:
        nxt: dict[tuple[int, ...], list[int]] = {}
        for basis, elems in level.items():
            elem_set = set(elems)
            for v in allowed:
                if v in elem_set:
                    continue
                if any((x ^ v) in forbidden for x in elems):
                    continue
                key = tuple(reduce_basis(list(basis) + [v]))
                if key not in nxt and key not in found:
                    nxt[key] = elems + [x ^ v for x in elems]
        found.update(nxt)
        level = nxt
    return sorted(found, key=lambda b: (len(b), b))


def obstruction_verdict(S: F2Subset) -> ObstructionReport:
    if not S.members:
        raise ValueError("S must be nonempty")
    if S.n > MAX_VERDICT_DIM:
        raise ValueError(f"exhaustive subspace enumeration refused for n = {S.n} > {MAX_VERDICT_DIM}")
    obstructed = 0 not in S.members
    subs = subspaces_avoiding(S.n, S.members) if obstructed else []
    if obstructed:
        best = max((len(b) for b in subs), default=0)
        min_gen: Optional[int] = S.n - best
    else:
        min_gen = None
    return ObstructionReport(S.n, obstructed, tuple(subs), obstructed and not subs, min_gen)


def _reduce(v: int, basis: Sequence[int]) -> int:
    for b in basis:
        v = min(v, v ^ b)
    return v


def _rado_holds(sets: Sequence[frozenset[int]], basis: Sequence[int]) -> bool:
    """Every subfamily J gains at least #J dimensions over span(basis).

    ``basis`` must be in reduced echelon form, so reduced vectors have zero
    pivot bits and their rank is the rank modulo span(basis).
    """
    reduced = [{_reduce(v, basis) for v in s} - {0} for s in sets]
    for mask in range(1, 1 << len(sets)):
        union: set[int] = set()
        for i, s in enumerate(reduced):
            if mask >> i & 1:
                union |= s
        if rank(union) < bin(mask).count("1"):
            return False
    return True


def independent_transversal(sets: Sequence[F2Subset]) -> Optional[tuple[int, ...]]:
    """A linearly independent choice v_i in S_i, or None if none exists.

    A choice is kept only if the remaining sets still satisfy Rado's
    condition modulo the span chosen so far, so the search never backtracks.
    """
    if not sets:
        return ()
    n = sets[0].n
    if any(not s.members for s in sets):
        raise ValueError("every set must be nonempty")
    t = len(sets)
    if t > n or not _rado_holds([s.members for s in sets], []):
        return None
    choice: list[int] = []
    basis: list[int] = []
    for i in range(t):
        rest = [sets[j].members for j in range(i + 1, t)]
        for v in sorted(sets[i].members):
            if not _reduce(v, basis):
                continue
            trial = reduce_basis(basis + [v])
            if _rado_holds(rest, trial):
                choice.append(v)
                basis = trial
                break
        else:
            raise AssertionError("Rado condition held but no extension was found")
    return tuple(choice)


def find_subspace_sum(sets: Sequence[F2Subset]) -> Optional[tuple[tuple[int, ...], F2Subset]]:
    """(J, sum_{j in J} S_j) with the sum a nontrivial subspace, when every
    transversal is dependent; None when an independent transversal exists.

    J holds 0-based indices, searched by increasing size then lexicographically.
    """
    for s in sets:
        if 0 not in s.members or len(s) < 2:
            raise ValueError("each set must contain 0 and have at least two elements")
    if independent_transversal(sets) is not None:
        return None
    for size in range(1, len(sets) + 1):
        for J in combinations(range(len(sets)), size):
            total = minkowski_sum([sets[j] for j in J])
            if len(total) > 1 and is_subspace(total):
                return J, total
    raise AssertionError("dependent family without a subspace sum")


def sharp_example(n: int) -> tuple[list[F2Subset], int]:
    """n-1 copies of {0, e_1, ..., e_n}; their sum misses exactly e_1 + ... + e_n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    S = F2Subset(n, [0] + [e(i) for i in range(1, n + 1)])
    v = (1 << n) - 1
    sets = [S] * (n - 1)
    total = minkowski_sum(sets, n)
    if total.members != complement_of_point(n, v).members:
        raise AssertionError(f"sharp example failed for n = {n}")
    return sets, v


def verify_sharp_bound(sets: Sequence[F2Subset], v: int, n: Optional[int] = None) -> bool:
    """False only if the sum is F_2^n minus {v} with more than n-1 summands."""
    if any(len(s) < 2 for s in sets):
        raise ValueError("every set needs at least two elements")
    n = sets[0].n if sets else n
    if n is None:
        raise ValueError("dimension needed for an empty family")
    total = minkowski_sum(list(sets), n)
    if len(total) == (1 << n) - 1 and v not in total.members:
        return len(sets) <= n - 1
    return True
