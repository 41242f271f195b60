"""Numerical-semigroup arithmetic: membership, representations, Frobenius numbers.

Everything here is a pure function of (value, generator tuple).  Membership
tables grow on demand and are memoized per generator tuple; the cache is a
plain dict whose reads and inserts are atomic under the GIL, so concurrent
scans can share it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .seqcore import GeneratorSequence

GensLike = GeneratorSequence | Sequence[int]


def _entries(gens: GensLike) -> tuple[int, ...]:
    if isinstance(gens, GeneratorSequence):
        return gens.gens
    return tuple(gens)


@dataclass(frozen=True)
class Representation:
    """Non-negative coefficients with sum(c * g) == target over the given gens."""

    coefficients: tuple[int, ...]
    target: int
    gens: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        object.__setattr__(self, "gens", tuple(self.gens))

    def is_valid(self) -> bool:
        if len(self.coefficients) != len(self.gens):
            return False
        if any(c < 0 for c in self.coefficients):
            return False
        return sum(c * g for c, g in zip(self.coefficients, self.gens)) == self.target

    @property
    def coefficient_sum(self) -> int:
        return sum(self.coefficients)


# membership tables, keyed by generator tuple; grown on demand.  A grown
# table is always built completely before being published, so concurrent
# readers only ever see finished snapshots (stale ones at worst).
_MEMBER_TABLES: dict[tuple[int, ...], bytearray] = {}


def _member_table(gens: tuple[int, ...], upto: int) -> bytearray:
    table = _MEMBER_TABLES.get(gens)
    if table is not None and len(table) > upto:
        return table
    old_len = len(table) if table is not None else 0
    size = max(upto + 1, 2 * old_len, 16)
    new = bytearray(size)
    if table is not None:
        new[:old_len] = table
    new[0] = 1
    for v in range(max(old_len, 1), size):
        for g in gens:
            if g <= v and new[v - g]:
                new[v] = 1
                break
    _MEMBER_TABLES[gens] = new
    return new


def is_member(b: int, gens: GensLike) -> bool:
    """True iff b is a non-negative integer combination of the generators."""
    if b < 0:
        raise ValueError(f"membership target must be non-negative, got {b}")
    if b == 0:
        return True
    return _member_table(_entries(gens), b)[b] == 1


def _min_coefficient_sum(b: int, gens: tuple[int, ...]) -> int | None:
    """Fewest generators (with repetition) summing to b; None if not a member."""
    INF = b + 2
    dp = [INF] * (b + 1)
    dp[0] = 0
    for v in range(1, b + 1):
        best = INF
        for g in gens:
            if g <= v and dp[v - g] + 1 < best:
                best = dp[v - g] + 1
        dp[v] = best
    return None if dp[b] >= INF else dp[b]


def _lex_smallest_with_sum(
    b: int, gens: tuple[int, ...], total: int
) -> tuple[int, ...] | None:
    """Lexicographically smallest coefficient vector with exact coefficient sum.

    feas[i][v] is a bitmask whose bit t is set iff value v is representable
    over gens[i:] using exactly t generators.  Reconstruction then greedily
    minimizes each coefficient from the left.
    """
    if total < 0:
        return None
    n = len(gens)
    full = (1 << (total + 1)) - 1
    nxt = [0] * (b + 1)
    nxt[0] = 1
    rows: list[list[int]] = [nxt]
    for i in range(n - 1, -1, -1):
        g = gens[i]
        row = [0] * (b + 1)
        for v in range(b + 1):
            acc = 0
            vv = v
            t = 0
            while vv >= 0 and t <= total:
                acc |= nxt[vv] << t
                vv -= g
                t += 1
            row[v] = acc & full
        rows.append(row)
        nxt = row
    rows.reverse()  # rows[i] now serves gens[i:]
    if not (rows[0][b] >> total) & 1:
        return None
    coeffs = []
    v, s = b, total
    for i in range(n):
        g = gens[i]
        for t in range(s + 1):
            rem = v - t * g
            if rem < 0:
                break
            if (rows[i + 1][rem] >> (s - t)) & 1:
                coeffs.append(t)
                v, s = rem, s - t
                break
        else:
            return None  # unreachable if the feasibility test passed
    return tuple(coeffs)


def find_representation(b: int, gens: GensLike) -> Representation | None:
    """A representation of b minimizing the coefficient sum.

    Ties are broken by the lexicographically smallest coefficient vector,
    so results are reproducible across runs.
    """
    if b < 0:
        raise ValueError(f"representation target must be non-negative, got {b}")
    entries = _entries(gens)
    total = _min_coefficient_sum(b, entries)
    if total is None:
        return None
    coeffs = _lex_smallest_with_sum(b, entries, total)
    assert coeffs is not None
    return Representation(coeffs, b, entries)


def find_representation_with_sum(
    b: int, gens: GensLike, total: int
) -> Representation | None:
    """A representation of b whose coefficients sum to exactly `total`."""
    if b < 0:
        raise ValueError(f"representation target must be non-negative, got {b}")
    entries = _entries(gens)
    coeffs = _lex_smallest_with_sum(b, entries, total)
    if coeffs is None:
        return None
    return Representation(coeffs, b, entries)


def frobenius(gens: GensLike) -> int:
    """Largest integer outside the semigroup; -1 when 1 is a generator.

    Detected as the value just below the first run of min(gens) consecutive
    members, after which every larger integer is reachable by adding the
    smallest generator.
    """
    entries = _entries(gens)
    d = 0
    for g in entries:
        d = gcd(d, g)
    if d != 1:
        raise ValueError(f"frobenius number undefined: gcd({entries}) = {d}")
    g0 = entries[0]
    # Schur-type bound: the complement never reaches min*max
    hard_stop = g0 * entries[-1] + g0 + 1
    table = _member_table(entries, hard_stop)
    run = 0
    for v in range(hard_stop + 1):
        if table[v]:
            run += 1
            if run == g0:
                return v - g0
        else:
            run = 0
    raise AssertionError(f"no member run found below {hard_stop} for {entries}")


def divisors(n: int) -> tuple[int, ...]:
    """All positive divisors of n, ascending."""
    if n < 1:
        raise ValueError(f"divisors of non-positive {n}")
    small = []
    large = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])
