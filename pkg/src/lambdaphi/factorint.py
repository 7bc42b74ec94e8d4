"""Smallest-prime-factor sieve and exact factorization primitives.

Everything else in the package factors integers through the ``SpfTable``
built here: exact prime decompositions, prime-multiplicity queries, and
enumeration of primes in the progression 1 mod m.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt
from typing import NamedTuple

import numpy as np

SPF_MAGIC = b"SPF1"

# Witness set making Miller-Rabin deterministic for every 64-bit integer.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class Factorization(NamedTuple):
    """Prime-power decomposition with strictly increasing primes.

    ``value == prod(p**a for p, a in parts)``; ``value == 1`` iff ``parts``
    is empty.
    """

    value: int
    parts: tuple[tuple[int, int], ...]

    def reassemble(self) -> int:
        out = 1
        for p, a in self.parts:
            out *= p**a
        return out

    def distinct_primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.parts)

    def exponent_of(self, q: int) -> int:
        for p, a in self.parts:
            if p == q:
                return a
        return 0


@dataclass
class SpfTable:
    """Smallest prime factor of every integer in [2, limit].

    ``spf[n]`` is the least prime dividing n, so ``spf[n] == n`` exactly for
    primes.  Entries are uint32; limits up to 2**32 - 1 are representable.
    The array is immutable after construction and safe to share across
    threads.  ``memo`` holds derived caches (prime list, batch phi/lambda
    arrays, factorization memos) keyed by name; it is an optimization only
    and never changes results.
    """

    limit: int
    spf: np.ndarray
    memo: dict = field(default_factory=dict, repr=False, compare=False)

    def primes(self) -> np.ndarray:
        """Ascending int64 array of all primes <= limit."""
        cached = self.memo.get("primes")
        if cached is None:
            mask = self.spf == np.arange(self.spf.size, dtype=np.int64)
            mask[:2] = False
            cached = np.flatnonzero(mask)
            self.memo["primes"] = cached
        return cached

    def is_prime(self, n: int) -> bool:
        if n < 2:
            return False
        if n <= self.limit:
            return int(self.spf[n]) == n
        return is_prime_u64(n)


def build_spf_table(limit: int, memory_budget: int | None = None) -> SpfTable:
    """Sieve the smallest-prime-factor table for [2, limit].

    Construction is deterministic: composites are marked in increasing
    order of their smallest prime factor, entries left unmarked are prime.
    ``memory_budget`` (bytes), when given, rejects tables that would not
    fit rather than letting the allocation die.
    """
    if limit < 2:
        raise ValueError(f"limit must be >= 2, got {limit}")
    if limit > 2**32 - 1:
        raise ValueError(f"limit {limit} exceeds uint32 entry range")
    needed = 4 * (limit + 1)
    if memory_budget is not None and needed > memory_budget:
        raise MemoryError(
            f"spf table for limit {limit} needs {needed} bytes, "
            f"budget is {memory_budget}"
        )
    spf = np.zeros(limit + 1, dtype=np.uint32)
    spf[1] = 1
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    # everything still unmarked has no prime factor <= sqrt(limit): prime
    idx = np.flatnonzero(spf == 0)
    spf[idx] = idx
    spf[0] = 0
    return SpfTable(limit=limit, spf=spf)


def save_spf_table(table: SpfTable, path) -> None:
    """Binary dump: magic "SPF1", little-endian uint64 limit, raw entries."""
    arr = np.ascontiguousarray(table.spf, dtype="<u4")
    with open(path, "wb") as fh:
        fh.write(SPF_MAGIC)
        fh.write(np.array([table.limit], dtype="<u8").tobytes())
        fh.write(arr.tobytes())


def load_spf_table(path) -> SpfTable:
    """Load a table written by save_spf_table; round-trip is bit-exact."""
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != SPF_MAGIC:
            raise ValueError(f"bad magic {magic!r}, expected {SPF_MAGIC!r}")
        limit = int(np.frombuffer(fh.read(8), dtype="<u8")[0])
        data = fh.read()
    spf = np.frombuffer(data, dtype="<u4")
    if spf.size != limit + 1:
        raise ValueError(f"truncated table: {spf.size} entries for limit {limit}")
    return SpfTable(limit=limit, spf=spf)


def is_prime_u64(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 2**64."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int, table: SpfTable) -> Factorization:
    """Exact prime decomposition of 1 <= n <= table.limit.

    factorize(1) is the empty product.  Parts come out with strictly
    increasing primes because division always strips the smallest factor.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > table.limit:
        raise ValueError(f"n={n} exceeds table limit {table.limit}")
    spf = table.spf
    parts = []
    m = n
    while m > 1:
        p = int(spf[m])
        a = 0
        while m % p == 0:
            m //= p
            a += 1
        parts.append((p, a))
    return Factorization(value=n, parts=tuple(parts))


def prime_multiplicity(q: int, n: int, table: SpfTable | None = None) -> int:
    """Largest a with q**a dividing n (0 when q does not divide n).

    q must be prime; it is checked against the table when in range, else
    with deterministic Miller-Rabin, so composites are rejected rather
    than silently accepted.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if table is not None and q <= table.limit:
        ok = table.is_prime(q)
    else:
        ok = is_prime_u64(q)
    if not ok:
        raise ValueError(f"q={q} is not prime")
    a = 0
    while n % q == 0:
        n //= q
        a += 1
    return a


def primes_in_progression(modulus: int, limit: int, table: SpfTable) -> np.ndarray:
    """All primes p <= limit with p = 1 (mod modulus), ascending."""
    if modulus < 1:
        raise ValueError(f"modulus must be >= 1, got {modulus}")
    if limit > table.limit:
        raise ValueError(f"limit {limit} exceeds table limit {table.limit}")
    p = table.primes()
    p = p[p <= limit]
    return p[(p - 1) % modulus == 0]


def progression_gcd(m: int, modulus: int, table: SpfTable) -> int:
    """Product of the distinct primes p | m with p = 1 (mod modulus), or 1."""
    out = 1
    for p in factorize(m, table).distinct_primes():
        if (p - 1) % modulus == 0:
            out *= p
    return out


def factor_cache(table: SpfTable) -> dict:
    """Shared memo of m -> tuple of (prime, exponent) parts, for hot loops."""
    return table.memo.setdefault("factor_parts", {})


_FACTOR_CACHE_CAP = 2_000_000


def cached_parts(m: int, table: SpfTable) -> tuple[tuple[int, int], ...]:
    cache = factor_cache(table)
    parts = cache.get(m)
    if parts is None:
        if len(cache) >= _FACTOR_CACHE_CAP:
            cache.clear()
        parts = factorize(m, table).parts
        cache[m] = parts
    return parts
