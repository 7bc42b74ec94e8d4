"""Independent brute-force oracles used to pin expected values.

Nothing here touches the package's sieves or formulas: factorization is
trial division, phi counts coprime residues, lambda scans the whole unit
group for the smallest annihilating exponent.
"""

from math import gcd, lcm

import numpy as np


def primes_upto(limit: int) -> list[int]:
    """Plain sieve of Eratosthenes (boolean array, no spf machinery)."""
    if limit < 2:
        return []
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(limit**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return [int(p) for p in np.flatnonzero(sieve)]


def trial_division_factor(n: int) -> list[tuple[int, int]]:
    parts = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            a = 0
            while m % d == 0:
                m //= d
                a += 1
            parts.append((d, a))
        d += 1
    if m > 1:
        parts.append((m, 1))
    return parts


def phi_brute(n: int) -> int:
    """Count residues 1 <= a <= n coprime to n."""
    if n == 1:
        return 1
    a = np.arange(1, n + 1, dtype=np.int64)
    return int(np.count_nonzero(np.gcd(a, n) == 1))


def _modpow_vec(base: np.ndarray, e: int, n: int) -> np.ndarray:
    r = np.ones_like(base)
    b = base % n
    while e:
        if e & 1:
            r = r * b % n
        b = b * b % n
        e >>= 1
    return r


def order_brute(a: int, n: int) -> int:
    """Multiplicative order of a mod n by repeated multiplication."""
    t, x = 1, a % n
    while x != 1:
        x = x * a % n
        t += 1
    return t


def lambda_brute(n: int) -> int:
    """Smallest m >= 1 with a**m = 1 (mod n) for every unit a.

    Scans the full unit group: grows m by the order of any unit it does
    not yet annihilate, so the result is the lcm of all element orders.
    """
    if n <= 2:
        return 1
    a = np.arange(1, n, dtype=np.int64)
    units = a[np.gcd(a, n) == 1]
    m = 1
    while True:
        bad = units[_modpow_vec(units, m, n) != 1]
        if bad.size == 0:
            return m
        m = lcm(m, order_brute(int(bad[0]), n))


def divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)
