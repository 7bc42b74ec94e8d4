"""Numerical side of the analytic inputs: Mertens sums, prime-sum bound
ratios, the lambda-defect constant, Brun-Titchmarsh ratios, and the
Turan-Kubilius moments of the additive small-prime sum.

Infinite sums are bracketed by a finite partial sum plus an explicit
integral tail bound, so every enclosure is honest rather than a floating
guess.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import e, exp, log

import numpy as np

from .decomposition import ScaleParams, small_prime_additive_sieve, small_primes
from .factorint import SpfTable, factorize
from .arith import euler_phi

# Printed reference value of the lambda-defect constant
# A = -1 + sum over primes q of log(q) / (q-1)**2 (Erdos-Pomerance-Schmutz).
EPS_REFERENCE = 0.2269688

EPS_SUMMAND_NOTE = (
    "summand log(q)/(q-1)**2; the sometimes-quoted q/(q-1)**2 diverges and "
    "does not match the reference value 0.2269688"
)


@dataclass(frozen=True)
class Bracket:
    """Rigorous enclosure lower <= target <= upper from terms_used terms."""

    lower: float
    upper: float
    terms_used: int

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, v: float) -> bool:
        return self.lower <= v <= self.upper


@dataclass(frozen=True)
class MomentPair:
    """First and second Turan-Kubilius moments (A(x), B(x)**2)."""

    first: float
    second: float


def mertens_sum(z: float, table: SpfTable) -> float:
    """sum over primes p <= z of log(p)/p, exact over the sieved primes."""
    if z < 2 or z > table.limit:
        raise ValueError(f"z must lie in [2, {table.limit}], got {z}")
    p = table.primes()
    p = p[p <= z].astype(np.float64)
    return float(np.sum(np.log(p) / p))


def prime_sum_ratios(z_values, table: SpfTable) -> list[dict]:
    """Finite versions of the five standard prime-sum bounds.

    For each z, reports each sum together with its ratio to the claimed
    bound shape; the two tail sums are truncated at the table limit and
    carry an explicit integral remainder bound (monotone comparison with
    the integral of the summand over [limit, oo)), which is added before
    forming the ratio.  Ratios should stay bounded across any z grid.
    """
    primes = table.primes().astype(np.float64)
    logs = np.log(primes)
    limit = table.limit
    records = []
    for z in z_values:
        z = float(z)
        if z < 2 or z > limit:
            raise ValueError(f"z must lie in [2, {limit}], got {z}")
        head = primes <= z
        ph, lh = primes[head], logs[head]
        pt, lt = primes[~head], logs[~head]
        lz = log(z)
        theta = float(np.sum(lh))
        m1 = float(np.sum(lh / ph))
        m2 = float(np.sum(lh * lh / ph))
        tail_lp = float(np.sum(lt / (pt * pt)))
        tail_inv = float(np.sum(1.0 / (pt * pt)))
        # integral remainders for the part beyond the sieve limit
        rem_lp = (log(limit) + 1.0) / limit
        rem_inv = 1.0 / limit
        records.extend(
            [
                {"name": "theta", "z": z, "value": theta, "tail_bound": 0.0, "ratio": theta / z},
                {"name": "mertens", "z": z, "value": m1, "tail_bound": 0.0, "ratio": m1 / lz},
                {"name": "mertens_square", "z": z, "value": m2, "tail_bound": 0.0, "ratio": m2 / (lz * lz)},
                {
                    "name": "tail_log_over_square",
                    "z": z,
                    "value": tail_lp,
                    "tail_bound": rem_lp,
                    "ratio": (tail_lp + rem_lp) * z,
                },
                {
                    "name": "tail_inverse_square",
                    "z": z,
                    "value": tail_inv,
                    "tail_bound": rem_inv,
                    "ratio": (tail_inv + rem_inv) * z * lz,
                },
            ]
        )
    return records


def eps_constant(prime_limit: int, table: SpfTable) -> Bracket:
    """Bracket -1 + sum over primes q of log(q)/(q-1)**2.

    Lower bound: the partial sum over q <= prime_limit.  Upper bound adds
    the integral tail bound

        sum_{q > P} log(q)/(q-1)**2  <=  integral_P^oo log(t)/(t-1)**2 dt
                                      =  log(P)/(P-1) + log(P/(P-1)),

    valid because the integrand decreases for t >= 2 and primes are a
    subset of the integers above P.
    """
    if prime_limit < 2 or prime_limit > table.limit:
        raise ValueError(f"prime_limit must lie in [2, {table.limit}], got {prime_limit}")
    qs = table.primes()
    qs = qs[qs <= prime_limit].astype(np.float64)
    partial = float(np.sum(np.log(qs) / (qs - 1.0) ** 2))
    P = float(prime_limit)
    tail = log(P) / (P - 1.0) + log(P / (P - 1.0))
    return Bracket(lower=partial - 1.0, upper=partial - 1.0 + tail, terms_used=int(qs.size))


def brun_titchmarsh_ratio(z: float, moduli, table: SpfTable) -> float:
    """Empirical lower estimate for the Brun-Titchmarsh constant c.

    Max over the given moduli n of phi(n) * sum_{p <= z, p = 1 mod n} 1/p
    divided by loglog z.
    """
    if z <= exp(e):
        raise ValueError(f"z must exceed e**e = {exp(e):.4f}, got {z}")
    if z > table.limit:
        raise ValueError(f"z={z} exceeds table limit {table.limit}")
    primes = table.primes()
    primes = primes[primes <= z]
    llz = log(log(z))
    best = 0.0
    for m in moduli:
        if m < 1:
            raise ValueError(f"modulus must be >= 1, got {m}")
        sel = primes[(primes - 1) % m == 0].astype(np.float64)
        s = float(np.sum(1.0 / sel)) if sel.size else 0.0
        best = max(best, euler_phi(factorize(m, table)) * s / llz)
    return best


def _prime_weights(x: int, params: ScaleParams, table: SpfTable):
    """(primes <= x, additive weight of each prime) for the g0 moments."""
    primes = table.primes()
    primes = primes[primes <= x]
    qs = small_primes(params, table)
    w = np.zeros(primes.size, dtype=np.float64)
    pm1 = primes - 1
    for q in qs:
        v = np.zeros(primes.size, dtype=np.int64)
        m = pm1.copy()
        while True:
            mask = m % q == 0
            if not mask.any():
                break
            v[mask] += 1
            m[mask] //= q
        w += v * log(q)
    return primes, w


def turan_kubilius_moments(x: int, params: ScaleParams, table: SpfTable) -> MomentPair:
    """Exact finite moments of the additive small-prime sum g0.

    first  = sum over primes r <= x of g0(r)/r
    second = sum over prime powers r**k <= x of g0(r**k)**2 / r**k
    using g0(r**k) = g0(r).
    """
    if x > table.limit:
        raise ValueError(f"x={x} exceeds table limit {table.limit}")
    primes, w = _prime_weights(x, params, table)
    if primes.size == 0:
        return MomentPair(0.0, 0.0)
    pf = primes.astype(np.float64)
    first = float(np.sum(w / pf))
    # geometric factor sum_{k >= 1, r**k <= x} r**-k; only r <= sqrt(x)
    # have more than one term
    geo = 1.0 / pf
    small_mask = primes * primes <= x
    for i in np.flatnonzero(small_mask):
        r = int(primes[i])
        rk, s = r * r, 0.0
        while rk <= x:
            s += 1.0 / rk
            rk *= r
        geo[i] += s
    second = float(np.sum(w * w * geo))
    return MomentPair(first=first, second=second)


def turan_kubilius_ratio(x: int, params: ScaleParams, table: SpfTable) -> float:
    """Measured variance ratio sum_{n<=x} |g0(n) - A(x)|**2 / (x * B(x)**2).

    Should stay below an absolute constant for every x; returns 0.0 in the
    degenerate case of no primes q <= Y (g0 identically zero).
    """
    moments = turan_kubilius_moments(x, params, table)
    if moments.second == 0.0:
        return 0.0
    g0 = small_prime_additive_sieve(x, params, table)
    num = float(np.sum((g0[1:] - moments.first) ** 2))
    return num / (x * moments.second)
