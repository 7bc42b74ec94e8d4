"""Exact phi / lambda arithmetic: compositions, iterates, exact logarithms.

All operations are pure functions of their inputs plus an immutable
``SpfTable``; batch sieves cache their arrays on the table's memo.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt, lcm, log

import numpy as np

from .factorint import Factorization, SpfTable, factorize

FUNCTION_TAGS = ("phi", "lambda")


class ExactLog:
    """Integer vector of prime exponents representing sum m_q * log(q).

    Holds the logarithm of a rational number prod q**m_q exactly; zero
    exponents are never stored.  Addition and subtraction are exact
    integer arithmetic, floating point enters only in real_value().
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {int(q): int(m) for q, m in (terms or {}).items() if m != 0}

    @classmethod
    def of_factorization(cls, f: Factorization) -> "ExactLog":
        return cls(dict(f.parts))

    @classmethod
    def of_ratio(cls, num: Factorization, den: Factorization) -> "ExactLog":
        return cls.of_factorization(num) - cls.of_factorization(den)

    def restrict(self, lo: float | None = None, hi: float | None = None) -> "ExactLog":
        """Terms with lo < q <= hi (either bound optional)."""
        out = {}
        for q, m in self.terms.items():
            if lo is not None and q <= lo:
                continue
            if hi is not None and q > hi:
                continue
            out[q] = m
        return ExactLog(out)

    def real_value(self) -> float:
        return sum(m * log(q) for q, m in sorted(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactLog) and self.terms == other.terms

    def __add__(self, other: "ExactLog") -> "ExactLog":
        out = dict(self.terms)
        for q, m in other.terms.items():
            out[q] = out.get(q, 0) + m
        return ExactLog(out)

    def __sub__(self, other: "ExactLog") -> "ExactLog":
        return self + (-other)

    def __neg__(self) -> "ExactLog":
        return ExactLog({q: -m for q, m in self.terms.items()})

    def __repr__(self) -> str:
        inner = ", ".join(f"{q}: {m:+d}" for q, m in sorted(self.terms.items()))
        return f"ExactLog({{{inner}}})"

    def symbolic(self) -> str:
        """Human-readable form like ``log(5)`` or ``2*log(2) - log(3)``."""
        if not self.terms:
            return "0"
        chunks = []
        for q, m in sorted(self.terms.items()):
            mag = abs(m)
            term = f"log({q})" if mag == 1 else f"{mag}*log({q})"
            if not chunks:
                chunks.append(term if m > 0 else f"-{term}")
            else:
                chunks.append(f"{'+' if m > 0 else '-'} {term}")
        return " ".join(chunks)


def euler_phi(f: Factorization) -> int:
    """Euler's totient from a factorization: prod p**(a-1) * (p-1)."""
    out = 1
    for p, a in f.parts:
        out *= p ** (a - 1) * (p - 1)
    return out


def lambda_prime_power(p: int, a: int) -> int:
    """Carmichael lambda of a prime power (the 2**(a-2) branch for p=2, a>=3)."""
    if p == 2:
        if a == 1:
            return 1
        if a == 2:
            return 2
        return 1 << (a - 2)
    return p ** (a - 1) * (p - 1)


def carmichael_lambda(f: Factorization) -> int:
    """Exponent of the multiplicative group mod f.value.

    lcm of the prime-power values; each lcm step reduces by gcd first
    (math.lcm) so every intermediate stays <= f.value.
    """
    out = 1
    for p, a in f.parts:
        out = lcm(out, lambda_prime_power(p, a))
    return out


def phi_value(n: int, table: SpfTable) -> int:
    return euler_phi(factorize(n, table))


def lambda_value(n: int, table: SpfTable) -> int:
    return carmichael_lambda(factorize(n, table))


def _apply(tag: str, n: int, table: SpfTable) -> int:
    if tag == "phi":
        return euler_phi(factorize(n, table))
    if tag == "lambda":
        return carmichael_lambda(factorize(n, table))
    raise ValueError(f"unknown function tag {tag!r}, expected one of {FUNCTION_TAGS}")


def compose(n: int, outer: str, inner: str, table: SpfTable) -> int:
    """outer(inner(n)); inner(n) <= n keeps the intermediate in range."""
    return _apply(outer, _apply(inner, n, table), table)


@dataclass(frozen=True)
class IterateSpec:
    """k-fold self-composition request: base in {phi, lambda, log}, depth >= 1."""

    base: str
    depth: int

    def __post_init__(self):
        if self.base not in ("phi", "lambda", "log"):
            raise ValueError(f"unknown iterate base {self.base!r}")
        if self.depth < 1:
            raise ValueError(f"depth must be >= 1, got {self.depth}")


def iterate(n: int, spec: IterateSpec, table: SpfTable) -> int:
    """k-fold application of phi or lambda; the sequence is nonincreasing.

    The log base is real-valued, not integer-valued: use iterated_log.
    """
    if spec.base == "log":
        raise ValueError("log iterates act on reals; use iterated_log(x, k)")
    m = n
    for _ in range(spec.depth):
        m = _apply(spec.base, m, table)
    return m


def iterated_log(x: float, k: int) -> float:
    """k-fold natural logarithm of a real x; each stage must stay positive."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    v = float(x)
    for _ in range(k):
        if v <= 0.0:
            raise ValueError(f"iterated log undefined: reached {v} before final level")
        v = log(v)
    return v


def log_ratio(n: int, table: SpfTable) -> ExactLog:
    """Exact log of lambda(phi(n)) / lambda(lambda(n)) as prime exponents.

    Computed from the two factorizations, never from floating logs, so
    downstream sums recombine exactly.
    """
    lam_phi = compose(n, "lambda", "phi", table)
    lam_lam = compose(n, "lambda", "lambda", table)
    return ExactLog.of_ratio(factorize(lam_phi, table), factorize(lam_lam, table))


# ---------------------------------------------------------------------------
# Batch sieves.  Values are exact; the arrays are cached on table.memo and
# shared by the experiment harness.
# ---------------------------------------------------------------------------


def _split_primes(table: SpfTable):
    primes = table.primes()
    sq = isqrt(table.limit)
    return primes[primes <= sq], primes[primes > sq]


def phi_sieve(table: SpfTable) -> np.ndarray:
    """int64 array with phi(n) at index n for 0 <= n <= limit (phi[0] = 0).

    Small primes are handled with strided slices, primes above sqrt(limit)
    through their cofactor k (each n <= limit has at most one such factor).
    """
    cached = table.memo.get("phi_sieve")
    if cached is not None:
        return cached
    limit = table.limit
    phi = np.arange(limit + 1, dtype=np.int64)
    small, large = _split_primes(table)
    for p in small:
        p = int(p)
        block = phi[p::p]
        block -= block // p
    if large.size:
        first = int(large[0])
        for k in range(1, limit // first + 1):
            sel = large[: np.searchsorted(large, limit // k, side="right")]
            if sel.size == 0:
                break
            m = sel * k
            phi[m] -= phi[m] // sel
    phi[0] = 0
    table.memo["phi_sieve"] = phi
    return phi


def carmichael_sieve(table: SpfTable) -> np.ndarray:
    """int64 array with lambda(n) at index n for 0 <= n <= limit (index 0 unused).

    lambda(n) is the lcm of lambda over the prime powers dividing n, and
    lambda(p**b) | lambda(p**a) for b <= a, so lcm-ing every prime power
    slice gives the exact value.
    """
    cached = table.memo.get("carmichael_sieve")
    if cached is not None:
        return cached
    limit = table.limit
    lam = np.ones(limit + 1, dtype=np.int64)
    small, large = _split_primes(table)
    for p in small:
        p = int(p)
        pa, a = p, 1
        while pa <= limit:
            block = lam[pa::pa]
            np.lcm(block, lambda_prime_power(p, a), out=block)
            a += 1
            pa *= p
    if large.size:
        first = int(large[0])
        for k in range(1, limit // first + 1):
            sel = large[: np.searchsorted(large, limit // k, side="right")]
            if sel.size == 0:
                break
            m = sel * k
            lam[m] = np.lcm(lam[m], sel - 1)
    lam[0] = 0
    table.memo["carmichael_sieve"] = lam
    return lam
