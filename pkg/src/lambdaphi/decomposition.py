"""Large/small prime decomposition of log(lambda(phi(n)) / lambda(lambda(n))).

The exact log-ratio splits over primes q into a part with q above a cutoff
Y and a part below it.  This module computes the cutoff parameters, the
small-prime multiplicity sums (the excess sum g, its additive proxy g0 and
the two-level chain sum h), the divisibility case trees that classify how
an odd prime q gets into lambda(lambda(n)) or lambda(phi(n)), and the
exceptional set of n carrying a square q**2 (q > Y) in n or in some p - 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .arith import ExactLog, compose, euler_phi
from .factorint import SpfTable, cached_parts, factorize

# x must exceed e**e for y = loglog x > 1; psi-scaled statistics need the
# next level up so that logloglog x >= 1.
E_E = math.exp(math.e)
E_E_E = math.exp(math.exp(math.e))

PSI_CHOICES = ("sqrt-log3", "cbrt-log3", "one")


@dataclass(frozen=True)
class ScaleParams:
    """Scale parameters for a range bound x.

    y = loglog x, Y = 3*c*y (c the Brun-Titchmarsh constant), Z = y**2,
    psi the configured slowly growing function evaluated at x.  Y >= 2*c*y
    always holds because Y = 3*c*y with c > 0.
    """

    x: float
    c: float
    y: float
    Y: float
    Z: float
    psi: float
    psi_choice: str


def scale_params(x: float, c: float = 2.0, psi_choice: str = "sqrt-log3") -> ScaleParams:
    if x <= E_E:
        raise ValueError(f"x must exceed e**e = {E_E:.6f}, got {x}")
    if c <= 0:
        raise ValueError(f"c must be positive, got {c}")
    if psi_choice not in PSI_CHOICES:
        raise ValueError(f"psi_choice {psi_choice!r} not in {PSI_CHOICES}")
    y = math.log(math.log(x))
    log3 = math.log(y)  # > 0 since y > 1
    if psi_choice == "sqrt-log3":
        psi = math.sqrt(log3)
    elif psi_choice == "cbrt-log3":
        psi = log3 ** (1.0 / 3.0)
    else:
        psi = 1.0
    return ScaleParams(x=float(x), c=float(c), y=y, Y=3.0 * c * y, Z=y * y, psi=psi, psi_choice=psi_choice)


def small_primes(params: ScaleParams, table: SpfTable) -> list[int]:
    """Primes q <= Y, the "small" primes of the decomposition (memoized)."""
    key = ("small_primes", params.Y)
    cached = table.memo.get(key)
    if cached is None:
        primes = table.primes()
        cached = [int(q) for q in primes[primes <= params.Y]]
        table.memo[key] = cached
    return cached


def _pred_parts(p: int, table: SpfTable) -> tuple[tuple[int, int], ...]:
    # factorization of p - 1, memoized (hot in the chain computations)
    return cached_parts(p - 1, table) if p > 1 else ()


def small_prime_excess(n: int, params: ScaleParams, table: SpfTable) -> ExactLog:
    """Excess multiplicity of the small primes in phi(n).

    Term at q is nu_q(phi(n)) - 1 whenever q <= Y divides phi(n) at least
    twice; equivalently one log q for every alpha >= 1 with q**(alpha+1)
    dividing phi(n).
    """
    phi_n = euler_phi(factorize(n, table))
    terms = {}
    for q, a in cached_parts(phi_n, table):
        if q <= params.Y and a >= 2:
            terms[q] = a - 1
    return ExactLog(terms)


def small_prime_additive(n: int, params: ScaleParams, table: SpfTable) -> ExactLog:
    """Additive proxy for the excess sum: sum over primes p | n of nu_q(p-1).

    Depends only on the distinct prime divisors of n, so it is additive
    over coprime parts and constant on prime powers.
    """
    terms: dict[int, int] = {}
    for p in factorize(n, table).distinct_primes():
        for q, a in _pred_parts(p, table):
            if q <= params.Y:
                terms[q] = terms.get(q, 0) + a
    return ExactLog(terms)


def has_progression_chain(r: int, q: int, alpha: int, table: SpfTable) -> bool:
    """True iff some prime p = 1 (mod q**alpha) divides r - 1.

    This is membership of r in the two-level chain set for q**alpha: there
    is a prime p with q**alpha | p - 1 and p | r - 1.
    """
    if r > table.limit:
        raise ValueError(f"r={r} exceeds table limit {table.limit}")
    if r < 2:
        return False
    qa = q**alpha
    return any((p - 1) % qa == 0 for p, _ in _pred_parts(r, table))


def chain_depth_sum(n: int, params: ScaleParams, table: SpfTable) -> ExactLog:
    """Chain sum: term at q counts the alpha >= 1 whose chain set meets n.

    r belongs to the chain set at level alpha iff some prime p | r - 1 has
    q**alpha | p - 1, so the count of good alpha is the maximum of
    nu_q(p - 1) over chains p | r - 1, r | n.  Each q is counted once per
    level, never per witness.
    """
    best: dict[int, int] = {}
    qs = small_primes(params, table)
    if not qs:
        return ExactLog()
    for r in factorize(n, table).distinct_primes():
        for p, _ in _pred_parts(r, table):
            m = p - 1
            for q in qs:
                if m % q == 0:
                    a = 0
                    mm = m
                    while mm % q == 0:
                        mm //= q
                        a += 1
                    if a > best.get(q, 0):
                        best[q] = a
    return ExactLog(best)


def in_exceptional_set(n: int, Y: float, table: SpfTable) -> bool:
    """True iff some prime q > Y has q**2 | n or q**2 | p - 1 for a prime p | n."""
    f = factorize(n, table)
    for p, a in f.parts:
        if a >= 2 and p > Y:
            return True
    for p in f.distinct_primes():
        for q, a in _pred_parts(p, table):
            if a >= 2 and q > Y:
                return True
    return False


# ---------------------------------------------------------------------------
# Divisibility case trees for odd primes q.
# ---------------------------------------------------------------------------


class LambdaLambdaCases(NamedTuple):
    """Leaf flags for q | lambda(lambda(n)), odd q.

    cube:                q**3 | n
    square_progression:  some prime p = 1 (mod q**2) divides n
    progression_square:  some prime p = 1 (mod q) has p**2 | n
    chain:               some prime r | n has a prime p | r - 1 with p = 1 (mod q)
    """

    cube: bool
    square_progression: bool
    progression_square: bool
    chain: bool

    def any_leaf(self) -> bool:
        return self.cube or self.square_progression or self.progression_square or self.chain


class LambdaPhiCases(NamedTuple):
    """Leaf flags for q | lambda(phi(n)), odd q; six leaves.

    Shares cube / square_progression / progression_square / chain with the
    four-leaf classifier and adds:
    two_progression_primes:  distinct primes p1 != p2, both = 1 (mod q), p1*p2 | n
    square_and_progression:  q**2 | n and some prime p = 1 (mod q) divides n
    """

    cube: bool
    two_progression_primes: bool
    square_and_progression: bool
    square_progression: bool
    progression_square: bool
    chain: bool

    def any_leaf(self) -> bool:
        return (
            self.cube
            or self.two_progression_primes
            or self.square_and_progression
            or self.square_progression
            or self.progression_square
            or self.chain
        )


def _require_odd_prime(q: int, table: SpfTable) -> None:
    if q == 2:
        raise ValueError(
            "q=2 is not supported by the case trees (lambda(2**a) = 2**(a-2) "
            "for a >= 3 changes the branches); the exact multiplicity sums "
            "handle q=2 instead"
        )
    if not table.is_prime(q):
        raise ValueError(f"q={q} is not prime")


def _case_ingredients(n: int, q: int, table: SpfTable):
    parts = cached_parts(n, table)
    qq = q * q
    nu_q_n = 0
    progression_count = 0
    progression_square = False
    square_progression = False
    chain = False
    for p, a in parts:
        if p == q:
            nu_q_n = a
            continue
        if (p - 1) % q == 0:
            progression_count += 1
            if a >= 2:
                progression_square = True
            if (p - 1) % qq == 0:
                square_progression = True
        if not chain:
            for t, _ in _pred_parts(p, table):
                if (t - 1) % q == 0:
                    chain = True
                    break
    return nu_q_n, progression_count, progression_square, square_progression, chain


def lambda_lambda_cases(n: int, q: int, table: SpfTable) -> LambdaLambdaCases:
    """Evaluate the four leaves for q | lambda(lambda(n)) by direct search."""
    _require_odd_prime(q, table)
    nu_q_n, _, prog_sq, sq_prog, chain = _case_ingredients(n, q, table)
    return LambdaLambdaCases(
        cube=nu_q_n >= 3,
        square_progression=sq_prog,
        progression_square=prog_sq,
        chain=chain,
    )


def lambda_phi_cases(n: int, q: int, table: SpfTable) -> LambdaPhiCases:
    """Evaluate the six leaves for q | lambda(phi(n)) by direct search."""
    _require_odd_prime(q, table)
    nu_q_n, prog_count, prog_sq, sq_prog, chain = _case_ingredients(n, q, table)
    return LambdaPhiCases(
        cube=nu_q_n >= 3,
        two_progression_primes=prog_count >= 2,
        square_and_progression=nu_q_n >= 2 and prog_count >= 1,
        square_progression=sq_prog,
        progression_square=prog_sq,
        chain=chain,
    )


# ---------------------------------------------------------------------------
# Per-n decomposition rows.
# ---------------------------------------------------------------------------

ROW_COLUMNS = ("n", "large_sum", "small_lambda_lambda", "g", "g0", "h", "in_S")


@dataclass
class DecompositionRow:
    """All split quantities for one n.

    large_sum is the q > Y part of the exact log-ratio (difference of
    multiplicities), small_lambda_lambda the q <= Y multiplicity sum of
    lambda(lambda(n)); g, g0, h are the small-prime sums.  Reassembly:
    large_sum + (q <= Y part of lambda(phi(n))) - small_lambda_lambda
    equals the full log-ratio, exactly, in integer exponents.
    """

    n: int
    large_sum: ExactLog
    small_lambda_lambda: ExactLog
    g: ExactLog
    g0: ExactLog
    h: ExactLog
    in_S: bool

    def csv_line(self) -> str:
        vals = (
            self.large_sum.real_value(),
            self.small_lambda_lambda.real_value(),
            self.g.real_value(),
            self.g0.real_value(),
            self.h.real_value(),
        )
        nums = ",".join(f"{v:.12g}" for v in vals)
        return f"{self.n},{nums},{int(self.in_S)}"


def split_sums(n: int, params: ScaleParams, table: SpfTable) -> DecompositionRow:
    """Populate a DecompositionRow for n; reassembly is exact by construction."""
    lam_phi = compose(n, "lambda", "phi", table)
    lam_lam = compose(n, "lambda", "lambda", table)
    el_phi = ExactLog(dict(cached_parts(lam_phi, table)))
    el_lam = ExactLog(dict(cached_parts(lam_lam, table)))
    diff = el_phi - el_lam
    return DecompositionRow(
        n=n,
        large_sum=diff.restrict(lo=params.Y),
        small_lambda_lambda=el_lam.restrict(hi=params.Y),
        g=small_prime_excess(n, params, table),
        g0=small_prime_additive(n, params, table),
        h=chain_depth_sum(n, params, table),
        in_S=in_exceptional_set(n, params.Y, table),
    )


def small_lambda_phi_part(n: int, params: ScaleParams, table: SpfTable) -> ExactLog:
    """q <= Y multiplicity sum of lambda(phi(n)), the counterpart of
    small_lambda_lambda in the reassembly identity."""
    lam_phi = compose(n, "lambda", "phi", table)
    return ExactLog(dict(cached_parts(lam_phi, table))).restrict(hi=params.Y)


def small_prime_additive_sieve(x: int, params: ScaleParams, table: SpfTable) -> np.ndarray:
    """Batch g0 values for all 0 <= n <= x (float64; indices 0 and 1 are 0).

    Additive sieve: each prime r <= x carries weight
    sum over q <= Y of nu_q(r-1) log q, added to every multiple of r.
    """
    if x > table.limit:
        raise ValueError(f"x={x} exceeds table limit {table.limit}")
    primes = table.primes()
    primes = primes[primes <= x]
    qs = small_primes(params, table)
    weights = np.zeros(primes.size, dtype=np.float64)
    pm1 = primes - 1
    for q in qs:
        v = np.zeros(primes.size, dtype=np.int64)
        m = pm1.copy()
        while True:
            mask = m % q == 0
            mask &= m > 0
            if not mask.any():
                break
            v[mask] += 1
            m[mask] //= q
        weights += v * math.log(q)
    out = np.zeros(x + 1, dtype=np.float64)
    for i in range(primes.size):
        w = weights[i]
        if w:
            r = int(primes[i])
            out[r::r] += w
    return out
