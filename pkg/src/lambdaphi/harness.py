"""Batch experiments over n <= x: normal-order reports, exceedance curves,
exact count checks, and the empirical distribution of n/phi(n).

Conventions shared by every report: the normalizer must be positive for a
given n to be included (n <= e**e is excluded and counted), the headline
statistic is the median (the distributions are heavy-tailed), and
"almost all" style claims are rendered as threshold curves instead of a
single pass/fail cutoff.  All computations are sequential numpy over a
fixed partition, so identical inputs give byte-identical serialized
output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arith import carmichael_sieve, phi_sieve
from .decomposition import E_E, E_E_E, ScaleParams, split_sums
from .factorint import SpfTable

SCHEMA_VERSION = 1

# deviation thresholds for the "almost all" curves
EPSILON_GRID = (0.1, 0.25, 0.5, 1.0)
# exceedance multipliers for tail-bound style statistics
K_GRID = (0.0, 1.0, 2.0, 4.0, 8.0)

EULER_GAMMA = float(np.euler_gamma)


@dataclass
class NormalOrderReport:
    """Summary of f(n)/normalizer(n) over the included 3 <= n <= x.

    threshold_kind "deviation" means fractions[i] is the share of included
    n with |ratio - 1| > thresholds[i]; "exceedance" means the share with
    ratio > thresholds[i].  Either way the fractions are nonincreasing
    along the grid.  ``excluded`` counts 3 <= n <= x left out because the
    normalizer was not positive.
    """

    name: str
    x: int
    count: int
    excluded: int
    mean: float
    median: float
    stddev: float
    threshold_kind: str
    thresholds: tuple
    fractions: tuple
    extras: dict = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        out = {
            "schema_version": self.schema_version,
            "name": self.name,
            "x": self.x,
            "count": self.count,
            "excluded": self.excluded,
            "mean": self.mean,
            "median": self.median,
            "stddev": self.stddev,
            "threshold_kind": self.threshold_kind,
            "thresholds": list(self.thresholds),
            "fractions": list(self.fractions),
        }
        for k in sorted(self.extras):
            out[k] = self.extras[k]
        return out


@dataclass
class DistributionEstimate:
    """Empirical fractions #{n <= x : n/phi(n) >= t} / x on a t grid."""

    x: int
    t_grid: tuple
    values: tuple
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "name": "schoenberg",
            "x": self.x,
            "t_grid": list(self.t_grid),
            "values": list(self.values),
        }


def _check_x(x: int, table: SpfTable) -> None:
    if x < 3:
        raise ValueError(f"x must be >= 3, got {x}")
    if x > table.limit:
        raise ValueError(f"x={x} exceeds table limit {table.limit}")


def _loglogs(x: int):
    """(ll, lll) arrays for n = 3 .. x (index i holds n = i + 3)."""
    n = np.arange(3, x + 1, dtype=np.float64)
    ll = np.log(np.log(n))
    lll = np.log(ll)
    return ll, lll


def _report(name, x, ratio, *, kind="deviation", thresholds=EPSILON_GRID, excluded=0, extras=None):
    ratio = np.asarray(ratio, dtype=np.float64)
    if kind == "deviation":
        devs = np.abs(ratio - 1.0)
        fractions = tuple(float(np.mean(devs > t)) for t in thresholds)
    else:
        fractions = tuple(float(np.mean(ratio > t)) for t in thresholds)
    return NormalOrderReport(
        name=name,
        x=int(x),
        count=int(ratio.size),
        excluded=int(excluded),
        mean=float(np.mean(ratio)) if ratio.size else float("nan"),
        median=float(np.median(ratio)) if ratio.size else float("nan"),
        stddev=float(np.std(ratio)) if ratio.size else float("nan"),
        threshold_kind=kind,
        thresholds=tuple(float(t) for t in thresholds),
        fractions=fractions,
        extras=dict(extras or {}),
    )


def _normal_order(name, x, f, norm, extras=None):
    # f and norm are arrays over n = 3 .. x; include only positive normalizers
    mask = norm > 0
    ratio = f[mask] / norm[mask]
    excluded = int(f.size - ratio.size)
    return _report(name, x, ratio, excluded=excluded, extras=extras)


def theorem1_experiment(x: int, params: ScaleParams, table: SpfTable) -> NormalOrderReport:
    """log(lambda(phi(n)) / lambda(lambda(n))) against loglog n * logloglog n."""
    _check_x(x, table)
    phi = phi_sieve(table)
    lam = carmichael_sieve(table)
    idx = np.arange(3, x + 1)
    f = np.log(lam[phi[idx]].astype(np.float64) / lam[lam[idx]])
    ll, lll = _loglogs(x)
    extras = {"c": params.c, "psi_choice": params.psi_choice, "psi": params.psi}
    return _normal_order("theorem1", x, f, ll * lll, extras=extras)


def mp_experiment(x: int, table: SpfTable) -> NormalOrderReport:
    """log(n / lambda(lambda(n))) against (loglog n)**2 * logloglog n."""
    _check_x(x, table)
    lam = carmichael_sieve(table)
    idx = np.arange(3, x + 1)
    f = np.log(idx.astype(np.float64) / lam[lam[idx]])
    ll, lll = _loglogs(x)
    return _normal_order("mp", x, f, ll * ll * lll)


def blss_experiments(x: int, table: SpfTable) -> list[NormalOrderReport]:
    """The two composition statistics: log(n/phi(lambda(n))) against
    loglog n * logloglog n, and log(n/lambda(phi(n))) against
    (loglog n)**2 * logloglog n."""
    _check_x(x, table)
    phi = phi_sieve(table)
    lam = carmichael_sieve(table)
    idx = np.arange(3, x + 1)
    nf = idx.astype(np.float64)
    ll, lll = _loglogs(x)
    f_philam = np.log(nf / phi[lam[idx]])
    f_lamphi = np.log(nf / lam[phi[idx]])
    return [
        _normal_order("blss_philam", x, f_philam, ll * lll),
        _normal_order("blss_lamphi", x, f_lamphi, ll * ll * lll),
    ]


def harland_experiment(x: int, k: int, table: SpfTable) -> NormalOrderReport:
    """log(n / lambda_k(n)) against (loglog n)**k * logloglog n / (k-1)!."""
    _check_x(x, table)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    lam = carmichael_sieve(table)
    idx = np.arange(3, x + 1)
    cur = lam[idx]
    for _ in range(k - 1):
        cur = lam[cur]
    f = np.log(idx.astype(np.float64) / cur)
    ll, lll = _loglogs(x)
    norm = ll**k * lll / math.factorial(k - 1)
    extras = {"k": k, "degenerate_fraction": float(np.mean(cur == 1))}
    return _normal_order(f"harland_k{k}", x, f, norm, extras=extras)


def egps_experiment(x: int, k: int, table: SpfTable) -> NormalOrderReport:
    """phi_k(n) / phi_{k+1}(n) against k * e**gamma * logloglog n."""
    _check_x(x, table)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    phi = phi_sieve(table)
    idx = np.arange(3, x + 1)
    cur = phi[idx]
    for _ in range(k - 1):
        cur = phi[cur]
    nxt = phi[cur]
    f = cur.astype(np.float64) / nxt
    _, lll = _loglogs(x)
    norm = k * math.exp(EULER_GAMMA) * lll
    extras = {"k": k, "degenerate_fraction": float(np.mean(cur == 1))}
    return _normal_order(f"egps_k{k}", x, f, norm, extras=extras)


def prop4_experiment(x: int, params: ScaleParams, table: SpfTable) -> NormalOrderReport:
    """Small-prime multiplicity sum of lambda(lambda(n)) against y * psi(x).

    Exceedance curve: fraction of n with sum > K * y * psi(x) for K on the
    grid; the fractions must decay in K.  psi-scaled, so x must exceed
    e**(e**e).
    """
    if x <= E_E_E:
        raise ValueError(f"psi-scaled statistics need x > e**(e**e) = {E_E_E:.1f}, got {x}")
    _check_x(x, table)
    lam = carmichael_sieve(table)
    idx = np.arange(3, x + 1)
    lamlam = lam[lam[idx]]
    sums = np.zeros(lamlam.size, dtype=np.float64)
    primes = table.primes()
    for q in primes[primes <= params.Y]:
        q = int(q)
        v = np.zeros(lamlam.size, dtype=np.int64)
        m = lamlam.copy()
        while True:
            mask = m % q == 0
            if not mask.any():
                break
            v[mask] += 1
            m[mask] //= q
        sums += v * math.log(q)
    ratio = sums / (params.y * params.psi)
    extras = {"c": params.c, "psi_choice": params.psi_choice, "psi": params.psi, "y": params.y}
    return _report("prop4", x, ratio, kind="exceedance", thresholds=K_GRID, extras=extras)


def lemma3_count_check(x: int, q: int, a: int, table: SpfTable) -> tuple[int, float]:
    """Exact count of n <= x with q**a | lambda(lambda(n)), and the count
    normalized by x * y**2 / q**a (y = loglog x), which stays bounded."""
    _check_x(x, table)
    if x <= E_E:
        raise ValueError(f"x must exceed e**e = {E_E:.4f}, got {x}")
    lam = carmichael_sieve(table)
    idx = np.arange(1, x + 1)
    lamlam = lam[lam[idx]]
    qa = q**a
    count = int(np.count_nonzero(lamlam % qa == 0))
    y = math.log(math.log(x))
    return count, count * qa / (x * y * y)


def schoenberg_distribution(x: int, t_grid, table: SpfTable) -> DistributionEstimate:
    """Empirical distribution of n/phi(n) on the t grid over 1 <= n <= x."""
    _check_x(x, table)
    phi = phi_sieve(table)
    n = np.arange(1, x + 1, dtype=np.float64)
    r = n / phi[1 : x + 1]
    values = tuple(float(np.mean(r >= t)) for t in t_grid)
    return DistributionEstimate(x=int(x), t_grid=tuple(float(t) for t in t_grid), values=values)


# ---------------------------------------------------------------------------
# Per-n CSV dump.
# ---------------------------------------------------------------------------

PER_N_COLUMNS = (
    "n",
    "phi",
    "lambda",
    "lambda_phi",
    "lambda_lambda",
    "log_ratio",
    "g",
    "g0",
    "h",
    "in_S",
)


def per_n_rows(x: int, params: ScaleParams, table: SpfTable, block_size: int = 65536):
    """Yield CSV lines of the per-n dump (schema header first).

    Exact integer columns come from the batch sieves; the decomposition
    columns are evaluated per n.  Output is independent of block_size,
    which only controls how much is materialized at once.
    """
    _check_x(x, table)
    if block_size < 1:
        raise ValueError(f"block_size must be >= 1, got {block_size}")
    phi = phi_sieve(table)
    lam = carmichael_sieve(table)
    yield f"# schema_version={SCHEMA_VERSION} schema=per_n"
    yield ",".join(PER_N_COLUMNS)
    for start in range(1, x + 1, block_size):
        stop = min(start + block_size - 1, x)
        idx = np.arange(start, stop + 1)
        phin = phi[idx]
        lamn = lam[idx]
        lamphi = lam[phin]
        lamlam = lam[lamn]
        logratio = np.log(lamphi.astype(np.float64) / lamlam)
        for i, n in enumerate(idx):
            n = int(n)
            row = split_sums(n, params, table)
            yield (
                f"{n},{int(phin[i])},{int(lamn[i])},{int(lamphi[i])},{int(lamlam[i])},"
                f"{logratio[i]:.12g},{row.g.real_value():.12g},{row.g0.real_value():.12g},"
                f"{row.h.real_value():.12g},{int(row.in_S)}"
            )


def decomposition_rows(x: int, params: ScaleParams, table: SpfTable):
    """Yield CSV lines of DecompositionRow records (schema header first)."""
    _check_x(x, table)
    from .decomposition import ROW_COLUMNS

    yield f"# schema_version={SCHEMA_VERSION} schema=decomposition_rows"
    yield ",".join(ROW_COLUMNS)
    for n in range(1, x + 1):
        yield split_sums(n, params, table).csv_line()
