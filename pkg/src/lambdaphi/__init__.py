"""Exact Euler-phi / Carmichael-lambda arithmetic over sieved ranges, the
large/small prime decomposition of log(lambda(phi(n))/lambda(lambda(n))),
and empirical normal-order experiments at desk scale."""

from .factorint import (
    Factorization,
    SpfTable,
    build_spf_table,
    factorize,
    is_prime_u64,
    load_spf_table,
    prime_multiplicity,
    primes_in_progression,
    progression_gcd,
    save_spf_table,
)
from .arith import (
    ExactLog,
    IterateSpec,
    carmichael_lambda,
    carmichael_sieve,
    compose,
    euler_phi,
    iterate,
    iterated_log,
    lambda_prime_power,
    lambda_value,
    log_ratio,
    phi_sieve,
    phi_value,
)
from .decomposition import (
    DecompositionRow,
    LambdaLambdaCases,
    LambdaPhiCases,
    ScaleParams,
    chain_depth_sum,
    has_progression_chain,
    in_exceptional_set,
    lambda_lambda_cases,
    lambda_phi_cases,
    scale_params,
    small_prime_additive,
    small_prime_additive_sieve,
    small_prime_excess,
    split_sums,
)
from .constants import (
    Bracket,
    MomentPair,
    brun_titchmarsh_ratio,
    eps_constant,
    mertens_sum,
    prime_sum_ratios,
    turan_kubilius_moments,
    turan_kubilius_ratio,
)
from .harness import (
    DistributionEstimate,
    NormalOrderReport,
    blss_experiments,
    egps_experiment,
    harland_experiment,
    lemma3_count_check,
    mp_experiment,
    prop4_experiment,
    schoenberg_distribution,
    theorem1_experiment,
)

__version__ = "0.1.0"

__all__ = [
    "Factorization",
    "SpfTable",
    "build_spf_table",
    "factorize",
    "is_prime_u64",
    "load_spf_table",
    "prime_multiplicity",
    "primes_in_progression",
    "progression_gcd",
    "save_spf_table",
    "ExactLog",
    "IterateSpec",
    "carmichael_lambda",
    "carmichael_sieve",
    "compose",
    "euler_phi",
    "iterate",
    "iterated_log",
    "lambda_prime_power",
    "lambda_value",
    "log_ratio",
    "phi_sieve",
    "phi_value",
    "DecompositionRow",
    "LambdaLambdaCases",
    "LambdaPhiCases",
    "ScaleParams",
    "chain_depth_sum",
    "has_progression_chain",
    "in_exceptional_set",
    "lambda_lambda_cases",
    "lambda_phi_cases",
    "scale_params",
    "small_prime_additive",
    "small_prime_additive_sieve",
    "small_prime_excess",
    "split_sums",
    "Bracket",
    "MomentPair",
    "brun_titchmarsh_ratio",
    "eps_constant",
    "mertens_sum",
    "prime_sum_ratios",
    "turan_kubilius_moments",
    "turan_kubilius_ratio",
    "DistributionEstimate",
    "NormalOrderReport",
    "blss_experiments",
    "egps_experiment",
    "harland_experiment",
    "lemma3_count_check",
    "mp_experiment",
    "prop4_experiment",
    "schoenberg_distribution",
    "theorem1_experiment",
    "__version__",
]
