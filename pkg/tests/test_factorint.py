import numpy as np
import pytest

from lambdaphi import (
    build_spf_table,
    factorize,
    is_prime_u64,
    load_spf_table,
    prime_multiplicity,
    primes_in_progression,
    progression_gcd,
    save_spf_table,
)
from lambdaphi.factorint import SPF_MAGIC

from oracles import primes_upto, trial_division_factor


def test_spf_small_examples():
    t = build_spf_table(10)
    assert t.spf[4] == 2
    assert t.spf[9] == 3
    assert t.spf[7] == 7


def test_spf_trial_division_example():
    t = build_spf_table(100)
    assert t.spf[91] == 7
    assert trial_division_factor(91)[0][0] == 7


def test_spf_smallest_case():
    t = build_spf_table(2)
    assert t.limit == 2
    assert t.spf[2] == 2


def test_spf_invariants_exhaustive(table_small):
    primes = set(primes_upto(table_small.limit))
    spf = table_small.spf
    for n in range(2, table_small.limit + 1):
        p = int(spf[n])
        assert p in primes
        assert n % p == 0
        assert (p == n) == (n in primes)
        # smallest: no prime below p divides n
        for q in (2, 3, 5, 7):
            if q >= p:
                break
            assert n % q != 0


def test_build_errors():
    with pytest.raises(ValueError):
        build_spf_table(1)
    with pytest.raises(MemoryError) as err:
        build_spf_table(10**6, memory_budget=1000)
    assert "bytes" in str(err.value)


def test_build_deterministic():
    a = build_spf_table(5000)
    b = build_spf_table(5000)
    assert np.array_equal(a.spf, b.spf)


def test_factorize_roundtrip_exhaustive(table_small):
    for n in range(1, table_small.limit + 1):
        f = factorize(n, table_small)
        assert f.reassemble() == n
        ps = [p for p, _ in f.parts]
        assert ps == sorted(ps) and len(set(ps)) == len(ps)
        assert all(a >= 1 for _, a in f.parts)


def test_factorize_examples(table_small):
    assert factorize(1, table_small).parts == ()
    assert factorize(12, table_small).parts == ((2, 2), (3, 1))
    f = factorize(9973, table_small)
    assert f.parts == ((9973, 1),)
    assert trial_division_factor(9973) == [(9973, 1)]


def test_factorize_errors(table_small):
    with pytest.raises(ValueError):
        factorize(0, table_small)
    with pytest.raises(ValueError):
        factorize(table_small.limit + 1, table_small)


def test_prime_multiplicity_examples(table_small):
    assert prime_multiplicity(2, 12, table_small) == 2
    assert prime_multiplicity(5, 12, table_small) == 0
    assert prime_multiplicity(3, 3**7 * 2) == 7


def test_prime_multiplicity_matches_factorize(table_small):
    for n in range(1, 2001):
        f = factorize(n, table_small)
        for q in (2, 3, 5, 7, 11):
            a = prime_multiplicity(q, n, table_small)
            assert a == f.exponent_of(q)
            assert n % q**a == 0
            assert n % q ** (a + 1) != 0


def test_prime_multiplicity_rejects_composite(table_small):
    with pytest.raises(ValueError):
        prime_multiplicity(6, 36, table_small)
    with pytest.raises(ValueError):
        prime_multiplicity(10**6 + 4, 12)  # composite beyond any table
    # prime far beyond the table goes through the Miller-Rabin path
    assert prime_multiplicity(2147483647, 12, table_small) == 0


def test_primes_in_progression_examples(table_small):
    assert list(primes_in_progression(4, 30, table_small)) == [5, 13, 17, 29]
    assert list(primes_in_progression(1, 10, table_small)) == [2, 3, 5, 7]
    assert list(primes_in_progression(100, 100, table_small)) == []


def test_primes_in_progression_subset_property(table_small):
    for d, m in ((2, 4), (3, 6), (4, 8), (5, 15)):
        big = set(primes_in_progression(m, 10**4, table_small).tolist())
        small = set(primes_in_progression(d, 10**4, table_small).tolist())
        assert big <= small


def test_prime_count_vs_direct_sieve(table_1m):
    direct = primes_upto(10**6)
    mine = primes_in_progression(1, 10**6, table_1m)
    assert mine.size == len(direct)
    assert list(mine[:100]) == direct[:100]
    assert int(mine[-1]) == direct[-1]


def test_progression_gcd_examples(table_small):
    assert progression_gcd(65, 4, table_small) == 65
    assert progression_gcd(8, 3, table_small) == 1
    assert progression_gcd(7, 3, table_small) == 7


def test_dump_load_roundtrip(tmp_path, table_small):
    path = tmp_path / "spf.bin"
    save_spf_table(table_small, path)
    raw = path.read_bytes()
    assert raw[:4] == SPF_MAGIC
    assert int.from_bytes(raw[4:12], "little") == table_small.limit
    loaded = load_spf_table(path)
    assert loaded.limit == table_small.limit
    assert np.array_equal(loaded.spf, table_small.spf)
    # bit-exact round trip
    path2 = tmp_path / "spf2.bin"
    save_spf_table(loaded, path2)
    assert path2.read_bytes() == raw


def test_load_rejects_bad_input(tmp_path):
    bad = tmp_path / "bad.bin"
    bad.write_bytes(b"XXXX" + b"\x00" * 16)
    with pytest.raises(ValueError):
        load_spf_table(bad)


def test_is_prime_u64(table_small):
    primes = set(primes_upto(20000))
    for n in range(20000):
        assert is_prime_u64(n) == (n in primes)
    assert is_prime_u64(2**61 - 1)
    assert not is_prime_u64(2**67 - 1)  # 193707721 * 761838257287
    assert not is_prime_u64(3215031751)  # strong pseudoprime to bases 2,3,5,7
