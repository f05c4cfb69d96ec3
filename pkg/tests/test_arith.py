"""Arithmetic layer: primality, factorization, CRT, valuations."""

import math
import random

import pytest
from hypothesis import given, strategies as st

from powsum.arith import (
    MAX_MODULUS,
    PrimePower,
    Residue,
    crt_combine,
    divisors,
    factorize,
    is_prime,
    mod_pow,
    nu,
    phi_prime_power,
)


def test_mod_pow_examples():
    assert mod_pow(2, 10, 1000) == 24
    assert mod_pow(5, 0, 7) == 1
    assert mod_pow(3, 1, 7) == 3
    assert mod_pow(5, 0, 1) == 0


def test_mod_pow_against_iterated_multiplication():
    for base in range(0, 12):
        for exp in range(0, 10):
            for k in (1, 2, 7, 12, 97):
                acc = 1 % k
                for _ in range(exp):
                    acc = acc * base % k
                assert mod_pow(base, exp, k) == acc


@given(
    st.integers(min_value=0, max_value=10**30),
    st.integers(min_value=0, max_value=10**15),
    st.integers(min_value=0, max_value=10**15),
    st.integers(min_value=1, max_value=MAX_MODULUS),
)
def test_mod_pow_multiplicative_in_exponent(base, e1, e2, k):
    lhs = mod_pow(base, e1 + e2, k)
    rhs = mod_pow(base, e1, k) * mod_pow(base, e2, k) % k
    assert lhs == rhs


def test_mod_pow_rejects_bad_inputs():
    with pytest.raises(ValueError):
        mod_pow(2, 3, 0)
    with pytest.raises(ValueError):
        mod_pow(2, 3, MAX_MODULUS + 1)
    with pytest.raises(ValueError):
        mod_pow(-1, 3, 7)
    with pytest.raises(ValueError):
        mod_pow(2, -1, 7)


def test_is_prime_small_against_sieve():
    limit = 2000
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, int(limit**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    for n in range(limit + 1):
        assert is_prime(n) == bool(sieve[n]), n


def test_is_prime_large_cases():
    assert is_prime(9973)
    assert is_prime(999983)
    assert is_prime(1000003)
    assert is_prime(10**18 + 9)
    assert is_prime(2**61 - 1)
    assert not is_prime(2**64 - 1)
    assert not is_prime(4294967291 * 4294967279)
    # strong pseudoprime to several small bases
    assert not is_prime(3215031751)


def test_factorize_examples():
    assert factorize(360) == [(2, 3), (3, 2), (5, 1)]
    assert factorize(1) == []
    assert factorize(9973) == [(9973, 1)]
    assert factorize(2) == [(2, 1)]


def test_factorize_hard_64bit():
    # values cross-checked against an independent factorization oracle
    assert factorize(2**64 - 1) == [
        (3, 1), (5, 1), (17, 1), (257, 1), (641, 1), (65537, 1), (6700417, 1)
    ]
    assert factorize(4294967291**2) == [(4294967291, 2)]
    assert factorize(600851475143) == [(71, 1), (839, 1), (1471, 1), (6857, 1)]
    assert factorize(2**62) == [(2, 62)]


def test_factorize_roundtrip_exhaustive_small():
    for k in range(1, 20001):
        fac = factorize(k)
        prod = math.prod(q**a for q, a in fac)
        assert prod == k
        assert all(is_prime(q) and a >= 1 for q, a in fac)
        assert [q for q, _ in fac] == sorted({q for q, _ in fac})


def test_factorize_roundtrip_random_64bit():
    rng = random.Random(20260818)
    for _ in range(150):
        k = rng.randrange(1, MAX_MODULUS + 1)
        fac = factorize(k)
        assert math.prod(q**a for q, a in fac) == k
        assert all(is_prime(q) for q, _ in fac)


def test_factorize_rejects_out_of_range():
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(ValueError):
        factorize(2**64)


def test_crt_combine_example():
    assert crt_combine([(1, PrimePower(2, 2)), (2, PrimePower(3, 1))]) == Residue(5, 12)
    assert crt_combine([]) == Residue(0, 1)


def test_crt_roundtrip():
    # squarefree and non-squarefree moduli
    for k in (2, 6, 12, 30, 360, 2310, 9240, 8192, 6561, 9973, 10000):
        fac = factorize(k)
        for x in range(0, k, max(1, k // 257)):
            parts = [(x % pp.value, pp) for pp in fac]
            assert crt_combine(parts) == (x, k)
        for x in (0, 1, k - 1):
            parts = [(x % pp.value, pp) for pp in fac]
            assert crt_combine(parts) == (x, k)


def test_crt_rejects_duplicate_primes():
    with pytest.raises(ValueError):
        crt_combine([(1, PrimePower(3, 1)), (2, PrimePower(3, 2))])


def test_crt_rejects_residue_out_of_range():
    with pytest.raises(ValueError):
        crt_combine([(4, PrimePower(2, 2))])


def test_nu_examples():
    assert nu(3, 54) == 3
    assert nu(5, 7) == 0
    assert nu(2, 2**20) == 20


@given(
    st.sampled_from([2, 3, 5, 7, 11, 13]),
    st.integers(min_value=1, max_value=10**12),
)
def test_nu_defining_property(q, n):
    e = nu(q, n)
    assert n % q**e == 0
    assert n % q ** (e + 1) != 0


def test_nu_rejects_bad_inputs():
    with pytest.raises(ValueError):
        nu(4, 12)
    with pytest.raises(ValueError):
        nu(3, 0)


def test_phi_prime_power_examples():
    assert phi_prime_power(3, 2) == 6
    assert phi_prime_power(2, 1) == 1
    assert phi_prime_power(2, 3) == 4
    # a PrimePower pair works as a single argument too
    assert phi_prime_power(PrimePower(5, 3)) == 100
    assert phi_prime_power((7, 1)) == 6


def test_phi_counts_units():
    for q in (2, 3, 5, 7, 11, 13, 97):
        a = 1
        while q**a <= 10**4:
            m = q**a
            count = sum(1 for x in range(1, m + 1) if math.gcd(x, m) == 1)
            assert phi_prime_power(q, a) == count
            a += 1


def test_phi_rejects_non_prime():
    with pytest.raises(ValueError):
        phi_prime_power(6, 1)
    with pytest.raises(ValueError):
        phi_prime_power(3, 0)


def test_divisors_examples():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]
    assert divisors(27) == [1, 3, 9, 27]


def test_divisors_definition():
    for n in (2, 6, 36, 97, 100, 720, 5040):
        ds = divisors(n)
        assert ds == [d for d in range(1, n + 1) if n % d == 0]
