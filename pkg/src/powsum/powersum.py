"""Power sums S_n(m) = 1^n + 2^n + ... + m^n modulo k.

The residue of S_n mod a prime power q^a is periodic in m, and one period
is short: at most q^(a+1).  Closed forms exist for full periods, so S_n(m)
mod k reduces to factoring k, summing a short window per prime power, and
recombining by CRT.  This evaluates in time independent of m and n except
for the window lengths, which makes astronomically large n and m cheap.

`naive_sum` is the direct term-by-term oracle the fast path is certified
against; it never uses periodicity, closed forms, or exponent reduction.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .arith import (
    PrimePower,
    check_modulus,
    check_prime_power,
    crt_combine,
    factorize,
    nu,
    phi_prime_power,
)

DEFAULT_ORACLE_LIMIT = 10**7

# largest modulus whose squares stay inside int64 during vectorized powmod
_VEC_MOD_MAX = math.isqrt(2**63 - 1)
_VEC_MIN_TERMS = 1024
_VEC_CHUNK = 1 << 20

PHI_CASE = "PhiCase"
ZERO_CASE = "ZeroCase"


class CongruenceCase(NamedTuple):
    """Closed-form residue of S_n(q^a) mod q^a: phi(q^a) or 0."""

    tag: str
    value: int


class PrimePowerPeriod(NamedTuple):
    """Period of m -> S_n(m) mod q^a, with the formula branch that applied."""

    prime_power: PrimePower
    period: int
    branch: str


class PeriodBreakdown(NamedTuple):
    """Per-prime-power periods for a modulus k and their lcm."""

    modulus: int
    per_prime: tuple[PrimePowerPeriod, ...]
    combined: int


class EvalPart(NamedTuple):
    """One prime-power slice of an evaluation: S_n(m) mod q^a.

    period is the exact period used, window is m mod period, and residue
    is the window sum S_n(window) mod q^a.
    """

    prime_power: PrimePower
    period: int
    window: int
    residue: int


def _check_n(n: int) -> int:
    if n < 1:
        raise ValueError(f"exponent n must be >= 1, got {n}")
    return n


def _vec_powmod(bases: np.ndarray, exp: int, k: int) -> np.ndarray:
    """Elementwise bases**exp mod k by square and multiply, int64-safe."""
    result = np.ones_like(bases)
    base = bases % k
    e = exp
    while e:
        if e & 1:
            result = result * base % k
        e >>= 1
        if e:
            base = base * base % k
    return result


def naive_sum(n: int, m: int, k: int, oracle_limit: int = DEFAULT_ORACLE_LIMIT) -> int:
    """Direct summation oracle: (1^n + ... + m^n) mod k, term by term.

    Cost is O(m log n).  m above oracle_limit raises ValueError; use
    eval_sum for large m.  m == 0 gives the empty sum 0.
    """
    _check_n(n)
    check_modulus(k)
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    if m > oracle_limit:
        raise ValueError(
            f"m = {m} exceeds the oracle limit {oracle_limit}; "
            "use eval_sum for large arguments"
        )
    if k == 1:
        return 0
    if m >= _VEC_MIN_TERMS and k <= _VEC_MOD_MAX:
        # same term-by-term sum, run through numpy in blocks
        acc = 0
        for lo in range(1, m + 1, _VEC_CHUNK):
            hi = min(lo + _VEC_CHUNK, m + 1)
            bases = np.arange(lo, hi, dtype=np.int64) % k
            acc = (acc + int(_vec_powmod(bases, n, k).sum())) % k
        return acc
    return sum(pow(i, n, k) for i in range(1, m + 1)) % k


def prime_power_congruence(n: int, p: PrimePower | tuple) -> CongruenceCase:
    """Residue of S_n(q^a) mod q^a over one full block 1..q^a.

        q odd:          phi(q^a) if (q-1) | n, else 0
        q = 2, a = 1:   1 for every n
        q = 2, a >= 2:  phi(2^a) if n = 1 or n even, else 0
    """
    _check_n(n)
    q, a = check_prime_power(p)
    if q == 2:
        if a == 1:
            return CongruenceCase(PHI_CASE, 1)
        if n == 1 or n % 2 == 0:
            return CongruenceCase(PHI_CASE, phi_prime_power(q, a))
        return CongruenceCase(ZERO_CASE, 0)
    if n % (q - 1) == 0:
        return CongruenceCase(PHI_CASE, phi_prime_power(q, a))
    return CongruenceCase(ZERO_CASE, 0)


def valuation_lower_bound(n: int, q: int, j: int) -> int:
    """An exponent e with q^e guaranteed to divide S_n(q^j) exactly computed.

        q odd, (q-1) ∤ n:        e = nu_q(n) + j
        q odd, (q-1) | n:        e = j - 1
        q = 2, j = 1:            e = 0        (S_n(2) = 1 + 2^n is odd)
        q = 2, j >= 2, n odd > 1: e = j
        q = 2, j >= 2, otherwise: e = j - 1

    The (q-1) | n bound is exact: S_n(q^j) = q^(j-1) * u with q ∤ u.
    """
    _check_n(n)
    if j < 1:
        raise ValueError(f"j must be >= 1, got {j}")
    check_prime_power((q, j))
    if q == 2:
        if j == 1:
            return 0
        if n > 1 and n % 2 == 1:
            return j
        return j - 1
    if n % (q - 1) == 0:
        return j - 1
    return nu(q, n) + j


def _period_branch(n: int, q: int, a: int) -> tuple[int, str]:
    if q == 2:
        if a == 1:
            return 4, "q = 2, a = 1"
        if n == 1 or n % 2 == 0:
            return 2 ** (a + 1), "n = 1 or n even"
        return 2**a, "n odd, n > 1"
    if n % (q - 1) == 0:
        return q ** (a + 1), "q - 1 divides n"
    i = nu(q, n)
    if i <= a - 2:
        return q ** (a - i), "nu_q(n) <= a - 2"
    return q, "q^(a-1) divides n"


def period_prime_power(n: int, p: PrimePower | tuple) -> int:
    """Exact period of m -> S_n(m) mod q^a.

        q = 2, a = 1:                     4
        q = 2, a >= 2:                    2^(a+1) if n = 1 or n even, else 2^a
        q odd, (q-1) | n:                 q^(a+1)
        q odd, (q-1) ∤ n, nu_q(n) <= a-2: q^(a - nu_q(n))
        q odd, (q-1) ∤ n, q^(a-1) | n:    q
    """
    _check_n(n)
    q, a = check_prime_power(p)
    return _period_branch(n, q, a)[0]


def period(n: int, k: int) -> PeriodBreakdown:
    """Exact period of m -> S_n(m) mod each prime power of k, plus their lcm.

    The lcm is a period of S_n mod k; per-prime minimality is exact and the
    combination is certified empirically by the verification suite.
    """
    _check_n(n)
    check_modulus(k)
    parts = []
    for pp in factorize(k):
        ell, branch = _period_branch(n, pp.q, pp.a)
        parts.append(PrimePowerPeriod(pp, ell, branch))
    combined = math.lcm(*(p.period for p in parts)) if parts else 1
    return PeriodBreakdown(k, tuple(parts), combined)


def row_period(k: int) -> int:
    """A single period valid for every n at once: product of q^(a+1) over k.

    Not minimal in general, but a simultaneous period of m -> S_n(m) mod k
    for all n >= 1.  row_period(1) == 1.
    """
    check_modulus(k)
    out = 1
    for q, a in factorize(k):
        out *= q ** (a + 1)
    return out


def _window_sum(n: int, r: int, q: int, a: int) -> int:
    """S_n(r) mod q^a for a window 0 <= r < period.

    For n >= a the exponent drops to n mod phi(q^a) on bases coprime to q,
    and multiples of q contribute 0 since n * nu_q(base) >= a.  For n < a
    the full exponent is used directly.  Either way the result equals the
    term-by-term sum.
    """
    m = q**a
    if r == 0:
        return 0
    if n >= a:
        e = n % phi_prime_power(q, a)
        drop_multiples = True
    else:
        e = n
        drop_multiples = False
    if r >= _VEC_MIN_TERMS and m <= _VEC_MOD_MAX:
        acc = 0
        for lo in range(1, r + 1, _VEC_CHUNK):
            hi = min(lo + _VEC_CHUNK, r + 1)
            idx = np.arange(lo, hi, dtype=np.int64)
            vals = _vec_powmod(idx % m, e, m)
            if drop_multiples:
                vals[idx % q == 0] = 0
            acc = (acc + int(vals.sum())) % m
        return acc
    s = 0
    for i in range(1, r + 1):
        if drop_multiples and i % q == 0:
            continue
        s += pow(i, e, m)
    return s % m


def eval_parts(n: int, m: int, k: int) -> list[EvalPart]:
    """Per-prime-power breakdown behind eval_sum.

    For each q^a dividing k: take the exact period ell, reduce m to the
    window r = m mod ell, and sum the window mod q^a.  Sound because a
    full period sums to 0 mod q^a.
    """
    _check_n(n)
    check_modulus(k)
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    parts = []
    for pp in factorize(k):
        ell, _ = _period_branch(n, pp.q, pp.a)
        r = m % ell
        parts.append(EvalPart(pp, ell, r, _window_sum(n, r, pp.q, pp.a)))
    return parts


def eval_sum(n: int, m: int, k: int) -> int:
    """S_n(m) mod k for unbounded n and m.

    Factors k, evaluates one window per prime power, recombines by CRT.
    Cost is the total window length (at most sum of q^(a+1), typically far
    less), independent of the magnitude of n and m; budgeting is left to
    the caller.  Agrees with naive_sum everywhere.
    """
    parts = eval_parts(n, m, k)
    return crt_combine([(p.residue, p.prime_power) for p in parts]).value
