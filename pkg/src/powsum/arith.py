"""Integer arithmetic helpers: primality, factorization, valuations, CRT.

Everything here works on plain Python ints.  Moduli are capped at
2**64 - 1; exponents and summation lengths are unbounded.
"""

from __future__ import annotations

import math
from typing import NamedTuple

MAX_MODULUS = 2**64 - 1

# Miller-Rabin with this witness set is deterministic below 3.3 * 10**24,
# which covers every 64-bit integer.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_LIMIT = 1 << 16


class PrimePower(NamedTuple):
    """A prime q raised to a positive exponent a."""

    q: int
    a: int

    @property
    def value(self) -> int:
        return self.q**self.a


class Residue(NamedTuple):
    """A value reduced modulo a modulus, with 0 <= value < modulus."""

    value: int
    modulus: int


def check_modulus(k: int) -> int:
    """Validate a modulus: an integer with 1 <= k <= 2**64 - 1."""
    if k < 1:
        raise ValueError(f"modulus must be positive, got {k}")
    if k > MAX_MODULUS:
        raise ValueError(f"modulus must fit in 64 bits, got {k}")
    return k


def check_prime_power(p: PrimePower | tuple) -> PrimePower:
    """Validate (q, a): q prime, a >= 1, q**a within the modulus cap."""
    q, a = p
    if a < 1:
        raise ValueError(f"prime-power exponent must be >= 1, got {a}")
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    pp = PrimePower(q, a)
    check_modulus(pp.value)
    return pp


def mod_pow(base: int, exp: int, k: int) -> int:
    """base**exp mod k by square and multiply.

    exp may be arbitrarily large; exp == 0 gives 1 mod k (so 0 when k == 1).
    """
    check_modulus(k)
    if base < 0 or exp < 0:
        raise ValueError("base and exponent must be nonnegative")
    return pow(base, exp, k)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for n < 3.3 * 10**24."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for w in _MR_WITNESSES:
        x = pow(w, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """Find a nontrivial factor of composite odd n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x = y = 2
        d = 1
        q = 1
        m = 128
        r = 1
        while d == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            j = 0
            while j < r and d == 1:
                ys = y
                for _ in range(min(m, r - j)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                d = math.gcd(q, n)
                j += m
            r *= 2
        if d == n:
            # backtrack one step at a time from the last saved point
            d = 1
            while d == 1:
                ys = (ys * ys + c) % n
                d = math.gcd(abs(x - ys), n)
        if d != n:
            return d
        c += 1  # rare cycle degenerated; retry with a new polynomial


def _factor_into(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _factor_into(d, out)
    _factor_into(n // d, out)


def factorize(k: int) -> list[PrimePower]:
    """Prime factorization of k as a list of PrimePower, primes ascending.

    factorize(1) == [].  Trial division up to 2**16 peels small primes;
    any remaining cofactor is split with Miller-Rabin plus Pollard rho.
    """
    check_modulus(k)
    counts: dict[int, int] = {}
    n = k
    for d in (2, 3, 5):
        while n % d == 0:
            counts[d] = counts.get(d, 0) + 1
            n //= d
    d = 7
    # 30-wheel offsets for candidates coprime to 2, 3, 5
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    w = 0
    while d <= _TRIAL_LIMIT and d * d <= n:
        while n % d == 0:
            counts[d] = counts.get(d, 0) + 1
            n //= d
        d += wheel[w]
        w = (w + 1) % 8
    if n > 1:
        if d * d > n:
            counts[n] = counts.get(n, 0) + 1
        else:
            _factor_into(n, counts)
    return [PrimePower(q, a) for q, a in sorted(counts.items())]


def crt_combine(parts: list[tuple[int, PrimePower]]) -> Residue:
    """Combine residues modulo pairwise-distinct prime powers.

    parts is a list of (residue, PrimePower) pairs; the result is the
    unique residue modulo the product.  An empty list gives 0 mod 1.
    Duplicate primes raise ValueError.
    """
    primes = [pp[0] for _, pp in parts]
    if len(set(primes)) != len(primes):
        raise ValueError("prime powers must have pairwise distinct primes")
    x, mod = 0, 1
    for r, pp in parts:
        q, a = pp
        m = q**a
        if not (0 <= r < m):
            raise ValueError(f"residue {r} out of range for modulus {m}")
        # lift x from mod to mod*m:  x += mod * t  with  x + mod*t = r (mod m)
        t = (r - x) * pow(mod, -1, m) % m
        x += mod * t
        mod *= m
    return Residue(x, mod)


def nu(q: int, n: int) -> int:
    """q-adic valuation: the exponent of the largest power of q dividing n.

    Requires q prime and n >= 1 (the valuation of 0 is not defined here).
    """
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    e = 0
    while n % q == 0:
        n //= q
        e += 1
    return e


def phi_prime_power(q, a: int | None = None) -> int:
    """Euler's totient of q**a, namely q**(a-1) * (q - 1).

    Accepts either a PrimePower pair or separate q, a arguments.
    """
    if a is None:
        q, a = q
    check_prime_power((q, a))
    return q ** (a - 1) * (q - 1)


def divisors(n: int) -> list[int]:
    """All positive divisors of n in ascending order."""
    ds = [1]
    for q, a in factorize(n):
        ds = [d * q**e for d in ds for e in range(a + 1)]
    return sorted(ds)
