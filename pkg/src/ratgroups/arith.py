"""Small number-theory helpers: factorization, totients, residue arithmetic."""

from __future__ import annotations

import math
from functools import lru_cache


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as ((p, e), ...) with p ascending."""
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def prime_divisors(n: int) -> tuple[int, ...]:
    return tuple(p for p, _ in factorize(n))


def euler_phi(n: int) -> int:
    phi = 1
    for p, e in factorize(n):
        phi *= (p - 1) * p ** (e - 1)
    return phi


def divisors(n: int) -> list[int]:
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


@lru_cache(maxsize=None)
def units_mod(n: int) -> tuple[int, ...]:
    """Residues of U(Z/nZ) as integers in [1, n-1], except units_mod(1) == (1,)."""
    if n == 1:
        return (1,)
    return tuple(r for r in range(1, n) if math.gcd(r, n) == 1)


def canon_residue(r: int, n: int) -> int:
    """Reduce r into the canonical representative range used by units_mod."""
    if n == 1:
        return 1
    r %= n
    if math.gcd(r, n) != 1:
        raise ValueError(f"{r} is not a unit modulo {n}")
    return r


def multiplicative_order(a: int, n: int) -> int:
    if n == 1:
        return 1
    a = canon_residue(a, n)
    k, x = 1, a
    while x != 1:
        x = x * a % n
        k += 1
    return k


def two_part(n: int) -> int:
    """Largest power of 2 dividing n."""
    t = 1
    while n % 2 == 0:
        n //= 2
        t *= 2
    return t


def lcm_all(values) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v)
    return out
