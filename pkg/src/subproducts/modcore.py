"""Prime and multiplicative-group primitives.

Primality, least primitive roots, full discrete-log (index) tables,
Legendre symbols, and the classical small-generator statistics for a
prime p: the least quadratic nonresidue, the least primitive root, and
the least G such that {1..G} generates the whole multiplicative group.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass, field
from math import gcd, isqrt

# A full index table costs 4 bytes per residue ('i' array), so 2^24 keeps a
# single context under ~70 MB.  Sweeps in this package stay far below this.
MAX_TABLE_PRIME = 1 << 24


class NotPrimeError(ValueError):
    """Raised when an argument required to be prime is not."""


class TooLargeError(ValueError):
    """Raised when an index table would exceed the supported prime cap."""


# Deterministic Miller-Rabin witness set, valid for all n < 3.3e24 (covers 2^63).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test for 1 <= n <= 2^63."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    """All primes <= n, by sieve of Eratosthenes."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for q in range(2, isqrt(n) + 1):
        if sieve[q]:
            start = q * q
            sieve[start:: q] = b"\x00" * ((n - start) // q + 1)
    return [i for i, flag in enumerate(sieve) if flag]


def distinct_prime_factors(n: int) -> list[int]:
    """Sorted distinct prime factors of n >= 1 (trial division)."""
    out = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out.append(m)
    return out


def least_primitive_root(p: int) -> int:
    """Least positive integer of multiplicative order p-1 mod p."""
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    order = p - 1
    order_factors = distinct_prime_factors(order)
    for g in range(1, p):
        if all(pow(g, order // q, p) != 1 for q in order_factors):
            return g
    raise AssertionError("unreachable: every prime has a primitive root")


@dataclass(frozen=True)
class PrimeContext:
    """Immutable multiplicative-group tables for a prime p.

    `ind` maps each residue n in [1, p-1] to the exponent a with
    g^a = n (mod p), where g is the least primitive root.  Safe for
    concurrent reads; construction is single-threaded per prime.
    """

    p: int
    g: int
    order: int
    ind: array = field(repr=False)

    def index(self, n: int) -> int:
        """Discrete log of n to base g; n must be coprime to p."""
        r = n % self.p
        if r == 0:
            raise ValueError(f"{n} is divisible by {self.p}; no index exists")
        return self.ind[r]


def build_context(p: int) -> PrimeContext:
    """Build the full index table for p (least primitive root as base).

    Supports p up to MAX_TABLE_PRIME = 2^24; larger p would need a
    different discrete-log strategy than a flat table.
    """
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if p > MAX_TABLE_PRIME:
        raise TooLargeError(f"p={p} exceeds table limit {MAX_TABLE_PRIME}")
    g = least_primitive_root(p)
    ind = array("i", [-1]) * p
    cur = 1
    for a in range(p - 1):
        ind[cur] = a
        cur = cur * g % p
    return PrimeContext(p=p, g=g, order=p - 1, ind=ind)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) in {-1, 0, 1} for an odd prime p."""
    if p < 3 or p % 2 == 0:
        raise ValueError(f"p={p} must be an odd prime")
    t = pow(a % p, (p - 1) // 2, p)
    if t == p - 1:
        return -1
    return t  # 0 or 1


def least_nonresidue(p: int) -> int:
    """Least n >= 2 that is a quadratic nonresidue mod p (always prime)."""
    for n in range(2, p):
        if legendre(n, p) == -1:
            return n
    raise AssertionError(f"no nonresidue below p={p}; p is not an odd prime")


def group_generation_bound(ctx: PrimeContext) -> int:
    """Least G such that {1..G} generates the full multiplicative group.

    Equivalently the least G with gcd(p-1, ind(2), ..., ind(G)) = 1.
    """
    if ctx.order == 1:
        return 1
    acc = ctx.order
    ind = ctx.ind
    for n in range(2, ctx.p):
        acc = gcd(acc, ind[n])
        if acc == 1:
            return n
    raise AssertionError("unreachable: the primitive root has index 1")
