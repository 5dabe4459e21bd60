"""Primality testing for search ranges and Mersenne exponent validation.

Everything here is deterministic and exact: trial division for small
inputs, a strong-pseudoprime battery whose base set is proven correct for
the whole 64-bit range, and the Lucas-Lehmer recurrence for numbers of the
form 2**k - 1 beyond that. General inputs past 64 bits are refused rather
than answered probabilistically.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

__all__ = [
    "MersenneCandidate",
    "is_mersenne_prime_exponent",
    "is_prime",
    "lucas_lehmer",
    "mersenne_exponents_upto",
    "primes_upto",
]

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)

# Plain trial division below this; Miller-Rabin above it. The base set is
# deterministic for every n < 2**64.
_TRIAL_LIMIT = 1 << 20
_MR_BASES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)
_U64 = 1 << 64


def is_prime(x: int) -> bool:
    """Exact primality for x below 2**64, plus Mersenne numbers of any size.

    Raises ValueError for inputs past 64 bits that are not of the form
    2**k - 1 (no probabilistic answers; desk-scale searches never need
    them).
    """
    if x < 2:
        return False
    for p in _SMALL_PRIMES:
        if x % p == 0:
            return x == p
    if x < _TRIAL_LIMIT:
        return _trial_division(x)
    if x < _U64:
        return _miller_rabin(x)
    if (x + 1) & x == 0:
        j = x.bit_length()  # x = 2**j - 1
        if not is_prime(j):
            return False
        return lucas_lehmer(j).is_prime
    raise ValueError(
        f"is_prime: {x.bit_length()}-bit non-Mersenne input is beyond the supported range"
    )


def _trial_division(x: int) -> bool:
    # Small primes up to 47 were already screened out by the caller.
    limit = isqrt(x)
    d = 53
    while d <= limit:
        if x % d == 0 or x % (d + 2) == 0:
            return False
        d += 6
    return True


def _miller_rabin(n: int) -> bool:
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class MersenneCandidate:
    """Verdict on 2**k - 1 for a prime exponent k."""

    k: int
    value: int
    is_prime: bool

    def __post_init__(self) -> None:
        if self.value != (1 << self.k) - 1:
            raise ValueError(f"value must equal 2**{self.k} - 1")


def lucas_lehmer(k: int) -> MersenneCandidate:
    """Lucas-Lehmer verdict on 2**k - 1 for an odd prime k.

    The recurrence s(0) = 4, s(i+1) = s(i)**2 - 2 (mod 2**k - 1) reaches 0
    at step k - 2 exactly when 2**k - 1 is prime. k = 2 is rejected; handle
    2**2 - 1 = 3 as a constant where it matters.
    """
    if k == 2:
        raise ValueError("lucas_lehmer starts at k = 3; 2**2 - 1 = 3 is prime by inspection")
    if k < 3 or k % 2 == 0 or not is_prime(k):
        raise ValueError(f"lucas_lehmer requires an odd prime exponent, got {k}")
    m = (1 << k) - 1
    s = 4
    for _ in range(k - 2):
        s = (s * s - 2) % m
    return MersenneCandidate(k=k, value=m, is_prime=s == 0)


def is_mersenne_prime_exponent(q: int) -> bool:
    """True iff 2**q - 1 is prime (q = 2 included)."""
    if q == 2:
        return True
    if q < 3 or q % 2 == 0 or not is_prime(q):
        return False
    return lucas_lehmer(q).is_prime


def mersenne_exponents_upto(K: int) -> list[int]:
    """All prime k <= K with 2**k - 1 prime, ascending."""
    if K < 2:
        raise ValueError(f"bound must be >= 2, got {K}")
    out = [2]
    for k in range(3, K + 1, 2):
        if is_prime(k) and lucas_lehmer(k).is_prime:
            out.append(k)
    return out


def primes_upto(n: int) -> list[int]:
    """All primes <= n, by sieve of Eratosthenes."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, flag in enumerate(sieve) if flag]
