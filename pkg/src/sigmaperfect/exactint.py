"""Exact integer and rational arithmetic primitives.

Python's built-in int is the arbitrary-precision non-negative integer used
throughout the package (canonical, value equality), and
``fractions.Fraction`` supplies exact rationals: eagerly reduced,
denominator always positive, denominator 1 exactly when the value is an
integer. No mathematical claim anywhere in the package is ever evaluated
in floating point.

A configurable operand-size cap (default one million bits) guards the
power computations so runaway parameter choices fail loudly instead of
hanging.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .primality import is_prime

__all__ = [
    "DEFAULT_BIT_CAP",
    "OperandSizeError",
    "Rational",
    "Valuation",
    "checked_pow",
    "geometric_sum",
    "modpow",
    "v_exact",
]

Rational = Fraction

DEFAULT_BIT_CAP = 1_000_000


class OperandSizeError(ValueError):
    """A computation would exceed the configured operand bit cap."""


def checked_pow(base: int, exp: int, bit_cap: int | None = None) -> int:
    """base ** exp with a conservative size guard.

    Refuses when exp * bit_length(base) exceeds the cap, so every accepted
    result is under the cap; rejection may trigger up to a factor of two
    early, which is fine for a runaway guard.
    """
    if exp < 0:
        raise ValueError(f"exponent must be non-negative, got {exp}")
    if base < 0:
        raise ValueError(f"base must be non-negative, got {base}")
    cap = DEFAULT_BIT_CAP if bit_cap is None else bit_cap
    if base > 1 and exp * base.bit_length() > cap:
        raise OperandSizeError(
            f"{base.bit_length()}-bit base raised to {exp} exceeds the {cap}-bit cap"
        )
    return base**exp


@dataclass(frozen=True)
class Valuation:
    """The exact-divisibility statement base**exponent || subject.

    Invariant: base**exponent divides subject while base**(exponent + 1)
    does not. Instances built by v_exact satisfy it by construction;
    holds() rechecks it by direct division so tests can treat it as an
    independent witness.
    """

    base: int
    exponent: int
    subject: int

    def holds(self) -> bool:
        q = self.base**self.exponent
        return self.subject % q == 0 and self.subject % (q * self.base) != 0


def v_exact(q: int, x: int) -> Valuation:
    """The q-adic valuation of x: the unique e with q**e | x, q**(e+1) ∤ x.

    q must be prime and x >= 1 (the valuation of 0 is undefined).
    """
    if x == 0:
        raise ValueError("valuation of 0 is undefined")
    if x < 0:
        raise ValueError(f"subject must be positive, got {x}")
    if q < 2 or not is_prime(q):
        raise ValueError(f"valuation base must be prime, got {q}")
    if q == 2:
        e = (x & -x).bit_length() - 1
    else:
        e = 0
        y = x
        while True:
            d, r = divmod(y, q)
            if r:
                break
            y = d
            e += 1
    return Valuation(base=q, exponent=e, subject=x)


def geometric_sum(b: int, m: int, bit_cap: int | None = None) -> int:
    """1 + b + ... + b**(m-1), i.e. (b**m - 1) // (b - 1), exactly."""
    if b < 2:
        raise ValueError(f"base must be >= 2, got {b}")
    if m < 1:
        raise ValueError(f"term count must be >= 1, got {m}")
    return (checked_pow(b, m, bit_cap) - 1) // (b - 1)


def modpow(b: int, e: int, m: int) -> int:
    """b**e mod m for m >= 2 (three-argument pow, kept behind a checked front)."""
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    if b < 0 or e < 0:
        raise ValueError("modpow is defined for non-negative base and exponent")
    return pow(b, e, m)
