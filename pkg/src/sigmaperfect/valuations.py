"""Exact-valuation oracles and search-pruning bounds.

Each check_* function evaluates one proved identity pinning the exact
power of 2 (or of 2**k - 1) dividing an expression of the form a**m - 1,
by actually computing the number and its valuation. The identities are
theorems, so a False return from any check_* is an implementation bug,
never new mathematics; the bound_* and trichotomy functions evaluate
inequalities whose truth legitimately depends on the parameters and are
used to prune searches.

Where 2**k - 1 itself is the divisor (check_appr), "exactly divides" is
implemented by direct division, not via prime valuations, so the identity
also holds verbatim when 2**k - 1 is composite.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd

from .exactint import checked_pow, geometric_sum, v_exact
from .primality import is_prime

__all__ = [
    "AlphaSplit",
    "BetaSplit",
    "LemmaGrid",
    "PSplit",
    "Scenario",
    "appr_exponent",
    "bound_u1",
    "bound_v3",
    "check_appr",
    "check_appr2_bound",
    "check_cando",
    "check_sl3",
    "check_tv",
    "check_tv2",
    "check_vs1",
    "exactly_divides",
    "trichotomy_3mod4",
]


@dataclass(frozen=True)
class BetaSplit:
    """beta = 2**v * beta1 with v >= 1 and beta1 odd (beta must be even)."""

    v: int
    beta1: int

    @classmethod
    def of_beta(cls, beta: int) -> "BetaSplit":
        if beta < 2 or beta % 2:
            raise ValueError(f"beta must be even and >= 2, got {beta}")
        v = v_exact(2, beta).exponent
        return cls(v=v, beta1=beta >> v)

    def beta(self) -> int:
        return (1 << self.v) * self.beta1


@dataclass(frozen=True)
class PSplit:
    """2-adic decompositions attached to an odd prime p.

    p = 1 (mod 4):  p - 1 = 2**t * t_odd with t >= 2.
    p = 3 (mod 4):  p**2 - 1 = 2**s * s_odd with s >= 3, and
                    p + 1 = 2**lam * lam_odd with lam >= 2.

    Only the fields matching p mod 4 are populated; the others are None.
    """

    p: int
    t: int | None = None
    t_odd: int | None = None
    s: int | None = None
    s_odd: int | None = None
    lam: int | None = None
    lam_odd: int | None = None

    @classmethod
    def of_prime(cls, p: int) -> "PSplit":
        if p < 3 or p % 2 == 0 or not is_prime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
        if p % 4 == 1:
            t = v_exact(2, p - 1).exponent
            return cls(p=p, t=t, t_odd=(p - 1) >> t)
        s = v_exact(2, p * p - 1).exponent
        lam = v_exact(2, p + 1).exponent
        return cls(p=p, s=s, s_odd=(p * p - 1) >> s, lam=lam, lam_odd=(p + 1) >> lam)


@dataclass(frozen=True)
class AlphaSplit:
    """alpha = (2**k - 1)**u * alpha1 with gcd(2**k - 1, alpha1) = 1.

    m is the exact exponent with (2**k - 1)**m || 2**((2**k - 1) * k) - 1,
    which is always >= 2.
    """

    k: int
    u: int
    alpha1: int
    m: int

    @classmethod
    def of_alpha(cls, alpha: int, k: int, bit_cap: int | None = None) -> "AlphaSplit":
        if alpha < 1:
            raise ValueError(f"alpha must be >= 1, got {alpha}")
        _require_odd_k(k)
        d = (1 << k) - 1
        u = 0
        a = alpha
        while a % d == 0:
            a //= d
            u += 1
        return cls(k=k, u=u, alpha1=a, m=appr_exponent(k, bit_cap))


def _require_odd_k(k: int) -> None:
    if k < 3 or k % 2 == 0:
        raise ValueError(f"k must be odd and >= 3, got {k}")


def exactly_divides(d: int, e: int, x: int) -> bool:
    """d**e | x and d**(e+1) ∤ x, by direct division (d may be composite)."""
    if d < 2:
        raise ValueError(f"divisor must be >= 2, got {d}")
    q = d**e
    return x % q == 0 and x % (q * d) != 0


def check_vs1(k: int) -> bool:
    """The exact power of 2 dividing (2**k - 1)**(2k) - 1 is 2**(k+1), k odd >= 3."""
    _require_odd_k(k)
    x = checked_pow((1 << k) - 1, 2 * k) - 1
    return v_exact(2, x).exponent == k + 1


def check_cando(k: int, beta: int, bit_cap: int | None = None) -> bool:
    """With beta = 2**v * beta1 even: 2**(v+k) || (2**k - 1)**(beta * k) - 1.

    Odd beta is rejected; the search context always forces 2 | beta.
    """
    _require_odd_k(k)
    split = BetaSplit.of_beta(beta)
    x = checked_pow((1 << k) - 1, beta * k, bit_cap) - 1
    return v_exact(2, x).exponent == split.v + k


def appr_exponent(k: int, bit_cap: int | None = None) -> int:
    """The exact m with (2**k - 1)**m || 2**((2**k - 1) * k) - 1."""
    _require_odd_k(k)
    d = (1 << k) - 1
    x = checked_pow(2, d * k, bit_cap) - 1
    m = 0
    while True:
        q, r = divmod(x, d)
        if r:
            return m
        x = q
        m += 1


def check_appr(k: int, u: int, alpha1: int, bit_cap: int | None = None) -> bool:
    """(2**k - 1)**(u+m) || 2**((2**k - 1)**(u+1) * k * alpha1) - 1.

    Requires gcd(alpha1, 2**k - 1) = 1. The tower exponent grows fast in
    u, so large u hits the operand size cap.
    """
    _require_odd_k(k)
    d = (1 << k) - 1
    if u < 0:
        raise ValueError(f"u must be >= 0, got {u}")
    if alpha1 < 1 or gcd(alpha1, d) != 1:
        raise ValueError(f"alpha1 must be positive and coprime to 2**{k} - 1, got {alpha1}")
    m = appr_exponent(k, bit_cap)
    e = d ** (u + 1) * k * alpha1
    x = checked_pow(2, e, bit_cap) - 1
    return exactly_divides(d, u + m, x)


def check_appr2_bound(k: int, bit_cap: int | None = None) -> bool:
    """The exponent m from appr_exponent satisfies m < 2**k."""
    return appr_exponent(k, bit_cap) < (1 << k)


def _require_odd_positive(name: str, value: int) -> None:
    if value < 1 or value % 2 == 0:
        raise ValueError(f"{name} must be odd and >= 1, got {value}")


def check_tv(p: int, k: int, v: int, beta1: int, bit_cap: int | None = None) -> bool:
    """For p = 1 (mod 4): 2**(t+v) || p**(2**v * beta1 * k) - 1, t = v2(p - 1)."""
    _require_odd_k(k)
    if v < 1:
        raise ValueError(f"v must be >= 1, got {v}")
    _require_odd_positive("beta1", beta1)
    split = PSplit.of_prime(p)
    if split.t is None:
        raise ValueError(f"p must be 1 mod 4, got {p}")
    x = checked_pow(p, (1 << v) * beta1 * k, bit_cap) - 1
    return v_exact(2, x).exponent == split.t + v


def check_tv2(p: int, k: int, v: int, beta1: int, bit_cap: int | None = None) -> bool:
    """For p = 3 (mod 4): 2**(v+s-1) || p**(k * 2**v * beta1) - 1, s = v2(p**2 - 1)."""
    _require_odd_k(k)
    if v < 1:
        raise ValueError(f"v must be >= 1, got {v}")
    _require_odd_positive("beta1", beta1)
    split = PSplit.of_prime(p)
    if split.s is None:
        raise ValueError(f"p must be 3 mod 4, got {p}")
    x = checked_pow(p, k * (1 << v) * beta1, bit_cap) - 1
    return v_exact(2, x).exponent == v + split.s - 1


def check_sl3(lam: int, p1: int, v: int, beta1: int, bit_cap: int | None = None) -> bool:
    """2**(lam+v) || (2**lam * p1 - 1)**(2**v * beta1) - 1 for lam >= 2, p1 odd.

    A pure binomial-expansion fact: the base 2**lam * p1 - 1 need not be
    prime for the identity to hold.
    """
    if lam < 2:
        raise ValueError(f"lam must be >= 2, got {lam}")
    _require_odd_positive("p1", p1)
    if v < 1:
        raise ValueError(f"v must be >= 1, got {v}")
    _require_odd_positive("beta1", beta1)
    base = (1 << lam) * p1 - 1
    x = checked_pow(base, (1 << v) * beta1, bit_cap) - 1
    return v_exact(2, x).exponent == lam + v


def bound_u1(p: int, k: int, v: int) -> bool:
    """p**(2**v - 1) <= (2**(k(v+1)) - 1) / (2**k - 1), exactly in integers.

    Holds whenever some n = 2**(alpha-1) * p**(beta-1) with p = 1 (mod 4)
    and v = v2(beta) divides its own k-th divisor-power sum; a failure
    therefore prunes (p, v) for good.
    """
    if p % 4 != 1 or not is_prime(p):
        raise ValueError(f"p must be a prime that is 1 mod 4, got {p}")
    _require_odd_k(k)
    if v < 1:
        raise ValueError(f"v must be >= 1, got {v}")
    return checked_pow(p, (1 << v) - 1) <= geometric_sum(1 << k, v + 1)


def bound_v3(p: int, k: int, v: int) -> bool:
    """p**(2**v - 2k - 1) < 2**(k(v-1)) / (2**k - 1), exactly over rationals.

    The exponent on the left goes negative for small v; both sides are
    evaluated as exact fractions, never floats. Same pruning contract as
    bound_u1, for p = 3 (mod 4).
    """
    if p % 4 != 3 or not is_prime(p):
        raise ValueError(f"p must be a prime that is 3 mod 4, got {p}")
    _require_odd_k(k)
    if v < 1:
        raise ValueError(f"v must be >= 1, got {v}")
    lhs = Fraction(p) ** ((1 << v) - 2 * k - 1)
    rhs = Fraction(1 << (k * (v - 1)), (1 << k) - 1)
    return lhs < rhs


class Scenario(Enum):
    """Trichotomy outcomes for p = 3 (mod 4); an empty result set prunes."""

    P_EQUALS_K = "p=k"
    SCENARIO_2 = "scenario-2"
    SCENARIO_3 = "scenario-3"


def trichotomy_3mod4(
    p: int, k: int, beta: int, bit_cap: int | None = None
) -> frozenset[Scenario]:
    """All scenarios that hold for (p, k, beta) with p = 3 (mod 4), beta even.

    With lam = v2(p + 1) and v = v2(beta), the scenarios are
      (1) p = k,
      (2) (2**lam - 1)**(beta-1) <= 2**(lam+v) - 1,
      (3) (2**lam - 1)**(beta-1) <= sum of 2**(i(lam+v)) for i < k.
    At least one must hold whenever n | sigma_k(n) is possible, so an
    empty set means the parameters are pruned.
    """
    if not is_prime(k):
        raise ValueError(f"k must be prime, got {k}")
    split = PSplit.of_prime(p)
    if split.lam is None:
        raise ValueError(f"p must be 3 mod 4, got {p}")
    v = BetaSplit.of_beta(beta).v
    out = set()
    if p == k:
        out.add(Scenario.P_EQUALS_K)
    lhs = checked_pow((1 << split.lam) - 1, beta - 1, bit_cap)
    if lhs <= (1 << (split.lam + v)) - 1:
        out.add(Scenario.SCENARIO_2)
    if lhs <= geometric_sum(1 << (split.lam + v), k, bit_cap):
        out.add(Scenario.SCENARIO_3)
    return frozenset(out)


@dataclass(frozen=True)
class LemmaGrid:
    """Sampled parameter domain for the lemma oracle suites.

    The identities hold universally; these defaults trade coverage for
    runtime and match the stock acceptance grid.
    """

    k_values: tuple[int, ...] = (3, 5, 7)
    p_max: int = 500
    v_max: int = 5
    beta1_max: int = 9
    u_max: int = 1
    alpha1_max: int = 4
    lambda_max: int = 5
    p1_max: int = 9
    alpha_max: int = 8
    beta_max: int = 6
    bit_cap: int | None = None
