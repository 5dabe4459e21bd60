from fractions import Fraction

import pytest

from sigmaperfect.primality import primes_upto
from sigmaperfect.valuations import (
    AlphaSplit,
    BetaSplit,
    PSplit,
    Scenario,
    appr_exponent,
    bound_u1,
    bound_v3,
    check_appr,
    check_appr2_bound,
    check_cando,
    check_sl3,
    check_tv,
    check_tv2,
    check_vs1,
    exactly_divides,
    trichotomy_3mod4,
)


def divide_out_twos(x: int) -> int:
    # independent oracle: repeated division, no bit tricks
    e = 0
    while x % 2 == 0:
        x //= 2
        e += 1
    return e


# --- decompositions ---------------------------------------------------------


def test_beta_split():
    s = BetaSplit.of_beta(12)
    assert (s.v, s.beta1) == (2, 3) and s.beta() == 12
    assert BetaSplit.of_beta(2) == BetaSplit(v=1, beta1=1)
    with pytest.raises(ValueError):
        BetaSplit.of_beta(7)
    with pytest.raises(ValueError):
        BetaSplit.of_beta(0)


def test_p_split_residue_classes():
    s5 = PSplit.of_prime(5)
    assert (s5.t, s5.t_odd) == (2, 1)
    assert s5.s is None and s5.lam is None
    s7 = PSplit.of_prime(7)
    assert s7.t is None
    assert (s7.s, s7.s_odd) == (4, 3)  # 48 = 16 * 3
    assert (s7.lam, s7.lam_odd) == (3, 1)
    with pytest.raises(ValueError):
        PSplit.of_prime(9)
    for p in primes_upto(500):
        if p == 2:
            continue
        s = PSplit.of_prime(p)
        if p % 4 == 1:
            assert s.t >= 2 and (1 << s.t) * s.t_odd == p - 1 and s.t_odd % 2 == 1
        else:
            assert s.s >= 3 and (1 << s.s) * s.s_odd == p * p - 1 and s.s_odd % 2 == 1
            assert s.lam >= 2 and (1 << s.lam) * s.lam_odd == p + 1 and s.lam_odd % 2 == 1


def test_alpha_split():
    s = AlphaSplit.of_alpha(49, 3)  # 49 = 7^2
    assert (s.u, s.alpha1) == (2, 1)
    assert s.m >= 2
    s = AlphaSplit.of_alpha(21, 3)  # 21 = 7 * 3
    assert (s.u, s.alpha1) == (1, 3)
    assert ((1 << s.k) - 1) ** s.u * s.alpha1 == 21
    for k in (3, 5, 7):
        assert AlphaSplit.of_alpha(10, k).m >= 2


def test_exactly_divides_handles_composite_divisors():
    assert exactly_divides(6, 2, 36 * 5)
    assert not exactly_divides(6, 1, 36 * 5)
    assert not exactly_divides(6, 3, 36 * 5)
    with pytest.raises(ValueError):
        exactly_divides(1, 2, 8)


# --- valuation identities ----------------------------------------------------


def test_vs1_frozen_values():
    assert divide_out_twos(7**6 - 1) == 4
    assert divide_out_twos(31**10 - 1) == 6
    for k in (3, 5, 7):
        assert check_vs1(k)
    with pytest.raises(ValueError):
        check_vs1(4)


def test_cando_frozen_values():
    assert check_cando(3, 2)
    assert divide_out_twos(7**12 - 1) == 5
    assert check_cando(3, 4)
    assert divide_out_twos(31**30 - 1) == 6
    assert check_cando(5, 6)
    with pytest.raises(ValueError):
        check_cando(3, 3)  # odd beta has no valid split


def test_cando_grid():
    for k in (3, 5):
        for v in range(1, 4):
            for beta1 in (1, 3, 5):
                beta = (1 << v) * beta1
                assert check_cando(k, beta), (k, beta)
                assert divide_out_twos(((1 << k) - 1) ** (beta * k) - 1) == v + k


def test_appr_frozen_values():
    assert appr_exponent(3) == 2  # 2^21 - 1 = 7^2 * 127 * 337
    assert (2**21 - 1) % 49 == 0 and (2**21 - 1) % 343 != 0
    assert check_appr(3, 0, 2)  # 7^2 || 2^42 - 1
    assert check_appr(3, 0, 1)
    assert check_appr(3, 1, 1)  # 7^3 || 2^147 - 1
    assert (2**147 - 1) % 7**3 == 0 and (2**147 - 1) % 7**4 != 0
    with pytest.raises(ValueError):
        check_appr(3, 0, 7)  # alpha1 must be coprime to 2^k - 1
    with pytest.raises(ValueError):
        check_appr(3, -1, 1)


def test_appr_small_grid():
    for k in (3, 5):
        for u in (0, 1):
            for alpha1 in (1, 2, 3, 4):
                assert check_appr(k, u, alpha1), (k, u, alpha1)


def test_appr2_bound():
    for k in (3, 5, 7):
        assert check_appr2_bound(k)
        assert appr_exponent(k) < (1 << k)


def test_tv_frozen_values():
    assert divide_out_twos(5**6 - 1) == 3
    assert check_tv(5, 3, 1, 1)
    assert divide_out_twos(13**12 - 1) == 4
    assert check_tv(13, 3, 2, 1)
    assert divide_out_twos(5**30 - 1) == 3
    assert check_tv(5, 5, 1, 3)
    with pytest.raises(ValueError):
        check_tv(7, 3, 1, 1)  # 7 is 3 mod 4
    with pytest.raises(ValueError):
        check_tv(5, 3, 1, 2)  # beta1 must be odd


def test_tv2_frozen_values():
    assert divide_out_twos(3**6 - 1) == 3
    assert check_tv2(3, 3, 1, 1)
    assert divide_out_twos(7**6 - 1) == 4
    assert check_tv2(7, 3, 1, 1)
    assert divide_out_twos(3**20 - 1) == 4
    assert check_tv2(3, 5, 2, 1)
    with pytest.raises(ValueError):
        check_tv2(5, 3, 1, 1)  # 5 is 1 mod 4


def test_tv_tv2_small_grid_with_oracle():
    for p in (5, 13, 17, 29):
        t = divide_out_twos(p - 1)
        for k in (3, 5):
            for v in (1, 2, 3):
                for beta1 in (1, 3):
                    assert check_tv(p, k, v, beta1)
                    assert divide_out_twos(p ** ((1 << v) * beta1 * k) - 1) == t + v
    for p in (3, 7, 11, 19):
        s = divide_out_twos(p * p - 1)
        for k in (3, 5):
            for v in (1, 2, 3):
                for beta1 in (1, 3):
                    assert check_tv2(p, k, v, beta1)
                    assert divide_out_twos(p ** (k * (1 << v) * beta1) - 1) == v + s - 1


def test_tv2_agrees_with_vs1_on_overlap():
    # p = 2^k - 1 with v = beta1 = 1 states the same valuation as vs1
    for k in (3, 5, 7):
        p = (1 << k) - 1
        assert check_vs1(k)
        assert check_tv2(p, k, 1, 1)
        s = PSplit.of_prime(p).s
        assert 1 + s - 1 == k + 1  # both predict the same exponent


def test_sl3_frozen_values():
    assert check_sl3(2, 1, 1, 1)  # 3^2 - 1 = 8
    assert divide_out_twos(11**2 - 1) == 3
    assert check_sl3(2, 3, 1, 1)
    assert divide_out_twos(7**4 - 1) == 5
    assert check_sl3(3, 1, 2, 1)
    with pytest.raises(ValueError):
        check_sl3(1, 1, 1, 1)


def test_sl3_holds_for_composite_bases():
    # 2^2 * 9 - 1 = 35 = 5 * 7 and 2^4 * 1 - 1 = 15: not prime, identity anyway
    assert check_sl3(2, 9, 1, 1)
    assert check_sl3(4, 1, 2, 3)
    for lam in (2, 3, 4):
        for p1 in (1, 3, 5, 7, 9):
            for v in (1, 2):
                for beta1 in (1, 3):
                    assert check_sl3(lam, p1, v, beta1)


# --- bounds and trichotomy ---------------------------------------------------


def test_bound_u1_frozen_values():
    assert bound_u1(5, 5, 1)  # 5 <= 33
    assert not bound_u1(5, 5, 3)  # 78125 > 33825
    assert not bound_u1(13, 5, 2)  # 2197 > 1057
    with pytest.raises(ValueError):
        bound_u1(7, 5, 1)  # 7 is 3 mod 4


def test_bound_u1_valid_v_range_at_k5():
    # at the smallest admissible p the bound survives exactly through v = 2
    holds = [v for v in range(1, 7) if bound_u1(5, 5, v)]
    assert holds == [1, 2]


def test_bound_u1_crossmul_oracle():
    for p in (5, 13, 17):
        for k in (3, 5):
            for v in range(1, 5):
                lhs = p ** ((1 << v) - 1)
                rhs = ((1 << (k * (v + 1))) - 1) // ((1 << k) - 1)
                assert bound_u1(p, k, v) == (lhs <= rhs)


def test_bound_v3_frozen_values():
    assert bound_v3(3, 5, 4)  # 243 < 2^15/31
    assert not bound_v3(3, 5, 5)
    assert bound_v3(3, 5, 1)  # negative exponent, exact rational comparison
    with pytest.raises(ValueError):
        bound_v3(5, 5, 1)


def test_bound_v3_valid_v_range_at_k5():
    holds = [v for v in range(1, 8) if bound_v3(3, 5, v)]
    assert holds == [1, 2, 3, 4]


def test_bound_v3_crossmul_oracle():
    # rational comparison must agree with integer cross-multiplication
    for p in (3, 7, 11, 19):
        for k in (3, 5):
            for v in range(1, 6):
                e = (1 << v) - 2 * k - 1
                d = (1 << k) - 1
                r = 1 << (k * (v - 1))
                if e >= 0:
                    expected = p**e * d < r
                else:
                    expected = d < r * p ** (-e)
                assert bound_v3(p, k, v) == expected
                assert bound_v3(p, k, v) == (
                    Fraction(p) ** e < Fraction(r, d)
                )


def test_trichotomy_frozen_values():
    for beta in (2, 4, 8):
        assert Scenario.P_EQUALS_K in trichotomy_3mod4(3, 3, beta)
    assert Scenario.SCENARIO_2 in trichotomy_3mod4(7, 5, 2)
    tags8 = trichotomy_3mod4(7, 5, 8)
    assert Scenario.SCENARIO_3 in tags8 and Scenario.SCENARIO_2 not in tags8
    with pytest.raises(ValueError):
        trichotomy_3mod4(5, 5, 2)
    with pytest.raises(ValueError):
        trichotomy_3mod4(7, 5, 3)


def test_trichotomy_never_prunes_perfect_parameters():
    # beta = 2 with p = 2^alpha - 1: scenario 2 always holds
    for alpha in (2, 3, 5, 7, 13):
        p = (1 << alpha) - 1
        for k in (3, 5, 7, 13):
            assert trichotomy_3mod4(p, k, 2), (alpha, k)


def test_trichotomy_matches_direct_inequalities():
    for p in (3, 7, 11, 19, 23):
        lam = divide_out_twos(p + 1)
        for k in (3, 5):
            for beta in (2, 4, 6, 8):
                v = divide_out_twos(beta)
                tags = trichotomy_3mod4(p, k, beta)
                lhs = ((1 << lam) - 1) ** (beta - 1)
                assert (Scenario.SCENARIO_2 in tags) == (lhs <= (1 << (lam + v)) - 1)
                assert (Scenario.SCENARIO_3 in tags) == (
                    lhs <= sum(1 << (i * (lam + v)) for i in range(k))
                )
                assert (Scenario.P_EQUALS_K in tags) == (p == k)
