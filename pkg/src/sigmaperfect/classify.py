"""Exhaustive classification of n = 2**(alpha-1) * p**(beta-1) against n | sigma_k(n).

Every grid point is evaluated along independent routes: the direct
divisor-power-sum divisibility, the pair of derived divisibility
conditions, and the lemma-based pruners. The pruners encode proved
implications, so any disagreement between routes is an implementation
bug and raises CrossCheckError instead of being smoothed over. That
cross-checking, not speed, is the point of the engine.

Searches scan odd-beta grid points too: the parity argument predicts they
all fail through the first condition, and the engine checks that instead
of assuming it.
"""

from __future__ import annotations

import multiprocessing
import time
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exactint import checked_pow, geometric_sum
from .polyrem import lemma41_scaled_remainder
from .primality import is_mersenne_prime_exponent, mersenne_exponents_upto, primes_upto
from .sigma import SpecialForm, divides_sigma, factorize, is_even_perfect
from .valuations import (
    BetaSplit,
    LemmaGrid,
    bound_u1,
    bound_v3,
    check_appr,
    check_appr2_bound,
    check_cando,
    check_sl3,
    check_tv,
    check_tv2,
    check_vs1,
    trichotomy_3mod4,
)

__all__ = [
    "ClassificationReport",
    "CrossCheckError",
    "DivisibilityConditions",
    "GridRow",
    "GridStats",
    "check_lemma_f",
    "classify_point",
    "classify_theorem_main0",
    "classify_theorem_main1",
    "derive_conditions",
    "equivalence_scan",
    "expected_even_perfect",
    "explore_conjecture",
    "forward_implication",
    "lemma41_candidates",
    "run_lemma_grid",
    "scan_special_forms",
    "verify_lemma410",
]

LEMMA_TAGS = ("vs1", "cando", "appr", "appr2", "tv", "tv2", "sl3", "f", "v10", "u1", "v3", "trichotomy")

# Tags a pruner may stamp on a grid point, in the order they are tried.
PRUNE_ORDER = ("parity", "f", "u1", "v3", "trichotomy", "v10")


class CrossCheckError(RuntimeError):
    """Two supposedly equivalent evaluation routes disagreed."""


@dataclass(frozen=True)
class DivisibilityConditions:
    """The two conditions whose conjunction is equivalent to n | sigma_k(n).

    cond_k1: 2**(alpha-1) divides (p**(beta*k) - 1)/(p**k - 1)
    cond_k2: p**(beta-1) divides (2**(alpha*k) - 1)/(2**k - 1)

    cond_k1 forces beta even (the quotient is a sum of beta odd terms).
    """

    cond_k1_holds: bool
    cond_k2_holds: bool
    beta_even: bool


def derive_conditions(f: SpecialForm, bit_cap: int | None = None) -> DivisibilityConditions:
    p_quotient = geometric_sum(checked_pow(f.p, f.k, bit_cap), f.beta, bit_cap)
    two_quotient = geometric_sum(1 << f.k, f.alpha, bit_cap)
    return DivisibilityConditions(
        cond_k1_holds=p_quotient % (1 << (f.alpha - 1)) == 0,
        cond_k2_holds=two_quotient % f.p ** (f.beta - 1) == 0,
        beta_even=f.beta % 2 == 0,
    )


@dataclass(frozen=True)
class ClassificationReport:
    """Per-point verdict. elapsed is wall-clock metadata, excluded from equality."""

    form: SpecialForm
    divides: bool
    perfect: bool
    excluded_perfect: bool
    pruned_by: str | None = None
    elapsed: float = field(default=0.0, compare=False)


def _excluded_perfect_value(k: int) -> int:
    return (1 << (k - 1)) * ((1 << k) - 1)


def _pruned_by(f: SpecialForm) -> str | None:
    """First pruner (in PRUNE_ORDER) predicting non-divisibility, if any.

    Callers guarantee k is a Mersenne exponent > 2. All pruners except
    "v10" are derived without the p-bound and apply to any form; the
    quartic pruner needs the bound (its case split rests on it), so it is
    gated on satisfies_p_bound().
    """
    if f.beta % 2:
        return "parity"
    if f.p == (1 << f.k) - 1:
        return "f"
    v = BetaSplit.of_beta(f.beta).v
    if f.p % 4 == 1:
        if not bound_u1(f.p, f.k, v):
            return "u1"
    else:
        if not bound_v3(f.p, f.k, v):
            return "v3"
        if not trichotomy_3mod4(f.p, f.k, f.beta):
            return "trichotomy"
        if f.k == 5 and f.beta == 4 and f.satisfies_p_bound():
            return "v10"
    return None


def classify_point(f: SpecialForm, bit_cap: int | None = None) -> ClassificationReport:
    """Evaluate one grid point along all routes, raising on any disagreement."""
    t0 = time.perf_counter()
    conditions = derive_conditions(f, bit_cap)
    divides = divides_sigma(f, bit_cap)
    if divides != (conditions.cond_k1_holds and conditions.cond_k2_holds):
        raise CrossCheckError(f"conditions disagree with direct divisibility at {f}")
    if conditions.cond_k1_holds and not conditions.beta_even:
        raise CrossCheckError(f"first condition held with odd beta at {f}")
    pruned = _pruned_by(f)
    if pruned is not None and divides:
        raise CrossCheckError(f"pruner {pruned!r} contradicts a found solution at {f}")
    n = f.n()
    perfect = is_even_perfect(n)
    return ClassificationReport(
        form=f,
        divides=divides,
        perfect=perfect,
        excluded_perfect=n == _excluded_perfect_value(f.k),
        pruned_by=pruned,
        elapsed=time.perf_counter() - t0,
    )


@dataclass(frozen=True)
class GridStats:
    points_scanned: int
    pruned_points: int
    scenario1_points: int


def _require_search_k(k: int) -> None:
    if k <= 2 or not is_mersenne_prime_exponent(k):
        raise ValueError(f"k must be a prime > 2 with 2**k - 1 prime, got {k}")


def _scan_alpha(task: tuple[int, int, int, int | None]):
    k, alpha, beta_max, bit_cap = task
    bound = 3 * (1 << (alpha - 1)) - 1
    solutions: list[ClassificationReport] = []
    points = pruned = scenario1 = 0
    for p in primes_upto(bound - 1):
        if p == 2:
            continue
        for beta in range(2, beta_max + 1):
            report = classify_point(SpecialForm.trusted(alpha, p, beta, k), bit_cap)
            points += 1
            if report.pruned_by is not None:
                pruned += 1
            if p == k and beta % 2 == 0 and p % 4 == 3:
                scenario1 += 1
            if report.divides:
                solutions.append(report)
    return solutions, points, pruned, scenario1


def scan_special_forms(
    k: int,
    alpha_max: int,
    beta_max: int = 2,
    workers: int = 1,
    bit_cap: int | None = None,
) -> tuple[list[ClassificationReport], GridStats]:
    """Scan every (alpha, p, beta) with 2 <= alpha <= alpha_max, p an odd
    prime under the p-bound, 2 <= beta <= beta_max; return the solutions
    sorted by n, plus scan statistics.

    The grid is partitioned by alpha across workers; each worker is pure
    on its slice and the merge is a deterministic sort, so worker count
    never changes the result.
    """
    _require_search_k(k)
    if alpha_max < 2 or beta_max < 2:
        raise ValueError("alpha_max and beta_max must be >= 2")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    tasks = [(k, alpha, beta_max, bit_cap) for alpha in range(2, alpha_max + 1)]
    if workers == 1:
        chunks = [_scan_alpha(t) for t in tasks]
    else:
        with multiprocessing.Pool(workers) as pool:
            chunks = pool.map(_scan_alpha, tasks)
    reports = sorted(
        (r for chunk in chunks for r in chunk[0]), key=lambda r: r.form.n()
    )
    stats = GridStats(
        points_scanned=sum(c[1] for c in chunks),
        pruned_points=sum(c[2] for c in chunks),
        scenario1_points=sum(c[3] for c in chunks),
    )
    return reports, stats


def expected_even_perfect(k: int, alpha_max: int) -> list[int]:
    """Even perfect numbers reachable by the grid, minus the excluded one.

    These are 2**(q-1) * (2**q - 1) for Mersenne exponents q <= alpha_max
    with q != k; each such p = 2**q - 1 automatically satisfies the
    p-bound.
    """
    return [
        (1 << (q - 1)) * ((1 << q) - 1)
        for q in mersenne_exponents_upto(alpha_max)
        if q != k
    ]


def classify_theorem_main0(
    k: int, alpha_max: int, workers: int = 1, bit_cap: int | None = None
) -> list[ClassificationReport]:
    """beta = 2 search asserting solutions are exactly the even perfect
    numbers in range other than 2**(k-1) * (2**k - 1)."""
    reports, _ = scan_special_forms(k, alpha_max, beta_max=2, workers=workers, bit_cap=bit_cap)
    _assert_solutions_perfect(reports, expected_even_perfect(k, alpha_max), k)
    return reports


def classify_theorem_main1(
    alpha_max: int, beta_max: int, workers: int = 1, bit_cap: int | None = None
) -> list[ClassificationReport]:
    """Full (alpha, p, beta) search at k = 5, asserting solutions are exactly
    the even perfect numbers in range other than 496, all with beta = 2."""
    reports, _ = scan_special_forms(5, alpha_max, beta_max=beta_max, workers=workers, bit_cap=bit_cap)
    _assert_solutions_perfect(reports, expected_even_perfect(5, alpha_max), 5)
    for r in reports:
        if r.form.beta != 2:
            raise CrossCheckError(f"solution with beta != 2 at {r.form}")
    return reports


def explore_conjecture(
    k: int, alpha_max: int, beta_max: int, workers: int = 1, bit_cap: int | None = None
) -> list[ClassificationReport]:
    """Same grid as classify_theorem_main1 for an arbitrary Mersenne k.

    Solutions outside the even-perfect prediction are returned for
    inspection, never asserted away: the statement is open for k not in
    {3, 5}, so a violation here would be a finding, not a bug. Internal
    route disagreements still raise.
    """
    reports, _ = scan_special_forms(k, alpha_max, beta_max=beta_max, workers=workers, bit_cap=bit_cap)
    return reports


def _assert_solutions_perfect(
    reports: Sequence[ClassificationReport], expected: Sequence[int], k: int
) -> None:
    got = [r.form.n() for r in reports]
    if got != list(expected):
        raise CrossCheckError(
            f"solution set {got} differs from predicted even perfect set {list(expected)} for k={k}"
        )
    for r in reports:
        if not r.perfect or r.excluded_perfect:
            raise CrossCheckError(f"non-perfect or excluded solution reported: {r}")


def check_lemma_f(k: int, alpha: int, beta: int, bit_cap: int | None = None) -> bool:
    """n = 2**(alpha-1) * (2**k - 1)**(beta-1) never divides sigma_k(n).

    Always true when 2**k - 1 is prime; a False return is an
    implementation bug.
    """
    if k <= 2 or not is_mersenne_prime_exponent(k):
        raise ValueError(f"2**{k} - 1 must be a Mersenne prime with k > 2, got k={k}")
    f = SpecialForm(alpha=alpha, p=(1 << k) - 1, beta=beta, k=k)
    return not divides_sigma(f, bit_cap)


def lemma41_candidates() -> list[SpecialForm]:
    """The only beta = 4, p = 3 (mod 4) forms the quartic remainder table
    cannot dismiss outright; each must still fail the divisibility check.

    Derived, not hardcoded: a surviving p must divide the scaled remainder
    for its case and satisfy p = k1 * 2**(alpha-2) - 1, which pins alpha.
    The p**3 | 2**alpha - 1 route contributes (alpha, p) = (4, 3).
    """
    out = [SpecialForm(alpha=4, p=3, beta=4, k=5)]
    for k1 in range(1, 6):
        _, remainder = lemma41_scaled_remainder(k1)
        for p in sorted(factorize(remainder)):
            if p % 4 != 3:
                continue
            if (p + 1) % k1:
                continue
            power_of_two = (p + 1) // k1
            if power_of_two < 1 or power_of_two & (power_of_two - 1):
                continue
            alpha = power_of_two.bit_length() + 1
            if alpha <= 1:
                continue
            form = SpecialForm(alpha=alpha, p=p, beta=4, k=5)
            if form.satisfies_p_bound():
                out.append(form)
    return out


def verify_lemma410(alpha_max: int, bit_cap: int | None = None) -> bool:
    """No n = 2**(alpha-1) * p**3 with p = 3 (mod 4) under the p-bound
    divides sigma_5(n), over 2 <= alpha <= alpha_max; the remainder-table
    candidates are re-checked explicitly as well."""
    for form in lemma41_candidates():
        if divides_sigma(form, bit_cap):
            return False
    for alpha in range(2, alpha_max + 1):
        bound = 3 * (1 << (alpha - 1)) - 1
        for p in primes_upto(bound - 1):
            if p == 2 or p % 4 != 3:
                continue
            if divides_sigma(SpecialForm.trusted(alpha, p, 4, 5), bit_cap):
                return False
    return True


def forward_implication(q: int, k: int, bit_cap: int | None = None) -> bool:
    """Does the even perfect number 2**(q-1) * (2**q - 1) divide its own
    k-th divisor-power sum? True whenever q != k and both exponents give
    Mersenne primes."""
    if not is_mersenne_prime_exponent(q):
        raise ValueError(f"2**{q} - 1 must be prime")
    _require_search_k(k)
    if q == k:
        raise ValueError("q = k is the excluded perfect number; the claim needs q != k")
    return divides_sigma(SpecialForm(alpha=q, p=(1 << q) - 1, beta=2, k=k), bit_cap)


# ---------------------------------------------------------------------------
# Equivalence sweep: conditions vs direct divisibility over all small forms.
# ---------------------------------------------------------------------------

_EQ_PRIMES: list[int] = []


def _equivalence_init(limit: int) -> None:
    global _EQ_PRIMES
    _EQ_PRIMES = primes_upto(limit)


def _equivalence_chunk(task: tuple[int, int, int, int, int]) -> int:
    k, alpha, lo, hi, n_limit = task
    odd_limit = n_limit >> (alpha - 1)
    count = 0
    for p in _EQ_PRIMES[lo:hi]:
        p_power = p
        beta = 2
        while p_power <= odd_limit:
            f = SpecialForm.trusted(alpha, p, beta, k)
            conditions = derive_conditions(f)
            divides = divides_sigma(f)
            if divides != (conditions.cond_k1_holds and conditions.cond_k2_holds):
                raise CrossCheckError(f"equivalence failed at {f}")
            if conditions.cond_k1_holds and beta % 2:
                raise CrossCheckError(f"first condition held with odd beta at {f}")
            count += 1
            p_power *= p
            beta += 1
    return count


def equivalence_scan(
    n_limit: int, ks: Iterable[int] = (3, 5, 7), workers: int = 1
) -> int:
    """Check derive_conditions against divides_sigma on every special form
    with n <= n_limit, once per exponent in ks. Returns the number of
    (form, k) pairs checked; raises CrossCheckError on any disagreement.

    The p-bound is deliberately not applied here: the equivalence is an
    identity about the factored shape, not about the bounded search grid.
    """
    ks = tuple(ks)
    if n_limit < 6 or not ks:
        raise ValueError("need n_limit >= 6 and at least one exponent")
    prime_limit = n_limit >> 1
    _equivalence_init(prime_limit)
    tasks = []
    chunk = 20_000
    alpha = 2
    while (1 << (alpha - 1)) * 3 <= n_limit:
        hi_idx = bisect_right(_EQ_PRIMES, n_limit >> (alpha - 1))
        lo_idx = 1  # skip the prime 2
        for k in ks:
            for start in range(lo_idx, hi_idx, chunk):
                tasks.append((k, alpha, start, min(start + chunk, hi_idx), n_limit))
        alpha += 1
    if workers == 1:
        counts = [_equivalence_chunk(t) for t in tasks]
    else:
        with multiprocessing.Pool(
            workers, initializer=_equivalence_init, initargs=(prime_limit,)
        ) as pool:
            counts = pool.map(_equivalence_chunk, tasks)
    return sum(counts)


# ---------------------------------------------------------------------------
# Lemma grid runner backing the check-lemma command.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GridRow:
    """One grid point of a lemma suite. ok is None for informational rows."""

    label: str
    outcome: str
    ok: bool | None


def _bool_row(label: str, passed: bool) -> GridRow:
    return GridRow(label=label, outcome="pass" if passed else "FAIL", ok=passed)


def _odd_values(limit: int) -> list[int]:
    return list(range(1, limit + 1, 2))


def run_lemma_grid(tag: str, grid: LemmaGrid) -> list[GridRow]:
    """Evaluate one lemma tag over its sampled grid.

    Tags vs1, cando, appr, appr2, tv, tv2, sl3, f and v10 are proved
    statements: every row must pass. Tags u1, v3 and trichotomy evaluate
    parameter-dependent bounds and are informational.
    """
    if tag not in LEMMA_TAGS:
        raise ValueError(f"unknown lemma tag {tag!r}; expected one of {', '.join(LEMMA_TAGS)}")
    rows: list[GridRow] = []
    cap = grid.bit_cap

    if tag == "vs1":
        for k in grid.k_values:
            rows.append(_bool_row(f"k={k}", check_vs1(k)))
    elif tag == "cando":
        for k in grid.k_values:
            for v in range(1, grid.v_max + 1):
                for beta1 in _odd_values(grid.beta1_max):
                    beta = (1 << v) * beta1
                    rows.append(
                        _bool_row(f"k={k} beta={beta}", check_cando(k, beta, cap))
                    )
    elif tag == "appr":
        for k in grid.k_values:
            mersenne = (1 << k) - 1
            for u in range(grid.u_max + 1):
                for alpha1 in range(1, grid.alpha1_max + 1):
                    if alpha1 % mersenne == 0:
                        continue
                    rows.append(
                        _bool_row(
                            f"k={k} u={u} alpha1={alpha1}", check_appr(k, u, alpha1, cap)
                        )
                    )
    elif tag == "appr2":
        for k in grid.k_values:
            rows.append(_bool_row(f"k={k}", check_appr2_bound(k, cap)))
    elif tag in ("tv", "tv2"):
        residue = 1 if tag == "tv" else 3
        checker = check_tv if tag == "tv" else check_tv2
        for p in primes_upto(grid.p_max - 1):
            if p == 2 or p % 4 != residue:
                continue
            for k in grid.k_values:
                for v in range(1, grid.v_max + 1):
                    for beta1 in _odd_values(grid.beta1_max):
                        rows.append(
                            _bool_row(
                                f"p={p} k={k} v={v} beta1={beta1}",
                                checker(p, k, v, beta1, cap),
                            )
                        )
    elif tag == "sl3":
        for lam in range(2, grid.lambda_max + 1):
            for p1 in _odd_values(grid.p1_max):
                for v in range(1, grid.v_max + 1):
                    for beta1 in _odd_values(grid.beta1_max):
                        rows.append(
                            _bool_row(
                                f"lam={lam} p1={p1} v={v} beta1={beta1}",
                                check_sl3(lam, p1, v, beta1, cap),
                            )
                        )
    elif tag == "f":
        for k in grid.k_values:
            if not is_mersenne_prime_exponent(k):
                continue
            for alpha in range(2, grid.alpha_max + 1):
                for beta in range(2, grid.beta_max + 1):
                    rows.append(
                        _bool_row(
                            f"k={k} alpha={alpha} beta={beta}",
                            check_lemma_f(k, alpha, beta, cap),
                        )
                    )
    elif tag == "v10":
        for form in lemma41_candidates():
            rows.append(
                _bool_row(
                    f"candidate alpha={form.alpha} p={form.p}",
                    not divides_sigma(form, cap),
                )
            )
        for alpha in range(2, grid.alpha_max + 1):
            bound = 3 * (1 << (alpha - 1)) - 1
            for p in primes_upto(bound - 1):
                if p == 2 or p % 4 != 3:
                    continue
                ok = not divides_sigma(SpecialForm.trusted(alpha, p, 4, 5), cap)
                rows.append(_bool_row(f"alpha={alpha} p={p}", ok))
    elif tag == "u1":
        for p in primes_upto(grid.p_max - 1):
            if p == 2 or p % 4 != 1:
                continue
            for k in grid.k_values:
                for v in range(1, grid.v_max + 1):
                    holds = bound_u1(p, k, v)
                    rows.append(
                        GridRow(
                            label=f"p={p} k={k} v={v}",
                            outcome="holds" if holds else "fails",
                            ok=None,
                        )
                    )
    elif tag == "v3":
        for p in primes_upto(grid.p_max - 1):
            if p == 2 or p % 4 != 3:
                continue
            for k in grid.k_values:
                for v in range(1, grid.v_max + 1):
                    holds = bound_v3(p, k, v)
                    rows.append(
                        GridRow(
                            label=f"p={p} k={k} v={v}",
                            outcome="holds" if holds else "fails",
                            ok=None,
                        )
                    )
    else:  # trichotomy
        for p in primes_upto(grid.p_max - 1):
            if p == 2 or p % 4 != 3:
                continue
            for k in grid.k_values:
                for v in range(1, grid.v_max + 1):
                    beta = 1 << v
                    scenarios = trichotomy_3mod4(p, k, beta, cap)
                    outcome = (
                        ",".join(sorted(s.value for s in scenarios)) if scenarios else "NONE"
                    )
                    rows.append(
                        GridRow(label=f"p={p} k={k} beta={beta}", outcome=outcome, ok=None)
                    )
    return rows
