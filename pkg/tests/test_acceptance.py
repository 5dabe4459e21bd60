"""Acceptance suite: one test per exit criterion, printing one line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the PASS/FAIL lines
inline. Every tolerance is exact (integer arithmetic); the two timed
criteria carry their stated wall-clock budgets.
"""

import json
import time

from sigmaperfect.classify import (
    check_lemma_f,
    equivalence_scan,
    lemma41_candidates,
    run_lemma_grid,
    verify_lemma410,
)
from sigmaperfect.cli import main, parse_run_record
from sigmaperfect.polyrem import lemma41_remainder, remainder_at_half
from sigmaperfect.sigma import SpecialForm, sigma_k
from sigmaperfect.valuations import LemmaGrid
from fractions import Fraction


def _report(number: int, description: str, passed: bool) -> None:
    print(f"{'PASS' if passed else 'FAIL'}: criterion {number}: {description}")
    assert passed, f"criterion {number} failed: {description}"


def _run_search(tmp_path, *argv):
    out = tmp_path / "run.jsonl"
    code = main([*argv, "--out", str(out)])
    return code, out.read_text()


def _solution_ns(text: str) -> list[str]:
    return [
        obj["n"]
        for obj in (json.loads(line) for line in text.strip().splitlines())
        if obj["record"] == "solution"
    ]


def test_criterion_1_sigma5_full_search(tmp_path):
    t0 = time.perf_counter()
    code, text = _run_search(
        tmp_path, "search", "--k", "5", "--alpha-max", "13", "--beta-max", "16"
    )
    elapsed = time.perf_counter() - t0
    ok = (
        code == 0
        and _solution_ns(text) == ["6", "28", "8128", "33550336"]
        and elapsed < 300
    )
    _report(
        1,
        f"k=5 search over alpha<=13, beta<=16 returns exactly "
        f"{{6, 28, 8128, 33550336}} in {elapsed:.1f}s",
        ok,
    )


def test_criterion_2_sigma3_precursor(tmp_path):
    code, text = _run_search(
        tmp_path, "search", "--k", "3", "--alpha-max", "13", "--beta-max", "16"
    )
    ok = code == 0 and _solution_ns(text) == ["6", "496", "8128", "33550336"]
    _report(2, "k=3 search over the same grid returns {6, 496, 8128, 33550336}", ok)


def test_criterion_3_counterexample_fixtures():
    ok = sigma_k(22, 5) % 22 == 0 and sigma_k(86, 7) % 86 == 0
    ok = ok and not SpecialForm(alpha=2, p=11, beta=2, k=5).satisfies_p_bound()
    ok = ok and not SpecialForm(alpha=2, p=43, beta=2, k=7).satisfies_p_bound()
    _report(3, "sigma_5(22) = 0 mod 22 and sigma_7(86) = 0 mod 86, both outside the p-bound", ok)


def test_criterion_4_lemma_oracle_suite():
    grid = LemmaGrid()  # k in {3,5,7}, p < 500, v <= 5, beta1 <= 9, u <= 1
    t0 = time.perf_counter()
    total = failed = 0
    for tag in ("vs1", "cando", "appr", "appr2", "tv", "tv2", "sl3"):
        rows = run_lemma_grid(tag, grid)
        total += len(rows)
        failed += sum(1 for r in rows if not r.ok)
    elapsed = time.perf_counter() - t0
    ok = failed == 0 and total > 0 and elapsed < 120
    _report(
        4,
        f"valuation oracles pass on 100% of their grids "
        f"({total} points, {failed} failures, {elapsed:.1f}s)",
        ok,
    )


def test_criterion_5_polynomial_remainder_table():
    expected = [
        Fraction(341),
        Fraction(31),
        Fraction(781, 81),
        Fraction(5),
        Fraction(2101, 625),
    ]
    ok = [lemma41_remainder(k1) for k1 in range(1, 6)] == expected
    ok = ok and all(remainder_at_half(k) == (1 << k) - 1 for k in range(2, 21))
    _report(5, "remainder table is (341, 31, 781/81, 5, 2101/625) and 2^k - 1 at x/2 - 1", ok)


def test_criterion_6_non_divisibility_lemmas():
    ok = all(
        check_lemma_f(k, alpha, beta)
        for k in (3, 5, 7)
        for alpha in range(2, 9)
        for beta in range(2, 7)
    )
    ok = ok and verify_lemma410(10)
    spot = {(4, 3), (7, 31), (6, 31), (4, 11)}  # 2^3 3^3, 2^6 31^3, 2^5 31^3, 2^3 11^3
    ok = ok and spot == {(f.alpha, f.p) for f in lemma41_candidates()}
    for alpha, p in sorted(spot):
        n = 2 ** (alpha - 1) * p**3
        ok = ok and sigma_k(n, 5) % n != 0
    _report(6, "no divisibility across the two-prime and quartic grids, spot checks included", ok)


def test_criterion_7_condition_equivalence_to_1e7():
    checked = equivalence_scan(10**7, ks=(3, 5, 7))
    ok = checked > 500_000
    _report(
        7,
        f"derived conditions match direct divisibility on all {checked} "
        f"(form, k) pairs with n <= 1e7",
        ok,
    )


def test_criterion_8_conjecture_evidence_runs(tmp_path):
    ok = True
    for k, alpha_max, beta_max in ((7, 10, 8), (13, 8, 4)):
        code, text = _run_search(
            tmp_path,
            "search", "--k", str(k),
            "--alpha-max", str(alpha_max), "--beta-max", str(beta_max),
        )
        record = parse_run_record(text)  # well-formed report required
        lines = [json.loads(line) for line in text.strip().splitlines()]
        summary = next(obj for obj in lines if obj["record"] == "summary")
        ok = ok and code == 0 and summary["mode"] == "conjecture"
        ok = ok and all(r.perfect and not r.excluded_perfect for r in record.reports)
    _report(8, "conjecture evidence runs for k=7 and k=13 report no non-perfect solutions", ok)
