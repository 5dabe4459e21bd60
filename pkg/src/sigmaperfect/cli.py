"""Command-line front end: searches, lemma grids, and structured output.

json-lines is the canonical machine format. Integer payload fields are
rendered as decimal strings so downstream tooling never truncates them to
64-bit floats; csv and human are derived views. All wall-clock timing
lives in the header line, keeping the solution and summary lines
byte-identical across runs of the same config and version.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields, replace
from datetime import datetime, timezone

from . import __version__
from .classify import (
    ClassificationReport,
    CrossCheckError,
    classify_theorem_main0,
    classify_theorem_main1,
    expected_even_perfect,
    explore_conjecture,
    run_lemma_grid,
    scan_special_forms,
    LEMMA_TAGS,
)
from .exactint import DEFAULT_BIT_CAP, OperandSizeError
from .primality import mersenne_exponents_upto
from .sigma import PerfectWitness, SpecialForm, sigma_k
from .valuations import LemmaGrid

ENV_CONFIG = "SIGMAPERFECT_CONFIG"
FORMATS = ("json-lines", "csv", "human")

_ALL_MERSENNE_PREFIX = "all-mersenne-upto-"


@dataclass(frozen=True)
class SearchConfig:
    """Search parameters; k is a decimal exponent or 'all-mersenne-upto-K'."""

    k: str = "5"
    alpha_max: int = 13
    beta_max: int = 16
    workers: int = 1
    bit_cap: int = DEFAULT_BIT_CAP
    output_path: str = ""
    format: str = "json-lines"

    def __post_init__(self) -> None:
        if self.alpha_max < 2 or self.beta_max < 2:
            raise ValueError("alpha_max and beta_max must be >= 2")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {', '.join(FORMATS)}")
        self.exponents()  # fail fast on an unparsable k

    def exponents(self) -> list[int]:
        if self.k.startswith(_ALL_MERSENNE_PREFIX):
            bound = int(self.k[len(_ALL_MERSENNE_PREFIX):])
            return [q for q in mersenne_exponents_upto(bound) if q > 2]
        return [int(self.k)]

    def render(self) -> str:
        """Flat key=value text, one field per line; parse() inverts it."""
        return "".join(f"{f.name}={getattr(self, f.name)}\n" for f in fields(self))

    @classmethod
    def parse(cls, text: str) -> "SearchConfig":
        values: dict[str, str] = {}
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"malformed config line: {raw!r}")
            values[key.strip()] = value.strip()
        kwargs = {}
        for f in fields(cls):
            if f.name not in values:
                continue
            raw_value = values.pop(f.name)
            kwargs[f.name] = int(raw_value) if f.type == "int" else raw_value
        if values:
            raise ValueError(f"unknown config keys: {', '.join(sorted(values))}")
        return cls(**kwargs)


@dataclass
class RunRecord:
    config: SearchConfig
    reports: list[ClassificationReport]
    tool_version: str
    started: str
    finished: str


# ---------------------------------------------------------------------------
# Wire formats
# ---------------------------------------------------------------------------


def _report_fields(r: ClassificationReport) -> dict:
    return {
        "n": str(r.form.n()),
        "alpha": str(r.form.alpha),
        "p": str(r.form.p),
        "beta": str(r.form.beta),
        "k": str(r.form.k),
        "divides": r.divides,
        "perfect": r.perfect,
        "excluded_perfect": r.excluded_perfect,
        "pruned_by": r.pruned_by,
    }


def _report_from_fields(obj: dict) -> ClassificationReport:
    form = SpecialForm(
        alpha=int(obj["alpha"]), p=int(obj["p"]), beta=int(obj["beta"]), k=int(obj["k"])
    )
    return ClassificationReport(
        form=form,
        divides=obj["divides"],
        perfect=obj["perfect"],
        excluded_perfect=obj["excluded_perfect"],
        pruned_by=obj["pruned_by"],
    )


def render_json_lines(record: RunRecord, summaries: list[dict]) -> str:
    header = {
        "record": "header",
        "tool_version": record.tool_version,
        "started": record.started,
        "finished": record.finished,
        "config": {f.name: str(getattr(record.config, f.name)) for f in fields(SearchConfig)},
    }
    lines = [json.dumps(header, sort_keys=True)]
    for r in record.reports:
        lines.append(json.dumps({"record": "solution", **_report_fields(r)}, sort_keys=True))
    for summary in summaries:
        lines.append(json.dumps({"record": "summary", **summary}, sort_keys=True))
    return "\n".join(lines) + "\n"


def parse_run_record(text: str) -> RunRecord:
    """Invert render_json_lines; summary lines carry no record state."""
    header = None
    reports = []
    for line in text.splitlines():
        if not line.strip():
            continue
        obj = json.loads(line)
        kind = obj.get("record")
        if kind == "header":
            header = obj
        elif kind == "solution":
            reports.append(_report_from_fields(obj))
    if header is None:
        raise ValueError("no header line found")
    cfg = header["config"]
    config = SearchConfig(
        k=cfg["k"],
        alpha_max=int(cfg["alpha_max"]),
        beta_max=int(cfg["beta_max"]),
        workers=int(cfg["workers"]),
        bit_cap=int(cfg["bit_cap"]),
        output_path=cfg["output_path"],
        format=cfg["format"],
    )
    return RunRecord(
        config=config,
        reports=reports,
        tool_version=header["tool_version"],
        started=header["started"],
        finished=header["finished"],
    )


_CSV_COLUMNS = ("n", "alpha", "p", "beta", "k", "divides", "perfect", "excluded_perfect", "pruned_by")


def render_csv(record: RunRecord) -> str:
    lines = [",".join(_CSV_COLUMNS)]
    for r in record.reports:
        row = _report_fields(r)
        lines.append(",".join("" if row[c] is None else str(row[c]) for c in _CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def render_human(record: RunRecord, summaries: list[dict]) -> str:
    widths = {"n": 12, "alpha": 5, "p": 7, "beta": 4, "k": 3}
    head = "  ".join(name.rjust(w) for name, w in widths.items())
    lines = [head + "  divides  perfect  excluded  pruned_by"]
    for r in record.reports:
        row = _report_fields(r)
        cells = "  ".join(str(row[name]).rjust(w) for name, w in widths.items())
        lines.append(
            f"{cells}  {_yn(r.divides):>7}  {_yn(r.perfect):>7}  {_yn(r.excluded_perfect):>8}  "
            f"{r.pruned_by or '-'}"
        )
    for s in summaries:
        status = "MATCH" if s["matches_expected"] else "MISMATCH"
        lines.append(
            f"k={s['k']}: {len(s['solutions'])} solution(s), {s['mode']} mode, {status}; "
            f"points={s['points_scanned']} pruned={s['pruned_points']} "
            f"scenario1={s['scenario1_points']}"
        )
    return "\n".join(lines) + "\n"


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_sigma(args: argparse.Namespace) -> int:
    if args.n < 1:
        raise ValueError(f"n must be >= 1, got {args.n}")
    if args.k < 1:
        raise ValueError(f"k must be >= 1, got {args.k}")
    value = sigma_k(args.n, args.k)
    residue = value % args.n
    print(f"sigma_{args.k}({args.n}) = {value}")
    print(f"sigma_{args.k}({args.n}) mod {args.n} = {residue}")
    print(f"{args.n} divides sigma_{args.k}({args.n}): {_yn(residue == 0)}")
    return 0


def _load_search_config(args: argparse.Namespace) -> SearchConfig:
    config = SearchConfig()
    path = args.config or os.environ.get(ENV_CONFIG)
    if path:
        with open(path, encoding="utf-8") as fh:
            config = SearchConfig.parse(fh.read())
    overrides = {}
    for flag, name in (
        ("k", "k"),
        ("alpha_max", "alpha_max"),
        ("beta_max", "beta_max"),
        ("workers", "workers"),
        ("bit_cap", "bit_cap"),
        ("out", "output_path"),
        ("format", "format"),
    ):
        value = getattr(args, flag, None)
        if value is not None:
            overrides[name] = value
    return replace(config, **overrides) if overrides else config


def cmd_search(args: argparse.Namespace) -> int:
    config = _load_search_config(args)
    started = _utcnow()
    reports: list[ClassificationReport] = []
    summaries: list[dict] = []
    all_match = True
    for k in config.exponents():
        found, stats = scan_special_forms(
            k, config.alpha_max, config.beta_max, config.workers, config.bit_cap
        )
        expected = expected_even_perfect(k, config.alpha_max)
        got = [r.form.n() for r in found]
        matches = got == expected
        all_match = all_match and matches
        mode = "theorem" if k in (3, 5) or config.beta_max == 2 else "conjecture"
        summaries.append(
            {
                "k": str(k),
                "solutions": [str(n) for n in got],
                "expected": [str(n) for n in expected],
                "matches_expected": matches,
                "mode": mode,
                "points_scanned": str(stats.points_scanned),
                "pruned_points": str(stats.pruned_points),
                "scenario1_points": str(stats.scenario1_points),
            }
        )
        reports.extend(found)
    reports.sort(key=lambda r: (r.form.n(), r.form.k))
    record = RunRecord(
        config=config,
        reports=reports,
        tool_version=__version__,
        started=started,
        finished=_utcnow(),
    )
    if config.format == "json-lines":
        text = render_json_lines(record, summaries)
    elif config.format == "csv":
        text = render_csv(record)
    else:
        text = render_human(record, summaries)
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not all_match:
        for s in summaries:
            if not s["matches_expected"]:
                blame = (
                    "implementation bug" if s["mode"] == "theorem" else "conjecture finding"
                )
                print(
                    f"discrepancy at k={s['k']} ({blame}): got {s['solutions']}, "
                    f"expected {s['expected']}",
                    file=sys.stderr,
                )
        return 2
    return 0


def cmd_verify_theorem(args: argparse.Namespace) -> int:
    k = args.k
    workers = args.workers or 1
    if args.beta_max is None or args.beta_max == 2:
        reports = classify_theorem_main0(k, args.alpha_max, workers=workers)
        label = f"beta=2 classification at k={k}"
    elif k == 5:
        reports = classify_theorem_main1(args.alpha_max, args.beta_max, workers=workers)
        label = f"full classification at k=5, beta up to {args.beta_max}"
    elif k == 3:
        reports = explore_conjecture(3, args.alpha_max, args.beta_max, workers=workers)
        got = [r.form.n() for r in reports]
        if got != expected_even_perfect(3, args.alpha_max):
            raise CrossCheckError(f"k=3 full classification mismatch: {got}")
        label = f"full classification at k=3, beta up to {args.beta_max}"
    else:
        raise ValueError(
            f"the full-beta statement is only proved for k in (3, 5); "
            f"use 'search' to gather evidence for k={k}"
        )
    ns = ", ".join(str(r.form.n()) for r in reports)
    print(f"verified: {label}; solutions = {{{ns}}}")
    return 0


def cmd_check_lemma(args: argparse.Namespace) -> int:
    grid = LemmaGrid(
        k_values=args.k,
        p_max=args.p_max,
        v_max=args.v_max,
        beta1_max=args.beta1_max,
        u_max=args.u_max,
        alpha1_max=args.alpha1_max,
        lambda_max=args.lambda_max,
        p1_max=args.p1_max,
        alpha_max=args.alpha_max,
        beta_max=args.beta_max,
        bit_cap=args.bit_cap,
    )
    rows = run_lemma_grid(args.tag, grid)
    for row in rows:
        print(f"{args.tag}  {row.label}: {row.outcome}")
    checked = [r for r in rows if r.ok is not None]
    failed = [r for r in checked if not r.ok]
    if checked:
        print(f"{args.tag}: {len(checked) - len(failed)}/{len(checked)} pass")
        return 0 if not failed else 2
    print(f"{args.tag}: {len(rows)} informational row(s)")
    return 0


def cmd_mersenne(args: argparse.Namespace) -> int:
    for k in mersenne_exponents_upto(args.upto):
        print(f"{k}  {(1 << k) - 1}")
    return 0


def cmd_perfect(args: argparse.Namespace) -> int:
    exponents = [args.exponent] if args.exponent else mersenne_exponents_upto(args.upto)
    for q in exponents:
        witness = PerfectWitness.from_exponent(q)
        verified = sigma_k(witness.n, 1) == 2 * witness.n
        print(f"q={q}  n={witness.n}  sigma(n)=2n: {_yn(verified)}")
        if not verified:
            return 2
    return 0


def _utcnow() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _csv_ints(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(","))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sigmaperfect",
        description="Exact classification of n = 2^(a-1) p^(b-1) against n | sigma_k(n)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sigma = sub.add_parser("sigma", help="print sigma_k(n) and the divisibility verdict")
    p_sigma.add_argument("n", type=int)
    p_sigma.add_argument("k", type=int)
    p_sigma.set_defaults(func=cmd_sigma)

    p_search = sub.add_parser("search", help="exhaustive grid search with cross-checks")
    p_search.add_argument("--k", help="exponent, or all-mersenne-upto-K")
    p_search.add_argument("--alpha-max", dest="alpha_max", type=int)
    p_search.add_argument("--beta-max", dest="beta_max", type=int)
    p_search.add_argument("--workers", type=int)
    p_search.add_argument("--bit-cap", dest="bit_cap", type=int)
    p_search.add_argument("--out")
    p_search.add_argument("--format", choices=FORMATS)
    p_search.add_argument("--config", help=f"key=value config file (or ${ENV_CONFIG})")
    p_search.set_defaults(func=cmd_search)

    p_verify = sub.add_parser("verify-theorem", help="search and assert the predicted solution set")
    p_verify.add_argument("--k", type=int, default=5)
    p_verify.add_argument("--alpha-max", dest="alpha_max", type=int, default=13)
    p_verify.add_argument("--beta-max", dest="beta_max", type=int, default=None)
    p_verify.add_argument("--workers", type=int, default=1)
    p_verify.set_defaults(func=cmd_verify_theorem)

    p_lemma = sub.add_parser("check-lemma", help="run one lemma oracle over a parameter grid")
    p_lemma.add_argument("tag", choices=LEMMA_TAGS)
    p_lemma.add_argument("--k", type=_csv_ints, default=(3, 5, 7), help="comma-separated exponents")
    p_lemma.add_argument("--p-max", dest="p_max", type=int, default=500)
    p_lemma.add_argument("--v-max", dest="v_max", type=int, default=5)
    p_lemma.add_argument("--beta1-max", dest="beta1_max", type=int, default=9)
    p_lemma.add_argument("--u-max", dest="u_max", type=int, default=1)
    p_lemma.add_argument("--alpha1-max", dest="alpha1_max", type=int, default=4)
    p_lemma.add_argument("--lambda-max", dest="lambda_max", type=int, default=5)
    p_lemma.add_argument("--p1-max", dest="p1_max", type=int, default=9)
    p_lemma.add_argument("--alpha-max", dest="alpha_max", type=int, default=8)
    p_lemma.add_argument("--beta-max", dest="beta_max", type=int, default=6)
    p_lemma.add_argument("--bit-cap", dest="bit_cap", type=int, default=None)
    p_lemma.set_defaults(func=cmd_check_lemma)

    p_mersenne = sub.add_parser("mersenne", help="list exponents k with 2^k - 1 prime")
    p_mersenne.add_argument("--upto", type=int, default=31)
    p_mersenne.set_defaults(func=cmd_mersenne)

    p_perfect = sub.add_parser("perfect", help="construct and verify even perfect numbers")
    p_perfect.add_argument("--upto", type=int, default=13, help="exponent bound")
    p_perfect.add_argument("--exponent", type=int, default=None, help="single exponent q")
    p_perfect.set_defaults(func=cmd_perfect)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CrossCheckError as exc:
        print(f"cross-check failure: {exc}", file=sys.stderr)
        return 2
    except OperandSizeError as exc:
        print(f"operand size cap exceeded: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
