"""Command-line front end: flat-file configs, deterministic reports.

Commands: hull, check, search, verify-rel. Each reads a line-oriented
config (key: value), takes --max-len/--budget overrides, and emits either
a human-readable report or, with --machine, a single JSON object. Reports
are byte-identical across runs of the same config; timing goes to stderr.

Exit status: 0 pass/valid, 1 fail/invalid, 2 configuration errors,
3 budget or guard exhaustion.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Optional, TextIO

from .anticongruence import (
    Anticongruence,
    EqClass,
    Identity,
    RawRelation,
    parse_relation,
    verify_axioms,
)
from .equations import (
    BudgetExceeded,
    Equation,
    PseudoSolution,
    bounded_rank_certificate,
    check_pseudo_solution,
    parse_equation,
)
from .freeness import rank
from .pseudo import pseudo_free_hull
from .words import (
    DEFAULT_PRODUCT_LIMIT,
    Alphabet,
    EnumerationGuardExceeded,
    FiniteLanguage,
    ProductLimitExceeded,
    Word,
    WordEqError,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_BUDGET = 3

HUMAN_TABLE_ROWS = 50


class ConfigError(WordEqError):
    """Malformed or incomplete job configuration."""


@dataclass
class JobConfig:
    """Parsed flat config: declarations shared by all commands."""

    path: str
    alphabet: Optional[Alphabet] = None
    rel: Optional[Anticongruence | RawRelation] = None
    rel_text: str = "identity"
    equation: Optional[Equation] = None
    equation_text: str = ""
    assign: dict[str, Word] = field(default_factory=dict)
    words: Optional[list[Word]] = None
    max_len: Optional[int] = None
    budget: Optional[int] = None
    product_guard: int = DEFAULT_PRODUCT_LIMIT


def parse_config(path: str) -> JobConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc

    entries: list[tuple[int, str, str]] = []
    seen: dict[str, int] = {}
    for no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep or not key:
            raise ConfigError(f"{path}:{no}: expected 'key: value', got {line!r}")
        if key in seen:
            raise ConfigError(f"{path}:{no}: duplicate key {key!r} (first at line {seen[key]})")
        seen[key] = no
        entries.append((no, key, value.strip()))

    cfg = JobConfig(path=path)
    known = {"alphabet", "rel", "equation", "assign", "words", "max_len", "budget", "product_guard"}
    by_key = {key: (no, value) for no, key, value in entries}
    for no, key, _ in entries:
        if key not in known:
            raise ConfigError(f"{path}:{no}: unknown key {key!r}")

    def fail(key: str, exc: Exception) -> ConfigError:
        no = by_key[key][0]
        return ConfigError(f"{path}:{no}: bad {key}: {exc}")

    if "alphabet" in by_key:
        try:
            cfg.alphabet = Alphabet(by_key["alphabet"][1].split())
        except ValueError as exc:
            raise fail("alphabet", exc) from exc

    for key in ("max_len", "budget", "product_guard"):
        if key in by_key:
            text = by_key[key][1]
            if not text.lstrip("-").isdigit():
                raise fail(key, ValueError(f"expected an integer, got {text!r}"))
            value = int(text)
            if value < 0 or (key != "max_len" and value == 0):
                raise fail(key, ValueError("must be positive"))
            setattr(cfg, key, value)

    if "rel" in by_key:
        if cfg.alphabet is None:
            raise ConfigError(f"{path}:{by_key['rel'][0]}: rel needs an alphabet declared first")
        try:
            cfg.rel = parse_relation(cfg.alphabet, by_key["rel"][1])
            cfg.rel_text = by_key["rel"][1]
        except ValueError as exc:
            raise fail("rel", exc) from exc

    if "equation" in by_key:
        try:
            cfg.equation = parse_equation(by_key["equation"][1])
            cfg.equation_text = by_key["equation"][1]
        except WordEqError as exc:
            raise fail("equation", exc) from exc

    if "assign" in by_key:
        if cfg.alphabet is None:
            raise ConfigError(f"{path}:{by_key['assign'][0]}: assign needs an alphabet declared first")
        for chunk in by_key["assign"][1].split():
            name, sep, image = chunk.partition("=")
            if not sep or not name:
                raise fail("assign", ValueError(f"expected name=word, got {chunk!r}"))
            try:
                cfg.assign[name] = cfg.alphabet.word(image)
            except ValueError as exc:
                raise fail("assign", exc) from exc

    if "words" in by_key:
        if cfg.alphabet is None:
            raise ConfigError(f"{path}:{by_key['words'][0]}: words needs an alphabet declared first")
        cfg.words = []
        for text in by_key["words"][1].split():
            try:
                cfg.words.append(cfg.alphabet.word(text))
            except ValueError as exc:
                raise fail("words", exc) from exc

    return cfg


def _require(cfg: JobConfig, **fields: bool) -> None:
    for name, needed in fields.items():
        if needed and getattr(cfg, name) is None:
            raise ConfigError(f"{cfg.path}: missing required key {name!r}")


def _anticongruence(cfg: JobConfig) -> Anticongruence:
    rel = cfg.rel if cfg.rel is not None else Identity(cfg.alphabet)
    if isinstance(rel, RawRelation):
        raise ConfigError(
            f"{cfg.path}: relation {rel.describe()!r} is a raw predicate; "
            "it can only be used with verify-rel"
        )
    return rel


def _mword(w: Word) -> str:
    return str(w) if w.letters else ""


def _mlang(lang: FiniteLanguage) -> list[str]:
    return [_mword(w) for w in lang]


def _massign_class(images: dict[str, EqClass], order: tuple[str, ...]) -> dict[str, str]:
    return {x: _mword(images[x].rep) for x in order if x in images}


@dataclass
class Report:
    """Command outcome: an ordered key/value document plus an exit code.

    data must stay JSON-serializable and deterministically ordered; the
    elapsed time is carried separately so that emitted reports stay
    byte-identical across runs.
    """

    data: dict
    exit_code: int
    elapsed_ms: float = 0.0

    def machine_text(self) -> str:
        return json.dumps(self.data, ensure_ascii=True)

    def human_text(self) -> str:
        return "\n".join(self._human_lines(self.data, prefix=""))

    def _human_lines(self, obj: dict, prefix: str) -> list[str]:
        lines = []
        for key, value in obj.items():
            label = f"{prefix}{key}"
            if isinstance(value, dict):
                if value and all(not isinstance(v, (dict, list)) for v in value.values()):
                    inner = ", ".join(f"{k}={_human_scalar(v)}" for k, v in value.items())
                    lines.append(f"{label}: {inner}")
                else:
                    lines.append(f"{label}:")
                    lines.extend(self._human_lines(value, prefix + "  "))
            elif isinstance(value, list):
                if value and all(isinstance(v, dict) for v in value):
                    lines.append(f"{label}: ({len(value)} entries)")
                    for i, row in enumerate(value):
                        if i >= HUMAN_TABLE_ROWS:
                            lines.append(f"  ... and {len(value) - HUMAN_TABLE_ROWS} more")
                            break
                        inner = ", ".join(f"{k}={_human_scalar(v)}" for k, v in row.items())
                        lines.append(f"  - {inner}")
                else:
                    lines.append(f"{label}: {{{', '.join(_human_scalar(v) for v in value)}}}")
            else:
                lines.append(f"{label}: {_human_scalar(value)}")
        return lines


def _human_scalar(v: object) -> str:
    if v == "" or v is None:
        return "ε" if v == "" else "-"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}={_human_scalar(x)}" for k, x in v.items()) + "}"
    if isinstance(v, list):
        return "{" + ", ".join(_human_scalar(x) for x in v) + "}"
    return str(v)


def cmd_hull(cfg: JobConfig) -> Report:
    _require(cfg, alphabet=True, words=True)
    rel = _anticongruence(cfg)
    words = cfg.words or []
    hull = pseudo_free_hull(rel, words)
    ordinary = rank(words)
    data = {
        "command": "hull",
        "alphabet": list(cfg.alphabet.symbols),
        "relation": cfg.rel_text,
        "words": [_mword(w) for w in sorted(set(words))],
        "basis": [_mword(w) for w in hull.basis_words],
        "classes": {str(c): _mlang(c.language()) for c in hull.classes},
        "rank": ordinary,
        "pseudo_rank": hull.pseudo_rank(),
    }
    return Report(data, EXIT_PASS)


def cmd_check(cfg: JobConfig) -> Report:
    _require(cfg, alphabet=True, equation=True)
    rel = _anticongruence(cfg)
    e = cfg.equation
    missing = [x for x in e.unknowns.symbols if x not in cfg.assign]
    if missing:
        raise ConfigError(f"{cfg.path}: assign misses unknowns: {', '.join(missing)}")
    psol = PseudoSolution(rel, {x: EqClass.of(rel, w) for x, w in cfg.assign.items()})
    verdict = check_pseudo_solution(e, psol, limit=cfg.product_guard)
    data = {
        "command": "check",
        "alphabet": list(cfg.alphabet.symbols),
        "relation": cfg.rel_text,
        "equation": cfg.equation_text,
        "assign": _massign_class(psol.images, e.unknowns.symbols),
        "valid": verdict.valid,
        "common": _mword(verdict.common) if verdict.common is not None else None,
        "lhs_language": _mlang(verdict.lhs_language),
        "rhs_language": _mlang(verdict.rhs_language),
    }
    return Report(data, EXIT_PASS if verdict.valid else EXIT_FAIL)


def cmd_search(cfg: JobConfig) -> Report:
    _require(cfg, alphabet=True, equation=True, max_len=True)
    rel = _anticongruence(cfg)
    e = cfg.equation
    try:
        cert = bounded_rank_certificate(
            e, cfg.alphabet, rel, cfg.max_len, budget=cfg.budget, limit=cfg.product_guard
        )
    except BudgetExceeded as exc:
        data = {
            "command": "search",
            "alphabet": list(cfg.alphabet.symbols),
            "relation": cfg.rel_text,
            "equation": cfg.equation_text,
            "max_len": cfg.max_len,
            "budget": cfg.budget,
            "budget_exhausted": True,
            "assignments_examined": exc.examined,
            "solutions_found_before_exhaustion": exc.emitted,
        }
        return Report(data, EXIT_BUDGET)

    order = e.unknowns.symbols
    rows = [
        {"assign": _massign_class(psol.images, order), "pseudo_rank": pr}
        for psol, pr in zip(cert.pseudo_solutions, cert.pseudo_ranks)
    ]
    data = {
        "command": "search",
        "alphabet": list(cfg.alphabet.symbols),
        "relation": cfg.rel_text,
        "equation": cfg.equation_text,
        "max_len": cfg.max_len,
        "budget": cfg.budget,
        "budget_exhausted": False,
        "pseudo_solutions": rows,
        "pseudo_count": cert.pseudo_count,
        "max_pseudo_rank": cert.max_pseudo_rank,
        "pseudo_witness": (
            _massign_class(cert.pseudo_witness.images, order)
            if cert.pseudo_witness is not None
            else None
        ),
        "ordinary_count": cert.ordinary_count,
        "max_ordinary_rank": cert.max_ordinary_rank,
        "ordinary_witness": (
            {x: _mword(cert.ordinary_witness[x]) for x in order}
            if cert.ordinary_witness is not None
            else None
        ),
        "descent_property": "pass" if cert.descent_ok else "fail",
        "descent_failures": list(cert.descent_failures),
    }
    return Report(data, EXIT_PASS if cert.descent_ok else EXIT_FAIL)


def cmd_verify_rel(cfg: JobConfig) -> Report:
    _require(cfg, alphabet=True, max_len=True)
    if cfg.max_len < 1:
        raise ConfigError(f"{cfg.path}: verify-rel needs max_len >= 1")
    rel = cfg.rel if cfg.rel is not None else Identity(cfg.alphabet)
    violation = verify_axioms(rel, cfg.max_len)
    data = {
        "command": "verify-rel",
        "alphabet": list(cfg.alphabet.symbols),
        "relation": cfg.rel_text,
        "max_len": cfg.max_len,
        "verdict": "pass" if violation is None else "counterexample",
    }
    if violation is not None:
        data["counterexample"] = {
            "kind": violation.kind,
            "u": _mword(violation.u),
            "v": _mword(violation.v),
            "cut": violation.cut,
            "via": _mword(violation.via) if violation.via is not None else None,
        }
    return Report(data, EXIT_PASS if violation is None else EXIT_FAIL)


COMMANDS = {
    "hull": cmd_hull,
    "check": cmd_check,
    "search": cmd_search,
    "verify-rel": cmd_verify_rel,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wordeq",
        description="Word equations over anticongruences: hulls, ranks, pseudo-solutions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="path to a flat key: value config file")
        p.add_argument("--max-len", type=int, default=None, help="override max_len")
        p.add_argument("--budget", type=int, default=None, help="override budget")
        p.add_argument("--machine", action="store_true", help="emit one JSON object")
    return parser


def run_command(
    command: str,
    config_path: str,
    max_len: Optional[int] = None,
    budget: Optional[int] = None,
) -> Report:
    """Parse the config, apply overrides, and run one command."""
    cfg = parse_config(config_path)
    if max_len is not None:
        if max_len < 0:
            raise ConfigError(f"{config_path}: --max-len must be non-negative")
        cfg.max_len = max_len
    if budget is not None:
        if budget <= 0:
            raise ConfigError(f"{config_path}: --budget must be positive")
        cfg.budget = budget
    started = time.perf_counter()
    report = COMMANDS[command](cfg)
    report.elapsed_ms = (time.perf_counter() - started) * 1000.0
    return report


def main(
    argv: Optional[list[str]] = None,
    out: Optional[TextIO] = None,
    err: Optional[TextIO] = None,
) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    args = build_parser().parse_args(argv)
    try:
        report = run_command(args.command, args.config, args.max_len, args.budget)
    except ConfigError as exc:
        print(f"config error: {exc}", file=err)
        return EXIT_CONFIG
    except (EnumerationGuardExceeded, ProductLimitExceeded, BudgetExceeded) as exc:
        print(f"budget exhausted: {exc}", file=err)
        return EXIT_BUDGET
    except WordEqError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_CONFIG
    print(report.machine_text() if args.machine else report.human_text(), file=out)
    print(f"elapsed_ms: {report.elapsed_ms:.1f}", file=err)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
