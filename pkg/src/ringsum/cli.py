"""Command-line front end: ``run``, ``complexity`` and ``privacy``.

Human-readable output goes to stdout; artifacts are only written to the
path given with ``--out``. Exit codes: 0 success, 2 usage or config error,
3 the rank analyzer and the enumeration oracle disagreed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from ringsum.adversary import (
    ENUMERATION_MAX_P,
    ENUMERATION_MAX_UNKNOWNS,
    brute_force_leakage,
    coalition_pairs,
    decide_leakage,
    extract_view,
    privacy_report,
    report_json,
    scan_result,
    unknown_count,
)
from ringsum.engine import complexity_csv, complexity_table, run, write_trace
from ringsum.errors import ProtocolError
from ringsum.ring_math import MERSENNE_61, Modulus, make_modulus, random_elements, rng_stream
from ringsum.topology import Variant, check_parties

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

EXIT_OK, EXIT_USAGE, EXIT_BREACH = 0, 2, 3


class ConfigError(Exception):
    pass


@dataclass
class ExperimentConfig:
    variant: Variant
    n: int | None = None
    k: int | None = None
    modulus: Modulus = field(default_factory=lambda: make_modulus(MERSENNE_61))
    seed: int = 0
    inputs: list[int] | None = None  # None means "random"
    n_range: tuple[int, int] | None = None
    out: Path | None = None
    oracle: bool = True

    def validate(self, command: str) -> None:
        if command in ("run", "privacy"):
            if self.n is None:
                raise ConfigError("--n is required")
            check_parties(self.variant, self.n)
        if command == "complexity":
            if self.n_range is None:
                raise ConfigError("--n-range (or --n) is required")
            lo, hi = self.n_range
            if lo > hi:
                raise ConfigError(f"empty range {lo}..{hi}")
            check_parties(self.variant, lo)
        if self.k is not None:
            if self.variant is not Variant.K_SECURE:
                raise ConfigError(f"--k only applies to k-secure; {self.variant} derives k from n")
            if self.k < 1:
                raise ConfigError("k must be >= 1")
        if self.inputs is not None:
            if command == "run" and len(self.inputs) != self.n:
                raise ConfigError(f"got {len(self.inputs)} inputs for n = {self.n}")
            bad = [x for x in self.inputs if not 0 <= x < self.modulus.p]
            if bad:
                raise ConfigError(f"inputs must lie in [0, {self.modulus.p}), got {bad[0]}")

    def resolved_inputs(self) -> list[int]:
        if self.inputs is not None:
            return list(self.inputs)
        return random_elements(rng_stream(self.seed, "inputs"), self.n, self.modulus)


def parse_inputs(value) -> list[int] | None:
    if value is None or (isinstance(value, str) and value.strip().lower() == "random"):
        return None
    if isinstance(value, str):
        value = [v for v in value.split(",") if v.strip()]
    try:
        return [int(v) for v in value]
    except (TypeError, ValueError):
        raise ConfigError(f"inputs must be integers or 'random', got {value!r}") from None


def parse_range(value) -> tuple[int, int] | None:
    if value is None:
        return None
    if isinstance(value, (list, tuple)):
        lo, hi = value
        return int(lo), int(hi)
    text = str(value)
    for sep in ("..", ":", "-"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            break
    else:
        lo = hi = text
    try:
        return int(lo), int(hi)
    except ValueError:
        raise ConfigError(f"bad range {value!r}, expected e.g. 4..8") from None


def load_config_file(path: str) -> dict:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    try:
        if p.suffix == ".json":
            data = json.loads(text)
        else:
            data = tomllib.loads(text)
    except (ValueError, tomllib.TOMLDecodeError) as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from None
    return {key.replace("-", "_"): value for key, value in data.items()}


def build_config(args: argparse.Namespace) -> ExperimentConfig:
    file_values = load_config_file(args.config) if args.config else {}

    def pick(name, default=None):
        flag = getattr(args, name, None)
        if flag is not None:
            return flag
        return file_values.get(name, default)

    variant_name = pick("variant")
    if variant_name is None:
        raise ConfigError("--variant is required")
    try:
        variant = Variant.parse(variant_name)
    except ValueError:
        choices = ", ".join(v.value for v in Variant)
        raise ConfigError(f"unknown variant {variant_name!r} (choose from {choices})") from None

    n = pick("n")
    n_range = parse_range(pick("n_range"))
    if n_range is None and n is not None and args.command == "complexity":
        n_range = (int(n), int(n))
    k = pick("k")
    out = pick("out")
    return ExperimentConfig(
        variant=variant,
        n=None if n is None else int(n),
        k=None if k is None else int(k),
        modulus=make_modulus(int(pick("modulus", MERSENNE_61))),
        seed=int(pick("seed", 0)),
        inputs=parse_inputs(pick("inputs")),
        n_range=n_range,
        out=None if out is None else Path(out),
        oracle=not getattr(args, "no_oracle", False),
    )


def _print_table(pairs: Sequence[tuple[str, object]]) -> None:
    width = max(len(key) for key, _ in pairs)
    for key, value in pairs:
        print(f"{key:<{width}}  {value}")


def cmd_run(cfg: ExperimentConfig) -> int:
    inputs = cfg.resolved_inputs()
    result = run(cfg.variant, inputs, p=cfg.modulus, seed=cfg.seed, k=cfg.k)
    _print_table([
        ("variant", cfg.variant.value),
        ("n", result.n),
        ("k", result.segments.k),
        ("modulus", cfg.modulus.p),
        ("seed", cfg.seed),
        ("sum", result.announced),
        ("messages", result.messages_sent),
        ("additions", result.additions_performed),
        ("rounds", result.rounds_executed),
    ])
    if cfg.out is not None:
        write_trace(result.trace, cfg.out)
        meta = {
            "variant": cfg.variant.value,
            "n": result.n,
            "k": result.segments.k,
            "p": cfg.modulus.p,
            "seed": cfg.seed,
            "inputs": list(result.segments.inputs),
            "announced": result.announced,
            "messages_sent": result.messages_sent,
            "additions_performed": result.additions_performed,
            "rounds_executed": result.rounds_executed,
            "schedule": result.schedule.to_dict()["rounds"],
        }
        meta_path = run_meta_path(cfg.out)
        meta_path.write_text(json.dumps(meta, indent=2) + "\n")
        print(f"trace written to {cfg.out} (run metadata in {meta_path})")
    return EXIT_OK


def run_meta_path(trace_path: Path) -> Path:
    return trace_path.with_name(trace_path.name + ".meta.json")


def cmd_complexity(cfg: ExperimentConfig) -> int:
    lo, hi = cfg.n_range
    rows = complexity_table(cfg.variant, range(lo, hi + 1), k=cfg.k, p=cfg.modulus, seed=cfg.seed)
    print(f"{'n':>4} {'messages':>10} {'additions':>10}")
    for n, messages, additions in rows:
        print(f"{n:>4} {messages:>10} {additions:>10}")
    if cfg.out is not None:
        cfg.out.write_text(complexity_csv(rows))
    return EXIT_OK


def oracle_crosscheck(result, sizes) -> dict:
    """Compare the rank analyzer with the enumeration oracle wherever enumeration is allowed."""
    checked = skipped = 0
    disagreements = []
    for size in sizes:
        for coalition, victim in coalition_pairs(result.n, size):
            if result.modulus.p > ENUMERATION_MAX_P or unknown_count(result, coalition) > ENUMERATION_MAX_UNKNOWNS:
                skipped += 1
                continue
            fast = decide_leakage(extract_view(result, coalition), victim, result.modulus)
            slow = brute_force_leakage(result, coalition, victim, result.modulus)
            checked += 1
            if (fast.determined, fast.value) != (slow.determined, slow.value):
                disagreements.append({"coalition": list(coalition), "victim": victim})
    return {"checked": checked, "skipped": skipped, "disagreements": disagreements}


def cmd_privacy(cfg: ExperimentConfig) -> int:
    inputs = cfg.resolved_inputs()
    result = run(cfg.variant, inputs, p=cfg.modulus, seed=cfg.seed, k=cfg.k)
    sizes = range(2, cfg.n)
    rows = scan_result(result, sizes)
    extra = {}
    if cfg.oracle:
        extra["oracle"] = oracle_crosscheck(result, sizes)
    report = privacy_report(cfg.variant, cfg.n, cfg.modulus, cfg.seed, rows, k=cfg.k, **extra)

    print(f"{cfg.variant.value}, n={cfg.n}, k={report['k']}, p={cfg.modulus.p}, seed={cfg.seed}")
    print(f"{'size':>4}  {'leaks':<5}  {'pairs':>11}  {'P1 leaks':<8}  witness")
    for row in rows:
        witness = "-"
        if row.leaks:
            members = ",".join(f"P{q}" for q in row.witness_coalition)
            witness = f"{{{members}}} -> P{row.witness_victim}"
        pairs = f"{row.leaking_pairs}/{row.pairs_checked}"
        print(f"{row.coalition_size:>4}  {str(row.leaks):<5}  {pairs:>11}  {str(row.initiator_leaks):<8}  {witness}")
    if cfg.oracle:
        o = extra["oracle"]
        print(f"oracle: {o['checked']} pairs enumerated, {o['skipped']} beyond bounds, "
              f"{len(o['disagreements'])} disagreements")
    if cfg.out is not None:
        cfg.out.write_text(report_json(report))
    if cfg.oracle and extra["oracle"]["disagreements"]:
        print("error: rank analyzer and enumeration oracle disagree", file=sys.stderr)
        return EXIT_BREACH
    return EXIT_OK


COMMANDS = {"run": cmd_run, "complexity": cmd_complexity, "privacy": cmd_privacy}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--variant", help="baseline, k-secure, ck or modified-ck")
    common.add_argument("--modulus", type=int, help="prime modulus (default 2^61 - 1)")
    common.add_argument("--seed", type=int, help="run seed (default 0)")
    common.add_argument("--out", help="artifact path")
    common.add_argument("--config", help="TOML or JSON file with the same keys as the flags")
    common.add_argument("--k", type=int, help="segments per party (k-secure only, default n)")

    parser = argparse.ArgumentParser(prog="ringsum", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", parents=[common], help="execute one protocol run")
    p_run.add_argument("--n", type=int)
    p_run.add_argument("--inputs", help="comma-separated inputs or 'random' (default)")

    p_cx = sub.add_parser("complexity", parents=[common], help="message/addition counts over a range of n")
    p_cx.add_argument("--n-range", dest="n_range", help="e.g. 4..8")
    p_cx.add_argument("--n", type=int, help="single n instead of a range")

    p_pv = sub.add_parser("privacy", parents=[common], help="exhaustive coalition leakage matrix")
    p_pv.add_argument("--n", type=int)
    p_pv.add_argument("--inputs", help="comma-separated inputs or 'random' (default)")
    p_pv.add_argument("--no-oracle", action="store_true", help="skip the enumeration cross-check")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
        cfg.validate(args.command)
        return COMMANDS[args.command](cfg)
    except (ConfigError, ProtocolError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
