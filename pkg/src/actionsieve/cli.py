"""Command line entry points.

``actionsieve run`` streams detection JSONL through the cascade and writes
decision records plus yield statistics; ``actionsieve scenes`` checks
precomputed color histograms for scene cuts. Exit code 0 on success, 1 on
startup errors; per-clip failures never change the exit code.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .filters import FilterConfig, config_field_names, load_verb_lexicon
from .pipeline import detect_scene_boundaries, emit_stats_report, run_pipeline, write_decisions


class StartupError(Exception):
    pass


_FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(FilterConfig)}


def _coerce(key: str, raw: str):
    if key not in _FIELD_TYPES:
        raise StartupError(
            f"unknown config key '{key}' (known: {', '.join(config_field_names())})"
        )
    ftype = _FIELD_TYPES[key]
    raw = raw.strip()
    try:
        if ftype == "int":
            return int(raw)
        if ftype == "float":
            return float(raw)
        if ftype == "bool":
            if raw.lower() in ("true", "1", "yes"):
                return True
            if raw.lower() in ("false", "0", "no"):
                return False
            raise ValueError(raw)
        return raw
    except ValueError as exc:
        raise StartupError(f"bad value for '{key}': {raw!r}") from exc


def _parse_config_file(path: Path) -> dict:
    if not path.is_file():
        raise StartupError(f"config file not found: {path}")
    values = {}
    for i, line in enumerate(path.read_text("utf-8").splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise StartupError(f"{path}:{i}: expected 'key = value', got {line!r}")
        key, raw = line.split("=", 1)
        values[key.strip()] = _coerce(key.strip(), raw)
    return values


def _parse_overrides(pairs: list[str]) -> dict:
    values = {}
    for pair in pairs:
        if "=" not in pair:
            raise StartupError(f"--threshold expects key=value, got {pair!r}")
        key, raw = pair.split("=", 1)
        values[key.strip()] = _coerce(key.strip(), raw)
    return values


def _cmd_run(args) -> int:
    values = {}
    if args.config:
        values.update(_parse_config_file(Path(args.config)))
    values.update(_parse_overrides(args.threshold))
    try:
        cfg = FilterConfig(**values)
    except (TypeError, ValueError) as exc:
        raise StartupError(f"bad configuration: {exc}") from exc

    lexicon = load_verb_lexicon(args.lexicon) if args.lexicon else load_verb_lexicon()

    in_path = Path(args.input)
    if not in_path.is_file():
        raise StartupError(f"input not found: {in_path}")
    with open(in_path, encoding="utf-8") as f:
        decisions, stats = run_pipeline(f, cfg, lexicon, workers=args.workers)

    write_decisions(args.output, decisions)
    if args.stats:
        with open(args.stats, "w", encoding="utf-8") as f:
            f.write(emit_stats_report(stats, "json"))
            f.write("\n")
    sys.stdout.write(emit_stats_report(stats, "text"))
    return 0


def _cmd_scenes(args) -> int:
    path = Path(args.histograms)
    if not path.is_file():
        raise StartupError(f"histogram file not found: {path}")
    hists = []
    with open(path, encoding="utf-8") as f:
        for i, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                hists.append(obj["hist"])
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise StartupError(f"{path}:{i}: bad histogram line: {exc}") from exc
    try:
        report = detect_scene_boundaries(hists, diff_threshold=args.diff_threshold)
    except ValueError as exc:
        raise StartupError(str(exc)) from exc
    json.dump({"method": report.method, "boundaries": list(report.boundaries)}, sys.stdout)
    sys.stdout.write("\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="actionsieve",
        description="Filter pose-detection clip records down to clear human-action clips.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run the filter cascade over detection JSONL")
    run_p.add_argument("--input", required=True, help="detection JSONL file")
    run_p.add_argument("--output", required=True, help="decision JSONL file to write")
    run_p.add_argument("--stats", help="stats JSON file to write")
    run_p.add_argument("--config", help="key = value config file")
    run_p.add_argument("--workers", type=int, default=1)
    run_p.add_argument(
        "--threshold",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a config value (repeatable)",
    )
    run_p.add_argument("--lexicon", help="verb lexicon file (default: bundled)")
    run_p.set_defaults(func=_cmd_run)

    scenes_p = sub.add_parser("scenes", help="detect scene cuts from histogram JSONL")
    scenes_p.add_argument("--histograms", required=True, help="histogram JSONL file")
    scenes_p.add_argument("--diff-threshold", type=float, default=0.3)
    scenes_p.set_defaults(func=_cmd_scenes)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except StartupError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
