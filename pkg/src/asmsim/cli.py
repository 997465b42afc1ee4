"""Command-line front end.

Subcommands: ``extract`` (feature dumps), ``compare`` (pairwise metrics),
``compile`` (cross-compile a corpus to assembly), ``study`` (run the full
grouping study and render a report).

Exit codes: 0 ok, 2 I/O, 3 degenerate input, 4 external tool failure,
5 invalid corpus.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from pathlib import Path
from typing import Sequence

from .asm_parser import AssemblyProgram, parse_assembly
from .config import ToolConfig, load_tool_config
from .corpus import (ManifestData, ProgramEntry, build_grid, build_suite,
                     build_universes, load_datasets, run_study)
from .crosscompile import compile_corpus
from .errors import AsmSimError, InputError, ToolError
from .features import ProgramFeatures, features_for_program, features_to_dict
from .metrics import MetricKind, measure
from .report import format_value, render

COMPARE_METRICS = {
    "jaccard": MetricKind.JACCARD,
    "cosine": MetricKind.COSINE,
    "ngram2": MetricKind.EUCLIDEAN2,
    "ngram3": MetricKind.EUCLIDEAN3,
}


def _parse_strides(value: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in value.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got {value!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, metavar="PATH",
                        help="JSON config file")
    common.add_argument("--format", choices=["markdown", "csv", "json", "text"],
                        help="output format (study: markdown/csv/json; compare: text/json)")
    common.add_argument("--jobs", type=int, metavar="N",
                        help="worker threads for per-file work")
    common.add_argument("--strict", action="store_true", default=None,
                        help="abort on unclassifiable assembly lines")
    common.add_argument("--linear-ngrams", action="store_true", default=None,
                        help="let instruction patterns cross basic-block boundaries")
    common.add_argument("--strides", type=_parse_strides, metavar="S1,S2,...",
                        help="explicit totally-different strides")

    parser = argparse.ArgumentParser(
        prog="asmsim",
        description="Assembly-level program similarity metrics and corpus studies.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_extract = sub.add_parser("extract", parents=[common],
                               help="dump per-file feature sets as JSON")
    p_extract.add_argument("paths", nargs="+", type=Path,
                           help="assembly files or directories")
    p_extract.add_argument("--glob", default="*.s", metavar="PATTERN",
                           help="pattern for directory inputs (default: *.s)")
    p_extract.add_argument("--out", type=Path, metavar="DIR",
                           help="write one JSON file per input instead of stdout")
    p_extract.set_defaults(func=cmd_extract)

    p_compare = sub.add_parser("compare", parents=[common],
                               help="compare two assembly files")
    p_compare.add_argument("file_a", type=Path)
    p_compare.add_argument("file_b", type=Path)
    p_compare.add_argument("--metric", choices=[*COMPARE_METRICS, "all"],
                           default="all")
    p_compare.set_defaults(func=cmd_compare)

    p_compile = sub.add_parser("compile", parents=[common],
                               help="cross-compile corpus sources to assembly")
    p_compile.add_argument("manifest", type=Path)
    p_compile.add_argument("--out", type=Path, default=Path("asmsim-out"),
                           metavar="DIR", help="output directory (default: asmsim-out)")
    p_compile.add_argument("--cc", metavar="CMD",
                           help="compiler command template ({input}/{output} placeholders)")
    p_compile.set_defaults(func=cmd_compile)

    p_study = sub.add_parser("study", parents=[common],
                             help="run the grouping study over a corpus manifest")
    p_study.add_argument("manifest", type=Path)
    p_study.add_argument("--out", type=Path, metavar="FILE",
                         help="write the report to a file instead of stdout")
    p_study.set_defaults(func=cmd_study)

    return parser


def resolve_config(args: argparse.Namespace) -> ToolConfig:
    """Defaults < environment < config file < explicit CLI flags."""
    config = load_tool_config(args.config)
    if getattr(args, "cc", None):
        config = replace(config, compiler_command=args.cc)
    if args.format and args.format != "text":
        config = replace(config, output_format=args.format)
    if args.jobs is not None:
        config = replace(config, jobs=args.jobs)
    if args.strict:
        config = replace(config, parser=replace(config.parser, strict=True))
    if args.linear_ngrams:
        config = replace(config, ngram_mode="linear")
    if args.strides is not None:
        config = replace(config, strides=args.strides)
    return config


def _read_text(path: Path, entity: str | None = None) -> str:
    try:
        return path.read_text(encoding="utf-8", errors="replace")
    except OSError as exc:
        raise InputError(f"cannot read file: {exc}", entity=entity or str(path)) from exc


def _write_text(path: Path, text: str) -> None:
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write file: {exc}", entity=str(path)) from exc


def _parse_file(path: Path, config: ToolConfig) -> AssemblyProgram:
    return parse_assembly(_read_text(path), config.parser, source_name=str(path))


def _warn_diagnostics(path: Path, program: AssemblyProgram) -> None:
    for line_no, message in program.diagnostics:
        print(f"warning: {path}:{line_no}: {message}", file=sys.stderr)


def collect_inputs(paths: Sequence[Path], glob_pattern: str) -> list[Path]:
    files: list[Path] = []
    for path in paths:
        if path.is_dir():
            files.extend(sorted(path.glob(glob_pattern), key=str))
        elif path.is_file():
            files.append(path)
        else:
            raise InputError("no such file or directory", entity=str(path))
    return files


def cmd_extract(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    linear = config.ngram_mode == "linear"
    files = collect_inputs(args.paths, args.glob)

    if args.out is not None:
        try:
            args.out.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise InputError(f"cannot create directory: {exc}",
                             entity=str(args.out)) from exc
        used: set[str] = set()
    for path in files:
        program = _parse_file(path, config)
        _warn_diagnostics(path, program)
        dump = features_to_dict(features_for_program(program, config.parser,
                                                     linear=linear))
        if args.out is None:
            print(json.dumps(dump))
            continue
        name = f"{path.stem}.json"
        serial = 1
        while name in used:
            serial += 1
            name = f"{path.stem}-{serial}.json"
        used.add(name)
        _write_text(args.out / name, json.dumps(dump, indent=2) + "\n")
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    if args.format in ("csv", "markdown"):
        raise InputError(f"compare renders text or json, not {args.format}")
    config = resolve_config(args)
    linear = config.ngram_mode == "linear"
    features = []
    for path in (args.file_a, args.file_b):
        if not path.is_file():
            raise InputError("no such file", entity=str(path))
        program = _parse_file(path, config)
        _warn_diagnostics(path, program)
        features.append(features_for_program(program, config.parser, linear=linear))

    names = list(COMPARE_METRICS) if args.metric == "all" else [args.metric]
    results = {name: measure(COMPARE_METRICS[name], features[0], features[1])
               for name in names}

    if args.format == "json":
        print(json.dumps({name: results[name].value for name in names}))
    else:
        for name in names:
            kind, value = results[name]
            print(f"{name} {format_value(kind, value)}")
    return 0


def cmd_compile(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    manifest = load_datasets(args.manifest)
    result = compile_corpus(manifest, config, args.out)

    compiled = sum(1 for o in result.outcomes if o.output is not None and not o.cached)
    print(f"compiled {compiled}, cached {result.cache_hits}, "
          f"failed {len(result.failures)}")
    print(f"manifest: {result.manifest_path}")
    if result.failures:
        for outcome in result.failures:
            print(ToolError(outcome.error, entity=outcome.entry.id).diagnostic(),
                  file=sys.stderr)
        return 4
    return 0


def _entry_features(entry: ProgramEntry, config: ToolConfig) -> ProgramFeatures:
    text = _read_text(entry.path, entity=entry.id)
    program = parse_assembly(text, config.parser, source_name=str(entry.path))
    return features_for_program(program, config.parser,
                                linear=config.ngram_mode == "linear")


def corpus_features(entries: Sequence[ProgramEntry],
                    config: ToolConfig) -> dict[str, ProgramFeatures]:
    """Parse and featurize corpus entries, optionally on worker threads.

    Results are consumed in entry order, so the worker count never
    changes the outcome.
    """
    if config.jobs == 1:
        computed = [_entry_features(entry, config) for entry in entries]
    else:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            computed = list(pool.map(lambda e: _entry_features(e, config), entries))
    return {entry.id: feats for entry, feats in zip(entries, computed)}


def run_manifest_study(manifest: ManifestData, config: ToolConfig) -> str:
    reports = []
    for name, entries in manifest.datasets:
        grid = build_grid(entries)
        features = corpus_features(entries, config)
        report = run_study(grid, features, strides=config.strides,
                           dataset_name=name, universes=build_universes(features))
        reports.append(report)
    suite = build_suite(reports)
    metadata = dict(manifest.metadata)
    metadata["ngram_mode"] = config.ngram_mode
    return render(suite, config.output_format, metadata)


def cmd_study(args: argparse.Namespace) -> int:
    if args.format == "text":
        raise InputError("study renders markdown, csv, or json, not text")
    config = resolve_config(args)
    text = run_manifest_study(load_datasets(args.manifest), config)
    if args.out is not None:
        _write_text(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AsmSimError as exc:
        print(exc.diagnostic(), file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
