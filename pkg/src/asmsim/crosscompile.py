"""Cross-compile corpus sources to assembly, with content-hash caching.

Each source is compiled into ``<out>/cache/<hash>.s`` where the hash
covers the source bytes, the compiler command, and its flags; reruns with
unchanged inputs never invoke the compiler. A derived manifest pointing
at the assembly files is written next to the cache so the study step can
consume it directly.
"""

from __future__ import annotations

import hashlib
import json
import shlex
import subprocess
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .config import ToolConfig
from .corpus import ManifestData, ProgramEntry
from .errors import InputError, ToolError


@dataclass
class CompileOutcome:
    entry: ProgramEntry
    output: Path | None
    cached: bool = False
    error: str | None = None


@dataclass
class CompileResult:
    outcomes: list[CompileOutcome]
    manifest_path: Path

    @property
    def failures(self) -> list[CompileOutcome]:
        return [o for o in self.outcomes if o.error is not None]

    @property
    def cache_hits(self) -> int:
        return sum(1 for o in self.outcomes if o.cached)


def build_command(template: str, flags: Sequence[str],
                  input_path: Path, output_path: Path) -> list[str]:
    """Expand a command template into argv.

    ``{input}`` and ``{output}`` placeholders are substituted wherever
    they appear; a plain command without placeholders gets ``-o <output>
    <input>`` appended.
    """
    argv = shlex.split(template) + list(flags)
    has_input = any("{input}" in arg for arg in argv)
    has_output = any("{output}" in arg for arg in argv)
    argv = [arg.replace("{input}", str(input_path)).replace("{output}", str(output_path))
            for arg in argv]
    if not has_output:
        argv += ["-o", str(output_path)]
    if not has_input:
        argv.append(str(input_path))
    return argv


def content_hash(source: bytes, template: str, flags: Sequence[str]) -> str:
    digest = hashlib.sha256()
    digest.update(source)
    digest.update(b"\x00")
    digest.update(json.dumps([template, list(flags)]).encode("utf-8"))
    return digest.hexdigest()[:16]


def compiler_version(template: str) -> str | None:
    """First line of ``<compiler> --version``, if the tool cooperates."""
    argv = shlex.split(template)
    if not argv:
        return None
    try:
        proc = subprocess.run([argv[0], "--version"], capture_output=True,
                              text=True, timeout=30)
    except (OSError, subprocess.SubprocessError):
        return None
    if proc.returncode != 0 or not proc.stdout:
        return None
    return proc.stdout.splitlines()[0].strip()


def compile_entry(entry: ProgramEntry, config: ToolConfig,
                  cache_dir: Path) -> CompileOutcome:
    try:
        source = entry.path.read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read source: {exc}", entity=entry.id) from exc
    key = content_hash(source, config.compiler_command, config.compiler_flags)
    target = cache_dir / f"{key}.s"
    if target.is_file():
        return CompileOutcome(entry, target, cached=True)

    argv = build_command(config.compiler_command, config.compiler_flags,
                         entry.path, target)
    try:
        proc = subprocess.run(argv, capture_output=True, text=True)
    except FileNotFoundError as exc:
        raise ToolError(f"compiler not found: {argv[0]}", entity=entry.id) from exc
    except OSError as exc:
        raise ToolError(f"cannot run compiler: {exc}", entity=entry.id) from exc
    if proc.returncode != 0:
        target.unlink(missing_ok=True)
        detail = proc.stderr.strip().splitlines()
        message = detail[-1] if detail else f"compiler exited with {proc.returncode}"
        return CompileOutcome(entry, None, error=message)
    if not target.is_file():
        return CompileOutcome(entry, None,
                              error="compiler reported success but wrote no output")
    return CompileOutcome(entry, target, cached=False)


def compile_corpus(manifest: ManifestData, config: ToolConfig,
                   out_dir: Path) -> CompileResult:
    """Compile every dataset entry and write the derived manifest.

    Individual compile failures are recorded and skipped so one bad file
    cannot sink a corpus run; the caller decides how to report them.
    """
    out_dir.mkdir(parents=True, exist_ok=True)
    cache_dir = out_dir / "cache"
    cache_dir.mkdir(exist_ok=True)

    outcomes: list[CompileOutcome] = []
    derived_datasets = []
    for name, entries in manifest.datasets:
        programs = []
        for entry in entries:
            outcome = compile_entry(entry, config, cache_dir)
            outcomes.append(outcome)
            if outcome.output is not None:
                programs.append({
                    "id": entry.id,
                    "path": str(outcome.output.relative_to(out_dir)),
                    "programmer": entry.programmer,
                    "application": entry.application,
                })
        derived_datasets.append({"name": name, "programs": programs})

    metadata = dict(manifest.metadata)
    metadata["compiler_command"] = config.compiler_command
    metadata["compiler_flags"] = list(config.compiler_flags)
    version = compiler_version(config.compiler_command)
    if version is not None:
        metadata["compiler_version"] = version

    if len(derived_datasets) == 1:
        doc: dict = {"name": derived_datasets[0]["name"],
                     "programs": derived_datasets[0]["programs"]}
    else:
        doc = {"datasets": derived_datasets}
    doc["metadata"] = metadata

    manifest_path = out_dir / "manifest.json"
    manifest_path.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    return CompileResult(outcomes, manifest_path)
