"""Programmer x application corpus grids and the grouping study.

A corpus is a P x A grid with exactly one program per cell. Three grouping
schemes partition it into subsets: per application (all programmers'
takes on one task), per programmer (one author across all tasks), and
totally-different transversals (no shared programmer, no shared
application). Each subset is scored pairwise under every metric; subset
means, group means, the totally-different aggregate, and normalized
indices make up the study report.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import (DuplicateIdError, EmptyProgramError, IncompleteGridError,
                     InputError, InvalidStrideError, ManifestError,
                     NormalizationError)
from .features import PatternUniverse, ProgramFeatures, build_universe
from .metrics import METRIC_ORDER, MetricKind, measure


@dataclass(frozen=True)
class ProgramEntry:
    """One corpus program: where it lives and which grid cell it fills."""

    id: str
    path: Path
    programmer: str
    application: str


@dataclass
class ManifestData:
    """Parsed manifest: one or more named datasets plus free-form metadata."""

    datasets: list[tuple[str, list[ProgramEntry]]]
    metadata: dict


_ENTRY_FIELDS = ("id", "path", "programmer", "application")


def _parse_entries(raw: object, base: Path, *, where: str,
                   check_paths: bool = True) -> list[ProgramEntry]:
    if not isinstance(raw, list):
        raise ManifestError('"programs" must be a list', entity=where)
    entries: list[ProgramEntry] = []
    seen: set[str] = set()
    for i, item in enumerate(raw):
        entity = f"{where}#programs[{i}]"
        if not isinstance(item, dict):
            raise ManifestError("program entry must be an object", entity=entity)
        values = {}
        for key in _ENTRY_FIELDS:
            value = item.get(key)
            if not isinstance(value, str) or not value:
                raise ManifestError(f"missing or invalid field {key!r}", entity=entity)
            values[key] = value
        if values["id"] in seen:
            raise DuplicateIdError(f"duplicate program id {values['id']!r}", entity=entity)
        seen.add(values["id"])
        full = base / values["path"]
        if check_paths and not full.is_file():
            raise InputError(f"program file not found: {full}", entity=entity)
        entries.append(ProgramEntry(values["id"], full,
                                    values["programmer"], values["application"]))
    return entries


def load_datasets(path: str | Path, *, check_paths: bool = True) -> ManifestData:
    """Load a manifest holding either one dataset or a list of them.

    Single form: ``{"name"?: str, "programs": [...]}``. Multi form:
    ``{"datasets": [{"name"?: str, "programs": [...]}, ...]}``. Program
    paths are resolved relative to the manifest location.
    """
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read manifest: {exc}", entity=str(path)) from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"manifest is not valid JSON: {exc}", entity=str(path)) from exc
    if not isinstance(doc, dict):
        raise ManifestError("manifest root must be an object", entity=str(path))

    metadata = doc.get("metadata", {})
    if not isinstance(metadata, dict):
        raise ManifestError('"metadata" must be an object', entity=str(path))

    base = path.parent
    datasets: list[tuple[str, list[ProgramEntry]]] = []
    if "datasets" in doc:
        items = doc["datasets"]
        if not isinstance(items, list):
            raise ManifestError('"datasets" must be a list', entity=str(path))
        names: set[str] = set()
        for i, item in enumerate(items):
            entity = f"{path}#datasets[{i}]"
            if not isinstance(item, dict):
                raise ManifestError("dataset must be an object", entity=entity)
            name = item.get("name", f"dataset{i + 1}")
            if not isinstance(name, str) or not name:
                raise ManifestError('dataset "name" must be a non-empty string', entity=entity)
            if name in names:
                raise ManifestError(f"duplicate dataset name {name!r}", entity=entity)
            names.add(name)
            datasets.append((name, _parse_entries(item.get("programs"), base,
                                                  where=entity, check_paths=check_paths)))
    elif "programs" in doc:
        name = doc.get("name", path.stem)
        if not isinstance(name, str) or not name:
            raise ManifestError('"name" must be a non-empty string', entity=str(path))
        datasets.append((name, _parse_entries(doc["programs"], base,
                                              where=str(path), check_paths=check_paths)))
    else:
        raise ManifestError('manifest needs a "programs" or "datasets" field',
                            entity=str(path))
    return ManifestData(datasets, dict(metadata))


def load_manifest(path: str | Path) -> list[ProgramEntry]:
    """Load a single-dataset manifest into its program entries."""
    data = load_datasets(path)
    if len(data.datasets) != 1:
        raise ManifestError("manifest holds multiple datasets; use load_datasets",
                            entity=str(path))
    return data.datasets[0][1]


@dataclass
class CorpusGrid:
    """P programmers x A applications, one entry per cell.

    Label lists keep first-appearance order from the manifest; cells are
    keyed by (application, programmer) labels.
    """

    programmers: list[str]
    applications: list[str]
    cells: dict[tuple[str, str], ProgramEntry]

    @property
    def entries(self) -> list[ProgramEntry]:
        """Cells in row-major (application, programmer) label order."""
        return [self.cells[(a, p)] for a in self.applications for p in self.programmers]


def build_grid(entries: Sequence[ProgramEntry]) -> CorpusGrid:
    """Arrange entries into a complete grid or fail naming the defects."""
    programmers: list[str] = []
    applications: list[str] = []
    cells: dict[tuple[str, str], ProgramEntry] = {}
    duplicates: list[tuple[str, str]] = []
    for entry in entries:
        if entry.programmer not in programmers:
            programmers.append(entry.programmer)
        if entry.application not in applications:
            applications.append(entry.application)
        key = (entry.application, entry.programmer)
        if key in cells:
            duplicates.append(key)
        else:
            cells[key] = entry
    missing = [(a, p) for a in applications for p in programmers if (a, p) not in cells]
    if duplicates or missing:
        parts = []
        if missing:
            parts.append("missing cells: " + ", ".join(f"({a}, {p})" for a, p in missing))
        if duplicates:
            parts.append("duplicate cells: " + ", ".join(f"({a}, {p})" for a, p in duplicates))
        raise IncompleteGridError("; ".join(parts))
    if len(programmers) < 2 or len(applications) < 2:
        raise IncompleteGridError(
            f"grid needs at least 2 programmers and 2 applications, got "
            f"{len(programmers)}x{len(applications)}")
    return CorpusGrid(programmers, applications, cells)


class GroupingKind(str, Enum):
    APPLICATION_SPECIFIC = "application_specific"
    PROGRAMMER_SPECIFIC = "programmer_specific"
    TOTALLY_DIFFERENT = "totally_different"


@dataclass(frozen=True)
class GroupingScheme:
    kind: GroupingKind
    stride: int | None = None

    @property
    def label(self) -> str:
        if self.kind is GroupingKind.APPLICATION_SPECIFIC:
            return "Application Specific"
        if self.kind is GroupingKind.PROGRAMMER_SPECIFIC:
            return "Programmer Specific"
        return f"Totally Different {self.stride}"


APPLICATION_SPECIFIC = GroupingScheme(GroupingKind.APPLICATION_SPECIFIC)
PROGRAMMER_SPECIFIC = GroupingScheme(GroupingKind.PROGRAMMER_SPECIFIC)

# Aggregate column label for the totally-different baseline.
TD_LABEL = "Totally Different"


def totally_different(stride: int) -> GroupingScheme:
    return GroupingScheme(GroupingKind.TOTALLY_DIFFERENT, stride)


def coprime_strides(n: int) -> list[int]:
    """Strides producing valid transversal partitions of an n x n grid."""
    return [s for s in range(1, n) if math.gcd(s, n) == 1]


def default_strides(n: int) -> list[int]:
    """Up to three coprime strides: three groupings for 5x5, two for 3x3."""
    return coprime_strides(n)[:3]


@dataclass(frozen=True)
class Subset:
    scheme: GroupingScheme
    label: str
    members: tuple[ProgramEntry, ...]


def enumerate_subsets(grid: CorpusGrid, scheme: GroupingScheme) -> list[Subset]:
    """All subsets of one grouping scheme.

    Application-specific: one subset per application, holding every
    programmer's program for it. Programmer-specific: one per programmer,
    holding their program for every application. Totally-different with
    stride s: n transversals, subset j holding cell (application i,
    programmer (j + s*i) mod n). Transversal composition indexes the
    sorted label lists, so reordering the manifest cannot change any
    numeric result.
    """
    if scheme.kind is GroupingKind.APPLICATION_SPECIFIC:
        return [Subset(scheme, app,
                       tuple(grid.cells[(app, p)] for p in grid.programmers))
                for app in grid.applications]
    if scheme.kind is GroupingKind.PROGRAMMER_SPECIFIC:
        return [Subset(scheme, programmer,
                       tuple(grid.cells[(a, programmer)] for a in grid.applications))
                for programmer in grid.programmers]

    n = len(grid.programmers)
    if len(grid.applications) != n:
        raise InvalidStrideError(
            f"totally-different groupings need a square grid, got "
            f"{len(grid.applications)}x{n}")
    stride = scheme.stride
    if stride is None or not 1 <= stride < n or math.gcd(stride, n) != 1:
        raise InvalidStrideError(
            f"stride {stride} is invalid for a {n}x{n} grid; valid strides: "
            f"{coprime_strides(n)}")
    apps = sorted(grid.applications)
    programmers = sorted(grid.programmers)
    subsets = []
    for j in range(n):
        members = tuple(grid.cells[(apps[i], programmers[(j + stride * i) % n])]
                        for i in range(n))
        subsets.append(Subset(scheme, f"subset {j + 1}", members))
    return subsets


@dataclass(frozen=True)
class PairValue:
    id_a: str
    id_b: str
    value: float


def pairwise_values(subset: Subset, kind: MetricKind,
                    features: Mapping[str, ProgramFeatures],
                    universes: Mapping[int, PatternUniverse] | None = None,
                    ) -> list[PairValue]:
    """One metric value per unordered member pair, in (i < j) index order."""
    members = subset.members
    values: list[PairValue] = []
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            a, b = members[i], members[j]
            try:
                value = measure(kind, features[a.id], features[b.id], universes).value
            except EmptyProgramError as exc:
                raise EmptyProgramError(f"{exc.message} (pair {a.id}, {b.id})",
                                        entity=f"{a.id},{b.id}") from exc
            values.append(PairValue(a.id, b.id, value))
    return values


def _mean(values: Iterable[float], what: str) -> float:
    values = list(values)
    if not values:
        raise ValueError(f"cannot average an empty list of {what}")
    # fsum is correctly rounded, so the result cannot depend on the order
    # in which pairs or subsets happen to be enumerated
    return math.fsum(values) / len(values)


def subset_mean(values: Iterable[float]) -> float:
    """Arithmetic mean of a subset's C(k, 2) pair values."""
    return _mean(values, "pair values")


def group_mean(subset_means: Iterable[float]) -> float:
    """Arithmetic mean of a grouping's subset means."""
    return _mean(subset_means, "subset means")


def td_aggregate(grouping_means: Iterable[float]) -> float:
    """Mean of the totally-different grouping means.

    Every grouping has the same pair count, so this equals the pooled
    mean over all totally-different pair values.
    """
    return _mean(grouping_means, "grouping means")


def cross_dataset_mean(values: Iterable[float]) -> float:
    """Mean of one grouping's value across datasets."""
    return _mean(values, "dataset values")


def normalize(group_value: float, td_value: float, kind: MetricKind) -> float:
    """Rescale a group value so the totally-different baseline maps to 1.

    Similarities divide by the baseline; distances divide the baseline by
    the group. Either way a larger result means more intra-group
    similarity.
    """
    if group_value <= 0 or td_value <= 0:
        raise NormalizationError(
            f"cannot normalize non-positive values (group={group_value}, "
            f"baseline={td_value})")
    if kind.is_distance:
        return td_value / group_value
    return group_value / td_value


@dataclass
class SubsetSummary:
    label: str
    pairs: list[PairValue]
    mean: float


@dataclass
class GroupingResult:
    scheme: GroupingScheme
    subsets: list[SubsetSummary]
    mean: float


@dataclass
class MetricStudy:
    """One metric's results over every grouping of one dataset.

    ``normalized`` maps grouping labels to indices; ``None`` flags a
    degenerate cell (a zero distance group or baseline that cannot be
    normalized).
    """

    kind: MetricKind
    groupings: dict[str, GroupingResult]
    td_mean: float
    normalized: dict[str, float | None]


@dataclass
class StudyReport:
    dataset: str
    programmers: list[str]
    applications: list[str]
    strides: list[int]
    metrics: dict[MetricKind, MetricStudy]


def build_universes(features: Mapping[str, ProgramFeatures]) -> dict[int, PatternUniverse]:
    """Corpus-wide pattern universes for n = 2 and 3."""
    ids = sorted(features)
    return {
        2: build_universe([features[i].patterns2 for i in ids], n=2),
        3: build_universe([features[i].patterns3 for i in ids], n=3),
    }


def _normalized_cells(groupings: dict[str, GroupingResult], td: float,
                      kind: MetricKind) -> dict[str, float | None]:
    cells: dict[str, float | None] = {}
    for label in (PROGRAMMER_SPECIFIC.label, APPLICATION_SPECIFIC.label):
        try:
            cells[label] = normalize(groupings[label].mean, td, kind)
        except NormalizationError:
            cells[label] = None
    cells[TD_LABEL] = 1.0 if td > 0 else None
    return cells


def run_study(grid: CorpusGrid, features: Mapping[str, ProgramFeatures], *,
              strides: Sequence[int] | None = None,
              dataset_name: str = "dataset",
              universes: Mapping[int, PatternUniverse] | None = None) -> StudyReport:
    """Score every grouping of a square grid under all four metrics.

    Deterministic: groupings, subsets, and pairs are traversed in a fixed
    order, so identical inputs produce identical reports.
    """
    n = len(grid.programmers)
    if len(grid.applications) != n:
        raise InvalidStrideError(
            "the study needs a square grid for its totally-different baseline; "
            f"got {len(grid.applications)}x{n}")
    for entry in grid.entries:
        entry_features = features.get(entry.id)
        if entry_features is None:
            raise ValueError(f"no features for program {entry.id!r}")
        if not entry_features.frequency:
            raise EmptyProgramError(f"program {entry.id!r} has no instructions",
                                    entity=entry.id)

    if strides is None:
        strides = default_strides(n)
    strides = list(strides)
    if not strides:
        raise InvalidStrideError("at least one totally-different stride is required")
    for stride in strides:
        if not 1 <= stride < n or math.gcd(stride, n) != 1:
            raise InvalidStrideError(
                f"stride {stride} is invalid for a {n}x{n} grid; valid strides: "
                f"{coprime_strides(n)}")

    if universes is None:
        universes = build_universes(features)

    schemes = [PROGRAMMER_SPECIFIC, APPLICATION_SPECIFIC]
    schemes += [totally_different(s) for s in strides]

    metrics: dict[MetricKind, MetricStudy] = {}
    for kind in METRIC_ORDER:
        groupings: dict[str, GroupingResult] = {}
        td_means: list[float] = []
        for scheme in schemes:
            summaries = []
            for subset in enumerate_subsets(grid, scheme):
                pairs = pairwise_values(subset, kind, features, universes)
                summaries.append(SubsetSummary(subset.label, pairs,
                                               subset_mean(p.value for p in pairs)))
            mean = group_mean(s.mean for s in summaries)
            groupings[scheme.label] = GroupingResult(scheme, summaries, mean)
            if scheme.kind is GroupingKind.TOTALLY_DIFFERENT:
                td_means.append(mean)
        td = td_aggregate(td_means)
        metrics[kind] = MetricStudy(kind, groupings, td,
                                    _normalized_cells(groupings, td, kind))

    return StudyReport(dataset_name, list(grid.programmers),
                       list(grid.applications), strides, metrics)


@dataclass
class SuiteSummary:
    """Cross-dataset averages and normalized indices for one metric."""

    kind: MetricKind
    means: dict[str, float]
    normalized: dict[str, float | None]


@dataclass
class StudySuite:
    reports: list[StudyReport]
    summary: dict[MetricKind, SuiteSummary]


def build_suite(reports: Sequence[StudyReport]) -> StudySuite:
    """Aggregate per-dataset reports into cross-dataset summary rows.

    Programmer/application columns average their per-dataset group means;
    the totally-different column pools every (dataset, stride) grouping
    mean, matching the balanced-design pooled mean.
    """
    if not reports:
        raise ValueError("cannot summarize zero reports")
    summary: dict[MetricKind, SuiteSummary] = {}
    for kind in METRIC_ORDER:
        ps = cross_dataset_mean(
            r.metrics[kind].groupings[PROGRAMMER_SPECIFIC.label].mean for r in reports)
        as_ = cross_dataset_mean(
            r.metrics[kind].groupings[APPLICATION_SPECIFIC.label].mean for r in reports)
        td = td_aggregate(
            g.mean
            for r in reports
            for g in r.metrics[kind].groupings.values()
            if g.scheme.kind is GroupingKind.TOTALLY_DIFFERENT)
        means = {PROGRAMMER_SPECIFIC.label: ps, APPLICATION_SPECIFIC.label: as_,
                 TD_LABEL: td}
        normalized: dict[str, float | None] = {}
        for label in (PROGRAMMER_SPECIFIC.label, APPLICATION_SPECIFIC.label):
            try:
                normalized[label] = normalize(means[label], td, kind)
            except NormalizationError:
                normalized[label] = None
        normalized[TD_LABEL] = 1.0 if td > 0 else None
        summary[kind] = SuiteSummary(kind, means, normalized)
    return StudySuite(list(reports), summary)
