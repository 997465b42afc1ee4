"""Render a study suite as Markdown tables, CSV rows, or a JSON document.

Markdown mirrors the summary-table layout: one table per metric with
datasets as rows, groupings as columns, and Average / Normalized rows at
the bottom. CSV carries one row per metric x grouping x subset plus the
summary rows. JSON keeps full pair-level detail at full float precision.
Rounding happens only here: 4 decimals for similarities, 2 for distances,
3 for normalized indices.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Mapping

from .corpus import (APPLICATION_SPECIFIC, PROGRAMMER_SPECIFIC, StudyReport,
                     StudySuite, TD_LABEL)
from .metrics import METRIC_ORDER, MetricKind

METRIC_TITLES = {
    MetricKind.JACCARD: "Instruction existence (Jaccard similarity)",
    MetricKind.COSINE: "Instruction frequency (cosine similarity)",
    MetricKind.EUCLIDEAN2: "Two-instruction patterns (Euclidean distance)",
    MetricKind.EUCLIDEAN3: "Three-instruction patterns (Euclidean distance)",
}

OUTPUT_FORMATS = ("markdown", "csv", "json")


def format_value(kind: MetricKind, value: float) -> str:
    return f"{value:.2f}" if kind.is_distance else f"{value:.4f}"


def format_normalized(value: float | None) -> str:
    return "n/a" if value is None else f"{value:.3f}"


def _td_labels(suite: StudySuite) -> list[str]:
    """Union of per-stride column labels across datasets, by stride."""
    strides = sorted({s for report in suite.reports for s in report.strides})
    return [f"{TD_LABEL} {s}" for s in strides]


def render_markdown(suite: StudySuite, metadata: Mapping | None = None) -> str:
    out: list[str] = ["# Assembly similarity study", ""]
    for report in suite.reports:
        strides = ", ".join(str(s) for s in report.strides)
        out.append(f"- dataset `{report.dataset}`: {len(report.applications)} "
                   f"applications x {len(report.programmers)} programmers, "
                   f"totally-different strides {strides}")
    if metadata:
        for key in sorted(metadata):
            out.append(f"- {key}: {metadata[key]}")
    out.append("")

    td_labels = _td_labels(suite)
    columns = [PROGRAMMER_SPECIFIC.label, APPLICATION_SPECIFIC.label, *td_labels]
    for kind in METRIC_ORDER:
        out.append(f"## {METRIC_TITLES[kind]}")
        out.append("")
        out.append("| Data set | " + " | ".join(columns) + " |")
        out.append("|" + " --- |" * (len(columns) + 1))
        for report in suite.reports:
            study = report.metrics[kind]
            row = [report.dataset]
            for label in columns:
                grouping = study.groupings.get(label)
                row.append("" if grouping is None else format_value(kind, grouping.mean))
            out.append("| " + " | ".join(row) + " |")
        summary = suite.summary[kind]
        average = [
            "Average",
            format_value(kind, summary.means[PROGRAMMER_SPECIFIC.label]),
            format_value(kind, summary.means[APPLICATION_SPECIFIC.label]),
            # the totally-different aggregate pools all strides: one cell
            format_value(kind, summary.means[TD_LABEL]),
        ]
        average += [""] * (len(td_labels) - 1)
        out.append("| " + " | ".join(average) + " |")
        normalized = [
            "Normalized",
            format_normalized(summary.normalized[PROGRAMMER_SPECIFIC.label]),
            format_normalized(summary.normalized[APPLICATION_SPECIFIC.label]),
            format_normalized(summary.normalized[TD_LABEL]),
        ]
        normalized += [""] * (len(td_labels) - 1)
        out.append("| " + " | ".join(normalized) + " |")
        out.append("")
    return "\n".join(out)


CSV_COLUMNS = ("dataset", "metric", "grouping", "subset", "pairs", "value", "kind")

SUITE_DATASET = "(all)"


def render_csv(suite: StudySuite, metadata: Mapping | None = None) -> str:
    del metadata  # config belongs in the JSON report, not the flat table
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for report in suite.reports:
        for kind in METRIC_ORDER:
            study = report.metrics[kind]
            for label, grouping in study.groupings.items():
                for subset in grouping.subsets:
                    writer.writerow([report.dataset, kind.value, label, subset.label,
                                     len(subset.pairs), format_value(kind, subset.mean),
                                     "subset"])
                writer.writerow([report.dataset, kind.value, label, "", "",
                                 format_value(kind, grouping.mean), "group"])
            writer.writerow([report.dataset, kind.value, TD_LABEL, "", "",
                             format_value(kind, study.td_mean), "td_aggregate"])
            for label, value in study.normalized.items():
                writer.writerow([report.dataset, kind.value, label, "", "",
                                 format_normalized(value), "normalized"])
    for kind in METRIC_ORDER:
        summary = suite.summary[kind]
        for label, value in summary.means.items():
            writer.writerow([SUITE_DATASET, kind.value, label, "", "",
                             format_value(kind, value), "average"])
        for label, value in summary.normalized.items():
            writer.writerow([SUITE_DATASET, kind.value, label, "", "",
                             format_normalized(value), "normalized"])
    return buffer.getvalue()


def report_to_dict(report: StudyReport) -> dict:
    metrics = {}
    for kind in METRIC_ORDER:
        study = report.metrics[kind]
        groupings = {}
        for label, grouping in study.groupings.items():
            groupings[label] = {
                "mean": grouping.mean,
                "subsets": [
                    {
                        "label": subset.label,
                        "mean": subset.mean,
                        "pairs": [{"a": p.id_a, "b": p.id_b, "value": p.value}
                                  for p in subset.pairs],
                    }
                    for subset in grouping.subsets
                ],
            }
        metrics[kind.value] = {
            "groupings": groupings,
            "td_mean": study.td_mean,
            "normalized": dict(study.normalized),
        }
    return {
        "name": report.dataset,
        "programmers": report.programmers,
        "applications": report.applications,
        "strides": report.strides,
        "metrics": metrics,
    }


def suite_to_dict(suite: StudySuite, metadata: Mapping | None = None) -> dict:
    return {
        "metadata": dict(metadata or {}),
        "datasets": [report_to_dict(report) for report in suite.reports],
        "summary": {
            kind.value: {
                "means": dict(suite.summary[kind].means),
                "normalized": dict(suite.summary[kind].normalized),
            }
            for kind in METRIC_ORDER
        },
    }


def render_json(suite: StudySuite, metadata: Mapping | None = None) -> str:
    return json.dumps(suite_to_dict(suite, metadata), indent=2) + "\n"


RENDERERS = {
    "markdown": render_markdown,
    "csv": render_csv,
    "json": render_json,
}


def render(suite: StudySuite, output_format: str,
           metadata: Mapping | None = None) -> str:
    try:
        renderer = RENDERERS[output_format]
    except KeyError:
        raise ValueError(f"unknown output format {output_format!r}; "
                         f"expected one of {OUTPUT_FORMATS}") from None
    return renderer(suite, metadata)
