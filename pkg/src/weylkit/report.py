"""Report serialization: canonical JSON and a readable markdown rendering.

Canonical JSON is the golden-comparison format: keys sorted, two-space
indentation, trailing newline.  The ``timing`` block is the only part of a
report that varies between runs, so comparisons strip it first.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

VERDICT_MARKS = {
    "pass": "PASS",
    "fail": "FAIL",
    "inconclusive": "INCONCLUSIVE",
    "error": "ERROR",
}


def strip_timing(report: Mapping[str, Any]) -> dict[str, Any]:
    """Copy of the report without the run-varying timing block."""
    return {key: value for key, value in report.items() if key != "timing"}


def render_json(report: Mapping[str, Any], include_timing: bool = True) -> str:
    payload = dict(report) if include_timing else strip_timing(report)
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def render_markdown(report: Mapping[str, Any]) -> str:
    summary = report["summary"]
    lines = [
        f"# Verification report: {report['scenario']}",
        "",
        f"Engine: {report['engine']['name']} {report['engine']['version']}"
        f" — ambient coordinates: {report['ambient']}",
        "",
        f"**{summary['pass']}/{summary['total']} checks passed**"
        + ("" if summary["all_pass"] else
           f" ({summary['fail']} failed, {summary['inconclusive']} inconclusive,"
           f" {summary['error']} errored)"),
        "",
        "| check | kind | verdict | provenance | anchor |",
        "|---|---|---|---|---|",
    ]
    for record in report["checks"]:
        anchor = record.get("anchor", "")
        lines.append(
            f"| `{record['id']}` | {record['kind']} | {VERDICT_MARKS[record['verdict']]}"
            f" | {record['provenance']} | {anchor} |"
        )
    problems = [r for r in report["checks"] if r["verdict"] != "pass"]
    if problems:
        lines += ["", "## Failures", ""]
        for record in problems:
            witness = json.dumps(record["witness"], sort_keys=True)
            lines.append(f"- `{record['id']}` ({record['verdict']}): `{witness}`")
    lines.append("")
    return "\n".join(lines)


def check_lines(report: Mapping[str, Any]) -> list[str]:
    """One status line per check, the verify verb's terminal output."""
    lines = []
    for record in report["checks"]:
        mark = VERDICT_MARKS[record["verdict"]]
        line = f"[{mark}] {record['id']}"
        if record["verdict"] != "pass":
            line += " :: " + json.dumps(record["witness"], sort_keys=True)
        lines.append(line)
    return lines
