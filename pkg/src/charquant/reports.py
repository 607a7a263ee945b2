"""Deterministic report documents for the verification suites.

JSON output contains no timing data, so identical configuration and
seed produce byte-identical bytes; wall times appear only in the text
tables.  Torsion polynomials are serialized positionally as
"c0+c1*t+...".
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .homology import VerificationReport

SCHEMA_VERSION = 1
TOOL_NAME = "charquant"
TOOL_VERSION = "0.1.0"


@dataclass(frozen=True)
class RunConfig:
    p_list: tuple
    max_degree: int = 3
    max_order: int = 0
    samples: int = 100
    seed: int = 42
    output_format: str = "table"
    output_path: str | None = None

    def effective_order(self, p: int) -> int:
        return self.max_order if self.max_order else 2 * p

    def as_dict(self) -> dict:
        return {
            "p_list": list(self.p_list),
            "max_degree": self.max_degree,
            "max_order": self.max_order,
            "samples": self.samples,
            "seed": self.seed,
            "format": self.output_format,
        }


def _params_json(params: dict) -> dict:
    out = {}
    for key, value in params.items():
        if isinstance(value, (list, tuple)):
            out[key] = [str(v) for v in value]
        elif value is None or isinstance(value, (bool, int, str)):
            out[key] = value
        else:
            out[key] = str(value)
    return out


def report_projection(report: VerificationReport) -> dict:
    return {
        "suite": report.suite,
        "p": report.p,
        "params": _params_json(report.params),
        "degrees": [
            {
                "degree": s.degree,
                "free_rank": s.free_rank,
                "torsion": [t.coeff_string() for t in s.torsion],
            }
            for s in report.summaries
        ],
        "checks": [{"name": name, "pass": ok} for name, ok in report.checks],
    }


@dataclass
class ReportDocument:
    config: RunConfig
    reports: list = field(default_factory=list)

    def add(self, report: VerificationReport) -> None:
        self.reports.append(report)

    def overall_pass(self) -> bool:
        return all(r.passed() for r in self.reports)

    def to_json(self) -> str:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "tool": TOOL_NAME,
            "version": TOOL_VERSION,
            "config": self.config.as_dict(),
            "suites": [report_projection(r) for r in self.reports],
            "overall_pass": self.overall_pass(),
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    def to_table(self) -> str:
        lines = []
        for report in self.reports:
            lines.append(f"== {report.suite} (p={report.p})  [{report.wall_time:.2f}s]")
            if report.params:
                rendered = ", ".join(f"{k}={v}" for k, v in sorted(report.params.items()))
                lines.append(f"   params: {rendered}")
            if report.summaries:
                lines.append("   degree  free_rank  torsion")
                for s in report.summaries:
                    torsion = ", ".join(t.pretty() for t in s.torsion) or "-"
                    lines.append(f"   {s.degree:>6}  {s.free_rank:>9}  {torsion}")
            for name, ok in report.checks:
                lines.append(f"   [{'PASS' if ok else 'FAIL'}] {name}")
            lines.append("")
        lines.append(f"overall: {'PASS' if self.overall_pass() else 'FAIL'}")
        return "\n".join(lines) + "\n"

    def render(self) -> str:
        if self.config.output_format == "json":
            return self.to_json()
        return self.to_table()
