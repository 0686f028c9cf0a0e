"""
Rendering of result tables as JSON, CSV, LaTeX or plain text.

Every renderer is a pure function of its input so repeated runs produce
identical bytes.
"""

import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Tuple

from app.models.combinatorics import Stratum
from app.models.laurent import Arity, LaurentPoly
from app.models.tables import SCHEMA_VERSION, VerificationReport


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    LATEX = "latex"
    TEXT = "text"


@dataclass
class ResultTable:
    """Rows of (key, polynomial) for one genus and one kind of quantity."""

    genus: int
    kind: str
    rows: List[Tuple[str, LaurentPoly]] = field(default_factory=list)
    extra: Dict[str, Any] = field(default_factory=dict)


def to_json(table: ResultTable) -> str:
    document = {
        "schema_version": SCHEMA_VERSION,
        "genus": table.genus,
        "kind": table.kind,
        "entries": [{"key": key, "poly": poly.to_json()} for key, poly in table.rows],
    }
    document.update(table.extra)
    return json.dumps(document, sort_keys=True, indent=2) + "\n"


def to_csv(table: ResultTable) -> str:
    """One row per monomial: genus, key, exponent(s), coefficient as a decimal string."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    bivariate = any(poly.arity is Arity.BIVARIATE for _, poly in table.rows)
    if bivariate:
        writer.writerow(["genus", "key", "u_exponent", "v_exponent", "coefficient"])
    else:
        writer.writerow(["genus", "key", "exponent", "coefficient"])
    for key, poly in table.rows:
        for exp, coeff in poly.sorted_terms():
            exps = list(exp) if isinstance(exp, tuple) else [exp]
            writer.writerow([table.genus, key, *exps, str(coeff)])
    return buffer.getvalue()


def _latex_escape(text: str) -> str:
    return text.replace("_", r"\_")


def to_latex(table: ResultTable) -> str:
    lines = [
        r"\begin{tabular}{ll}",
        r"\hline",
        f"$g = {table.genus}$ & {_latex_escape(table.kind)} \\\\",
        r"\hline",
    ]
    for key, poly in table.rows:
        lines.append(f"{_latex_escape(key)} & ${poly.format(latex=True)}$ \\\\")
    lines += [r"\hline", r"\end{tabular}"]
    return "\n".join(lines) + "\n"


def to_text(table: ResultTable) -> str:
    lines = [f"{table.kind} (genus {table.genus})"]
    for key, poly in table.rows:
        lines.append(f"  {key}: {poly.format()}")
    for name in sorted(table.extra):
        lines.append(f"  {name}: {table.extra[name]}")
    return "\n".join(lines) + "\n"


RENDERERS = {
    OutputFormat.JSON: to_json,
    OutputFormat.CSV: to_csv,
    OutputFormat.LATEX: to_latex,
    OutputFormat.TEXT: to_text,
}


def render(table: ResultTable, fmt: OutputFormat) -> str:
    return RENDERERS[fmt](table)


def render_strata(genus: int, rank: int, strata: List[Stratum], fmt: OutputFormat) -> str:
    rows = [
        {
            "multipartition": str(s.multipartition),
            "partition": s.partition.text(),
            "abelian": s.abelian,
            "dimension": s.dimension,
        }
        for s in strata
    ]
    if fmt is OutputFormat.JSON:
        document = {"schema_version": SCHEMA_VERSION, "genus": genus, "rank": rank, "strata": rows}
        return json.dumps(document, sort_keys=True, indent=2) + "\n"
    if fmt is OutputFormat.CSV:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["genus", "rank", "multipartition", "partition", "abelian", "dimension"])
        for row in rows:
            writer.writerow([genus, rank, row["multipartition"], row["partition"], row["abelian"], row["dimension"]])
        return buffer.getvalue()
    if fmt is OutputFormat.LATEX:
        lines = [r"\begin{tabular}{llll}", r"\hline", r"multipartition & partition & abelian & dimension \\", r"\hline"]
        for row in rows:
            lines.append(f"{row['multipartition']} & {row['partition']} & {'yes' if row['abelian'] else 'no'} & {row['dimension']} \\\\")
        lines += [r"\hline", r"\end{tabular}"]
        return "\n".join(lines) + "\n"
    lines = [f"strata of M_0({rank}) (genus {genus})"]
    for row in rows:
        kind = "abelian" if row["abelian"] else "non-abelian"
        lines.append(f"  {row['multipartition']}  [{row['partition']}]  dim {row['dimension']}  {kind}")
    return "\n".join(lines) + "\n"


def render_report(report: VerificationReport) -> str:
    """Machine-readable verification report."""
    document = {
        "schema_version": SCHEMA_VERSION,
        "passed": report.passed,
        "summary": report.summary(),
        "checks": [c.model_dump() for c in report.checks],
    }
    return json.dumps(document, sort_keys=True, indent=2) + "\n"
