"""
Report plumbing shared by the computations and the command line: certificate
records, group notation, the table renderer and the structured JSON writer.
"""
import json
import logging

import click

from config import config, notation

logger = logging.getLogger(__name__)


# --- Certificates ---

def certificate(name, passed, detail=""):
    return {"name": name, "passed": bool(passed), "detail": detail}


def all_passed(certificates):
    return all(c["passed"] for c in certificates)


def failed_certificates(report):
    """Names of every failing certificate anywhere in a nested report."""
    failures = []

    def walk(node):
        if isinstance(node, dict):
            for c in node.get("certificates", ()):
                if not c["passed"]:
                    failures.append(c["name"])
            for key, value in sorted(node.items()):
                if key != "certificates":
                    walk(value)
        elif isinstance(node, list):
            for item in node:
                walk(item)

    walk(report)
    return failures


# --- Group Notation ---

def group_notation(invariant_factors, free_rank):
    """Z^2 + Z/2 style notation from a canonical form."""
    parts = []
    if free_rank == 1:
        parts.append(notation.INFINITE_CYCLIC)
    elif free_rank > 1:
        parts.append(notation.POWER.format(base=notation.INFINITE_CYCLIC, exponent=free_rank))
    counts = {}
    for order in invariant_factors:
        counts[order] = counts.get(order, 0) + 1
    for order in sorted(counts):
        base = notation.FINITE_CYCLIC.format(order=order)
        parts.append(base if counts[order] == 1 else notation.POWER.format(base=f"({base})", exponent=counts[order]))
    return notation.DIRECT_SUM.join(parts) if parts else notation.TRIVIAL_GROUP


def describe_group(group):
    return group_notation(group.invariant_factors, group.free_rank)


def group_record(group):
    return {"invariant_factors": list(group.invariant_factors), "free_rank": group.free_rank,
            "notation": describe_group(group)}


def matrix_record(matrix):
    return [list(matrix.row(i)) for i in range(matrix.rows)]


def homology_line(table):
    """H_0 = Z, H_1 = Z/2 ... from a homology table; degrees with zero homology are skipped."""
    entries = [f"H_{row['degree']} = {group_notation(row['invariant_factors'], row['free_rank'])}"
               for row in table if row["invariant_factors"] or row["free_rank"]]
    return ", ".join(entries) if entries else "acyclic"


# --- Rendering ---

def to_json(report):
    document = dict(report)
    document["schema_version"] = config.REPORT_SCHEMA_VERSION
    return json.dumps(document, indent=config.JSON_INDENT, sort_keys=True)


def render_table(report, title=""):
    """
    Plain-text rendering of a nested report: scalars as aligned key/value
    rows, lists of flat records as columns, nested sections under titles.
    """
    lines = []
    if title:
        lines.append(notation.SECTION_TITLE.format(title=title))
    _render(report, lines, indent="")
    return "\n".join(lines)


def _scalar(value):
    if isinstance(value, bool):
        return notation.YES if value else notation.NO
    if isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value):
        return "[" + ", ".join(str(v) for v in value) + "]"
    if isinstance(value, list) and all(isinstance(v, list) for v in value):
        return "[" + ", ".join(_scalar(v) for v in value) + "]"
    return str(value)


def _is_flat(value):
    return not isinstance(value, (dict, list)) or (
        isinstance(value, list) and all(not isinstance(v, dict) for v in value))


def _render(node, lines, indent):
    flat = [(k, v) for k, v in sorted(node.items()) if _is_flat(v) and k != "certificates"]
    width = max((len(k) for k, _ in flat), default=0)
    for key, value in flat:
        lines.append(f"{indent}{key.ljust(width)}{notation.COLUMN_SEPARATOR}{_scalar(value)}")
    for c in node.get("certificates", ()):
        verdict = notation.PASS if c["passed"] else notation.FAIL
        detail = f"{notation.COLUMN_SEPARATOR}{c['detail']}" if c["detail"] else ""
        lines.append(f"{indent}[{verdict}] {c['name']}{detail}")
    for key, value in sorted(node.items()):
        if _is_flat(value) or key == "certificates":
            continue
        lines.append(f"{indent}{key}:")
        if isinstance(value, dict):
            _render(value, lines, indent + "  ")
        else:
            _render_records(value, lines, indent + "  ")


def _render_records(records, lines, indent):
    if all(isinstance(r, dict) and all(_is_flat(v) for v in r.values()) for r in records) and records:
        columns = sorted({k for r in records for k in r})
        cells = [[_scalar(r.get(c, "")) for c in columns] for r in records]
        widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(columns)]
        lines.append(indent + notation.COLUMN_SEPARATOR.join(c.ljust(w) for c, w in zip(columns, widths)))
        lines.append(indent + notation.COLUMN_SEPARATOR.join(notation.HEADER_RULE * w for w in widths))
        for row in cells:
            lines.append(indent + notation.COLUMN_SEPARATOR.join(v.ljust(w) for v, w in zip(row, widths)))
        return
    for k, record in enumerate(records):
        lines.append(f"{indent}- [{k}]")
        if isinstance(record, dict):
            _render(record, lines, indent + "  ")
        else:
            lines.append(f"{indent}  {_scalar(record)}")


def emit(report, output_format, output_path=None, title=""):
    """Writes the rendered report to output_path, or to stdout."""
    text = to_json(report) if output_format == "json" else render_table(report, title)
    if output_path:
        with open(output_path, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
        logger.info("report written to %s", output_path)
    else:
        click.echo(text)
