"""
Human-readable run summaries
"""


def _witness_lines(record):
    witness = record.witness
    if witness is None:
        return []
    if isinstance(witness, list):
        shown = witness[:5]
        lines = [f"      - {item}" for item in shown]
        if len(witness) > len(shown):
            lines.append(f"      ... and {len(witness) - len(shown)} more")
        return lines
    return [f"      {witness}"]


def format_record(record):
    mark = "OK " if record.succeeded else "?? " if record.verdict != "Error" else "ERR"
    lines = [f"  [{mark}] {record.task}: {record.verdict} ({record.elapsed_ms} ms)"]
    if not record.succeeded:
        lines += _witness_lines(record)
    return "\n".join(lines)


def format_report(report):
    """Multi-line text summary of a Report"""
    lines = [f"Presentation: {report.presentation}"]
    lines += [format_record(r) for r in report.records]
    passed = sum(1 for r in report.records if r.succeeded)
    lines.append(f"{passed}/{len(report.records)} tasks certified, exit code {report.exit_code}")
    return "\n".join(lines)
