"""
Rendering of command results. Task results are plain dicts so they can
cross a Celery boundary; text output is rebuilt from them here.
"""

from checkers.verdicts import Verdict
from triples.documents import dumps

DESINGULARIZATION_HEADER = (
    "# desingularization: the original triple is strongly Morita equivalent "
    "to the row-finite, source-free triple below"
)


def _error_line(error: dict) -> str:
    return f"error [{error['code']}]: {error['detail']}"


def validation_lines(path: str, result: dict) -> list[str]:
    if "error" in result:
        return [f"{path}: {_error_line(result['error'])}"]
    report = result["report"]
    if result["ok"]:
        lines = [f"{path}: ok"]
        for orbit in result.get("singular_orbits", []):
            lines.append(
                f"  singular orbit of {orbit['representative']} ({orbit['kind']}): "
                f"{', '.join(orbit['vertices'])}"
            )
    else:
        lines = [f"{path}: {len(report['violations'])} violation(s)"]
        for violation in report["violations"]:
            params = ", ".join(f"{k}={v}" for k, v in violation["witness"].items())
            lines.append(f"  [{violation['axiom']}] {violation['message']} ({params})")
    lines.extend(f"  note: {note}" for note in report.get("notes", []))
    return lines


def check_lines(path: str, result: dict) -> list[str]:
    """
    Verdict tree, notes, failing relation instances and the certificate
    status of one property check.
    """
    name = result.get("property")
    if "error" in result:
        return [f"{path}: {name}: {_error_line(result['error'])}"]
    report = result["report"]
    lines = [f"{path}:"]
    lines.extend(f"  {line}" for line in Verdict.from_dict(report).lines())
    lines.extend(f"  note: {note}" for note in report.get("notes", []))
    if report.get("truncation_depth"):
        lines.append(f"  checked on a truncation at depth {report['truncation_depth']}")
    records = report.get("records")
    if records:
        lines.append(f"  {records['checked']} instance(s) checked, {records['failed']} failed")
        for record in records["records"]:
            if record["passed"]:
                continue
            params = " ".join(f"{k}={v}" for k, v in record["instance"].items())
            line = f"  {record['relation']:<10} {params} FAIL"
            if record.get("witness"):
                line += f"  witness: {record['witness']}"
            lines.append(line)
    if result.get("certificate_verified"):
        lines.append("  certificate: verified")
    return lines


def eval_lines(records: list[dict]) -> list[str]:
    lines = []
    for record in records:
        if record["error"]:
            lines.append(f"{record['expression']}  !  {record['error']}")
        else:
            lines.append(f"{record['expression']}  =  {record['result']}")
    return lines


def render(data, lines: list[str], output_format: str) -> str:
    if output_format == "json":
        return dumps(data)
    return "\n".join(lines) + "\n"
