"""ID <-> name translation of rule files and the text summary report.

Rule lines look like ``1 2 -> 3 #STAB: 0.67``: entity tokens, a literal
``->``, more entity tokens, then optional ``#`` annotations which are kept
verbatim. Only the entity tokens are rewritten, whitespace included, so
decoding followed by encoding gives back the original bytes.
"""
from __future__ import annotations

import re
from pathlib import Path
from typing import Sequence

from .evolution import NewState, SnpReport, classify_new_state
from .model import FormatError, SysNetError, format_decimal
from .preprocess import ARROW, EntityIndex

NERS_NAME = "NERs_Name.txt"
SNERS_NAME = "SNERs_Name.txt"
REPORT = "report.txt"

_TOKEN = re.compile(r"\S+")


def _split_annotations(line: str) -> tuple[str, str]:
    match = re.search(r"(?<!\S)#", line)
    if match is None:
        return line, ""
    return line[:match.start()], line[match.start():]


def _rewrite(line: str, translate, line_no: int, path) -> str:
    body, annotations = _split_annotations(line)
    tokens = body.split()
    if not tokens or tokens.count(ARROW) != 1 or tokens[0] == ARROW or tokens[-1] == ARROW:
        raise FormatError("rule line needs 'X -> Y'", path, line_no)

    def sub(match):
        tok = match.group(0)
        return tok if tok == ARROW else translate(tok)

    return _TOKEN.sub(sub, body) + annotations


def decode_line(line: str, index: EntityIndex, line_no: int = 1, path=None) -> str:
    def translate(tok):
        try:
            entity_id = int(tok)
        except ValueError:
            raise FormatError(f"non-integer entity id {tok!r}", path, line_no) from None
        try:
            return index.reverse[entity_id]
        except KeyError:
            raise SysNetError(
                f"{path or 'line'}:{line_no}: entity id {entity_id} is not in the index"
            ) from None

    return _rewrite(line, translate, line_no, path)


def encode_line(line: str, index: EntityIndex, line_no: int = 1, path=None) -> str:
    def translate(tok):
        try:
            return str(index.forward[tok])
        except KeyError:
            raise SysNetError(
                f"{path or 'line'}:{line_no}: entity {tok!r} is not in the index"
            ) from None

    return _rewrite(line, translate, line_no, path)


def _transform_file(src, index, dst, fn) -> None:
    src = Path(src)
    out = []
    with open(src, encoding="utf-8", newline="") as fh:
        for line_no, raw in enumerate(fh, 1):
            content = raw.rstrip("\r\n")
            ending = raw[len(content):]
            if not content.strip():
                out.append(raw)
                continue
            out.append(fn(content, index, line_no, src) + ending)
    with open(dst, "w", encoding="utf-8", newline="") as fh:
        fh.writelines(out)


def decode_rules(rules_file_id, index: EntityIndex, out) -> None:
    """Write a copy of an ID-form rule file with every ID replaced by its name."""
    _transform_file(rules_file_id, index, out, decode_line)


def encode_rules(rules_file_name, index: EntityIndex, out) -> None:
    """Inverse of :func:`decode_rules`."""
    _transform_file(rules_file_name, index, out, encode_line)


def _rule_lines(path) -> list[str]:
    return [line for line in Path(path).read_text(encoding="utf-8").splitlines() if line.strip()]


def summarize(
    report: SnpReport,
    ners_file,
    sners_file,
    labels: Sequence[str] = (),
    index: EntityIndex | None = None,
    previous: SnpReport | None = None,
    top: int = 10,
    tol: float = 0.5,
) -> str:
    """Build the text report; rule files are the ID-form NER and SNER outputs."""
    ners = _rule_lines(ners_file)
    sners = _rule_lines(sners_file)
    if len(ners) != report.ner_count or len(sners) != report.sner_count:
        raise SysNetError(
            f"report counts (NER {report.ner_count}, SNER {report.sner_count}) do not match "
            f"rule files (NER {len(ners)}, SNER {len(sners)})"
        )
    shown = sners[:top]
    if index is not None:
        shown = [decode_line(line, index, n, sners_file) for n, line in enumerate(shown, 1)]
    lines = [
        "SysNet analytics report",
        f"thresholds (minSupCount-minConf-minStabCount): {report.thresholds.label}",
        f"states (N): {report.n_states}",
    ]
    if labels:
        lines.append("state order: " + ", ".join(labels))
    lines += [
        f"minStab: {format_decimal(report.min_stab, 2)}",
        f"NER count: {report.ner_count}",
        f"SNER count: {report.sner_count}",
        f"SNER fraction: {format_decimal(report.sner_fraction, 3)}",
        f"SNP: {format_decimal(report.snp_exact, 2)}",
        "",
        f"top SNERs by stability ({len(shown)} of {report.sner_count}):",
    ]
    lines += [f"  {line}" for line in shown] or ["  (none)"]
    if previous is not None:
        verdict = classify_new_state(previous.snp, report.snp, tol)
        lines += [
            "",
            f"previous SNP: {format_decimal(previous.snp_exact, 2)} "
            f"(N={previous.n_states}, thresholds {previous.thresholds.label})",
            f"new-state comparison: {verdict.value}: {verdict.message}",
        ]
    return "\n".join(lines) + "\n"


def write_report(text: str, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


__all__ = [
    "NERS_NAME", "SNERS_NAME", "REPORT", "NewState", "decode_line", "decode_rules",
    "encode_line", "encode_rules", "summarize", "write_report",
]
