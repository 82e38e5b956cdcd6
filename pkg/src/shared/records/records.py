"""
Records component - shared output plumbing
Line-delimited JSON records and atomic file writes used by every writer
"""

import json
import logging
import os
import tempfile
from pathlib import Path

from src.shared.errors.errors import CorpusFormatError

logger = logging.getLogger(__name__)


def dumps_record(record: dict) -> str:
    """Renders one record as a single JSON line with sorted keys."""
    return json.dumps(record, sort_keys=True, ensure_ascii=False, allow_nan=False)


def join_lines(lines: list) -> bytes:
    """Joins text lines into newline-terminated UTF-8 bytes."""
    return "".join(line + "\n" for line in lines).encode("utf-8")


def records_to_bytes(records: list) -> bytes:
    """Serialises a list of records as line-delimited JSON."""
    return join_lines([dumps_record(record) for record in records])


def _decode_line(number: int, raw: bytes) -> str:
    """Decodes one raw line, dropping its terminator."""
    if raw.endswith(b"\n"):
        raw = raw[:-1]
    if raw.endswith(b"\r"):
        raw = raw[:-1]
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise CorpusFormatError(number, f"not valid UTF-8 (byte {e.start})") from e


def _iter_lines(raw_lines):
    """Yields (line number, text) pairs; only LF ends a line."""
    for number, raw in enumerate(raw_lines, start=1):
        yield number, _decode_line(number, raw)


def _parse_line(number: int, line: str) -> dict:
    try:
        record = json.loads(line)
    except json.JSONDecodeError as e:
        raise CorpusFormatError(number, f"malformed record ({e.msg})") from e
    if not isinstance(record, dict):
        raise CorpusFormatError(number, "record is not an object")
    return record


def _iter_records(raw_lines):
    for number, line in _iter_lines(raw_lines):
        if line.strip():
            yield number, _parse_line(number, line)


def parse_records(data: bytes) -> list:
    """
    Parses line-delimited JSON bytes.
    Returns list of (line number, record) pairs; blank lines are skipped.
    """
    return list(_iter_records(data.split(b"\n")))


def iter_records(path):
    """Streams (line number, record) pairs from a line-delimited JSON file."""
    with open(path, "rb") as handle:
        yield from _iter_records(handle)


def read_records(path) -> list:
    """Reads a line-delimited JSON file into (line number, record) pairs."""
    return list(iter_records(path))


def read_text_lines(path) -> list:
    """
    Reads a UTF-8 text file into (line number, line) pairs.
    Lines end at LF only; a trailing CR is dropped.
    """
    with open(path, "rb") as handle:
        return list(_iter_lines(handle))


def write_atomic(path, data: bytes) -> str:
    """
    Writes bytes to a sibling temp file and renames it over the target.
    Returns the written path.
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    temp_file = tempfile.NamedTemporaryFile(
        delete=False, dir=target.parent, prefix=f".{target.name}.", suffix=".tmp"
    )
    try:
        with temp_file:
            temp_file.write(data)
        os.replace(temp_file.name, target)
    except OSError:
        Path(temp_file.name).unlink(missing_ok=True)
        raise
    logger.info("wrote %s (%d bytes)", target, len(data))
    return str(target)
