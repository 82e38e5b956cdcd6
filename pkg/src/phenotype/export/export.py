"""
Dendrogram export component
Serialises a Dendrogram as Newick or as line-delimited merge records
"""

import regex

from src.phenotype.ward.ward import Dendrogram, Merge
from src.shared.errors.errors import CorpusFormatError, ParameterError
from src.shared.records.records import join_lines, parse_records, records_to_bytes

DENDROGRAM_FORMATS = ("newick", "records")
_NEWICK_SPECIAL = regex.compile(r"[\s()\[\]':;,]")


def _newick_label(label: str) -> str:
    """Quotes a leaf label when it contains Newick punctuation or whitespace."""
    if _NEWICK_SPECIAL.search(label):
        return "'" + label.replace("'", "''") + "'"
    return label


def _to_newick(dg: Dendrogram) -> bytes:
    """Builds the Newick string bottom-up; branch length = parent height - child height."""
    n = len(dg.items)
    text = {i: _newick_label(item) for i, item in enumerate(dg.items)}
    height = {i: 0.0 for i in range(n)}
    for t, merge in enumerate(dg.merges):
        left = f"{text.pop(merge.left)}:{merge.height - height[merge.left]!r}"
        right = f"{text.pop(merge.right)}:{merge.height - height[merge.right]!r}"
        text[n + t] = f"({left},{right})"
        height[n + t] = merge.height
    root = text[2 * n - 2] if dg.merges else text[0]
    return join_lines([root + ";"])


def _to_records(dg: Dendrogram) -> bytes:
    """Renders a leaves line followed by the merge table, one merge per line."""
    n = len(dg.items)
    records = [{"type": "leaves", "items": list(dg.items)}]
    records += [{"type": "merge", "cluster": n + t, "left": m.left, "right": m.right,
                 "height": m.height, "size": m.size} for t, m in enumerate(dg.merges)]
    return records_to_bytes(records)


def export_dendrogram(dg: Dendrogram, format: str) -> bytes:
    """Serialises a Dendrogram as newick or records."""
    writers = {"newick": _to_newick, "records": _to_records}
    if format not in writers:
        raise ParameterError(f"unknown dendrogram format {format!r}; "
                             f"expected one of {DENDROGRAM_FORMATS}")
    return writers[format](dg)


def _read_merge(number: int, record: dict, sizes: dict) -> Merge:
    """Validates one merge record against the sizes of its children."""
    try:
        merge = Merge(left=int(record["left"]), right=int(record["right"]),
                      height=float(record["height"]), size=int(record["size"]))
    except (KeyError, TypeError, ValueError) as e:
        raise CorpusFormatError(number, f"malformed merge record ({e})") from e
    if merge.left not in sizes or merge.right not in sizes:
        raise CorpusFormatError(number, "merge references an unknown cluster")
    if merge.size != sizes.pop(merge.left) + sizes.pop(merge.right):
        raise CorpusFormatError(number, "merge size does not match its children")
    return merge


def import_dendrogram_records(data: bytes) -> Dendrogram:
    """Parses the records format back into a Dendrogram."""
    parsed = parse_records(data)
    if not parsed or parsed[0][1].get("type") != "leaves":
        raise CorpusFormatError(1, "expected a leaves record first")
    items = tuple(parsed[0][1]["items"])
    sizes = {i: 1 for i in range(len(items))}
    merges = []
    for t, (number, record) in enumerate(parsed[1:]):
        merges.append(_read_merge(number, record, sizes))
        sizes[len(items) + t] = merges[-1].size
    return Dendrogram(items=items, merges=tuple(merges))
