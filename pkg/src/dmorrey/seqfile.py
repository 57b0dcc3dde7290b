"""Reading and writing sequence files.

Text form, one entry per line::

    # comment
    -3 0.5
    7 2.0

Indices must be strictly increasing. A JSON document
``{"entries": [[j, v], ...]}`` is accepted as well; writers always emit text.
"""

from __future__ import annotations

import json
from pathlib import Path

from .core import SparseSequence


class SequenceFormatError(ValueError):
    pass


def _build(pairs, source) -> SparseSequence:
    last = None
    for lineno, (j, v) in pairs:
        if last is not None and j <= last:
            raise SequenceFormatError(
                f"{source}:{lineno}: index {j} not greater than previous {last}")
        if not v > 0:
            raise SequenceFormatError(
                f"{source}:{lineno}: value must be > 0, got {v!r}")
        last = j
    try:
        return SparseSequence([j for _, (j, _) in pairs],
                              [v for _, (_, v) in pairs])
    except (ValueError, OverflowError) as exc:
        raise SequenceFormatError(f"{source}: {exc}") from None


def parse_sequence(text: str, source: str = "<string>") -> SparseSequence:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
            entries = doc["entries"]
            pairs = [(k + 1, (int(j), float(v))) for k, (j, v) in enumerate(entries)]
        except (ValueError, KeyError, TypeError) as exc:
            raise SequenceFormatError(f"{source}: bad JSON sequence ({exc})") from None
        return _build(pairs, source)

    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise SequenceFormatError(f"{source}:{lineno}: expected '<index> <value>'")
        try:
            pairs.append((lineno, (int(parts[0]), float(parts[1]))))
        except ValueError:
            raise SequenceFormatError(f"{source}:{lineno}: cannot parse {line!r}") from None
    return _build(pairs, source)


def format_sequence(x: SparseSequence, comment: str | None = None) -> str:
    # repr() of a float round-trips bit for bit.
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.extend(f"{j} {v!r}" for j, v in x.items())
    return "\n".join(lines) + "\n"


def load_sequence(path) -> SparseSequence:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise SequenceFormatError(f"{path}: {exc}") from None
    return parse_sequence(text, str(path))


def store_sequence(x: SparseSequence, path, comment: str | None = None) -> None:
    Path(path).write_text(format_sequence(x, comment), encoding="utf-8")
