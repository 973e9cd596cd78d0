"""JSON text formats for mass functions and datasets.

Single mass::

    {"frame": ["ω1", "ω2", "ω3"], "focals": [{"set": [0], "mass": 0.2}, ...]}

Dataset (one source, object-indexed)::

    {"frame": [...], "source": "S1",
     "masses": [{"object": 0, "focals": [...]}, ...]}

Subsets are sorted lists of element indices, never raw bitmasks.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Sequence

from .core import Frame, MassFunction
from .errors import BeliefError, FrameMismatchError


class FormatError(BeliefError):
    """A file does not hold a mass function or dataset record."""


def write_text_atomic(path: str | os.PathLike, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dumps(record: dict) -> str:
    return json.dumps(record, ensure_ascii=False, indent=1) + "\n"


def dataset_record(masses: Sequence[MassFunction], source: str = "") -> dict:
    if not masses:
        raise FormatError("a dataset needs at least one mass function")
    frame = masses[0].frame
    for m in masses:
        if m.frame != frame:
            raise FrameMismatchError("all masses of a dataset must share one frame")
    return {
        "frame": list(frame.labels),
        "source": source,
        "masses": [{"object": i, "focals": m.to_dict()["focals"]} for i, m in enumerate(masses)],
    }


def parse_record(data: dict) -> tuple[Frame, list[MassFunction], bool]:
    """Return (frame, masses, is_dataset) for a parsed JSON record."""
    if not isinstance(data, dict) or "frame" not in data:
        raise FormatError("record has no 'frame' field")
    frame = Frame(tuple(data["frame"]))
    if "masses" in data:
        rows = sorted(data["masses"], key=lambda r: r.get("object", 0))
        objects = [r.get("object", i) for i, r in enumerate(rows)]
        if objects != list(range(len(rows))):
            raise FormatError("dataset objects must be numbered 0..n-1")
        return frame, [MassFunction.from_dict(r, frame) for r in rows], True
    if "focals" in data:
        return frame, [MassFunction.from_dict(data, frame)], False
    raise FormatError("record holds neither 'focals' nor 'masses'")


def read_record(path: str | os.PathLike) -> tuple[Frame, list[MassFunction], bool]:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: not valid JSON ({exc})") from exc
    return parse_record(data)


def read_dataset(path: str | os.PathLike) -> list[MassFunction]:
    return read_record(path)[1]


def write_dataset(path: str | os.PathLike, masses: Sequence[MassFunction], source: str = "") -> None:
    write_text_atomic(path, dumps(dataset_record(masses, source)))


def write_mass(path: str | os.PathLike, m: MassFunction) -> None:
    write_text_atomic(path, dumps(m.to_dict()))
