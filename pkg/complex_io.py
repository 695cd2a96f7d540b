from __future__ import annotations

import json
import re
from pathlib import Path

from errors import ComplexParseError
from simplicial import SimplicialComplex, from_facet_lists

HEADER_RE = re.compile(r"^m\s*=\s*(?P<m>\d+)$")


def parse_json_complex(text: str, *, source: str = "<string>") -> SimplicialComplex:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ComplexParseError(
            f"{source}:{e.lineno}: offset {e.pos}: invalid JSON ({e.msg})"
        ) from e
    if not isinstance(data, dict) or "m" not in data or "maximal_faces" not in data:
        raise ComplexParseError(f"{source}: expected an object with keys 'm' and 'maximal_faces'")
    m = data["m"]
    faces = data["maximal_faces"]
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ComplexParseError(f"{source}: 'm' must be a positive integer, got {m!r}")
    if not isinstance(faces, list):
        raise ComplexParseError(f"{source}: 'maximal_faces' must be a list of lists")
    for idx, face in enumerate(faces):
        if not isinstance(face, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in face
        ):
            raise ComplexParseError(f"{source}: maximal_faces[{idx}] must be a list of integers")
        bad = [v for v in face if not 1 <= v <= m]
        if bad:
            raise ComplexParseError(
                f"{source}: maximal_faces[{idx}]: vertex label out of range 1..{m}: {bad}"
            )
    return from_facet_lists(m, faces)


def parse_text_complex(text: str, *, source: str = "<string>") -> SimplicialComplex:
    m: int | None = None
    facets: list[list[int]] = []
    for line_num, line in enumerate(text.splitlines(), 1):
        raw = line.split("#", 1)[0].strip()
        if not raw:
            continue
        if m is None:
            header = HEADER_RE.match(raw)
            if not header:
                raise ComplexParseError(f"{source}:{line_num}: expected header 'm=<count>', got {raw!r}")
            m = int(header.group("m"))
            if m < 1:
                raise ComplexParseError(f"{source}:{line_num}: m must be at least 1")
            continue
        try:
            labels = [int(tok) for tok in raw.split()]
        except ValueError as e:
            raise ComplexParseError(f"{source}:{line_num}: expected space-separated vertex labels") from e
        bad = [v for v in labels if not 1 <= v <= m]
        if bad:
            raise ComplexParseError(f"{source}:{line_num}: vertex label out of range 1..{m}: {bad}")
        facets.append(labels)
    if m is None:
        raise ComplexParseError(f"{source}: empty complex file (missing 'm=<count>' header)")
    return from_facet_lists(m, facets)


def load_complex(path: str | Path) -> SimplicialComplex:
    path = Path(path)
    if not path.exists():
        raise ComplexParseError(f"complex file not found: {path}")
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise ComplexParseError(f"{path}: offset {e.start}: not valid UTF-8 text") from e
    if path.suffix == ".json" or text.lstrip().startswith("{"):
        return parse_json_complex(text, source=str(path))
    return parse_text_complex(text, source=str(path))


def complex_to_json(K: SimplicialComplex) -> dict:
    return {"m": K.m, "maximal_faces": K.facets()}


def complex_to_text(K: SimplicialComplex) -> str:
    lines = [f"m={K.m}"]
    lines.extend(" ".join(str(v) for v in facet) for facet in K.facets())
    return "\n".join(lines) + "\n"
