"""System files: {"rank": int, "gram": [[int|str]], "matrix": [[int|str]]}.

Integers at or beyond 2**53 travel as decimal strings; the reader accepts
either form. Output is canonical (sorted keys, fixed separators) so that the
same system always serializes to the same bytes.
"""

import json

from .lattice import BilinearLattice, matrix_to_json, verify_isometry


class SystemFormatError(ValueError):
    """The file does not describe a system or lattice."""


def _int(x, where):
    if isinstance(x, bool):
        raise SystemFormatError(f"{where}: booleans are not integers")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError:
            pass
    raise SystemFormatError(f"{where}: expected an integer or decimal string, got {x!r}")


def _matrix(data, key, n):
    rows = data.get(key)
    if not isinstance(rows, list) or len(rows) != n:
        raise SystemFormatError(f"{key!r} must be a list of {n} rows")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise SystemFormatError(f"{key!r} row {i} must have {n} entries")
        out.append([_int(x, f"{key}[{i}][{j}]") for j, x in enumerate(row)])
    return out


def parse_system(data, require_matrix=True):
    """(rank, gram, matrix) as nested int lists; matrix is None when optional and absent."""
    if not isinstance(data, dict):
        raise SystemFormatError("top level must be a JSON object")
    if "gram" not in data:
        raise SystemFormatError("missing 'gram'")
    n = data.get("rank", len(data["gram"]) if isinstance(data["gram"], list) else None)
    n = _int(n, "rank")
    if n < 1:
        raise SystemFormatError("rank must be positive")
    gram = _matrix(data, "gram", n)
    if "matrix" not in data:
        if require_matrix:
            raise SystemFormatError("missing 'matrix'")
        return n, gram, None
    return n, gram, _matrix(data, "matrix", n)


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SystemFormatError(f"{path}: invalid JSON ({exc})") from exc


def load_lattice(path):
    _, gram, _ = parse_system(load_json(path), require_matrix=False)
    try:
        return BilinearLattice(gram)
    except ValueError as exc:
        raise SystemFormatError(str(exc)) from exc


def load_system(path):
    """Parse a system file and verify the isometry (may raise NotFormPreserving)."""
    _, gram, matrix = parse_system(load_json(path))
    try:
        L = BilinearLattice(gram)
    except ValueError as exc:
        raise SystemFormatError(str(exc)) from exc
    return verify_isometry(matrix, L)


def system_to_json(obj):
    """JSON-ready dict for a LatticeIsometry, GallerySystem or BilinearLattice."""
    if isinstance(obj, BilinearLattice):
        return {"rank": obj.rank, "gram": matrix_to_json(obj.gram)}
    return obj.to_json()


def dumps(data):
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"
