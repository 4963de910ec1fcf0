# interchange.py
"""
Simplicial-set interchange files. Whitespace-separated tokens, one record per line:

    simplicial-set 1
    name <free text>
    max_dim <n>
    meta <key> <free text>              zero or more, sorted by key
    level <k> <id> <id> ...             levels 0..n in order
    basepoint <k> <id>
    face <k> <id> <d_0> ... <d_k>       k >= 1, one per level-k simplex
    degen <k> <id> <s_0> ... <s_k>      k < n, one per level-k simplex

Simplex identifiers contain no whitespace. Writing a parsed file reproduces it
byte for byte.
"""

import logging
from typing import Dict, List, Optional

from exceptions import ParseError
from models import SimplicialSet

logger = logging.getLogger(__name__)

MAGIC = "simplicial-set 1"


def write_simplicial_set(X: SimplicialSet) -> str:
    lines = [MAGIC, f"name {X.name}", f"max_dim {X.max_dim}"]
    lines += [f"meta {key} {X.metadata[key]}" for key in sorted(X.metadata)]
    for k in range(X.max_dim + 1):
        lines.append(" ".join(["level", str(k), *X.levels[k]]))
        lines.append(f"basepoint {k} {X.basepoints[k]}")
        if k >= 1:
            lines += [" ".join(["face", str(k), x, *X.faces[k][x]]) for x in X.levels[k]]
        if k < X.max_dim:
            lines += [" ".join(["degen", str(k), x, *X.degeneracies[k][x]]) for x in X.levels[k]]
    return "\n".join(lines) + "\n"


def parse_simplicial_set(text: str, path: Optional[str] = None) -> SimplicialSet:
    lines = text.splitlines()
    if not lines or lines[0].strip() != MAGIC:
        raise ParseError(f"expected '{MAGIC}' header", path, 1)

    name: Optional[str] = None
    max_dim: Optional[int] = None
    metadata: Dict[str, str] = {}
    levels: Dict[int, List[str]] = {}
    basepoints: Dict[int, str] = {}
    faces: Dict[int, Dict[str, tuple]] = {}
    degeneracies: Dict[int, Dict[str, tuple]] = {}

    def level_index(token: str, line_number: int) -> int:
        try:
            k = int(token)
        except ValueError:
            raise ParseError(f"level index '{token}' is not an integer", path, line_number) from None
        if max_dim is None or not 0 <= k <= max_dim:
            raise ParseError(f"level {k} outside 0..{max_dim}", path, line_number)
        return k

    for line_number, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        keyword, _, rest = line.partition(" ")
        tokens = rest.split()
        if keyword == "name":
            name = rest
        elif keyword == "max_dim":
            try:
                max_dim = int(rest)
            except ValueError:
                raise ParseError(f"bad max_dim '{rest}'", path, line_number) from None
        elif keyword == "meta":
            key, _, value = rest.partition(" ")
            metadata[key] = value
        elif keyword == "level":
            k = level_index(tokens[0] if tokens else "", line_number)
            if k in levels:
                raise ParseError(f"level {k} listed twice", path, line_number)
            levels[k] = tokens[1:]
        elif keyword == "basepoint":
            if len(tokens) != 2:
                raise ParseError("basepoint needs a level and an identifier", path, line_number)
            basepoints[level_index(tokens[0], line_number)] = tokens[1]
        elif keyword in ("face", "degen"):
            if len(tokens) < 2:
                raise ParseError(f"{keyword} record needs a level and a simplex", path, line_number)
            k = level_index(tokens[0], line_number)
            targets = tuple(tokens[2:])
            if len(targets) != k + 1:
                raise ParseError(f"{keyword} of a level-{k} simplex needs {k + 1} entries", path, line_number)
            table = faces if keyword == "face" else degeneracies
            table.setdefault(k, {})[tokens[1]] = targets
        else:
            raise ParseError(f"unknown record '{keyword}'", path, line_number)

    if name is None or max_dim is None:
        raise ParseError("missing 'name' or 'max_dim' record", path)
    missing = [k for k in range(max_dim + 1) if k not in levels or k not in basepoints]
    if missing:
        raise ParseError(f"missing level or basepoint records for levels {missing}", path)

    X = SimplicialSet(
        name,
        tuple(tuple(levels[k]) for k in range(max_dim + 1)),
        tuple([{}] + [faces.get(k, {}) for k in range(1, max_dim + 1)]),
        tuple(degeneracies.get(k, {}) for k in range(max_dim)),
        tuple(basepoints[k] for k in range(max_dim + 1)),
        metadata,
    )
    logger.debug(f"Parsed simplicial set {name} with level sizes {X.level_sizes()}")
    return X


def save_simplicial_set(X: SimplicialSet, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(write_simplicial_set(X))
    logger.info(f"Wrote {X.name} to {path}")


def load_simplicial_set(path: str) -> SimplicialSet:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ParseError(f"cannot read interchange file: {e.strerror}", path) from e
    return parse_simplicial_set(text, path)
