# monoid_io.py
"""
Monoid description files.

    # comments run to end of line
    name: abc                 (optional)
    elements: 0 a b c
    zero: 0
    a + b = c                 one defined sum per line

Element identifiers match [A-Za-z0-9_.-]+. `a + b = c` also defines `b + a`,
and `0 + m = m` is implied; explicit lines contradicting either are reported
by the validator. A filtration file splits the sum lines into sections headed
`level 0:`, `level 1:`, ... (consecutive from 0); level i holds its own lines
plus everything from lower levels. Any other line is a parse error.
"""

import logging
import re
from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

from exceptions import ParseError
from models import FilteredPartialMonoid, PartialMonoid, RawMonoid, SumEntry
from monoid import build_filtration, build_monoid, validate_filtration, validate_monoid

logger = logging.getLogger(__name__)

ELEMENT_PATTERN = r"[A-Za-z0-9_.\-]+"
_ELEMENT_RE = re.compile(rf"^{ELEMENT_PATTERN}$")
_SUM_RE = re.compile(rf"^({ELEMENT_PATTERN})\s*\+\s*({ELEMENT_PATTERN})\s*=\s*({ELEMENT_PATTERN})$")
_HEADER_RE = re.compile(r"^(name|elements|zero)\s*:\s*(.*)$")
_LEVEL_RE = re.compile(r"^level\s+(\d+)\s*:$")


@dataclass
class MonoidDescription:
    """Parsed but unvalidated file contents."""
    name: str
    elements: List[str]
    zero: Optional[str]
    entries: List[SumEntry] = field(default_factory=list)
    # One entry list per `level i:` section; None for a plain monoid file
    levels: Optional[List[List[SumEntry]]] = None
    path: Optional[str] = None

    @property
    def is_filtered(self) -> bool:
        return self.levels is not None

    def raw_levels(self) -> List[RawMonoid]:
        """Cumulative raw monoid per level (one item for a plain file)."""
        if self.levels is None:
            return [RawMonoid(list(self.elements), self.zero, list(self.entries), name=self.name)]
        raws, accumulated = [], []
        for i, entries in enumerate(self.levels):
            accumulated = accumulated + entries
            raws.append(RawMonoid(list(self.elements), self.zero, list(accumulated), name=f"{self.name}({i})"))
        return raws


def parse_description(text: str, path: Optional[str] = None) -> MonoidDescription:
    name, elements, zero = None, None, None
    entries: List[SumEntry] = []
    levels: Optional[List[List[SumEntry]]] = None

    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue

        header = _HEADER_RE.match(line)
        if header:
            key, value = header.group(1), header.group(2).strip()
            if key == "name":
                if name is not None:
                    raise ParseError("duplicate 'name:' line", path, line_number)
                name = value or "M"
            elif key == "elements":
                if elements is not None:
                    raise ParseError("duplicate 'elements:' line", path, line_number)
                elements = value.split()
                bad = [e for e in elements if not _ELEMENT_RE.match(e)]
                if bad:
                    raise ParseError(f"invalid element identifier(s): {' '.join(bad)}", path, line_number)
            else:
                if zero is not None:
                    raise ParseError("duplicate 'zero:' line", path, line_number)
                if not _ELEMENT_RE.match(value):
                    raise ParseError(f"invalid zero identifier '{value}'", path, line_number)
                zero = value
            continue

        level = _LEVEL_RE.match(line)
        if level:
            index = int(level.group(1))
            if levels is None:
                if entries:
                    raise ParseError("sum lines before the first 'level' header", path, line_number)
                levels = []
            if index != len(levels):
                raise ParseError(f"expected 'level {len(levels)}:', found 'level {index}:'", path, line_number)
            levels.append([])
            continue

        match = _SUM_RE.match(line)
        if match:
            entry = SumEntry(match.group(1), match.group(2), match.group(3), line_number)
            (levels[-1] if levels is not None else entries).append(entry)
            continue

        raise ParseError(f"unrecognized line: '{raw_line.strip()}'", path, line_number)

    if elements is None:
        raise ParseError("missing 'elements:' line", path)
    if zero is None:
        raise ParseError("missing 'zero:' line", path)
    return MonoidDescription(name or "M", elements, zero, entries, levels, path)


def read_description(path: str) -> MonoidDescription:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ParseError(f"cannot read monoid file: {e.strerror}", path) from e
    return parse_description(text, path)


def build_from_description(desc: MonoidDescription) -> Union[PartialMonoid, FilteredPartialMonoid]:
    """Validated monoid (or filtration); raises MonoidError with the violations."""
    raws = desc.raw_levels()
    if not desc.is_filtered:
        return build_monoid(raws[0])
    return build_filtration([build_monoid(raw) for raw in raws], name=desc.name)


def validation_report(desc: MonoidDescription) -> Tuple[List[str], Optional[Union[PartialMonoid, FilteredPartialMonoid]]]:
    """All violations (prefixed by level for filtrations) and the monoid when valid."""
    messages: List[str] = []
    monoids = []
    for i, raw in enumerate(desc.raw_levels()):
        violations, monoid = validate_monoid(raw)
        prefix = f"level {i}: " if desc.is_filtered else ""
        messages += [f"{prefix}{v}" for v in violations]
        monoids.append(monoid)
    if messages:
        return messages, None
    if not desc.is_filtered:
        return messages, monoids[0]
    messages += [str(v) for v in validate_filtration(monoids)]
    if messages:
        return messages, None
    return messages, build_filtration(monoids, name=desc.name)


def load_monoid(path: str) -> Union[PartialMonoid, FilteredPartialMonoid]:
    monoid = build_from_description(read_description(path))
    logger.info(f"Loaded monoid '{monoid.name}' from {path}")
    return monoid


def _sum_lines(M: PartialMonoid, skip: set) -> List[str]:
    return [f"{a} + {b} = {c}" for a, b, c in M.sums if M.zero not in (a, b) and (a, b) not in skip]


def write_monoid(M: Union[PartialMonoid, FilteredPartialMonoid]) -> str:
    """Description text that parses back to an equal monoid."""
    lines = [f"name: {M.name}", f"elements: {' '.join(M.elements)}", f"zero: {M.zero}"]
    if isinstance(M, PartialMonoid):
        lines += _sum_lines(M, set())
    else:
        seen: set = set()
        for i, level in enumerate(M.levels):
            lines.append(f"level {i}:")
            lines += _sum_lines(level, seen)
            seen |= {(a, b) for a, b, _ in level.sums}
    return "\n".join(lines) + "\n"


def save_monoid(M: Union[PartialMonoid, FilteredPartialMonoid], path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(write_monoid(M))
    logger.info(f"Wrote monoid '{M.name}' to {path}")
