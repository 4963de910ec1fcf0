# monoid.py

import logging
from collections import Counter
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from exceptions import CompositionError, MonoidError
from models import ComposableTuple, FilteredPartialMonoid, PartialMonoid, RawMonoid, SumEntry, Violation

logger = logging.getLogger(__name__)

# Violation kinds reported by the validators
DUPLICATE_ELEMENT = "duplicate_element"
MISSING_ZERO = "missing_zero"
UNKNOWN_ELEMENT = "unknown_element"
VALUE_OUTSIDE_CARRIER = "value_outside_carrier"
CONFLICTING_ENTRY = "conflicting_entry"
ASYMMETRIC = "asymmetric"
UNIT = "unit"
ASSOCIATIVITY = "associativity"
FILTRATION = "filtration"
HOMOMORPHISM = "homomorphism"

_MISSING = object()


# --- Validation ---

def validate_monoid(raw: RawMonoid) -> Tuple[List[Violation], Optional[PartialMonoid]]:
    """
    Checks a raw description against the partial abelian monoid axioms.
    A directed entry `a + b = c` also defines `b + a` unless the reverse entry is
    given explicitly, and `0 + m = m` is implied when absent; explicit entries
    that contradict either rule are violations. Returns the violation list and,
    when it is empty, the validated monoid.
    """
    violations: List[Violation] = []

    for element, count in Counter(raw.elements).items():
        if count > 1:
            violations.append(Violation(DUPLICATE_ELEMENT, f"element '{element}' listed {count} times", (element,)))
    carrier = list(dict.fromkeys(raw.elements))
    members = set(carrier)

    if raw.zero is None or raw.zero not in members:
        violations.append(Violation(MISSING_ZERO, f"zero '{raw.zero}' is not a listed element", (raw.zero,)))
        return violations, None
    zero = raw.zero

    directed: Dict[Tuple[str, str], SumEntry] = {}
    for entry in raw.entries:
        bad_operands = [x for x in (entry.left, entry.right) if x not in members]
        if bad_operands:
            violations.append(Violation(UNKNOWN_ELEMENT, f"{_show(entry)}: operand(s) {', '.join(bad_operands)} not in carrier", (entry,)))
            continue
        if entry.value not in members:
            violations.append(Violation(VALUE_OUTSIDE_CARRIER, f"{_show(entry)}: value '{entry.value}' not in carrier", (entry,)))
            continue
        previous = directed.get((entry.left, entry.right))
        if previous is not None and previous.value != entry.value:
            violations.append(Violation(CONFLICTING_ENTRY, f"{_show(entry)} contradicts {_show(previous)}", (previous, entry)))
            continue
        directed[(entry.left, entry.right)] = entry

    table: Dict[Tuple[str, str], str] = {}
    for (a, b), entry in directed.items():
        reverse = directed.get((b, a))
        if reverse is not None and reverse.value != entry.value:
            if carrier.index(a) < carrier.index(b):
                violations.append(Violation(ASYMMETRIC, f"{a} + {b} = {entry.value} but {b} + {a} = {reverse.value}", (a, b)))
            continue
        table[(a, b)] = entry.value
        table[(b, a)] = entry.value

    for m in carrier:
        for pair in ((zero, m), (m, zero)):
            value = table.get(pair)
            if value is not None and value != m:
                violations.append(Violation(UNIT, f"{pair[0]} + {pair[1]} = {value}, expected {m}", pair))
        table.setdefault((zero, m), m)
        table.setdefault((m, zero), m)

    violations += coherence_violations(carrier, table)
    if violations:
        logger.info(f"Monoid '{raw.name}' failed validation with {len(violations)} violation(s)")
        return violations, None

    monoid = PartialMonoid(tuple(carrier), zero, _canonical_sums(carrier, table), name=raw.name)
    logger.debug(f"Monoid '{raw.name}' valid: {len(carrier)} elements, {len(monoid.sums)} defined sums")
    return violations, monoid


def coherence_violations(carrier: Sequence[str], table: Mapping[Tuple[str, str], str]) -> List[Violation]:
    """Every triple with a+(b+c) defined must have (a+b)+c defined and equal."""
    violations = []
    for a in carrier:
        for b in carrier:
            for c in carrier:
                bc = table.get((b, c))
                if bc is None:
                    continue
                right = table.get((a, bc))
                if right is None:
                    continue
                ab = table.get((a, b))
                left = table.get((ab, c)) if ab is not None else None
                if left != right:
                    detail = f"{a} + ({b} + {c}) = {right} but ({a} + {b}) + {c} is " + (
                        "undefined" if left is None else left)
                    violations.append(Violation(ASSOCIATIVITY, detail, (a, b, c)))
    return violations


def build_monoid(raw: RawMonoid) -> PartialMonoid:
    """validate_monoid, raising MonoidError on the first report."""
    violations, monoid = validate_monoid(raw)
    if monoid is None:
        summary = "; ".join(str(v) for v in violations[:5])
        raise MonoidError(f"invalid monoid '{raw.name}': {summary}")
    return monoid


def from_table(elements: Sequence[str], zero: str, sums: Mapping[Tuple[str, str], str], name: str = "M") -> PartialMonoid:
    """Validated monoid from a (possibly one-sided) table of sums."""
    entries = [SumEntry(a, b, c) for (a, b), c in sums.items()]
    return build_monoid(RawMonoid(list(elements), zero, entries, name=name))


def _canonical_sums(carrier: Sequence[str], table: Mapping[Tuple[str, str], str]) -> Tuple[Tuple[str, str, str], ...]:
    position = {e: i for i, e in enumerate(carrier)}
    sums = {}
    for (a, b), c in table.items():
        if position[a] <= position[b]:
            sums[(a, b)] = c
    return tuple((a, b, c) for (a, b), c in sorted(sums.items(), key=lambda kv: (position[kv[0][0]], position[kv[0][1]])))


def _show(entry: SumEntry) -> str:
    where = f" (line {entry.line_number})" if entry.line_number is not None else ""
    return f"'{entry.left} + {entry.right} = {entry.value}'{where}"


# --- Sums and composability ---

def sum_pair(M: PartialMonoid, a: str, b: str) -> Optional[str]:
    """m_1 + m_2, or None when the sum is undefined."""
    M.index(a)
    M.index(b)
    return M.sum_table.get((a, b))


def _reduce(M: PartialMonoid, items: Tuple[str, ...]) -> Optional[str]:
    """
    Sum of a canonical zero-free multiset along some successful binary
    reduction order, or None if none exists. Memoized per monoid.
    """
    if not items:
        return M.zero
    if len(items) == 1:
        return items[0]
    with M._lock:
        cached = M._memo.get(items, _MISSING)
    if cached is not _MISSING:
        return cached

    result = None
    tried = set()
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            pair = (items[i], items[j])
            if pair in tried:
                continue
            tried.add(pair)
            s = M.sum_table.get(pair)
            if s is None:
                continue
            rest = items[:i] + items[i + 1:j] + items[j + 1:]
            if s != M.zero:
                rest = M.canonical(rest + (s,))
            result = _reduce(M, rest)
            if result is not None:
                break
        if result is not None:
            break

    with M._lock:
        M._memo[items] = result
    return result


def _prepare(M: PartialMonoid, items: Iterable[str]) -> Tuple[str, ...]:
    items = tuple(items)
    for x in items:
        M.index(x)
    return M.canonical(x for x in items if x != M.zero)


def composable_multiset(M: PartialMonoid, items: Iterable[str]) -> bool:
    """True iff some binary reduction order sums the multiset."""
    return _reduce(M, _prepare(M, items)) is not None


def sum_multiset(M: PartialMonoid, items: Iterable[str]) -> str:
    """Common value of every reduction order; zero for the empty multiset."""
    items = tuple(items)
    value = _reduce(M, _prepare(M, items))
    if value is None:
        raise CompositionError(f"multiset {{{', '.join(items)}}} is not composable in {M.name}")
    return value


def composable_tuples(M: PartialMonoid, k: int) -> List[ComposableTuple]:
    """All ordered k-tuples with composable underlying multiset, in carrier-lexicographic order."""
    if k < 0:
        raise MonoidError(f"tuple length must be non-negative, got {k}")
    prefixes: List[Tuple[str, ...]] = [()]
    for _ in range(k):
        # Composability is downward closed, so pruning prefixes loses nothing
        prefixes = [p + (m,) for p in prefixes for m in M.elements if composable_multiset(M, p + (m,))]
    return [ComposableTuple(M, entries, certified=True) for entries in prefixes]


def certify(M: PartialMonoid, entries: Sequence[str]) -> ComposableTuple:
    entries = tuple(entries)
    return ComposableTuple(M, entries, certified=composable_multiset(M, entries))


# --- Filtrations ---

def validate_filtration(levels: Sequence[PartialMonoid]) -> List[Violation]:
    """Same carrier and zero throughout; each level's sums are kept by the next."""
    violations: List[Violation] = []
    if not levels:
        return [Violation(FILTRATION, "no levels given")]
    first = levels[0]
    for i, level in enumerate(levels):
        if level.elements != first.elements or level.zero != first.zero:
            violations.append(Violation(FILTRATION, f"level {i} has a different carrier or zero", (i,)))
            continue
        if i == 0:
            continue
        previous = levels[i - 1]
        for a, b, c in previous.sums:
            value = level.sum_table.get((a, b))
            if value != c:
                got = "undefined" if value is None else value
                violations.append(Violation(
                    FILTRATION, f"{a} + {b} = {c} at level {i - 1} but {got} at level {i}", (i - 1, a, b)))
    return violations


def build_filtration(levels: Sequence[PartialMonoid], name: str = "M") -> FilteredPartialMonoid:
    violations = validate_filtration(levels)
    if violations:
        summary = "; ".join(str(v) for v in violations[:5])
        raise MonoidError(f"invalid filtration '{name}': {summary}")
    return FilteredPartialMonoid(tuple(levels), name=name)


def filtered_composable(F: FilteredPartialMonoid, items: Iterable[str]) -> Tuple[bool, Optional[int]]:
    """(True, least level) if the multiset is composable at some level, else (False, None)."""
    items = tuple(items)
    for i, level in enumerate(F.levels):
        if composable_multiset(level, items):
            return True, i
    return False, None


def filtered_sum(F: FilteredPartialMonoid, items: Iterable[str]) -> str:
    items = tuple(items)
    ok, level = filtered_composable(F, items)
    if not ok:
        raise CompositionError(f"multiset {{{', '.join(items)}}} is not composable at any level of {F.name}")
    return sum_multiset(F.levels[level], items)


# --- Homomorphisms ---

def check_homomorphism(M: PartialMonoid, N: PartialMonoid, mapping: Mapping[str, str]) -> List[Violation]:
    """Whenever a+b is defined in M, f(a)+f(b) must be defined in N and equal f(a+b)."""
    violations: List[Violation] = []
    for m in M.elements:
        image = mapping.get(m)
        if image is None:
            violations.append(Violation(HOMOMORPHISM, f"no image for '{m}'", (m,)))
        elif image not in N.elements:
            violations.append(Violation(HOMOMORPHISM, f"image of '{m}' is '{image}', not in {N.name}", (m,)))
    if violations:
        return violations
    if mapping[M.zero] != N.zero:
        violations.append(Violation(HOMOMORPHISM, f"zero maps to '{mapping[M.zero]}'", (M.zero,)))
    for a, b, c in M.sums:
        image = N.sum_table.get((mapping[a], mapping[b]))
        if image != mapping[c]:
            got = "undefined" if image is None else image
            violations.append(Violation(
                HOMOMORPHISM, f"f({a}) + f({b}) is {got}, expected f({c}) = {mapping[c]}", (a, b)))
    return violations


def is_partial_submonoid(M: PartialMonoid, N: PartialMonoid) -> bool:
    if not set(M.elements) <= set(N.elements):
        return False
    return not check_homomorphism(M, N, {m: m for m in M.elements})


def constant_filtration(M: PartialMonoid, levels: int = 1) -> FilteredPartialMonoid:
    """M(i) = M for every level."""
    if levels < 1:
        raise MonoidError(f"need at least one level, got {levels!r}")
    return FilteredPartialMonoid(tuple([M] * levels), name=f"{M.name}[const]")
