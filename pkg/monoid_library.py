# monoid_library.py

import itertools
import logging
import random
from typing import Callable, Dict, Iterable, Mapping, Sequence, Tuple, Union

from exceptions import MonoidError
from models import FilteredPartialMonoid, PartialMonoid
from monoid import build_filtration, coherence_violations, constant_filtration, from_table

logger = logging.getLogger(__name__)

AnyMonoid = Union[PartialMonoid, FilteredPartialMonoid]


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise MonoidError(message)


def one_point() -> PartialMonoid:
    return from_table(["0"], "0", {("0", "0"): "0"}, name="one_point")


def cyclic(q: int) -> PartialMonoid:
    """The group Z/q on elements '0'..'q-1'."""
    _require(isinstance(q, int) and q >= 1, f"cyclic group order must be a positive integer, got {q!r}")
    elements = [str(i) for i in range(q)]
    sums = {(str(i), str(j)): str((i + j) % q) for i in range(q) for j in range(i, q)}
    return from_table(elements, "0", sums, name=f"Z/{q}")


def trivial(q: int) -> PartialMonoid:
    """q nonzero elements 'x1'..'xq'; only sums involving 0 are defined."""
    _require(isinstance(q, int) and q >= 1, f"trivial monoid needs at least one nonzero element, got {q!r}")
    elements = ["0"] + [f"x{i}" for i in range(1, q + 1)]
    return from_table(elements, "0", {}, name=f"trivial({q})")


def truncated_naturals(n: int) -> PartialMonoid:
    """{0..n} with a+b defined iff a+b <= n."""
    _require(isinstance(n, int) and n >= 0, f"truncation bound must be a non-negative integer, got {n!r}")
    elements = [str(i) for i in range(n + 1)]
    sums = {(str(a), str(b)): str(a + b) for a in range(n + 1) for b in range(a, n + 1) if a + b <= n}
    return from_table(elements, "0", sums, name=f"N<={n}")


def abc() -> PartialMonoid:
    """{0, a, b, c} with the single nontrivial sum a + b = c."""
    return from_table(["0", "a", "b", "c"], "0", {("a", "b"): "c"}, name="abc")


def graded_naturals(n: int, levels: int | None = None) -> FilteredPartialMonoid:
    """Carrier {0..n}; level i defines a+b iff a or b is 0 or a+b <= i+1."""
    _require(isinstance(n, int) and n >= 1, f"graded naturals need n >= 1, got {n!r}")
    levels = n if levels is None else levels
    _require(isinstance(levels, int) and levels >= 1, f"need at least one level, got {levels!r}")
    elements = [str(i) for i in range(n + 1)]
    stages = []
    for i in range(levels):
        bound = i + 1
        sums = {(str(a), str(b)): str(a + b) for a in range(n + 1) for b in range(a, n + 1)
                if (a == 0 or b == 0 or a + b <= bound) and a + b <= n}
        stages.append(from_table(elements, "0", sums, name=f"N<={n}({i})"))
    return build_filtration(stages, name=f"graded({n})")


def constant(M: PartialMonoid, levels: int = 1) -> FilteredPartialMonoid:
    return constant_filtration(M, levels)


def filtration(levels: Sequence[PartialMonoid], name: str = "M") -> FilteredPartialMonoid:
    """User filtration from explicit levels."""
    return build_filtration(levels, name=name)


def pointwise(M: PartialMonoid, points: int) -> PartialMonoid:
    """
    Maps from a finite set of `points` into M, added pointwise. Element ids join
    the coordinate labels with '.'.
    """
    _require(isinstance(points, int) and points >= 1, f"need at least one point, got {points!r}")
    tuples = list(itertools.product(M.elements, repeat=points))
    ident = {t: ".".join(t) for t in tuples}
    sums = {}
    for i, s in enumerate(tuples):
        for t in tuples[i:]:
            coords = [M.sum_table.get((a, b)) for a, b in zip(s, t)]
            if all(c is not None for c in coords):
                sums[(ident[s], ident[t])] = ident[tuple(coords)]
    return from_table([ident[t] for t in tuples], ident[(M.zero,) * points], sums, name=f"{M.name}^{points}")


def downward_closed(vectors: Iterable[Sequence[int]], name: str = "D") -> PartialMonoid:
    """
    Carrier: a finite downward-closed set of vectors in N^r; a+b is defined iff
    the vector sum is in the set. Such restrictions always satisfy the axioms.
    """
    vectors = sorted({tuple(v) for v in vectors}, key=lambda v: (sum(v), v))
    _require(bool(vectors), "need at least the zero vector")
    rank = len(vectors[0])
    members = set(vectors)
    zero = (0,) * rank
    _require(zero in members, "the zero vector must be included")
    for v in vectors:
        _require(len(v) == rank and all(x >= 0 for x in v), f"bad vector {v}")
        for i, x in enumerate(v):
            if x > 0:
                lower = v[:i] + (x - 1,) + v[i + 1:]
                _require(lower in members, f"set is not downward closed: {v} present, {lower} missing")
    ident = {v: ".".join(str(x) for x in v) for v in vectors}
    sums = {}
    for i, a in enumerate(vectors):
        for b in vectors[i:]:
            s = tuple(x + y for x, y in zip(a, b))
            if s in members:
                sums[(ident[a], ident[b])] = ident[s]
    return from_table([ident[v] for v in vectors], ident[zero], sums, name=name)


# Total commutative tables on 0..n-1 with zero 0, thinned by the random generators
SEED_TABLES: Dict[str, Callable[[int, int, int], int]] = {
    "cyclic": lambda i, j, n: (i + j) % n,
    "capped": lambda i, j, n: min(i + j, n - 1),
    "max": lambda i, j, n: max(i, j),
}


def pruned_monoid(size: int, sums: Mapping[Tuple[int, int], int], name: str = "M") -> PartialMonoid:
    """
    Partial monoid on elements '0'..'size-1' with zero '0', built from sums between
    nonzero elements. Entries are dropped one at a time until validate_monoid
    finds no associativity violation; the result always validates.
    """
    _require(isinstance(size, int) and size >= 1, f"size must be a positive integer, got {size!r}")
    kept: Dict[Tuple[int, int], int] = {}
    for (i, j), value in sums.items():
        _require(0 < i < size and 0 < j < size, f"operands ({i}, {j}) must be nonzero elements below {size}")
        _require(0 <= value < size, f"value {value} of ({i}, {j}) is outside 0..{size - 1}")
        kept[(min(i, j), max(i, j))] = value
    carrier = [str(i) for i in range(size)]

    while True:
        table = {(m, "0"): m for m in carrier}
        table.update({("0", m): m for m in carrier})
        for (i, j), value in kept.items():
            table[(str(i), str(j))] = table[(str(j), str(i))] = str(value)
        violations = coherence_violations(carrier, table)
        if not violations:
            break
        a, b, c = (int(x) for x in violations[0].where)
        bc = int(table[(str(b), str(c))])
        # a + bc is the defined side; a sum with zero cannot be dropped
        drop = (b, c) if 0 in (a, bc) else (a, bc)
        del kept[(min(drop), max(drop))]

    return from_table(carrier, "0", {(str(i), str(j)): str(v) for (i, j), v in kept.items()}, name=name)


def random_partial_monoid(rng: random.Random, max_size: int = 6) -> PartialMonoid:
    """
    Random valid partial monoid with at most max_size elements: a cyclic, capped,
    max or arbitrary table, thinned at random and pruned until associative.
    """
    size = rng.randint(1, max_size)
    kind = rng.choice(sorted(SEED_TABLES) + ["arbitrary"])
    keep = rng.choice([1.0, 0.7, 0.4])
    sums = {}
    for i in range(1, size):
        for j in range(i, size):
            if rng.random() < keep:
                sums[(i, j)] = rng.randrange(size) if kind == "arbitrary" else SEED_TABLES[kind](i, j, size)
    return pruned_monoid(size, sums, name=f"random-{kind}({size})")


STANDARD_MONOIDS: Dict[str, Callable[..., AnyMonoid]] = {
    "one_point": one_point,
    "cyclic": cyclic,
    "trivial": trivial,
    "truncated_naturals": truncated_naturals,
    "abc": abc,
    "graded_naturals": graded_naturals,
    "constant": constant,
    "filtration": filtration,
    "pointwise": pointwise,
    "downward_closed": downward_closed,
}


def standard_monoids(name: str, *args, **kwargs) -> AnyMonoid:
    """Fixture constructor by tag, e.g. standard_monoids('cyclic', 2)."""
    constructor = STANDARD_MONOIDS.get(name)
    if constructor is None:
        raise MonoidError(f"unknown monoid constructor '{name}' (known: {', '.join(sorted(STANDARD_MONOIDS))})")
    try:
        return constructor(*args, **kwargs)
    except TypeError as e:
        raise MonoidError(f"bad parameters for '{name}': {e}") from e


def parse_monoid_tag(spec: str) -> AnyMonoid:
    """'cyclic:3', 'trivial:2', 'abc', 'graded_naturals:4:4' style shorthand."""
    name, *raw = spec.split(":")
    try:
        args = [int(x) for x in raw]
    except ValueError:
        raise MonoidError(f"monoid tag parameters must be integers: '{spec}'") from None
    return standard_monoids(name, *args)
