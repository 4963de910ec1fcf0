# models.py
import json
import threading
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Mapping, Optional, Tuple

from exceptions import MonoidError, SimplicialError
from integer_matrix import SparseIntMatrix

# --- Enums ---
class CheckStatus(Enum):
    PASS = "pass"
    FAIL = "fail"
    ERROR = "error" # Input could not be processed at all

class MonoidKind(Enum):
    PARTIAL = "partial"
    FILTERED = "filtered"

# --- Validation reports ---

@dataclass(frozen=True)
class Violation:
    """One broken axiom or identity, with enough context to locate it."""
    kind: str
    detail: str
    where: Tuple[Any, ...] = ()

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"

@dataclass(frozen=True)
class SumEntry:
    """A directed `a + b = c` line from a description file."""
    left: str
    right: str
    value: str
    line_number: Optional[int] = None

@dataclass
class RawMonoid:
    """Unvalidated monoid description, as parsed or built by hand."""
    elements: List[str]
    zero: Optional[str]
    entries: List[SumEntry] = field(default_factory=list)
    name: str = "M"

# --- Monoids ---

@dataclass(frozen=True)
class PartialMonoid:
    """
    Finite discrete partial abelian monoid. `sums` holds every defined sum once,
    keyed by the pair in carrier order; lookups go through `sum_table`.
    """
    elements: Tuple[str, ...]
    zero: str
    sums: Tuple[Tuple[str, str, str], ...]
    name: str = "M"
    _index: Dict[str, int] = field(init=False, repr=False, compare=False)
    _table: Dict[Tuple[str, str], str] = field(init=False, repr=False, compare=False)
    _memo: Dict[Tuple[str, ...], Optional[str]] = field(init=False, repr=False, compare=False)
    _lock: Any = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index = {e: i for i, e in enumerate(self.elements)}
        if self.zero not in index:
            raise MonoidError(f"zero '{self.zero}' is not in the carrier of {self.name}")
        table = {}
        for a, b, c in self.sums:
            table[(a, b)] = c
            table[(b, a)] = c
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_table", table)
        object.__setattr__(self, "_memo", {})
        object.__setattr__(self, "_lock", threading.Lock())

    @property
    def sum_table(self) -> Mapping[Tuple[str, str], str]:
        return self._table

    @property
    def nonzero(self) -> Tuple[str, ...]:
        return tuple(e for e in self.elements if e != self.zero)

    @property
    def size(self) -> int:
        return len(self.elements)

    def index(self, element: str) -> int:
        try:
            return self._index[element]
        except KeyError:
            raise MonoidError(f"element '{element}' is not in the carrier of {self.name}") from None

    def canonical(self, items) -> Tuple[str, ...]:
        """Sorted (carrier order) multiset representative."""
        return tuple(sorted(items, key=self.index))

    def has_trivial_multiplication(self) -> bool:
        return all(self.zero in (a, b) for a, b, _ in self.sums)

    def is_total(self) -> bool:
        n = len(self.elements)
        return len(self.sums) == n * (n + 1) // 2

    def describe(self) -> str:
        """Canonical text rendering, used for digests."""
        lines = [f"elements {' '.join(self.elements)}", f"zero {self.zero}"]
        lines += [f"{a} + {b} = {c}" for a, b, c in self.sums]
        return "\n".join(lines)

@dataclass(frozen=True)
class FilteredPartialMonoid:
    """Monotone sequence of partial monoid structures on one carrier."""
    levels: Tuple[PartialMonoid, ...]
    name: str = "M"

    def __post_init__(self):
        if not self.levels:
            raise MonoidError("a filtered monoid needs at least one level")

    @property
    def elements(self) -> Tuple[str, ...]:
        return self.levels[0].elements

    @property
    def zero(self) -> str:
        return self.levels[0].zero

    @property
    def nonzero(self) -> Tuple[str, ...]:
        return self.levels[0].nonzero

    def index(self, element: str) -> int:
        return self.levels[0].index(element)

    def canonical(self, items) -> Tuple[str, ...]:
        return self.levels[0].canonical(items)

    def union(self) -> PartialMonoid:
        """The limit structure: a+b defined iff defined at some level."""
        return PartialMonoid(self.elements, self.zero, self.levels[-1].sums, name=f"{self.name}[union]")

    def describe(self) -> str:
        return "\n".join(f"level {i}:\n{m.describe()}" for i, m in enumerate(self.levels))

@dataclass(frozen=True)
class ComposableTuple:
    """An ordered tuple of elements; `certified` once composability is established."""
    monoid: PartialMonoid = field(repr=False, compare=False)
    entries: Tuple[str, ...]
    certified: bool = False

    def __len__(self) -> int:
        return len(self.entries)

# --- Simplicial objects ---

@dataclass(frozen=True)
class SimplicialSet:
    """
    Finite-depth pointed simplicial set. faces[k][x] lists d_0 x .. d_k x for a
    level-k simplex x (faces[0] is empty); degeneracies[k][x] lists s_0 x .. s_k x
    for k < max_dim. basepoints[k] is the k-fold degeneracy of the base vertex.
    """
    name: str
    levels: Tuple[Tuple[str, ...], ...]
    faces: Tuple[Mapping[str, Tuple[str, ...]], ...]
    degeneracies: Tuple[Mapping[str, Tuple[str, ...]], ...]
    basepoints: Tuple[str, ...]
    metadata: Mapping[str, str] = field(default_factory=dict, compare=False)
    _members: Tuple[frozenset, ...] = field(init=False, repr=False, compare=False)
    _nondegenerate: Dict[int, Tuple[str, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.faces) != len(self.levels) or len(self.basepoints) != len(self.levels):
            raise SimplicialError(f"{self.name}: face/basepoint tables do not match the level count")
        if len(self.degeneracies) != max(len(self.levels) - 1, 0):
            raise SimplicialError(f"{self.name}: degeneracy tables must cover levels 0..max_dim-1")
        object.__setattr__(self, "_members", tuple(frozenset(level) for level in self.levels))
        object.__setattr__(self, "_nondegenerate", {})

    @property
    def max_dim(self) -> int:
        return len(self.levels) - 1

    @property
    def basepoint(self) -> str:
        return self.basepoints[0]

    def level_sizes(self) -> Tuple[int, ...]:
        return tuple(len(level) for level in self.levels)

    def contains(self, k: int, simplex: str) -> bool:
        return 0 <= k <= self.max_dim and simplex in self._members[k]

    def face(self, k: int, i: int, simplex: str) -> str:
        return self.faces[k][simplex][i]

    def degeneracy(self, k: int, i: int, simplex: str) -> str:
        return self.degeneracies[k][simplex][i]

    def nonbasepoint(self, k: int) -> Tuple[str, ...]:
        bp = self.basepoints[k]
        return tuple(x for x in self.levels[k] if x != bp)

    def nondegenerate(self, k: int) -> Tuple[str, ...]:
        """Level-k simplices outside every s_i image (generic scan)."""
        cached = self._nondegenerate.get(k)
        if cached is not None:
            return cached
        if k == 0:
            result = self.levels[0]
        else:
            images = set()
            for targets in self.degeneracies[k - 1].values():
                images.update(targets)
            result = tuple(x for x in self.levels[k] if x not in images)
        self._nondegenerate[k] = result
        return result

@dataclass(frozen=True)
class SimplicialMap:
    """Levelwise assignment between two simplicial sets of equal depth."""
    source: SimplicialSet = field(repr=False)
    target: SimplicialSet = field(repr=False)
    assignment: Tuple[Mapping[str, str], ...]
    name: str = "f"

    def __call__(self, k: int, simplex: str) -> str:
        return self.assignment[k][simplex]

    @property
    def max_dim(self) -> int:
        return len(self.assignment) - 1

    def is_levelwise_bijective(self) -> bool:
        for k, table in enumerate(self.assignment):
            if len(set(table.values())) != len(self.target.levels[k]) or len(table) != len(self.source.levels[k]):
                return False
        return True

# --- Dold-Thom ---

@dataclass(frozen=True)
class Configuration:
    """
    Merged normal form of a labelled configuration: (simplex, label) pairs with
    nonzero labels, sorted by the base simplex's position in its level.
    """
    level: int
    labels: Tuple[Tuple[str, str], ...]

    @property
    def key(self) -> str:
        return "[" + ";".join(f"{x}@{m}" for x, m in self.labels) + "]"

    @property
    def support(self) -> Tuple[str, ...]:
        return tuple(x for x, _ in self.labels)

    @property
    def label_multiset(self) -> Tuple[str, ...]:
        return tuple(m for _, m in self.labels)

    def __len__(self) -> int:
        return len(self.labels)

@dataclass(frozen=True)
class DoldThomSpace:
    """M_n[X] (or M[X] when point_bound is None) with its generated simplicial set."""
    monoid: Any = field(repr=False) # PartialMonoid or FilteredPartialMonoid
    base: SimplicialSet = field(repr=False)
    point_bound: Optional[int]
    max_dim: int
    space: SimplicialSet = field(repr=False)
    configurations: Tuple[Mapping[str, Configuration], ...] = field(repr=False)
    # For filtered coefficients: least level admitting each (level, key)
    admitted_level: Mapping[Tuple[int, str], int] = field(default_factory=dict, repr=False)
    level_cap: Optional[int] = None

    def configuration(self, k: int, key: str) -> Configuration:
        return self.configurations[k][key]

@dataclass(frozen=True)
class NerveCircleComparison:
    nerve: SimplicialSet = field(repr=False)
    circle_space: DoldThomSpace = field(repr=False)
    # Canonical tuple-to-configuration map; None when it fails to be an isomorphism
    alignment: Optional[SimplicialMap] = field(default=None, repr=False)
    isomorphic: bool = False

# --- Homology ---

@dataclass(frozen=True)
class ChainComplex:
    """
    Normalized chains in degrees 0..top_degree+1. boundaries[k] is the matrix of
    d_k : C_k -> C_{k-1} (rows indexed by bases[k-1]); boundaries[0] is C_0 -> 0.
    """
    bases: Tuple[Tuple[str, ...], ...]
    boundaries: Tuple[SparseIntMatrix, ...]
    top_degree: int
    name: str = "C"

    def basis_sizes(self) -> Tuple[int, ...]:
        return tuple(len(b) for b in self.bases)

@dataclass(frozen=True)
class HomologyGroup:
    betti: int
    torsion: Tuple[int, ...] = ()

    def describe(self) -> str:
        parts = []
        if self.betti == 1:
            parts.append("Z")
        elif self.betti > 1:
            parts.append(f"Z^{self.betti}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " x ".join(parts) if parts else "0"

@dataclass(frozen=True)
class HomologyResult:
    groups: Tuple[HomologyGroup, ...]
    reduced: bool = False

    @property
    def through_degree(self) -> int:
        return len(self.groups) - 1

    @property
    def betti_numbers(self) -> Tuple[int, ...]:
        return tuple(g.betti for g in self.groups)

    @property
    def torsion(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(g.torsion for g in self.groups)

    def describe(self) -> List[str]:
        return [g.describe() for g in self.groups]

@dataclass(frozen=True)
class HomologyComparison:
    through_degree: int
    equal: bool
    first_difference: Optional[int] = None
    left: Tuple[str, ...] = ()
    right: Tuple[str, ...] = ()

# --- Reports ---

@dataclass
class CheckOutcome:
    name: str
    expected: Any
    computed: Any
    passed: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "expected": self.expected,
            "computed": self.computed,
            "status": (CheckStatus.PASS if self.passed else CheckStatus.FAIL).value,
        }

@dataclass
class RunReport:
    """Outcome of one CLI command; emitted even when the command fails."""
    command: List[str]
    engine_version: str
    input_hashes: Dict[str, str] = field(default_factory=dict)
    checks: List[CheckOutcome] = field(default_factory=list)
    timing_seconds: float = 0.0
    error: Optional[str] = None
    outputs: Dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.error is None and all(c.passed for c in self.checks)

    @property
    def status(self) -> CheckStatus:
        if self.error is not None:
            return CheckStatus.ERROR
        return CheckStatus.PASS if self.passed else CheckStatus.FAIL

    def add(self, name: str, expected: Any, computed: Any, passed: Optional[bool] = None) -> CheckOutcome:
        outcome = CheckOutcome(name, expected, computed, expected == computed if passed is None else passed)
        self.checks.append(outcome)
        return outcome

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        # Key order is part of the schema
        data: Dict[str, Any] = {
            "command": self.command,
            "engine_version": self.engine_version,
            "status": self.status.value,
            "input_hashes": dict(sorted(self.input_hashes.items())),
            "checks": [c.to_dict() for c in self.checks],
            "outputs": dict(sorted(self.outputs.items())),
            "error": self.error,
        }
        if include_timing:
            data["timing_seconds"] = round(self.timing_seconds, 3)
        return data

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, default=str)
