# simplicial.py

import itertools
import logging
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from exceptions import DepthError, SimplicialError
from models import SimplicialMap, SimplicialSet, Violation

logger = logging.getLogger(__name__)

# Identity names used in violation reports
FACE_FACE = "d_i d_j = d_(j-1) d_i"
DEGEN_DEGEN = "s_i s_j = s_(j+1) s_i"
FACE_DEGEN_LOW = "d_i s_j = s_(j-1) d_i"
FACE_DEGEN_ID = "d_i s_j = id"
FACE_DEGEN_HIGH = "d_i s_j = s_j d_(i-1)"
BASEPOINT = "basepoint"
STRUCTURE = "structure"
MAP_FACE = "f d_i = d_i f"
MAP_DEGEN = "f s_i = s_i f"
MAP_STRUCTURE = "map structure"

Subcomplex = Union[Mapping[int, Iterable[str]], Sequence[Iterable[str]]]


def assemble(name: str,
             levels: Sequence[Sequence[str]],
             face_fn: Callable[[int, str], Sequence[str]],
             degeneracy_fn: Callable[[int, str], Sequence[str]],
             basepoints: Sequence[str],
             metadata: Optional[Mapping[str, str]] = None) -> SimplicialSet:
    """Materializes face/degeneracy tables from level lists and two rules."""
    levels = tuple(tuple(level) for level in levels)
    max_dim = len(levels) - 1
    faces = [{}] + [{x: tuple(face_fn(k, x)) for x in levels[k]} for k in range(1, max_dim + 1)]
    degeneracies = [{x: tuple(degeneracy_fn(k, x)) for x in levels[k]} for k in range(max_dim)]
    X = SimplicialSet(name, levels, tuple(faces), tuple(degeneracies), tuple(basepoints), dict(metadata or {}))
    logger.debug(f"Assembled {name}: level sizes {X.level_sizes()}")
    return X


# --- Constructors ---

def _basepoint_id(k: int) -> str:
    return f"*{k}"


def point(max_dim: int) -> SimplicialSet:
    """The one-point simplicial set."""
    if max_dim < 0:
        raise SimplicialError(f"depth must be non-negative, got {max_dim}")
    return assemble(
        "point",
        [[_basepoint_id(k)] for k in range(max_dim + 1)],
        lambda k, x: [_basepoint_id(k - 1)] * (k + 1),
        lambda k, x: [_basepoint_id(k + 1)] * (k + 1),
        [_basepoint_id(k) for k in range(max_dim + 1)],
    )


def _surjections(k: int, n: int) -> List[Tuple[int, ...]]:
    """Monotone surjections [k] -> [n] as value sequences, lexicographic."""
    result = []
    for steps in itertools.combinations(range(1, k + 1), n):
        seq, value = [], 0
        step_set = set(steps)
        for p in range(k + 1):
            if p in step_set:
                value += 1
            seq.append(value)
        result.append(tuple(seq))
    return sorted(result)


def _cell_id(seq: Sequence[int]) -> str:
    return "e" + ".".join(str(v) for v in seq)


def _cell_seq(cell: str) -> Tuple[int, ...]:
    return tuple(int(v) for v in cell[1:].split("."))


def sphere(n: int, levels: int) -> SimplicialSet:
    """
    S^n as Delta^n / boundary: level k holds the basepoint and one simplex per
    monotone surjection [k] -> [n]. Faces that stop being surjective collapse
    to the basepoint.
    """
    if n < 1:
        raise SimplicialError(f"sphere dimension must be at least 1, got {n}")
    if levels < n:
        raise SimplicialError(f"sphere({n}) needs at least {n} levels, got {levels}")

    def faces(k: int, x: str) -> List[str]:
        if x.startswith("*"):
            return [_basepoint_id(k - 1)] * (k + 1)
        seq = _cell_seq(x)
        out = []
        for i in range(k + 1):
            rest = seq[:i] + seq[i + 1:]
            out.append(_cell_id(rest) if len(set(rest)) == n + 1 else _basepoint_id(k - 1))
        return out

    def degeneracies(k: int, x: str) -> List[str]:
        if x.startswith("*"):
            return [_basepoint_id(k + 1)] * (k + 1)
        seq = _cell_seq(x)
        return [_cell_id(seq[:i + 1] + seq[i:]) for i in range(k + 1)]

    level_lists = [[_basepoint_id(k)] + [_cell_id(s) for s in _surjections(k, n)] for k in range(levels + 1)]
    X = assemble(f"S{n}", level_lists, faces, degeneracies, [_basepoint_id(k) for k in range(levels + 1)])
    logger.info(f"Built sphere S^{n} to depth {levels}: level sizes {X.level_sizes()}")
    return X


def _copy_id(c: int, x: str) -> str:
    return f"c{c}|{x}"


def wedge(X: SimplicialSet, copies: int) -> SimplicialSet:
    """Wedge of `copies` copies of X; non-basepoint simplices are tagged 'c<i>|'."""
    if copies < 1:
        raise SimplicialError(f"wedge needs at least one copy, got {copies}")
    origin: Dict[str, Tuple[int, str]] = {}
    level_lists = []
    for k in range(X.max_dim + 1):
        level = [X.basepoints[k]]
        for c in range(1, copies + 1):
            for x in X.nonbasepoint(k):
                tagged = _copy_id(c, x)
                origin[tagged] = (c, x)
                level.append(tagged)
        level_lists.append(level)

    def lift(c: int, k: int, y: str) -> str:
        return X.basepoints[k] if y == X.basepoints[k] else _copy_id(c, y)

    def faces(k: int, x: str) -> List[str]:
        if x not in origin:
            return [X.basepoints[k - 1]] * (k + 1)
        c, base = origin[x]
        return [lift(c, k - 1, y) for y in X.faces[k][base]]

    def degeneracies(k: int, x: str) -> List[str]:
        if x not in origin:
            return [X.basepoints[k + 1]] * (k + 1)
        c, base = origin[x]
        return [lift(c, k + 1, y) for y in X.degeneracies[k][base]]

    return assemble(f"wedge({X.name},{copies})", level_lists, faces, degeneracies, X.basepoints,
                    {"wedge_copies": str(copies), "wedge_of": X.name})


# --- Validation ---

def _structure_violations(X: SimplicialSet) -> List[Violation]:
    violations = []
    for k in range(X.max_dim + 1):
        bp = X.basepoints[k]
        if not X.contains(k, bp):
            violations.append(Violation(STRUCTURE, f"basepoint '{bp}' missing at level {k}", (k, bp)))
        if len(set(X.levels[k])) != len(X.levels[k]):
            violations.append(Violation(STRUCTURE, f"duplicate simplex identifiers at level {k}", (k,)))
        for x in X.levels[k]:
            if k >= 1:
                fs = X.faces[k].get(x)
                if fs is None or len(fs) != k + 1 or not all(X.contains(k - 1, y) for y in fs):
                    violations.append(Violation(STRUCTURE, f"bad face table entry for '{x}' at level {k}", (k, x)))
            if k < X.max_dim:
                ds = X.degeneracies[k].get(x)
                if ds is None or len(ds) != k + 1 or not all(X.contains(k + 1, y) for y in ds):
                    violations.append(Violation(STRUCTURE, f"bad degeneracy table entry for '{x}' at level {k}", (k, x)))
    return violations


def validate_identities(X: SimplicialSet) -> List[Violation]:
    """Every simplicial identity on every materialized level; empty iff all hold."""
    violations = _structure_violations(X)
    if violations:
        return violations

    d = X.face
    s = X.degeneracy
    for k in range(X.max_dim + 1):
        bp = X.basepoints[k]
        if k >= 1 and any(y != X.basepoints[k - 1] for y in X.faces[k][bp]):
            violations.append(Violation(BASEPOINT, f"a face of basepoint '{bp}' is not the basepoint", (k, bp)))
        if k < X.max_dim and any(y != X.basepoints[k + 1] for y in X.degeneracies[k][bp]):
            violations.append(Violation(BASEPOINT, f"a degeneracy of basepoint '{bp}' is not flagged as basepoint", (k, bp)))

        for x in X.levels[k]:
            if k >= 2:
                for j in range(k + 1):
                    for i in range(j):
                        left = d(k - 1, i, d(k, j, x))
                        right = d(k - 1, j - 1, d(k, i, x))
                        if left != right:
                            violations.append(Violation(
                                FACE_FACE, f"level {k}, '{x}', i={i}, j={j}: {left} != {right}", (k, x, i, j)))
            if k <= X.max_dim - 2:
                for j in range(k + 1):
                    for i in range(j + 1):
                        left = s(k + 1, i, s(k, j, x))
                        right = s(k + 1, j + 1, s(k, i, x))
                        if left != right:
                            violations.append(Violation(
                                DEGEN_DEGEN, f"level {k}, '{x}', i={i}, j={j}: {left} != {right}", (k, x, i, j)))
            if k <= X.max_dim - 1:
                for j in range(k + 1):
                    y = s(k, j, x)
                    for i in range(k + 2):
                        left = d(k + 1, i, y)
                        if i < j:
                            name, right = FACE_DEGEN_LOW, s(k - 1, j - 1, d(k, i, x))
                        elif i in (j, j + 1):
                            name, right = FACE_DEGEN_ID, x
                        else:
                            name, right = FACE_DEGEN_HIGH, s(k - 1, j, d(k, i - 1, x))
                        if left != right:
                            violations.append(Violation(
                                name, f"level {k}, '{x}', i={i}, j={j}: {left} != {right}", (k, x, i, j)))
    if violations:
        logger.warning(f"{X.name}: {len(violations)} simplicial identity violation(s)")
    return violations


def is_connected(X: SimplicialSet) -> bool:
    """One component in the 1-skeleton."""
    parent = {v: v for v in X.levels[0]}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    if X.max_dim >= 1:
        for e in X.levels[1]:
            a, b = (find(v) for v in X.faces[1][e])
            parent[a] = b
    return len({find(v) for v in X.levels[0]}) == 1


def require_depth(X: SimplicialSet, depth: int) -> None:
    if X.max_dim < depth:
        raise DepthError(f"{X.name} is materialized to depth {X.max_dim}, {depth} needed")


# --- Maps ---

def make_map(source: SimplicialSet, target: SimplicialSet, rule: Callable[[int, str], str], name: str = "f") -> SimplicialMap:
    """Tabulates `rule` over the source levels; the result is not validated."""
    if source.max_dim != target.max_dim:
        raise SimplicialError(
            f"level mismatch: {source.name} has depth {source.max_dim}, {target.name} has depth {target.max_dim}")
    assignment = tuple({x: rule(k, x) for x in source.levels[k]} for k in range(source.max_dim + 1))
    return SimplicialMap(source, target, assignment, name=name)


def validate_map(f: SimplicialMap) -> List[Violation]:
    """Complete check: defined everywhere, based, commutes with every face and degeneracy."""
    X, Y = f.source, f.target
    if not (len(f.assignment) == X.max_dim + 1 == Y.max_dim + 1):
        return [Violation(MAP_STRUCTURE, f"level mismatch between {X.name}, {Y.name} and the assignment")]
    violations = []
    for k in range(X.max_dim + 1):
        table = f.assignment[k]
        for x in X.levels[k]:
            if x not in table:
                violations.append(Violation(MAP_STRUCTURE, f"'{x}' at level {k} has no image", (k, x)))
            elif not Y.contains(k, table[x]):
                violations.append(Violation(MAP_STRUCTURE, f"image '{table[x]}' of '{x}' is not a level-{k} simplex", (k, x)))
    if violations:
        return violations

    for k in range(X.max_dim + 1):
        if f(k, X.basepoints[k]) != Y.basepoints[k]:
            violations.append(Violation(BASEPOINT, f"basepoint at level {k} maps to '{f(k, X.basepoints[k])}'", (k,)))
        for x in X.levels[k]:
            fx = f(k, x)
            if k >= 1:
                for i, (a, b) in enumerate(zip(X.faces[k][x], Y.faces[k][fx])):
                    if f(k - 1, a) != b:
                        violations.append(Violation(MAP_FACE, f"level {k}, '{x}', i={i}", (k, x, i)))
            if k < X.max_dim:
                for i, (a, b) in enumerate(zip(X.degeneracies[k][x], Y.degeneracies[k][fx])):
                    if f(k + 1, a) != b:
                        violations.append(Violation(MAP_DEGEN, f"level {k}, '{x}', i={i}", (k, x, i)))
    return violations


def checked_map(source: SimplicialSet, target: SimplicialSet, rule: Callable[[int, str], str], name: str = "f") -> SimplicialMap:
    f = make_map(source, target, rule, name)
    violations = validate_map(f)
    if violations:
        raise SimplicialError(f"{name} is not a simplicial map: {violations[0]}")
    return f


def is_isomorphism(f: SimplicialMap) -> bool:
    return not validate_map(f) and f.is_levelwise_bijective()


def identity_map(X: SimplicialSet) -> SimplicialMap:
    return make_map(X, X, lambda k, x: x, name=f"id_{X.name}")


def compose_maps(f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """f after g."""
    if g.target is not f.source and g.target != f.source:
        raise SimplicialError(f"cannot compose {f.name} after {g.name}: {g.target.name} is not {f.source.name}")
    if f.max_dim != g.max_dim:
        raise SimplicialError(f"level mismatch composing {f.name} (depth {f.max_dim}) and {g.name} (depth {g.max_dim})")
    assignment = tuple({x: f.assignment[k][y] for x, y in g.assignment[k].items()} for k in range(g.max_dim + 1))
    return SimplicialMap(g.source, f.target, assignment, name=f"{f.name}.{g.name}")


def generate_subcomplex(X: SimplicialSet, simplices: Iterable[Tuple[int, str]]) -> Tuple[frozenset, ...]:
    """Closure of the given (level, simplex) pairs and the basepoint under faces and degeneracies."""
    members = [set() for _ in range(X.max_dim + 1)]
    stack = [(0, X.basepoint)] + list(simplices)
    while stack:
        k, x = stack.pop()
        if not X.contains(k, x):
            raise SimplicialError(f"'{x}' is not a level-{k} simplex of {X.name}")
        if x in members[k]:
            continue
        members[k].add(x)
        if k >= 1:
            stack.extend((k - 1, y) for y in X.faces[k][x])
        if k < X.max_dim:
            stack.extend((k + 1, y) for y in X.degeneracies[k][x])
    return tuple(frozenset(level) for level in members)


def _normalize_subcomplex(X: SimplicialSet, A: Subcomplex) -> Tuple[frozenset, ...]:
    if isinstance(A, Mapping):
        return tuple(frozenset(A.get(k, ())) for k in range(X.max_dim + 1))
    A = list(A)
    if len(A) != X.max_dim + 1:
        raise SimplicialError(f"subcomplex has {len(A)} levels, {X.name} has {X.max_dim + 1}")
    return tuple(frozenset(level) for level in A)


def collapse_map(X: SimplicialSet, A: Subcomplex, name: Optional[str] = None) -> SimplicialMap:
    """The quotient X -> X/A sending the subcomplex A to the basepoint."""
    A = _normalize_subcomplex(X, A)
    for k in range(X.max_dim + 1):
        if X.basepoints[k] not in A[k]:
            raise SimplicialError(f"subcomplex must contain the basepoint at level {k}")
        for x in A[k]:
            if not X.contains(k, x):
                raise SimplicialError(f"'{x}' is not a level-{k} simplex of {X.name}")
            if k >= 1 and not all(y in A[k - 1] for y in X.faces[k][x]):
                raise SimplicialError(f"subcomplex is not closed under faces at '{x}' (level {k})")
            if k < X.max_dim and not all(y in A[k + 1] for y in X.degeneracies[k][x]):
                raise SimplicialError(f"subcomplex is not closed under degeneracies at '{x}' (level {k})")

    def project(k: int, x: str) -> str:
        return X.basepoints[k] if x in A[k] else x

    level_lists = [[X.basepoints[k]] + [x for x in X.levels[k] if x not in A[k]] for k in range(X.max_dim + 1)]
    quotient = assemble(
        f"{X.name}/A",
        level_lists,
        lambda k, x: [project(k - 1, y) for y in X.faces[k][x]],
        lambda k, x: [project(k + 1, y) for y in X.degeneracies[k][x]],
        X.basepoints,
    )
    return make_map(X, quotient, project, name=name or f"collapse_{X.name}")


def wedge_summand(W: SimplicialSet, copy: int) -> Tuple[frozenset, ...]:
    """Subcomplex of a wedge spanned by one copy."""
    prefix = _copy_id(copy, "")
    return generate_subcomplex(W, ((k, x) for k in range(W.max_dim + 1) for x in W.levels[k] if x.startswith(prefix)))


def fold_map(W: SimplicialSet, X: SimplicialSet, copies: int) -> SimplicialMap:
    """wedge(X, copies) -> X, identity on every copy."""
    prefixes = [_copy_id(c, "") for c in range(1, copies + 1)]

    def rule(k: int, x: str) -> str:
        for prefix in prefixes:
            if x.startswith(prefix):
                return x[len(prefix):]
        return X.basepoints[k]

    return checked_map(W, X, rule, name="fold")


def copy_inclusion(X: SimplicialSet, W: SimplicialSet, copy: int) -> SimplicialMap:
    """X -> wedge(X, q) onto the given copy."""
    return checked_map(X, W, lambda k, x: X.basepoints[k] if x == X.basepoints[k] else _copy_id(copy, x),
                       name=f"inc{copy}")
