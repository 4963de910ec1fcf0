# dold_thom.py
"""
Dold-Thom spaces M_n[X] as simplicial sets of labelled configurations.

A level-k simplex is a configuration in merged normal form: nonbasepoint level-k
simplices of X carrying nonzero labels whose multiset is composable, at most n of
them. Faces push labels along d_i, summing labels that land on one simplex and
discarding those that land on the basepoint. Degeneracies relabel along s_i.
"""

import itertools
import logging
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from exceptions import DepthError, MonoidError, SimplicialError
from interchange import write_simplicial_set
from models import Configuration, DoldThomSpace, FilteredPartialMonoid, PartialMonoid, SimplicialMap, SimplicialSet
from monoid import check_homomorphism, composable_multiset, sum_multiset
from simplicial import assemble, checked_map, is_connected, wedge
from utils import parallel_map, stable_digest

logger = logging.getLogger(__name__)

AnyMonoid = Union[PartialMonoid, FilteredPartialMonoid]

EMPTY_KEY = Configuration(0, ()).key


def effective_monoid(M: AnyMonoid, level_cap: Optional[int] = None) -> PartialMonoid:
    """The structure used for composability: M itself, or level `level_cap` of a filtration."""
    if isinstance(M, FilteredPartialMonoid):
        cap = len(M.levels) - 1 if level_cap is None else level_cap
        if not 0 <= cap < len(M.levels):
            raise MonoidError(f"level cap {cap} outside 0..{len(M.levels) - 1} for {M.name}")
        return M.levels[cap]
    if level_cap is not None:
        raise MonoidError(f"level cap given for the unfiltered monoid {M.name}")
    return M


def _positions(X: SimplicialSet) -> Tuple[Dict[str, int], ...]:
    return tuple({x: i for i, x in enumerate(level)} for level in X.levels)


def normal_form(k: int, labels: Mapping[str, str], position: Mapping[str, int]) -> Configuration:
    """Configuration with its labels sorted by the base simplex's place in level k."""
    return Configuration(k, tuple(sorted(labels.items(), key=lambda item: position[item[0]])))


def make_configuration(X: SimplicialSet, k: int, labels: Mapping[str, str]) -> Configuration:
    for x in labels:
        if not X.contains(k, x) or x == X.basepoints[k]:
            raise SimplicialError(f"'{x}' is not a nonbasepoint level-{k} simplex of {X.name}")
    return normal_form(k, labels, _positions(X)[k])


def push_labels(M: PartialMonoid,
                labels: Iterable[Tuple[str, str]],
                target: Callable[[str], str],
                basepoint: str) -> Dict[str, str]:
    """
    Sends each (x, m) to target(x), drops labels landing on `basepoint` and sums
    the labels that coincide. Zero sums are dropped as well. A non-composable
    merge raises CompositionError; it cannot happen for a validated monoid.
    """
    groups: Dict[str, List[str]] = {}
    for x, m in labels:
        y = target(x)
        if y != basepoint:
            groups.setdefault(y, []).append(m)
    merged = {}
    for y, ms in groups.items():
        value = ms[0] if len(ms) == 1 else sum_multiset(M, ms)
        if value != M.zero:
            merged[y] = value
    return merged


def _level_configurations(M: PartialMonoid, X: SimplicialSet, k: int, bound: Optional[int]) -> List[Configuration]:
    """Support-size ascending, supports in level order, labels in carrier order."""
    cells = X.nonbasepoint(k)
    limit = len(cells) if bound is None else min(bound, len(cells))
    result = [Configuration(k, ())]
    for size in range(1, limit + 1):
        found = 0
        for support in itertools.combinations(cells, size):
            labellings: List[Tuple[str, ...]] = [()]
            for _ in support:
                labellings = [p + (m,) for p in labellings for m in M.nonzero if composable_multiset(M, p + (m,))]
                if not labellings:
                    break
            for chosen in labellings:
                result.append(Configuration(k, tuple(zip(support, chosen))))
            found += len(labellings)
        # Restricting a composable labelling keeps it composable
        if not found:
            break
    return result


def _lookup(configurations: Sequence[Mapping[str, Configuration]], c: Configuration, what: str) -> str:
    if c.key not in configurations[c.level]:
        raise SimplicialError(f"{what} produced {c.key}, which is not a level-{c.level} configuration")
    return c.key


def _bound_text(bound: Optional[int]) -> str:
    return "inf" if bound is None else str(bound)


def _bound_le(a: Optional[int], b: Optional[int]) -> bool:
    return b is None or (a is not None and a <= b)


def _admitting_level(F: FilteredPartialMonoid, cap: int, labels: Tuple[str, ...]) -> int:
    for i in range(cap + 1):
        if composable_multiset(F.levels[i], labels):
            return i
    raise MonoidError(f"labels {labels} are not composable at any level of {F.name}")


def dold_thom_space(M: AnyMonoid,
                    X: SimplicialSet,
                    point_bound: Optional[int] = None,
                    max_dim: Optional[int] = None,
                    level_cap: Optional[int] = None) -> DoldThomSpace:
    """
    M_n[X] for n = point_bound, or M[X] when point_bound is None (always finite
    for a finite carrier). For a filtered monoid a configuration is admitted when
    its labels are composable at some level up to `level_cap` (default: the last
    one) and the least such level is recorded.
    """
    if point_bound is not None and point_bound < 0:
        raise SimplicialError(f"point bound must be non-negative, got {point_bound}")
    depth = X.max_dim if max_dim is None else max_dim
    if not 0 <= depth <= X.max_dim:
        raise DepthError(f"{X.name} is materialized to depth {X.max_dim}, {depth} requested")
    if not is_connected(X):
        raise SimplicialError(f"{X.name} is not connected")

    effective = effective_monoid(M, level_cap)
    positions = _positions(X)
    per_level = parallel_map(lambda k: _level_configurations(effective, X, k, point_bound), range(depth + 1))
    configurations = tuple({c.key: c for c in level} for level in per_level)

    def faces(k: int, key: str) -> List[str]:
        c = configurations[k][key]
        out = []
        for i in range(k + 1):
            merged = push_labels(effective, c.labels, lambda x: X.face(k, i, x), X.basepoints[k - 1])
            out.append(_lookup(configurations, normal_form(k - 1, merged, positions[k - 1]), f"d_{i}{key}"))
        return out

    def degeneracies(k: int, key: str) -> List[str]:
        c = configurations[k][key]
        out = []
        for i in range(k + 1):
            moved = {X.degeneracy(k, i, x): m for x, m in c.labels}
            out.append(_lookup(configurations, normal_form(k + 1, moved, positions[k + 1]), f"s_{i}{key}"))
        return out

    name = f"{M.name}[{X.name}]" if point_bound is None else f"{M.name}_{point_bound}[{X.name}]"
    metadata = {
        "kind": "dold-thom",
        "monoid_digest": stable_digest(M.describe()),
        "base_digest": stable_digest(write_simplicial_set(X)),
        "point_bound": _bound_text(point_bound),
        "depth": str(depth),
    }
    admitted: Dict[Tuple[int, str], int] = {}
    cap = None
    if isinstance(M, FilteredPartialMonoid):
        cap = len(M.levels) - 1 if level_cap is None else level_cap
        metadata["level_cap"] = str(cap)
        for k, level in enumerate(per_level):
            for c in level:
                admitted[(k, c.key)] = _admitting_level(M, cap, c.label_multiset)

    space = assemble(name, [[c.key for c in level] for level in per_level], faces, degeneracies,
                     [EMPTY_KEY] * (depth + 1), metadata)
    logger.info(f"Built {name} to depth {depth}: level sizes {space.level_sizes()}")
    return DoldThomSpace(M, X, point_bound, depth, space, configurations, admitted, cap)


# --- Degeneracy detection ---

def _degeneracy_images(X: SimplicialSet, k: int) -> List[frozenset]:
    """Image of each s_i : X_(k-1) -> X_k."""
    return [frozenset(X.degeneracy(k - 1, i, x) for x in X.levels[k - 1]) for i in range(k)]


def is_degenerate(space: DoldThomSpace, k: int, key: str) -> bool:
    """A configuration is degenerate iff its support lies in the image of one s_i of X."""
    if k == 0:
        return False
    support = space.configuration(k, key).support
    return any(all(x in image for x in support) for image in _degeneracy_images(space.base, k))


def nondegenerate_configurations(space: DoldThomSpace, k: int) -> Tuple[str, ...]:
    if k == 0:
        return space.space.levels[0]
    images = _degeneracy_images(space.base, k)
    return tuple(key for key in space.space.levels[k]
                 if not any(all(x in image for x in space.configuration(k, key).support) for image in images))


# --- Maps ---

def _same(a, b) -> bool:
    return a is b or a == b


def induced_map(f: SimplicialMap, space: DoldThomSpace, target_space: Optional[DoldThomSpace] = None) -> SimplicialMap:
    """
    M[f]: each label moves to the image of its simplex; labels landing on the
    basepoint are discarded and coinciding ones are summed.
    """
    if not _same(f.source, space.base):
        raise SimplicialError(f"{f.name} does not start at {space.base.name}")
    if f.max_dim < space.max_dim:
        raise DepthError(f"{f.name} is tabulated to depth {f.max_dim}, {space.max_dim} needed")
    target = target_space or dold_thom_space(space.monoid, f.target, space.point_bound, space.max_dim, space.level_cap)
    if not _same(target.base, f.target) or not _same(target.monoid, space.monoid) or target.max_dim != space.max_dim:
        raise SimplicialError(f"target space does not match {f.name} and {space.space.name}")
    if not _bound_le(space.point_bound, target.point_bound):
        raise SimplicialError(
            f"target bound {_bound_text(target.point_bound)} is below source bound {_bound_text(space.point_bound)}")

    effective = effective_monoid(space.monoid, space.level_cap)
    Y = f.target
    positions = _positions(Y)

    def rule(k: int, key: str) -> str:
        c = space.configuration(k, key)
        merged = push_labels(effective, c.labels, lambda x: f(k, x), Y.basepoints[k])
        return normal_form(k, merged, positions[k]).key

    return checked_map(space.space, target.space, rule, name=f"{space.monoid.name}[{f.name}]")


def filtration_inclusion(space_n: DoldThomSpace, space_m: DoldThomSpace) -> SimplicialMap:
    """M_n[X] -> M_m[X] for n <= m."""
    if not _same(space_n.monoid, space_m.monoid) or not _same(space_n.base, space_m.base):
        raise SimplicialError("filtration inclusion needs the same monoid and base space")
    if space_n.max_dim != space_m.max_dim or space_n.level_cap != space_m.level_cap:
        raise SimplicialError("filtration inclusion needs equal depth and level cap")
    if not _bound_le(space_n.point_bound, space_m.point_bound):
        raise SimplicialError(
            f"bound {_bound_text(space_n.point_bound)} does not include into {_bound_text(space_m.point_bound)}")
    return checked_map(space_n.space, space_m.space, lambda k, key: key,
                       name=f"incl_{_bound_text(space_n.point_bound)}_{_bound_text(space_m.point_bound)}")


def coefficient_map(space: DoldThomSpace, N: PartialMonoid, mapping: Mapping[str, str],
                    target_space: Optional[DoldThomSpace] = None) -> SimplicialMap:
    """h[X] : M[X] -> N[X] for a homomorphism h, applied label by label."""
    M = space.monoid
    if not isinstance(M, PartialMonoid):
        raise MonoidError("coefficient maps are defined for unfiltered monoids")
    violations = check_homomorphism(M, N, mapping)
    if violations:
        raise MonoidError(f"not a homomorphism {M.name} -> {N.name}: {violations[0]}")
    target = target_space or dold_thom_space(N, space.base, space.point_bound, space.max_dim)

    def rule(k: int, key: str) -> str:
        c = space.configuration(k, key)
        return Configuration(k, tuple((x, mapping[m]) for x, m in c.labels if mapping[m] != N.zero)).key

    return checked_map(space.space, target.space, rule, name=f"{M.name}->{N.name}")


def wedge_comparison(space: DoldThomSpace) -> Tuple[SimplicialSet, SimplicialMap]:
    """
    wedge(X, q) -> M[X] for the q nonzero elements of M: copy c goes to single
    points labelled by the c-th nonzero element. An isomorphism exactly when M
    has trivial multiplication.
    """
    X, M = space.base, space.monoid
    if space.max_dim != X.max_dim:
        raise DepthError(f"wedge comparison needs the space built to the full depth {X.max_dim} of {X.name}")
    if space.point_bound == 0:
        raise SimplicialError("wedge comparison needs single-point configurations")
    labels = M.nonzero
    W = wedge(X, len(labels))

    def rule(k: int, w: str) -> str:
        if w == W.basepoints[k]:
            return EMPTY_KEY
        tag, _, x = w.partition("|")
        return Configuration(k, ((x, labels[int(tag[1:]) - 1]),)).key

    return W, checked_map(W, space.space, rule, name="wedge_comparison")


def filtered_union_check(F: FilteredPartialMonoid,
                         X: SimplicialSet,
                         point_bound: Optional[int] = None,
                         max_dim: Optional[int] = None,
                         level_cap: Optional[int] = None) -> List[str]:
    """
    Compares the filtered space with the per-level spaces M(i)_n[X]: levelwise the
    filtered configurations must be their union, each recorded admitting level
    must be the least level containing it, and M(i)_n[X] must sit inside
    M(i+1)_n[X]. Returns the discrepancies (empty when all hold).
    """
    space = dold_thom_space(F, X, point_bound, max_dim, level_cap)
    stages = [dold_thom_space(F.levels[i], X, point_bound, space.max_dim) for i in range(space.level_cap + 1)]
    problems = []
    for k in range(space.max_dim + 1):
        own = set(space.configurations[k])
        union = set().union(*(s.configurations[k] for s in stages))
        if own != union:
            problems.append(f"level {k}: {len(own - union)} configuration(s) outside the union, "
                            f"{len(union - own)} missing from the filtered space")
        for i in range(1, len(stages)):
            if not set(stages[i - 1].configurations[k]) <= set(stages[i].configurations[k]):
                problems.append(f"level {k}: stage {i - 1} is not contained in stage {i}")
        for key in sorted(own & union):
            least = next(i for i, s in enumerate(stages) if key in s.configurations[k])
            if space.admitted_level[(k, key)] != least:
                problems.append(f"level {k}: {key} admitted at {space.admitted_level[(k, key)]}, first appears at {least}")
    return problems
