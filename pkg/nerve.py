# nerve.py
"""
Classifying space BM of a partial monoid: level k holds the composable k-tuples,
d_0 and d_k drop the first and last entry, inner faces add neighbouring entries
and s_i inserts the unit at position i. Simplex ids are the tuples written
'(m1,m2,...)'; the basepoint is the empty tuple '()'.
"""

import logging
from typing import Mapping, Optional, Sequence, Tuple

import config
from dold_thom import dold_thom_space, normal_form
from exceptions import CompositionError, MonoidError, SimplicialError
from models import DoldThomSpace, NerveCircleComparison, PartialMonoid, SimplicialMap, SimplicialSet
from monoid import check_homomorphism, composable_tuples
from simplicial import assemble, is_isomorphism, make_map, sphere
from utils import parallel_map, stable_digest

logger = logging.getLogger(__name__)


def tuple_id(entries: Sequence[str]) -> str:
    return "(" + ",".join(entries) + ")"


def tuple_entries(simplex: str) -> Tuple[str, ...]:
    inner = simplex[1:-1]
    return tuple(inner.split(",")) if inner else ()


def _face(M: PartialMonoid, entries: Tuple[str, ...], i: int) -> Tuple[str, ...]:
    k = len(entries)
    if i == 0:
        return entries[1:]
    if i == k:
        return entries[:-1]
    s = M.sum_table.get((entries[i - 1], entries[i]))
    if s is None:
        raise CompositionError(f"{entries[i - 1]} + {entries[i]} undefined inside composable tuple {entries}")
    return entries[:i - 1] + (s,) + entries[i + 1:]


def classifying_space(M: PartialMonoid, max_dim: Optional[int] = None) -> SimplicialSet:
    """BM through level max_dim."""
    depth = config.DEFAULT_MAX_DIM if max_dim is None else max_dim
    if depth < 0:
        raise SimplicialError(f"depth must be non-negative, got {depth}")
    if not isinstance(M, PartialMonoid):
        raise MonoidError(f"classifying spaces are built for unfiltered monoids, got {type(M).__name__}")

    levels = parallel_map(lambda k: [tuple_id(t.entries) for t in composable_tuples(M, k)], range(depth + 1))

    def faces(k: int, x: str):
        entries = tuple_entries(x)
        return [tuple_id(_face(M, entries, i)) for i in range(k + 1)]

    def degeneracies(k: int, x: str):
        entries = tuple_entries(x)
        return [tuple_id(entries[:i] + (M.zero,) + entries[i:]) for i in range(k + 1)]

    B = assemble(f"B{M.name}", levels, faces, degeneracies,
                 [tuple_id((M.zero,) * k) for k in range(depth + 1)],
                 {"kind": "nerve", "monoid_digest": stable_digest(M.describe()), "depth": str(depth)})
    logger.info(f"Built B{M.name} to depth {depth}: level sizes {B.level_sizes()}")
    return B


def nerve_map(M: PartialMonoid, N: PartialMonoid, mapping: Mapping[str, str], max_dim: Optional[int] = None,
              source: Optional[SimplicialSet] = None, target: Optional[SimplicialSet] = None) -> SimplicialMap:
    """Bf for a homomorphism f, applied entrywise."""
    violations = check_homomorphism(M, N, mapping)
    if violations:
        raise MonoidError(f"not a homomorphism {M.name} -> {N.name}: {violations[0]}")
    source = source or classifying_space(M, max_dim)
    target = target or classifying_space(N, source.max_dim)
    return make_map(source, target, lambda k, x: tuple_id(tuple(mapping[m] for m in tuple_entries(x))),
                    name=f"B({M.name}->{N.name})")


def circle_cell(k: int, j: int) -> str:
    """The level-k simplex 0^j 1^(k+1-j) of the circle, 1 <= j <= k."""
    return "e" + ".".join(["0"] * j + ["1"] * (k + 1 - j))


def alignment_map(nerve: SimplicialSet, circle_space: DoldThomSpace) -> Optional[SimplicialMap]:
    """
    The canonical map BM -> M[S^1]: entry m_j of a tuple becomes label m_j on the
    circle simplex 0^j 1^(k+1-j); zero entries are absent points. None when some
    tuple has no image or the result is not a simplicial map.
    """
    M = circle_space.monoid
    S1 = circle_space.base
    positions = [{x: i for i, x in enumerate(level)} for level in S1.levels]

    def image(k: int, x: str) -> str:
        labels = {circle_cell(k, j): m for j, m in enumerate(tuple_entries(x), start=1) if m != M.zero}
        return normal_form(k, labels, positions[k]).key

    try:
        f = make_map(nerve, circle_space.space, image, name="alignment")
    except SimplicialError as e:
        logger.warning(f"No canonical alignment for {M.name}: {e}")
        return None
    if not all(f(k, x) in circle_space.configurations[k] for k in range(f.max_dim + 1) for x in nerve.levels[k]):
        return None
    return f


def nerve_to_circle_comparison(M: PartialMonoid, depth: Optional[int] = None) -> NerveCircleComparison:
    """
    BM and M[S^1] to the same depth, with the canonical alignment when it is a
    simplicial isomorphism. Otherwise callers compare homology.
    """
    depth = config.DEFAULT_MAX_DIM if depth is None else depth
    depth = max(depth, 1)
    nerve = classifying_space(M, depth)
    circle_space = dold_thom_space(M, sphere(1, depth), None, depth)
    alignment = alignment_map(nerve, circle_space)
    isomorphic = alignment is not None and is_isomorphism(alignment)
    logger.info(f"B{M.name} vs {M.name}[S1] to depth {depth}: "
                f"{'isomorphic via the canonical alignment' if isomorphic else 'no levelwise isomorphism'}")
    return NerveCircleComparison(nerve, circle_space, alignment if isomorphic else None, isomorphic)
