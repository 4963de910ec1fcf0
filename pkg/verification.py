# verification.py
"""
Verification suites behind the `verify` command. Each suite appends its checks
to a RunReport; a check that raises is recorded as failed with the error text.
"""

import itertools
import logging
import random
from functools import lru_cache
from typing import Any, Callable, Dict, FrozenSet, List, Optional, Tuple

import numpy as np

import config
from dold_thom import (dold_thom_space, filtered_union_check, filtration_inclusion, induced_map,
                       make_configuration, wedge_comparison)
from exceptions import EngineError
from homology import compare_homology, homology_of, normalized_chains
from integer_matrix import (SparseIntMatrix, exact_determinant, invariant_factors, is_smith_normal_form,
                            smith_normal_form)
from models import HomologyGroup, HomologyResult, PartialMonoid, RunReport, SimplicialSet
from monoid import composable_multiset, sum_multiset
from monoid_library import abc, constant, cyclic, graded_naturals, one_point, random_partial_monoid, trivial, \
    truncated_naturals
from nerve import classifying_space, nerve_to_circle_comparison
from simplicial import (collapse_map, compose_maps, copy_inclusion, fold_map, identity_map, is_isomorphism, sphere,
                        validate_identities, wedge)

logger = logging.getLogger(__name__)


def fixture_monoids() -> Dict[str, PartialMonoid]:
    return {
        "one_point": one_point(),
        "z2": cyclic(2),
        "z3": cyclic(3),
        "trivial1": trivial(1),
        "trivial2": trivial(2),
        "trivial3": trivial(3),
        "abc": abc(),
        "truncated2": truncated_naturals(2),
    }


def fixture_spaces(depth: int) -> Dict[str, SimplicialSet]:
    S1 = sphere(1, depth)
    return {"S1": S1, "S2": sphere(2, depth), "S1vS1": wedge(S1, 2)}


def _guarded(report: RunReport, name: str, expected: Any, compute: Callable[[], Any]) -> None:
    try:
        computed = compute()
    except EngineError as e:
        logger.error(f"Check {name} raised: {e}")
        report.add(name, expected, f"error: {e}", passed=False)
        return
    report.add(name, expected, computed)


def _groups(betti: List[int], torsion: Optional[List[Tuple[int, ...]]] = None, reduced: bool = True) -> HomologyResult:
    torsion = torsion or [()] * len(betti)
    return HomologyResult(tuple(HomologyGroup(b, t) for b, t in zip(betti, torsion)), reduced)


# --- Suites ---

def nerve_circle_suite(report: RunReport) -> None:
    """BM against M[S^1]: canonical alignment and homology through the default degree."""
    through = config.DEFAULT_HOMOLOGY_THROUGH
    for tag, M in fixture_monoids().items():
        comparison = nerve_to_circle_comparison(M, through + 1)
        report.add(f"nerve-circle/{tag}/isomorphic", True, comparison.isomorphic)
        _guarded(report, f"nerve-circle/{tag}/homology", True, lambda: compare_homology(
            homology_of(comparison.nerve, through), homology_of(comparison.circle_space.space, through)).equal)


def trivial_smash_suite(report: RunReport) -> None:
    """Trivial multiplication with q labels: M[X] is wedge(X, q) and H~(M[X]) = H~(X)^q."""
    through = config.DEFAULT_HOMOLOGY_THROUGH
    for q in (1, 2):
        M = trivial(q)
        for tag, X in fixture_spaces(through + 1).items():
            space = dold_thom_space(M, X)
            _, comparison = wedge_comparison(space)
            report.add(f"trivial-smash/q{q}/{tag}/wedge-isomorphism", True, is_isomorphism(comparison))
            base = homology_of(X, through, reduced=True)
            expected = _groups([q * b for b in base.betti_numbers], [t * q for t in base.torsion])
            _guarded(report, f"trivial-smash/q{q}/{tag}/homology", expected.describe(),
                     lambda: homology_of(space.space, through, reduced=True).describe())
    for q in (1, 2, 3):
        _guarded(report, f"trivial-smash/suspension/q{q}", _groups([0, q] + [0] * (through - 1)).describe(),
                 lambda: homology_of(classifying_space(trivial(q), through + 1), through, reduced=True).describe())


def functoriality_suite(report: RunReport) -> None:
    """M[id] = id, M[f g] = M[f] M[g], and the fold-map label merge."""
    depth = 3
    S1 = sphere(1, depth)
    W = wedge(S1, 2)
    fold = fold_map(W, S1, 2)
    include = copy_inclusion(S1, W, 1)
    collapse = collapse_map(W, [W.levels[k] for k in range(depth + 1)])
    for M in (abc(), cyclic(2), truncated_naturals(2)):
        tag = M.name
        over_W = dold_thom_space(M, W)
        over_S1 = dold_thom_space(M, S1)
        identity = induced_map(identity_map(W), over_W, over_W)
        report.add(f"functoriality/{tag}/identity", True,
                   all(identity(k, key) == key for k in range(depth + 1) for key in over_W.space.levels[k]))
        composite = induced_map(compose_maps(fold, include), over_S1, over_S1)
        stepwise = compose_maps(induced_map(fold, over_W, over_S1), induced_map(include, over_S1, over_W))
        report.add(f"functoriality/{tag}/composition", True, composite.assignment == stepwise.assignment)
        collapsed = induced_map(collapse, over_W)
        report.add(f"functoriality/{tag}/collapse", True,
                   all(collapsed(k, key) == "[]" for k in range(depth + 1) for key in over_W.space.levels[k]))

    M = abc()
    over_W = dold_thom_space(M, W)
    merged = induced_map(fold, over_W, dold_thom_space(M, S1))
    source = make_configuration(W, 1, {"c1|e0.1": "a", "c2|e0.1": "b"})
    report.add("functoriality/fold-merge", "[e0.1@c]", merged(1, source.key))


def identities_suite(report: RunReport) -> None:
    """Simplicial identities and d d = 0 on every generated nerve and Dold-Thom space."""
    depth = config.DEFAULT_MAX_DIM
    spaces: List[SimplicialSet] = []
    for M in fixture_monoids().values():
        spaces.append(classifying_space(M, depth))
        for X in (sphere(1, depth), sphere(2, depth)):
            spaces.append(dold_thom_space(M, X).space)
    spaces.append(dold_thom_space(graded_naturals(3), sphere(2, depth)).space)
    for X in spaces:
        violations = validate_identities(X)
        report.add(f"identities/{X.name}", 0, len(violations))
        _guarded(report, f"boundary/{X.name}", True, lambda: bool(normalized_chains(X, depth - 1)))


def filtration_suite(report: RunReport) -> None:
    """Filtered spaces are the union of the per-level spaces; M_n[X] sits in M_(n+1)[X]."""
    depth = 3
    for F in (graded_naturals(3), graded_naturals(4, 2), constant(cyclic(2), 2)):
        for X in (sphere(1, depth), sphere(2, depth)):
            report.add(f"filtration/{F.name}/{X.name}/union", [], filtered_union_check(F, X))
    M = truncated_naturals(3)
    S1 = sphere(1, depth)
    spaces = [dold_thom_space(M, S1, n) for n in range(4)] + [dold_thom_space(M, S1)]
    for smaller, larger in zip(spaces, spaces[1:]):
        inclusion_ok = True
        try:
            filtration_inclusion(smaller, larger)
        except EngineError as e:
            logger.error(f"Inclusion {smaller.space.name} -> {larger.space.name} failed: {e}")
            inclusion_ok = False
        report.add(f"filtration/inclusion/{smaller.space.name}->{larger.space.name}", True, inclusion_ok)
    report.add("filtration/saturation", True, spaces[-2].space.levels == spaces[-1].space.levels)


def predictions_suite(report: RunReport) -> None:
    """Group homology of B(Z/q), symmetric products and Eilenberg-MacLane spaces."""
    for q in (2, 3):
        _guarded(report, f"predictions/B(Z/{q})", ["Z", f"Z/{q}", "0", f"Z/{q}", "0"],
                 lambda: homology_of(classifying_space(cyclic(q), 5), 4).describe())
    S2 = sphere(2, 5)
    _guarded(report, "predictions/SP2(S2)", (1, 0, 1, 0, 1),
             lambda: homology_of(dold_thom_space(truncated_naturals(2), S2).space, 4).betti_numbers)
    _guarded(report, "predictions/SP1(S2)", homology_of(S2, 4).describe(),
             lambda: homology_of(dold_thom_space(truncated_naturals(1), S2).space, 4).describe())
    for q in (2, 3):
        for n in (1, 2):
            expected = ["0"] * n + [f"Z/{q}"]
            _guarded(report, f"predictions/Z{q}[S{n}]", expected,
                     lambda: homology_of(dold_thom_space(cyclic(q), sphere(n, n + 1)).space, n, reduced=True).describe())


def _reduction_values(M: PartialMonoid, items: Tuple[str, ...]) -> FrozenSet[Optional[str]]:
    """Results of every complete binary reduction order; None marks an order that gets stuck."""

    @lru_cache(maxsize=None)
    def explore(multiset: Tuple[str, ...]) -> FrozenSet[Optional[str]]:
        if len(multiset) <= 1:
            return frozenset(multiset or (M.zero,))
        outcomes = set()
        for i, j in itertools.combinations(range(len(multiset)), 2):
            s = M.sum_table.get((multiset[i], multiset[j]))
            if s is None:
                outcomes.add(None)
                continue
            rest = multiset[:i] + multiset[i + 1:j] + multiset[j + 1:] + (s,)
            outcomes |= explore(M.canonical(rest))
        return frozenset(outcomes)

    return explore(M.canonical(items))


def _coherent(M: PartialMonoid, max_size: int) -> bool:
    for size in range(2, max_size + 1):
        for items in itertools.combinations_with_replacement(M.nonzero, size):
            values = _reduction_values(M, items)
            if values == {None}:
                if composable_multiset(M, items):
                    return False
                continue
            if None in values or len(values) != 1:
                return False
            if sum_multiset(M, items) not in values:
                return False
    return True


def coherence_suite(report: RunReport) -> None:
    """Some reduction order succeeds iff every one does, and all agree."""
    size = config.COHERENCE_MULTISET_SIZE
    for tag, M in fixture_monoids().items():
        report.add(f"coherence/{tag}", True, _coherent(M, size))
    rng = random.Random(config.RANDOM_SEED)
    failures = [M.describe() for M in (random_partial_monoid(rng, config.RANDOM_MONOID_MAX_SIZE)
                                       for _ in range(config.RANDOM_MONOID_COUNT)) if not _coherent(M, size)]
    report.add(f"coherence/random-{config.RANDOM_MONOID_COUNT}", 0, len(failures))


def snf_suite(report: RunReport, count: int = 500) -> None:
    """Smith form postconditions on random matrices, and dense against sparse invariant factors."""
    rng = random.Random(config.RANDOM_SEED)
    failures = 0
    mismatches = 0
    for _ in range(count):
        rows, cols = rng.randint(1, 12), rng.randint(1, 12)
        dense = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        A = np.array(dense, dtype=object)
        form = smith_normal_form(A)
        ok = (np.array_equal(form.U.dot(A).dot(form.V), form.D) and is_smith_normal_form(form.D)
              and abs(exact_determinant(form.U)) == 1 and abs(exact_determinant(form.V)) == 1)
        failures += not ok
        matrix = SparseIntMatrix.from_dense(dense)
        mismatches += invariant_factors(matrix) != invariant_factors(matrix, dense_threshold=0)
    report.add(f"snf/postconditions-{count}", 0, failures)
    report.add(f"snf/sparse-agrees-{count}", 0, mismatches)


SUITES: Dict[str, Callable[[RunReport], None]] = {
    "nerve-circle": nerve_circle_suite,
    "trivial-smash": trivial_smash_suite,
    "functoriality": functoriality_suite,
    "identities": identities_suite,
    "filtration": filtration_suite,
    "predictions": predictions_suite,
    "coherence": coherence_suite,
    "snf": snf_suite,
}


def run_suite(name: str, report: RunReport) -> RunReport:
    suite = SUITES.get(name)
    if suite is None:
        raise KeyError(name)
    logger.info(f"Running verification suite '{name}'")
    suite(report)
    logger.info(f"Suite '{name}': {sum(c.passed for c in report.checks)}/{len(report.checks)} checks passed")
    return report
