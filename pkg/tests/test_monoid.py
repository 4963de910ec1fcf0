import itertools

import pytest
from hypothesis import given

from exceptions import CompositionError, MonoidError
from models import RawMonoid, SumEntry
from monoid import (ASSOCIATIVITY, ASYMMETRIC, CONFLICTING_ENTRY, DUPLICATE_ELEMENT, MISSING_ZERO, UNIT,
                    UNKNOWN_ELEMENT, VALUE_OUTSIDE_CARRIER, build_monoid, certify, check_homomorphism,
                    composable_multiset, composable_tuples, constant_filtration, filtered_composable, filtered_sum,
                    from_table, is_partial_submonoid, sum_multiset, sum_pair, validate_filtration, validate_monoid)
from monoid_library import SEED_TABLES, abc, cyclic, graded_naturals, pruned_monoid, trivial, truncated_naturals
from tests.oracles import axioms_hold, reduction_results
from tests.strategies import partial_monoids


def _kinds(violations):
    return {v.kind for v in violations}


def test_cyclic_group_is_valid_and_total():
    M = cyclic(3)
    assert M.is_total()
    assert sum_pair(M, "2", "2") == "1"
    assert M.sum_table[("1", "2")] == M.sum_table[("2", "1")] == "0"


def test_reverse_entry_is_implied():
    M = from_table(["0", "a", "b", "c"], "0", {("b", "a"): "c"})
    assert sum_pair(M, "a", "b") == "c"


def test_unit_sums_are_implied():
    M = build_monoid(RawMonoid(["0", "x"], "0", []))
    assert sum_pair(M, "0", "x") == "x"
    assert sum_pair(M, "x", "x") is None


def test_asymmetric_entry_names_the_pair():
    raw = RawMonoid(["0", "a", "b", "c", "d"], "0", [SumEntry("a", "b", "c"), SumEntry("b", "a", "d")])
    violations, monoid = validate_monoid(raw)
    assert monoid is None
    [asym] = [v for v in violations if v.kind == ASYMMETRIC]
    assert asym.where == ("a", "b")
    assert "a + b = c" in asym.detail


def test_unit_violation():
    raw = RawMonoid(["0", "a", "b"], "0", [SumEntry("0", "a", "b")])
    violations, _ = validate_monoid(raw)
    assert UNIT in _kinds(violations)


def test_missing_associate_is_reported():
    raw = RawMonoid(["0", "a", "b", "c"], "0", [SumEntry("a", "a", "b"), SumEntry("a", "b", "c")])
    assert not validate_monoid(raw)[0]
    # b + (b + a) = d but (b + b) + a is undefined
    raw = RawMonoid(["0", "a", "b", "c", "d"], "0", [SumEntry("a", "b", "c"), SumEntry("b", "b", "d"),
                                                       SumEntry("c", "b", "d")])
    violations, _ = validate_monoid(raw)
    assert ASSOCIATIVITY in _kinds(violations)


@pytest.mark.parametrize("raw, kind", [
    (RawMonoid(["0", "a", "a"], "0", []), DUPLICATE_ELEMENT),
    (RawMonoid(["a", "b"], "0", []), MISSING_ZERO),
    (RawMonoid(["0", "a"], "0", [SumEntry("a", "z", "a")]), UNKNOWN_ELEMENT),
    (RawMonoid(["0", "a"], "0", [SumEntry("a", "a", "q")]), VALUE_OUTSIDE_CARRIER),
    (RawMonoid(["0", "a", "b"], "0", [SumEntry("a", "a", "b"), SumEntry("a", "a", "0")]), CONFLICTING_ENTRY),
])
def test_structural_violations(raw, kind):
    violations, monoid = validate_monoid(raw)
    assert monoid is None
    assert kind in _kinds(violations)


def test_build_monoid_raises():
    with pytest.raises(MonoidError):
        build_monoid(RawMonoid(["a"], "0", []))


def test_abc_composability():
    M = abc()
    assert composable_multiset(M, ["a", "b"])
    assert composable_multiset(M, ["0", "c", "0"])
    assert not composable_multiset(M, ["a", "a"])
    assert not composable_multiset(M, ["a", "b", "c"])
    assert sum_multiset(M, ["b", "a"]) == "c"
    assert sum_multiset(M, []) == "0"
    with pytest.raises(CompositionError):
        sum_multiset(M, ["c", "c"])


def test_unknown_element_in_multiset():
    with pytest.raises(MonoidError):
        composable_multiset(abc(), ["a", "z"])


def test_composable_tuples_abc():
    tuples = composable_tuples(abc(), 2)
    assert len(tuples) == 9
    assert ("a", "b") in [t.entries for t in tuples]
    assert ("a", "a") not in [t.entries for t in tuples]
    assert all(t.certified for t in tuples)


def test_composable_tuples_of_a_group_are_all_tuples():
    assert len(composable_tuples(cyclic(2), 3)) == 8
    assert [t.entries for t in composable_tuples(cyclic(2), 0)] == [()]


def test_composable_tuples_negative_length():
    with pytest.raises(MonoidError):
        composable_tuples(abc(), -1)


def test_certify():
    assert certify(abc(), ["a", "b"]).certified
    assert not certify(abc(), ["c", "a"]).certified


def test_truncated_naturals_composability():
    M = truncated_naturals(3)
    assert composable_multiset(M, ["1", "1", "1"])
    assert sum_multiset(M, ["1", "2"]) == "3"
    assert not composable_multiset(M, ["2", "2"])


def test_fixture_tables_pass_oracle(fixture_monoid):
    M = fixture_monoid
    table = dict(M.sum_table)
    assert axioms_hold(M.elements, M.zero, table)


def _multisets(M, max_size):
    for size in range(2, max_size + 1):
        yield from itertools.combinations_with_replacement(M.nonzero, size)


@given(M=partial_monoids())
def test_generated_tables_pass_oracle(M):
    assert axioms_hold(M.elements, M.zero, dict(M.sum_table))


@given(M=partial_monoids())
def test_reduction_orders_agree_on_generated_monoids(M):
    table = dict(M.sum_table)
    for items in _multisets(M, 4):
        results = reduction_results(table, items)
        composable = composable_multiset(M, items)
        assert composable == (None not in results)
        if composable:
            assert results == {sum_multiset(M, items)}


def _assert_closed_under_parts(M, max_size):
    for items in _multisets(M, max_size):
        if not composable_multiset(M, items):
            continue
        total = sum_multiset(M, items)
        for size in range(len(items) + 1):
            for picked in itertools.combinations(range(len(items)), size):
                part = [items[i] for i in picked]
                rest = [items[i] for i in range(len(items)) if i not in picked]
                assert composable_multiset(M, part), (M.name, items, part)
                merged = rest + [sum_multiset(M, part)]
                assert composable_multiset(M, merged), (M.name, items, part)
                assert sum_multiset(M, merged) == total


def test_parts_of_composable_multisets(fixture_monoid):
    _assert_closed_under_parts(fixture_monoid, 4)


@pytest.mark.parametrize("M", [cyclic(4), truncated_naturals(3), trivial(3), abc()], ids=lambda M: M.name)
def test_parts_of_composable_multisets_in_library_monoids(M):
    _assert_closed_under_parts(M, 4)


@given(M=partial_monoids(max_size=5))
def test_parts_of_composable_multisets_in_generated_monoids(M):
    _assert_closed_under_parts(M, 4)


def test_pruning_keeps_torsion_and_idempotents():
    Z4 = pruned_monoid(4, {(i, j): SEED_TABLES["cyclic"](i, j, 4) for i in range(1, 4) for j in range(i, 4)})
    assert Z4.is_total()
    assert sum_multiset(Z4, ["1", "3"]) == "0"
    semilattice = pruned_monoid(3, {(1, 1): 1, (1, 2): 2, (2, 2): 2})
    assert sum_multiset(semilattice, ["1", "1", "2", "2"]) == "2"
    pruned = pruned_monoid(3, {(1, 1): 2, (2, 2): 1, (1, 2): 1})
    assert axioms_hold(pruned.elements, pruned.zero, dict(pruned.sum_table))
    assert len(pruned.sums) < 6


def test_filtration_levels():
    F = graded_naturals(3)
    assert filtered_composable(F, ["1", "1"]) == (True, 1)
    assert filtered_composable(F, ["1", "2"]) == (True, 2)
    assert filtered_composable(F, ["2", "2"]) == (False, None)
    assert filtered_sum(F, ["1", "1", "1"]) == "3"
    with pytest.raises(CompositionError):
        filtered_sum(F, ["3", "1"])


def test_filtration_must_be_monotone():
    violations = validate_filtration([truncated_naturals(2), trivial(2)])
    assert violations


def test_filtration_union_and_constant():
    F = graded_naturals(3)
    union = F.union()
    assert union.sum_table[("1", "2")] == "3"
    C = constant_filtration(cyclic(2), 3)
    assert len(C.levels) == 3
    assert filtered_composable(C, ["1", "1"]) == (True, 0)


def test_homomorphism_check():
    Z4 = from_table([str(i) for i in range(4)], "0",
                    {(str(i), str(j)): str((i + j) % 4) for i in range(4) for j in range(i, 4)}, name="Z/4")
    Z2 = cyclic(2)
    assert check_homomorphism(Z4, Z2, {"0": "0", "1": "1", "2": "0", "3": "1"}) == []
    assert check_homomorphism(Z4, Z2, {"0": "0", "1": "1", "2": "1", "3": "1"})
    assert check_homomorphism(Z4, Z2, {"0": "0"})


def test_partial_submonoid():
    assert is_partial_submonoid(truncated_naturals(1), truncated_naturals(3))
    assert not is_partial_submonoid(truncated_naturals(3), truncated_naturals(1))
    assert not is_partial_submonoid(cyclic(2), truncated_naturals(2))
