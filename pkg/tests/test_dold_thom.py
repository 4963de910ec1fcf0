from math import comb

import pytest

from dold_thom import (EMPTY_KEY, coefficient_map, dold_thom_space, effective_monoid, filtered_union_check,
                       filtration_inclusion, induced_map, is_degenerate, make_configuration,
                       nondegenerate_configurations, push_labels, wedge_comparison)
from exceptions import DepthError, MonoidError, SimplicialError
from monoid import composable_multiset, from_table, sum_multiset
from monoid_library import abc, cyclic, graded_naturals, trivial, truncated_naturals
from simplicial import (assemble, collapse_map, fold_map, identity_map, is_isomorphism, sphere, validate_identities,
                        wedge, wedge_summand)
from tests.oracles import multiset_count


def _z4():
    return from_table([str(i) for i in range(4)], "0",
                      {(str(i), str(j)): str((i + j) % 4) for i in range(4) for j in range(i, 4)}, name="Z/4")


def test_single_label_on_circle():
    space = dold_thom_space(trivial(1), sphere(1, 4))
    assert space.space.level_sizes() == (1, 2, 3, 4, 5)


def test_group_labels_on_circle():
    space = dold_thom_space(cyclic(2), sphere(1, 4))
    assert space.space.level_sizes() == (1, 2, 4, 8, 16)


def test_symmetric_square_of_two_sphere():
    space = dold_thom_space(truncated_naturals(2), sphere(2, 4))
    assert space.space.level_sizes() == tuple(multiset_count(comb(k, 2), 2) for k in range(5))
    assert validate_identities(space.space) == []


def test_point_bound_limits_support():
    X = sphere(1, 3)
    assert dold_thom_space(cyclic(2), X, point_bound=0).space.level_sizes() == (1, 1, 1, 1)
    bounded = dold_thom_space(cyclic(2), X, point_bound=1)
    assert bounded.space.level_sizes() == (1, 2, 3, 4)
    assert bounded.space.name == "Z/2_1[S1]"
    assert bounded.space.metadata["point_bound"] == "1"
    assert dold_thom_space(cyclic(2), X).space.metadata["point_bound"] == "inf"


def test_identities_for_fixture_monoids(fixture_monoid, figure_eight):
    for X in (sphere(1, 3), sphere(2, 3), figure_eight):
        space = dold_thom_space(fixture_monoid, X)
        assert validate_identities(space.space) == []
        assert space.space.basepoints == (EMPTY_KEY,) * 4


def test_faces_merge_labels():
    space = dold_thom_space(abc(), sphere(1, 2))
    key = "[e0.0.1@a;e0.1.1@b]"
    assert key in space.configurations[2]
    # d_1 sends both cells to e0.1; d_0 and d_2 each lose one of them
    assert space.space.faces[2][key] == ("[e0.1@a]", "[e0.1@c]", "[e0.1@b]")


def test_non_composable_labels_are_excluded():
    space = dold_thom_space(abc(), sphere(1, 2))
    assert "[e0.0.1@a;e0.1.1@a]" not in space.configurations[2]
    assert "[e0.0.1@c;e0.1.1@a]" not in space.configurations[2]


def test_push_labels_drops_basepoint_and_zero():
    Z2 = cyclic(2)
    merged = push_labels(Z2, [("x", "1"), ("y", "1"), ("z", "1")], {"x": "p", "y": "p", "z": "*"}.get, "*")
    assert merged == {}


def test_make_configuration_orders_labels():
    X = sphere(1, 2)
    c = make_configuration(X, 2, {"e0.1.1": "b", "e0.0.1": "a"})
    assert c.key == "[e0.0.1@a;e0.1.1@b]"
    with pytest.raises(SimplicialError):
        make_configuration(X, 2, {"*2": "a"})


def test_degeneracy_detection_matches_generic_scan():
    space = dold_thom_space(truncated_naturals(2), sphere(2, 4))
    for k in range(5):
        assert nondegenerate_configurations(space, k) == space.space.nondegenerate(k)
        for key in space.space.levels[k]:
            assert is_degenerate(space, k, key) == (key not in space.space.nondegenerate(k))


@pytest.mark.parametrize("M, X", [
    (truncated_naturals(2), sphere(2, 3)),
    (cyclic(2), sphere(1, 3)),
    (abc(), wedge(sphere(1, 3), 2)),
], ids=["N2-S2", "Z2-S1", "abc-S1vS1"])
def test_faces_push_and_merge_labels(M, X):
    space = dold_thom_space(M, X)
    for k in range(1, space.max_dim + 1):
        for key, c in space.configurations[k].items():
            for i, face_key in enumerate(space.space.faces[k][key]):
                groups = {}
                for x, m in c.labels:
                    y = X.face(k, i, x)
                    if y != X.basepoints[k - 1]:
                        groups.setdefault(y, []).append(m)
                expected = {y: sum_multiset(M, ms) for y, ms in groups.items()}
                expected = {y: m for y, m in expected.items() if m != M.zero}
                face = space.configuration(k - 1, face_key)
                assert dict(face.labels) == expected, (key, i)
                surviving = [m for ms in groups.values() for m in ms]
                assert composable_multiset(M, face.label_multiset) == composable_multiset(M, surviving)
                if composable_multiset(M, surviving):
                    assert sum_multiset(M, face.label_multiset) == sum_multiset(M, surviving)


def test_degeneracies_move_every_label():
    X = sphere(2, 3)
    space = dold_thom_space(truncated_naturals(2), X)
    for k in range(3):
        for key, c in space.configurations[k].items():
            for i, degen_key in enumerate(space.space.degeneracies[k][key]):
                expected = {X.degeneracy(k, i, x): m for x, m in c.labels}
                assert dict(space.configuration(k + 1, degen_key).labels) == expected


def test_identity_induces_identity():
    X = sphere(1, 3)
    space = dold_thom_space(abc(), X)
    assert induced_map(identity_map(X), space).assignment == identity_map(space.space).assignment


def test_fold_sums_labels():
    S1 = sphere(1, 2)
    W = wedge(S1, 2)
    space = dold_thom_space(abc(), W)
    f = induced_map(fold_map(W, S1, 2), space)
    assert f(1, "[c1|e0.1@a;c2|e0.1@b]") == "[e0.1@c]"
    assert f(1, "[c2|e0.1@b]") == "[e0.1@b]"


def test_collapse_discards_labels():
    S1 = sphere(1, 2)
    W = wedge(S1, 2)
    space = dold_thom_space(abc(), W)
    q = collapse_map(W, wedge_summand(W, 1))
    f = induced_map(q, space)
    assert f(1, "[c1|e0.1@a;c2|e0.1@b]") == "[c2|e0.1@b]"
    assert f(1, "[c1|e0.1@c]") == EMPTY_KEY


def test_induced_map_checks_source():
    space = dold_thom_space(abc(), sphere(1, 2))
    with pytest.raises(SimplicialError):
        induced_map(identity_map(sphere(2, 2)), space)


def test_filtration_inclusion():
    X = sphere(2, 3)
    M = truncated_naturals(2)
    small, large = dold_thom_space(M, X, 1), dold_thom_space(M, X, 2)
    f = filtration_inclusion(small, large)
    assert not f.is_levelwise_bijective()
    assert filtration_inclusion(large, dold_thom_space(M, X)).is_levelwise_bijective()
    with pytest.raises(SimplicialError):
        filtration_inclusion(large, small)


@pytest.mark.parametrize("q", [1, 2, 3])
def test_trivial_multiplication_is_a_wedge(q):
    space = dold_thom_space(trivial(q), sphere(2, 3))
    W, f = wedge_comparison(space)
    assert W.metadata["wedge_copies"] == str(q)
    assert is_isomorphism(f)


def test_group_labels_are_not_a_wedge():
    _, f = wedge_comparison(dold_thom_space(cyclic(2), sphere(1, 3)))
    assert not is_isomorphism(f)


def test_coefficient_map():
    X = sphere(1, 2)
    f = coefficient_map(dold_thom_space(_z4(), X), cyclic(2), {"0": "0", "1": "1", "2": "0", "3": "1"})
    assert f(1, "[e0.1@2]") == EMPTY_KEY
    assert f(2, "[e0.0.1@1;e0.1.1@3]") == "[e0.0.1@1;e0.1.1@1]"
    with pytest.raises(MonoidError):
        coefficient_map(dold_thom_space(_z4(), X), cyclic(2), {"0": "0", "1": "1", "2": "1", "3": "1"})


def test_filtered_levels_are_recorded():
    F = graded_naturals(3)
    space = dold_thom_space(F, sphere(1, 2))
    assert space.level_cap == 2
    assert space.space.metadata["level_cap"] == "2"
    assert space.admitted_level[(2, "[e0.0.1@1]")] == 0
    assert space.admitted_level[(2, "[e0.0.1@1;e0.1.1@1]")] == 1
    assert space.admitted_level[(2, "[e0.0.1@1;e0.1.1@2]")] == 2
    capped = dold_thom_space(F, sphere(1, 2), level_cap=1)
    assert "[e0.0.1@1;e0.1.1@2]" not in capped.configurations[2]


def test_filtered_space_is_union_of_levels():
    assert filtered_union_check(graded_naturals(3), sphere(1, 3)) == []
    assert filtered_union_check(graded_naturals(3), sphere(2, 3), point_bound=2) == []


def test_effective_monoid():
    F = graded_naturals(3)
    assert effective_monoid(F) is F.levels[-1]
    assert effective_monoid(F, 0) is F.levels[0]
    with pytest.raises(MonoidError):
        effective_monoid(F, 5)
    with pytest.raises(MonoidError):
        effective_monoid(cyclic(2), 0)


def test_disconnected_base_rejected():
    two_points = assemble("two points", [["a", "b"], ["aa", "bb"]],
                          lambda k, x: [x[0], x[0]], lambda k, x: [x + x], ["a", "aa"])
    with pytest.raises(SimplicialError):
        dold_thom_space(cyclic(2), two_points)


def test_bad_parameters():
    with pytest.raises(SimplicialError):
        dold_thom_space(cyclic(2), sphere(1, 2), point_bound=-1)
    with pytest.raises(DepthError):
        dold_thom_space(cyclic(2), sphere(1, 2), max_dim=3)
