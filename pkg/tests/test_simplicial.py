import pytest

from exceptions import DepthError, SimplicialError
from models import SimplicialSet
from simplicial import (BASEPOINT, FACE_DEGEN_HIGH, MAP_FACE, STRUCTURE, assemble, collapse_map, compose_maps,
                        copy_inclusion, fold_map, generate_subcomplex, identity_map, is_connected, is_isomorphism,
                        make_map, point, require_depth, sphere, validate_identities, validate_map, wedge,
                        wedge_summand)
from tests.oracles import sphere_level_size


def _with_face(X: SimplicialSet, k: int, x: str, faces) -> SimplicialSet:
    tables = [dict(t) for t in X.faces]
    tables[k][x] = tuple(faces)
    return SimplicialSet(X.name, X.levels, tuple(tables), X.degeneracies, X.basepoints)


@pytest.mark.parametrize("n, depth", [(1, 3), (2, 4), (3, 4)])
def test_sphere_level_sizes(n, depth):
    X = sphere(n, depth)
    assert X.level_sizes() == tuple(sphere_level_size(n, k) for k in range(depth + 1))
    assert validate_identities(X) == []


def test_circle_sizes_and_cells():
    S1 = sphere(1, 3)
    assert S1.level_sizes() == (1, 2, 3, 4)
    assert S1.faces[2]["e0.0.1"] == ("e0.1", "e0.1", "*1")
    assert S1.degeneracies[1]["e0.1"] == ("e0.0.1", "e0.1.1")


def test_sphere_nondegenerate_simplices():
    S2 = sphere(2, 4)
    assert [len(S2.nondegenerate(k)) for k in range(5)] == [1, 0, 1, 0, 0]


@pytest.mark.parametrize("n, depth", [(0, 2), (3, 2)])
def test_sphere_rejects_bad_parameters(n, depth):
    with pytest.raises(SimplicialError):
        sphere(n, depth)


def test_point():
    P = point(3)
    assert P.level_sizes() == (1, 1, 1, 1)
    assert validate_identities(P) == []


def test_wedge_levels_and_identities(figure_eight):
    assert figure_eight.level_sizes() == (1, 3, 5, 7)
    assert validate_identities(figure_eight) == []
    assert figure_eight.metadata["wedge_copies"] == "2"


def test_corrupted_face_is_reported():
    X = _with_face(sphere(1, 2), 2, "e0.0.1", ["e0.1", "e0.1", "e0.1"])
    violations = validate_identities(X)
    assert FACE_DEGEN_HIGH in {v.kind for v in violations}


def test_basepoint_face_must_be_basepoint():
    X = _with_face(sphere(1, 2), 2, "*2", ["e0.1", "*1", "*1"])
    assert BASEPOINT in {v.kind for v in validate_identities(X)}


def test_face_to_missing_simplex_is_structural():
    X = _with_face(sphere(1, 2), 1, "e0.1", ["nowhere", "*0"])
    assert {v.kind for v in validate_identities(X)} == {STRUCTURE}


def test_connectedness():
    assert is_connected(sphere(2, 3))
    two_points = assemble("two points", [["a", "b"]], lambda k, x: [], lambda k, x: [], ["a"])
    assert not is_connected(two_points)


def test_require_depth():
    require_depth(sphere(1, 3), 3)
    with pytest.raises(DepthError):
        require_depth(sphere(1, 3), 4)


def test_fold_after_inclusion_is_identity():
    S1 = sphere(1, 3)
    W = wedge(S1, 2)
    fold = fold_map(W, S1, 2)
    for copy in (1, 2):
        composite = compose_maps(fold, copy_inclusion(S1, W, copy))
        assert composite.assignment == identity_map(S1).assignment
    assert validate_map(fold) == []
    assert not is_isomorphism(fold)


def test_bad_map_is_reported():
    S1 = sphere(1, 2)
    f = make_map(S1, S1, lambda k, x: S1.basepoints[k] if x == "e0.1" else x)
    assert MAP_FACE in {v.kind for v in validate_map(f)}


def test_make_map_depth_mismatch():
    with pytest.raises(SimplicialError):
        make_map(sphere(1, 2), sphere(1, 3), lambda k, x: x)


def test_subcomplex_generation():
    S2 = sphere(2, 4)
    generated = generate_subcomplex(S2, [(2, "e0.1.2")])
    assert tuple(len(level) for level in generated) == S2.level_sizes()
    only_base = generate_subcomplex(S2, [])
    assert tuple(len(level) for level in only_base) == (1, 1, 1, 1, 1)


def test_collapse_one_wedge_summand():
    S1 = sphere(1, 3)
    W = wedge(S1, 2)
    q = collapse_map(W, wedge_summand(W, 1))
    assert q.target.level_sizes() == S1.level_sizes()
    assert validate_identities(q.target) == []
    assert validate_map(q) == []


def test_collapse_rejects_open_subcomplex():
    S1 = sphere(1, 2)
    with pytest.raises(SimplicialError):
        collapse_map(S1, [{"*0"}, {"*1", "e0.1"}, {"*2"}])
