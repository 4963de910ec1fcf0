import pytest

from dold_thom import dold_thom_space
from exceptions import ParseError
from interchange import MAGIC, load_simplicial_set, parse_simplicial_set, save_simplicial_set, write_simplicial_set
from monoid_library import abc, cyclic, truncated_naturals
from nerve import classifying_space
from simplicial import point, sphere, validate_identities, wedge


@pytest.mark.parametrize("build", [
    lambda: sphere(2, 3),
    lambda: wedge(sphere(1, 2), 3),
    lambda: point(2),
    lambda: classifying_space(abc(), 3),
    lambda: dold_thom_space(truncated_naturals(2), sphere(1, 3)).space,
])
def test_round_trip_is_exact(build):
    X = build()
    text = write_simplicial_set(X)
    parsed = parse_simplicial_set(text)
    assert parsed == X
    assert dict(parsed.metadata) == dict(X.metadata)
    assert write_simplicial_set(parsed) == text
    assert validate_identities(parsed) == []


def test_file_round_trip(tmp_path):
    X = dold_thom_space(cyclic(2), sphere(1, 3)).space
    path = str(tmp_path / "z2_circle.sset")
    save_simplicial_set(X, path)
    assert load_simplicial_set(path) == X
    with open(path, "r", encoding="utf-8") as f:
        assert f.readline().strip() == MAGIC


def test_header_is_required():
    with pytest.raises(ParseError) as e:
        parse_simplicial_set("name S\nmax_dim 0\n", "x.sset")
    assert e.value.line_number == 1


def test_unknown_record_reports_line():
    text = write_simplicial_set(point(1)).replace("max_dim 1\n", "max_dim 1\ncolour 0 red\n")
    with pytest.raises(ParseError) as e:
        parse_simplicial_set(text, "point.sset")
    assert e.value.line_number == 4
    assert "point.sset:4" in str(e.value)


def test_face_arity_is_checked():
    text = write_simplicial_set(sphere(1, 1)).replace("face 1 e0.1 *0 *0", "face 1 e0.1 *0")
    with pytest.raises(ParseError):
        parse_simplicial_set(text)


def test_missing_level_is_reported():
    lines = [line for line in write_simplicial_set(point(1)).splitlines() if not line.startswith("level 1")]
    with pytest.raises(ParseError):
        parse_simplicial_set("\n".join(lines))


def test_level_outside_range():
    text = write_simplicial_set(point(1)) + "basepoint 5 *5\n"
    with pytest.raises(ParseError):
        parse_simplicial_set(text)


def test_missing_file():
    with pytest.raises(ParseError):
        load_simplicial_set("/nonexistent/file.sset")
