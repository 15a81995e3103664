import shutil

import pytest

from cayley_census import groupdata as gd
from cayley_census.perm import Permutation

EXPECTED = {
    "M11.deg11": 7920, "M11.deg12": 7920, "M11.deg24": 7920,
    "M12.deg12": 95040, "M12.deg24": 95040, "M12.2.deg24": 190080,
    "M24.deg24": 244823040, "A11.deg11": 19958400,
    "A12.deg12": 239500800, "S12.deg12": 479001600,
}


def test_every_shipped_group_has_its_order():
    orders = gd.validate_catalog()
    assert orders == EXPECTED


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_transitivity_matches_catalog(name):
    spec = gd.load_group(name)
    assert spec.group.is_transitive() == gd.CATALOG[name].transitive
    assert spec.degree == gd.CATALOG[name].degree


def test_unknown_group():
    with pytest.raises(gd.UnknownGroupError):
        gd.load_group("J1.deg266")


def test_round_trip(tmp_path):
    gens = [Permutation.from_cycles(5, (1, 2, 3, 4, 5)), Permutation.from_cycles(5, (1, 2))]
    path = tmp_path / "s5.gens"
    gd.write_generator_file(path, gens, 120, comments=["symmetric group"])
    spec = gd.load_user_group(path)
    assert spec.group.order() == 120
    assert spec.generators == gens
    assert spec.comments == ["symmetric group"]


def test_crlf_accepted():
    gf = gd.parse_generator_text("degree 3\r\norder 6\r\n2 3 1\r\n2 1 3\r\n")
    assert gf.degree == 3 and len(gf.generators) == 2


@pytest.mark.parametrize("text,line", [
    ("order 6\n", 1),
    ("degree 3\norder six\n", 2),
    ("degree 3\norder 6\n1 2\n", 3),
    ("degree 3\norder 6\n1 1 2\n", 3),
    ("degree 3\norder 6\n2 3 1\n1 x 3\n", 4),
])
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(gd.GeneratorParseError) as err:
        gd.parse_generator_text(text, "f.gens")
    assert err.value.line == line
    assert str(err.value).startswith(f"f.gens:{line}:")


def test_wrong_order_rejected(tmp_path):
    (tmp_path / "bad.gens").write_text("degree 3\norder 5\n2 3 1\n2 1 3\n")
    with pytest.raises(gd.OrderMismatchError):
        gd.load_user_group(tmp_path / "bad.gens")


def test_data_directory_override(tmp_path, monkeypatch):
    shutil.copytree(gd.data_dir(), tmp_path / "data")
    monkeypatch.setenv(gd.DATA_ENV, str(tmp_path / "data"))
    gd.clear_cache()
    try:
        assert gd.data_dir() == tmp_path / "data"
        assert gd.load_group("M11.deg11").group.order() == 7920
        # a tampered file in the override directory is caught
        f = tmp_path / "data" / "M11.deg11.gens"
        f.write_text(f.read_text().replace("order 7920", "order 7921"))
        gd.clear_cache()
        with pytest.raises(gd.GroupDataError):
            gd.load_group("M11.deg11")
    finally:
        monkeypatch.delenv(gd.DATA_ENV)
        gd.clear_cache()
