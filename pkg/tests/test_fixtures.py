import json

import pytest

from coxkit import fixtures
from coxkit.fan import isomorphic, validate


@pytest.mark.parametrize("name", sorted(fixtures.BUILDERS))
def test_bundled_json_matches_builder(name):
    built = fixtures.build(name)
    on_disk = json.loads(fixtures.fixture_path(name).read_text(encoding="utf-8"))
    assert on_disk == built.to_dict()
    assert validate(fixtures.load(name)) == []


def test_fixture_scope():
    fans = fixtures.all_fixtures()
    assert len(fans) >= 10
    assert all(f.n <= 3 for f in fans.values())


def test_known_isomorphisms():
    assert isomorphic(fixtures.load("bl1p2"), fixtures.load("f1"))
    assert isomorphic(fixtures.load("p1xp1"), fixtures.load("f0"))
    assert not isomorphic(fixtures.load("f1"), fixtures.load("f0"))
    assert fixtures.example_47_by_subdivision().equivalent(fixtures.load("ex47"))


def test_example_47_literal_rays():
    f = fixtures.load("ex47")
    columns = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1), (-1, 0, 0), (0, -1, 0)]
    assert list(f.rays) == columns
    assert len(f.max_cones) == 8


def test_unknown_fixture():
    from coxkit.errors import InputError

    with pytest.raises(InputError):
        fixtures.load("p9")
    with pytest.raises(InputError):
        fixtures.build("p9")
