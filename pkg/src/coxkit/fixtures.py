"""Bundled fan fixtures.

Every fixture is built from P^n and Hirzebruch fans by products and star
subdivisions; the JSON copies under ``fixtures/`` are what the CLI reads and
``tests/test_fixtures.py`` keeps them in sync with the builders here.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .errors import InputError
from .fan import Fan, hirzebruch, product_fan, projective_space, star_subdivide


def _blowup_p2(k: int) -> Fan:
    # torus-fixed points of P2 are the cones {0,1}, {1,2}, {0,2}
    f = projective_space(2)
    for cone in [(0, 1), (1, 2), (0, 2)][:k]:
        f = star_subdivide(f, cone)
    return f


def _example_47() -> Fan:
    # blow-up of P3 at two torus-fixed points, rays and cones as printed
    rays = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1), (-1, 0, 0), (0, -1, 0))
    cones = (
        (0, 1, 2), (0, 1, 3), (1, 3, 4), (2, 3, 4),
        (1, 2, 4), (0, 2, 5), (2, 3, 5), (0, 3, 5),
    )
    return Fan(3, rays, cones)


def example_47_by_subdivision() -> Fan:
    """Example fan rebuilt by subdividing the two P3 cones opposite e1 and e2."""
    return star_subdivide(star_subdivide(projective_space(3), (1, 2, 3)), (0, 2, 3))


BUILDERS = {
    "p1": lambda: projective_space(1),
    "p2": lambda: projective_space(2),
    "p3": lambda: projective_space(3),
    "p1xp1": lambda: product_fan(projective_space(1), projective_space(1)),
    "f0": lambda: hirzebruch(0),
    "f1": lambda: hirzebruch(1),
    "f2": lambda: hirzebruch(2),
    "f3": lambda: hirzebruch(3),
    "bl1p2": lambda: _blowup_p2(1),
    "bl2p2": lambda: _blowup_p2(2),
    "bl3p2": lambda: _blowup_p2(3),
    "ex47": _example_47,
    "p2xp1": lambda: product_fan(projective_space(2), projective_space(1)),
    "p1xp1xp1": lambda: product_fan(
        product_fan(projective_space(1), projective_space(1)), projective_space(1)
    ),
    "bl1p2xp1": lambda: product_fan(_blowup_p2(1), projective_space(1)),
    "bl2p2xp1": lambda: product_fan(_blowup_p2(2), projective_space(1)),
    "bl3p2xp1": lambda: product_fan(_blowup_p2(3), projective_space(1)),
    # blow-up of P3 at a point is P(O + O(1)) over P2
    "blpt_p3": lambda: star_subdivide(projective_space(3), (0, 1, 2)),
    # blow-up of P3 along a line is P(O + O + O(1)) over P1
    "blline_p3": lambda: star_subdivide(projective_space(3), (0, 1)),
}

NAMES = {
    "p1": "P1",
    "p2": "P2",
    "p3": "P3",
    "p1xp1": "P1xP1",
    "f0": "F0",
    "f1": "F1",
    "f2": "F2",
    "f3": "F3",
    "bl1p2": "P2 blown up in 1 point",
    "bl2p2": "P2 blown up in 2 points",
    "bl3p2": "P2 blown up in 3 points",
    "ex47": "P3 blown up in 2 torus-fixed points",
    "p2xp1": "P2xP1",
    "p1xp1xp1": "P1xP1xP1",
    "bl1p2xp1": "P2(1)xP1",
    "bl2p2xp1": "P2(2)xP1",
    "bl3p2xp1": "P2(3)xP1",
    "blpt_p3": "P(O+O(1)) over P2",
    "blline_p3": "P(O+O+O(1)) over P1",
}


def build(name: str) -> Fan:
    try:
        return BUILDERS[name]().with_name(NAMES[name])
    except KeyError:
        raise InputError(f"unknown fixture {name!r}") from None


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("coxkit") / "fixtures" / f"{name}.json"))


def load(name: str) -> Fan:
    if name not in BUILDERS:
        raise InputError(f"unknown fixture {name!r}")
    return Fan.load(fixture_path(name))


def all_fixtures() -> dict[str, Fan]:
    return {name: load(name) for name in BUILDERS}


def write_all(directory: Path | None = None) -> None:
    directory = Path(directory) if directory else fixture_path("p1").parent
    for name in BUILDERS:
        fan = build(name)
        (directory / f"{name}.json").write_text(json.dumps(fan.to_dict()) + "\n", encoding="utf-8")
