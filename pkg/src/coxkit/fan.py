"""Smooth complete fans.

A fan is stored as its primitive ray generators plus the list of maximal
cones (index sets into the rays).  Smoothness makes every cone simplicial,
so the faces of a cone are just the subsets of its generators.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations, permutations
from math import comb
from pathlib import Path

from .errors import DualityViolation, InputError, InvalidFan, NotAFace
from .linalg import Matrix


@dataclass(frozen=True)
class Fan:
    rank: int
    rays: tuple
    max_cones: tuple
    name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(
            self, "max_cones", tuple(tuple(sorted(int(i) for i in c)) for c in self.max_cones)
        )

    @property
    def n(self) -> int:
        return self.rank

    @property
    def num_rays(self) -> int:
        return len(self.rays)

    def faces(self, dim: int) -> set[tuple]:
        """All ``dim``-element faces (as sorted index tuples)."""
        out = set()
        for cone in self.max_cones:
            out.update(combinations(cone, dim))
        return out

    def is_face(self, indices) -> bool:
        s = set(indices)
        return any(s.issubset(c) for c in self.max_cones)

    def canonical(self) -> "Fan":
        """Same fan with rays sorted lexicographically and cones renumbered and sorted."""
        order = sorted(range(len(self.rays)), key=lambda i: self.rays[i])
        newidx = {old: new for new, old in enumerate(order)}
        cones = sorted(tuple(sorted(newidx[i] for i in c)) for c in self.max_cones)
        return Fan(self.rank, tuple(self.rays[i] for i in order), tuple(cones), self.name)

    def equivalent(self, other: "Fan") -> bool:
        a, b = self.canonical(), other.canonical()
        return (a.rank, a.rays, a.max_cones) == (b.rank, b.rays, b.max_cones)

    def with_name(self, name: str | None) -> "Fan":
        return Fan(self.rank, self.rays, self.max_cones, name)

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "rank": self.rank,
            "rays": [list(r) for r in self.rays],
            "max_cones": [list(c) for c in self.max_cones],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "Fan":
        try:
            return cls(
                rank=int(data["rank"]),
                rays=data["rays"],
                max_cones=data["max_cones"],
                name=data.get("name"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed fan data: {exc!r}") from exc

    @classmethod
    def from_json(cls, text: str) -> "Fan":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
        if not isinstance(data, dict):
            raise InputError("fan JSON must be an object")
        return cls.from_dict(data)

    @classmethod
    def load(cls, path) -> "Fan":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from exc
        return cls.from_json(text)


def _det(vectors) -> int:
    n = len(vectors)
    a = [[Fraction(x) for x in r] for r in vectors]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return int(det)


def validate(f: Fan) -> list[str]:
    """Every violated fan invariant, as human-readable strings (empty means valid)."""
    v = []
    n = f.rank
    for i, r in enumerate(f.rays):
        if len(r) != n:
            v.append(f"ray {i} has length {len(r)}, expected {n}")
            continue
        if reduce(math.gcd, r, 0) != 1:
            v.append(f"ray {i} not primitive")
    seen = {}
    for i, r in enumerate(f.rays):
        if r in seen:
            v.append(f"ray {i} duplicates ray {seen[r]}")
        else:
            seen[r] = i
    if not f.max_cones:
        v.append("no maximal cones")
        return v
    cone_set = set()
    for j, c in enumerate(f.max_cones):
        if c in cone_set:
            v.append(f"max cone {j} {list(c)} listed twice")
        cone_set.add(c)
        if any(i < 0 or i >= len(f.rays) for i in c):
            v.append(f"max cone {j} references a missing ray")
            continue
        if len(set(c)) != n:
            v.append(f"max cone {j} has {len(set(c))} rays, expected {n}")
            continue
        if any(len(f.rays[i]) != n for i in c):
            continue
        d = _det([f.rays[i] for i in c])
        if abs(d) != 1:
            v.append(f"max cone {j} {list(c)} not smooth (det {d})")
    if v:
        return v
    used = set().union(*map(set, f.max_cones))
    for i in range(len(f.rays)):
        if i not in used:
            v.append(f"ray {i} lies in no max cone")
    # pseudo-manifold completeness check
    if n >= 1:
        ridges: dict[tuple, int] = {}
        for c in f.max_cones:
            for ridge in combinations(c, n - 1):
                ridges[ridge] = ridges.get(ridge, 0) + 1
        for ridge, count in sorted(ridges.items()):
            if count == 1:
                v.append(f"ridge {set(ridge) if ridge else '{}'} in one max cone")
            elif count > 2:
                v.append(f"ridge {set(ridge) if ridge else '{}'} in {count} max cones")
        # connectivity through shared ridges
        cones = list(f.max_cones)
        by_ridge: dict[tuple, list[int]] = {}
        for j, c in enumerate(cones):
            for ridge in combinations(c, n - 1):
                by_ridge.setdefault(ridge, []).append(j)
        reached = {0}
        stack = [0]
        while stack:
            j = stack.pop()
            for ridge in combinations(cones[j], n - 1):
                for k in by_ridge[ridge]:
                    if k not in reached:
                        reached.add(k)
                        stack.append(k)
        if len(reached) != len(cones):
            v.append("max-cone adjacency graph is disconnected")
    elif len(f.max_cones) != 1:
        v.append("rank-0 fan must have exactly one max cone")
    return v


def check(f: Fan) -> Fan:
    violations = validate(f)
    if violations:
        raise InvalidFan(violations)
    return f


def cone_counts(f: Fan) -> list[int]:
    """``[|Σ(0)|, |Σ(1)|, ..., |Σ(n)|]``."""
    check(f)
    return [len(f.faces(i)) for i in range(f.rank + 1)]


def betti_from_counts(counts: list[int]) -> list[int]:
    n = len(counts) - 1
    return [
        sum((-1) ** (i - k) * comb(i, k) * counts[n - i] for i in range(k, n + 1))
        for k in range(n + 1)
    ]


def betti(f: Fan) -> list[int]:
    """Even Betti numbers ``b_0..b_n`` from the cone counts."""
    b = betti_from_counts(cone_counts(f))
    if b != b[::-1]:
        raise DualityViolation(f"Betti numbers {b} are not palindromic")
    return b


def star_subdivide(f: Fan, cone) -> Fan:
    """Star subdivision at the cone spanned by the rays ``cone``.

    The new ray is the sum of the cone's generators; for a smooth fan this is
    the blow-up along the orbit closure of the cone.
    """
    check(f)
    tau = tuple(sorted(set(int(i) for i in cone)))
    if len(tau) < 2:
        raise NotAFace(f"cone {list(tau)} needs at least 2 rays to subdivide")
    if not f.is_face(tau):
        raise NotAFace(f"{list(tau)} is not a face of the fan")
    new = [sum(f.rays[i][k] for i in tau) for k in range(f.rank)]
    g = reduce(math.gcd, new, 0)
    new = tuple(x // g for x in new)
    idx = len(f.rays)
    cones = []
    for c in f.max_cones:
        if set(tau).issubset(c):
            for rho in tau:
                cones.append(tuple(sorted((set(c) - {rho}) | {idx})))
        else:
            cones.append(c)
    return check(Fan(f.rank, f.rays + (new,), tuple(cones), None))


def product_fan(fx: Fan, fy: Fan) -> Fan:
    """Fan of ``X × Y``: rays ``(r, 0)`` and ``(0, r')``, cones all pairwise unions."""
    check(fx)
    check(fy)
    nx, ny = fx.rank, fy.rank
    rays = tuple(r + (0,) * ny for r in fx.rays) + tuple((0,) * nx + r for r in fy.rays)
    off = len(fx.rays)
    cones = tuple(cx + tuple(off + i for i in cy) for cx in fx.max_cones for cy in fy.max_cones)
    name = None
    if fx.name and fy.name:
        name = f"{fx.name}x{fy.name}"
    return check(Fan(nx + ny, rays, cones, name))


# -- standard fans ---------------------------------------------------------


def point_fan() -> Fan:
    return Fan(0, (), ((),), "pt")


def projective_space(n: int) -> Fan:
    """P^n: rays e_1..e_n and -(e_1+...+e_n); max cones omit one ray each."""
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays.append(tuple([-1] * n))
    cones = [tuple(sorted(set(range(n + 1)) - {k})) for k in [n, *range(n)]]
    return Fan(n, tuple(rays), tuple(cones), f"P{n}")


def hirzebruch(a: int) -> Fan:
    """F_a with rays u1=(-1,a), u2=(0,1), u3=(1,0), u4=(0,-1).

    With this labelling D_{u1} = D_{u3} and D_{u2} = D_{u4} - a D_{u3}, so
    the last two rays give the basis P = D_{u3}, Q = D_{u4} of the Picard group.
    """
    rays = ((-1, a), (0, 1), (1, 0), (0, -1))
    cones = ((0, 1), (1, 2), (2, 3), (0, 3))
    return Fan(2, rays, cones, f"F{a}")


def isomorphic(f: Fan, g: Fan) -> bool:
    """True if some ``GL_n(Z)`` change of lattice basis carries ``f`` onto ``g``."""
    if f.rank != g.rank or len(f.rays) != len(g.rays) or len(f.max_cones) != len(g.max_cones):
        return False
    n = f.rank
    if n == 0:
        return True
    src = [f.rays[i] for i in f.max_cones[0]]
    # src is a lattice basis, so rays of f have integral coordinates in it
    src_inv = Matrix([list(col) for col in zip(*src)]).inverse()
    coords = [src_inv @ Matrix([[x] for x in r]) for r in f.rays]
    g_rays = {r: i for i, r in enumerate(g.rays)}
    g_cones = {frozenset(c) for c in g.max_cones}
    for cone in g.max_cones:
        for perm in permutations(cone):
            images = []
            for c in coords:
                vec = tuple(
                    sum(c[k, 0] * g.rays[perm[k]][j] for k in range(n)) for j in range(n)
                )
                if vec not in g_rays:
                    break
                images.append(g_rays[vec])
            else:
                if {frozenset(images[i] for i in c) for c in f.max_cones} == g_cones:
                    return True
    return False
