"""Rational surfaces as iterated point blow-ups of P^2 or a Hirzebruch surface.

Only the number of blow-ups matters for the Chow ring: the Picard lattice
is ``<H> + <R_1..R_t>`` (or ``<P, Q> + <R_1..R_t>``) with the exceptional
classes orthogonal to everything else and ``R_i^2 = -1``, whatever the
positions of the points (infinitely near ones included).
"""

from __future__ import annotations

from dataclasses import dataclass

from .chow import ChowRing
from .coxeter import CoxeterReport, coxeter_report
from .errors import InputError
from .linalg import Matrix


@dataclass(frozen=True)
class RationalSurfaceModel:
    base: str = "P2"
    t: int = 0
    a: int = 0

    def __post_init__(self):
        base = {"p2": "P2", "hirzebruch": "Hirzebruch", "f": "Hirzebruch"}.get(str(self.base).lower())
        if base is None:
            raise InputError(f"unknown base surface {self.base!r}")
        object.__setattr__(self, "base", base)
        if int(self.t) < 0:
            raise InputError("number of blow-ups must be non-negative")
        if base == "Hirzebruch" and int(self.a) < 0:
            raise InputError("Hirzebruch parameter must be non-negative")
        if base == "P2":
            object.__setattr__(self, "a", 0)

    @property
    def picard_rank(self) -> int:
        return self.t + (1 if self.base == "P2" else 2)

    @property
    def name(self) -> str:
        b = "P2" if self.base == "P2" else f"F{self.a}"
        if self.t == 0:
            return b
        return f"{b} blown up in {self.t} point{'s' if self.t > 1 else ''}"

    @classmethod
    def from_dict(cls, data: dict) -> "RationalSurfaceModel":
        try:
            base = data["base"]
            return cls(base=base["type"], a=int(base.get("a", 0)), t=int(data.get("blowups", 0)))
        except (KeyError, TypeError, AttributeError, ValueError) as exc:
            raise InputError(f"malformed surface spec: {exc!r}") from exc

    def to_dict(self) -> dict:
        base = {"type": self.base}
        if self.base == "Hirzebruch":
            base["a"] = self.a
        return {"base": base, "blowups": self.t}


class SurfaceChow(ChowRing):
    """``CH*`` of a rational surface in the basis ``[X], H|P,Q, R_1..R_t, [pt]``."""

    def __init__(self, model: RationalSurfaceModel, labels, form: Matrix, canonical_coords):
        products = {(0, 0, 0, 0): (1,), (0, 0, 2, 0): (1,)}
        pic = len(labels)
        for b in range(pic):
            products[(0, 0, 1, b)] = tuple(int(k == b) for k in range(pic))
        for a in range(pic):
            for b in range(pic):
                products[(1, a, 1, b)] = (form[a, b],)
        super().__init__(2, [["[X]"], labels, ["[pt]"]], products)
        self.model = model
        self.intersection_form = form
        self._point = self.homogeneous(2, (1,))
        self._canonical = self.homogeneous(1, canonical_coords)


def build_surface_chow(model: RationalSurfaceModel) -> SurfaceChow:
    t = model.t
    if model.base == "P2":
        labels = ["H"] + [f"R{i}" for i in range(1, t + 1)]
        form = [[1] + [0] * t]
        canonical = [-3] + [1] * t
    else:
        labels = ["P", "Q"] + [f"R{i}" for i in range(1, t + 1)]
        form = [[0, 1] + [0] * t, [1, model.a] + [0] * t]
        canonical = [model.a - 2, -2] + [1] * t
    k0 = len(form)
    for i in range(t):
        form.append([0] * (k0 + i) + [-1] + [0] * (t - i - 1))
    return SurfaceChow(model, labels, Matrix(form), canonical)


def psi_matrix(model: RationalSurfaceModel) -> Matrix:
    """Multiplication by ``ch(omega_X) = 1 + K + K^2/2`` (rows are images of basis elements)."""
    ring = build_surface_chow(model)
    return ring.multiplication_operator(ring.chern_character(ring.canonical_class()))


def canonical_self_intersection(model: RationalSurfaceModel) -> int:
    ring = build_surface_chow(model)
    k = ring.canonical_class()
    return ring.degree(ring.multiply(k, k))


def surface_lefschetz(model: RationalSurfaceModel) -> bool:
    """For a surface ``K`` is a Lefschetz element exactly when ``K^2 != 0``."""
    return canonical_self_intersection(model) != 0


def surface_coxeter(model: RationalSurfaceModel) -> CoxeterReport:
    return coxeter_report(build_surface_chow(model))
