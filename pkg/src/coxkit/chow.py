"""Rational Chow rings of smooth complete toric varieties.

``CH*(X)_Q`` is presented as ``Q[x_rho] / (SR + linear relations)`` and
built degree by degree: span the degree-``d`` monomials whose support is a
cone, quotient by all degree-``d`` multiples of the linear relations, and
keep the standard monomials (those that are not leading terms in degrevlex
order with ``x_0 > x_1 > ...``) as the basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import BettiMismatch, DimensionMismatch, NotDegreeOne, VerificationError
from .fan import Fan, betti, check
from .linalg import Matrix, Rational, _norm, format_rational, row_reduce, to_rational


@dataclass(frozen=True)
class ChowClass:
    """Element of a graded ring, stored as one coordinate vector per degree."""

    parts: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "parts", tuple(tuple(to_rational(x) for x in p) for p in self.parts)
        )

    def part(self, d: int) -> tuple:
        return self.parts[d]

    def _check(self, other: "ChowClass"):
        if [len(p) for p in self.parts] != [len(p) for p in other.parts]:
            raise DimensionMismatch("classes live in different rings")

    def __add__(self, other: "ChowClass") -> "ChowClass":
        self._check(other)
        return ChowClass(
            tuple(tuple(a + b for a, b in zip(p, q)) for p, q in zip(self.parts, other.parts))
        )

    def __sub__(self, other: "ChowClass") -> "ChowClass":
        return self + (-other)

    def __neg__(self) -> "ChowClass":
        return ChowClass(tuple(tuple(-a for a in p) for p in self.parts))

    def __mul__(self, c) -> "ChowClass":
        if isinstance(c, ChowClass):
            raise TypeError("use ChowRing.multiply for ring products")
        c = to_rational(c)
        return ChowClass(tuple(tuple(c * a for a in p) for p in self.parts))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(x == 0 for p in self.parts for x in p)

    def support_degrees(self) -> list[int]:
        return [d for d, p in enumerate(self.parts) if any(x != 0 for x in p)]

    def is_homogeneous(self, d: int) -> bool:
        return all(e == d for e in self.support_degrees())

    def flat(self) -> list[Rational]:
        return [x for p in self.parts for x in p]

    def to_json(self) -> list[list[str]]:
        return [[format_rational(x) for x in p] for p in self.parts]


class ChowRing:
    """Finite-dimensional graded commutative ring ``CH^0 + ... + CH^n`` over Q.

    ``products[(i, a, j, b)]`` holds the coordinates (in degree ``i + j``) of
    the product of basis element ``a`` of degree ``i`` with basis element
    ``b`` of degree ``j``; only ``i <= j`` keys are stored.
    """

    def __init__(self, n, labels, products, canonical=None, point_class=None):
        self.n = n
        self.labels = [list(ls) for ls in labels]
        self.products = products
        self._canonical = canonical
        self._point = point_class

    @property
    def dims(self) -> list[int]:
        return [len(ls) for ls in self.labels]

    @property
    def betti(self) -> list[int]:
        return self.dims

    @property
    def rank(self) -> int:
        return sum(self.dims)

    @property
    def flat_labels(self) -> list[str]:
        return [lab for ls in self.labels for lab in ls]

    def zero(self) -> ChowClass:
        return ChowClass(tuple((0,) * d for d in self.dims))

    def one(self) -> ChowClass:
        return self.basis(0, 0)

    def basis(self, d: int, i: int) -> ChowClass:
        return ChowClass(
            tuple(tuple(int(e == d and k == i) for k in range(dim)) for e, dim in enumerate(self.dims))
        )

    def homogeneous(self, d: int, coords) -> ChowClass:
        coords = tuple(coords)
        if len(coords) != self.dims[d]:
            raise DimensionMismatch(f"degree {d} needs {self.dims[d]} coordinates")
        return ChowClass(
            tuple(coords if e == d else (0,) * dim for e, dim in enumerate(self.dims))
        )

    def from_flat(self, values) -> ChowClass:
        values = list(values)
        parts, pos = [], 0
        for dim in self.dims:
            parts.append(tuple(values[pos : pos + dim]))
            pos += dim
        return ChowClass(tuple(parts))

    @property
    def point_class(self) -> ChowClass:
        return self._point

    def canonical_class(self) -> ChowClass:
        if self._canonical is None:
            raise VerificationError("ring has no canonical class attached")
        return self._canonical

    def degree(self, c: ChowClass) -> Rational:
        """Coefficient of ``c``'s top-degree part relative to the point class."""
        top = c.part(self.n)
        pt = self._point.part(self.n)
        return _norm(Fraction(top[0]) / pt[0])

    def _check(self, c: ChowClass):
        if [len(p) for p in c.parts] != self.dims:
            raise DimensionMismatch("class does not belong to this ring")

    def multiply(self, a: ChowClass, b: ChowClass) -> ChowClass:
        self._check(a)
        self._check(b)
        out = [[0] * dim for dim in self.dims]
        for i, pa in enumerate(a.parts):
            for x, ca in enumerate(pa):
                if ca == 0:
                    continue
                for j in range(0, self.n - i + 1):
                    for y, cb in enumerate(b.parts[j]):
                        if cb == 0:
                            continue
                        key = (i, x, j, y) if i <= j else (j, y, i, x)
                        prod = self.products[key]
                        target = out[i + j]
                        c = ca * cb
                        for k, v in enumerate(prod):
                            if v:
                                target[k] += c * v
        return ChowClass(tuple(tuple(p) for p in out))

    def power(self, a: ChowClass, k: int) -> ChowClass:
        result = self.one()
        for _ in range(k):
            result = self.multiply(result, a)
        return result

    def chern_character(self, d: ChowClass) -> ChowClass:
        """``1 + D + D^2/2! + ... + D^n/n!`` for a divisor class ``D``."""
        self._check(d)
        if not d.is_homogeneous(1):
            raise NotDegreeOne("Chern character needs a degree-1 class")
        total = self.one()
        term = self.one()
        for k in range(1, self.n + 1):
            term = self.multiply(term, d)
            total = total + term * Fraction(1, factorial(k))
        return total

    def multiplication_operator(self, c: ChowClass) -> Matrix:
        """Matrix of ``x -> x . c`` on the total basis (degree-major order).

        Row ``i`` holds the coordinates of ``basis_i . c``, which makes the
        operator of a class with nonzero degree-0 part upper triangular.
        """
        rows = []
        for d, dim in enumerate(self.dims):
            for i in range(dim):
                rows.append(self.multiply(self.basis(d, i), c).flat())
        return Matrix(rows, cols=self.rank)

    def multiplication_map(self, c: ChowClass, source: int, target: int) -> Matrix:
        """Matrix of ``x -> x . c`` from ``CH^source`` to ``CH^target`` (rows are images)."""
        rows = []
        for i in range(self.dims[source]):
            rows.append(self.multiply(self.basis(source, i), c).part(target))
        return Matrix(rows, cols=self.dims[target])

    def format_class(self, c: ChowClass) -> str:
        terms = []
        for d, p in enumerate(c.parts):
            for k, x in enumerate(p):
                if x == 0:
                    continue
                lab = self.labels[d][k]
                coef = format_rational(x)
                if lab == "1":
                    terms.append(coef)
                elif x == 1:
                    terms.append(lab)
                elif x == -1:
                    terms.append(f"-{lab}")
                else:
                    terms.append(f"{coef}*{lab}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")


def _degrevlex_key(e: tuple) -> tuple:
    # ascending key == ascending degrevlex for x_0 > x_1 > ... at fixed degree
    return tuple(-x for x in reversed(e))


def _monomial_label(e: tuple) -> str:
    if not any(e):
        return "1"
    parts = []
    for i, x in enumerate(e):
        if x == 1:
            parts.append(f"D{i}")
        elif x > 1:
            parts.append(f"D{i}^{x}")
    return "*".join(parts)


def _compositions(total: int, k: int):
    if k == 1:
        yield (total,)
        return
    for first in range(1, total - k + 2):
        for rest in _compositions(total - first, k - 1):
            yield (first,) + rest


class ToricChowRing(ChowRing):
    """Chow ring of a smooth complete fan, with monomial bases."""

    def __init__(self, fan: Fan, monomials, reductions, n, labels, products, canonical, point):
        super().__init__(n, labels, products, canonical, point)
        self.fan = fan
        self.monomials = monomials
        self._reductions = reductions

    def reduce_monomial(self, e) -> ChowClass:
        """Class of the monomial with exponent vector ``e``."""
        e = tuple(e)
        d = sum(e)
        if d > self.n:
            return self.zero()
        red = self._reductions[d].get(e)
        if red is None:
            return self.zero()  # support is not a cone
        return self.homogeneous(d, red)

    def divisor(self, rho: int) -> ChowClass:
        e = [0] * len(self.fan.rays)
        e[rho] = 1
        return self.reduce_monomial(e)

    def divisor_combination(self, weights) -> ChowClass:
        """``sum w_rho D_rho``."""
        weights = list(weights)
        if len(weights) != len(self.fan.rays):
            raise DimensionMismatch("one weight per ray required")
        total = self.zero()
        for rho, w in enumerate(weights):
            if w:
                total = total + self.divisor(rho) * w
        return total


def _face_monomials(fan: Fan, d: int) -> list[tuple]:
    r = len(fan.rays)
    if d == 0:
        return [(0,) * r]
    out = []
    for k in range(1, min(d, fan.rank) + 1):
        for face in sorted(fan.faces(k)):
            for comp in _compositions(d, k):
                e = [0] * r
                for idx, x in zip(face, comp):
                    e[idx] = x
                out.append(tuple(e))
    return out


def build_chow(fan: Fan) -> ToricChowRing:
    """Graded pieces, standard-monomial bases and multiplication table of ``CH*(X_fan)_Q``."""
    check(fan)
    n = fan.rank
    r = len(fan.rays)
    expected = betti(fan)
    faces = {tuple(sorted(s)) for k in range(n + 1) for s in fan.faces(k)}

    def is_face_support(e):
        return tuple(i for i, x in enumerate(e) if x) in faces

    monomials: list[list[tuple]] = []
    reductions: list[dict] = []
    for d in range(n + 1):
        span = sorted(_face_monomials(fan, d), key=_degrevlex_key, reverse=True)
        col = {e: k for k, e in enumerate(span)}
        rels = []
        if d >= 1:
            for mu in _face_monomials(fan, d - 1):
                for j in range(n):
                    row = [0] * len(span)
                    for rho in range(r):
                        c = fan.rays[rho][j]
                        if c == 0:
                            continue
                        e = list(mu)
                        e[rho] += 1
                        e = tuple(e)
                        if is_face_support(e):
                            row[col[e]] += c
                    if any(row):
                        rels.append(row)
        # columns run from the degrevlex-largest monomial down, so pivots are leading terms
        reduced, pivots = row_reduce(rels, len(span)) if rels else ([], [])
        pivot_set = set(pivots)
        basis_cols = [k for k in range(len(span)) if k not in pivot_set]
        if len(basis_cols) != expected[d]:
            raise BettiMismatch(
                f"degree {d}: quotient has dimension {len(basis_cols)}, Betti number is {expected[d]}"
            )
        pos = {k: i for i, k in enumerate(basis_cols)}
        red: dict[tuple, tuple] = {}
        for k in basis_cols:
            red[span[k]] = tuple(int(i == pos[k]) for i in range(len(basis_cols)))
        for row, p in zip(reduced, pivots):
            red[span[p]] = tuple(_norm(-row[k]) for k in basis_cols)
        monomials.append([span[k] for k in basis_cols])
        reductions.append(red)

    products: dict[tuple, tuple] = {}
    for i in range(n + 1):
        for j in range(i, n + 1 - i):
            for a, ea in enumerate(monomials[i]):
                for b, eb in enumerate(monomials[j]):
                    e = tuple(x + y for x, y in zip(ea, eb))
                    prod = reductions[i + j].get(e)
                    products[(i, a, j, b)] = prod if prod is not None else (0,) * expected[i + j]
    # degrees that overflow are simply absent; multiply never asks for them

    labels = [[_monomial_label(e) for e in ms] for ms in monomials]
    ring = ToricChowRing(fan, monomials, reductions, n, labels, products, None, None)

    # point class: every max cone's generators multiply to the same nonzero class
    point = None
    for cone in fan.max_cones:
        e = [0] * r
        for i in cone:
            e[i] = 1
        c = ring.reduce_monomial(e)
        if point is None:
            point = c
        elif c != point:
            raise VerificationError(f"max cone {list(cone)} does not multiply to the point class")
    if point is None or point.is_zero():
        raise VerificationError("point class vanishes")
    ring._point = point
    ring._canonical = -ring.divisor_combination([1] * r)
    return ring


def canonical_class(ring: ChowRing) -> ChowClass:
    return ring.canonical_class()


def multiply(ring: ChowRing, a: ChowClass, b: ChowClass) -> ChowClass:
    return ring.multiply(a, b)


def chern_character(ring: ChowRing, d: ChowClass) -> ChowClass:
    return ring.chern_character(d)


def multiplication_operator(ring: ChowRing, c: ChowClass) -> Matrix:
    return ring.multiplication_operator(c)
