"""Coxeter transformations of ``K_0(X)_Q ~ CH*(X)_Q`` and their Jordan data.

Under the Chern character, ``- (x) omega_X [n-1]`` becomes
``(-1)^(n-1)`` times multiplication by ``ch(K_X)``.  That operator is
unitriangular in a graded basis, so every eigenvalue is ``(-1)^(n-1)``; we
certify this by checking nilpotency of ``Phi - mu I`` rather than expanding a
determinant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .chow import ChowClass, ChowRing
from .errors import (
    DualityViolation,
    MalformedType,
    NegativeCount,
    NonMonotone,
    NotDegreeOne,
    VerificationFailed,
)
from .linalg import (
    JordanType,
    Matrix,
    format_rational,
    full_jordan_type,
    nilpotency_index,
    rank,
)


def coxeter_sign(n: int) -> int:
    """The single eigenvalue ``(-1)^(n-1)`` of the Coxeter transformation."""
    return -1 if n % 2 == 0 else 1


def coxeter_matrix(ring: ChowRing) -> Matrix:
    psi = ring.multiplication_operator(ring.chern_character(ring.canonical_class()))
    return psi * coxeter_sign(ring.n)


@dataclass(frozen=True)
class CoxeterPolynomial:
    """``(x + shift)^m`` together with its nilpotency certificate."""

    m: int
    shift: int
    verified: bool
    nilpotency_index: int | None

    @property
    def root(self) -> int:
        return -self.shift

    def coefficients(self) -> list[int]:
        """Coefficients from ``x^m`` down to the constant term."""
        return [comb(self.m, k) * self.shift**k for k in range(self.m + 1)]

    def __str__(self):
        sign = "+" if self.shift > 0 else "-"
        return f"(x{sign}{abs(self.shift)})^{self.m}"


def coxeter_polynomial(ring: ChowRing, phi: Matrix | None = None) -> CoxeterPolynomial:
    if phi is None:
        phi = coxeter_matrix(ring)
    mu = coxeter_sign(ring.n)
    idx = nilpotency_index(phi - Matrix.scalar(phi.rows, mu))
    if idx is None:
        raise VerificationFailed(f"Phi - ({mu})I is not nilpotent")
    return CoxeterPolynomial(m=phi.rows, shift=-mu, verified=True, nilpotency_index=idx)


def jordan_type_of_coxeter(ring: ChowRing, phi: Matrix | None = None) -> JordanType:
    if phi is None:
        phi = coxeter_matrix(ring)
    return full_jordan_type(phi, [coxeter_sign(ring.n)])


def predicted_jordan_from_betti(betti: list[int], eigenvalue=None) -> JordanType:
    """``b_i - b_(i-1)`` blocks of size ``n - 2i + 1`` for ``0 <= i <= n/2``."""
    betti = [int(b) for b in betti]
    n = len(betti) - 1
    if betti != betti[::-1]:
        raise DualityViolation(f"Betti numbers {betti} are not palindromic")
    if eigenvalue is None:
        eigenvalue = coxeter_sign(n)
    sizes = []
    prev = 0
    for i in range(n // 2 + 1):
        diff = betti[i] - prev
        if diff < 0:
            raise NonMonotone(f"b_{i} = {betti[i]} < b_{i-1} = {prev}")
        sizes += [n - 2 * i + 1] * diff
        prev = betti[i]
    jt = JordanType.from_sizes(eigenvalue, sizes)
    assert jt.dimension == sum(betti)
    assert len(jt) == betti[n // 2]
    return jt


def jordan_blocks_from_cone_counts(counts: list[int], eigenvalue=None) -> JordanType:
    """Block counts straight from ``|Σ(0)|, ..., |Σ(n)|`` (no Betti numbers in between)."""
    n = len(counts) - 1
    if eigenvalue is None:
        eigenvalue = coxeter_sign(n)

    def sigma(k):
        return counts[k] if 0 <= k <= n else 0

    sizes = []
    for k in range(n // 2 + 1):
        c = sum(
            (1 if (i - k) % 2 == 0 else -1) * comb(i + 1, k) * sigma(n - i)
            for i in range(max(k - 1, 0), n + 1)
        )
        if c < 0:
            raise NegativeCount(f"{c} blocks of size {n - 2 * k + 1}")
        sizes += [n - 2 * k + 1] * c
    return JordanType.from_sizes(eigenvalue, sizes)


def betti_from_jordan(jt) -> list[int]:
    """Recover ``b_0..b_n`` from a Jordan type of toric/Lefschetz origin."""
    sizes = jt.sizes if isinstance(jt, JordanType) else tuple(sorted(jt, reverse=True))
    if not sizes:
        raise MalformedType("empty Jordan type")
    d1 = sizes[0]
    if sizes.count(d1) != 1:
        raise MalformedType(f"{sizes.count(d1)} blocks of maximal size {d1}, expected 1")
    if any((d1 - d) % 2 for d in sizes):
        raise MalformedType("block sizes do not share the parity of the largest block")
    n = d1 - 1
    half = [sum(1 for d in sizes if d >= n - 2 * j + 1) for j in range(n // 2 + 1)]
    return half + half[: (n + 1) // 2][::-1]


@dataclass
class LefschetzReport:
    ok: bool
    degrees: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "degrees": self.degrees}


def lefschetz_check(ring: ChowRing, omega: ChowClass) -> LefschetzReport:
    """Is ``x -> x . omega^(n-2i)`` an isomorphism ``CH^i -> CH^(n-i)`` for every ``i <= n/2``?"""
    if not omega.is_homogeneous(1):
        raise NotDegreeOne("Lefschetz check needs a degree-1 class")
    n = ring.n
    degrees = []
    ok = True
    for i in range(n // 2 + 1):
        power = ring.power(omega, n - 2 * i)
        m = ring.multiplication_map(power, i, n - i)
        r = rank(m)
        iso = m.is_square and r == m.rows
        degrees.append({"i": i, "source_dim": m.rows, "target_dim": m.cols, "rank": r, "iso": iso})
        ok = ok and iso
    return LefschetzReport(ok, degrees)


def coxeter_of_cartan(c: Matrix) -> Matrix:
    """``-C^t C^-1`` for a Cartan matrix ``C``; raises :class:`Singular`."""
    return -(c.transpose() @ c.inverse())


def beilinson_cartan(k: int) -> Matrix:
    """Cartan matrix of the Beilinson quiver with ``k`` vertices (derived equivalent to P^(k-1)).

    ``c_ij`` counts monomials of degree ``j - i`` in ``k`` variables.
    """
    if k < 1:
        raise ValueError("need at least one vertex")
    return Matrix([[comb(k - 1 + j - i, j - i) if j >= i else 0 for j in range(k)] for i in range(k)])


@dataclass
class CoxeterReport:
    m: int
    n: int
    eigenvalue: int
    coxeter_matrix: Matrix
    polynomial: CoxeterPolynomial
    jordan: JordanType
    lefschetz: bool
    lefschetz_anticanonical: bool
    betti: list
    predicted_jordan: JordanType | None = None
    cone_count_jordan: JordanType | None = None
    betti_roundtrip: list | None = None
    cross_check: str | None = None
    hypothesis: str = ""

    @property
    def sizes(self) -> tuple[int, ...]:
        return self.jordan.sizes

    def to_json(self) -> dict:
        def sizes_json(jt):
            return None if jt is None else jt.to_json()

        out = {
            "m": self.m,
            "n": self.n,
            "eigenvalue": format_rational(self.eigenvalue),
            "coxeter_polynomial": str(self.polynomial),
            "verified": self.polynomial.verified,
            "nilpotency_index": self.polynomial.nilpotency_index,
            "jordan": sizes_json(self.jordan),
            "predicted_jordan": sizes_json(self.predicted_jordan),
            "lefschetz": self.lefschetz,
            "lefschetz_anticanonical": self.lefschetz_anticanonical,
            "betti": list(self.betti),
            "hypothesis": self.hypothesis,
        }
        if self.cone_count_jordan is not None:
            out["cone_count_jordan"] = sizes_json(self.cone_count_jordan)
        if self.betti_roundtrip is not None:
            out["betti_roundtrip"] = list(self.betti_roundtrip)
        if self.cross_check is not None:
            out["cross_check"] = self.cross_check
        return out


def coxeter_report(ring: ChowRing, cone_counts: list[int] | None = None) -> CoxeterReport:
    """Everything about the Coxeter transformation of ``ring``, cross-checked where the theory allows."""
    phi = coxeter_matrix(ring)
    poly = coxeter_polynomial(ring, phi)
    jt = jordan_type_of_coxeter(ring, phi)
    k = ring.canonical_class()
    lk = lefschetz_check(ring, k).ok
    lak = lefschetz_check(ring, -k).ok
    report = CoxeterReport(
        m=ring.rank,
        n=ring.n,
        eigenvalue=coxeter_sign(ring.n),
        coxeter_matrix=phi,
        polynomial=poly,
        jordan=jt,
        lefschetz=lk,
        lefschetz_anticanonical=lak,
        betti=ring.betti,
    )
    if lk:
        report.hypothesis = "K is a Lefschetz element (ampleness not tested)"
        report.predicted_jordan = predicted_jordan_from_betti(ring.betti)
        agree = report.predicted_jordan == jt
        if cone_counts is not None:
            report.cone_count_jordan = jordan_blocks_from_cone_counts(cone_counts)
            agree = agree and report.cone_count_jordan == jt
        report.betti_roundtrip = betti_from_jordan(jt)
        agree = agree and report.betti_roundtrip == list(ring.betti)
        report.cross_check = "MATCH" if agree else "MISMATCH"
    else:
        report.hypothesis = "K is not a Lefschetz element; Betti prediction not applicable"
    return report
