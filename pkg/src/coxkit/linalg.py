"""Exact linear algebra over the rationals.

Matrices are dense, immutable and hold Python ``int`` or
``fractions.Fraction`` entries.  A fraction with denominator 1 is always
stored as an ``int`` so that integer matrices (the common case for Jordan
blocks and their Kronecker products) stay on the fast integer path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

from .errors import DimensionMismatch, IncompleteSpectrum, NotNilpotent, Singular

Rational = Union[int, Fraction]


def to_rational(x) -> Rational:
    """Coerce ``x`` (int, Fraction or a ``"p/q"`` string) to a normalized rational."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return to_rational(Fraction(x.strip()))
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rational(x: Rational) -> str:
    return str(to_rational(x))


def _norm(x):
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


class Matrix:
    """Dense immutable matrix over Q."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Sequence], cols: int | None = None):
        rows = tuple(tuple(to_rational(x) for x in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != cols:
                raise DimensionMismatch("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self._data = rows

    @classmethod
    def _trusted(cls, rows, cols):
        # rows already normalized tuples
        m = object.__new__(cls)
        m.rows = len(rows)
        m.cols = cols
        m._data = rows
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls._trusted(tuple((0,) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._trusted(
            tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def scalar(cls, n: int, value) -> "Matrix":
        value = to_rational(value)
        return cls._trusted(
            tuple(tuple(value if i == j else 0 for j in range(n)) for i in range(n)), n
        )

    # -- access ------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def tolist(self) -> list[list[Rational]]:
        return [list(r) for r in self._data]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._data for x in row)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_rational(x) for x in r) + "]" for r in self._data)
        return f"Matrix([{body}])"

    # -- arithmetic --------------------------------------------------------

    def _check_same(self, other: "Matrix"):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._trusted(
            tuple(tuple(_norm(a + b) for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.cols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._trusted(
            tuple(tuple(_norm(a - b) for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.cols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix._trusted(tuple(tuple(-a for a in r) for r in self._data), self.cols)

    def __mul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            raise TypeError("use @ for matrix products")
        c = to_rational(c)
        return Matrix._trusted(tuple(tuple(_norm(c * a) for a in r) for r in self._data), self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        n = other.cols
        odata = other._data
        out = []
        for row in self._data:
            acc = [0] * n
            for k, a in enumerate(row):
                if a == 0:
                    continue
                orow = odata[k]
                for j in range(n):
                    b = orow[j]
                    if b != 0:
                        acc[j] += a * b
            out.append(tuple(_norm(x) for x in acc))
        return Matrix._trusted(tuple(out), n)

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square:
            raise DimensionMismatch("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def transpose(self) -> "Matrix":
        return Matrix._trusted(tuple(zip(*self._data)) if self.rows else (), self.rows)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def inverse(self) -> "Matrix":
        """Gauss-Jordan inverse; raises :class:`Singular`."""
        if not self.is_square:
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.rows
        a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
             for i, row in enumerate(self._data)]
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c] != 0), None)
            if p is None:
                raise Singular("matrix is not invertible over Q")
            a[c], a[p] = a[p], a[c]
            piv = a[c][c]
            a[c] = [x / piv for x in a[c]]
            for r in range(n):
                if r != c and a[r][c] != 0:
                    f = a[r][c]
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return Matrix._trusted(tuple(tuple(_norm(x) for x in row[n:]) for row in a), n)

    def __str__(self):
        cells = [[format_rational(x) for x in r] for r in self._data]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)


def jordan_block(alpha, size: int) -> Matrix:
    """The ``size``x``size`` Jordan block with eigenvalue ``alpha`` (ones on the superdiagonal)."""
    if size < 1:
        raise ValueError("Jordan block size must be positive")
    alpha = to_rational(alpha)
    return Matrix._trusted(
        tuple(
            tuple(alpha if i == j else (1 if j == i + 1 else 0) for j in range(size))
            for i in range(size)
        ),
        size,
    )


def block_diagonal(blocks: Sequence[Matrix]) -> Matrix:
    n = sum(b.rows for b in blocks)
    rows = []
    offset = 0
    for b in blocks:
        for r in b._data:
            rows.append((0,) * offset + r + (0,) * (n - offset - b.cols))
        offset += b.cols
    return Matrix._trusted(tuple(rows), n)


# -- rank ------------------------------------------------------------------


def _integer_rows(m: Matrix) -> list[list[int]]:
    out = []
    for row in m._data:
        den = 1
        for x in row:
            if type(x) is Fraction:
                den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def _bareiss_rank(a: list[list[int]], ncols: int) -> int:
    # fraction-free elimination; every division below is exact
    nrows = len(a)
    rank = 0
    prev = 1
    for c in range(ncols):
        if rank == nrows:
            break
        p = next((r for r in range(rank, nrows) if a[r][c] != 0), None)
        if p is None:
            continue
        a[rank], a[p] = a[p], a[rank]
        prow = a[rank]
        piv = prow[c]
        for r in range(rank + 1, nrows):
            row = a[r]
            f = row[c]
            if f == 0:
                if piv != prev:
                    for k in range(c + 1, ncols):
                        if row[k]:
                            row[k] = row[k] * piv // prev
            else:
                for k in range(c + 1, ncols):
                    row[k] = (piv * row[k] - f * prow[k]) // prev
                row[c] = 0
        prev = piv
        rank += 1
    return rank


def rank(m: Matrix) -> int:
    """Rank over Q by Bareiss fraction-free elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return _bareiss_rank(_integer_rows(m), m.cols)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; block ``(i, j)`` of the result is ``a[i, j] * b``."""
    rows = []
    for arow in a._data:
        for brow in b._data:
            rows.append(tuple(_norm(x * y) for x in arow for y in brow))
    return Matrix._trusted(tuple(rows), a.cols * b.cols)


def kron_all(mats: Sequence[Matrix]) -> Matrix:
    return reduce(kron, mats, Matrix.identity(1))


def nilpotency_index(n: Matrix) -> int | None:
    """Least ``k`` with ``n**k == 0``, or ``None`` if there is none (``k <= dim``)."""
    if not n.is_square:
        raise DimensionMismatch("nilpotency of a non-square matrix")
    p = n
    for k in range(1, max(n.rows, 1) + 1):
        if p.is_zero():
            return k
        p = p @ n
    return None


def exp_nilpotent(n: Matrix) -> Matrix:
    """``sum(n**i / i!)``, a finite sum since ``n`` must be nilpotent."""
    if not n.is_square:
        raise DimensionMismatch("exp of a non-square matrix")
    if nilpotency_index(n) is None:
        raise NotNilpotent("matrix is not nilpotent")
    total = Matrix.identity(n.rows)
    term = Matrix.identity(n.rows)
    for i in range(1, n.rows):
        term = (term @ n) * Fraction(1, i)
        if term.is_zero():
            break
        total = total + term
    return total


# -- Jordan types ----------------------------------------------------------


@dataclass(frozen=True)
class JordanType:
    """Multiset of Jordan blocks ``(eigenvalue, size)`` in canonical order.

    Canonical order sorts by eigenvalue ascending, then size descending.
    """

    blocks: tuple = ()

    def __post_init__(self):
        blocks = []
        for ev, size in self.blocks:
            size = int(size)
            if size < 1:
                raise ValueError("Jordan block sizes must be positive")
            blocks.append((to_rational(ev), size))
        blocks.sort(key=lambda b: (b[0], -b[1]))
        object.__setattr__(self, "blocks", tuple(blocks))

    @classmethod
    def from_sizes(cls, eigenvalue, sizes: Iterable[int]) -> "JordanType":
        return cls(tuple((eigenvalue, s) for s in sizes))

    def __add__(self, other: "JordanType") -> "JordanType":
        return JordanType(self.blocks + other.blocks)

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    @property
    def dimension(self) -> int:
        return sum(s for _, s in self.blocks)

    @property
    def sizes(self) -> tuple[int, ...]:
        """Block sizes, largest first (eigenvalues dropped)."""
        return tuple(sorted((s for _, s in self.blocks), reverse=True))

    @property
    def eigenvalues(self) -> tuple:
        return tuple(sorted({ev for ev, _ in self.blocks}))

    def at(self, eigenvalue) -> "JordanType":
        ev = to_rational(eigenvalue)
        return JordanType(tuple(b for b in self.blocks if b[0] == ev))

    def with_eigenvalue(self, eigenvalue) -> "JordanType":
        return JordanType.from_sizes(eigenvalue, self.sizes)

    def grouped(self) -> list[tuple]:
        """``[(eigenvalue, size, multiplicity), ...]`` in canonical order."""
        out: list[list] = []
        for ev, s in self.blocks:
            if out and out[-1][0] == ev and out[-1][1] == s:
                out[-1][2] += 1
            else:
                out.append([ev, s, 1])
        return [tuple(g) for g in out]

    def to_json(self) -> list[dict]:
        return [
            {"eigenvalue": format_rational(ev), "size": s, "multiplicity": m}
            for ev, s, m in self.grouped()
        ]

    @classmethod
    def from_json(cls, data: list[dict]) -> "JordanType":
        blocks = []
        for item in data:
            blocks += [(to_rational(item["eigenvalue"]), int(item["size"]))] * int(
                item.get("multiplicity", 1)
            )
        return cls(tuple(blocks))

    def __str__(self):
        if not self.blocks:
            return "0"
        parts = []
        for ev, s, m in self.grouped():
            term = f"J({format_rational(ev)},{s})"
            parts.append(term if m == 1 else f"{term}^{m}")
        return " ⊕ ".join(parts)


def rank_sequence(m: Matrix, mu) -> list[int]:
    """``[rank((m - mu I)^k) for k = 0, 1, ...]`` up to and including the first repeat."""
    if not m.is_square:
        raise DimensionMismatch("rank sequence of a non-square matrix")
    n = m - Matrix.scalar(m.rows, mu)
    ranks = [m.rows]
    p = Matrix.identity(m.rows)
    while True:
        p = p @ n
        r = rank(p)
        ranks.append(r)
        if r == ranks[-2]:
            return ranks


def jordan_type_at(m: Matrix, mu) -> JordanType:
    """Jordan blocks of ``m`` for eigenvalue ``mu``, read off the rank sequence.

    The number of blocks of size exactly ``k`` is ``r[k-1] - 2 r[k] + r[k+1]``.
    """
    mu = to_rational(mu)
    r = rank_sequence(m, mu)
    r.append(r[-1])
    blocks = []
    for k in range(1, len(r) - 1):
        count = r[k - 1] - 2 * r[k] + r[k + 1]
        blocks += [(mu, k)] * count
    return JordanType(tuple(blocks))


def full_jordan_type(m: Matrix, candidate_eigenvalues: Iterable) -> JordanType:
    """Jordan type of ``m`` given a list containing every eigenvalue.

    Raises :class:`IncompleteSpectrum` when the blocks found do not fill the
    whole space, i.e. the caller missed an eigenvalue.
    """
    seen = []
    for ev in candidate_eigenvalues:
        ev = to_rational(ev)
        if ev not in seen:
            seen.append(ev)
    jt = JordanType()
    for ev in seen:
        jt = jt + jordan_type_at(m, ev)
    if jt.dimension != m.rows:
        raise IncompleteSpectrum(
            f"blocks for eigenvalues {[format_rational(e) for e in seen]} cover "
            f"{jt.dimension} of {m.rows} dimensions"
        )
    return jt


def row_reduce(rows: Sequence[Sequence], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over Q; returns ``(nonzero rows, pivot columns)``."""
    a = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        if piv != 1:
            a[r] = [x / piv for x in a[r]]
        prow = a[r]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], prow)]
        pivots.append(c)
        r += 1
    return [[_norm(x) for x in row] for row in a[:r]], pivots
