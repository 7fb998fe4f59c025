"""Jordan forms of Kronecker products of Jordan blocks.

``J(a, s) ⊠ J(b, t)`` denotes the Jordan form of ``J(a, s) ⊗ J(b, t)``.
Closed forms are provided for two blocks (all zero/non-zero cases) and for
any number of blocks with non-zero eigenvalues; ``brute_force_box`` builds
the Kronecker product explicitly and is the reference they are tested
against.
"""

from __future__ import annotations

import os
import re
from functools import reduce
from itertools import combinations_with_replacement
from itertools import product as iproduct
from math import prod

from .coxeter import coxeter_sign
from .errors import DimensionCap, EigenvalueMismatch, InputError, ZeroEigenvalue
from .linalg import JordanType, full_jordan_type, jordan_block, kron_all, to_rational

JordanSum = JordanType

DEFAULT_DIM_CAP = 4096


def dimension_cap() -> int:
    value = os.environ.get("COXKIT_DIM_CAP")
    if value is None:
        return DEFAULT_DIM_CAP
    try:
        return int(value)
    except ValueError:
        raise InputError(f"COXKIT_DIM_CAP must be an integer, got {value!r}") from None


def _ceil_half(i: int) -> int:
    return (i + 1) // 2


def box_pair(a, b, bracket: str = "ceil") -> JordanSum:
    """``J(alpha, s) ⊠ J(beta, t)``.

    In the nilpotent-times-nilpotent case the tail is
    ``J(0, s - ceil(i/2))`` for ``i = 1..2s-2``.  ``bracket="floor"`` gives the
    other reading of the bracket; it does not conserve dimension and exists
    only so that this can be demonstrated.
    """
    (alpha, s), (beta, t) = a, b
    alpha, beta = to_rational(alpha), to_rational(beta)
    s, t = int(s), int(t)
    if s < 1 or t < 1:
        raise InputError("block sizes must be positive")
    if s > t:
        (alpha, s), (beta, t) = (beta, t), (alpha, s)
    if alpha != 0 and beta != 0:
        return JordanType(tuple((alpha * beta, s + t + 1 - 2 * i) for i in range(1, s + 1)))
    if alpha == 0 and beta != 0:
        return JordanType(((0, s),) * t)
    if alpha != 0 and beta == 0:
        return JordanType(((0, t),) * s)
    half = {"ceil": _ceil_half, "floor": lambda i: i // 2}[bracket]
    blocks = [(0, s)] * (t - s + 1)
    blocks += [(0, s - half(i)) for i in range(1, 2 * s - 1)]
    return JordanType(tuple(blocks))


def coefficients_of_product(sizes) -> list[int]:
    """Coefficients of ``prod_j (1 + x + ... + x^(r_j - 1))``."""
    coeffs = [1]
    for r in sizes:
        out = [0] * (len(coeffs) + r - 1)
        for i, c in enumerate(coeffs):
            for k in range(r):
                out[i + k] += c
        coeffs = out
    return coeffs


def box_many(blocks) -> JordanSum:
    """``J(a_1, r_1) ⊠ ... ⊠ J(a_t, r_t)`` for non-zero ``a_i``.

    With ``c_k`` the coefficients of ``prod v_(r_j)`` and ``n = sum r_j - t``
    there are ``c_k - c_(k-1)`` blocks ``J(prod a_i, n + 1 - 2k)``.
    """
    blocks = [(to_rational(a), int(r)) for a, r in blocks]
    if not blocks:
        raise InputError("need at least one block")
    if any(a == 0 for a, _ in blocks):
        raise ZeroEigenvalue("box_many needs non-zero eigenvalues; fold box_pair instead")
    alpha = prod((a for a, _ in blocks), start=1)
    sizes = [r for _, r in blocks]
    n = sum(sizes) - len(sizes)
    c = coefficients_of_product(sizes)
    out = []
    prev = 0
    for k in range(n // 2 + 1):
        out += [(alpha, n + 1 - 2 * k)] * (c[k] - prev)
        prev = c[k]
    return JordanType(tuple(out))


def box_sums(x: JordanSum, y: JordanSum) -> JordanSum:
    """Distribute ⊠ over direct sums."""
    out = JordanType()
    for a in x.blocks:
        for b in y.blocks:
            out = out + box_pair(a, b)
    return out


def box_fold(blocks) -> JordanSum:
    """Left fold of :func:`box_sums` over single blocks (any eigenvalues)."""
    blocks = [(to_rational(a), int(r)) for a, r in blocks]
    if not blocks:
        raise InputError("need at least one block")
    return reduce(box_sums, (JordanType((b,)) for b in blocks[1:]), JordanType((blocks[0],)))


def box(blocks) -> JordanSum:
    """Closed form for a list of blocks: :func:`box_many` when possible, else a fold."""
    blocks = [(to_rational(a), int(r)) for a, r in blocks]
    if all(a != 0 for a, _ in blocks):
        return box_many(blocks)
    return box_fold(blocks)


def brute_force_box(blocks, cap: int | None = None) -> JordanSum:
    """Jordan type of the literal Kronecker product of the blocks' matrices."""
    blocks = [(to_rational(a), int(r)) for a, r in blocks]
    if not blocks:
        raise InputError("need at least one block")
    cap = dimension_cap() if cap is None else cap
    dim = prod(r for _, r in blocks)
    if dim > cap:
        raise DimensionCap(f"product dimension {dim} exceeds cap {cap}")
    m = kron_all([jordan_block(a, r) for a, r in blocks])
    alpha = prod((a for a, _ in blocks), start=1)
    return full_jordan_type(m, [alpha, 0])


def product_coxeter(jx: JordanType, nx: int, jy: JordanType, ny: int) -> JordanType:
    """Coxeter Jordan type of ``X × Y`` from those of ``X`` and ``Y``.

    The sizes come from ``jx ⊠ jy``; the eigenvalue is ``-a b`` for factor
    eigenvalues ``a, b``, i.e. ``(-1)^(nx + ny - 1)``.
    """
    ex, ey = coxeter_sign(nx), coxeter_sign(ny)
    for jt, e, label in ((jx, ex, "X"), (jy, ey, "Y")):
        if any(ev != e for ev in jt.eigenvalues):
            raise EigenvalueMismatch(f"{label} must have the single eigenvalue {e}")
    sizes = box_sums(jx, jy).sizes
    return JordanType.from_sizes(-ex * ey, sizes)


def factor_multisets(total: int):
    """Every non-increasing list of positive sizes with sum at most ``total``."""
    def parts(remaining, largest):
        yield []
        for r in range(min(remaining, largest), 0, -1):
            for rest in parts(remaining - r, r):
                yield [r] + rest
    return [p for p in parts(total, total) if p]


def eigenvalue_patterns(sizes, values, exhaustive: bool) -> list[tuple]:
    """Eigenvalue assignments to the factors of ``sizes``.

    Exhaustive mode gives every assignment up to permuting equal-size factors;
    otherwise the constant patterns plus the cyclic mix ``values[i % len]``.
    """
    t = len(sizes)
    if not exhaustive:
        pats = [tuple([v] * t) for v in values]
        mix = tuple(values[i % len(values)] for i in range(t))
        return pats + ([mix] if mix not in pats else [])
    groups = [sum(1 for r in sizes if r == s) for s in sorted(set(sizes), reverse=True)]
    choices = [list(combinations_with_replacement(values, k)) for k in groups]
    return [tuple(a for part in pick for a in part) for pick in iproduct(*choices)]


_BLOCK_RE = re.compile(r"J\(\s*([-+]?\d+(?:/\d+)?)\s*,\s*(\d+)\s*\)")


def parse_blocks(text: str) -> list[tuple]:
    """Parse ``"J(1,2) J(-1/2,3)"`` into ``[(1, 2), (Fraction(-1, 2), 3)]``."""
    text = text.strip()
    blocks = []
    pos = 0
    for m in _BLOCK_RE.finditer(text):
        if text[pos : m.start()].strip():
            raise InputError(f"cannot parse {text[pos:m.start()]!r} in block list")
        size = int(m.group(2))
        if size < 1:
            raise InputError("block sizes must be positive")
        blocks.append((to_rational(m.group(1)), size))
        pos = m.end()
    if text[pos:].strip() or not blocks:
        raise InputError(f"cannot parse block list {text!r}")
    return blocks
