"""Exact dense vectors and matrices over TowerScalar.

Vectors are tuples of TowerScalar and matrices are tuples of row tuples.
Everything here is exact; floating-point spectral work lives in ``foldcore``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exactfield import ONE, ZERO, TowerScalar

Vec = tuple
Mat = tuple


class ShapeError(ValueError):
    pass


class SingularMatrixError(ArithmeticError):
    pass


def vec(values) -> Vec:
    return tuple(TowerScalar.coerce(v) for v in values)


def mat(rows) -> Mat:
    out = tuple(vec(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ShapeError("ragged matrix")
    return out


def zero_vec(n: int) -> Vec:
    return (ZERO,) * n


def identity(n: int) -> Mat:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def vec_add(a: Vec, b: Vec) -> Vec:
    _same_len(a, b)
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Vec, b: Vec) -> Vec:
    _same_len(a, b)
    return tuple(x - y for x, y in zip(a, b))


def vec_neg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def vec_scale(s, a: Vec) -> Vec:
    s = TowerScalar.coerce(s)
    return tuple(s * x for x in a)


def dot(a: Vec, b: Vec) -> TowerScalar:
    _same_len(a, b)
    total = ZERO
    for x, y in zip(a, b):
        if x and y:
            total = total + x * y
    return total


def norm2(a: Vec) -> TowerScalar:
    return dot(a, a)


def vec_key(a: Vec) -> tuple:
    return tuple(x.key() for x in a)


def vec_float(a: Vec) -> tuple[float, ...]:
    return tuple(float(x) for x in a)


def _same_len(a, b):
    if len(a) != len(b):
        raise ShapeError(f"length mismatch: {len(a)} vs {len(b)}")


def shape(m: Mat) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m))


def mat_add(a: Mat, b: Mat) -> Mat:
    if shape(a) != shape(b):
        raise ShapeError("shape mismatch in mat_add")
    return tuple(vec_add(r, s) for r, s in zip(a, b))


def mat_scale(s, m: Mat) -> Mat:
    s = TowerScalar.coerce(s)
    return tuple(tuple(s * x for x in row) for row in m)


def mat_vec(a: Mat, v: Vec) -> Vec:
    if shape(a)[1] != len(v):
        raise ShapeError(f"cannot apply {shape(a)} matrix to length-{len(v)} vector")
    return tuple(dot(row, v) for row in a)


def mat_mul(a: Mat, b: Mat) -> Mat:
    if shape(a)[1] != shape(b)[0]:
        raise ShapeError(f"cannot multiply {shape(a)} by {shape(b)}")
    cols = transpose(b)
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def trace(m: Mat) -> TowerScalar:
    _square(m)
    total = ZERO
    for i, row in enumerate(m):
        total = total + row[i]
    return total


def is_symmetric(m: Mat) -> bool:
    _square(m)
    n = len(m)
    return all(m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n))


def _square(m: Mat) -> int:
    r, c = shape(m)
    if r != c:
        raise ShapeError(f"matrix is {r}x{c}, not square")
    return r


def _eliminate(m: Mat, rhs: Mat | None):
    """Gauss-Jordan elimination; returns (det, reduced rhs)."""
    n = _square(m)
    a = [list(row) for row in m]
    b = [list(row) for row in rhs] if rhs is not None else None
    det = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return ZERO, None
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            if b is not None:
                b[col], b[piv] = b[piv], b[col]
            det = -det
        p = a[col][col]
        det = det * p
        inv = ONE / p
        a[col] = [x * inv for x in a[col]]
        if b is not None:
            b[col] = [x * inv for x in b[col]]
        for r in range(n):
            if r == col or not a[r][col]:
                continue
            f = a[r][col]
            a[r] = [x - f * y if y else x for x, y in zip(a[r], a[col])]
            if b is not None:
                b[r] = [x - f * y if y else x for x, y in zip(b[r], b[col])]
    return det, b


def det(m: Mat) -> TowerScalar:
    return _eliminate(m, None)[0]


def mat_inverse(m: Mat) -> Mat:
    n = _square(m)
    d, b = _eliminate(m, identity(n))
    if not d:
        raise SingularMatrixError("matrix is singular")
    return tuple(tuple(row) for row in b)


@dataclass(frozen=True)
class CharPoly:
    """Coefficients c_0..c_N of det(lambda*I - M), lowest degree first."""

    coeffs: tuple

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, m: Mat) -> Mat:
        """Evaluate at a square matrix by Horner's rule."""
        n = _square(m)
        acc = mat_scale(self.coeffs[-1], identity(n))
        for c in reversed(self.coeffs[:-1]):
            acc = mat_add(mat_mul(acc, m), mat_scale(c, identity(n)))
        return acc

    def encode(self) -> list:
        return [c.encode() for c in self.coeffs]


def charpoly(m: Mat) -> CharPoly:
    """Faddeev-LeVerrier; only integer divisions are needed."""
    n = _square(m)
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    mk = tuple(tuple(ZERO for _ in range(n)) for _ in range(n))
    ident = identity(n)
    for k in range(1, n + 1):
        mk = mat_add(mat_mul(m, mk), mat_scale(coeffs[n - k + 1], ident))
        coeffs[n - k] = -trace(mat_mul(m, mk)) / k
    return CharPoly(tuple(coeffs))


def is_palindromic(p: CharPoly) -> bool:
    c = p.coeffs
    return all(c[k] == c[-1 - k] for k in range(len(c)))


def is_zero_matrix(m: Mat) -> bool:
    return all(not x for row in m for x in row)


def diag(values: Sequence) -> Mat:
    vals = vec(values)
    n = len(vals)
    return tuple(tuple(vals[i] if i == j else ZERO for j in range(n)) for i in range(n))
