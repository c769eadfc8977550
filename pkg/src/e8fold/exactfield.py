"""Exact arithmetic in the real tower field Q(sqrt2, sqrt5)(sqrt(phi)).

Every scalar is stored as eight integer numerators over one positive common
denominator, in the basis

    (1, s2, s5, s10, r, s2*r, s5*r, s10*r)      with r = sqrt(phi)

The representation is canonical (gcd of numerators and denominator is 1),
so equality and hashing are plain tuple operations.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC

import mpmath

__all__ = [
    "TowerScalar",
    "ts_from_parts",
    "ts_mul",
    "ts_inv",
    "ts_sign",
    "ts_galois5",
    "ZERO",
    "ONE",
    "PHI",
    "SQRT2",
    "SQRT5",
    "SQRT10",
    "SQRT_PHI",
    "BASIS_LABELS",
]

BASIS_LABELS = ("1", "s2", "s5", "s10", "r", "s2*r", "s5*r", "s10*r")

# Product table with coefficients doubled so the phi = (1 + s5)/2 reduction stays integral.
# _PROD[i][j] = ((k, c), ...) meaning basis_i * basis_j = sum(c/2 * basis_k).
def _build_products():
    table = []
    for i in range(8):
        row = []
        a1, b1, m1 = i & 1, (i >> 1) & 1, i >> 2
        for j in range(8):
            a2, b2, m2 = j & 1, (j >> 1) & 1, j >> 2
            a, b, m = a1 + a2, b1 + b2, m1 + m2
            f = 1
            if a == 2:
                f *= 2
                a = 0
            if b == 2:
                f *= 5
                b = 0
            if m < 2:
                row.append(((a + 2 * b + 4 * m, 2 * f),))
            elif b == 0:
                # x * phi = x/2 + x*s5/2
                row.append(((a, f), (a + 2, f)))
            else:
                # x*s5 * phi = x*s5/2 + 5x/2
                row.append(((a + 2, f), (a, 5 * f)))
        table.append(tuple(row))
    return tuple(table)


_PROD = _build_products()

_PHI_F = (1 + math.sqrt(5)) / 2
_BASIS_F = (
    1.0,
    math.sqrt(2),
    math.sqrt(5),
    math.sqrt(10),
    math.sqrt(_PHI_F),
    math.sqrt(2) * math.sqrt(_PHI_F),
    math.sqrt(5) * math.sqrt(_PHI_F),
    math.sqrt(10) * math.sqrt(_PHI_F),
)


def _normalize(nums, den):
    g = math.gcd(den, *nums)
    if g != 1:
        return tuple(n // g for n in nums), den // g
    return tuple(nums), den


class TowerScalar:
    """Immutable exact element of Q(sqrt2, sqrt5, sqrt(phi))."""

    __slots__ = ("_n", "_d", "_nz", "_hash")

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = (0,) * 8
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) != 8:
            raise ValueError("a TowerScalar needs exactly 8 coefficients")
        den = math.lcm(*(c.denominator for c in coeffs))
        nums = [c.numerator * (den // c.denominator) for c in coeffs]
        self._set(*_normalize(nums, den))

    def _set(self, nums, den):
        self._n = nums
        self._d = den
        self._nz = tuple(i for i, v in enumerate(nums) if v)
        self._hash = None

    @classmethod
    def _raw(cls, nums, den):
        obj = cls.__new__(cls)
        if den < 0:
            nums = tuple(-n for n in nums)
            den = -den
        obj._set(*_normalize(nums, den))
        return obj

    @classmethod
    def rational(cls, value) -> TowerScalar:
        value = Fraction(value)
        return cls._raw((value.numerator, 0, 0, 0, 0, 0, 0, 0), value.denominator)

    @classmethod
    def coerce(cls, value) -> TowerScalar:
        if isinstance(value, TowerScalar):
            return value
        if isinstance(value, (int, Fraction, _RationalABC)):
            return cls.rational(value)
        if isinstance(value, str):
            return cls.rational(Fraction(value))
        raise TypeError(f"cannot convert {type(value).__name__} to TowerScalar")

    # -- accessors -----------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, self._d) for n in self._n)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._n

    @property
    def denominator(self) -> int:
        return self._d

    def is_zero(self) -> bool:
        return not self._nz

    def is_rational(self) -> bool:
        return self._nz in ((), (0,))

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self._n[0], self._d)

    def key(self) -> tuple:
        """Canonical hashable encoding."""
        return self._n + (self._d,)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        try:
            other = TowerScalar.coerce(other)
        except TypeError:
            return NotImplemented
        d1, d2 = self._d, other._d
        if d1 == d2:
            return TowerScalar._raw(tuple(a + b for a, b in zip(self._n, other._n)), d1)
        return TowerScalar._raw(
            tuple(a * d2 + b * d1 for a, b in zip(self._n, other._n)), d1 * d2
        )

    __radd__ = __add__

    def __neg__(self):
        obj = TowerScalar.__new__(TowerScalar)
        obj._n = tuple(-n for n in self._n)
        obj._d = self._d
        obj._nz = self._nz
        obj._hash = None
        return obj

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = TowerScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        try:
            other = TowerScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return TowerScalar._raw(tuple(n * other for n in self._n), self._d)
        if isinstance(other, Fraction):
            return TowerScalar._raw(
                tuple(n * other.numerator for n in self._n), self._d * other.denominator
            )
        if not isinstance(other, TowerScalar):
            try:
                other = TowerScalar.coerce(other)
            except TypeError:
                return NotImplemented
        a, b = self._n, other._n
        out = [0, 0, 0, 0, 0, 0, 0, 0]
        for i in self._nz:
            ai = a[i]
            row = _PROD[i]
            for j in other._nz:
                p = ai * b[j]
                for k, c in row[j]:
                    out[k] += c * p
        return TowerScalar._raw(out, 2 * self._d * other._d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero TowerScalar")
            other = Fraction(other)
            return TowerScalar._raw(
                tuple(n * other.denominator for n in self._n), self._d * other.numerator
            )
        try:
            other = TowerScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * ts_inv(other)

    def __rtruediv__(self, other):
        return TowerScalar.coerce(other) * ts_inv(self)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return ts_inv(self) ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, TowerScalar):
            return self._d == other._d and self._n == other._n
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self._n[0], self._d) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                # agree with hash(int) / hash(Fraction) for rational values
                self._hash = hash(Fraction(self._n[0], self._d))
            else:
                self._hash = hash(self._n + (self._d,))
        return self._hash

    def __lt__(self, other):
        return ts_sign(self - other) < 0

    def __le__(self, other):
        return ts_sign(self - other) <= 0

    def __gt__(self, other):
        return ts_sign(self - other) > 0

    def __ge__(self, other):
        return ts_sign(self - other) >= 0

    def __abs__(self):
        return -self if ts_sign(self) < 0 else self

    def __bool__(self):
        return bool(self._nz)

    # -- numeric embeddings --------------------------------------------------
    def __float__(self):
        n = self._n
        return sum(n[i] * _BASIS_F[i] for i in self._nz) / self._d

    def interval(self, prec: int = 53):
        """Rigorous mpmath interval enclosing the value."""
        iv = mpmath.iv
        saved = iv.prec
        iv.prec = prec
        try:
            s2 = iv.sqrt(2)
            s5 = iv.sqrt(5)
            r = iv.sqrt((1 + s5) / 2)
            basis = (1, s2, s5, s2 * s5, r, s2 * r, s5 * r, s2 * s5 * r)
            total = iv.mpf(0)
            for i in self._nz:
                total += self._n[i] * basis[i]
            return total / self._d
        finally:
            iv.prec = saved

    # -- text ----------------------------------------------------------------
    def encode(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def decode(cls, fields) -> TowerScalar:
        if len(fields) != 8:
            raise ValueError("expected 8 'num/den' fields")
        return cls(Fraction(f) for f in fields)

    def __repr__(self):
        if self.is_zero():
            return "TowerScalar(0)"
        parts = []
        for i in self._nz:
            c = Fraction(self._n[i], self._d)
            parts.append(str(c) if i == 0 else f"{c}*{BASIS_LABELS[i]}")
        return "TowerScalar(" + " + ".join(parts) + ")"

    __str__ = __repr__


def ts_from_parts(a, b) -> TowerScalar:
    """Return a + b*phi."""
    a, b = Fraction(a), Fraction(b)
    return TowerScalar((a + b / 2, 0, b / 2, 0, 0, 0, 0, 0))


def ts_mul(x: TowerScalar, y: TowerScalar) -> TowerScalar:
    return x * y


def _mul_matrix(x: TowerScalar):
    # column j holds the coefficients of x * basis_j
    cols = []
    for j in range(8):
        e = [0] * 8
        e[j] = 1
        cols.append((x * TowerScalar._raw(tuple(e), 1)).coeffs)
    return [[cols[j][i] for j in range(8)] for i in range(8)]


def ts_inv(x: TowerScalar) -> TowerScalar:
    """Multiplicative inverse by solving the 8x8 rational system M_x y = e_0."""
    if x.is_zero():
        raise ZeroDivisionError("inverse of zero TowerScalar")
    if x.is_rational():
        return TowerScalar.rational(1 / x.to_fraction())
    m = _mul_matrix(x)
    aug = [row + [Fraction(int(i == 0))] for i, row in enumerate(m)]
    n = 8
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return TowerScalar(aug[i][n] for i in range(n))


def ts_sign(x: TowerScalar) -> int:
    """Exact sign: float fast path, then interval refinement."""
    if x.is_zero():
        return 0
    if x.is_rational():
        return 1 if x._n[0] > 0 else -1
    n = x._n
    terms = [n[i] * _BASIS_F[i] for i in x._nz]
    value = math.fsum(terms)
    bound = sum(abs(t) for t in terms) * 1e-14
    if abs(value) > bound:
        return 1 if value > 0 else -1
    prec = 128
    while True:
        iv = x.interval(prec)
        if iv.a > 0:
            return 1
        if iv.b < 0:
            return -1
        prec *= 2


def ts_galois5(x: TowerScalar) -> TowerScalar:
    """The automorphism sqrt5 -> -sqrt5 of Q(sqrt2, sqrt5); phi maps to 1 - phi."""
    n = x.numerators
    if any(n[4:]):
        raise ValueError("sqrt5 -> -sqrt5 does not extend to sqrt(phi) inside a real field")
    return TowerScalar._raw((n[0], n[1], -n[2], -n[3], 0, 0, 0, 0), x.denominator)


ZERO = TowerScalar._raw((0,) * 8, 1)
ONE = TowerScalar._raw((1, 0, 0, 0, 0, 0, 0, 0), 1)
SQRT2 = TowerScalar._raw((0, 1, 0, 0, 0, 0, 0, 0), 1)
SQRT5 = TowerScalar._raw((0, 0, 1, 0, 0, 0, 0, 0), 1)
SQRT10 = TowerScalar._raw((0, 0, 0, 1, 0, 0, 0, 0), 1)
SQRT_PHI = TowerScalar._raw((0, 0, 0, 0, 1, 0, 0, 0), 1)
PHI = ts_from_parts(0, 1)
